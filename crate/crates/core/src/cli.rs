//! `beltway` command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::demo::run_piccard_demo;
use crate::error::{BeltwayError, Result};
use crate::experiment::{mc_sphere_experiment, ExperimentConfig, Mode};
use crate::invariants::{magnitude_partition, second_moment_invariants};
use crate::io::{format_number, parse_invariants, parse_signal, write_invariants, write_signal};
use crate::recovery::{
    enumerate_orbits_with, orbit_count_bound_for, recover_distinct_weight_products, recover_unique,
    EnumerationOptions, RecoveryResult,
};
use crate::signal::orbit_equivalent;
use crate::tolerance::Tolerances;
use crate::turnpike::{
    difference_multiset, embed_half_circle, embed_half_circle_tight, piccard_sets, LineSet,
};

#[derive(Debug, Parser)]
#[command(
    name = "beltway",
    version,
    about = "Sparse signal recovery from second moments over O(n)"
)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TolArgs {
    /// Tolerance for matching invariant values.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_match: f64,
    /// Relative tolerance on negative eigenvalues.
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps_psd: f64,
    /// Relative threshold for numerical rank.
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps_rank: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signal file to invariant file.
    Invariants {
        /// Signal file, or '-' for stdin.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invariant file to signal file, choosing the cheapest applicable method.
    Recover {
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        max_results: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All orbits consistent with an invariant file.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        max_results: usize,
        /// Backtracking node budget.
        #[arg(long, default_value_t = 100_000_000)]
        work_cap: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Upper bound on the number of orbits for given magnitude multiplicities.
    Bound {
        #[arg(required = true)]
        multiplicities: Vec<usize>,
    },
    /// Whether two signal files describe the same O(n)-orbit.
    Equiv { left: PathBuf, right: PathBuf },
    /// Point sets on the line.
    #[command(subcommand)]
    Turnpike(TurnpikeCommand),
    /// Monte Carlo estimate of homometric partners from permuted Gram columns.
    McSphere {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Every)]
        mode: ModeArg,
    },
    /// Worked examples.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Debug, Subcommand)]
enum TurnpikeCommand {
    /// Half-circle embedding of a set as a signal file.
    Embed {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
        /// Scale M; defaults to the diameter of the set.
        #[arg(long)]
        scale: Option<f64>,
    },
    /// Sorted multiset of pairwise differences.
    Diffs {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// The homometric pair P, Q for parameters a, b.
    Piccard {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
    },
}

#[derive(Debug, Subcommand)]
enum DemoCommand {
    /// Two homometric six-point sets on the half circle.
    Piccard,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Every,
    Exists,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Every => Mode::Every,
            ModeArg::Exists => Mode::Exists,
        }
    }
}

/// Runs the CLI with `args` (including the program name), writing to the
/// given streams. Returns the process exit code: 0 on success, 1 on domain
/// errors, 2 on usage errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let result = Tolerances::new(cli.tol.eps_match, cli.tol.eps_psd, cli.tol.eps_rank)
        .and_then(|tol| dispatch(cli.command, &tol));
    match result {
        Ok(Output { text, path }) => {
            let written = match path {
                Some(p) => std::fs::write(&p, text).map_err(BeltwayError::from),
                None => stdout
                    .write_all(text.as_bytes())
                    .map_err(BeltwayError::from),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

struct Output {
    text: String,
    path: Option<PathBuf>,
}

impl Output {
    fn stdout(text: String) -> Self {
        Output { text, path: None }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| BeltwayError::Io(format!("{}: {e}", path.display())))
    }
}

fn dispatch(command: Command, tol: &Tolerances) -> Result<Output> {
    match command {
        Command::Invariants { input, output } => {
            let signal = parse_signal(&read_input(&input)?, tol)?;
            let inv = second_moment_invariants(&signal, tol)?;
            Ok(Output {
                text: write_invariants(&inv),
                path: output,
            })
        }
        Command::Recover {
            input,
            dim,
            max_results,
            output,
        } => {
            let inv = parse_invariants(&read_input(&input)?, tol)?;
            Ok(Output {
                text: recover_auto(&inv, dim, max_results, tol)?,
                path: output,
            })
        }
        Command::Enumerate {
            input,
            dim,
            max_results,
            work_cap,
            output,
        } => {
            let inv = parse_invariants(&read_input(&input)?, tol)?;
            let opts = EnumerationOptions {
                max_results,
                work_cap,
            };
            let result = enumerate_orbits_with(&inv, dim, &opts, tol)?;
            Ok(Output {
                text: write_bundle(&result),
                path: output,
            })
        }
        Command::Bound { multiplicities } => {
            if multiplicities.contains(&0) {
                return Err(BeltwayError::Config(
                    "multiplicities must be positive".into(),
                ));
            }
            Ok(Output::stdout(format!(
                "{}\n",
                orbit_count_bound_for(&multiplicities)
            )))
        }
        Command::Equiv { left, right } => {
            let x = parse_signal(&read_input(&left)?, tol)?;
            let y = parse_signal(&read_input(&right)?, tol)?;
            let yes = orbit_equivalent(&x, &y, tol);
            Ok(Output::stdout(if yes { "yes\n" } else { "no\n" }.into()))
        }
        Command::Turnpike(t) => turnpike(t, tol).map(Output::stdout),
        Command::McSphere { trials, seed, mode } => {
            let cfg = ExperimentConfig {
                trials,
                seed,
                mode: mode.into(),
                tolerances: *tol,
            };
            let r = mc_sphere_experiment(&cfg)?;
            let mut out = String::new();
            let _ = writeln!(out, "trials {}", r.trials);
            let _ = writeln!(out, "seed {}", r.seed);
            let _ = writeln!(out, "mode {}", r.mode);
            let _ = writeln!(out, "positives {}", r.positives);
            let _ = writeln!(out, "fraction {}", format_number(r.fraction));
            let _ = writeln!(out, "positives_every {}", r.positives_every);
            let _ = writeln!(out, "positives_exists {}", r.positives_exists);
            Ok(Output::stdout(out))
        }
        Command::Demo(DemoCommand::Piccard) => run_piccard_demo().map(Output::stdout),
    }
}

fn turnpike(cmd: TurnpikeCommand, tol: &Tolerances) -> Result<String> {
    match cmd {
        TurnpikeCommand::Embed { values, scale } => {
            let set = LineSet::with_tolerances(values, tol)?;
            let signal = match scale {
                Some(m) => embed_half_circle(&set, m)?,
                None => embed_half_circle_tight(&set)?,
            };
            Ok(write_signal(&signal))
        }
        TurnpikeCommand::Diffs { values } => {
            let set = LineSet::with_tolerances(values, tol)?;
            let d = difference_multiset(&set);
            let line: Vec<String> = d.entries().iter().map(|v| format_number(*v)).collect();
            Ok(format!("{}\n", line.join(" ")))
        }
        TurnpikeCommand::Piccard { a, b } => {
            let (p, q) = piccard_sets(a, b)?;
            let fmt = |s: &LineSet| {
                s.values()
                    .iter()
                    .map(|v| format_number(*v))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            Ok(format!("P {}\nQ {}\n", fmt(&p), fmt(&q)))
        }
    }
}

/// Distinct magnitudes: unique recovery. Distinct weight products: labeled
/// recovery. Otherwise full enumeration, printed as a bundle when more than
/// one orbit is consistent with the input.
fn recover_auto(
    inv: &crate::invariants::InvariantSet,
    n: usize,
    max_results: usize,
    tol: &Tolerances,
) -> Result<String> {
    if magnitude_partition(inv, tol).is_radially_collision_free() {
        let s = recover_unique(inv, n, tol)?;
        return Ok(format!("# method: unique\n{}", write_signal(&s)));
    }
    match recover_distinct_weight_products(inv, n, tol) {
        Ok(s) => {
            return Ok(format!(
                "# method: distinct-weight-products\n{}",
                write_signal(&s)
            ))
        }
        Err(BeltwayError::WeightProductsNotDistinct) => {}
        Err(e) => return Err(e),
    }
    let opts = EnumerationOptions {
        max_results,
        ..EnumerationOptions::default()
    };
    let result = enumerate_orbits_with(inv, n, &opts, tol)?;
    if result.orbits.is_empty() {
        return Err(BeltwayError::Precondition(format!(
            "no signal in dimension {n} has these invariants"
        )));
    }
    Ok(format!("# method: enumeration\n{}", write_bundle(&result)))
}

fn write_bundle(result: &RecoveryResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# orbits: {}", result.orbits.len());
    let _ = writeln!(out, "# bound: {}", result.bound);
    let _ = writeln!(out, "# truncated: {}", result.truncated);
    let _ = writeln!(out, "# sign_ambiguous: {}", result.sign_ambiguous);
    for (i, s) in result.orbits.iter().enumerate() {
        let _ = writeln!(out, "# orbit {}", i + 1);
        out.push_str(&write_signal(s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("beltway").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bound_values() {
        assert_eq!(
            call(&["bound", "6"]),
            (0, "1816214400\n".into(), String::new())
        );
        assert_eq!(call(&["bound", "1", "1", "1", "1", "1"]).1, "1\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = call(&["bound"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["mc-sphere", "--mode", "sometimes"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("mc-sphere"));
    }

    #[test]
    fn domain_errors_exit_1() {
        let (code, _, err) = call(&["mc-sphere", "--trials", "0"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        assert_eq!(call(&["turnpike", "embed", "--scale", "1", "0", "5"]).0, 1);
        assert_eq!(call(&["invariants", "/nonexistent/file"]).0, 1);
    }

    #[test]
    fn turnpike_commands() {
        assert_eq!(call(&["turnpike", "diffs", "0", "1", "3"]).1, "1 2 3\n");
        assert_eq!(call(&["turnpike", "diffs", "-1", "0"]).1, "1\n");
        let (code, out, _) = call(&["turnpike", "embed", "0", "1", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("2 3\n1 1 0\n"));
    }

    #[test]
    fn mc_sphere_is_deterministic() {
        let a = call(&["mc-sphere", "--trials", "300", "--seed", "11"]);
        let b = call(&["mc-sphere", "--trials", "300", "--seed", "11"]);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
        assert!(a.1.contains("mode every\n"));
    }

    #[test]
    fn demo_runs() {
        let (code, out, _) = call(&["demo", "piccard"]);
        assert_eq!(code, 0);
        assert!(out.contains("orbits enumerated in the plane: 3"));
    }
}
