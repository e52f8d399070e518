//! Monte Carlo estimate of how often a random binary δ-function of four unit
//! vectors in ℝ⁴ admits homometric partners obtained by permuting the last
//! Gram column.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{BeltwayError, Result};
use crate::sampling::unit_vector;
use crate::signal::{Point, SparseSignal};
use crate::tolerance::Tolerances;

/// The five non-identity permutations of `(0, 1, 2)`, lexicographic.
pub const NONTRIVIAL_PERMUTATIONS: [[usize; 3]; 5] =
    [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every non-trivial permutation must be realizable.
    Every,
    /// At least one non-trivial permutation is realizable.
    Exists,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Every => "every",
            Mode::Exists => "exists",
        })
    }
}

impl FromStr for Mode {
    type Err = BeltwayError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "every" => Ok(Mode::Every),
            "exists" => Ok(Mode::Exists),
            other => Err(BeltwayError::Config(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub tolerances: Tolerances,
}

impl ExperimentConfig {
    pub fn new(trials: usize, seed: u64, mode: Mode) -> Self {
        ExperimentConfig {
            trials,
            seed,
            mode,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub trials: usize,
    pub positives: usize,
    pub fraction: f64,
    pub mode: Mode,
    pub seed: u64,
    pub positives_every: usize,
    pub positives_exists: usize,
}

/// One sampled upper-triangular configuration `X = (t_1 t_2 t_3 t_4)`.
#[derive(Debug, Clone)]
pub struct SphereTrial {
    /// Columns of X.
    pub columns: [[f64; 4]; 4],
    /// Candidate `s_4` for each entry of [`NONTRIVIAL_PERMUTATIONS`], with the
    /// unit-norm residual `1 − Σ_{l<4} s_l²`.
    pub candidates: [([f64; 4], f64); 5],
    pub solvable: [bool; 5],
}

impl SphereTrial {
    /// Deterministic sample for `(seed, index)`.
    pub fn sample(seed: u64, index: u64, tol: &Tolerances) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let u2 = unit_vector(2, &mut rng);
        let u3 = unit_vector(3, &mut rng);
        let u4 = unit_vector(4, &mut rng);
        let columns = [
            [1.0, 0.0, 0.0, 0.0],
            [u2[0], u2[1], 0.0, 0.0],
            [u3[0], u3[1], u3[2], 0.0],
            [u4[0], u4[1], u4[2], u4[3]],
        ];
        Self::from_columns(columns, tol)
    }

    pub fn from_columns(columns: [[f64; 4]; 4], tol: &Tolerances) -> Self {
        let dot = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let last: [f64; 3] = std::array::from_fn(|i| dot(&columns[i], &columns[3]));
        let candidates = NONTRIVIAL_PERMUTATIONS.map(|perm| {
            // t_i · s = last[perm[i]] for i < 3; t_i has support in its first i+1 coordinates.
            let mut s = [0.0; 4];
            for i in 0..3 {
                let partial: f64 = (0..i).map(|l| columns[i][l] * s[l]).sum();
                s[i] = (last[perm[i]] - partial) / columns[i][i];
            }
            let residual =
                dot(&columns[3], &columns[3]) - s[..3].iter().map(|v| v * v).sum::<f64>();
            s[3] = residual.max(0.0).sqrt();
            (s, residual)
        });
        let solvable = candidates.map(|(_, residual)| residual >= -tol.eps_match);
        SphereTrial {
            columns,
            candidates,
            solvable,
        }
    }

    pub fn positive(&self, mode: Mode) -> bool {
        match mode {
            Mode::Every => self.solvable.iter().all(|&b| b),
            Mode::Exists => self.solvable.iter().any(|&b| b),
        }
    }

    /// x = Σ δ_{t_i}.
    pub fn signal(&self) -> Result<SparseSignal> {
        SparseSignal::binary(
            self.columns
                .iter()
                .map(|c| Point::new(c.to_vec()))
                .collect::<Result<_>>()?,
        )
    }

    /// y = δ_{t_1} + δ_{t_2} + δ_{t_3} + δ_{s_4} for a solvable permutation.
    pub fn partner(&self, perm: usize) -> Option<Result<SparseSignal>> {
        if !self.solvable[perm] {
            return None;
        }
        let mut cols = self.columns;
        cols[3] = self.candidates[perm].0;
        Some(
            cols.iter()
                .map(|c| Point::new(c.to_vec()))
                .collect::<Result<Vec<_>>>()
                .and_then(SparseSignal::binary),
        )
    }
}

/// Runs `cfg.trials` independent trials; trial `i` draws from the ChaCha
/// stream `i` of `cfg.seed`, so the report does not depend on scheduling.
pub fn mc_sphere_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.trials == 0 {
        return Err(BeltwayError::Config("trials must be at least 1".into()));
    }
    let (every, exists) = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let t = SphereTrial::sample(cfg.seed, i, &cfg.tolerances);
            (
                t.positive(Mode::Every) as usize,
                t.positive(Mode::Exists) as usize,
            )
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let positives = match cfg.mode {
        Mode::Every => every,
        Mode::Exists => exists,
    };
    Ok(ExperimentReport {
        trials: cfg.trials,
        positives,
        fraction: positives as f64 / cfg.trials as f64,
        mode: cfg.mode,
        seed: cfg.seed,
        positives_every: every,
        positives_exists: exists,
    })
}
