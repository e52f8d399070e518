//! Text formats.
//!
//! Signal file: a header line `n k`, then `k` lines `w t1 … tn`.
//! Invariant file: a header line `k`, then `k(k+1)/2` lines `a b c wprod` in
//! lexicographic order. In both, `#` starts a comment and blank lines are
//! skipped. Numbers are written with 12 significant digits.

use crate::error::{BeltwayError, Result};
use crate::invariants::{InvariantEntry, InvariantSet, OrbitTriple};
use crate::signal::{Point, SparseSignal};
use crate::tolerance::Tolerances;

const SIG_DIGITS: i32 = 12;

/// Shortest `%.12g`-style rendering; `-0` prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..SIG_DIGITS).contains(&exp) {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| BeltwayError::Parse {
                    line: line_no,
                    message: format!("'{tok}' is not a finite number"),
                })
        })
        .collect()
}

fn parse_count(line_no: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| BeltwayError::Parse {
        line: line_no,
        message: format!("{what} must be a non-negative integer, found '{tok}'"),
    })
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values
        .into_iter()
        .map(format_number)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_signal(signal: &SparseSignal) -> String {
    let mut out = format!("{} {}\n", signal.dim(), signal.len());
    for (w, p) in signal.weights().iter().zip(signal.points()) {
        out.push_str(&join(std::iter::once(*w).chain(p.coords().iter().copied())));
        out.push('\n');
    }
    out
}

/// Parses consecutive signal blocks.
pub fn parse_signals(text: &str, tol: &Tolerances) -> Result<Vec<SparseSignal>> {
    let mut lines = content_lines(text);
    let mut signals = Vec::new();
    while let Some((line_no, header)) = lines.next() {
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(BeltwayError::Parse {
                line: line_no,
                message: "expected header 'n k'".into(),
            });
        }
        let n = parse_count(line_no, toks[0], "n")?;
        let k = parse_count(line_no, toks[1], "k")?;
        let mut weights = Vec::with_capacity(k);
        let mut points = Vec::with_capacity(k);
        for i in 0..k {
            let (row_no, row) = lines.next().ok_or_else(|| BeltwayError::Parse {
                line: line_no,
                message: format!("expected {k} point lines, found {i}"),
            })?;
            let values = parse_numbers(row_no, row)?;
            if values.len() != n + 1 {
                return Err(BeltwayError::Parse {
                    line: row_no,
                    message: format!("expected {} values, found {}", n + 1, values.len()),
                });
            }
            weights.push(values[0]);
            points.push(Point::new(values[1..].to_vec())?);
        }
        signals.push(SparseSignal::with_tolerances(weights, points, tol)?);
    }
    Ok(signals)
}

/// Parses a file holding exactly one signal.
pub fn parse_signal(text: &str, tol: &Tolerances) -> Result<SparseSignal> {
    let mut signals = parse_signals(text, tol)?;
    match signals.len() {
        1 => Ok(signals.pop().expect("one signal")),
        0 => Err(BeltwayError::Parse {
            line: 1,
            message: "empty signal file".into(),
        }),
        m => Err(BeltwayError::Parse {
            line: 1,
            message: format!("expected one signal, found {m}"),
        }),
    }
}

pub fn write_invariants(inv: &InvariantSet) -> String {
    let mut out = format!("{}\n", inv.k());
    for e in inv.entries() {
        out.push_str(&join([e.triple.a, e.triple.b, e.triple.c, e.wprod]));
        out.push('\n');
    }
    out
}

pub fn parse_invariants(text: &str, tol: &Tolerances) -> Result<InvariantSet> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or(BeltwayError::Parse {
        line: 1,
        message: "empty invariant file".into(),
    })?;
    let k = parse_count(line_no, header, "k")?;
    let mut entries = Vec::new();
    for (row_no, row) in lines {
        let v = parse_numbers(row_no, row)?;
        if v.len() != 4 {
            return Err(BeltwayError::Parse {
                line: row_no,
                message: format!("expected 'a b c wprod', found {} values", v.len()),
            });
        }
        entries.push(InvariantEntry {
            triple: OrbitTriple::new(v[0], v[1], v[2]),
            wprod: v[3],
        });
    }
    InvariantSet::from_entries(k, entries, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(123456789012.0), "123456789012");
        assert_eq!(format_number(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_number(1.5e-7), "1.5e-07");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(9.9999999999999), "10");
    }

    #[test]
    fn signal_round_trip_is_byte_identical() {
        let text = "2 3\n1 1 0\n-2 0.6 0.8\n0.5 0 -3\n";
        let s = parse_signal(text, &Tolerances::default()).unwrap();
        assert_eq!(write_signal(&s), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\n2 1   # n k\n  1 3 4 # point\n";
        let s = parse_signal(text, &Tolerances::default()).unwrap();
        assert_eq!(write_signal(&s), "2 1\n1 3 4\n");
    }

    #[test]
    fn malformed_signals_report_lines() {
        let tol = Tolerances::default();
        assert!(matches!(
            parse_signal("2 1\n1 2\n", &tol),
            Err(BeltwayError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_signal("2 2\n1 2 3\n", &tol),
            Err(BeltwayError::Parse { .. })
        ));
        assert!(matches!(
            parse_signal("2 1\n1 x 3\n", &tol),
            Err(BeltwayError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_signal("", &tol),
            Err(BeltwayError::Parse { .. })
        ));
        assert!(matches!(
            parse_signal("1 1\n0 1\n", &tol),
            Err(BeltwayError::InvalidSignal(_))
        ));
    }

    #[test]
    fn bundles_parse_in_order() {
        let text = "# orbit 1\n1 1\n1 2\n# orbit 2\n1 2\n1 1\n1 -1\n";
        let v = parse_signals(text, &Tolerances::default()).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].len(), 2);
    }

    #[test]
    fn invariant_round_trip() {
        let text = "2\n1 1 1 1\n1 4 0 -2\n4 4 4 4\n";
        let inv = parse_invariants(text, &Tolerances::default()).unwrap();
        assert_eq!(write_invariants(&inv), text);
    }

    #[test]
    fn invariant_lines_are_canonicalized() {
        let inv =
            parse_invariants("2\n4 4 4 1\n4 1 0 1\n1 1 1 1\n", &Tolerances::default()).unwrap();
        assert_eq!(write_invariants(&inv), "2\n1 1 1 1\n1 4 0 1\n4 4 4 1\n");
    }

    #[test]
    fn invariant_count_is_checked() {
        let r = parse_invariants("2\n1 1 1 1\n", &Tolerances::default());
        assert!(matches!(r, Err(BeltwayError::MalformedInvariants(_))));
    }
}
