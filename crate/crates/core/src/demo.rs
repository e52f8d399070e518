//! Worked example: two homometric six-point sets on the line, embedded on
//! the half circle with M = 17.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigUint;

use crate::error::{BeltwayError, Result};
use crate::invariants::second_moment_invariants;
use crate::recovery::enumerate_orbits;
use crate::signal::{gram_matrix, orbit_equivalent, psd_factor, GramMatrix, SparseSignal};
use crate::tolerance::Tolerances;
use crate::turnpike::{embed_half_circle, LineSet};

pub const SET_P: [f64; 6] = [0.0, 1.0, 8.0, 11.0, 13.0, 17.0];
pub const SET_Q: [f64; 6] = [0.0, 1.0, 4.0, 10.0, 12.0, 17.0];
pub const SCALE: f64 = 17.0;

#[derive(Debug, Clone)]
pub struct PiccardDemo {
    pub signal_p: SparseSignal,
    pub signal_q: SparseSignal,
    pub gram_p: GramMatrix,
    pub gram_q: GramMatrix,
    /// Gram of the Q embedding with entries (1,2) and (1,3) swapped
    /// symmetrically.
    pub swapped: GramMatrix,
    pub swapped_eigenvalues: Vec<f64>,
    pub swapped_rank: usize,
    /// Why the swapped matrix cannot be a Gram matrix in the plane.
    pub swapped_factor_error: Option<BeltwayError>,
    pub invariants_equal: bool,
    pub orbit_equivalent: bool,
    pub orbit_count: usize,
    /// Each enumerated orbit as sorted positions in units of π/M, rotated so
    /// the first is 0 and reduced mod 2M.
    pub orbit_positions: Vec<Vec<f64>>,
    /// How many enumerated orbits are equivalent to the P and Q embeddings.
    pub source_hits: (usize, usize),
    pub bound: BigUint,
}

impl PiccardDemo {
    pub fn run() -> Result<Self> {
        let tol = Tolerances::default();
        let signal_p = embed_half_circle(&LineSet::new(SET_P.to_vec())?, SCALE)?;
        let signal_q = embed_half_circle(&LineSet::new(SET_Q.to_vec())?, SCALE)?;
        let gram_p = gram_matrix(&signal_p);
        let gram_q = gram_matrix(&signal_q);

        let mut c: DMatrix<f64> = gram_q.matrix().clone();
        c.swap((0, 1), (0, 2));
        c.swap((1, 0), (2, 0));
        let swapped = GramMatrix::new(c)?;
        let swapped_eigenvalues = swapped.eigenvalues();
        let top = swapped_eigenvalues
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let swapped_rank = swapped_eigenvalues
            .iter()
            .filter(|v| v.abs() > tol.eps_rank * top)
            .count();
        let swapped_factor_error = psd_factor(&swapped, 2, &tol).err();

        let inv_p = second_moment_invariants(&signal_p, &tol)?;
        let inv_q = second_moment_invariants(&signal_q, &tol)?;
        let invariants_equal = inv_p.approx_eq(&inv_q, &tol);
        let equivalent = orbit_equivalent(&signal_p, &signal_q, &tol);

        let result = enumerate_orbits(&inv_p, 2, 16, &tol)?;
        let hits = |s: &SparseSignal| {
            result
                .orbits
                .iter()
                .filter(|o| orbit_equivalent(o, s, &tol))
                .count()
        };
        let source_hits = (hits(&signal_p), hits(&signal_q));
        let orbit_positions = result.orbits.iter().map(circle_positions).collect();

        Ok(PiccardDemo {
            signal_p,
            signal_q,
            gram_p,
            gram_q,
            swapped,
            swapped_eigenvalues,
            swapped_rank,
            swapped_factor_error,
            invariants_equal,
            orbit_equivalent: equivalent,
            orbit_count: result.orbits.len(),
            orbit_positions,
            source_hits,
            bound: result.bound,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let set = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(
            out,
            "P = {{{}}}, Q = {{{}}}, M = {SCALE}",
            set(&SET_P),
            set(&SET_Q)
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "A = Gram of the Q embedding:");
        out.push_str(&render_matrix(&self.gram_q));
        let _ = writeln!(out);
        let _ = writeln!(out, "B = Gram of the P embedding:");
        out.push_str(&render_matrix(&self.gram_p));
        let _ = writeln!(out);
        let _ = writeln!(out, "C = A with entries (1,2) and (1,3) swapped:");
        out.push_str(&render_matrix(&self.swapped));
        let eig: Vec<String> = self
            .swapped_eigenvalues
            .iter()
            .map(|v| format!("{:.2}", clean(*v)))
            .collect();
        let _ = writeln!(out, "eigenvalues of C: {{{}}}", eig.join(", "));
        let _ = writeln!(out, "rank of C: {}", self.swapped_rank);
        match &self.swapped_factor_error {
            Some(e) => {
                let _ = writeln!(out, "C as a planar Gram matrix: rejected ({e})");
            }
            None => {
                let _ = writeln!(out, "C as a planar Gram matrix: accepted");
            }
        }
        let _ = writeln!(out);
        let check = |ok: bool| if ok { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "invariant sets equal: {} [{}]",
            self.invariants_equal,
            check(self.invariants_equal)
        );
        let _ = writeln!(
            out,
            "orbit equivalent: {} [{}]",
            self.orbit_equivalent,
            check(!self.orbit_equivalent)
        );
        let _ = writeln!(out, "orbit bound: {}", self.bound);
        let _ = writeln!(out, "orbits enumerated in the plane: {}", self.orbit_count);
        for (i, pos) in self.orbit_positions.iter().enumerate() {
            let units: Vec<String> = pos.iter().map(|v| format!("{:.2}", clean(*v))).collect();
            let _ = writeln!(
                out,
                "  orbit {}: {{{}}} (units of pi/{SCALE}, mod {})",
                i + 1,
                units.join(", "),
                2.0 * SCALE
            );
        }
        let _ = writeln!(
            out,
            "P embedding found {} time(s), Q embedding found {} time(s) [{}]",
            self.source_hits.0,
            self.source_hits.1,
            check(self.source_hits == (1, 1))
        );
        out
    }

    pub fn all_checks_pass(&self) -> bool {
        self.invariants_equal && !self.orbit_equivalent && self.source_hits == (1, 1)
    }
}

/// Angular positions in units of π/M, canonical under rotation and reflection
/// (lexicographically smallest sorted list).
fn circle_positions(signal: &SparseSignal) -> Vec<f64> {
    let period = 2.0 * SCALE;
    let raw: Vec<f64> = signal
        .points()
        .iter()
        .map(|p| p.coords()[1].atan2(p.coords()[0]) * SCALE / std::f64::consts::PI)
        .collect();
    let mut best: Option<Vec<f64>> = None;
    for sign in [1.0, -1.0] {
        for &origin in &raw {
            let mut v: Vec<f64> = raw
                .iter()
                .map(|a| {
                    let d = (sign * (a - origin)).rem_euclid(period);
                    if (d - period).abs() < 1e-9 {
                        0.0
                    } else {
                        d
                    }
                })
                .collect();
            v.sort_by(f64::total_cmp);
            let smaller = best.as_ref().is_none_or(|b| {
                v.iter()
                    .zip(b)
                    .find(|(x, y)| (*x - *y).abs() > 1e-9)
                    .is_some_and(|(x, y)| x < y)
            });
            if smaller {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

fn clean(v: f64) -> f64 {
    // keeps "-0.00" out of the two-decimal display
    if v.abs() < 0.005 {
        0.0
    } else {
        v
    }
}

fn render_matrix(g: &GramMatrix) -> String {
    let mut out = String::new();
    for i in 0..g.size() {
        let row: Vec<String> = (0..g.size())
            .map(|j| format!("{:>6.2}", clean(g.get(i, j))))
            .collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
    out
}

pub fn run_piccard_demo() -> Result<String> {
    Ok(PiccardDemo::run()?.render())
}
