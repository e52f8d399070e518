//! Points on a line, their difference multisets, and the half-circle
//! embedding that turns a turnpike instance into an O(2) instance.

use std::f64::consts::PI;

use crate::error::{BeltwayError, Result};
use crate::signal::{Point, SparseSignal};
use crate::tolerance::Tolerances;

/// A finite set of distinct positions on ℝ, kept in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSet(Vec<f64>);

impl LineSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(values, &Tolerances::default())
    }

    pub fn with_tolerances(values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if values.is_empty() {
            return Err(BeltwayError::InvalidSignal("line set is empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(BeltwayError::InvalidSignal(
                "line set has a non-finite value".into(),
            ));
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| tol.matches(w[0], w[1])) {
            return Err(BeltwayError::InvalidSignal(
                "line set has repeated values".into(),
            ));
        }
        Ok(LineSet(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// max − min.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self
            .0
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        hi - lo
    }

    fn sorted(&self) -> Vec<f64> {
        let mut s = self.0.clone();
        s.sort_by(f64::total_cmp);
        s
    }
}

/// Sorted multiset of the k(k−1)/2 distances |a_i − a_j|, i < j.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceMultiset(Vec<f64>);

impl DifferenceMultiset {
    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn approx_eq(&self, other: &DifferenceMultiset, tol: &Tolerances) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| tol.matches(*a, *b))
    }

    /// All distances are distinct, i.e. the line set is collision-free.
    pub fn is_collision_free(&self, tol: &Tolerances) -> bool {
        self.0.windows(2).all(|w| !tol.matches(w[0], w[1]))
    }
}

pub fn difference_multiset(s: &LineSet) -> DifferenceMultiset {
    let v = s.values();
    let mut diffs = Vec::with_capacity(v.len() * v.len().saturating_sub(1) / 2);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            diffs.push((v[i] - v[j]).abs());
        }
    }
    diffs.sort_by(f64::total_cmp);
    DifferenceMultiset(diffs)
}

/// `a ↦ (cos(πa/M), sin(πa/M))`, a binary signal on S¹.
///
/// With `M` at least the diameter of `s`, all pairwise angles lie in
/// `[0, π]`, so `t_i·t_j = cos(π(a_i − a_j)/M)` determines `|a_i − a_j|`.
pub fn embed_half_circle(s: &LineSet, scale: f64) -> Result<SparseSignal> {
    let diameter = s.diameter();
    let tol = Tolerances::default();
    if !(scale > 0.0) || (scale < diameter && !tol.matches(scale, diameter)) {
        return Err(BeltwayError::Scale { scale, diameter });
    }
    let points = s
        .values()
        .iter()
        .map(|&a| {
            let theta = PI * a / scale;
            Point::new(vec![theta.cos(), theta.sin()])
        })
        .collect::<Result<Vec<_>>>()?;
    SparseSignal::binary(points)
}

/// Embedding with the tight scale M = diameter (M = 1 for a single point).
pub fn embed_half_circle_tight(s: &LineSet) -> Result<SparseSignal> {
    let d = s.diameter();
    embed_half_circle(s, if d > 0.0 { d } else { 1.0 })
}

/// The six-point families `P = {0, a, b−2a, 2b−2a, 2b, 3b−a}` and
/// `Q = {0, a, 2a+b, a+2b, 2b−a, 3b−a}`, which share a difference multiset.
pub fn piccard_sets(a: f64, b: f64) -> Result<(LineSet, LineSet)> {
    let p = vec![0.0, a, b - 2.0 * a, 2.0 * b - 2.0 * a, 2.0 * b, 3.0 * b - a];
    let q = vec![0.0, a, 2.0 * a + b, a + 2.0 * b, 2.0 * b - a, 3.0 * b - a];
    let build = |v: Vec<f64>, name: &str| {
        LineSet::new(v).map_err(|_| {
            BeltwayError::DegenerateParameters(format!(
                "(a, b) = ({a}, {b}) gives fewer than six distinct elements in {name}"
            ))
        })
    };
    Ok((build(p, "P")?, build(q, "Q")?))
}

/// `t = s + c` or `t = −s + c` for some real c, as multisets.
pub fn turnpike_equivalent(s: &LineSet, t: &LineSet, tol: &Tolerances) -> bool {
    if s.len() != t.len() {
        return false;
    }
    let normalize = |v: Vec<f64>| -> Vec<f64> {
        let lo = v[0];
        v.into_iter().map(|x| x - lo).collect()
    };
    let s0 = normalize(s.sorted());
    let t0 = normalize(t.sorted());
    let mut reflected: Vec<f64> = t.sorted().into_iter().rev().map(|x| -x).collect();
    reflected = normalize(reflected);
    let scale = s.diameter().max(t.diameter());
    let same = |u: &[f64], v: &[f64]| {
        u.iter()
            .zip(v)
            .all(|(x, y)| tol.matches_scaled(*x, *y, scale))
    };
    same(&s0, &t0) || same(&s0, &reflected)
}
