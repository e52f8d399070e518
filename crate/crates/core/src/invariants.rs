//! Finite encoding of the second moment of a collision-free δ-function.
//!
//! The O(n)-orbit of a point pair `(t_i, t_j)` is determined by the triple
//! `(‖t_i‖², ‖t_j‖², t_i·t_j)`. When the support is collision-free the
//! second moment is therefore the multiset of these triples over `i ≤ j`,
//! each tagged with the weight product `w_i w_j`.

use std::cmp::Ordering;

use crate::error::{BeltwayError, Result};
use crate::signal::{Point, SparseSignal};
use crate::tolerance::Tolerances;

/// Canonical descriptor `(a, b, c)` of the orbit of an unordered point pair:
/// `a ≤ b` are the squared magnitudes, `c` the inner product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl OrbitTriple {
    /// Orders the two squared magnitudes so that `a ≤ b`.
    pub fn new(m1: f64, m2: f64, c: f64) -> Self {
        OrbitTriple {
            a: m1.min(m2),
            b: m1.max(m2),
            c,
        }
    }

    pub fn is_diagonal(&self, tol: &Tolerances, scale: f64) -> bool {
        tol.matches_scaled(self.a, self.c, scale) && tol.matches_scaled(self.b, self.c, scale)
    }

    fn approx_eq(&self, other: &OrbitTriple, tol: &Tolerances, scale: f64) -> bool {
        tol.matches_scaled(self.a, other.a, scale)
            && tol.matches_scaled(self.b, other.b, scale)
            && tol.matches_scaled(self.c, other.c, scale)
    }
}

/// One orbit of the second moment together with its mass `w_i w_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantEntry {
    pub triple: OrbitTriple,
    pub wprod: f64,
}

impl InvariantEntry {
    fn lex_cmp(&self, other: &InvariantEntry) -> Ordering {
        self.triple
            .a
            .total_cmp(&other.triple.a)
            .then(self.triple.b.total_cmp(&other.triple.b))
            .then(self.triple.c.total_cmp(&other.triple.c))
            .then(self.wprod.total_cmp(&other.wprod))
    }
}

/// The k(k+1)/2 entries describing `m₂(x)`, stored in lexicographic order of
/// `(a, b, c, wprod)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSet {
    k: usize,
    entries: Vec<InvariantEntry>,
}

impl InvariantSet {
    /// Validates entry count, triple shape and the number of diagonal entries.
    pub fn from_entries(
        k: usize,
        mut entries: Vec<InvariantEntry>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if k == 0 {
            return Err(BeltwayError::MalformedInvariants(
                "k must be positive".into(),
            ));
        }
        if entries.len() != k * (k + 1) / 2 {
            return Err(BeltwayError::MalformedInvariants(format!(
                "expected {} entries for k = {k}, found {}",
                k * (k + 1) / 2,
                entries.len()
            )));
        }
        for e in &entries {
            let t = e.triple;
            if ![t.a, t.b, t.c, e.wprod].iter().all(|v| v.is_finite()) {
                return Err(BeltwayError::MalformedInvariants("non-finite value".into()));
            }
            if t.a > t.b || t.a < 0.0 {
                return Err(BeltwayError::MalformedInvariants(format!(
                    "triple ({}, {}, {}) is not canonical",
                    t.a, t.b, t.c
                )));
            }
            if e.wprod == 0.0 {
                return Err(BeltwayError::MalformedInvariants(
                    "zero weight product".into(),
                ));
            }
        }
        entries.sort_by(InvariantEntry::lex_cmp);
        let set = InvariantSet { k, entries };
        let diagonal = set.diagonal(tol).len();
        if diagonal != k {
            return Err(BeltwayError::MalformedInvariants(format!(
                "expected {k} diagonal triples (a, a, a), found {diagonal}"
            )));
        }
        Ok(set)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[InvariantEntry] {
        &self.entries
    }

    /// Largest squared magnitude appearing in the set.
    pub fn scale(&self) -> f64 {
        self.entries.iter().map(|e| e.triple.b).fold(0.0, f64::max)
    }

    /// Largest |w_i w_j|.
    pub fn weight_scale(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.wprod.abs())
            .fold(0.0, f64::max)
    }

    /// Entries of the form `(a, a, a)`, i.e. the pairs `i = j`.
    pub fn diagonal(&self, tol: &Tolerances) -> Vec<InvariantEntry> {
        let scale = self.scale();
        self.entries
            .iter()
            .filter(|e| e.triple.is_diagonal(tol, scale))
            .copied()
            .collect()
    }

    pub fn off_diagonal(&self, tol: &Tolerances) -> Vec<InvariantEntry> {
        let scale = self.scale();
        self.entries
            .iter()
            .filter(|e| !e.triple.is_diagonal(tol, scale))
            .copied()
            .collect()
    }

    /// Multiset equality within tolerance.
    pub fn approx_eq(&self, other: &InvariantSet, tol: &Tolerances) -> bool {
        if self.k != other.k || self.entries.len() != other.entries.len() {
            return false;
        }
        let scale = self.scale().max(other.scale());
        let wscale = self.weight_scale().max(other.weight_scale());
        let mut used = vec![false; other.entries.len()];
        // Both sides are sorted, so the matching partner is almost always at
        // the same index; the scan only matters for values tied within tolerance.
        self.entries.iter().enumerate().all(|(idx, e)| {
            let hit = std::iter::once(idx)
                .chain(0..other.entries.len())
                .find(|&j| {
                    !used[j]
                        && e.triple.approx_eq(&other.entries[j].triple, tol, scale)
                        && tol.matches_scaled(e.wprod, other.entries[j].wprod, wscale)
                });
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

/// `(min(‖t_i‖², ‖t_j‖²), max(‖t_i‖², ‖t_j‖²), t_i·t_j)`.
pub fn pair_orbit_triple(ti: &Point, tj: &Point) -> Result<OrbitTriple> {
    if ti.dim() != tj.dim() {
        return Err(BeltwayError::DimensionMismatch {
            left: ti.dim(),
            right: tj.dim(),
        });
    }
    Ok(OrbitTriple::new(ti.norm_sq(), tj.norm_sq(), ti.dot(tj)))
}

fn off_diagonal_triples(signal: &SparseSignal) -> Vec<OrbitTriple> {
    let pts = signal.points();
    let mut out = Vec::with_capacity(pts.len() * pts.len().saturating_sub(1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            out.push(OrbitTriple::new(
                pts[i].norm_sq(),
                pts[j].norm_sq(),
                pts[i].dot(&pts[j]),
            ));
        }
    }
    out
}

/// The invariant set of a collision-free signal.
pub fn second_moment_invariants(signal: &SparseSignal, tol: &Tolerances) -> Result<InvariantSet> {
    if !is_collision_free(signal, tol) {
        return Err(BeltwayError::NotCollisionFree);
    }
    let pts = signal.points();
    let w = signal.weights();
    let mut entries = Vec::with_capacity(pts.len() * (pts.len() + 1) / 2);
    for i in 0..pts.len() {
        for j in i..pts.len() {
            entries.push(InvariantEntry {
                triple: OrbitTriple::new(pts[i].norm_sq(), pts[j].norm_sq(), pts[i].dot(&pts[j])),
                wprod: w[i] * w[j],
            });
        }
    }
    entries.sort_by(InvariantEntry::lex_cmp);
    Ok(InvariantSet {
        k: pts.len(),
        entries,
    })
}

/// No two distinct unordered pairs of support points share an orbit.
pub fn is_collision_free(signal: &SparseSignal, tol: &Tolerances) -> bool {
    let triples = off_diagonal_triples(signal);
    let scale = signal.scale();
    for i in 0..triples.len() {
        for j in 0..i {
            if triples[i].approx_eq(&triples[j], tol, scale) {
                return false;
            }
        }
    }
    true
}

/// All support points have distinct magnitudes.
pub fn is_radially_collision_free(signal: &SparseSignal, tol: &Tolerances) -> bool {
    let scale = signal.scale();
    let mags: Vec<f64> = signal.points().iter().map(Point::norm_sq).collect();
    (0..mags.len()).all(|i| (0..i).all(|j| !tol.matches_scaled(mags[i], mags[j], scale)))
}

/// Distinct magnitudes `z_1 < … < z_q` and their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudePartition {
    magnitudes: Vec<f64>,
    multiplicities: Vec<usize>,
}

impl MagnitudePartition {
    pub fn new(magnitudes: Vec<f64>, multiplicities: Vec<usize>) -> Result<Self> {
        if magnitudes.is_empty() || magnitudes.len() != multiplicities.len() {
            return Err(BeltwayError::Config(
                "partition needs one multiplicity per magnitude and at least one block".into(),
            ));
        }
        if multiplicities.contains(&0) {
            return Err(BeltwayError::Config(
                "multiplicities must be positive".into(),
            ));
        }
        if magnitudes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(BeltwayError::Config(
                "magnitudes must be strictly increasing".into(),
            ));
        }
        Ok(MagnitudePartition {
            magnitudes,
            multiplicities,
        })
    }

    /// Partition with the given multiplicities and placeholder magnitudes 1..=q.
    pub fn from_multiplicities(multiplicities: Vec<usize>) -> Result<Self> {
        let magnitudes = (1..=multiplicities.len()).map(|z| z as f64).collect();
        Self::new(magnitudes, multiplicities)
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// k = Σ r_p.
    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_radially_collision_free(&self) -> bool {
        self.multiplicities.iter().all(|&r| r == 1)
    }
}

/// Clusters the diagonal squared magnitudes of `inv`.
pub fn magnitude_partition(inv: &InvariantSet, tol: &Tolerances) -> MagnitudePartition {
    let scale = inv.scale();
    let mut squared: Vec<f64> = inv.diagonal(tol).iter().map(|e| e.triple.a).collect();
    squared.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, Vec<f64>)> = Vec::new();
    for v in squared {
        match clusters.last_mut() {
            Some((anchor, members)) if tol.matches_scaled(*anchor, v, scale) => members.push(v),
            _ => clusters.push((v, vec![v])),
        }
    }
    let magnitudes = clusters
        .iter()
        .map(|(_, m)| (m.iter().sum::<f64>() / m.len() as f64).sqrt())
        .collect();
    let multiplicities = clusters.iter().map(|(_, m)| m.len()).collect();
    MagnitudePartition {
        magnitudes,
        multiplicities,
    }
}
