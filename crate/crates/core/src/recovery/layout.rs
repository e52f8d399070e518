//! Index layout shared by the recovery paths: the diagonal sorted by
//! magnitude, the magnitude blocks, and the off-diagonal entries tagged with
//! the block pair they must land in.

use nalgebra::DMatrix;

use crate::error::{BeltwayError, Result};
use crate::invariants::{magnitude_partition, InvariantSet, MagnitudePartition};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy)]
pub(crate) struct OffEntry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub wprod: f64,
    /// (block of a, block of b), first ≤ second.
    pub blocks: (usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub k: usize,
    /// Squared magnitudes in non-decreasing order.
    pub diag: Vec<f64>,
    /// |w_i| read from the diagonal products w_i².
    pub wabs: Vec<f64>,
    pub block_of: Vec<usize>,
    pub partition: MagnitudePartition,
    pub off: Vec<OffEntry>,
    pub scale: f64,
    pub wscale: f64,
}

impl Layout {
    pub fn new(inv: &InvariantSet, tol: &Tolerances) -> Result<Self> {
        let k = inv.k();
        let scale = inv.scale();
        let wscale = inv.weight_scale();
        let mut diag = inv.diagonal(tol);
        diag.sort_by(|x, y| {
            x.triple
                .a
                .total_cmp(&y.triple.a)
                .then(x.wprod.total_cmp(&y.wprod))
        });
        if let Some(bad) = diag
            .iter()
            .find(|e| e.wprod <= 0.0 || tol.matches_scaled(e.wprod, 0.0, wscale))
        {
            return Err(BeltwayError::InconsistentWeights(format!(
                "diagonal product {} cannot be a squared weight",
                bad.wprod
            )));
        }

        let partition = magnitude_partition(inv, tol);
        let mut block_of = Vec::with_capacity(k);
        for (p, &r) in partition.multiplicities().iter().enumerate() {
            block_of.extend(std::iter::repeat_n(p, r));
        }
        let anchors: Vec<f64> = partition.magnitudes().iter().map(|z| z * z).collect();
        let find_block = |v: f64| -> Result<usize> {
            anchors
                .iter()
                .position(|&z| tol.matches_scaled(z, v, scale))
                .ok_or_else(|| {
                    BeltwayError::MalformedInvariants(format!(
                        "squared magnitude {v} does not appear on the diagonal"
                    ))
                })
        };

        let q = anchors.len();
        let mut counts = vec![vec![0usize; q]; q];
        let mut off = Vec::with_capacity(k * (k - 1) / 2);
        for e in inv.off_diagonal(tol) {
            let (ba, bb) = (find_block(e.triple.a)?, find_block(e.triple.b)?);
            let blocks = (ba.min(bb), ba.max(bb));
            counts[blocks.0][blocks.1] += 1;
            off.push(OffEntry {
                a: e.triple.a,
                b: e.triple.b,
                c: e.triple.c,
                wprod: e.wprod,
                blocks,
            });
        }
        let r = partition.multiplicities();
        for a in 0..q {
            for b in a..q {
                let expected = if a == b {
                    r[a] * (r[a] - 1) / 2
                } else {
                    r[a] * r[b]
                };
                if counts[a][b] != expected {
                    return Err(BeltwayError::MalformedInvariants(format!(
                        "block pair ({a}, {b}) has {} entries, expected {expected}",
                        counts[a][b]
                    )));
                }
            }
        }

        Ok(Layout {
            k,
            diag: diag.iter().map(|e| e.triple.a).collect(),
            wabs: diag.iter().map(|e| e.wprod.sqrt()).collect(),
            block_of,
            partition,
            off,
            scale,
            wscale,
        })
    }

    /// Off-diagonal triples must be pairwise distinct.
    pub fn is_collision_free(&self, tol: &Tolerances) -> bool {
        let same = |x: &OffEntry, y: &OffEntry| {
            tol.matches_scaled(x.a, y.a, self.scale)
                && tol.matches_scaled(x.b, y.b, self.scale)
                && tol.matches_scaled(x.c, y.c, self.scale)
        };
        (0..self.off.len()).all(|i| (0..i).all(|j| !same(&self.off[i], &self.off[j])))
    }

    /// Gram matrix with the diagonal filled in.
    pub fn diagonal_gram(&self) -> DMatrix<f64> {
        DMatrix::from_fn(
            self.k,
            self.k,
            |i, j| if i == j { self.diag[i] } else { 0.0 },
        )
    }

    /// Signed weights from a full matrix of products, with w_0 > 0.
    pub fn signed_weights(&self, products: &DMatrix<f64>, tol: &Tolerances) -> Result<Vec<f64>> {
        let mut weights = self.wabs.clone();
        for j in 1..self.k {
            weights[j] *= products[(0, j)].signum();
        }
        for i in 0..self.k {
            for j in i + 1..self.k {
                let p = products[(i, j)];
                if !tol.matches_scaled(p, weights[i] * weights[j], self.wscale) {
                    return Err(BeltwayError::InconsistentWeights(format!(
                        "product {p} at ({i}, {j}) does not factor as {} · {}",
                        weights[i], weights[j]
                    )));
                }
            }
        }
        Ok(weights)
    }
}
