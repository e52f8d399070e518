use nalgebra::DMatrix;

use super::layout::{Layout, OffEntry};
use crate::error::{BeltwayError, Result};
use crate::invariants::InvariantSet;
use crate::signal::{psd_factor, GramMatrix, SparseSignal};
use crate::tolerance::Tolerances;

/// No two of the products `w_i w_j`, i < j, agree within tolerance.
pub fn weight_products_distinct(weights: &[f64], tol: &Tolerances) -> bool {
    let mut products = Vec::new();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            products.push(weights[i] * weights[j]);
        }
    }
    let scale = products.iter().map(|p| p.abs()).fold(0.0, f64::max);
    (0..products.len())
        .all(|i| (0..i).all(|j| !tol.matches_scaled(products[i], products[j], scale)))
}

/// Recovery when the off-diagonal weight products are pairwise distinct.
///
/// Each off-diagonal entry is placed at the index pair whose magnitudes and
/// |w_i||w_j| it matches; distinct products leave no freedom beyond
/// relabeling points that agree in magnitude and |weight|, so the first
/// labeling with consistent weight signs fixes the Gram matrix. The result is
/// the source orbit up to the global sign of the weights.
pub fn recover_distinct_weight_products(
    inv: &InvariantSet,
    n: usize,
    tol: &Tolerances,
) -> Result<SparseSignal> {
    let layout = Layout::new(inv, tol)?;
    if !layout.is_collision_free(tol) {
        return Err(BeltwayError::NotCollisionFree);
    }
    let off = &layout.off;
    let distinct = (0..off.len())
        .all(|i| (0..i).all(|j| !tol.matches_scaled(off[i].wprod, off[j].wprod, layout.wscale)));
    if !distinct {
        return Err(BeltwayError::WeightProductsNotDistinct);
    }

    let k = layout.k;
    let candidates: Vec<Vec<(usize, usize)>> = off
        .iter()
        .map(|e| {
            let mut slots = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    if (layout.block_of[i], layout.block_of[j]) == e.blocks
                        && tol.matches_scaled(
                            e.wprod.abs(),
                            layout.wabs[i] * layout.wabs[j],
                            layout.wscale,
                        )
                    {
                        slots.push((i, j));
                    }
                }
            }
            slots
        })
        .collect();
    let mut order: Vec<usize> = (0..off.len()).collect();
    order.sort_by_key(|&e| candidates[e].len());

    let mut labeling = Labeling {
        layout: &layout,
        candidates: &candidates,
        order: &order,
        slot_of: vec![None; off.len()],
        taken: vec![vec![None; k]; k],
    };
    if !labeling.search(0) {
        return Err(BeltwayError::InconsistentWeights(
            "no labeling of the weight products is sign-consistent".into(),
        ));
    }

    let mut gram = layout.diagonal_gram();
    let mut products = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            layout.wabs[i] * layout.wabs[i]
        } else {
            0.0
        }
    });
    for (e, slot) in off.iter().zip(&labeling.slot_of) {
        let (i, j) = slot.expect("complete labeling");
        gram[(i, j)] = e.c;
        gram[(j, i)] = e.c;
        products[(i, j)] = e.wprod;
        products[(j, i)] = e.wprod;
    }
    let weights = layout.signed_weights(&products, tol)?;
    let points = psd_factor(&GramMatrix::new(gram)?, n, tol)?;
    SparseSignal::with_tolerances(weights, points, tol)
}

struct Labeling<'a> {
    layout: &'a Layout,
    candidates: &'a [Vec<(usize, usize)>],
    order: &'a [usize],
    slot_of: Vec<Option<(usize, usize)>>,
    /// Sign of the product placed at (i, j), stored symmetrically.
    taken: Vec<Vec<Option<f64>>>,
}

impl Labeling<'_> {
    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        let entry: OffEntry = self.layout.off[e];
        for &(i, j) in &self.candidates[e] {
            if self.taken[i][j].is_some() {
                continue;
            }
            let sign = entry.wprod.signum();
            // w_i w_j · w_i w_l · w_j w_l is a product of squares.
            let triangles_ok = (0..self.layout.k).filter(|&l| l != i && l != j).all(|l| {
                match (self.taken[i][l], self.taken[j][l]) {
                    (Some(sil), Some(sjl)) => sign * sil * sjl > 0.0,
                    _ => true,
                }
            });
            if !triangles_ok {
                continue;
            }
            self.taken[i][j] = Some(sign);
            self.taken[j][i] = Some(sign);
            self.slot_of[e] = Some((i, j));
            if self.search(depth + 1) {
                return true;
            }
            self.taken[i][j] = None;
            self.taken[j][i] = None;
            self.slot_of[e] = None;
        }
        false
    }
}
