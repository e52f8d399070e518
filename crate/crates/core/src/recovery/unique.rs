use nalgebra::DMatrix;

use super::layout::Layout;
use crate::error::{BeltwayError, Result};
use crate::invariants::InvariantSet;
use crate::signal::{psd_factor, GramMatrix, SparseSignal};
use crate::tolerance::Tolerances;

/// Recovery when all magnitudes are distinct.
///
/// Sorting the support by magnitude, each off-diagonal triple `(a, b, c)`
/// with `a ≠ b` names exactly one Gram entry, so the Gram matrix is read off
/// directly and factored into ℝⁿ. Weights come from the diagonal products
/// with signs fixed by `w_1 > 0`.
pub fn recover_unique(inv: &InvariantSet, n: usize, tol: &Tolerances) -> Result<SparseSignal> {
    let layout = Layout::new(inv, tol)?;
    if !layout.partition.is_radially_collision_free() {
        return Err(BeltwayError::NotRadiallyCollisionFree);
    }
    let mut gram = layout.diagonal_gram();
    let mut products = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        layout.k,
        layout.wabs.iter().map(|w| w * w),
    ));
    for e in &layout.off {
        let (i, j) = e.blocks;
        gram[(i, j)] = e.c;
        gram[(j, i)] = e.c;
        products[(i, j)] = e.wprod;
        products[(j, i)] = e.wprod;
    }
    let weights = layout.signed_weights(&products, tol)?;
    let points = psd_factor(&GramMatrix::new(gram)?, n, tol)?;
    SparseSignal::with_tolerances(weights, points, tol)
}
