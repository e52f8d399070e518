//! Points, δ-function signals and their Gram matrices.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{BeltwayError, Result};
use crate::tolerance::Tolerances;

/// A support point in ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(BeltwayError::InvalidPoint(
                "point has no coordinates".into(),
            ));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(BeltwayError::InvalidPoint(format!(
                "non-finite coordinate {bad}"
            )));
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    fn distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// `x = Σ w_i δ_{t_i}`: k non-zero weights on k distinct points of ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSignal {
    dim: usize,
    weights: Vec<f64>,
    points: Vec<Point>,
}

impl SparseSignal {
    pub fn new(weights: Vec<f64>, points: Vec<Point>) -> Result<Self> {
        Self::with_tolerances(weights, points, &Tolerances::default())
    }

    pub fn with_tolerances(
        weights: Vec<f64>,
        points: Vec<Point>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(BeltwayError::InvalidSignal(
                "signal has no support points".into(),
            ));
        }
        if weights.len() != points.len() {
            return Err(BeltwayError::InvalidSignal(format!(
                "{} weights for {} points",
                weights.len(),
                points.len()
            )));
        }
        let dim = points[0].dim();
        for p in &points {
            if p.dim() != dim {
                return Err(BeltwayError::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w == 0.0) {
            return Err(BeltwayError::InvalidSignal(format!(
                "weights must be finite and non-zero, got {w}"
            )));
        }
        for i in 0..points.len() {
            for j in 0..i {
                let scale = points[i].norm_sq().max(points[j].norm_sq()).sqrt();
                if points[i].distance(&points[j]) <= tol.eps_match * scale.max(1.0) {
                    return Err(BeltwayError::InvalidSignal(format!(
                        "points {j} and {i} coincide"
                    )));
                }
            }
        }
        Ok(SparseSignal {
            dim,
            weights,
            points,
        })
    }

    /// Binary signal: every weight equal to 1.
    pub fn binary(points: Vec<Point>) -> Result<Self> {
        let weights = vec![1.0; points.len()];
        Self::new(weights, points)
    }

    /// Builds a signal from an n×k matrix whose columns are the points.
    pub fn from_columns(weights: Vec<f64>, columns: &DMatrix<f64>) -> Result<Self> {
        let points = columns
            .column_iter()
            .map(|c| Point::new(c.iter().copied().collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of support points k.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The n×k matrix X = (t_1 … t_k).
    pub fn point_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.len(), |r, c| self.points[c].0[r])
    }

    /// g·x for an n×n matrix g.
    pub fn transformed(&self, g: &DMatrix<f64>) -> Result<Self> {
        if g.nrows() != self.dim || g.ncols() != self.dim {
            return Err(BeltwayError::DimensionMismatch {
                left: self.dim,
                right: g.nrows(),
            });
        }
        Self::from_columns(self.weights.clone(), &(g * self.point_matrix()))
    }

    /// −x, which has the same second moment as x.
    pub fn negated(&self) -> Self {
        SparseSignal {
            dim: self.dim,
            weights: self.weights.iter().map(|w| -w).collect(),
            points: self.points.clone(),
        }
    }

    /// The same signal with its support listed in `order`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        SparseSignal {
            dim: self.dim,
            weights: order.iter().map(|&i| self.weights[i]).collect(),
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Largest squared magnitude of a support point.
    pub fn scale(&self) -> f64 {
        self.points.iter().map(Point::norm_sq).fold(0.0, f64::max)
    }
}

/// Symmetric k×k matrix of pairwise inner products.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(DMatrix<f64>);

impl GramMatrix {
    /// Accepts a square matrix that is symmetric up to rounding and stores
    /// its exact symmetrization.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(BeltwayError::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        let scale = m.amax().max(1.0);
        let asym = (&m - m.transpose()).amax();
        if !(asym <= 1e-12 * scale) {
            return Err(BeltwayError::InvalidSignal(format!(
                "Gram matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        let sym = (&m + m.transpose()) * 0.5;
        Ok(GramMatrix(sym))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(BeltwayError::InvalidSignal(
                "Gram rows must form a square".into(),
            ));
        }
        Self::new(DMatrix::from_fn(k, k, |i, j| rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// Eigenvalues sorted in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.0.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// Largest absolute difference to another Gram matrix of the same size.
    pub fn max_abs_diff(&self, other: &GramMatrix) -> f64 {
        (&self.0 - &other.0).amax()
    }
}

/// A[i][j] = t_i·t_j.
pub fn gram_matrix(signal: &SparseSignal) -> GramMatrix {
    let k = signal.len();
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = signal.points[i].dot(&signal.points[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    GramMatrix(m)
}

/// Factors a PSD Gram matrix as XᵀX with X having `max_dim` rows.
///
/// Points are the rows of V·√Λ for the eigendecomposition sorted by
/// descending eigenvalue, keeping the `max_dim` largest and zero padding.
/// Negative eigenvalues above `-eps_psd·λ_max` are clamped to zero; the
/// numerical rank (eigenvalues above `eps_rank·λ_max`) must not exceed
/// `max_dim`.
pub fn psd_factor(gram: &GramMatrix, max_dim: usize, tol: &Tolerances) -> Result<Vec<Point>> {
    if max_dim == 0 {
        return Err(BeltwayError::Precondition(
            "target dimension must be positive".into(),
        ));
    }
    let k = gram.size();
    let eig = SymmetricEigen::new(gram.0.clone());
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let scale = eig.eigenvalues.amax();
    let min_eigenvalue = eig.eigenvalues.min();
    if scale > 0.0 && min_eigenvalue < -tol.eps_psd * scale {
        return Err(BeltwayError::NotPsd { min_eigenvalue });
    }
    let rank = order
        .iter()
        .filter(|&&l| eig.eigenvalues[l] > tol.eps_rank * scale)
        .count();
    if rank > max_dim {
        return Err(BeltwayError::RankExceeded { rank, dim: max_dim });
    }

    (0..k)
        .map(|i| {
            let mut coords = vec![0.0; max_dim];
            for (slot, &l) in order.iter().take(max_dim).enumerate() {
                coords[slot] = eig.eigenvalues[l].max(0.0).sqrt() * eig.eigenvectors[(i, l)];
            }
            Point::new(coords)
        })
        .collect()
}

/// Rotates the support so that X is upper triangular with a non-negative
/// diagonal. Requires k ≤ n.
pub fn reduce_to_triangular(signal: &SparseSignal) -> Result<SparseSignal> {
    let (n, k) = (signal.dim(), signal.len());
    if k > n {
        return Err(BeltwayError::Dimension { points: k, dim: n });
    }
    let x = signal.point_matrix();
    let mut r = DMatrix::zeros(n, k);
    // Householder QR; `r()` is min(n,k)×k = k×k with exact zeros below the diagonal.
    r.view_mut((0, 0), (k, k)).copy_from(&x.qr().r());
    for i in 0..k {
        if r[(i, i)] < 0.0 {
            r.row_mut(i).neg_mut();
        }
    }
    Ok(SparseSignal {
        dim: n,
        weights: signal.weights.clone(),
        points: r
            .column_iter()
            .map(|c| Point(c.iter().copied().collect()))
            .collect(),
    })
}

/// True iff some permutation π matches weights and all Gram entries:
/// `w^y_{π(i)} = w^x_i` and `(YᵀY)[π(i)][π(j)] = (XᵀX)[i][j]`.
///
/// Only the Gram matrices are compared, so signals embedded in different
/// ambient dimensions are equivalent when one is a zero-padded copy of a
/// rotation of the other.
pub fn orbit_equivalent(x: &SparseSignal, y: &SparseSignal, tol: &Tolerances) -> bool {
    let k = x.len();
    if y.len() != k {
        return false;
    }
    let gx = gram_matrix(x);
    let gy = gram_matrix(y);
    let scale = x.scale().max(y.scale());
    let mut assignment = vec![usize::MAX; k];
    let mut used = vec![false; k];
    match_points(0, x, y, &gx, &gy, scale, tol, &mut assignment, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn match_points(
    i: usize,
    x: &SparseSignal,
    y: &SparseSignal,
    gx: &GramMatrix,
    gy: &GramMatrix,
    scale: f64,
    tol: &Tolerances,
    assignment: &mut [usize],
    used: &mut [bool],
) -> bool {
    let k = x.len();
    if i == k {
        return true;
    }
    for j in 0..k {
        if used[j]
            || !tol.matches(x.weights[i], y.weights[j])
            || !tol.matches_scaled(gx.get(i, i), gy.get(j, j), scale)
        {
            continue;
        }
        let consistent =
            (0..i).all(|p| tol.matches_scaled(gx.get(p, i), gy.get(assignment[p], j), scale));
        if !consistent {
            continue;
        }
        assignment[i] = j;
        used[j] = true;
        if match_points(i + 1, x, y, gx, gy, scale, tol, assignment, used) {
            return true;
        }
        used[j] = false;
    }
    false
}

/// Builds a homometric partner of a binary signal with linearly independent
/// support containing two points of equal magnitude.
///
/// The equal-magnitude pair is moved to the front, the support is rotated to
/// upper-triangular form in ℝ^k, and the last point t_k is replaced by the
/// s_k solving `t_1·s = t_2·t_k`, `t_2·s = t_1·t_k`, `t_i·s = t_i·t_k` for
/// the remaining i < k, with `‖s‖ = ‖t_k‖` and a non-negative last
/// coordinate. The result is returned in that triangular frame, zero padded
/// to ℝⁿ, with the original point order.
pub fn homometric_partner(signal: &SparseSignal, tol: &Tolerances) -> Result<SparseSignal> {
    let (n, k) = (signal.dim(), signal.len());
    if k > n {
        return Err(BeltwayError::Precondition(format!(
            "{k} points exceed dimension {n}"
        )));
    }
    if k < 3 {
        return Err(BeltwayError::Precondition(
            "at least three points are required".into(),
        ));
    }
    if signal.weights.iter().any(|&w| !tol.matches(w, 1.0)) {
        return Err(BeltwayError::Precondition("signal is not binary".into()));
    }
    let scale = signal.scale();
    let (first, second) = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .find(|&(i, j)| {
            tol.matches_scaled(
                signal.points[i].norm_sq(),
                signal.points[j].norm_sq(),
                scale,
            )
        })
        .ok_or_else(|| BeltwayError::Precondition("no two points share a magnitude".into()))?;

    let mut order = vec![first, second];
    order.extend((0..k).filter(|&i| i != first && i != second));
    let tri = reduce_to_triangular(&signal.reordered(&order))?;
    let x = tri.point_matrix();

    let max_diag = (0..k).map(|i| x[(i, i)]).fold(0.0, f64::max);
    if (0..k).any(|i| x[(i, i)] <= tol.eps_rank * max_diag.max(f64::MIN_POSITIVE)) {
        return Err(BeltwayError::Precondition(
            "support points are linearly dependent".into(),
        ));
    }

    let last = k - 1;
    let inner = |i: usize, j: usize| -> f64 { (0..k).map(|r| x[(r, i)] * x[(r, j)]).sum() };
    let (g1, g2) = (inner(0, last), inner(1, last));
    if tol.matches_scaled(g1, g2, scale) {
        return Err(BeltwayError::DegeneratePartner);
    }

    // Forward substitution on the lower-triangular system Xᵀ s = rhs.
    let mut s = vec![0.0; k];
    for i in 0..last {
        let rhs = match i {
            0 => g2,
            1 => g1,
            _ => inner(i, last),
        };
        let partial: f64 = (0..i).map(|l| x[(l, i)] * s[l]).sum();
        s[i] = (rhs - partial) / x[(i, i)];
    }
    let residual = inner(last, last) - s[..last].iter().map(|v| v * v).sum::<f64>();
    if residual < -tol.eps_match * scale.max(1.0) {
        return Err(BeltwayError::NoRealSolution { residual });
    }
    s[last] = residual.max(0.0).sqrt();

    let mut points: Vec<Point> = vec![Point(Vec::new()); k];
    for (slot, &orig) in order.iter().enumerate() {
        let mut coords = vec![0.0; n];
        if slot == last {
            coords[..k].copy_from_slice(&s);
        } else {
            coords[..k].copy_from_slice(&tri.points[slot].0[..k]);
        }
        points[orig] = Point(coords);
    }
    let partner = SparseSignal::with_tolerances(signal.weights.clone(), points, tol)?;
    if orbit_equivalent(signal, &partner, tol) {
        return Err(BeltwayError::DegeneratePartner);
    }
    Ok(partner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::second_moment_invariants;
    use crate::sampling::{random_orthogonal, unit_vector};
    use crate::turnpike::{embed_half_circle, LineSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn pts(rows: &[&[f64]]) -> Vec<Point> {
        rows.iter()
            .map(|r| Point::new(r.to_vec()).unwrap())
            .collect()
    }

    fn random_signal(rng: &mut ChaCha8Rng, n: usize, k: usize) -> SparseSignal {
        let points = (0..k)
            .map(|_| Point::new((0..n).map(|_| rng.sample(StandardNormal)).collect()).unwrap())
            .collect();
        let weights = (0..k).map(|_| rng.random_range(0.5..2.0)).collect();
        SparseSignal::new(weights, points).unwrap()
    }

    fn example_grams() -> (SparseSignal, SparseSignal) {
        let p = LineSet::new(vec![0.0, 1.0, 8.0, 11.0, 13.0, 17.0]).unwrap();
        let q = LineSet::new(vec![0.0, 1.0, 4.0, 10.0, 12.0, 17.0]).unwrap();
        (
            embed_half_circle(&p, 17.0).unwrap(),
            embed_half_circle(&q, 17.0).unwrap(),
        )
    }

    #[test]
    fn point_validation() {
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn signal_validation() {
        let p = pts(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(SparseSignal::new(vec![1.0], p.clone()).is_err());
        assert!(SparseSignal::new(vec![1.0, 0.0], p.clone()).is_err());
        assert!(SparseSignal::new(vec![], vec![]).is_err());
        assert!(SparseSignal::new(vec![1.0, 1.0], pts(&[&[1.0, 0.0], &[1.0, 0.0]])).is_err());
        assert!(matches!(
            SparseSignal::new(vec![1.0, 1.0], pts(&[&[1.0, 0.0], &[1.0]])),
            Err(BeltwayError::DimensionMismatch { .. })
        ));
        assert_eq!(SparseSignal::new(vec![1.0, -2.0], p).unwrap().len(), 2);
    }

    #[test]
    fn gram_of_orthonormal_pair() {
        let x = SparseSignal::binary(pts(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        let g = gram_matrix(&x);
        assert_eq!(g.matrix(), &DMatrix::<f64>::identity(2, 2));
    }

    #[test]
    fn gram_of_single_point() {
        let x = SparseSignal::binary(pts(&[&[3.0, 4.0]])).unwrap();
        assert_eq!(gram_matrix(&x).get(0, 0), 25.0);
    }

    #[test]
    fn gram_of_half_circle_embedding() {
        let (p, q) = example_grams();
        let gq = gram_matrix(&q);
        assert!((gq.get(0, 5) + 1.0).abs() < 0.005);
        assert!((gq.get(3, 4) - 0.93).abs() < 0.005);
        let gp = gram_matrix(&p);
        assert!((gp.get(0, 5) + 1.0).abs() < 0.005);
        assert!((gp.get(3, 4) - 0.93).abs() < 0.005);
    }

    #[test]
    fn factor_identity() {
        let g = GramMatrix::new(DMatrix::identity(3, 3)).unwrap();
        let points = psd_factor(&g, 3, &Tolerances::default()).unwrap();
        assert_eq!(points.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((points[i].dot(&points[j]) - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn factor_half_circle_gram_in_the_plane() {
        let (_, q) = example_grams();
        let a = gram_matrix(&q);
        let points = psd_factor(&a, 2, &Tolerances::default()).unwrap();
        let back = gram_matrix(&SparseSignal::binary(points).unwrap());
        assert!(back.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn factor_rejects_swapped_entry_matrix() {
        let (_, q) = example_grams();
        let mut c = gram_matrix(&q).matrix().clone();
        c.swap((0, 1), (0, 2));
        c.swap((1, 0), (2, 0));
        let c = GramMatrix::new(c).unwrap();
        let err = psd_factor(&c, 6, &Tolerances::default()).unwrap_err();
        match err {
            BeltwayError::NotPsd { min_eigenvalue } => {
                assert!((min_eigenvalue + 0.28).abs() < 0.01)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factor_rank_exceeded() {
        let g = GramMatrix::new(DMatrix::identity(3, 3)).unwrap();
        assert_eq!(
            psd_factor(&g, 2, &Tolerances::default()).unwrap_err(),
            BeltwayError::RankExceeded { rank: 3, dim: 2 }
        );
    }

    #[test]
    fn factor_zero_padding() {
        let g = GramMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let points = psd_factor(&g, 3, &Tolerances::default()).unwrap();
        for p in &points {
            assert_eq!(p.dim(), 3);
            assert_eq!(p.coords()[1], 0.0);
            assert_eq!(p.coords()[2], 0.0);
        }
        assert!((points[0].dot(&points[1]) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gram_rejects_asymmetric() {
        assert!(GramMatrix::from_rows(&[vec![1.0, 0.5], vec![0.4, 1.0]]).is_err());
    }

    #[test]
    fn triangular_rotation_by_ninety_degrees() {
        let x = SparseSignal::binary(pts(&[&[0.0, 1.0], &[0.0, 2.0]])).unwrap();
        let tri = reduce_to_triangular(&x).unwrap();
        assert!((tri.points()[0].coords()[0] - 1.0).abs() < 1e-15);
        assert_eq!(tri.points()[0].coords()[1], 0.0);
        assert!((tri.points()[1].coords()[0] - 2.0).abs() < 1e-15);
        assert!(tri.points()[1].coords()[1].abs() < 1e-15);
        let g = gram_matrix(&tri);
        assert!(
            g.max_abs_diff(&GramMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap())
                < 1e-14
        );
    }

    #[test]
    fn triangular_is_idempotent_on_gram() {
        let x = SparseSignal::binary(pts(&[
            &[1.0, 0.5, 2.0],
            &[0.0, 3.0, -1.0],
            &[0.0, 0.0, 0.7],
        ]))
        .unwrap();
        let once = reduce_to_triangular(&x).unwrap();
        let twice = reduce_to_triangular(&once).unwrap();
        assert!(gram_matrix(&twice).max_abs_diff(&gram_matrix(&x)) < 1e-12);
    }

    #[test]
    fn triangular_random_three_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_signal(&mut rng, 3, 3);
        let tri = reduce_to_triangular(&x).unwrap();
        assert!(gram_matrix(&tri).max_abs_diff(&gram_matrix(&x)) < 1e-12);
        let m = tri.point_matrix();
        for c in 0..3 {
            assert!(m[(c, c)] >= 0.0);
            for r in c + 1..3 {
                assert_eq!(m[(r, c)], 0.0);
            }
        }
    }

    #[test]
    fn triangular_requires_k_le_n() {
        let x = SparseSignal::binary(pts(&[&[1.0], &[2.0]])).unwrap();
        assert!(matches!(
            reduce_to_triangular(&x),
            Err(BeltwayError::Dimension { .. })
        ));
    }

    #[test]
    fn equivalence_under_rotation_and_relabeling() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = random_signal(&mut rng, 4, 5);
        let g = random_orthogonal(4, &mut rng);
        assert!(orbit_equivalent(&x, &x.transformed(&g).unwrap(), &tol));
        let reversed = x.reordered(&[4, 3, 2, 1, 0]);
        assert!(orbit_equivalent(&x, &reversed, &tol));
        assert!(!orbit_equivalent(&x, &x.negated(), &tol));
        let fewer = SparseSignal::new(x.weights()[..4].to_vec(), x.points()[..4].to_vec()).unwrap();
        assert!(!orbit_equivalent(&x, &fewer, &tol));
    }

    #[test]
    fn homometric_half_circle_sets_are_not_equivalent() {
        let (p, q) = example_grams();
        assert!(!orbit_equivalent(&p, &q, &Tolerances::default()));
    }

    #[test]
    fn partner_requires_equal_magnitudes() {
        let x = SparseSignal::binary(pts(&[&[1.0, 0.0, 0.0], &[1.0, 2.0, 0.0], &[0.5, 0.5, 3.0]]))
            .unwrap();
        assert!(matches!(
            homometric_partner(&x, &Tolerances::default()),
            Err(BeltwayError::Precondition(_))
        ));
    }

    #[test]
    fn partner_rejects_dependent_and_non_binary() {
        let tol = Tolerances::default();
        let dep =
            SparseSignal::binary(pts(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]))
                .unwrap();
        assert!(matches!(
            homometric_partner(&dep, &tol),
            Err(BeltwayError::Precondition(_))
        ));
        let weighted = SparseSignal::new(
            vec![1.0, 2.0, 1.0],
            pts(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.3, 0.2, 2.0]]),
        )
        .unwrap();
        assert!(matches!(
            homometric_partner(&weighted, &tol),
            Err(BeltwayError::Precondition(_))
        ));
    }

    #[test]
    fn partner_degenerate_when_last_point_is_symmetric() {
        // t_3 is orthogonal to t_1 - t_2, so swapping its products is a no-op.
        let x = SparseSignal::binary(pts(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.5, 0.5, 2.0]]))
            .unwrap();
        assert_eq!(
            homometric_partner(&x, &Tolerances::default()).unwrap_err(),
            BeltwayError::DegeneratePartner
        );
    }

    #[test]
    fn partner_no_real_solution() {
        // t_4 has a tiny last coordinate, so ‖s_4‖ cannot reach ‖t_4‖.
        let x = SparseSignal::binary(pts(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.6, 0.8, 0.0, 0.0],
            &[0.5, 0.5, 1.0, 0.0],
            &[3.0, 2.0, 0.0, 0.01],
        ]))
        .unwrap();
        assert!(matches!(
            homometric_partner(&x, &Tolerances::default()),
            Err(BeltwayError::NoRealSolution { .. })
        ));
    }

    #[test]
    fn partner_of_random_triangular_input() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let t1 = vec![1.0, 0.0, 0.0, 0.0];
        let u = unit_vector(2, &mut rng);
        let t2 = vec![u[0], u[1].abs(), 0.0, 0.0];
        let t3 = vec![0.3, -0.4, 0.9, 0.0];
        let t4 = vec![0.2, 0.5, -0.1, 6.0];
        let x = SparseSignal::binary(pts(&[&t1, &t2, &t3, &t4])).unwrap();
        let y = homometric_partner(&x, &tol).unwrap();
        let ix = second_moment_invariants(&x, &tol).unwrap();
        let iy = second_moment_invariants(&y, &tol).unwrap();
        assert!(ix.approx_eq(&iy, &tol));
        assert!(!orbit_equivalent(&x, &y, &tol));
        assert!((y.points()[3].norm_sq() - x.points()[3].norm_sq()).abs() < 1e-12);
        assert!(y.points()[3].coords()[3] >= 0.0);
    }

    #[test]
    fn partner_of_three_points_is_a_reflection() {
        let x = SparseSignal::binary(pts(&[&[1.0, 0.0, 0.0], &[0.6, 0.8, 0.0], &[3.0, 2.0, 0.5]]))
            .unwrap();
        assert_eq!(
            homometric_partner(&x, &Tolerances::default()).unwrap_err(),
            BeltwayError::DegeneratePartner
        );
    }

    #[test]
    fn partner_handles_k_below_n() {
        let tol = Tolerances::default();
        let x = SparseSignal::binary(pts(&[
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.6, 0.8, 0.0, 0.0],
            &[0.4, 0.3, 0.2, 1.0, 0.0],
            &[0.2, 0.7, -0.3, 0.1, 4.0],
        ]))
        .unwrap();
        let y = homometric_partner(&x, &tol).unwrap();
        assert_eq!(y.dim(), 5);
        assert!(y.points().iter().all(|p| p.coords()[4] == 0.0));
        let ix = second_moment_invariants(&x, &tol).unwrap();
        assert!(ix.approx_eq(&second_moment_invariants(&y, &tol).unwrap(), &tol));
        assert!(!orbit_equivalent(&x, &y, &tol));
    }
}
