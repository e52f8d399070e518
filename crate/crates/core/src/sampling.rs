//! Haar sampling on spheres and on O(n).

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform sample on the unit sphere in ℝ^dim (normalized standard normals).
pub fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// column signs of Q fixed by the signs of R's diagonal.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let gaussian = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = gaussian.clone().qr();
    let mut q = qr.q();
    // nalgebra stores |r_ii| on R's diagonal; recover the signs from Qᵀ G.
    let r = q.transpose() * &gaussian;
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}
