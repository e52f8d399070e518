#![allow(dead_code)]

use beltway::{is_collision_free, Point, SparseSignal, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Weight bounded away from zero with a random sign.
pub fn weight(rng: &mut ChaCha8Rng) -> f64 {
    let w = rng.random_range(0.5..2.0);
    if rng.random_bool(0.5) {
        w
    } else {
        -w
    }
}

/// Strictly increasing radii in [1, 4], at least 0.2 apart.
pub fn distinct_radii(rng: &mut ChaCha8Rng, q: usize) -> Vec<f64> {
    loop {
        let mut r: Vec<f64> = (0..q).map(|_| rng.random_range(1.0..4.0)).collect();
        r.sort_by(f64::total_cmp);
        if r.windows(2).all(|w| w[1] - w[0] > 0.2) {
            return r;
        }
    }
}

/// Random signal with prescribed magnitude multiplicities. Retries until
/// the support is collision-free with a comfortable margin.
pub fn signal_with_blocks(
    rng: &mut ChaCha8Rng,
    n: usize,
    blocks: &[usize],
    weights: &mut dyn FnMut(&mut ChaCha8Rng, usize) -> Vec<f64>,
) -> SparseSignal {
    let k: usize = blocks.iter().sum();
    let loose = Tolerances::new(1e-4, 1e-8, 1e-8).unwrap();
    loop {
        let radii = distinct_radii(rng, blocks.len());
        let mut points = Vec::with_capacity(k);
        for (r, &m) in radii.iter().zip(blocks) {
            for _ in 0..m {
                let u = unit(rng, n);
                points.push(Point::new(u.into_iter().map(|x| r * x).collect()).unwrap());
            }
        }
        let w = weights(rng, k);
        let Ok(x) = SparseSignal::new(w, points) else {
            continue;
        };
        if is_collision_free(&x, &loose) {
            return x;
        }
    }
}

pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| weight(rng)).collect()
}

pub fn binary_weights(_: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    vec![1.0; k]
}

/// Gram matrix by direct summation.
pub fn naive_gram(x: &SparseSignal) -> Vec<Vec<f64>> {
    let p = x.points();
    p.iter()
        .map(|a| {
            p.iter()
                .map(|b| a.coords().iter().zip(b.coords()).map(|(u, v)| u * v).sum())
                .collect()
        })
        .collect()
}

/// Sorted `(a, b, c, wprod)` tuples over i ≤ j by direct summation.
pub fn naive_triples(x: &SparseSignal) -> Vec<[f64; 4]> {
    let g = naive_gram(x);
    let w = x.weights();
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i..g.len() {
            let (a, b) = (g[i][i].min(g[j][j]), g[i][i].max(g[j][j]));
            out.push([a, b, g[i][j], w[i] * w[j]]);
        }
    }
    out.sort_by(|p, q| {
        p.iter()
            .zip(q)
            .map(|(u, v)| u.total_cmp(v))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

pub fn triples_close(a: &[[f64; 4]], b: &[[f64; 4]], eps: f64) -> bool {
    // greedy matching; entries are sorted and collision-free so neighbours align
    let mut used = vec![false; b.len()];
    a.len() == b.len()
        && a.iter().all(|t| {
            let hit = b.iter().enumerate().find(|(i, u)| {
                !used[*i]
                    && t.iter()
                        .zip(u.iter())
                        .all(|(p, q)| (p - q).abs() <= eps * (1.0 + p.abs()))
            });
            match hit {
                Some((i, _)) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
}

/// Brute-force orbit equivalence over all permutations of the support
/// (weights must match, Gram must be permuted), allowing a global sign flip.
pub fn brute_equivalent_up_to_sign(x: &SparseSignal, y: &SparseSignal, eps: f64) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let gx = naive_gram(x);
    let gy = naive_gram(y);
    let k = x.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let check = |perm: &[usize], sign: f64| {
        (0..k).all(|i| {
            (x.weights()[i] - sign * y.weights()[perm[i]]).abs()
                <= eps * (1.0 + x.weights()[i].abs())
        }) && (0..k).all(|i| {
            (0..k).all(|j| (gx[i][j] - gy[perm[i]][perm[j]]).abs() <= eps * (1.0 + gx[i][j].abs()))
        })
    };
    permute(&mut perm, 0, &mut |p| check(p, 1.0) || check(p, -1.0))
}

fn permute(v: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if at == v.len() {
        return f(v);
    }
    for i in at..v.len() {
        v.swap(at, i);
        if permute(v, at + 1, f) {
            return true;
        }
        v.swap(at, i);
    }
    false
}

/// n! with u128 arithmetic.
pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Canonical cyclic gap sequence of integer positions on Z_m, minimal over
/// rotations and reflection.
pub fn cyclic_gaps(set: &[i64], m: i64) -> Vec<i64> {
    let mut s: Vec<i64> = set.iter().map(|x| x.rem_euclid(m)).collect();
    s.sort();
    let gaps: Vec<i64> = (0..s.len())
        .map(|i| (s[(i + 1) % s.len()] - s[i]).rem_euclid(m))
        .collect();
    let mut best: Option<Vec<i64>> = None;
    for seq in [gaps.clone(), gaps.iter().rev().copied().collect()] {
        for r in 0..seq.len() {
            let rot: Vec<i64> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Integer positions (units of π/17) of a planar unit-circle signal.
pub fn circle_units(x: &SparseSignal) -> Vec<i64> {
    x.points()
        .iter()
        .map(|p| (p.coords()[1].atan2(p.coords()[0]) * 17.0 / std::f64::consts::PI).round() as i64)
        .collect()
}

pub fn on_circle(units: &[f64]) -> SparseSignal {
    let pts = units
        .iter()
        .map(|a| {
            let t = std::f64::consts::PI * a / 17.0;
            Point::new(vec![t.cos(), t.sin()]).unwrap()
        })
        .collect();
    SparseSignal::binary(pts).unwrap()
}
