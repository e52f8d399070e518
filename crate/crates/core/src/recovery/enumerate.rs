use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;

use super::bound::orbit_count_bound;
use super::is_sign_ambiguous;
use super::layout::Layout;
use crate::error::{BeltwayError, Result};
use crate::invariants::InvariantSet;
use crate::signal::{gram_matrix, orbit_equivalent, psd_factor, GramMatrix, SparseSignal};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Stop once this many distinct orbits are known and another is found.
    pub max_results: usize,
    /// Maximum number of backtracking nodes before giving up.
    pub work_cap: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_results: 1000,
            work_cap: 100_000_000,
        }
    }
}

/// Orbit representatives consistent with an invariant set.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    /// Pairwise non-equivalent (also modulo the global weight sign), in
    /// canonical order.
    pub orbits: Vec<SparseSignal>,
    pub bound: BigUint,
    /// More orbits exist beyond `max_results`.
    pub truncated: bool,
    pub sign_ambiguous: bool,
    /// Backtracking nodes visited.
    pub nodes: u64,
}

/// [`enumerate_orbits_with`] using the default work cap.
pub fn enumerate_orbits(
    inv: &InvariantSet,
    n: usize,
    max_results: usize,
    tol: &Tolerances,
) -> Result<RecoveryResult> {
    let opts = EnumerationOptions {
        max_results,
        ..EnumerationOptions::default()
    };
    enumerate_orbits_with(inv, n, &opts, tol)
}

/// All O(n)-orbits whose invariant set equals `inv`.
///
/// The diagonal is fixed by sorting magnitudes. Positions of the upper
/// triangle are filled column by column, each from the pool of unused values
/// belonging to its block pair, subject to |w_i||w_j| matching and sign
/// consistency with w_1 > 0. Interchangeable points are ordered by their
/// inner product with the first point. Each placement completes a principal
/// submatrix, which must be PSD of rank ≤ n. Complete candidates
/// are factored and deduplicated with [`orbit_equivalent`].
pub fn enumerate_orbits_with(
    inv: &InvariantSet,
    n: usize,
    opts: &EnumerationOptions,
    tol: &Tolerances,
) -> Result<RecoveryResult> {
    if opts.max_results == 0 {
        return Err(BeltwayError::Config("max_results must be positive".into()));
    }
    if n == 0 {
        return Err(BeltwayError::Config("dimension must be positive".into()));
    }
    let layout = Layout::new(inv, tol)?;
    if !layout.is_collision_free(tol) {
        return Err(BeltwayError::NotCollisionFree);
    }

    let q = layout.partition.multiplicities().len();
    let mut pool_index = vec![vec![usize::MAX; q]; q];
    let mut pools: Vec<Vec<PoolItem>> = Vec::new();
    for e in &layout.off {
        let (a, b) = e.blocks;
        if pool_index[a][b] == usize::MAX {
            pool_index[a][b] = pools.len();
            pools.push(Vec::new());
        }
        pools[pool_index[a][b]].push(PoolItem {
            c: e.c,
            wprod: e.wprod,
            used: false,
        });
    }
    for pool in &mut pools {
        pool.sort_by(|x, y| x.c.total_cmp(&y.c).then(x.wprod.total_cmp(&y.wprod)));
    }

    let k = layout.k;
    let positions = (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut signs = vec![0.0; k];
    signs[0] = 1.0;
    // Relabeling points of equal magnitude and |w| preserves the orbit, so
    // among such twins (other than point 0) row 0 is required to decrease.
    let prev_twin = (0..k)
        .map(|j| {
            (1..j).rev().find(|&i| {
                layout.block_of[i] == layout.block_of[j]
                    && tol.matches_scaled(layout.wabs[i], layout.wabs[j], layout.wscale)
            })
        })
        .collect();
    let mut search = Search {
        gram: layout.diagonal_gram(),
        prev_twin,
        layout: &layout,
        n,
        tol,
        opts: *opts,
        positions,
        pools,
        pool_index,
        signs,
        nodes: 0,
        found: Vec::new(),
        truncated: false,
    };
    search.dfs(0)?;

    let mut found = search.found;
    found.sort_by(|x, y| {
        x.key
            .iter()
            .zip(&y.key)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let orbits: Vec<SparseSignal> = found.into_iter().map(|f| f.signal).collect();
    Ok(RecoveryResult {
        sign_ambiguous: orbits.iter().any(is_sign_ambiguous),
        orbits,
        bound: orbit_count_bound(&layout.partition),
        truncated: search.truncated,
        nodes: search.nodes,
    })
}

#[derive(Debug, Clone, Copy)]
struct PoolItem {
    c: f64,
    wprod: f64,
    used: bool,
}

struct Found {
    signal: SparseSignal,
    spectrum: Vec<f64>,
    /// Upper-triangular Gram entries, row-major; the canonical sort key.
    key: Vec<f64>,
}

struct Search<'a> {
    layout: &'a Layout,
    n: usize,
    tol: &'a Tolerances,
    opts: EnumerationOptions,
    positions: Vec<(usize, usize)>,
    pools: Vec<Vec<PoolItem>>,
    pool_index: Vec<Vec<usize>>,
    gram: DMatrix<f64>,
    signs: Vec<f64>,
    prev_twin: Vec<Option<usize>>,
    nodes: u64,
    found: Vec<Found>,
    truncated: bool,
}

impl Search<'_> {
    /// Returns `Ok(true)` when the search should stop.
    fn dfs(&mut self, pos: usize) -> Result<bool> {
        if pos == self.positions.len() {
            return self.accept();
        }
        let (i, j) = self.positions[pos];
        let pool = self.pool_index[self.layout.block_of[i]][self.layout.block_of[j]];
        let magnitude = self.layout.wabs[i] * self.layout.wabs[j];
        for idx in 0..self.pools[pool].len() {
            let item = self.pools[pool][idx];
            if item.used {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.opts.work_cap {
                return Err(BeltwayError::BudgetExceeded {
                    cap: self.opts.work_cap,
                });
            }
            if !self
                .tol
                .matches_scaled(item.wprod.abs(), magnitude, self.layout.wscale)
            {
                continue;
            }
            if i == 0 {
                if let Some(t) = self.prev_twin[j] {
                    if item.c >= self.gram[(0, t)] {
                        continue;
                    }
                }
            }
            let sign = item.wprod.signum();
            if i == 0 {
                self.signs[j] = sign;
            } else if self.signs[i] * self.signs[j] != sign {
                continue;
            }
            self.gram[(i, j)] = item.c;
            self.gram[(j, i)] = item.c;
            if !self.principal_feasible(i, j) {
                continue;
            }
            self.pools[pool][idx].used = true;
            let stop = self.dfs(pos + 1)?;
            self.pools[pool][idx].used = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Once (i, j) is placed, the principal submatrix on rows {0, …, i, j}
    /// is fully known; it must be PSD of rank ≤ n.
    fn principal_feasible(&self, i: usize, j: usize) -> bool {
        let m = i + 2;
        let idx = |r: usize| if r <= i { r } else { j };
        let sub = DMatrix::from_fn(m, m, |r, c| self.gram[(idx(r), idx(c))]);
        let eig = SymmetricEigen::new(sub).eigenvalues;
        let scale = eig.amax();
        if eig.min() < -self.tol.eps_psd * scale {
            return false;
        }
        m <= self.n
            || eig
                .iter()
                .filter(|&&l| l > self.tol.eps_rank * scale)
                .count()
                <= self.n
    }

    fn accept(&mut self) -> Result<bool> {
        let gram = GramMatrix::new(self.gram.clone())?;
        let points = match psd_factor(&gram, self.n, self.tol) {
            Ok(points) => points,
            Err(BeltwayError::NotPsd { .. } | BeltwayError::RankExceeded { .. }) => {
                return Ok(false)
            }
            Err(e) => return Err(e),
        };
        let weights: Vec<f64> = self
            .signs
            .iter()
            .zip(&self.layout.wabs)
            .map(|(s, w)| s * w)
            .collect();
        let Ok(signal) = SparseSignal::with_tolerances(weights, points, self.tol) else {
            return Ok(false);
        };
        let rebuilt = gram_matrix(&signal);
        let k = self.layout.k;
        let reproduces = (0..k).all(|i| {
            (0..k).all(|j| {
                self.tol
                    .matches_scaled(rebuilt.get(i, j), gram.get(i, j), self.layout.scale)
            })
        });
        if !reproduces {
            return Ok(false);
        }

        let spectrum = gram.eigenvalues();
        let negated = signal.negated();
        let duplicate = self.found.iter().any(|f| {
            f.spectrum.iter().zip(&spectrum).all(|(a, b)| {
                self.tol
                    .matches_scaled(*a, *b, self.layout.scale * k as f64)
            }) && (orbit_equivalent(&f.signal, &signal, self.tol)
                || orbit_equivalent(&f.signal, &negated, self.tol))
        });
        if duplicate {
            return Ok(false);
        }
        if self.found.len() == self.opts.max_results {
            self.truncated = true;
            return Ok(true);
        }
        let key = (0..k)
            .flat_map(|i| (i..k).map(move |j| (i, j)))
            .map(|(i, j)| gram.get(i, j))
            .collect();
        self.found.push(Found {
            signal,
            spectrum,
            key,
        });
        Ok(false)
    }
}
