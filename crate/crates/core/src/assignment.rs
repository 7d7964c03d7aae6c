//! Exact minimum-cost perfect matching on dense square cost matrices.
//!
//! This is the computational kernel behind every empirical Wasserstein
//! evaluation in the crate: a cost matrix of pairwise ground distances is
//! built and the optimal assignment extracted. The solver is the classical
//! O(m³) Hungarian method in its dual-potential (Jonker–Volgenant style)
//! formulation, run directly on `f64` costs with exact floating-point
//! comparisons — no integer scaling and no epsilon slack. The optimum cost
//! is stable under floating-point ties even when the minimizing permutation
//! is not; only the cost is contractually deterministic.

use crate::{Error, Result};

/// Square matrix of finite, nonnegative matching costs.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    m: usize,
    entries: Vec<f64>, // row-major, m * m
}

impl CostMatrix {
    /// Build from row-major entries; `entries.len()` must equal `m * m`.
    pub fn new(m: usize, entries: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidCostMatrix("m must be positive".into()));
        }
        if entries.len() != m * m {
            return Err(Error::InvalidCostMatrix(format!(
                "expected {m} x {m} = {} entries, got {}",
                m * m,
                entries.len()
            )));
        }
        for (idx, &c) in entries.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::InvalidCostMatrix(format!(
                    "non-finite entry at ({}, {})",
                    idx / m,
                    idx % m
                )));
            }
            if c < 0.0 {
                return Err(Error::InvalidCostMatrix(format!(
                    "negative entry at ({}, {})",
                    idx / m,
                    idx % m
                )));
            }
        }
        Ok(CostMatrix { m, entries })
    }

    /// Build an `m x m` matrix by evaluating `f(i, j)` for every cell.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                entries.push(f(i, j));
            }
        }
        CostMatrix::new(m, entries)
    }

    /// Side length of the matrix.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Cost of matching row `i` to column `j`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.m + j]
    }
}

/// An optimal matching: row `i` is assigned to column `permutation[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentResult {
    pub permutation: Vec<usize>,
    pub total_cost: f64,
}

/// Globally optimal assignment via the O(m³) Hungarian method with dual
/// potentials.
///
/// Returns a permutation minimizing `Σ_i cost[i][ρ(i)]`. Any optimal
/// permutation may be returned when the argmin is not unique.
pub fn solve_assignment(cost: &CostMatrix) -> AssignmentResult {
    let m = cost.m;
    // 1-based arrays with a sentinel row/column 0, per the classical
    // formulation: p[j] is the row matched to column j (0 = unmatched),
    // u/v are the dual potentials, way[j] remembers the alternating path.
    let mut u = vec![0.0f64; m + 1];
    let mut v = vec![0.0f64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    let mut minv = vec![0.0f64; m + 1];
    let mut used = vec![false; m + 1];

    for i in 1..=m {
        p[0] = i;
        let mut j0 = 0usize;
        minv.iter_mut().for_each(|x| *x = f64::INFINITY);
        used.iter_mut().for_each(|x| *x = false);
        // Dijkstra-like search for the cheapest augmenting path from row i.
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        // Unwind the alternating path, flipping matched edges.
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut permutation = vec![0usize; m];
    for j in 1..=m {
        permutation[p[j] - 1] = j - 1;
    }
    let total_cost = (0..m).map(|i| cost.at(i, permutation[i])).sum();
    AssignmentResult {
        permutation,
        total_cost,
    }
}

/// Largest instance the factorial oracle accepts.
pub const MAX_ORACLE_M: usize = 9;

/// Exhaustive test oracle: enumerates all `m!` permutations.
///
/// Errors with "instance too large for oracle" above [`MAX_ORACLE_M`].
pub fn brute_force_assignment(cost: &CostMatrix) -> Result<AssignmentResult> {
    let m = cost.m;
    if m > MAX_ORACLE_M {
        return Err(Error::OracleTooLarge(m));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best = perm.clone();
    let mut best_cost = total(cost, &perm);
    // Heap's algorithm: each step produces the next permutation via one swap.
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cost_now = total(cost, &perm);
            if cost_now < best_cost {
                best_cost = cost_now;
                best.copy_from_slice(&perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(AssignmentResult {
        permutation: best,
        total_cost: best_cost,
    })
}

fn total(cost: &CostMatrix, perm: &[usize]) -> f64 {
    perm.iter().enumerate().map(|(i, &j)| cost.at(i, j)).sum()
}
