//! Empirical Wasserstein-p distances between equal-size samples.
//!
//! For two clouds of `m` points each, the empirical distance is
//!
//! ```text
//! W_p(mu_m, nu_m) = ( (1/m) · min_ρ Σ_i d(X_i, Y_ρ(i))^p )^(1/p)
//! ```
//!
//! with the minimum over all permutations ρ, computed exactly by the
//! assignment kernel. The cost matrix carries the p-th power of the ground
//! distance (the power is applied before solving), and the `1/m`
//! normalization is applied before the final `1/p`-th root.
//!
//! The reflection distance `W_p(mu_n, mu_n^-)` between a sample and its
//! negation is estimated by the split-half device: permute the sample, then
//! match the first half against the negation of the second half.

use crate::assignment::{solve_assignment, CostMatrix};
use crate::metric::{dist, MetricKind};
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// An ordered sample of `n` points in `R^d`, stored row-major.
///
/// Invariants (enforced at construction): `n >= 1`, `d >= 1`, every
/// coordinate finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    n: usize,
    d: usize,
    points: Vec<f64>,
}

impl PointCloud {
    /// Build from one `Vec` per point; all rows must share a dimension.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::invalid("points must have dimension >= 1"));
        }
        let mut points = Vec::with_capacity(rows.len() * d);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            for (col, &x) in r.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteCoordinate { row, col });
                }
                points.push(x);
            }
        }
        Ok(PointCloud {
            n: rows.len(),
            d,
            points,
        })
    }

    /// Build from a flat row-major buffer of length `n * d`.
    pub fn from_flat(n: usize, d: usize, points: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if d == 0 {
            return Err(Error::invalid("points must have dimension >= 1"));
        }
        if points.len() != n * d {
            return Err(Error::invalid(format!(
                "flat buffer has {} values, expected n * d = {}",
                points.len(),
                n * d
            )));
        }
        if let Some(idx) = points.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteCoordinate {
                row: idx / d,
                col: idx % d,
            });
        }
        Ok(PointCloud { n, d, points })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of each point.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The `i`-th point.
    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    /// Iterator over points in order.
    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.d)
    }

    /// Flat row-major view of all coordinates.
    pub fn as_flat(&self) -> &[f64] {
        &self.points
    }

    /// The cloud with every coordinate negated (the sample behind `mu_n^-`).
    pub fn negated(&self) -> PointCloud {
        PointCloud {
            n: self.n,
            d: self.d,
            points: self.points.iter().map(|x| -x).collect(),
        }
    }

    /// Coordinate-wise sample mean.
    pub fn mean(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.d];
        for p in self.iter() {
            for (acc, &x) in m.iter_mut().zip(p) {
                *acc += x;
            }
        }
        for acc in &mut m {
            *acc /= self.n as f64;
        }
        m
    }

    /// New cloud made of the rows listed in `idx` (duplicates allowed),
    /// negating every coordinate when `negate` is set.
    pub fn gather(&self, idx: &[usize], negate: bool) -> Result<PointCloud> {
        if idx.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sign = if negate { -1.0 } else { 1.0 };
        let mut points = Vec::with_capacity(idx.len() * self.d);
        for &i in idx {
            if i >= self.n {
                return Err(Error::invalid(format!(
                    "row index {i} out of range for cloud of {} points",
                    self.n
                )));
            }
            points.extend(self.point(i).iter().map(|&x| sign * x));
        }
        Ok(PointCloud {
            n: idx.len(),
            d: self.d,
            points,
        })
    }
}

/// Order of the Wasserstein distance; only `p = 1` and `p = 2` are
/// supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WassersteinOrder {
    W1,
    W2,
}

impl WassersteinOrder {
    /// The exponent as a real number.
    pub fn p(self) -> f64 {
        match self {
            WassersteinOrder::W1 => 1.0,
            WassersteinOrder::W2 => 2.0,
        }
    }

    /// `d^p` for a ground distance `d`.
    #[inline]
    pub(crate) fn cost(self, d: f64) -> f64 {
        match self {
            WassersteinOrder::W1 => d,
            WassersteinOrder::W2 => d * d,
        }
    }

    /// `t^(1/p)`.
    #[inline]
    pub(crate) fn root(self, t: f64) -> f64 {
        match self {
            WassersteinOrder::W1 => t,
            WassersteinOrder::W2 => t.sqrt(),
        }
    }
}

impl fmt::Display for WassersteinOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WassersteinOrder::W1 => "1",
            WassersteinOrder::W2 => "2",
        })
    }
}

impl FromStr for WassersteinOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(WassersteinOrder::W1),
            "2" => Ok(WassersteinOrder::W2),
            other => Err(Error::invalid(format!(
                "unsupported Wasserstein order {other:?}; expected 1 or 2"
            ))),
        }
    }
}

/// Unnormalized optimal matching cost `min_ρ Σ_i d(X_i, Y_ρ(i))^p`.
///
/// This is the raw statistic the permutation test compares; the empirical
/// distance is the same quantity normalized by `m` and rooted.
pub(crate) fn raw_match_cost(
    x: &PointCloud,
    y: &PointCloud,
    p: WassersteinOrder,
    metric: MetricKind,
) -> Result<f64> {
    if x.n != y.n {
        return Err(Error::SizeMismatch {
            left: x.n,
            right: y.n,
        });
    }
    if x.d != y.d {
        return Err(Error::DimensionMismatch {
            expected: x.d,
            got: y.d,
        });
    }
    let cost =
        CostMatrix::from_fn(x.n, |i, j| p.cost(dist(x.point(i), y.point(j), metric)))?;
    Ok(solve_assignment(&cost).total_cost)
}

/// Empirical Wasserstein-p distance between two equal-size clouds.
///
/// The matched ground costs are re-summed in ascending order before
/// normalizing, so the result does not depend on which of several optimal
/// permutations the solver returns (and `W(x, y)` equals `W(y, x)` bit for
/// bit when the optimum is unique).
pub fn empirical_wasserstein(
    x: &PointCloud,
    y: &PointCloud,
    p: WassersteinOrder,
    metric: MetricKind,
) -> Result<f64> {
    if x.n != y.n {
        return Err(Error::SizeMismatch {
            left: x.n,
            right: y.n,
        });
    }
    if x.d != y.d {
        return Err(Error::DimensionMismatch {
            expected: x.d,
            got: y.d,
        });
    }
    let m = x.n;
    let cost =
        CostMatrix::from_fn(m, |i, j| p.cost(dist(x.point(i), y.point(j), metric)))?;
    let result = solve_assignment(&cost);
    let mut matched: Vec<f64> = (0..m).map(|i| cost.at(i, result.permutation[i])).collect();
    matched.sort_by(f64::total_cmp);
    let total: f64 = matched.iter().sum();
    Ok(p.root(total / m as f64))
}

/// Split-half estimate of the reflection distance `W_p(mu_n, mu_n^-)`.
///
/// Under the permutation `rho`, matches the first `⌊n/2⌋` permuted points
/// against the negation of the next `⌊n/2⌋`; for odd `n` the last permuted
/// point is discarded so both halves are equal. Requires `n >= 2`.
pub fn reflection_distance_split(
    x: &PointCloud,
    rho: &[usize],
    p: WassersteinOrder,
    metric: MetricKind,
) -> Result<f64> {
    if x.n < 2 {
        return Err(Error::NeedTwoPoints(x.n));
    }
    validate_permutation(rho, x.n)?;
    let m = x.n / 2;
    let first = x.gather(&rho[..m], false)?;
    let second = x.gather(&rho[m..2 * m], true)?;
    empirical_wasserstein(&first, &second, p, metric)
}

/// Independent 1-D oracle: on the real line the monotone coupling of sorted
/// samples is optimal, so no assignment solve is needed.
pub fn sorted_1d_wasserstein(x: &[f64], y: &[f64], p: WassersteinOrder) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let total: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(a, b)| p.cost((a - b).abs()))
        .sum();
    Ok(p.root(total / x.len() as f64))
}

fn validate_permutation(rho: &[usize], n: usize) -> Result<()> {
    if rho.len() != n {
        return Err(Error::invalid(format!(
            "permutation has length {}, expected {n}",
            rho.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in rho {
        if i >= n || seen[i] {
            return Err(Error::invalid(
                "permutation must visit each index in [0, n) exactly once",
            ));
        }
        seen[i] = true;
    }
    Ok(())
}
