//! Resampling estimators of the expected reflection distance
//! `E W_p(mu_n, mu_n^-)`.
//!
//! Two variants, both deterministic given their seed and independent of the
//! execution order of replications:
//!
//! * [`bootstrap_reflection_estimate`] — the true bootstrap: each
//!   replication draws two resamples `Y` and `Z` of size `m` with
//!   replacement from the observed rows and computes
//!   `W_p(Y, -Z)`;
//! * [`split_half_reflection_estimate`] — the experimental variant: each
//!   replication permutes the observed rows and matches the first half
//!   against the negation of the second half.
//!
//! The per-replication values of either estimator concentrate: by the
//! bounded-differences inequality applied to the `2m` resampled points, each
//! of which moves the statistic by at most `C/m` (with `C` the range of the
//! observed pairwise costs, see [`observed_cost_range`]), the variance is at
//! most `C²/(2m)`.

use crate::metric::{dist, MetricKind};
use crate::rng::{stream_seed, Rng};
use crate::wasserstein::{
    empirical_wasserstein, reflection_distance_split, PointCloud, WassersteinOrder,
};
use crate::{Error, Result};
use rayon::prelude::*;

/// Tuning parameters for the bootstrap estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BootstrapConfig {
    /// Resample size of each of the two drawn sets.
    pub m: usize,
    /// Number of bootstrap replications.
    pub r: usize,
    pub p: WassersteinOrder,
    pub metric: MetricKind,
    pub seed: u64,
}

/// Aggregated output of a resampling run.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapEstimate {
    /// Arithmetic mean of `per_replication`.
    pub mean: f64,
    /// One value per replication, in replication order.
    pub per_replication: Vec<f64>,
    /// Unbiased sample variance of `per_replication`; 0 when `r == 1`.
    pub empirical_variance: f64,
}

impl BootstrapEstimate {
    fn aggregate(per_replication: Vec<f64>) -> Self {
        let r = per_replication.len() as f64;
        let mean = per_replication.iter().sum::<f64>() / r;
        let empirical_variance = if per_replication.len() > 1 {
            per_replication.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (r - 1.0)
        } else {
            0.0
        };
        BootstrapEstimate {
            mean,
            per_replication,
            empirical_variance,
        }
    }

    /// Standard error of `mean` across replications.
    pub fn std_error(&self) -> f64 {
        (self.empirical_variance / self.per_replication.len() as f64).sqrt()
    }
}

/// Bootstrap estimate of `E W_p(mu_n, mu_n^-)`: replication `k` draws `Y`
/// and `Z` (each `m` rows with replacement, from substream `k` of
/// `cfg.seed`) and evaluates `W_p(Y, -Z)`.
pub fn bootstrap_reflection_estimate(
    x: &PointCloud,
    cfg: &BootstrapConfig,
) -> Result<BootstrapEstimate> {
    if cfg.m == 0 || cfg.r == 0 {
        return Err(Error::invalid(format!(
            "bootstrap needs m >= 1 and r >= 1, got m = {}, r = {}",
            cfg.m, cfg.r
        )));
    }
    let n = x.n() as u64;
    let per: Vec<Result<f64>> = (0..cfg.r as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = Rng::substream(cfg.seed, &[k]);
            let y_idx: Vec<usize> = (0..cfg.m).map(|_| rng.next_below(n) as usize).collect();
            let z_idx: Vec<usize> = (0..cfg.m).map(|_| rng.next_below(n) as usize).collect();
            let y = x.gather(&y_idx, false)?;
            let z_neg = x.gather(&z_idx, true)?;
            empirical_wasserstein(&y, &z_neg, cfg.p, cfg.metric)
        })
        .collect();
    Ok(BootstrapEstimate::aggregate(
        per.into_iter().collect::<Result<Vec<f64>>>()?,
    ))
}

/// Split-half estimate of `E W_p(mu_n, mu_n^-)`: replication `k` draws a
/// fresh uniform permutation from substream `k` of `seed` and evaluates
/// [`reflection_distance_split`].
pub fn split_half_reflection_estimate(
    x: &PointCloud,
    r: usize,
    p: WassersteinOrder,
    metric: MetricKind,
    seed: u64,
) -> Result<BootstrapEstimate> {
    if r == 0 {
        return Err(Error::invalid("split-half estimator needs r >= 1"));
    }
    if x.n() < 2 {
        return Err(Error::NeedTwoPoints(x.n()));
    }
    let per: Vec<Result<f64>> = (0..r as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = Rng::new(stream_seed(seed, &[k]));
            let rho = rng.permutation(x.n());
            reflection_distance_split(x, &rho, p, metric)
        })
        .collect();
    Ok(BootstrapEstimate::aggregate(
        per.into_iter().collect::<Result<Vec<f64>>>()?,
    ))
}

/// Range `max - min` of the observed pairwise reflection costs
/// `d(x_i, -x_j)` — the constant `C` in the `C²/(2m)` variance bound.
pub fn observed_cost_range(x: &PointCloud, metric: MetricKind) -> f64 {
    let neg = x.negated();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for a in x.iter() {
        for b in neg.iter() {
            let d = dist(a, b, metric);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    hi - lo
}
