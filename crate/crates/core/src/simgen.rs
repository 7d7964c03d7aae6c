//! Seeded generators for the simulation distributions.
//!
//! Three families cover all experiments — multivariate Rademacher(p),
//! the symmetric Gaussian mixture `(1/2)N(-1, I) + (1/2)N(1, I)`, and the
//! mean-centered shifted Beta(alpha, 1) — plus a generic identity-covariance
//! Gaussian as a building block.
//!
//! Draw order is pinned and part of the reproducibility contract. Every
//! generator consumes its seed directly (callers derive substreams via
//! [`crate::rng::stream_seed`]):
//!
//! * `rademacher`: one uniform per entry in row-major order; `u < p` gives
//!   `+1`, otherwise `-1`;
//! * `mixture`: per row, one uniform picks the component (`u < 1/2` gives
//!   mean `-1`), then one normal (two uniforms) per coordinate;
//! * `beta`: one uniform per entry in row-major order, transformed by the
//!   inverse CDF `u^(1/alpha)` and shifted by `-alpha/(1+alpha)`;
//! * `gaussian`: one normal per entry in row-major order, plus the mean.

use crate::rng::Rng;
use crate::wasserstein::PointCloud;
use crate::{Error, Result};

/// Which experimental distribution to draw from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    /// Entries are `+1` with probability `p`, else `-1`, iid.
    Rademacher { p: f64 },
    /// Rows are `(1/2)N(-1, I_d) + (1/2)N(1, I_d)` draws.
    GaussMixture,
    /// Entries are `Beta(alpha, 1) - alpha/(1+alpha)` draws, iid.
    ShiftedBeta { alpha: f64 },
}

impl GeneratorKind {
    /// The population mean vector, known analytically for every family.
    pub fn true_mean(&self, d: usize) -> Vec<f64> {
        match self {
            GeneratorKind::Rademacher { p } => vec![2.0 * p - 1.0; d],
            GeneratorKind::GaussMixture => vec![0.0; d],
            GeneratorKind::ShiftedBeta { .. } => vec![0.0; d],
        }
    }

    /// Serialized name used in CLI flags and result documents.
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Rademacher { .. } => "rademacher",
            GeneratorKind::GaussMixture => "mixture",
            GeneratorKind::ShiftedBeta { .. } => "beta",
        }
    }
}

/// A fully specified sampling job: distribution, shape, and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Draw the cloud this spec describes.
    pub fn generate(&self) -> Result<PointCloud> {
        match self.kind {
            GeneratorKind::Rademacher { p } => gen_rademacher(self.n, self.d, p, self.seed),
            GeneratorKind::GaussMixture => gen_gauss_mixture(self.n, self.d, self.seed),
            GeneratorKind::ShiftedBeta { alpha } => {
                gen_shifted_beta(self.n, self.d, alpha, self.seed)
            }
        }
    }
}

fn check_shape(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::invalid(format!(
            "generator shape must be positive, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// `n x d` cloud of independent Rademacher(p) entries (`+1` w.p. `p`).
pub fn gen_rademacher(n: usize, d: usize, p: f64, seed: u64) -> Result<PointCloud> {
    check_shape(n, d)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("rademacher p must lie in [0, 1], got {p}")));
    }
    let mut rng = Rng::new(seed);
    let points = (0..n * d)
        .map(|_| if rng.next_f64() < p { 1.0 } else { -1.0 })
        .collect();
    PointCloud::from_flat(n, d, points)
}

/// `n x d` cloud from the symmetric mixture `(1/2)N(-1, I) + (1/2)N(1, I)`:
/// each row picks a component sign, then adds iid standard normal noise per
/// coordinate.
pub fn gen_gauss_mixture(n: usize, d: usize, seed: u64) -> Result<PointCloud> {
    check_shape(n, d)?;
    let mut rng = Rng::new(seed);
    let mut points = Vec::with_capacity(n * d);
    for _ in 0..n {
        let component = if rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
        for _ in 0..d {
            points.push(component + rng.next_normal());
        }
    }
    PointCloud::from_flat(n, d, points)
}

/// `n x d` cloud of centered Beta(alpha, 1) entries.
///
/// Uses the inverse-CDF identity `U^(1/alpha) ~ Beta(alpha, 1)` and shifts
/// by the mean `alpha/(1+alpha)`, so the population mean is exactly zero and
/// the support is `[-alpha/(1+alpha), 1/(1+alpha)]`.
pub fn gen_shifted_beta(n: usize, d: usize, alpha: f64, seed: u64) -> Result<PointCloud> {
    check_shape(n, d)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!("beta alpha must be positive, got {alpha}")));
    }
    let shift = alpha / (1.0 + alpha);
    let mut rng = Rng::new(seed);
    let points = (0..n * d)
        .map(|_| rng.next_f64().powf(1.0 / alpha) - shift)
        .collect();
    PointCloud::from_flat(n, d, points)
}

/// `n x d` cloud of iid `N(mean, I)` rows.
pub fn gen_gaussian(n: usize, d: usize, mean: &[f64], seed: u64) -> Result<PointCloud> {
    check_shape(n, d)?;
    if mean.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: mean.len(),
        });
    }
    let mut rng = Rng::new(seed);
    let mut points = Vec::with_capacity(n * d);
    for _ in 0..n {
        for &mu in mean {
            points.push(mu + rng.next_normal());
        }
    }
    PointCloud::from_flat(n, d, points)
}
