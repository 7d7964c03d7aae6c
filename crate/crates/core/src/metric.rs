//! Norm-induced ground distances on `R^d`.
//!
//! Every transport computation in this crate reduces to pairwise distances
//! under one of three norms; `l2` is the default ground metric, `l1` and
//! `linf` cover the remaining experimental settings.

use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Which norm induces the ground distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    L1,
    L2,
    Linf,
}

impl MetricKind {
    /// Serialized name, as accepted by CLI flags and config files.
    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::L1 => "l1",
            MetricKind::L2 => "l2",
            MetricKind::Linf => "linf",
        }
    }

    /// The norm itself, `‖x‖`.
    pub fn norm(self, x: &[f64]) -> f64 {
        match self {
            MetricKind::L1 => x.iter().map(|v| v.abs()).sum(),
            MetricKind::L2 => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            MetricKind::Linf => x.iter().fold(0.0, |acc, v| acc.max(v.abs())),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(MetricKind::L1),
            "l2" => Ok(MetricKind::L2),
            "linf" => Ok(MetricKind::Linf),
            other => Err(Error::invalid(format!(
                "unknown metric {other:?}; expected l1, l2, or linf"
            ))),
        }
    }
}

/// `‖x − y‖` under `metric`, with full input validation.
///
/// Errors with "dimension mismatch" when lengths differ and "non-finite
/// coordinate" when any input is NaN or infinite. Hot loops that have
/// already validated their clouds use [`dist`] instead.
pub fn distance(x: &[f64], y: &[f64], metric: MetricKind) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    for (col, (&a, &b)) in x.iter().zip(y).enumerate() {
        if !a.is_finite() {
            return Err(Error::NonFiniteCoordinate { row: 0, col });
        }
        if !b.is_finite() {
            return Err(Error::NonFiniteCoordinate { row: 1, col });
        }
    }
    Ok(dist(x, y, metric))
}

/// Unchecked `‖x − y‖`; callers guarantee equal dimensions and finiteness.
#[inline]
pub(crate) fn dist(x: &[f64], y: &[f64], metric: MetricKind) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    match metric {
        MetricKind::L1 => x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum(),
        MetricKind::L2 => x
            .iter()
            .zip(y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt(),
        MetricKind::Linf => x
            .iter()
            .zip(y)
            .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs())),
    }
}
