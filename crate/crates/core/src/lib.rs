//! Empirical Wasserstein distances between equal-size point clouds, the
//! reflection distance `W_p(mu_n, mu_n^-)` between a sample and its negation
//! as a quantitative measure of distributional asymmetry, and the estimators,
//! permutation tests, and symmetrization bounds built on top of it.
//!
//! The crate is organized as a small pipeline:
//!
//! * [`metric`] — norm-induced ground costs on `R^d` (`l1`, `l2`, `linf`);
//! * [`assignment`] — exact minimum-cost perfect matching on dense square
//!   cost matrices, the computational kernel behind every distance here;
//! * [`wasserstein`] — empirical `W_p` between equal-size clouds and the
//!   split-half reflection distance;
//! * [`bootstrap`] — resampling estimators of the expected reflection
//!   distance with variance diagnostics;
//! * [`symtest`] — a bootstrap-permutation test for symmetry about the
//!   origin plus Mardia's multivariate skewness test as a baseline;
//! * [`bounds`] — classical (`2*R_n`) versus corrected (`R_n + C_n`)
//!   symmetrization bounds, a confidence radius, and an `l_inf`
//!   (Nemirovski-style) bound comparison;
//! * [`simgen`] — seeded generators for the simulation distributions;
//! * [`io`] — CSV point-cloud ingestion and result-document serialization;
//! * [`cli`] — the `wasym` command-line front end.
//!
//! All randomness flows through the pinned counter-based generator in
//! [`rng`], so every estimator is a pure function of its inputs and a 64-bit
//! seed, bit-for-bit reproducible across platforms and thread counts.

pub mod assignment;
pub mod bootstrap;
pub mod bounds;
pub mod cli;
mod error;
pub mod io;
pub mod metric;
pub mod rng;
pub mod simgen;
pub mod symtest;
pub mod wasserstein;

pub use error::{Error, Result};
