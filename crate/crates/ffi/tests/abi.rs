//! Exercises the C entry points from Rust: lifecycle, status codes, error
//! messages, and agreement with the underlying library.

use std::ffi::CStr;
use std::path::Path;
use std::ptr;

use wasym::bootstrap::split_half_reflection_estimate;
use wasym::metric::MetricKind;
use wasym::symtest::{mardia_skewness_test, permutation_symmetry_test, SymTestConfig};
use wasym::wasserstein::{empirical_wasserstein, PointCloud, WassersteinOrder};
use wasym_ffi::*;

const ORDER_W1: u32 = WasymOrder::W1 as u32;
const ORDER_W2: u32 = WasymOrder::W2 as u32;
const METRIC_L1: u32 = WasymMetric::L1 as u32;
const METRIC_L2: u32 = WasymMetric::L2 as u32;

fn last_error() -> String {
    unsafe { CStr::from_ptr(wasym_last_error_message()) }
        .to_str()
        .expect("error message is UTF-8")
        .to_string()
}

/// Builds a handle or panics; caller frees.
fn make_cloud(data: &[f64], n: usize, d: usize) -> *mut WasymCloud {
    let mut out = ptr::null_mut();
    let status = unsafe { wasym_cloud_new(data.as_ptr(), n, d, &mut out) };
    assert_eq!(status, WasymStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

#[test]
fn version_is_nonempty_and_static() {
    let v = unsafe { CStr::from_ptr(wasym_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn cloud_lifecycle_and_shape() {
    let data = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let cloud = make_cloud(&data, 3, 2);
    let (mut n, mut d) = (0usize, 0usize);
    let status = unsafe { wasym_cloud_shape(cloud, &mut n, &mut d) };
    assert_eq!(status, WasymStatus::Ok);
    assert_eq!((n, d), (3, 2));
    unsafe { wasym_cloud_free(cloud) };
    unsafe { wasym_cloud_free(ptr::null_mut()) };
}

#[test]
fn null_and_invalid_inputs_are_reported() {
    let data = [0.5, -0.5];

    let status = unsafe { wasym_cloud_new(data.as_ptr(), 2, 1, ptr::null_mut()) };
    assert_eq!(status, WasymStatus::NullPointer);

    let mut out = ptr::null_mut();
    let status = unsafe { wasym_cloud_new(ptr::null(), 2, 1, &mut out) };
    assert_eq!(status, WasymStatus::NullPointer);
    assert!(out.is_null());
    assert!(last_error().contains("null"));

    let status = unsafe { wasym_cloud_new(data.as_ptr(), 0, 1, &mut out) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(out.is_null());
    assert_eq!(last_error(), "empty input");

    let bad = [1.0, f64::NAN];
    let status = unsafe { wasym_cloud_new(bad.as_ptr(), 2, 1, &mut out) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(last_error().contains("non-finite"));

    let cloud = make_cloud(&data, 2, 1);
    let mut value = f64::NAN;
    let status = unsafe { wasym_wasserstein(cloud, cloud, 3, METRIC_L1, &mut value) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(last_error().contains("unknown order 3"));
    let status = unsafe { wasym_wasserstein(cloud, cloud, ORDER_W1, 9, &mut value) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(last_error().contains("unknown metric 9"));
    let status =
        unsafe { wasym_wasserstein(ptr::null(), cloud, ORDER_W1, METRIC_L1, &mut value) };
    assert_eq!(status, WasymStatus::NullPointer);
    unsafe { wasym_cloud_free(cloud) };
}

#[test]
fn wasserstein_matches_direct_call() {
    let xs = [0.0, 0.0, 1.0, 1.0, -1.0, 0.5];
    let ys = [0.25, -0.25, 2.0, 0.0, 0.0, 0.0];
    let x = make_cloud(&xs, 3, 2);
    let y = make_cloud(&ys, 3, 2);

    let mut via_ffi = f64::NAN;
    let status = unsafe { wasym_wasserstein(x, y, ORDER_W2, METRIC_L2, &mut via_ffi) };
    assert_eq!(status, WasymStatus::Ok);

    let xd = PointCloud::from_flat(3, 2, xs.to_vec()).unwrap();
    let yd = PointCloud::from_flat(3, 2, ys.to_vec()).unwrap();
    let direct =
        empirical_wasserstein(&xd, &yd, WassersteinOrder::W2, MetricKind::L2).unwrap();
    assert_eq!(via_ffi, direct);

    // Mismatched widths surface the library's validation.
    let narrow = make_cloud(&xs[..3], 3, 1);
    let mut value = f64::NAN;
    let status = unsafe { wasym_wasserstein(x, narrow, ORDER_W1, METRIC_L1, &mut value) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(last_error().contains("dimension mismatch"));

    unsafe { wasym_cloud_free(narrow) };
    unsafe { wasym_cloud_free(y) };
    unsafe { wasym_cloud_free(x) };
}

#[test]
fn reflection_split_matches_direct_call() {
    let xs: Vec<f64> = (0..40).map(|i| ((i * 37 + 11) % 19) as f64 / 19.0 - 0.5).collect();
    let x = make_cloud(&xs, 20, 2);
    let (mut mean, mut se) = (f64::NAN, f64::NAN);
    let status =
        unsafe { wasym_reflection_split(x, ORDER_W2, METRIC_L2, 4, 77, &mut mean, &mut se) };
    assert_eq!(status, WasymStatus::Ok, "{}", last_error());

    let xd = PointCloud::from_flat(20, 2, xs.clone()).unwrap();
    let direct =
        split_half_reflection_estimate(&xd, 4, WassersteinOrder::W2, MetricKind::L2, 77)
            .unwrap();
    assert_eq!(mean, direct.mean);
    assert_eq!(se, direct.std_error());

    // The standard error out-parameter is optional.
    let mut mean_only = f64::NAN;
    let status = unsafe {
        wasym_reflection_split(x, ORDER_W2, METRIC_L2, 4, 77, &mut mean_only, ptr::null_mut())
    };
    assert_eq!(status, WasymStatus::Ok);
    assert_eq!(mean_only, mean);

    // r = 0 is rejected by the library, not the boundary.
    let status = unsafe {
        wasym_reflection_split(x, ORDER_W2, METRIC_L2, 0, 77, &mut mean_only, ptr::null_mut())
    };
    assert_eq!(status, WasymStatus::InvalidArgument);
    assert!(last_error().contains("r >= 1"));
    unsafe { wasym_cloud_free(x) };
}

#[test]
fn symmetry_pvalue_matches_direct_call() {
    let xs: Vec<f64> = (0..48)
        .map(|i| {
            let t = (i * 29 + 7) % 23;
            (t as f64 / 11.0 - 1.0) * if i % 2 == 0 { 1.0 } else { -1.0 }
        })
        .collect();
    let x = make_cloud(&xs, 24, 2);
    let mut p = f64::NAN;
    let status =
        unsafe { wasym_symmetry_pvalue(x, ORDER_W1, METRIC_L1, 2, 60, 5, &mut p) };
    assert_eq!(status, WasymStatus::Ok, "{}", last_error());
    assert!((0.0..=1.0).contains(&p));

    let xd = PointCloud::from_flat(24, 2, xs.clone()).unwrap();
    let mut cfg = SymTestConfig::new(5);
    cfg.r = 2;
    cfg.m_perms = 60;
    assert_eq!(p, permutation_symmetry_test(&xd, &cfg).unwrap().p_value);

    // Samples below the documented minimum are rejected.
    let tiny = make_cloud(&xs[..4], 2, 2);
    let status =
        unsafe { wasym_symmetry_pvalue(tiny, ORDER_W1, METRIC_L1, 1, 10, 5, &mut p) };
    assert_eq!(status, WasymStatus::InvalidArgument);
    unsafe { wasym_cloud_free(tiny) };
    unsafe { wasym_cloud_free(x) };
}

#[test]
fn mardia_matches_direct_call_and_reports_degeneracy() {
    let xs: Vec<f64> = (0..36)
        .map(|i| ((i * 13 + 5) % 17) as f64 / 17.0 + if i % 3 == 0 { 0.4 } else { 0.0 })
        .collect();
    let x = make_cloud(&xs, 18, 2);
    let (mut stat, mut df, mut p) = (f64::NAN, 0usize, f64::NAN);
    let status = unsafe { wasym_mardia(x, &mut stat, &mut df, &mut p) };
    assert_eq!(status, WasymStatus::Ok, "{}", last_error());

    let xd = PointCloud::from_flat(18, 2, xs.clone()).unwrap();
    let direct = mardia_skewness_test(&xd).unwrap();
    assert_eq!(stat, direct.statistic);
    assert_eq!(df, direct.df);
    assert_eq!(p, direct.p_value);
    unsafe { wasym_cloud_free(x) };

    let constant = make_cloud(&[2.0; 12], 6, 2);
    let status = unsafe { wasym_mardia(constant, &mut stat, &mut df, &mut p) };
    assert_eq!(status, WasymStatus::ComputeError);
    assert_eq!(last_error(), "degenerate covariance");
    unsafe { wasym_cloud_free(constant) };
}

#[test]
fn generated_header_is_in_sync() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/wasym.h");
    let text = std::fs::read_to_string(header).expect("header exists after build");
    for symbol in [
        "wasym_version",
        "wasym_last_error_message",
        "wasym_cloud_new",
        "wasym_cloud_free",
        "wasym_cloud_shape",
        "wasym_wasserstein",
        "wasym_reflection_split",
        "wasym_symmetry_pvalue",
        "wasym_mardia",
        "WASYM_STATUS_OK",
        "WASYM_ORDER_W2",
        "WASYM_METRIC_LINF",
        "typedef struct WasymCloud WasymCloud;",
    ] {
        assert!(text.contains(symbol), "header is missing `{symbol}`");
    }
}
