//! C ABI for the `wasym` library.
//!
//! Conventions, mirrored in the generated `include/wasym.h`:
//!
//! - Point clouds live behind the opaque handle [`WasymCloud`]; create with
//!   [`wasym_cloud_new`], release with [`wasym_cloud_free`]. Handles are
//!   immutable and safe to share across threads.
//! - Every fallible call returns a [`WasymStatus`] and writes its outputs
//!   through pointers only on `WASYM_STATUS_OK`.
//! - On failure, a human-readable message is stored per thread and can be
//!   fetched with [`wasym_last_error_message`].
//! - Panics never unwind across the boundary; they are caught and reported
//!   as `WASYM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wasym::bootstrap::split_half_reflection_estimate;
use wasym::metric::MetricKind;
use wasym::symtest::{mardia_skewness_test, permutation_symmetry_test, SymTestConfig};
use wasym::wasserstein::{empirical_wasserstein, PointCloud, WassersteinOrder};
use wasym::Error;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WasymStatus {
    /// The call succeeded and all out-parameters are set.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside its documented domain.
    InvalidArgument = 2,
    /// Arguments were structurally valid but the computation failed
    /// (for example, a singular covariance matrix).
    ComputeError = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

/// Transport cost exponent, accepted by `order` parameters.
#[repr(C)]
pub enum WasymOrder {
    /// First-order cost (sum of distances).
    W1 = 1,
    /// Second-order cost (root of summed squared distances).
    W2 = 2,
}

/// Ground metric, accepted by `metric` parameters.
#[repr(C)]
pub enum WasymMetric {
    /// Sum of absolute coordinate differences.
    L1 = 0,
    /// Euclidean distance.
    L2 = 1,
    /// Maximum absolute coordinate difference.
    Linf = 2,
}

/// Opaque handle to an immutable point cloud (`n` points in `d`
/// dimensions, row-major).
pub struct WasymCloud {
    inner: PointCloud,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("interior NULs removed");
    });
}

fn fail(status: WasymStatus, msg: impl Into<String>) -> WasymStatus {
    set_error(msg.into());
    status
}

fn error_status(e: &Error) -> WasymStatus {
    match e {
        Error::DegenerateCovariance | Error::Io(_) => WasymStatus::ComputeError,
        _ => WasymStatus::InvalidArgument,
    }
}

fn fail_with(e: Error) -> WasymStatus {
    let status = error_status(&e);
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> WasymStatus) -> WasymStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        fail(WasymStatus::Panic, "internal panic; state is unchanged")
    })
}

fn order_from(order: u32) -> Option<WassersteinOrder> {
    match order {
        1 => Some(WassersteinOrder::W1),
        2 => Some(WassersteinOrder::W2),
        _ => None,
    }
}

fn metric_from(metric: u32) -> Option<MetricKind> {
    match metric {
        0 => Some(MetricKind::L1),
        1 => Some(MetricKind::L2),
        2 => Some(MetricKind::Linf),
        _ => None,
    }
}

/// Borrows a handle, reporting null as `NullPointer`.
///
/// # Safety
/// `cloud` must be null or a pointer obtained from [`wasym_cloud_new`]
/// that has not been freed.
unsafe fn borrow_cloud<'a>(cloud: *const WasymCloud) -> Result<&'a PointCloud, WasymStatus> {
    cloud
        .as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| fail(WasymStatus::NullPointer, "cloud handle is null"))
}

/// Library version as a static NUL-terminated string; never null.
#[no_mangle]
pub extern "C" fn wasym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on the calling thread, or an empty
/// string if there has been none. The pointer stays valid until the next
/// failing `wasym_*` call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn wasym_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Copies `n * d` row-major coordinates into a new cloud handle and stores
/// it in `*out`. All coordinates must be finite; `n >= 1`, `d >= 1`.
///
/// # Safety
/// `data` must point to at least `n * d` readable doubles; `out` must be a
/// valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wasym_cloud_new(
    data: *const f64,
    n: usize,
    d: usize,
    out: *mut *mut WasymCloud,
) -> WasymStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WasymStatus::NullPointer, "out pointer is null");
        }
        *out = std::ptr::null_mut();
        if data.is_null() {
            return fail(WasymStatus::NullPointer, "data pointer is null");
        }
        let Some(len) = n.checked_mul(d) else {
            return fail(WasymStatus::InvalidArgument, "n * d overflows");
        };
        let flat = std::slice::from_raw_parts(data, len).to_vec();
        match PointCloud::from_flat(n, d, flat) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(WasymCloud { inner }));
                WasymStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Releases a handle created by [`wasym_cloud_new`]; null is a no-op.
///
/// # Safety
/// `cloud` must be null or an unfreed handle from [`wasym_cloud_new`];
/// the handle must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wasym_cloud_free(cloud: *mut WasymCloud) {
    if !cloud.is_null() {
        drop(Box::from_raw(cloud));
    }
}

/// Writes the point count and dimension of `cloud`.
///
/// # Safety
/// Pointer arguments must be valid (see [`wasym_cloud_new`]).
#[no_mangle]
pub unsafe extern "C" fn wasym_cloud_shape(
    cloud: *const WasymCloud,
    out_n: *mut usize,
    out_d: *mut usize,
) -> WasymStatus {
    guarded(|| {
        let x = match borrow_cloud(cloud) {
            Ok(x) => x,
            Err(status) => return status,
        };
        if out_n.is_null() || out_d.is_null() {
            return fail(WasymStatus::NullPointer, "shape out pointer is null");
        }
        *out_n = x.n();
        *out_d = x.d();
        WasymStatus::Ok
    })
}

/// Empirical transport distance between two equally sized clouds.
/// `order` takes a `WasymOrder` value and `metric` a `WasymMetric` value.
///
/// # Safety
/// Pointer arguments must be valid (see [`wasym_cloud_new`]).
#[no_mangle]
pub unsafe extern "C" fn wasym_wasserstein(
    x: *const WasymCloud,
    y: *const WasymCloud,
    order: u32,
    metric: u32,
    out: *mut f64,
) -> WasymStatus {
    guarded(|| {
        let (x, y) = match (borrow_cloud(x), borrow_cloud(y)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        if out.is_null() {
            return fail(WasymStatus::NullPointer, "out pointer is null");
        }
        let Some(p) = order_from(order) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown order {order}"));
        };
        let Some(m) = metric_from(metric) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown metric {metric}"));
        };
        match empirical_wasserstein(x, y, p, m) {
            Ok(v) => {
                *out = v;
                WasymStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Split-half estimate of the reflection distance of `x` (mean over `r`
/// replications); the standard error is also written when `out_std_error`
/// is non-null. Deterministic in `seed`.
///
/// # Safety
/// Pointer arguments must be valid (see [`wasym_cloud_new`]).
#[no_mangle]
pub unsafe extern "C" fn wasym_reflection_split(
    x: *const WasymCloud,
    order: u32,
    metric: u32,
    r: usize,
    seed: u64,
    out_mean: *mut f64,
    out_std_error: *mut f64,
) -> WasymStatus {
    guarded(|| {
        let x = match borrow_cloud(x) {
            Ok(x) => x,
            Err(status) => return status,
        };
        if out_mean.is_null() {
            return fail(WasymStatus::NullPointer, "out pointer is null");
        }
        let Some(p) = order_from(order) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown order {order}"));
        };
        let Some(m) = metric_from(metric) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown metric {metric}"));
        };
        match split_half_reflection_estimate(x, r, p, m, seed) {
            Ok(est) => {
                *out_mean = est.mean;
                if !out_std_error.is_null() {
                    *out_std_error = est.std_error();
                }
                WasymStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// P-value of the bootstrap-permutation symmetry test with `r`
/// replications of `m_perms` permutations (inclusive tie rule, no
/// subsampling, no centering). Deterministic in `seed`.
///
/// # Safety
/// Pointer arguments must be valid (see [`wasym_cloud_new`]).
#[no_mangle]
pub unsafe extern "C" fn wasym_symmetry_pvalue(
    x: *const WasymCloud,
    order: u32,
    metric: u32,
    r: usize,
    m_perms: usize,
    seed: u64,
    out_p: *mut f64,
) -> WasymStatus {
    guarded(|| {
        let x = match borrow_cloud(x) {
            Ok(x) => x,
            Err(status) => return status,
        };
        if out_p.is_null() {
            return fail(WasymStatus::NullPointer, "out pointer is null");
        }
        let Some(p) = order_from(order) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown order {order}"));
        };
        let Some(m) = metric_from(metric) else {
            return fail(WasymStatus::InvalidArgument, format!("unknown metric {metric}"));
        };
        let mut cfg = SymTestConfig::new(seed);
        cfg.r = r;
        cfg.m_perms = m_perms;
        cfg.p = p;
        cfg.metric = m;
        match permutation_symmetry_test(x, &cfg) {
            Ok(report) => {
                *out_p = report.p_value;
                WasymStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Mardia skewness test of `x`: writes the statistic, the chi-squared
/// degrees of freedom, and the p-value.
///
/// # Safety
/// Pointer arguments must be valid (see [`wasym_cloud_new`]).
#[no_mangle]
pub unsafe extern "C" fn wasym_mardia(
    x: *const WasymCloud,
    out_statistic: *mut f64,
    out_df: *mut usize,
    out_p: *mut f64,
) -> WasymStatus {
    guarded(|| {
        let x = match borrow_cloud(x) {
            Ok(x) => x,
            Err(status) => return status,
        };
        if out_statistic.is_null() || out_df.is_null() || out_p.is_null() {
            return fail(WasymStatus::NullPointer, "out pointer is null");
        }
        match mardia_skewness_test(x) {
            Ok(report) => {
                *out_statistic = report.statistic;
                *out_df = report.df;
                *out_p = report.p_value;
                WasymStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}
