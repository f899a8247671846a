//! C ABI over `thetaval`.
//!
//! Every fallible call returns a [`ThetavalStatus`] and writes its result
//! through an out-pointer. Handles are opaque and owned by the caller, who
//! releases them with the matching `_free` function. Strings returned by the
//! library are released with [`thetaval_string_free`]. After a failure,
//! [`thetaval_last_error_message`] describes it (per thread).

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use thetaval::exact::{build_catalog, parse_theta_expr, verify_identity, Status, VerifyReport};
use thetaval::{Ball, Error, PrecCtx};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetavalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    UnknownId = 5,
    Precision = 6,
    Evaluation = 7,
    Panic = 8,
}

/// A certified enclosure: midpoint and radius.
pub struct ThetavalBall {
    ball: Ball,
}

/// Outcome of verifying one catalog entry.
pub struct ThetavalVerification {
    report: VerifyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ThetavalStatus {
    match e {
        Error::Parse { .. } => ThetavalStatus::Parse,
        Error::UnknownId(_) => ThetavalStatus::UnknownId,
        Error::PrecisionTooLow(_) => ThetavalStatus::Precision,
        Error::Domain(_)
        | Error::UnsupportedArgument(_)
        | Error::UnsupportedGammaArgument(_)
        | Error::PreconditionViolated(_)
        | Error::NotConvergent => ThetavalStatus::Domain,
        Error::Evaluation { source, .. } => status_of(source),
        _ => ThetavalStatus::Evaluation,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (ThetavalStatus, String)>) -> ThetavalStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ThetavalStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            ThetavalStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (ThetavalStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, (ThetavalStatus, String)> {
    if p.is_null() {
        return Err((ThetavalStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ThetavalStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn check_out<T>(p: *mut T) -> Result<(), (ThetavalStatus, String)> {
    if p.is_null() {
        Err((ThetavalStatus::NullPointer, "null out pointer".into()))
    } else {
        Ok(())
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn thetaval_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread, or NULL. Free with `thetaval_string_free`.
#[no_mangle]
pub extern "C" fn thetaval_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

#[no_mangle]
pub unsafe extern "C" fn thetaval_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and evaluates an expression such as `phi(qpoint(+1, 1))` at `prec_bits`.
#[no_mangle]
pub unsafe extern "C" fn thetaval_eval(
    expr: *const c_char,
    prec_bits: u32,
    out: *mut *mut ThetavalBall,
) -> ThetavalStatus {
    guard(|| {
        check_out(out)?;
        let text = input_str(expr)?;
        let ctx = PrecCtx::new(prec_bits).map_err(lib_err)?;
        let e = parse_theta_expr(text).map_err(lib_err)?;
        let ball = e.eval(ctx).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ThetavalBall { ball }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn thetaval_ball_free(b: *mut ThetavalBall) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Nearest double to the midpoint; NaN for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn thetaval_ball_mid_f64(b: *const ThetavalBall) -> f64 {
    b.as_ref().map_or(f64::NAN, |b| b.ball.mid_f64())
}

/// Upper bound on `log10` of the radius; negative infinity for an exact ball.
#[no_mangle]
pub unsafe extern "C" fn thetaval_ball_rad_log10(b: *const ThetavalBall) -> f64 {
    b.as_ref().map_or(f64::NAN, |b| b.ball.rad_log10())
}

/// Midpoint as a decimal string with `digits` significant digits.
#[no_mangle]
pub unsafe extern "C" fn thetaval_ball_mid_decimal(
    b: *const ThetavalBall,
    digits: usize,
    out: *mut *mut c_char,
) -> ThetavalStatus {
    guard(|| {
        check_out(out)?;
        let b = b.as_ref().ok_or((ThetavalStatus::NullPointer, "null ball".into()))?;
        *out = out_string(b.ball.mid_decimal(digits.max(1)));
        Ok(())
    })
}

/// 1 if the two enclosures intersect, 0 if not, -1 on a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn thetaval_ball_overlaps(a: *const ThetavalBall, b: *const ThetavalBall) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.ball.overlaps(&b.ball) as i32,
        _ => -1,
    }
}

/// Verifies one catalog entry. A completed check that fails still returns
/// `Ok`; query the handle for the verdict.
#[no_mangle]
pub unsafe extern "C" fn thetaval_verify(
    id: *const c_char,
    prec_bits: u32,
    out: *mut *mut ThetavalVerification,
) -> ThetavalStatus {
    guard(|| {
        check_out(out)?;
        let id = input_str(id)?;
        let ctx = PrecCtx::new(prec_bits).map_err(lib_err)?;
        let catalog = build_catalog();
        let entry = catalog.get(id).map_err(lib_err)?;
        let report = verify_identity(entry, ctx).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ThetavalVerification { report }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn thetaval_verification_free(v: *mut ThetavalVerification) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// 1 if verified, 0 if not, -1 on a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn thetaval_verification_passed(v: *const ThetavalVerification) -> i32 {
    v.as_ref().map_or(-1, |v| (v.report.status == Status::Verified) as i32)
}

#[no_mangle]
pub unsafe extern "C" fn thetaval_verification_agreement_digits(v: *const ThetavalVerification) -> u32 {
    v.as_ref().map_or(0, |v| v.report.agreement_digits)
}

/// Precision the verdict was reached at (after any escalation).
#[no_mangle]
pub unsafe extern "C" fn thetaval_verification_prec_bits(v: *const ThetavalVerification) -> u32 {
    v.as_ref().map_or(0, |v| v.report.prec_bits)
}

/// Catalog listing as a JSON array of `{id, lhs_text, rhs_text, provenance}`.
#[no_mangle]
pub unsafe extern "C" fn thetaval_catalog_json(out: *mut *mut c_char) -> ThetavalStatus {
    guard(|| {
        check_out(out)?;
        *out = out_string(build_catalog().to_json());
        Ok(())
    })
}

/// Verifies every catalog entry and writes the JSON report.
#[no_mangle]
pub unsafe extern "C" fn thetaval_verify_all_json(prec_bits: u32, jobs: u32, out: *mut *mut c_char) -> ThetavalStatus {
    guard(|| {
        check_out(out)?;
        let ctx = PrecCtx::new(prec_bits).map_err(lib_err)?;
        let report = thetaval::cli::verify_report(&[], true, ctx, false, jobs.max(1) as usize).map_err(lib_err)?;
        *out = out_string(thetaval::cli::to_json(&report));
        Ok(())
    })
}
