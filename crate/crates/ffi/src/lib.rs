//! C ABI over the `mubw` classifier.
//!
//! States and verdicts are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`MubwStatus`]; on failure the
//! message is kept per thread and read with [`mubw_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mubw::classify::{classify_with_tol, Verdict, VerdictKind};
use mubw::pauli_core::{p_from_r, r_from_p, ProbVector, RVector};
use mubw::ppt::{is_ppt, ppt_inequalities};
use mubw::witness::{nonlinear_value, NonlinearFamilyId};
use mubw::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MubwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidState = 2,
    NotPpt = 3,
    Numerical = 4,
    Parse = 5,
    BufferTooSmall = 6,
    NotFound = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MubwVerdictKind {
    Npt = 0,
    BoundDetected = 1,
    SeparableCertified = 2,
    PptUndecided = 3,
}

impl From<VerdictKind> for MubwVerdictKind {
    fn from(k: VerdictKind) -> Self {
        match k {
            VerdictKind::Npt => MubwVerdictKind::Npt,
            VerdictKind::BoundDetected => MubwVerdictKind::BoundDetected,
            VerdictKind::SeparableCertified => MubwVerdictKind::SeparableCertified,
            VerdictKind::PptUndecided => MubwVerdictKind::PptUndecided,
        }
    }
}

/// Opaque GHZ-diagonal state.
pub struct MubwState(ProbVector);

/// Opaque classification result.
pub struct MubwVerdict {
    verdict: Verdict,
    witness_id: Option<Vec<u8>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into().into_bytes());
}

fn status_of(err: &Error) -> MubwStatus {
    match err {
        Error::ProbabilityOutOfRange { .. }
        | Error::BadNormalization { .. }
        | Error::WrongLength { .. }
        | Error::CorrelationOutOfRange { .. }
        | Error::OutsideSimplex { .. } => MubwStatus::InvalidState,
        Error::NotPpt { .. } => MubwStatus::NotPpt,
        Error::Parse(_) => MubwStatus::Parse,
        _ => MubwStatus::Numerical,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), MubwStatus>) -> MubwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MubwStatus::Ok,
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            MubwStatus::Panic
        }
    }
}

fn fail(err: Error) -> MubwStatus {
    set_error(err.to_string());
    status_of(&err)
}

fn null(what: &str) -> MubwStatus {
    set_error(format!("{what} is null"));
    MubwStatus::NullPointer
}

unsafe fn slice<'a>(data: *const f64, len: usize) -> Result<&'a [f64], MubwStatus> {
    if data.is_null() {
        return Err(null("input array"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn state<'a>(s: *const MubwState) -> Result<&'a ProbVector, MubwStatus> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null("state"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), MubwStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_array(out: *mut f64, values: &[f64]) -> Result<(), MubwStatus> {
    if out.is_null() {
        return Err(null("output array"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Copies `bytes` plus a terminating NUL into `buf`. Returns
/// `BufferTooSmall` when `cap` cannot hold them; `needed`, if non-null,
/// always receives the required capacity.
unsafe fn write_str(bytes: &[u8], buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), MubwStatus> {
    if !needed.is_null() {
        needed.write(bytes.len() + 1);
    }
    if buf.is_null() || cap < bytes.len() + 1 {
        return Err(MubwStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    buf.add(bytes.len()).write(0);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mubw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf`.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes; `needed` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> MubwStatus {
    LAST_ERROR.with(|e| match write_str(&e.borrow(), buf, cap, needed) {
        Ok(()) => MubwStatus::Ok,
        Err(s) => s,
    })
}

/// Builds a state from the 8 probabilities `p`.
///
/// # Safety
/// `p` must be valid for `len` reads and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_state_from_p(p: *const f64, len: usize, out: *mut *mut MubwState) -> MubwStatus {
    guard(|| {
        let p = ProbVector::from_slice(slice(p, len)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(MubwState(p))))
    })
}

/// Builds a state from the 7 correlations `r`.
///
/// # Safety
/// `r` must be valid for `len` reads and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_state_from_r(r: *const f64, len: usize, out: *mut *mut MubwState) -> MubwStatus {
    guard(|| {
        let r = RVector::from_slice(slice(r, len)?).map_err(fail)?;
        let p = p_from_r(&r).map_err(fail)?;
        put(out, Box::into_raw(Box::new(MubwState(p))))
    })
}

/// # Safety
/// `s` must be null or a handle from `mubw_state_from_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mubw_state_free(s: *mut MubwState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes the 8 probabilities of `s` to `out`.
///
/// # Safety
/// `out` must be writable for 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn mubw_state_probabilities(s: *const MubwState, out: *mut f64) -> MubwStatus {
    guard(|| put_array(out, state(s)?.as_array()))
}

/// Writes the 7 correlations of `s` to `out`.
///
/// # Safety
/// `out` must be writable for 7 doubles.
#[no_mangle]
pub unsafe extern "C" fn mubw_state_correlations(s: *const MubwState, out: *mut f64) -> MubwStatus {
    guard(|| put_array(out, r_from_p(state(s)?).as_array()))
}

/// Writes the 24 PPT inequality values of `s` to `out`, grouped by qubit
/// and parity block.
///
/// # Safety
/// `out` must be writable for 24 doubles.
#[no_mangle]
pub unsafe extern "C" fn mubw_ppt_inequalities(s: *const MubwState, out: *mut f64) -> MubwStatus {
    guard(|| {
        let values = ppt_inequalities(state(s)?);
        put_array(out, values.as_flattened())
    })
}

/// PPT test at tolerance `tol`. `pass` receives 1 or 0 and
/// `min_inequality` the smallest inequality value.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_is_ppt(
    s: *const MubwState,
    tol: f64,
    pass: *mut i32,
    min_inequality: *mut f64,
) -> MubwStatus {
    guard(|| {
        let report = is_ppt(state(s)?, tol).map_err(fail)?;
        put(pass, i32::from(report.pass))?;
        put(min_inequality, report.min_inequality())
    })
}

/// Minimum over ψ of the witness family `id` (e.g. `"+1-(47)(56)"`).
///
/// # Safety
/// `id` must be a NUL-terminated string and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_nonlinear_value(
    s: *const MubwState,
    id: *const c_char,
    value: *mut f64,
) -> MubwStatus {
    guard(|| {
        let p = state(s)?;
        if id.is_null() {
            return Err(null("witness id"));
        }
        let text = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| fail(Error::Parse("witness id is not UTF-8".into())))?;
        let id: NonlinearFamilyId = text.parse().map_err(fail)?;
        put(value, nonlinear_value(&id, &r_from_p(p)))
    })
}

/// Classifies `s` at tolerance `tol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_classify(s: *const MubwState, tol: f64, out: *mut *mut MubwVerdict) -> MubwStatus {
    guard(|| {
        let verdict = classify_with_tol(state(s)?, tol).map_err(fail)?;
        let witness_id = verdict.witness.map(|(id, _)| id.to_string().into_bytes());
        put(out, Box::into_raw(Box::new(MubwVerdict { verdict, witness_id })))
    })
}

/// # Safety
/// `v` must be null or a handle from `mubw_classify` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mubw_verdict_free(v: *mut MubwVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

unsafe fn verdict<'a>(v: *const MubwVerdict) -> Result<&'a MubwVerdict, MubwStatus> {
    v.as_ref().ok_or_else(|| null("verdict"))
}

/// # Safety
/// `kind` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_verdict_kind(v: *const MubwVerdict, kind: *mut MubwVerdictKind) -> MubwStatus {
    guard(|| put(kind, verdict(v)?.verdict.kind.into()))
}

/// Smallest PPT inequality value and smallest partial-transpose eigenvalue
/// behind the verdict.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_verdict_ppt(
    v: *const MubwVerdict,
    min_inequality: *mut f64,
    min_eigenvalue: *mut f64,
) -> MubwStatus {
    guard(|| {
        let ppt = &verdict(v)?.verdict.ppt;
        put(min_inequality, ppt.min_inequality())?;
        put(min_eigenvalue, ppt.min_eigenvalue())
    })
}

/// Detecting witness id and its value. Returns `NotFound` when no witness
/// fired.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes; other outputs null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_verdict_witness(
    v: *const MubwVerdict,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
    value: *mut f64,
) -> MubwStatus {
    guard(|| {
        let v = verdict(v)?;
        let (Some((_, w)), Some(id)) = (v.verdict.witness, &v.witness_id) else {
            set_error("no witness detected this state");
            return Err(MubwStatus::NotFound);
        };
        if !value.is_null() {
            value.write(w);
        }
        write_str(id, buf, cap, needed)
    })
}

/// Term count and reconstruction error of the separability certificate.
/// Returns `NotFound` when the state was not certified.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn mubw_verdict_certificate(
    v: *const MubwVerdict,
    n_terms: *mut usize,
    reconstruction_error: *mut f64,
) -> MubwStatus {
    guard(|| {
        let Some(cert) = &verdict(v)?.verdict.certificate else {
            set_error("state has no separability certificate");
            return Err(MubwStatus::NotFound);
        };
        put(n_terms, cert.terms.len())?;
        put(reconstruction_error, cert.reconstruction_error)
    })
}
