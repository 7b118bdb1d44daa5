//! C ABI for the qrdesign library.
//!
//! Objects are opaque handles created by `qrd_*_new`-style functions and
//! released with the matching `qrd_*_free`. Every fallible call returns a
//! [`QrdStatus`]; on failure a message is available from
//! [`qrd_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`qrd_string_free`].
//!
//! Coordinate labels are `int64_t`, with [`QRD_INFINITY`] standing for the
//! point at infinity.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qrdesign::code::{extended_quadratic_residue_code, quadratic_residue_code, DEFAULT_BUDGET};
use qrdesign::designs::CodeKind;
use qrdesign::enumerators::{jacobi, JacobiPolynomial};
use qrdesign::format::{generator_text, parse_generator_text};
use qrdesign::projective::OrbitPartition;
use qrdesign::reproduce::reproduce;
use qrdesign::study::QrStudy;
use qrdesign::{EnumOptions, Error, Label, LinearCode};

/// Label value denoting the point at infinity.
pub const QRD_INFINITY: i64 = -1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    CheckFailed = 4,
    Internal = 5,
    Panic = 6,
}

/// Enumeration limits; `threads == 0` means available parallelism.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QrdOptions {
    pub budget: usize,
    pub threads: usize,
}

/// Which block set a design report describes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrdBlockSet {
    Code = 0,
    Dual = 1,
    Union = 2,
}

pub struct QrdCode {
    inner: LinearCode,
}

pub struct QrdOrbits {
    inner: OrbitPartition,
}

pub struct QrdJacobi {
    inner: JacobiPolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QrdStatus {
    match e {
        Error::BudgetExceeded { .. } | Error::ScanTooLarge { .. } => QrdStatus::BudgetExceeded,
        Error::Inconsistent(_) => QrdStatus::Internal,
        _ => QrdStatus::InvalidArgument,
    }
}

struct Fail(QrdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QrdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QrdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QrdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside qrdesign".into());
            QrdStatus::Panic
        }
    }
}

fn options(opts: *const QrdOptions) -> EnumOptions {
    // SAFETY: callers pass null or a valid pointer to QrdOptions.
    match unsafe { opts.as_ref() } {
        None => EnumOptions::default(),
        Some(o) => EnumOptions {
            budget: o.budget,
            threads: if o.threads == 0 {
                EnumOptions::default().threads
            } else {
                o.threads
            },
        },
    }
}

fn label(v: i64) -> Result<Label, Fail> {
    match v {
        QRD_INFINITY => Ok(Label::Infinity),
        v if v >= 0 => Ok(Label::Finite(v as u64)),
        v => Err(Fail(
            QrdStatus::InvalidArgument,
            format!("invalid label {v}"),
        )),
    }
}

fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: out is non-null and points to writable storage for a pointer.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Fail(QrdStatus::Internal, e.to_string()))?;
    // SAFETY: out is non-null and points to writable storage for a pointer.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Fail> {
    serde_json::to_string(value).map_err(|e| Fail(QrdStatus::Internal, e.to_string()))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qrd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Default options: the library's dimension budget and all available threads.
#[no_mangle]
pub extern "C" fn qrd_default_options() -> QrdOptions {
    QrdOptions {
        budget: DEFAULT_BUDGET,
        threads: 0,
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qrd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the QR code of prime length p (p = +-1 mod 8), extended by a parity
/// coordinate when `extended` is true.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_quadratic_residue(
    p: u64,
    extended: bool,
    out: *mut *mut QrdCode,
) -> QrdStatus {
    guard(|| {
        let inner = if extended {
            extended_quadratic_residue_code(p)?
        } else {
            quadratic_residue_code(p)?
        };
        write_out(out, QrdCode { inner })
    })
}

/// Parses a generator matrix in the "n k" + rows text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_from_text(
    text: *const c_char,
    out: *mut *mut QrdCode,
) -> QrdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Fail(QrdStatus::InvalidArgument, e.to_string()))?;
        write_out(
            out,
            QrdCode {
                inner: parse_generator_text(s)?,
            },
        )
    })
}

/// # Safety
/// `code` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_free(code: *mut QrdCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length n, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_length(code: *const QrdCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.length())
}

/// Dimension k, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_dimension(code: *const QrdCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.dimension())
}

/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_dual(code: *const QrdCode, out: *mut *mut QrdCode) -> QrdStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(|| null("code"))?;
        write_out(
            out,
            QrdCode {
                inner: c.inner.dual(),
            },
        )
    })
}

/// Writes the number of codewords of each weight 0..=n into `counts`, which
/// must hold `len >= n + 1` entries.
///
/// # Safety
/// `code` must be a live handle; `counts` must point to `len` writable
/// `uint64_t`; `opts` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_weight_distribution(
    code: *const QrdCode,
    opts: *const QrdOptions,
    counts: *mut u64,
    len: usize,
) -> QrdStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(|| null("code"))?;
        if counts.is_null() {
            return Err(null("counts"));
        }
        let n = c.inner.length();
        if len < n + 1 {
            return Err(Fail(
                QrdStatus::InvalidArgument,
                format!("counts holds {len} entries, need {}", n + 1),
            ));
        }
        let w = c.inner.weight_distribution(options(opts))?;
        let dst = std::slice::from_raw_parts_mut(counts, len);
        dst.fill(0);
        dst[..w.counts.len()].copy_from_slice(&w.counts);
        Ok(())
    })
}

/// Generator matrix in the "n k" + rows text format.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_code_to_text(
    code: *const QrdCode,
    out: *mut *mut c_char,
) -> QrdStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(|| null("code"))?;
        write_string(out, generator_text(&c.inner))
    })
}

/// Jacobi polynomial of `code` at the `t` labels in `labels`.
///
/// # Safety
/// `code` must be a live handle; `labels` must point to `t` values; `opts`
/// may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_new(
    code: *const QrdCode,
    labels: *const i64,
    t: usize,
    opts: *const QrdOptions,
    out: *mut *mut QrdJacobi,
) -> QrdStatus {
    guard(|| {
        let c = code.as_ref().ok_or_else(|| null("code"))?;
        if labels.is_null() && t > 0 {
            return Err(null("labels"));
        }
        let set = if t == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(labels, t).to_vec()
        };
        let set = set.into_iter().map(label).collect::<Result<Vec<_>, _>>()?;
        write_out(
            out,
            QrdJacobi {
                inner: jacobi(&c.inner, &set, options(opts))?,
            },
        )
    })
}

/// # Safety
/// `j` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_free(j: *mut QrdJacobi) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Coefficient of w^(t-m1) z^m1 x^(n-t-n1) y^n1; 0 when out of range or null.
///
/// # Safety
/// `j` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_coeff(j: *const QrdJacobi, m1: usize, n1: usize) -> u64 {
    j.as_ref().map_or(0, |j| j.inner.coeff(m1, n1))
}

/// Sum of all coefficients (the number of codewords).
///
/// # Safety
/// `j` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_mass(j: *const QrdJacobi) -> u64 {
    j.as_ref().map_or(0, |j| j.inner.mass())
}

/// JSON {n, t, T, terms: [{m0, m1, n0, n1, coeff}]}.
///
/// # Safety
/// `j` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_to_json(
    j: *const QrdJacobi,
    out: *mut *mut c_char,
) -> QrdStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| null("jacobi"))?;
        write_string(out, json(&j.inner.to_json())?)
    })
}

/// Monomial-style rendering, e.g. "w^3x^39 + 744w^3x^29y^10 + ...".
///
/// # Safety
/// `j` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_jacobi_to_text(
    j: *const QrdJacobi,
    out: *mut *mut c_char,
) -> QrdStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| null("jacobi"))?;
        write_string(out, j.inner.to_poly().to_monomial_string())
    })
}

/// PSL(2, p) orbits on 3-subsets of the projective line, p = 1 mod 8.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_orbits_new(p: u64, out: *mut *mut QrdOrbits) -> QrdStatus {
    guard(|| {
        write_out(
            out,
            QrdOrbits {
                inner: OrbitPartition::new(p)?,
            },
        )
    })
}

/// # Safety
/// `o` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_orbits_free(o: *mut QrdOrbits) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Size of orbit 1 or 2; 0 otherwise.
///
/// # Safety
/// `o` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qrd_orbits_size(o: *const QrdOrbits, orbit: u8) -> usize {
    match (o.as_ref(), orbit) {
        (Some(o), 1 | 2) => o.inner.sizes[orbit as usize - 1],
        _ => 0,
    }
}

/// Orbit (1 or 2) of the triple {a, b, c}.
///
/// # Safety
/// `o` must be a live handle; `orbit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_orbits_label(
    o: *const QrdOrbits,
    a: i64,
    b: i64,
    c: i64,
    orbit: *mut u8,
) -> QrdStatus {
    guard(|| {
        let o = o.as_ref().ok_or_else(|| null("orbits"))?;
        if orbit.is_null() {
            return Err(null("orbit"));
        }
        *orbit = o.inner.label([label(a)?, label(b)?, label(c)?])?;
        Ok(())
    })
}

/// Design report JSON for one shell of the extended QR code of length p + 1,
/// with verdicts for t = 1..=t_max.
///
/// # Safety
/// `opts` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qrd_design_report_json(
    p: u64,
    set: QrdBlockSet,
    shell: usize,
    t_max: usize,
    opts: *const QrdOptions,
    out: *mut *mut c_char,
) -> QrdStatus {
    guard(|| {
        let kind = match set {
            QrdBlockSet::Code => CodeKind::Code,
            QrdBlockSet::Dual => CodeKind::Dual,
            QrdBlockSet::Union => CodeKind::Union,
        };
        let report = QrStudy::new(p, options(opts))?.shell_report(kind, shell, t_max)?;
        write_string(out, json(&report)?)
    })
}

/// Runs every named check for p. Returns `CheckFailed` if any check fails;
/// the counts are written either way. `report_json`, if non-null, receives
/// the list of checks as JSON.
///
/// # Safety
/// `passed` and `total` must be writable; `opts` and `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn qrd_reproduce(
    p: u64,
    opts: *const QrdOptions,
    passed: *mut usize,
    total: *mut usize,
    report_json: *mut *mut c_char,
) -> QrdStatus {
    guard(|| {
        if passed.is_null() || total.is_null() {
            return Err(null("count pointer"));
        }
        let checks = reproduce(p, options(opts))?;
        let ok = checks.iter().filter(|c| c.passed).count();
        *passed = ok;
        *total = checks.len();
        if !report_json.is_null() {
            write_string(report_json, json(&checks)?)?;
        }
        if ok != checks.len() {
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            return Err(Fail(
                QrdStatus::CheckFailed,
                format!("failed: {}", failed.join("; ")),
            ));
        }
        Ok(())
    })
}
