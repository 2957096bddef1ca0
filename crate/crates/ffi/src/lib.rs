//! C ABI over `gt_hypergeo`.
//!
//! Every function returns a [`GthoStatus`]. On failure a message is stored
//! in thread-local storage and can be read with [`gtho_last_error_message`].
//! Panics never cross the boundary; they surface as
//! [`GthoStatus::Panic`].
//!
//! Arrays are passed as pointer plus length. Matrices are row-major.
//! Handles returned through `out` parameters must be released with the
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gt_hypergeo::hypergeo::{bessel, ho_f, phi_k, phi_k_trig, EvalResult, QuadratureSpec};
use gt_hypergeo::macdonald::{macdonald_poly, MacParams, MacdonaldPoly};
use gt_hypergeo::orbit::{build_unitary, harish_chandra_rhs, orbit_mc, w_m_coefficient, InterlacingUnitary};
use gt_hypergeo::scalar::{parse_rational, rational_to_f64};
use gt_hypergeo::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GthoStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Malformed input: wrong lengths, non-finite numbers, bad rationals.
    InvalidArgument = 2,
    /// Coincident entries where strictly decreasing ones are required.
    Degenerate = 3,
    /// The pair `(μ, λ)` does not interlace strictly.
    Interlacing = 4,
    /// The requested configuration is outside what the library evaluates.
    Unsupported = 5,
    /// A numerical or algebraic step failed.
    Numerical = 6,
    /// The caller's buffer is too small; the required size was reported.
    BufferTooSmall = 7,
    /// The library panicked. This is a bug.
    Panic = 8,
}

/// Value, error estimate and work counter of an evaluation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GthoEvalResult {
    pub value: f64,
    pub est_error: f64,
    pub work: u64,
}

impl From<EvalResult> for GthoEvalResult {
    fn from(r: EvalResult) -> Self {
        GthoEvalResult { value: r.value, est_error: r.est_error, work: r.work }
    }
}

/// Opaque interlacing unitary `u(μ, λ)`.
pub struct GthoUnitary(InterlacingUnitary);

/// Opaque Macdonald polynomial with exact rational coefficients.
pub struct GthoMacdonald(MacdonaldPoly);

/// Which Gelfand-Tsetlin integral [`gtho_eval`] computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GthoFunction {
    /// Normalized Bessel function `B_k(λ, s)`.
    Bessel = 0,
    /// Normalized Heckman-Opdam function `F_k(λ, s)`.
    HeckmanOpdam = 1,
    /// Rational integral `φ_k(λ, s)`.
    PhiRational = 2,
    /// Trigonometric integral `Φ_k(λ, s)`.
    PhiTrigonometric = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GthoStatus {
    match e {
        Error::InvalidInput(_) | Error::VariableMismatch | Error::IndexOutOfRange { .. } => GthoStatus::InvalidArgument,
        Error::Degenerate(_) | Error::EigenvalueCollision(_) => GthoStatus::Degenerate,
        Error::Interlacing(_) => GthoStatus::Interlacing,
        Error::Unsupported(_) => GthoStatus::Unsupported,
        Error::NotDivisible(_) | Error::Numerical(_) => GthoStatus::Numerical,
    }
}

/// Failure inside the shim, before or after the library call.
struct Fail(GthoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(name: &str) -> Fail {
    Fail(GthoStatus::NullPointer, format!("{name} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GthoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GthoStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            GthoStatus::Panic
        }
    }
}

/// # Safety
/// `data` must be null or point to `len` readable values.
unsafe fn slice<'a, T>(name: &str, data: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(name: &str, out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `handle` must be null or a live pointer from the matching constructor.
unsafe fn handle_ref<'a, T>(name: &str, handle: *const T) -> Result<&'a T, Fail> {
    handle.as_ref().ok_or_else(|| null(name))
}

/// Message of the last failure on this thread, or null if none. The string
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gtho_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Forgets the stored error message.
#[no_mangle]
pub extern "C" fn gtho_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gtho_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Evaluates a Gelfand-Tsetlin integral at `(λ, s)` with `n` entries each,
/// using `nodes` Gauss-Legendre nodes per dimension on `panels` panels.
///
/// # Safety
/// `lambda` and `s` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_eval(
    function: GthoFunction,
    lambda: *const f64,
    s: *const f64,
    n: usize,
    k: f64,
    nodes: usize,
    panels: usize,
    out: *mut GthoEvalResult,
) -> GthoStatus {
    guard(|| {
        let lambda = slice("lambda", lambda, n)?;
        let s = slice("s", s, n)?;
        let spec = QuadratureSpec::new(nodes, panels)?;
        let r = match function {
            GthoFunction::Bessel => bessel(lambda, s, k, spec)?,
            GthoFunction::HeckmanOpdam => ho_f(lambda, s, k, spec)?,
            GthoFunction::PhiRational => phi_k(lambda, s, k, spec)?,
            GthoFunction::PhiTrigonometric => phi_k_trig(lambda, s, k, spec)?,
        };
        write_out("out", out, r.into())
    })
}

/// The Harish-Chandra alternating sum `det[e^{λ_i s_j}] / (Δ(λ)Δ(s))`.
///
/// # Safety
/// `lambda` and `s` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_harish_chandra(lambda: *const f64, s: *const f64, n: usize, out: *mut f64) -> GthoStatus {
    guard(|| {
        let v = harish_chandra_rhs(slice("lambda", lambda, n)?, slice("s", s, n)?)?;
        write_out("out", out, v)
    })
}

/// Monte Carlo estimate of the orbit integral `ψ_k` (or `Ψ_k` when `trig`
/// is nonzero), deterministic in `seed`.
///
/// # Safety
/// `lambda` and `s` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_orbit_mc(
    lambda: *const f64,
    s: *const f64,
    n: usize,
    k: u32,
    trig: bool,
    samples: u64,
    seed: u64,
    out: *mut GthoEvalResult,
) -> GthoStatus {
    guard(|| {
        let r = orbit_mc(slice("lambda", lambda, n)?, slice("s", s, n)?, k, trig, samples, seed)?;
        write_out("out", out, r.into())
    })
}

/// Builds `u(μ, λ)` for `μ` of length `n − 1` and `λ` of length `n`.
///
/// # Safety
/// `mu` must point to `n − 1` doubles, `lambda` to `n`; `out` must be
/// writable. On success `*out` owns a handle for [`gtho_unitary_free`].
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_new(
    mu: *const f64,
    lambda: *const f64,
    n: usize,
    trig: bool,
    out: *mut *mut GthoUnitary,
) -> GthoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 {
            return Err(Fail(GthoStatus::InvalidArgument, "n must be positive".into()));
        }
        let u = build_unitary(slice("mu", mu, n - 1)?, slice("lambda", lambda, n)?, trig)?;
        out.write(Box::into_raw(Box::new(GthoUnitary(u))));
        Ok(())
    })
}

/// Releases a unitary handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or come from [`gtho_unitary_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_free(handle: *mut GthoUnitary) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Matrix size `n`.
///
/// # Safety
/// `handle` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_size(handle: *const GthoUnitary, out: *mut usize) -> GthoStatus {
    guard(|| write_out("out", out, handle_ref("handle", handle)?.0.size()))
}

/// Copies the `n × n` entries row-major into `buf` of capacity `len`.
///
/// # Safety
/// `handle` must be live; `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_entries(handle: *const GthoUnitary, buf: *mut f64, len: usize) -> GthoStatus {
    guard(|| {
        let u = &handle_ref("handle", handle)?.0;
        let n = u.size();
        if len < n * n {
            return Err(Fail(GthoStatus::BufferTooSmall, format!("need {} doubles, got {len}", n * n)));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for i in 0..n {
            for j in 0..n {
                buf.add(i * n + j).write(u.entries[(i, j)]);
            }
        }
        Ok(())
    })
}

/// `‖uuᵀ − I‖_∞`.
///
/// # Safety
/// `handle` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_residual(handle: *const GthoUnitary, out: *mut f64) -> GthoStatus {
    guard(|| write_out("out", out, handle_ref("handle", handle)?.0.unitarity_residual()))
}

/// The zero-weight matrix element of `u` in the `(k−1)`-th symmetric power.
///
/// # Safety
/// `handle` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_unitary_matrix_element(handle: *const GthoUnitary, k: u32, out: *mut f64) -> GthoStatus {
    guard(|| {
        let v = w_m_coefficient(&handle_ref("handle", handle)?.0, k)?;
        write_out("out", out, v)
    })
}

/// # Safety
/// `text` must be null or a NUL-terminated string.
unsafe fn rational_arg(name: &str, text: *const c_char) -> Result<gt_hypergeo::Rational, Fail> {
    if text.is_null() {
        return Err(null(name));
    }
    let s =
        CStr::from_ptr(text).to_str().map_err(|_| Fail(GthoStatus::InvalidArgument, format!("{name} is not UTF-8")))?;
    Ok(parse_rational(s)?)
}

/// Computes `P_λ(x; q², t²)` in `n` variables. `q` and `t` are strings such
/// as `"1/2"`, `"3"` or `"0.25"`.
///
/// # Safety
/// `partition` must point to `len` ints; `q`, `t` must be NUL-terminated;
/// `out` must be writable. On success `*out` owns a handle for
/// [`gtho_macdonald_free`].
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_new(
    partition: *const i32,
    len: usize,
    n: usize,
    q: *const c_char,
    t: *const c_char,
    out: *mut *mut GthoMacdonald,
) -> GthoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let partition = slice("partition", partition, len)?;
        let params = MacParams::new(rational_arg("q", q)?, rational_arg("t", t)?)?;
        let poly = macdonald_poly(partition, &params, n)?;
        out.write(Box::into_raw(Box::new(GthoMacdonald(poly))));
        Ok(())
    })
}

/// Releases a Macdonald handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or come from [`gtho_macdonald_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_free(handle: *mut GthoMacdonald) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of nonzero monomial coefficients.
///
/// # Safety
/// `handle` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_term_count(handle: *const GthoMacdonald, out: *mut usize) -> GthoStatus {
    guard(|| write_out("out", out, handle_ref("handle", handle)?.0.coefficients.len()))
}

/// Term `index`: its partition (padded to `n` parts) into `monomial`, and
/// the coefficient as a NUL-terminated `"p/q"` string into `text` of
/// capacity `text_len`. `*text_needed` receives the required capacity
/// including the NUL, also when the call fails with `BufferTooSmall`.
///
/// # Safety
/// `handle` must be live; `monomial` writable for `monomial_len` ints;
/// `text` writable for `text_len` bytes; `text_needed` writable or null.
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_term(
    handle: *const GthoMacdonald,
    index: usize,
    monomial: *mut i32,
    monomial_len: usize,
    text: *mut c_char,
    text_len: usize,
    text_needed: *mut usize,
) -> GthoStatus {
    guard(|| {
        let poly = &handle_ref("handle", handle)?.0;
        let (mu, c) = poly.coefficients.get(index).ok_or_else(|| {
            Fail(GthoStatus::InvalidArgument, format!("term {index} out of range ({} terms)", poly.coefficients.len()))
        })?;
        let rendered = c.to_string();
        let needed = rendered.len() + 1;
        if !text_needed.is_null() {
            text_needed.write(needed);
        }
        if monomial_len < mu.len() {
            return Err(Fail(GthoStatus::BufferTooSmall, format!("monomial needs {} ints", mu.len())));
        }
        if text_len < needed {
            return Err(Fail(GthoStatus::BufferTooSmall, format!("coefficient needs {needed} bytes")));
        }
        if monomial.is_null() {
            return Err(null("monomial"));
        }
        if text.is_null() {
            return Err(null("text"));
        }
        ptr::copy_nonoverlapping(mu.as_ptr(), monomial, mu.len());
        ptr::copy_nonoverlapping(rendered.as_ptr().cast::<c_char>(), text, rendered.len());
        text.add(rendered.len()).write(0);
        Ok(())
    })
}

/// Term `index`'s coefficient rounded to the nearest double.
///
/// # Safety
/// `handle` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_coefficient_f64(
    handle: *const GthoMacdonald,
    index: usize,
    out: *mut f64,
) -> GthoStatus {
    guard(|| {
        let poly = &handle_ref("handle", handle)?.0;
        let (_, c) = poly
            .coefficients
            .get(index)
            .ok_or_else(|| Fail(GthoStatus::InvalidArgument, format!("term {index} out of range")))?;
        write_out("out", out, rational_to_f64(c))
    })
}

/// Evaluates the polynomial at a point with `n` coordinates.
///
/// # Safety
/// `handle` must be live; `x` must point to `n` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gtho_macdonald_eval(
    handle: *const GthoMacdonald,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> GthoStatus {
    guard(|| {
        let poly = &handle_ref("handle", handle)?.0;
        let v = poly.eval(slice("x", x, n)?)?;
        write_out("out", out, v)
    })
}
