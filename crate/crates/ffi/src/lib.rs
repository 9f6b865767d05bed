//! C interface to the eqsing toolkit.
//!
//! Objects are opaque handles created by `*_new`/`*_parse` functions and
//! released with the matching `*_free`. Every fallible call returns an
//! [`EqsingStatus`]; on failure, [`eqsing_last_error`] holds a message for
//! the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with [`eqsing_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eqsing::lattice::h1;
use eqsing::localsing::{tjurina_number, SingularitySpec};
use eqsing::ordering::MonomialOrdering;
use eqsing::polyring::{format_polynomial, parse_polynomial, Polynomial};
use eqsing::reduction::red_nf_buchberger;
use eqsing::stratum::classify_stratum;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqsingStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

/// A polynomial with rational coefficients.
pub struct EqsingPolynomial(Polynomial);

/// A singularity `Σ x_i^{α_i}` together with the degree of the hypersurface.
pub struct EqsingSpec(SingularitySpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn guard(f: impl FnOnce() -> Result<(), (EqsingStatus, String)>) -> EqsingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EqsingStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EqsingStatus::Panic
        }
    }
}

type Outcome = Result<(), (EqsingStatus, String)>;

fn null(what: &str) -> (EqsingStatus, String) {
    (EqsingStatus::NullPointer, format!("{what} is null"))
}

fn domain(e: impl ToString) -> (EqsingStatus, String) {
    (EqsingStatus::Domain, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (EqsingStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (EqsingStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn eqsing_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eqsing_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial in `x1..xn`. `nvars = 0` infers `n` from the text.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_polynomial_parse(
    text: *const c_char,
    nvars: usize,
    out: *mut *mut EqsingPolynomial,
) -> EqsingStatus {
    guard(|| {
        let t = read_str(text, "text")?;
        let p = parse_polynomial(t, (nvars > 0).then_some(nvars))
            .map_err(|e| (EqsingStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(EqsingPolynomial(p))))
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eqsing_polynomial_free(p: *mut EqsingPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Text form of `p`, re-parsable by [`eqsing_polynomial_parse`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_polynomial_to_string(
    p: *const EqsingPolynomial,
    out: *mut *mut c_char,
) -> EqsingStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        write_out(out, c_string(format_polynomial(&p.0)))
    })
}

/// Local Tjurina number of `p` at the origin.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_polynomial_tjurina(p: *const EqsingPolynomial, out: *mut u64) -> EqsingStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        write_out(out, tjurina_number(&p.0).map_err(domain)?)
    })
}

/// Normal form of `f` with respect to `gens` under a global ordering
/// spelled `lp`, `Dp` or `Wp(w1,...,wn)`.
///
/// # Safety
/// `f` and the `ngens` entries of `gens` must be live handles, `ord` a
/// nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_normal_form(
    f: *const EqsingPolynomial,
    gens: *const *const EqsingPolynomial,
    ngens: usize,
    ord: *const c_char,
    out: *mut *mut EqsingPolynomial,
) -> EqsingStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("polynomial"))?;
        if gens.is_null() {
            return Err(null("generator array"));
        }
        let g: Vec<Polynomial> = std::slice::from_raw_parts(gens, ngens)
            .iter()
            .map(|p| p.as_ref().map(|p| p.0.clone()).ok_or_else(|| null("generator")))
            .collect::<Result<_, _>>()?;
        let ord: MonomialOrdering = read_str(ord, "ordering")?
            .parse()
            .map_err(|e: eqsing::ordering::OrderingError| (EqsingStatus::Parse, e.to_string()))?;
        let nf = red_nf_buchberger(&f.0, &g, &ord).map_err(domain)?;
        write_out(out, Box::into_raw(Box::new(EqsingPolynomial(nf))))
    })
}

/// Spec for `Σ x_i^{α_i}` on a hypersurface of degree `degree`
/// (`0` selects the default degree).
///
/// # Safety
/// `alpha` must point to `n` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_new(
    alpha: *const u32,
    n: usize,
    degree: u32,
    out: *mut *mut EqsingSpec,
) -> EqsingStatus {
    guard(|| {
        if alpha.is_null() {
            return Err(null("alpha"));
        }
        let a = std::slice::from_raw_parts(alpha, n);
        let s = SingularitySpec::new(a, (degree > 0).then_some(degree), None).map_err(domain)?;
        write_out(out, Box::into_raw(Box::new(EqsingSpec(s))))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_free(s: *mut EqsingSpec) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Degree of the hypersurface.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_degree(s: *const EqsingSpec, out: *mut u32) -> EqsingStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spec"))?;
        write_out(out, s.0.degree())
    })
}

/// `τ = ∏(α_i − 1)`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_tau(s: *const EqsingSpec, out: *mut u64) -> EqsingStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spec"))?;
        write_out(out, s.0.tau())
    })
}

/// `h^1` of the singular scheme twisted by `k`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_h1(s: *const EqsingSpec, k: i64, out: *mut u64) -> EqsingStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spec"))?;
        write_out(out, h1(s.0.alpha(), k))
    })
}

/// The singularity polynomial of the spec.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_spec_polynomial(s: *const EqsingSpec, out: *mut *mut EqsingPolynomial) -> EqsingStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spec"))?;
        write_out(out, Box::into_raw(Box::new(EqsingPolynomial(s.0.polynomial()))))
    })
}

/// Classification of the equisingular stratum as a JSON object.
/// `param_cap < 0` disables truncation of parameter degrees.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqsing_stratum_classify(
    s: *const EqsingSpec,
    param_cap: i32,
    out: *mut *mut c_char,
) -> EqsingStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spec"))?;
        let cap = u32::try_from(param_cap).ok();
        let c = classify_stratum(&s.0, cap).map_err(domain)?;
        write_out(out, c_string(serde_json::to_string(&c).expect("serializable")))
    })
}
