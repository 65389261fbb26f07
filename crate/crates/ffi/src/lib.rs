//! C ABI for `lxebkit`.
//!
//! Every fallible function returns an [`LxebStatus`] and writes its result
//! through out-pointers. On failure the message is available from
//! [`lxeb_last_error`] on the same thread until the next failing call.
//! Strings returned by the library are owned by the caller and must be
//! released with [`lxeb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lxebkit::numkit::BigRat;
use lxebkit::refval;
use lxebkit::sampler::{self, UnitaryMatrix};
use lxebkit::schur::{self, OccPattern};
use lxebkit::states::{self, ProductState};
use lxebkit::swapexp;
use lxebkit::{Error, ErrorKind};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Result codes. The nonzero codes 2, 3 and 4 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LxebStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    Guard = 3,
    Check = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Opaque product state.
pub struct LxebState {
    inner: ProductState,
}

/// Opaque `m x m` unitary.
pub struct LxebUnitary {
    inner: UnitaryMatrix,
}

/// Summary of an LXEB Monte Carlo run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LxebEstimate {
    pub fidelity_mean: f64,
    pub fidelity_stderr: f64,
    pub ref_value: f64,
    pub trials: u32,
    pub samples_per_trial: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LxebStatus, msg: impl Into<Vec<u8>>) -> LxebStatus {
    set_error(msg);
    status
}

impl From<&Error> for LxebStatus {
    fn from(e: &Error) -> Self {
        match e.kind() {
            ErrorKind::Validation => LxebStatus::Validation,
            ErrorKind::Guard => LxebStatus::Guard,
            ErrorKind::Check => LxebStatus::Check,
        }
    }
}

/// Runs `f`, turning core errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<(), LxebStatus>) -> LxebStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LxebStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(LxebStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn check<T>(r: lxebkit::Result<T>) -> Result<T, LxebStatus> {
    r.map_err(|e| fail(LxebStatus::from(&e), e.to_string()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), LxebStatus> {
    if p.is_null() {
        Err(fail(LxebStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), LxebStatus> {
    non_null(out, name)?;
    out.write(value);
    Ok(())
}

unsafe fn str_arg<'a>(s: *const c_char, name: &str) -> Result<&'a str, LxebStatus> {
    non_null(s, name)?;
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(LxebStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_rat(out: *mut *mut c_char, value: &BigRat) -> Result<(), LxebStatus> {
    write(out, owned_string(value.to_string()), "out")
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn lxeb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lxeb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lxeb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a product state from a JSON state document.
/// `cutoff` is used when the document has none; pass 0 to require one.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_state_from_json(
    json: *const c_char,
    cutoff: u32,
    out: *mut *mut LxebState,
) -> LxebStatus {
    guarded(|| {
        let doc = str_arg(json, "json")?;
        non_null(out, "out")?;
        let inner = check(states::parse_state_spec(
            doc,
            (cutoff > 0).then_some(cutoff),
        ))?;
        write(out, Box::into_raw(Box::new(LxebState { inner })), "out")
    })
}

/// # Safety
/// `state` must come from [`lxeb_state_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn lxeb_state_free(state: *mut LxebState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of modes of `state`, or 0 for null.
///
/// # Safety
/// `state` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn lxeb_state_mode_count(state: *const LxebState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.mode_count())
}

/// `Tr[S_q ρ_(n)^{⊗2}]` for the normalized `n`-particle sector.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_swap_expectation(
    state: *const LxebState,
    n: u32,
    q: u32,
    out: *mut f64,
) -> LxebStatus {
    guarded(|| {
        non_null(state, "state")?;
        let v = check(swapexp::swap_expectation(&(*state).inner, n, q))?;
        write(out, v, "out")
    })
}

/// Probability weight of the `n`-particle sector.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_n_particle_norm(
    state: *const LxebState,
    n: u32,
    out: *mut f64,
) -> LxebStatus {
    guarded(|| {
        non_null(state, "state")?;
        let v = check(swapexp::n_particle_norm(&(*state).inner, n))?;
        write(out, v, "out")
    })
}

/// Reference value of an arbitrary product state in sector `n`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ref_general(
    state: *const LxebState,
    n: u32,
    out: *mut f64,
) -> LxebStatus {
    guarded(|| {
        non_null(state, "state")?;
        let r = check(refval::lxe_ref_general(&(*state).inner, n))?;
        write(out, r.value_float, "out")
    })
}

/// Collision-free boson sampling reference value. When `exact` is not null
/// it receives the rational value as `"p/q"`, freed with [`lxeb_string_free`].
///
/// # Safety
/// `out` must be writable; `exact` writable or null.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ref_bs(
    m: u32,
    n: u32,
    out: *mut f64,
    exact: *mut *mut c_char,
) -> LxebStatus {
    guarded(|| {
        non_null(out, "out")?;
        let r = check(refval::lxe_ref_bs(m, n, !exact.is_null()))?;
        if let Some(v) = &r.value_exact {
            write_rat(exact, v)?;
        }
        write(out, r.value_float, "out")
    })
}

/// Scattershot reference value with `d` heralded sources.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ref_sbs(m: u32, n: u32, d: u32, out: *mut f64) -> LxebStatus {
    guarded(|| write(out, check(refval::lxe_ref_sbs(m, n, d))?.value_float, "out"))
}

/// Gaussian boson sampling reference value, `pairs` photon pairs from `d` equal squeezers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ref_gbs_uniform(
    m: u32,
    pairs: u32,
    d: u32,
    out: *mut f64,
) -> LxebStatus {
    guarded(|| {
        write(
            out,
            check(refval::lxe_ref_gbs_uniform(m, pairs, d))?.value_float,
            "out",
        )
    })
}

/// Anticoncentration score of collision-free boson sampling.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ac_bs(m: u32, n: u32, out: *mut f64) -> LxebStatus {
    guarded(|| write(out, check(refval::ac_bs(m, n))?, "out"))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ac_sbs(m: u32, n: u32, d: u32, out: *mut f64) -> LxebStatus {
    guarded(|| write(out, check(refval::ac_sbs(m, n, d))?, "out"))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_ac_gbs(m: u32, n: u32, d: u32, out: *mut f64) -> LxebStatus {
    guarded(|| write(out, check(refval::ac_gbs(m, n, d))?, "out"))
}

/// `E|per U|⁴ / (E|per U|²)²` over Haar `U(n)`, as `"p/q"`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_hunter_jones(n: u32, out: *mut *mut c_char) -> LxebStatus {
    guarded(|| write_rat(out, &check(refval::hunter_jones_ratio(n))?))
}

/// Irrep coefficient `c_{k,q}` for `n` particles, as `"p/q"`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_c_coeff(n: u32, k: u32, q: u32, out: *mut *mut c_char) -> LxebStatus {
    guarded(|| write_rat(out, &check(schur::c_coeff(n, k, q))?))
}

/// Haar-random `m x m` unitary from trial stream `trial` of `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_unitary_haar(
    m: u32,
    seed: u64,
    trial: u64,
    out: *mut *mut LxebUnitary,
) -> LxebStatus {
    guarded(|| {
        non_null(out, "out")?;
        if m == 0 {
            return Err(fail(LxebStatus::Validation, "m must be at least 1"));
        }
        let inner = sampler::haar_unitary(m as usize, &mut sampler::trial_rng(seed, trial));
        write(out, Box::into_raw(Box::new(LxebUnitary { inner })), "out")
    })
}

/// # Safety
/// `u` must come from [`lxeb_unitary_haar`] or be null.
#[no_mangle]
pub unsafe extern "C" fn lxeb_unitary_free(u: *mut LxebUnitary) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Mode count of `u`, or 0 for null.
///
/// # Safety
/// `u` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn lxeb_unitary_dim(u: *const LxebUnitary) -> usize {
    u.as_ref().map_or(0, |u| u.inner.m())
}

/// Entry `(row, col)` of `u`.
///
/// # Safety
/// `u` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_unitary_entry(
    u: *const LxebUnitary,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> LxebStatus {
    guarded(|| {
        non_null(u, "u")?;
        let m = (*u).inner.m();
        if row >= m || col >= m {
            return Err(fail(
                LxebStatus::Validation,
                format!("index ({row}, {col}) out of range for {m} modes"),
            ));
        }
        let z = (*u).inner.entries()[(row, col)];
        write(re, z.re, "re")?;
        write(im, z.im, "im")
    })
}

/// Output probability of `outcome` given `input`; both are occupation
/// arrays of length `modes`, which must equal the dimension of `u`.
///
/// # Safety
/// `u` must be a live handle, `input` and `outcome` readable for `modes`
/// elements and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_bs_probability(
    u: *const LxebUnitary,
    input: *const u32,
    outcome: *const u32,
    modes: usize,
    out: *mut f64,
) -> LxebStatus {
    guarded(|| {
        non_null(u, "u")?;
        non_null(input, "input")?;
        non_null(outcome, "outcome")?;
        if modes != (*u).inner.m() {
            return Err(fail(
                LxebStatus::Validation,
                format!("{modes} modes given, unitary has {}", (*u).inner.m()),
            ));
        }
        let a = OccPattern::new(std::slice::from_raw_parts(input, modes).to_vec());
        let b = OccPattern::new(std::slice::from_raw_parts(outcome, modes).to_vec());
        write(
            out,
            check(sampler::bs_probability(&(*u).inner, &a, &b))?,
            "out",
        )
    })
}

/// Permanent of a row-major `dim x dim` complex matrix given as separate
/// real and imaginary arrays.
///
/// # Safety
/// `re` and `im` must be readable for `dim * dim` elements; `out_re` and
/// `out_im` writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_permanent(
    re: *const f64,
    im: *const f64,
    dim: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LxebStatus {
    guarded(|| {
        let len = dim
            .checked_mul(dim)
            .ok_or_else(|| fail(LxebStatus::Validation, "dim overflows"))?;
        if len > 0 {
            non_null(re, "re")?;
            non_null(im, "im")?;
        }
        let (re, im) = if len == 0 {
            (&[][..], &[][..])
        } else {
            (
                std::slice::from_raw_parts(re, len),
                std::slice::from_raw_parts(im, len),
            )
        };
        let a = DMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(re[i * dim + j], im[i * dim + j])
        });
        let p = check(sampler::permanent(&a))?;
        write(out_re, p.re, "out_re")?;
        write(out_im, p.im, "out_im")
    })
}

/// LXEB fidelity estimate over `trials` Haar interferometers with
/// `samples` exact samples each, collision-free input.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lxeb_experiment(
    m: u32,
    n: u32,
    trials: u32,
    samples: u32,
    seed: u64,
    out: *mut LxebEstimate,
) -> LxebStatus {
    guarded(|| {
        non_null(out, "out")?;
        let r = check(sampler::lxeb_experiment(m, n, trials, samples, seed))?;
        let e = LxebEstimate {
            fidelity_mean: r.fidelity_mean,
            fidelity_stderr: r.fidelity_stderr,
            ref_value: r.ref_value,
            trials: r.trials,
            samples_per_trial: r.samples_per_trial,
        };
        write(out, e, "out")
    })
}
