//! C ABI for the gmec library.
//!
//! Conventions:
//! * every function returns a `gmec_status` code; `GMEC_OK` is 0,
//! * states are opaque `gmec_state` handles owned by the caller and released
//!   with [`gmec_state_free`],
//! * output parameters are written only on `GMEC_OK`,
//! * on failure a thread-local message is readable via
//!   [`gmec_last_error_length`] / [`gmec_last_error_message`],
//! * complex arrays are interleaved `[re, im, re, im, ...]` doubles in
//!   row-major label order (party 1 most significant).
//!
//! The shipped header lives at `include/gmec.h`; keep it in sync with the
//! exported surface (or regenerate it with cbindgen using the checked-in
//! `cbindgen.toml`).

#![allow(non_camel_case_types)]
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use gmec::factory;
use gmec::scan::{run_scan, to_csv, ScanSpec};
use gmec::statefile::{self, LoadedState};
use gmec::{
    gme_concurrence_pure, maximize_bound, noise_threshold, ppt_classify, CMat, DensityMatrix,
    Error, HilbertDims, OptimizerConfig, StateVector, ThresholdOutcome,
};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum gmec_status {
    GMEC_OK = 0,
    /// A required pointer argument was null.
    GMEC_ERR_NULL_ARGUMENT = 1,
    /// Arguments out of range (arity, subsets, labels, parameters, domains).
    GMEC_ERR_INVALID_ARGUMENT = 2,
    /// A state invariant failed (normalization, Hermiticity, trace,
    /// positivity) or a state file was malformed.
    GMEC_ERR_INVALID_STATE = 3,
    /// Filesystem error.
    GMEC_ERR_IO = 4,
    /// A string argument was not valid UTF-8.
    GMEC_ERR_UTF8 = 5,
    /// The noise search found no sign change on [0, 1].
    GMEC_ERR_NO_THRESHOLD = 6,
    /// An internal panic was caught at the boundary.
    GMEC_ERR_PANIC = 7,
}

use gmec_status::*;

/// Opaque state handle: a pure state or a density matrix.
pub struct gmec_state {
    inner: LoadedState,
}

/// Search configuration; pass NULL for defaults (20 restarts, 2000
/// evaluations per restart, seed 0, tol 1e-9).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct gmec_optimizer_config {
    pub restarts: u32,
    pub max_evals: u32,
    pub seed: u64,
    pub tol: f64,
}

/// Result of a bound maximization.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct gmec_bound_result {
    /// Maximized 2I; negative when nothing was detected.
    pub raw_2i: f64,
    /// max(raw_2i, 0): certified lower bound on the gme-concurrence.
    pub lower_bound: f64,
    /// Total objective evaluations across restarts.
    pub evaluations: u64,
    /// 1 when the best restart converged within its budget.
    pub converged: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> gmec_status {
    match err {
        Error::InvalidLabel { .. }
        | Error::InvalidSubset(_)
        | Error::InvalidArity(_)
        | Error::DimsMismatch(_)
        | Error::UnsupportedWitness(_)
        | Error::ParamCount { .. }
        | Error::Domain(_)
        | Error::Unsupported(_) => GMEC_ERR_INVALID_ARGUMENT,
        Error::NotNormalized(_)
        | Error::NotHermitian(_)
        | Error::BadTrace(_)
        | Error::NotPositive(_)
        | Error::NotUnitary(_)
        | Error::NoConvergence(_)
        | Error::StateFile(_) => GMEC_ERR_INVALID_STATE,
        Error::Io(_) => GMEC_ERR_IO,
    }
}

fn fail(err: Error) -> gmec_status {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Run `body` with panics converted to GMEC_ERR_PANIC.
fn guarded(body: impl FnOnce() -> gmec_status) -> gmec_status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            GMEC_ERR_PANIC
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> gmec_status {
    if out.is_null() {
        set_error("output pointer is null");
        return GMEC_ERR_NULL_ARGUMENT;
    }
    unsafe { out.write(value) };
    GMEC_OK
}

fn config_from(cfg: *const gmec_optimizer_config) -> OptimizerConfig {
    if cfg.is_null() {
        return OptimizerConfig::default();
    }
    let c = unsafe { *cfg };
    OptimizerConfig {
        restarts: c.restarts.max(1) as usize,
        max_evals: c.max_evals as usize,
        seed: c.seed,
        tol: if c.tol > 0.0 { c.tol } else { 1e-9 },
    }
}

unsafe fn dims_from(dims: *const u32, n_parties: usize) -> Result<HilbertDims, Error> {
    if n_parties == 0 {
        return Err(Error::InvalidArity("need at least 2 parties".into()));
    }
    let slice = unsafe { std::slice::from_raw_parts(dims, n_parties) };
    HilbertDims::new(slice.iter().map(|&d| d as usize).collect())
}

fn boxed(state: LoadedState, out: *mut *mut gmec_state) -> gmec_status {
    let handle = Box::into_raw(Box::new(gmec_state { inner: state }));
    unsafe { write_out(out, handle) }
}

/// Number of canonical bipartitions of `parties` parties; 0 when parties < 2.
#[no_mangle]
pub extern "C" fn gmec_bipartition_count(parties: u32) -> usize {
    if !(2..=63).contains(&parties) {
        return 0;
    }
    (1usize << (parties - 1)) - 1
}

/// GHZ state (|0...0> + |1...1>)/sqrt(2) on `parties` qudits of dimension `dim`.
#[no_mangle]
pub extern "C" fn gmec_state_ghz(parties: u32, dim: u32, out: *mut *mut gmec_state) -> gmec_status {
    guarded(|| match factory::make_ghz(parties as usize, dim as usize) {
        Ok(psi) => boxed(LoadedState::Pure(psi), out),
        Err(e) => fail(e),
    })
}

/// W state on `parties` qubits.
#[no_mangle]
pub extern "C" fn gmec_state_w(parties: u32, out: *mut *mut gmec_state) -> gmec_status {
    guarded(|| match factory::make_w(parties as usize) {
        Ok(psi) => boxed(LoadedState::Pure(psi), out),
        Err(e) => fail(e),
    })
}

/// Generalized GHZ state alpha |0'...0'> + beta |1'...1'>. With
/// `random_frames` nonzero the local frames are drawn deterministically from
/// `frame_seed`; otherwise the computational frame is used.
#[no_mangle]
pub extern "C" fn gmec_state_gghz(
    parties: u32,
    dim: u32,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    frame_seed: u64,
    random_frames: i32,
    out: *mut *mut gmec_state,
) -> gmec_status {
    guarded(|| {
        let dims = match HilbertDims::uniform(parties as usize, dim as usize) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        let frames = if random_frames != 0 {
            factory::random_local_frames(&dims, frame_seed)
        } else {
            factory::identity_frames(&dims)
        };
        let alpha = Complex64::new(alpha_re, alpha_im);
        let beta = Complex64::new(beta_re, beta_im);
        match factory::make_gghz(&dims, alpha, beta, &frames) {
            Ok(psi) => boxed(LoadedState::Pure(psi), out),
            Err(e) => fail(e),
        }
    })
}

/// Three-qubit mixture c1 |GHZ><GHZ| + c2 |W><W| + (1 - c1 - c2)/8 * 1.
#[no_mangle]
pub extern "C" fn gmec_state_ghz_w_mix(c1: f64, c2: f64, out: *mut *mut gmec_state) -> gmec_status {
    guarded(|| match factory::make_ghz_w_mix(c1, c2) {
        Ok(rho) => boxed(LoadedState::Mixed(rho), out),
        Err(e) => fail(e),
    })
}

/// Pure state from `2 * D` interleaved doubles (re, im per amplitude).
#[no_mangle]
pub unsafe extern "C" fn gmec_state_from_amplitudes(
    dims: *const u32,
    n_parties: usize,
    amps: *const f64,
    len: usize,
    out: *mut *mut gmec_state,
) -> gmec_status {
    guarded(|| {
        if dims.is_null() || amps.is_null() {
            set_error("dims/amps pointer is null");
            return GMEC_ERR_NULL_ARGUMENT;
        }
        let dims = match unsafe { dims_from(dims, n_parties) } {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        if len != 2 * dims.total() {
            set_error(format!("expected {} doubles, got {len}", 2 * dims.total()));
            return GMEC_ERR_INVALID_ARGUMENT;
        }
        let raw = unsafe { std::slice::from_raw_parts(amps, len) };
        let amp: Vec<Complex64> = raw
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        match StateVector::new(dims, amp) {
            Ok(psi) => boxed(LoadedState::Pure(psi), out),
            Err(e) => fail(e),
        }
    })
}

/// Density matrix from `2 * D * D` interleaved doubles, row-major.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_from_density(
    dims: *const u32,
    n_parties: usize,
    mat: *const f64,
    len: usize,
    out: *mut *mut gmec_state,
) -> gmec_status {
    guarded(|| {
        if dims.is_null() || mat.is_null() {
            set_error("dims/mat pointer is null");
            return GMEC_ERR_NULL_ARGUMENT;
        }
        let dims = match unsafe { dims_from(dims, n_parties) } {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        let d = dims.total();
        if len != 2 * d * d {
            set_error(format!("expected {} doubles, got {len}", 2 * d * d));
            return GMEC_ERR_INVALID_ARGUMENT;
        }
        let raw = unsafe { std::slice::from_raw_parts(mat, len) };
        let mut m = CMat::zeros(d);
        for r in 0..d {
            for c in 0..d {
                let k = 2 * (r * d + c);
                m[(r, c)] = Complex64::new(raw[k], raw[k + 1]);
            }
        }
        match DensityMatrix::new(dims, m) {
            Ok(rho) => boxed(LoadedState::Mixed(rho), out),
            Err(e) => fail(e),
        }
    })
}

/// Load a state file (see the state-format docs).
#[no_mangle]
pub unsafe extern "C" fn gmec_state_load(
    path: *const c_char,
    out: *mut *mut gmec_state,
) -> gmec_status {
    guarded(|| {
        let Some(path) = (unsafe { cstr(path) }) else {
            return GMEC_ERR_UTF8;
        };
        match statefile::load(path) {
            Ok(state) => boxed(state, out),
            Err(e) => fail(e),
        }
    })
}

/// Write a state file.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_save(
    state: *const gmec_state,
    path: *const c_char,
) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        let Some(path) = (unsafe { cstr(path) }) else {
            return GMEC_ERR_UTF8;
        };
        match statefile::save(path, &state.inner) {
            Ok(()) => GMEC_OK,
            Err(e) => fail(e),
        }
    })
}

unsafe fn cstr(ptr: *const c_char) -> Option<String> {
    if ptr.is_null() {
        set_error("string pointer is null");
        return None;
    }
    match unsafe { CStr::from_ptr(ptr) }.to_str() {
        Ok(s) => Some(s.to_owned()),
        Err(_) => {
            set_error("string is not valid UTF-8");
            None
        }
    }
}

/// Release a state handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_free(state: *mut gmec_state) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// 1 when the handle holds a pure state, 0 for a density matrix or null.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_is_pure(state: *const gmec_state) -> i32 {
    unsafe { state.as_ref() }.map_or(0, |s| i32::from(s.inner.is_pure()))
}

/// Number of parties of the state.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_num_parties(
    state: *const gmec_state,
    out: *mut usize,
) -> gmec_status {
    let Some(state) = (unsafe { state.as_ref() }) else {
        set_error("state handle is null");
        return GMEC_ERR_NULL_ARGUMENT;
    };
    unsafe { write_out(out, state.inner.dims().n()) }
}

/// Total Hilbert-space dimension D of the state.
#[no_mangle]
pub unsafe extern "C" fn gmec_state_total_dim(
    state: *const gmec_state,
    out: *mut usize,
) -> gmec_status {
    let Some(state) = (unsafe { state.as_ref() }) else {
        set_error("state handle is null");
        return GMEC_ERR_NULL_ARGUMENT;
    };
    unsafe { write_out(out, state.inner.dims().total()) }
}

/// gme-concurrence of a pure state. Fails with GMEC_ERR_INVALID_ARGUMENT on
/// mixed handles (use gmec_bound for those).
#[no_mangle]
pub unsafe extern "C" fn gmec_pure_gme_concurrence(
    state: *const gmec_state,
    out: *mut f64,
) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        let LoadedState::Pure(psi) = &state.inner else {
            set_error("gme-concurrence needs a pure state; use gmec_bound for mixed states");
            return GMEC_ERR_INVALID_ARGUMENT;
        };
        match gme_concurrence_pure(psi) {
            Ok(report) => unsafe { write_out(out, report.gme_value) },
            Err(e) => fail(e),
        }
    })
}

/// Per-bipartition concurrences of a pure state, in canonical enumeration
/// order. `cap` is the capacity of `out_values`; the count written goes to
/// `written`.
#[no_mangle]
pub unsafe extern "C" fn gmec_pure_concurrences(
    state: *const gmec_state,
    out_values: *mut f64,
    cap: usize,
    written: *mut usize,
) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        let LoadedState::Pure(psi) = &state.inner else {
            set_error("per-cut concurrences need a pure state");
            return GMEC_ERR_INVALID_ARGUMENT;
        };
        let report = match gme_concurrence_pure(psi) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        if out_values.is_null() {
            set_error("output pointer is null");
            return GMEC_ERR_NULL_ARGUMENT;
        }
        if cap < report.per_bipartition.len() {
            set_error(format!(
                "capacity {cap} too small for {} bipartitions",
                report.per_bipartition.len()
            ));
            return GMEC_ERR_INVALID_ARGUMENT;
        }
        for (k, (_, c)) in report.per_bipartition.iter().enumerate() {
            unsafe { out_values.add(k).write(*c) };
        }
        unsafe { write_out(written, report.per_bipartition.len()) }
    })
}

/// Maximize the biseparability bound. `cfg` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn gmec_bound(
    state: *const gmec_state,
    cfg: *const gmec_optimizer_config,
    out: *mut gmec_bound_result,
) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        let rho = state.inner.to_density();
        match maximize_bound(&rho, &config_from(cfg)) {
            Ok(r) => unsafe {
                write_out(
                    out,
                    gmec_bound_result {
                        raw_2i: r.raw_2i,
                        lower_bound: r.lower_bound,
                        evaluations: r.evaluations as u64,
                        converged: i32::from(r.converged),
                    },
                )
            },
            Err(e) => fail(e),
        }
    })
}

/// 1 when the state is PPT for every bipartition, else 0.
#[no_mangle]
pub unsafe extern "C" fn gmec_ppt_all(state: *const gmec_state, out: *mut i32) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        match ppt_classify(&state.inner.to_density()) {
            Ok(report) => unsafe { write_out(out, i32::from(report.ppt_all)) },
            Err(e) => fail(e),
        }
    })
}

/// Minimum partial-transpose eigenvalue per bipartition, canonical order.
#[no_mangle]
pub unsafe extern "C" fn gmec_ppt_min_eigenvalues(
    state: *const gmec_state,
    out_values: *mut f64,
    cap: usize,
    written: *mut usize,
) -> gmec_status {
    guarded(|| {
        let Some(state) = (unsafe { state.as_ref() }) else {
            set_error("state handle is null");
            return GMEC_ERR_NULL_ARGUMENT;
        };
        let report = match ppt_classify(&state.inner.to_density()) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        if out_values.is_null() {
            set_error("output pointer is null");
            return GMEC_ERR_NULL_ARGUMENT;
        }
        if cap < report.per_bipartition.len() {
            set_error(format!(
                "capacity {cap} too small for {} bipartitions",
                report.per_bipartition.len()
            ));
            return GMEC_ERR_INVALID_ARGUMENT;
        }
        for (k, (_, e)) in report.per_bipartition.iter().enumerate() {
            unsafe { out_values.add(k).write(*e) };
        }
        unsafe { write_out(written, report.per_bipartition.len()) }
    })
}

/// Critical visibility p* of the GHZ + white-noise family on `parties`
/// qudits of dimension `dim`. Fails with GMEC_ERR_NO_THRESHOLD when the
/// bound never (or always) detects the family.
#[no_mangle]
pub unsafe extern "C" fn gmec_ghz_noise_threshold(
    parties: u32,
    dim: u32,
    cfg: *const gmec_optimizer_config,
    out_p_star: *mut f64,
) -> gmec_status {
    guarded(|| {
        let outcome = noise_threshold(
            |p| factory::ghz_white_noise(parties as usize, dim as usize, p),
            &config_from(cfg),
        );
        match outcome {
            Ok(ThresholdOutcome::Threshold { p_star }) => unsafe { write_out(out_p_star, p_star) },
            Ok(ThresholdOutcome::NeverPositive) => {
                set_error("bound never positive on [0, 1]");
                GMEC_ERR_NO_THRESHOLD
            }
            Ok(ThresholdOutcome::AlwaysPositive) => {
                set_error("bound positive even at p = 0");
                GMEC_ERR_NO_THRESHOLD
            }
            Err(e) => fail(e),
        }
    })
}

/// Run the GHZ/W-mixture grid scan and write the CSV to `path`.
#[no_mangle]
pub unsafe extern "C" fn gmec_scan_csv(
    path: *const c_char,
    step: f64,
    cfg: *const gmec_optimizer_config,
) -> gmec_status {
    guarded(|| {
        let Some(path) = (unsafe { cstr(path) }) else {
            return GMEC_ERR_UTF8;
        };
        let spec = ScanSpec {
            step,
            optimizer: config_from(cfg),
            warm_start: true,
        };
        let rows = match run_scan(&spec) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        match std::fs::write(path, to_csv(&rows)) {
            Ok(()) => GMEC_OK,
            Err(e) => fail(Error::Io(e)),
        }
    })
}

/// Byte length (without NUL) of the last error message on this thread.
#[no_mangle]
pub extern "C" fn gmec_last_error_length() -> usize {
    LAST_ERROR.with(|slot| slot.borrow().len())
}

/// Copy the last error message into `buf` (NUL-terminated, truncating);
/// returns the number of bytes written excluding the NUL.
#[no_mangle]
pub unsafe extern "C" fn gmec_last_error_message(buf: *mut c_char, len: usize) -> usize {
    if buf.is_null() || len == 0 {
        return 0;
    }
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let n = msg.len().min(len - 1);
        unsafe {
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            buf.add(n).write(0);
        }
        n
    })
}
