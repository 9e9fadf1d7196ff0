//! C ABI over the `ladder-qst` simulator.
//!
//! Every fallible call returns an [`LqStatus`]; outputs go through pointer
//! arguments. The message of the most recent failure on the calling thread
//! is available from [`lq_last_error_message`]. Ladder definitions live
//! behind the opaque [`LqLadder`] handle, created by [`lq_ladder_new`] and
//! released with [`lq_ladder_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use ladder_qst::dimer::uniform_leg_occupation;
use ladder_qst::ensemble::{derive_stream, run_ensemble_with_threads, EnsembleConfig, ObservablePlan};
use ladder_qst::experiments::{oracle_check, ordered_baseline};
use ladder_qst::hamiltonian::{build_effective, build_physical};
use ladder_qst::model::{effective_parameters, sample_realization, CouplingScheme, LadderParams};
use ladder_qst::observables::{transfer_time, TransferTiming};
use ladder_qst::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter is outside its domain.
    InvalidParameter = 2,
    /// An object broke an operation's contract.
    ContractViolation = 3,
    /// The eigensolver or one ensemble realization failed.
    ComputationFailed = 4,
    /// An output buffer is too small.
    BufferTooSmall = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Basis selector for [`lq_ladder_hamiltonian`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqBasis {
    Physical = 0,
    PlusMinus = 1,
}

/// Opaque ladder definition.
pub struct LqLadder {
    params: LadderParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> LqStatus {
    match err {
        Error::InvalidParameter(_) => LqStatus::InvalidParameter,
        Error::ContractViolation(_) => LqStatus::ContractViolation,
        _ => LqStatus::ComputationFailed,
    }
}

fn guard<F>(f: F) -> LqStatus
where
    F: FnOnce() -> Result<(), LqStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LqStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside ladder-qst");
            LqStatus::Panic
        }
    }
}

fn lift<T>(r: ladder_qst::Result<T>) -> Result<T, LqStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), LqStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        return Err(LqStatus::NullPointer);
    }
    Ok(())
}

fn timing(exact_revival: bool) -> TransferTiming {
    if exact_revival {
        TransferTiming::ExactRevival
    } else {
        TransferTiming::Standard
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lq_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Version string of the library, static and NUL-terminated.
#[no_mangle]
pub extern "C" fn lq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a ladder with `n_sites` cells, disorder `w`, detuning `delta` and
/// engineered couplings.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn lq_ladder_new(
    n_sites: usize,
    w: f64,
    delta: f64,
    independent_delta: bool,
    out: *mut *mut LqLadder,
) -> LqStatus {
    guard(|| {
        non_null(out, "out")?;
        let params = LadderParams {
            n_sites,
            disorder_w: w,
            detuning_delta: delta,
            coupling_scheme: CouplingScheme::PstEngineered,
            independent_delta,
        };
        lift(params.validate())?;
        *out = Box::into_raw(Box::new(LqLadder { params }));
        Ok(())
    })
}

/// Same as [`lq_ladder_new`] with `n_sites − 1` explicit couplings.
///
/// # Safety
/// `couplings` must point to `n_couplings` readable doubles; `out` as in
/// [`lq_ladder_new`].
#[no_mangle]
pub unsafe extern "C" fn lq_ladder_new_explicit(
    n_sites: usize,
    w: f64,
    delta: f64,
    couplings: *const f64,
    n_couplings: usize,
    out: *mut *mut LqLadder,
) -> LqStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(couplings, "couplings")?;
        let js = slice::from_raw_parts(couplings, n_couplings).to_vec();
        let params = LadderParams {
            n_sites,
            disorder_w: w,
            detuning_delta: delta,
            coupling_scheme: CouplingScheme::Explicit(js),
            independent_delta: false,
        };
        lift(params.validate())?;
        *out = Box::into_raw(Box::new(LqLadder { params }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `ladder` must be null or a handle from [`lq_ladder_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lq_ladder_free(ladder: *mut LqLadder) {
    if !ladder.is_null() {
        drop(Box::from_raw(ladder));
    }
}

/// Number of cells of a ladder, 0 for a null handle.
///
/// # Safety
/// `ladder` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lq_ladder_n_sites(ladder: *const LqLadder) -> usize {
    ladder.as_ref().map_or(0, |l| l.params.n_sites)
}

/// Samples realization `index` under `seed` and writes its dense `2N × 2N`
/// Hamiltonian row-major into `out`, which must hold `out_len ≥ 4N²` doubles.
///
/// # Safety
/// `ladder` must be a live handle; `out` must point to `out_len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn lq_ladder_hamiltonian(
    ladder: *const LqLadder,
    seed: u64,
    index: u64,
    basis: LqBasis,
    out: *mut f64,
    out_len: usize,
) -> LqStatus {
    guard(|| {
        non_null(ladder, "ladder")?;
        non_null(out, "out")?;
        let params = &(*ladder).params;
        let dim = 2 * params.n_sites;
        if out_len < dim * dim {
            set_error(format!("output needs {} doubles, got {out_len}", dim * dim));
            return Err(LqStatus::BufferTooSmall);
        }
        let r = lift(sample_realization(params, &mut derive_stream(seed, index)))?;
        let h = match basis {
            LqBasis::Physical => build_physical(&r),
            LqBasis::PlusMinus => build_effective(&r),
        };
        let dst = slice::from_raw_parts_mut(out, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                dst[i * dim + j] = h.get(i, j);
            }
        }
        Ok(())
    })
}

/// Mean and standard error of the end-cell concurrence at `τ` over
/// `n_realizations` realizations. `threads = 0` uses the default pool size.
///
/// # Safety
/// `ladder` must be a live handle; `mean` and `std_error` writable.
#[no_mangle]
pub unsafe extern "C" fn lq_concurrence_ensemble(
    ladder: *const LqLadder,
    n_realizations: usize,
    seed: u64,
    threads: usize,
    exact_revival: bool,
    mean: *mut f64,
    std_error: *mut f64,
) -> LqStatus {
    guard(|| {
        non_null(ladder, "ladder")?;
        non_null(mean, "mean")?;
        non_null(std_error, "std_error")?;
        let mut cfg = EnsembleConfig::new(
            (*ladder).params.clone(),
            n_realizations,
            seed,
            ObservablePlan::ConcurrenceAtTau,
        );
        cfg.timing = timing(exact_revival);
        let r = lift(run_ensemble_with_threads(&cfg, threads))?;
        let stats = r.concurrence.expect("concurrence plan");
        *mean = stats.mean;
        *std_error = stats.std_error;
        Ok(())
    })
}

/// Mean `P⁻(t)` and `P⁺(t)` at `n_times` absolute times (ascending,
/// nonnegative).
///
/// # Safety
/// `times`, `mean_p_minus` and `mean_p_plus` must each point to `n_times`
/// doubles (the last two writable); `ladder` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lq_leakage_trace(
    ladder: *const LqLadder,
    times: *const f64,
    n_times: usize,
    n_realizations: usize,
    seed: u64,
    threads: usize,
    mean_p_minus: *mut f64,
    mean_p_plus: *mut f64,
) -> LqStatus {
    guard(|| {
        non_null(ladder, "ladder")?;
        non_null(times, "times")?;
        non_null(mean_p_minus, "mean_p_minus")?;
        non_null(mean_p_plus, "mean_p_plus")?;
        let grid = slice::from_raw_parts(times, n_times).to_vec();
        let cfg = EnsembleConfig::new(
            (*ladder).params.clone(),
            n_realizations,
            seed,
            ObservablePlan::BranchOccupationTrace(grid),
        );
        let r = lift(run_ensemble_with_threads(&cfg, threads))?;
        let minus = slice::from_raw_parts_mut(mean_p_minus, n_times);
        let plus = slice::from_raw_parts_mut(mean_p_plus, n_times);
        for k in 0..n_times {
            minus[k] = r.p_minus[k].mean;
            plus[k] = r.p_plus[k].mean;
        }
        Ok(())
    })
}

/// Concurrence at `τ` of the clean ladder with engineered couplings.
///
/// # Safety
/// `concurrence` and `tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lq_ordered_baseline(
    n_sites: usize,
    exact_revival: bool,
    concurrence: *mut f64,
    tau: *mut f64,
) -> LqStatus {
    guard(|| {
        non_null(concurrence, "concurrence")?;
        non_null(tau, "tau")?;
        let report = lift(ordered_baseline(n_sites, timing(exact_revival)))?;
        *concurrence = report.concurrence_at_tau;
        *tau = report.tau;
        Ok(())
    })
}

/// Largest deviation between numeric and closed-form leg-1 populations of the
/// uniform ladder over `n_times` times.
///
/// # Safety
/// `times` must point to `n_times` doubles; `max_deviation` writable.
#[no_mangle]
pub unsafe extern "C" fn lq_oracle_check(
    delta: f64,
    gamma: f64,
    n_sites: usize,
    times: *const f64,
    n_times: usize,
    max_deviation: *mut f64,
) -> LqStatus {
    guard(|| {
        non_null(times, "times")?;
        non_null(max_deviation, "max_deviation")?;
        let grid = slice::from_raw_parts(times, n_times);
        *max_deviation = lift(oracle_check(delta, gamma, n_sites, grid))?;
        Ok(())
    })
}

/// Transfer time in units of `1/J`.
///
/// # Safety
/// `tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lq_transfer_time(n_sites: usize, exact_revival: bool, tau: *mut f64) -> LqStatus {
    guard(|| {
        non_null(tau, "tau")?;
        *tau = lift(transfer_time(n_sites, timing(exact_revival)))?;
        Ok(())
    })
}

/// Closed-form leg-1 population of the uniform ladder.
#[no_mangle]
pub extern "C" fn lq_uniform_leg_occupation(delta: f64, gamma: f64, t: f64) -> f64 {
    uniform_leg_occupation(delta, gamma, t)
}

/// Effective potentials and rung coupling of one cell.
///
/// # Safety
/// The three output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lq_effective_parameters(
    eps1: f64,
    eps2: f64,
    gamma: f64,
    eps_plus: *mut f64,
    eps_minus: *mut f64,
    gamma_tilde: *mut f64,
) -> LqStatus {
    guard(|| {
        non_null(eps_plus, "eps_plus")?;
        non_null(eps_minus, "eps_minus")?;
        non_null(gamma_tilde, "gamma_tilde")?;
        let s = effective_parameters(eps1, eps2, gamma);
        *eps_plus = s.eps_plus;
        *eps_minus = s.eps_minus;
        *gamma_tilde = s.gamma_tilde;
        Ok(())
    })
}
