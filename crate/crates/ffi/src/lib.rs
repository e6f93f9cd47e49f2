//! C ABI for the `entx` simulator.
//!
//! Density matrices cross the boundary as opaque [`EntxDensityMatrix`]
//! handles owned by the caller and released with [`entx_density_free`].
//! Every fallible function returns an [`EntxStatus`]; on failure the
//! message is available from [`entx_last_error_message`] on the same thread.
//! Output pointers are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entx::error::Error;
use entx::measures::concurrence;
use entx::protocol::{channel_fixed_point, collide_once, optimize_probes, spin_star_extraction, w_extraction};
use entx::qcore::{ComplexMatrix, C64};
use entx::states::{ground_state_correlations, pair_state, Boundary, CorrelationPair, DensityMatrix, PureState};

/// Validated density matrix.
pub struct EntxDensityMatrix {
    inner: DensityMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntxStatus {
    Ok = 0,
    /// A parameter is out of range or sizes do not match.
    InvalidArgument = 1,
    /// A required pointer was null.
    NullPointer = 2,
    /// The matrix is not Hermitian, not positive or not unit trace.
    InvalidState = 3,
    /// Degenerate ground state, non-unique fixed point or no convergence.
    Numerical = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Probe angles maximizing the extracted concurrence.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntxProbeOptimum {
    pub theta_left: f64,
    pub phi_left: f64,
    pub theta_right: f64,
    pub phi_right: f64,
    pub concurrence: f64,
    pub evaluations: usize,
}

/// Summary of the fixed point of the repeated-collision channel.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntxFixedPoint {
    pub concurrence: f64,
    /// Trace distance between one more collision and the fixed state.
    pub residual: f64,
    /// Power-iteration steps until successive iterates agreed within 1e-12.
    pub iterations: usize,
    /// Trace distance between the linear solve and power iteration.
    pub cross_check_distance: f64,
}

struct Failure {
    status: EntxStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidParameter(_) | Error::InvalidQubitSubset { .. } | Error::DimensionMismatch { .. } => {
                EntxStatus::InvalidArgument
            }
            Error::NotHermitian { .. } | Error::NotPositive { .. } | Error::NotNormalized { .. } => {
                EntxStatus::InvalidState
            }
            Error::DegenerateGroundState { .. } | Error::NoConvergence { .. } | Error::NonUniqueFixedPoint { .. } => {
                EntxStatus::Numerical
            }
        };
        Failure { status, message: e.to_string() }
    }
}

fn null(what: &str) -> Failure {
    Failure { status: EntxStatus::NullPointer, message: format!("{what} is null") }
}

fn invalid(message: String) -> Failure {
    Failure { status: EntxStatus::InvalidArgument, message }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: Option<String>) {
    // interior NULs cannot occur in our messages, but never fail here
    let c = message.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> EntxStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|panic| {
        let detail = panic
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| panic.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure { status: EntxStatus::Internal, message: format!("internal error: {detail}") })
    });
    match outcome {
        Ok(()) => {
            set_last_error(None);
            EntxStatus::Ok
        }
        Err(f) => {
            set_last_error(Some(f.message));
            f.status
        }
    }
}

unsafe fn handle<'a>(p: *const EntxDensityMatrix, what: &str) -> Result<&'a DensityMatrix, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed(rho: DensityMatrix) -> *mut EntxDensityMatrix {
    Box::into_raw(Box::new(EntxDensityMatrix { inner: rho }))
}

/// Builds a density matrix from row-major real and imaginary parts.
///
/// `len` must equal `4^n_qubits`. The matrix is validated for Hermiticity,
/// unit trace and positivity.
///
/// # Safety
/// `re` and `im` must point to `len` readable doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn entx_density_from_entries(
    n_qubits: usize,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut EntxDensityMatrix,
) -> EntxStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if re.is_null() || im.is_null() {
            return Err(null("entries"));
        }
        let dim = 1usize.checked_shl(n_qubits as u32).filter(|_| n_qubits > 0 && n_qubits <= 12);
        let Some(dim) = dim else {
            return Err(invalid(format!("n_qubits = {n_qubits} outside 1..=12")));
        };
        if len != dim * dim {
            return Err(invalid(format!("expected {} entries, got {len}", dim * dim)));
        }
        let (re, im) = (std::slice::from_raw_parts(re, len), std::slice::from_raw_parts(im, len));
        let data = re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect();
        let rho = DensityMatrix::new(ComplexMatrix::from_vec(dim, dim, data)?)?;
        *out = boxed(rho);
        Ok(())
    })
}

/// Two-site reduced state of a chain with correlators `g_xx`, `g_zz`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_pair_state(g_xx: f64, g_zz: f64, out: *mut *mut EntxDensityMatrix) -> EntxStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(pair_state(&CorrelationPair::new(g_xx, g_zz)?));
        Ok(())
    })
}

/// Computational basis state `|index⟩` on `n_qubits` qubits, big-endian.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_basis_state(
    n_qubits: usize,
    index: usize,
    out: *mut *mut EntxDensityMatrix,
) -> EntxStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(PureState::basis(n_qubits, index)?.density());
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `rho` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn entx_density_free(rho: *mut EntxDensityMatrix) {
    if !rho.is_null() {
        drop(Box::from_raw(rho));
    }
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `rho` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn entx_density_n_qubits(rho: *const EntxDensityMatrix) -> usize {
    rho.as_ref().map_or(0, |h| h.inner.n_qubits())
}

/// Copies the row-major entries into `re` and `im`, each of length `len`,
/// which must equal `4^n_qubits`.
///
/// # Safety
/// `rho` must be a live handle; `re` and `im` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn entx_density_entries(
    rho: *const EntxDensityMatrix,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> EntxStatus {
    guard(|| {
        let rho = handle(rho, "rho")?;
        if re.is_null() || im.is_null() {
            return Err(null("entries"));
        }
        let entries = rho.matrix().as_slice();
        if len != entries.len() {
            return Err(invalid(format!("expected {} entries, got {len}", entries.len())));
        }
        let (re, im) = (std::slice::from_raw_parts_mut(re, len), std::slice::from_raw_parts_mut(im, len));
        for ((r, i), z) in re.iter_mut().zip(im.iter_mut()).zip(entries) {
            *r = z.re;
            *i = z.im;
        }
        Ok(())
    })
}

/// Concurrence of a two-qubit state.
///
/// # Safety
/// `rho` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_concurrence(rho: *const EntxDensityMatrix, out: *mut f64) -> EntxStatus {
    guard(|| {
        let rho = handle(rho, "rho")?;
        let out = out_ref(out, "out")?;
        *out = concurrence(rho)?.value;
        Ok(())
    })
}

/// One collision of a two-qubit probe state with a two-site chain state.
///
/// Writes the probe concurrence to `out_concurrence` and, when
/// `out_probes` is non-null, a new handle to the probe state.
///
/// # Safety
/// `chain` and `probes` must be live handles; `out_concurrence` must be
/// writable; `out_probes` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn entx_collide_once(
    chain: *const EntxDensityMatrix,
    probes: *const EntxDensityMatrix,
    lambda: f64,
    j_tau: f64,
    out_concurrence: *mut f64,
    out_probes: *mut *mut EntxDensityMatrix,
) -> EntxStatus {
    guard(|| {
        let chain = handle(chain, "chain")?;
        let probes = handle(probes, "probes")?;
        let out_c = out_ref(out_concurrence, "out_concurrence")?;
        let outcome = collide_once(chain, probes, lambda, j_tau)?;
        *out_c = outcome.concurrence;
        if let Some(slot) = out_probes.as_mut() {
            *slot = boxed(outcome.probe_state);
        }
        Ok(())
    })
}

/// Optimizes product probe states for one collision with `chain`.
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_optimize_probes(
    chain: *const EntxDensityMatrix,
    lambda: f64,
    j_tau: f64,
    out: *mut EntxProbeOptimum,
) -> EntxStatus {
    guard(|| {
        let chain = handle(chain, "chain")?;
        let out = out_ref(out, "out")?;
        let r = optimize_probes(chain, lambda, j_tau)?;
        let [left, right] = r.best_angles;
        *out = EntxProbeOptimum {
            theta_left: left.theta(),
            phi_left: left.phi(),
            theta_right: right.theta(),
            phi_right: right.phi(),
            concurrence: r.best_concurrence,
            evaluations: r.evaluations,
        };
        Ok(())
    })
}

/// Fixed point of repeated collisions with fresh copies of `chain`.
///
/// When `out_state` is non-null it receives a handle to the fixed state.
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable; `out_state` must
/// be null or writable.
#[no_mangle]
pub unsafe extern "C" fn entx_channel_fixed_point(
    chain: *const EntxDensityMatrix,
    lambda: f64,
    j_tau: f64,
    out: *mut EntxFixedPoint,
    out_state: *mut *mut EntxDensityMatrix,
) -> EntxStatus {
    guard(|| {
        let chain = handle(chain, "chain")?;
        let out = out_ref(out, "out")?;
        let r = channel_fixed_point(chain, lambda, j_tau)?;
        *out = EntxFixedPoint {
            concurrence: r.concurrence,
            residual: r.residual,
            iterations: r.iterations_to_converge,
            cross_check_distance: r.cross_check_distance,
        };
        if let Some(slot) = out_state.as_mut() {
            *slot = boxed(r.fixed_state);
        }
        Ok(())
    })
}

/// Two probes coupled to disjoint blocks of `spins_per_probe` spins of a
/// `chain_len`-spin W state. `out_analytic` receives the closed-form value,
/// or NaN where none applies.
///
/// # Safety
/// `out_numeric` and `out_analytic` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_spin_star(
    chain_len: usize,
    spins_per_probe: usize,
    lambda: f64,
    j_tau: f64,
    out_numeric: *mut f64,
    out_analytic: *mut f64,
) -> EntxStatus {
    guard(|| {
        let numeric = out_ref(out_numeric, "out_numeric")?;
        let analytic = out_ref(out_analytic, "out_analytic")?;
        let r = spin_star_extraction(chain_len, spins_per_probe, lambda, j_tau)?;
        *numeric = r.numeric;
        *analytic = r.analytic.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Bond-averaged ground-state correlators of an even XXZ chain.
///
/// # Safety
/// `out_g_xx` and `out_g_zz` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_ground_state_correlations(
    lambda: f64,
    chain_len: usize,
    periodic: bool,
    out_g_xx: *mut f64,
    out_g_zz: *mut f64,
) -> EntxStatus {
    guard(|| {
        let g_xx = out_ref(out_g_xx, "out_g_xx")?;
        let g_zz = out_ref(out_g_zz, "out_g_zz")?;
        let boundary = if periodic { Boundary::Periodic } else { Boundary::Open };
        let c = ground_state_correlations(lambda, chain_len, boundary)?;
        *g_xx = c.g_xx();
        *g_zz = c.g_zz();
        Ok(())
    })
}

/// State of `n_probes` probes after extracting an `n_probes`-spin W state.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entx_w_extraction(
    n_probes: usize,
    j_tau: f64,
    out: *mut *mut EntxDensityMatrix,
) -> EntxStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(w_extraction(n_probes, j_tau)?);
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn entx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn entx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
