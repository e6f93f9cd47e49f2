//! The probe-update channel `ρ ↦ Tr_chain[U (chain ⊗ ρ) U†]` and its fixed point.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::gates::{global_partial_swap, CollisionConfig};
use crate::measures::{concurrence_of, trace_distance_of};
use crate::qcore::{self, kron, pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};
use crate::states::{hermitize, DensityMatrix};

const PROBES: [usize; 2] = [2, 3];
const FIXED_POINT_TOL: f64 = 1e-12;
const MAX_POWER_ITERATIONS: usize = 2_000_000;
const RANK_TOL: f64 = 1e-10;

/// A fixed chain state and collision unitary on `(1, 2, L, R)`, seen as a
/// linear map on two-probe states.
#[derive(Debug, Clone)]
pub struct ProbeChannel {
    chain: ComplexMatrix,
    unitary: ComplexMatrix,
    /// Acts on row-major `vec(ρ)`.
    superop: ComplexMatrix,
}

impl ProbeChannel {
    pub fn new(chain: &DensityMatrix, unitary: ComplexMatrix) -> Result<Self> {
        if chain.n_qubits() != 2 {
            return Err(Error::param("chain state must be a 2-qubit state"));
        }
        if unitary.rows() != 16 || !unitary.is_square() {
            return Err(Error::DimensionMismatch { expected: 16, found: unitary.rows() });
        }
        let mut channel =
            ProbeChannel { chain: chain.matrix().clone(), unitary, superop: ComplexMatrix::zeros(16, 16) };
        for k in 0..4 {
            for l in 0..4 {
                let mut unit = ComplexMatrix::zeros(4, 4);
                unit[(k, l)] = C64::new(1.0, 0.0);
                let image = channel.apply_exact(&unit);
                for (i, z) in image.as_slice().iter().enumerate() {
                    channel.superop[(i, 4 * k + l)] = *z;
                }
            }
        }
        Ok(channel)
    }

    /// Pair-local XXZ collision with J = 1.
    pub fn pair_local(chain: &DensityMatrix, lambda: f64, j_tau: f64) -> Result<Self> {
        Self::new(chain, CollisionConfig::pair_local(lambda, j_tau).unitary()?)
    }

    /// Four-body global partial swap.
    pub fn global_swap(chain: &DensityMatrix, j_tau: f64) -> Result<Self> {
        if !j_tau.is_finite() {
            return Err(Error::param("j_tau must be finite"));
        }
        Self::new(chain, global_partial_swap(j_tau))
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// Full evolution of `chain ⊗ rho` followed by the partial trace.
    pub fn apply_exact(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let joint = kron(&self.chain, rho).conjugate_by(&self.unitary);
        qcore::partial_trace(&joint, 4, &PROBES).expect("fixed 4-qubit layout")
    }

    /// Same map through the precomputed 16×16 superoperator.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let out = self.superop.apply(rho.as_slice());
        let mut m = ComplexMatrix::from_vec(4, 4, out).expect("16 entries");
        hermitize(&mut m);
        m
    }

    /// Real Pauli transfer matrix `T_{μν} = ¼ Tr(P_μ Φ(P_ν))`, row-major,
    /// with `P_{4a+b} = σ_a ⊗ σ_b` and `σ_0 = 1`.
    pub fn pauli_transfer(&self) -> Vec<f64> {
        let basis = pauli_basis();
        let images: Vec<ComplexMatrix> = basis.iter().map(|p| self.apply(p)).collect();
        let mut t = vec![0.0; 256];
        for (mu, p) in basis.iter().enumerate() {
            for (nu, img) in images.iter().enumerate() {
                t[mu * 16 + nu] = 0.25 * (p * img).trace().re;
            }
        }
        t
    }
}

fn pauli_basis() -> Vec<ComplexMatrix> {
    let singles = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    let mut out = Vec::with_capacity(16);
    for a in &singles {
        for b in &singles {
            out.push(kron(a, b));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct FixedPointReport {
    /// Fixed point from the linear solve.
    pub fixed_state: DensityMatrix,
    /// Trace distance between `Φ(ρ*)` and `ρ*`.
    pub residual: f64,
    /// Power-iteration steps until successive iterates were within 1e-12.
    pub iterations_to_converge: usize,
    pub concurrence: f64,
    /// Where power iteration from `1/4` ended up.
    pub power_iteration_state: DensityMatrix,
    /// Trace distance between the two fixed-point estimates.
    pub cross_check_distance: f64,
}

/// Solves `Φ(ρ) = ρ` on the unit-trace slice of Pauli coordinates.
pub fn solve_fixed_point(channel: &ProbeChannel) -> Result<ComplexMatrix> {
    let t = channel.pauli_transfer();
    // r_0 = 1 is pinned by the trace; solve for the other 15 coordinates.
    let n = 15;
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n];
    for mu in 1..16 {
        for nu in 1..16 {
            a[(mu - 1) * n + (nu - 1)] = t[mu * 16 + nu] - if mu == nu { 1.0 } else { 0.0 };
        }
        b[mu - 1] = -t[mu * 16];
    }
    let r = qcore::solve_real(&a, &b, RANK_TOL)?;
    let basis = pauli_basis();
    let mut rho = basis[0].scale(C64::new(0.25, 0.0));
    for (coef, p) in r.iter().zip(&basis[1..]) {
        rho = &rho + &p.scale(C64::new(0.25 * coef, 0.0));
    }
    hermitize(&mut rho);
    Ok(rho)
}

/// Power iteration from the maximally mixed state.
pub fn iterate_to_fixed_point(channel: &ProbeChannel) -> Result<(ComplexMatrix, usize)> {
    let mut rho = ComplexMatrix::identity(4).scale(C64::new(0.25, 0.0));
    for k in 1..=MAX_POWER_ITERATIONS {
        let mut next = channel.apply(&rho);
        // keep rounding from walking off the unit-trace slice
        let tr = next.trace().re;
        next = next.scale(C64::new(1.0 / tr, 0.0));
        let step = trace_distance_of(&next, &rho)?;
        rho = next;
        if step < FIXED_POINT_TOL {
            return Ok((rho, k));
        }
    }
    Err(Error::NoConvergence { what: "fixed-point power iteration", iterations: MAX_POWER_ITERATIONS })
}

fn is_identity_time(j_tau: f64) -> bool {
    let k = j_tau / FRAC_PI_2;
    (k - k.round()).abs() < 1e-9
}

/// Fixed point of the pair-local repeated-collision channel.
///
/// Rejects `j_tau` at multiples of π/2, where the collision acts trivially
/// and every state is fixed.
pub fn channel_fixed_point(chain: &DensityMatrix, lambda: f64, j_tau: f64) -> Result<FixedPointReport> {
    if is_identity_time(j_tau) {
        return Err(Error::param(format!(
            "j_tau = {j_tau} is a multiple of π/2: the collision is trivial and has no unique fixed point"
        )));
    }
    chain.check_invariants()?;
    let channel = ProbeChannel::pair_local(chain, lambda, j_tau)?;
    fixed_point_of(&channel)
}

pub fn fixed_point_of(channel: &ProbeChannel) -> Result<FixedPointReport> {
    let solved = solve_fixed_point(channel)?;
    let fixed_state = DensityMatrix::new(solved)?;
    let residual = trace_distance_of(&channel.apply(fixed_state.matrix()), fixed_state.matrix())?;
    let (iterated, iterations_to_converge) = iterate_to_fixed_point(channel)?;
    let cross_check_distance = trace_distance_of(&iterated, fixed_state.matrix())?;
    let concurrence = concurrence_of(fixed_state.matrix())?.value;
    Ok(FixedPointReport {
        power_iteration_state: DensityMatrix::new(iterated)?,
        fixed_state,
        residual,
        iterations_to_converge,
        concurrence,
        cross_check_distance,
    })
}
