//! Entanglement and distance measures on density matrices.

use crate::error::{Error, Result};
use crate::qcore::{hermitian_eig, psd_sqrt, singular_values, ComplexMatrix};
use crate::states::{CorrelationPair, DensityMatrix};

/// Wootters concurrence together with the spectrum it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceReport {
    pub value: f64,
    /// Square roots of the eigenvalues of `ρ ρ̃`, descending.
    pub eigenvalue_roots: [f64; 4],
}

/// `(σy⊗σy) M* (σy⊗σy)`. σy⊗σy is the real anti-diagonal `(-1, 1, 1, -1)`.
fn spin_flip(m: &ComplexMatrix) -> ComplexMatrix {
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4, 4);
    for r in 0..4 {
        for c in 0..4 {
            out[(r, c)] = m[(3 - r, 3 - c)].conj() * (SIGN[r] * SIGN[c]);
        }
    }
    out
}

/// Concurrence of a raw 4×4 matrix assumed to be a valid two-qubit state.
///
/// `λ_i` are the square roots of the eigenvalues of `√ρ ρ̃ √ρ`, which are the
/// singular values of `√ρ √ρ̃` with `√ρ̃ = (σy⊗σy) √ρ* (σy⊗σy)`.
pub(crate) fn concurrence_of(rho: &ComplexMatrix) -> Result<ConcurrenceReport> {
    let root = psd_sqrt(rho)?;
    let flipped_root = spin_flip(&root);
    let sv = singular_values(&(&root * &flipped_root));
    let roots = [sv[0], sv[1], sv[2], sv[3]];
    let value = (roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0);
    Ok(ConcurrenceReport { value, eigenvalue_roots: roots })
}

pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceReport> {
    if rho.n_qubits() != 2 {
        return Err(Error::param(format!(
            "concurrence needs a 2-qubit state, got {} qubits",
            rho.n_qubits()
        )));
    }
    concurrence_of(rho.matrix())
}

/// `max(0, -1/2 + 4|g_xx| - 2 g_zz)`, valid when `|g_xx| ≥ g_zz`.
pub fn concurrence_closed_form(c: &CorrelationPair) -> Result<f64> {
    if c.g_xx().abs() < c.g_zz() {
        return Err(Error::param(format!(
            "closed form requires |g_xx| ≥ g_zz, got g_xx={}, g_zz={}",
            c.g_xx(),
            c.g_zz()
        )));
    }
    Ok((-0.5 + 4.0 * c.g_xx().abs() - 2.0 * c.g_zz()).max(0.0))
}

fn same_register(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.register() != b.register() {
        return Err(Error::DimensionMismatch {
            expected: a.register().dim(),
            found: b.register().dim(),
        });
    }
    Ok(())
}

pub(crate) fn fidelity_of(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let nuclear: f64 = singular_values(&(&psd_sqrt(a)? * &psd_sqrt(b)?)).iter().sum();
    Ok((nuclear * nuclear).min(1.0))
}

/// `(Tr √(√a b √a))²`, computed as the squared nuclear norm of `√a √b`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    same_register(a, b)?;
    fidelity_of(a.matrix(), b.matrix())
}

pub(crate) fn trace_distance_of(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = a - b;
    Ok(0.5 * hermitian_eig(&diff)?.values.iter().map(|v| v.abs()).sum::<f64>())
}

/// `½ Σ |eig(a - b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    same_register(a, b)?;
    trace_distance_of(a.matrix(), b.matrix())
}

/// Concurrence of the reduced state of qubits `(i, j)` of a larger state.
pub fn pairwise_concurrence(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64> {
    Ok(concurrence(&rho.partial_trace(&[i, j])?)?.value)
}
