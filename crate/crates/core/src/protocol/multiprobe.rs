//! Extraction with more than two probes or more than one spin per probe.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::{spin_star_model, SpinModel};
use crate::measures::concurrence_of;
use crate::qcore::{kron_vec, partial_trace_pure, ComplexMatrix, C64, ONE, ZERO};
use crate::states::{hermitize, w_state, DensityMatrix};

pub const MAX_W_PROBES: usize = 5;

fn zeros_state(n: usize) -> Vec<C64> {
    let mut v = vec![ZERO; 1 << n];
    v[0] = ONE;
    v
}

fn reduced(psi: &[C64], n_qubits: usize, keep: &[usize]) -> Result<DensityMatrix> {
    let mut rho = partial_trace_pure(psi, n_qubits, keep)?;
    hermitize(&mut rho);
    DensityMatrix::new(rho)
}

/// Each of `n` probes in `|0⟩` couples by a Heisenberg bond to its own spin
/// of an `n`-spin W state; returns the probes' reduced state after `j_tau`.
pub fn w_extraction(n: usize, j_tau: f64) -> Result<DensityMatrix> {
    if !(2..=MAX_W_PROBES).contains(&n) {
        return Err(Error::param(format!("W extraction needs 2 ≤ n ≤ {MAX_W_PROBES}, got {n}")));
    }
    if !j_tau.is_finite() {
        return Err(Error::param("j_tau must be finite"));
    }
    let mut model = SpinModel::new(2 * n)?;
    for i in 0..n {
        model.add_bond(i, n + i, 1.0, 1.0)?;
    }
    let psi0 = kron_vec(w_state(n)?.amplitudes(), &zeros_state(n));
    let psi = model.evolve(&psi0, j_tau)?;
    let probes: Vec<usize> = (n..2 * n).collect();
    reduced(&psi, 2 * n, &probes)
}

/// `cos²(2 j_tau) |0…0⟩⟨0…0| + sin²(2 j_tau) |W_n⟩⟨W_n|`.
pub fn w_extraction_expected(n: usize, j_tau: f64) -> Result<DensityMatrix> {
    let w = w_state(n)?;
    let (c2, s2) = ((2.0 * j_tau).cos().powi(2), (2.0 * j_tau).sin().powi(2));
    let zeros = zeros_state(n);
    let m = &ComplexMatrix::outer(&zeros, &zeros).scale(C64::new(c2, 0.0))
        + &ComplexMatrix::outer(w.amplitudes(), w.amplitudes()).scale(C64::new(s2, 0.0));
    DensityMatrix::new(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinStarOutcome {
    pub j_tau: f64,
    pub numeric: f64,
    /// XY closed form; present only for `lambda == 0`.
    pub analytic: Option<f64>,
}

/// `(2N/L) sin²(2 j_tau √N)`.
pub fn spin_star_analytic(chain_len: usize, spins_per_probe: usize, j_tau: f64) -> f64 {
    let n = spins_per_probe as f64;
    2.0 * n / chain_len as f64 * (2.0 * j_tau * n.sqrt()).sin().powi(2)
}

/// Probe concurrence after the two probes, starting in `|00⟩`, couple to
/// disjoint blocks of `N` spins in an `L`-spin W state.
pub fn spin_star_extraction(
    chain_len: usize,
    spins_per_probe: usize,
    lambda: f64,
    j_tau: f64,
) -> Result<SpinStarOutcome> {
    Ok(spin_star_sweep(chain_len, spins_per_probe, lambda, &[j_tau])?[0])
}

/// Spin-star extraction at every time in `j_tau_grid`, in grid order.
pub fn spin_star_sweep(
    chain_len: usize,
    spins_per_probe: usize,
    lambda: f64,
    j_tau_grid: &[f64],
) -> Result<Vec<SpinStarOutcome>> {
    if !lambda.is_finite() {
        return Err(Error::param(format!("lambda must be finite, got {lambda}")));
    }
    if let Some(t) = j_tau_grid.iter().find(|t| !t.is_finite()) {
        return Err(Error::param(format!("j_tau must be finite, got {t}")));
    }
    let model = spin_star_model(chain_len, spins_per_probe, 1.0, lambda)?;
    let psi0 = kron_vec(w_state(chain_len)?.amplitudes(), &zeros_state(2));
    let propagator = model.propagator(&psi0)?;
    let n_qubits = chain_len + 2;
    j_tau_grid
        .par_iter()
        .map(|&j_tau| {
            let psi = propagator.evolve(j_tau);
            let rho = reduced(&psi, n_qubits, &[chain_len, chain_len + 1])?;
            let numeric = concurrence_of(rho.matrix())?.value;
            let analytic = (lambda == 0.0).then(|| spin_star_analytic(chain_len, spins_per_probe, j_tau));
            Ok(SpinStarOutcome { j_tau, numeric, analytic })
        })
        .collect()
}
