//! Extraction protocols: single and repeated collisions, probe optimization,
//! channel fixed points, global-swap homogenization, multiprobe geometries,
//! threshold scans and fitting.

mod channel;
mod fit;
mod multiprobe;
mod optimize;

pub use channel::{
    channel_fixed_point, fixed_point_of, iterate_to_fixed_point, solve_fixed_point, FixedPointReport,
    ProbeChannel,
};
pub use fit::{fit_exponential, ExponentialFit};
pub use multiprobe::{
    spin_star_analytic, spin_star_extraction, spin_star_sweep, w_extraction, w_extraction_expected,
    SpinStarOutcome, MAX_W_PROBES,
};
pub use optimize::{
    concurrence_surface, optimize_probes, threshold_scan, OptimizationResult, Thresholds,
    ANGLE_GRID_POINTS, EXTRACTION_THRESHOLD, THRESHOLD_TOL,
};

use crate::error::{Error, Result};
use crate::gates::CollisionConfig;
use crate::measures::{concurrence_of, fidelity_of};
use crate::qcore::ComplexMatrix;
use crate::states::DensityMatrix;

const CHAIN: [usize; 2] = [0, 1];
const PROBES: [usize; 2] = [2, 3];

#[derive(Debug, Clone)]
pub struct CollisionOutcome {
    pub probe_state: DensityMatrix,
    pub concurrence: f64,
    pub chain_state_after: DensityMatrix,
}

fn require_pair(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::param(format!("{what} must be a 2-qubit state, got {} qubits", rho.n_qubits())));
    }
    rho.check_invariants()
}

fn collide_with(chain: &DensityMatrix, probes: &DensityMatrix, unitary: &ComplexMatrix) -> Result<CollisionOutcome> {
    let joint = chain.tensor(probes)?.evolve(unitary)?;
    let probe_state = joint.partial_trace(&PROBES)?;
    let chain_state_after = joint.partial_trace(&CHAIN)?;
    let concurrence = concurrence_of(probe_state.matrix())?.value;
    Ok(CollisionOutcome { probe_state, concurrence, chain_state_after })
}

/// One pair-local collision between a chain pair on qubits (1, 2) and the
/// probes on (L, R), with J = 1 and duration `j_tau`.
pub fn collide_once(chain: &DensityMatrix, probes: &DensityMatrix, lambda: f64, j_tau: f64) -> Result<CollisionOutcome> {
    require_pair(chain, "chain state")?;
    require_pair(probes, "probe state")?;
    let u = CollisionConfig::pair_local(lambda, j_tau).unitary()?;
    collide_with(chain, probes, &u)
}

#[derive(Debug, Clone)]
pub struct CollisionStep {
    pub step: usize,
    pub concurrence: f64,
    pub probe_state: DensityMatrix,
}

/// Collides the probes `n` times, each time with a fresh copy of `chain`.
pub fn repeated_collisions(
    chain: &DensityMatrix,
    probes0: &DensityMatrix,
    lambda: f64,
    j_tau: f64,
    n: usize,
) -> Result<Vec<CollisionStep>> {
    require_pair(chain, "chain state")?;
    require_pair(probes0, "probe state")?;
    if n == 0 {
        return Err(Error::param("number of collisions must be at least 1"));
    }
    let u = CollisionConfig::pair_local(lambda, j_tau).unitary()?;
    let mut probes = probes0.clone();
    let mut out = Vec::with_capacity(n);
    for step in 1..=n {
        let outcome = collide_with(chain, &probes, &u)?;
        probes = outcome.probe_state;
        out.push(CollisionStep { step, concurrence: outcome.concurrence, probe_state: probes.clone() });
    }
    Ok(out)
}

/// Repeated global partial swaps; returns the probe fidelity to `chain`
/// after each step.
pub fn homogenize_global(
    chain: &DensityMatrix,
    probes0: &DensityMatrix,
    j_tau: f64,
    n: usize,
) -> Result<Vec<(usize, f64)>> {
    require_pair(chain, "chain state")?;
    require_pair(probes0, "probe state")?;
    if n == 0 {
        return Err(Error::param("number of collisions must be at least 1"));
    }
    let channel = ProbeChannel::global_swap(chain, j_tau)?;
    let mut rho = probes0.matrix().clone();
    let mut out = Vec::with_capacity(n);
    for step in 1..=n {
        rho = channel.apply(&rho);
        out.push((step, fidelity_of(&rho, chain.matrix())?));
    }
    Ok(out)
}
