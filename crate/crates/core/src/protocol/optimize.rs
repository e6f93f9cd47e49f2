//! Probe-state optimization, concurrence surfaces and threshold scans.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use super::channel::ProbeChannel;
use crate::error::{Error, Result};
use crate::measures::concurrence_of;
use crate::qcore::{kron_vec, ComplexMatrix};
use crate::record::{Status, SweepRecord};
use crate::states::{pair_state, CorrelationPair, DensityMatrix, ProbeAngles};

/// Grid points per angle in the coarse search.
pub const ANGLE_GRID_POINTS: usize = 12;
/// Extracted concurrence above this counts as entanglement.
pub const EXTRACTION_THRESHOLD: f64 = 1e-10;
/// Bisection width on g for threshold scans.
pub const THRESHOLD_TOL: f64 = 1e-4;

const SIMPLEX_TOL: f64 = 1e-6;
const MAX_SIMPLEX_EVALS: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub best_angles: [ProbeAngles; 2],
    pub best_concurrence: f64,
    pub evaluations: usize,
}

struct Objective<'a> {
    channel: &'a ProbeChannel,
    evaluations: usize,
    failure: Option<Error>,
}

impl Objective<'_> {
    fn concurrence(&mut self, x: &[f64; 4]) -> f64 {
        self.evaluations += 1;
        let l = ProbeAngles::wrapped(x[0], x[1]).amplitudes();
        let r = ProbeAngles::wrapped(x[2], x[3]).amplitudes();
        let psi = kron_vec(&l, &r);
        let out = self.channel.apply(&ComplexMatrix::outer(&psi, &psi));
        match concurrence_of(&out) {
            Ok(rep) => rep.value,
            Err(e) => {
                self.failure.get_or_insert(e);
                0.0
            }
        }
    }
}

fn theta_grid() -> Vec<f64> {
    (0..ANGLE_GRID_POINTS).map(|i| PI * i as f64 / (ANGLE_GRID_POINTS - 1) as f64).collect()
}

fn phi_grid() -> Vec<f64> {
    (0..ANGLE_GRID_POINTS).map(|k| 2.0 * PI * k as f64 / ANGLE_GRID_POINTS as f64).collect()
}

/// Maximizes the one-collision concurrence over product probe states.
///
/// A 12-point-per-angle grid over `(θ_L, φ_L, θ_R, φ_R)` seeds a simplex
/// search that runs until the simplex diameter drops below 1e-6.
pub fn optimize_probes(chain: &DensityMatrix, lambda: f64, j_tau: f64) -> Result<OptimizationResult> {
    if chain.n_qubits() != 2 {
        return Err(Error::param("chain state must be a 2-qubit state"));
    }
    chain.check_invariants()?;
    let channel = ProbeChannel::pair_local(chain, lambda, j_tau)?;
    let mut obj = Objective { channel: &channel, evaluations: 0, failure: None };

    let (thetas, phis) = (theta_grid(), phi_grid());
    let mut best = ([0.0; 4], f64::NEG_INFINITY);
    for &tl in &thetas {
        for &pl in &phis {
            for &tr in &thetas {
                for &pr in &phis {
                    let x = [tl, pl, tr, pr];
                    let c = obj.concurrence(&x);
                    if c > best.1 {
                        best = (x, c);
                    }
                }
            }
        }
    }
    let step = 0.5 * PI / (ANGLE_GRID_POINTS - 1) as f64;
    let (x, neg_c, _) = nelder_mead(|x| -obj.concurrence(x), best.0, step, SIMPLEX_TOL, MAX_SIMPLEX_EVALS);
    if -neg_c > best.1 {
        best = (x, -neg_c);
    }
    if let Some(e) = obj.failure {
        return Err(e);
    }
    Ok(OptimizationResult {
        best_angles: [ProbeAngles::wrapped(best.0[0], best.0[1]), ProbeAngles::wrapped(best.0[2], best.0[3])],
        best_concurrence: best.1,
        evaluations: obj.evaluations,
    })
}

/// Minimizes `f` from `x0`; returns the best vertex, its value and the
/// number of evaluations.
pub(crate) fn nelder_mead<const D: usize>(
    mut f: impl FnMut(&[f64; D]) -> f64,
    x0: [f64; D],
    step: f64,
    tol: f64,
    max_evals: usize,
) -> ([f64; D], f64, usize) {
    let mut simplex: Vec<([f64; D], f64)> = Vec::with_capacity(D + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..D {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }
    let mut evals = D + 1;
    let lerp = |a: &[f64; D], b: &[f64; D], t: f64| -> [f64; D] {
        let mut out = [0.0; D];
        for k in 0..D {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < tol || evals >= max_evals {
            break;
        }
        let worst = simplex[D];
        let mut centroid = [0.0; D];
        for (x, _) in &simplex[..D] {
            for k in 0..D {
                centroid[k] += x[k] / D as f64;
            }
        }
        let xr = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[D] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[D - 1].1 {
            simplex[D] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = lerp(&centroid, &xr, 0.5);
            (xc, f(&xc))
        } else {
            let xc = lerp(&centroid, &worst.0, 0.5);
            (xc, f(&xc))
        };
        evals += 1;
        if fc < fr.min(worst.1) {
            simplex[D] = (xc, fc);
            continue;
        }
        let best = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            v.0 = lerp(&best, &v.0, 0.5);
            v.1 = f(&v.0);
        }
        evals += D;
    }
    (simplex[0].0, simplex[0].1, evals)
}

fn diameter<const D: usize>(simplex: &[([f64; D], f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in simplex.iter().enumerate() {
        for b in &simplex[i + 1..] {
            let dist = a.0.iter().zip(&b.0).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
            d = d.max(dist);
        }
    }
    d
}

/// Optimized extraction over a `(g, j_tau)` grid with `g_xx = g_zz = g`,
/// ordered g-major. Points whose pair state is not PSD are skipped.
pub fn concurrence_surface(g_grid: &[f64], j_tau_grid: &[f64], lambda: f64) -> Result<Vec<SweepRecord>> {
    if g_grid.is_empty() || j_tau_grid.is_empty() {
        return Err(Error::param("g and j_tau grids must be nonempty"));
    }
    if !lambda.is_finite() {
        return Err(Error::param(format!("lambda must be finite, got {lambda}")));
    }
    if let Some(x) = g_grid.iter().chain(j_tau_grid).find(|x| !x.is_finite()) {
        return Err(Error::param(format!("grid values must be finite, got {x}")));
    }
    let points: Vec<(f64, f64)> =
        g_grid.iter().flat_map(|&g| j_tau_grid.iter().map(move |&t| (g, t))).collect();
    Ok(points.par_iter().map(|&(g, j_tau)| surface_point(g, j_tau, lambda)).collect())
}

pub(crate) fn surface_point(g: f64, j_tau: f64, lambda: f64) -> SweepRecord {
    let rec = SweepRecord::new().input("g_xx", g).input("g_zz", g).input("j_tau", j_tau).input("lambda", lambda);
    let pair = match CorrelationPair::isotropic(g) {
        Ok(p) => p,
        Err(e) => return rec.with_status(Status::Skipped, e.to_string()),
    };
    match optimize_probes(&pair_state(&pair), lambda, j_tau) {
        Ok(opt) => rec
            .with_concurrence(opt.best_concurrence)
            .aux("evaluations", opt.evaluations)
            .aux("phi_l", opt.best_angles[0].phi())
            .aux("phi_r", opt.best_angles[1].phi())
            .aux("theta_l", opt.best_angles[0].theta())
            .aux("theta_r", opt.best_angles[1].theta()),
        Err(e) => rec.with_status(Status::Error, e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Largest g with extraction at some grid time; `None` if even `g = −¼`
    /// yields nothing.
    pub g_boundary: Option<f64>,
    /// Largest g with extraction at every grid time.
    pub g_always: Option<f64>,
}

fn extracts(g: f64, lambda: f64, j_tau: f64) -> Result<bool> {
    let chain = pair_state(&CorrelationPair::isotropic(g)?);
    Ok(optimize_probes(&chain, lambda, j_tau)?.best_concurrence > EXTRACTION_THRESHOLD)
}

fn bisect(mut pred: impl FnMut(f64) -> Result<bool>) -> Result<Option<f64>> {
    let (mut lo, mut hi) = (-0.25, 0.0);
    if !pred(lo)? {
        return Ok(None);
    }
    if pred(hi)? {
        return Ok(Some(hi));
    }
    while hi - lo > THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// Bisects along `g_xx = g_zz = g ∈ [−¼, 0]` for the extraction thresholds.
/// Grid times must lie strictly inside `(0, π/2)`.
pub fn threshold_scan(lambda: f64, j_tau_grid: &[f64]) -> Result<Thresholds> {
    if j_tau_grid.is_empty() {
        return Err(Error::param("j_tau grid must be nonempty"));
    }
    if let Some(t) = j_tau_grid.iter().find(|&&t| !(t > 0.0 && t < FRAC_PI_2)) {
        return Err(Error::param(format!("threshold grid times must lie in (0, π/2), got {t}")));
    }
    if !lambda.is_finite() {
        return Err(Error::param(format!("lambda must be finite, got {lambda}")));
    }
    let outcomes = |g: f64| -> Result<Vec<bool>> {
        j_tau_grid.par_iter().map(|&t| extracts(g, lambda, t)).collect()
    };
    let g_boundary = bisect(|g| Ok(outcomes(g)?.into_iter().any(|b| b)))?;
    let g_always = bisect(|g| Ok(outcomes(g)?.into_iter().all(|b| b)))?;
    Ok(Thresholds { g_boundary, g_always })
}
