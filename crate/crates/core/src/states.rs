//! States used by the extraction protocols and the exact-diagonalization
//! source of chain correlations.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gates::SpinModel;
use crate::qcore::{
    self, clamp_psd_spectrum, hermitian_eig, kron, kron_vec, ComplexMatrix, QubitRegister, C64,
    HERMITIAN_TOL, ONE, ZERO,
};

/// Hermitian, unit-trace, positive semidefinite operator on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: QubitRegister,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace at 1e-12 and eigenvalues ≥ -1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::new_unchecked(matrix)?;
        rho.check_invariants()?;
        Ok(rho)
    }

    /// Only checks the shape. Callers promise the physical invariants.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let register = QubitRegister::from_dim(matrix.rows())?;
        Ok(DensityMatrix { register, matrix })
    }

    pub fn check_invariants(&self) -> Result<()> {
        let deviation = self.matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = self.matrix.trace();
        if (trace - ONE).norm() > HERMITIAN_TOL {
            return Err(Error::NotNormalized { trace: trace.re });
        }
        let mut values = hermitian_eig(&self.matrix)?.values;
        clamp_psd_spectrum(&mut values)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        DensityMatrix {
            register: psi.register,
            matrix: ComplexMatrix::outer(&psi.amplitudes, &psi.amplitudes),
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let register = QubitRegister::new(n_qubits)?;
        let dim = register.dim();
        let matrix = ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0));
        Ok(DensityMatrix { register, matrix })
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn n_qubits(&self) -> usize {
        self.register.n_qubits()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        Self::new_unchecked(kron(&self.matrix, &other.matrix))
    }

    /// `U ρ U†` for a unitary `u`.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.rows() != self.register.dim() || !u.is_square() {
            return Err(Error::DimensionMismatch { expected: self.register.dim(), found: u.rows() });
        }
        let mut m = self.matrix.conjugate_by(u);
        hermitize(&mut m);
        Self::new_unchecked(m)
    }

    /// Reduced state on `keep`, in that order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        Self::new_unchecked(qcore::partial_trace(&self.matrix, self.n_qubits(), keep)?)
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_in(&self, psi: &PureState) -> Result<f64> {
        if psi.register != self.register {
            return Err(Error::DimensionMismatch {
                expected: self.register.dim(),
                found: psi.register.dim(),
            });
        }
        let m_psi = self.matrix.apply(&psi.amplitudes);
        Ok(psi.amplitudes.iter().zip(&m_psi).map(|(a, b)| (a.conj() * b).re).sum())
    }
}

/// Replaces `m` by `(m + m†)/2`, removing rounding asymmetry.
pub(crate) fn hermitize(m: &mut ComplexMatrix) {
    let n = m.rows();
    for r in 0..n {
        m[(r, r)] = C64::new(m[(r, r)].re, 0.0);
        for c in (r + 1)..n {
            let z = 0.5 * (m[(r, c)] + m[(c, r)].conj());
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
        }
    }
}

/// Normalized amplitude vector on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    register: QubitRegister,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Requires unit norm within 1e-12.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let register = QubitRegister::from_dim(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > HERMITIAN_TOL {
            return Err(Error::NotNormalized { trace: norm * norm });
        }
        Ok(PureState { register, amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::param("cannot normalize a zero vector"));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|index⟩` on `n_qubits`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let register = QubitRegister::new(n_qubits)?;
        if index >= register.dim() {
            return Err(Error::param(format!("basis index {index} out of range")));
        }
        let mut amplitudes = vec![ZERO; register.dim()];
        amplitudes[index] = ONE;
        Ok(PureState { register, amplitudes })
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let amplitudes = kron_vec(&self.amplitudes, &other.amplitudes);
        Ok(PureState { register: QubitRegister::from_dim(amplitudes.len())?, amplitudes })
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sqr(&self, other: &PureState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm_sqr()
    }
}

/// Bloch angles of a single-qubit pure state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeAngles {
    theta: f64,
    phi: f64,
}

impl ProbeAngles {
    /// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::param(format!(
                "probe angles (θ={theta}, φ={phi}) outside [0,π]×[0,2π)"
            )));
        }
        Ok(ProbeAngles { theta, phi })
    }

    /// Maps arbitrary real angles onto the canonical ranges without
    /// changing the state they describe (up to a global phase).
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        ProbeAngles { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [C64::new(c, 0.0), C64::from_polar(s, self.phi)]
    }
}

/// Tensor product of single-qubit probe states, in list order.
pub fn probe_product_state(angles: &[ProbeAngles]) -> Result<PureState> {
    if angles.is_empty() {
        return Err(Error::param("at least one probe is required"));
    }
    let mut amplitudes = vec![ONE];
    for a in angles {
        amplitudes = kron_vec(&amplitudes, &a.amplitudes());
    }
    PureState::new(amplitudes)
}

/// Nearest-neighbour correlations `g_xx = ⟨σx σx⟩/4`, `g_zz = ⟨σz σz⟩/4`
/// that parametrize the two-spin chain state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPair {
    g_xx: f64,
    g_zz: f64,
}

impl CorrelationPair {
    /// Rejects pairs outside `[-1/4, 1/4]²` or whose two-spin matrix has a
    /// negative eigenvalue.
    pub fn new(g_xx: f64, g_zz: f64) -> Result<Self> {
        if !(g_xx.is_finite() && g_zz.is_finite()) || g_xx.abs() > 0.25 || g_zz.abs() > 0.25 {
            return Err(Error::param(format!(
                "correlations (g_xx={g_xx}, g_zz={g_zz}) outside [-1/4, 1/4]"
            )));
        }
        let pair = CorrelationPair { g_xx, g_zz };
        let min = pair.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -HERMITIAN_TOL {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(pair)
    }

    /// Equal correlations `g_xx = g_zz = g`.
    pub fn isotropic(g: f64) -> Result<Self> {
        Self::new(g, g)
    }

    /// `g_xx = g_zz = -1/4`: the singlet.
    pub fn singlet() -> Self {
        CorrelationPair { g_xx: -0.25, g_zz: -0.25 }
    }

    pub fn g_xx(&self) -> f64 {
        self.g_xx
    }

    pub fn g_zz(&self) -> f64 {
        self.g_zz
    }

    /// Spectrum of the two-spin matrix: the `|00⟩`, `|11⟩` diagonal and the
    /// two eigenvalues of the central block.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let d = 0.25 + self.g_zz;
        let c = 0.25 - self.g_zz;
        [d, d, c + 2.0 * self.g_xx, c - 2.0 * self.g_xx]
    }
}

/// Two-spin chain state built from nearest-neighbour correlations.
pub fn pair_state(c: &CorrelationPair) -> DensityMatrix {
    let (d, m, o) = (0.25 + c.g_zz, 0.25 - c.g_zz, 2.0 * c.g_xx);
    #[rustfmt::skip]
    let entries = [
        d,   0.0, 0.0, 0.0,
        0.0, m,   o,   0.0,
        0.0, o,   m,   0.0,
        0.0, 0.0, 0.0, d,
    ];
    DensityMatrix::new_unchecked(ComplexMatrix::from_real(4, &entries))
        .expect("4x4 is a two-qubit register")
}

/// `(|10…0⟩ + |01…0⟩ + … + |0…01⟩)/√n`.
pub fn w_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::param(format!("W state needs n ≥ 2, got {n}")));
    }
    let register = QubitRegister::new(n)?;
    let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amplitudes = vec![ZERO; register.dim()];
    for q in 0..n {
        amplitudes[1 << (n - 1 - q)] = amp;
    }
    Ok(PureState { register, amplitudes })
}

/// `(|01⟩ + sign·|10⟩)/√2`: `sign = 1` gives ψ⁺, `-1` gives ψ⁻.
pub fn bell_state(sign: f64) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    PureState {
        register: QubitRegister::new(2).unwrap(),
        amplitudes: vec![ZERO, C64::new(h, 0.0), C64::new(sign * h, 0.0), ZERO],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

impl FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::param(format!("unknown boundary '{other}' (open|periodic)"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

pub const MAX_CHAIN_LEN: usize = 12;
const DEGENERACY_GAP: f64 = 1e-10;

/// Ground state of an XXZ chain and its bond-averaged correlators.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub gap: f64,
    pub correlations: CorrelationPair,
}

/// Bonds of a chain of `len` sites. Periodic chains of length 2 have one bond.
pub fn chain_bonds(len: usize, boundary: Boundary) -> Vec<(usize, usize)> {
    let mut bonds: Vec<(usize, usize)> = (0..len - 1).map(|i| (i, i + 1)).collect();
    if boundary == Boundary::Periodic && len > 2 {
        bonds.push((len - 1, 0));
    }
    bonds
}

/// Exact diagonalization of `H = Σ_⟨ij⟩ (σxσx + σyσy + λ σzσz)` (J = 1).
///
/// The chain must have even length in `2..=12`. A ground space with gap
/// below 1e-10 is reported as [`Error::DegenerateGroundState`].
pub fn ground_state(lambda: f64, len: usize, boundary: Boundary) -> Result<GroundState> {
    if !lambda.is_finite() {
        return Err(Error::param("lambda must be finite"));
    }
    if !(2..=MAX_CHAIN_LEN).contains(&len) {
        return Err(Error::param(format!("chain length L = {len} outside 2..={MAX_CHAIN_LEN}")));
    }
    if !len.is_multiple_of(2) {
        return Err(Error::param(format!(
            "chain length L = {len} is odd; L must be even so the ground state is unique"
        )));
    }
    let bonds = chain_bonds(len, boundary);
    let mut model = SpinModel::new(len)?;
    for &(a, b) in &bonds {
        model.add_bond(a, b, 1.0, lambda)?;
    }

    // Lowest state of every excitation sector; keep the full spectrum to
    // count degeneracies across sectors.
    let mut spectrum: Vec<f64> = Vec::new();
    let mut best: Option<(f64, Vec<usize>, Vec<C64>)> = None;
    for k in 0..=len {
        let basis = model.sector_basis(k);
        let eig = hermitian_eig(&model.sector_block(&basis))?;
        let lowest = eig.dim() - 1;
        let e0 = eig.values[lowest];
        if best.as_ref().is_none_or(|(e, _, _)| e0 < *e) {
            best = Some((e0, basis, eig.vector(lowest)));
        }
        spectrum.extend_from_slice(&eig.values);
    }
    spectrum.sort_by(f64::total_cmp);
    let (energy, basis, vector) = best.expect("at least one sector");
    let gap = spectrum[1] - spectrum[0];
    if gap < DEGENERACY_GAP {
        let count = spectrum.iter().take_while(|&&e| e - spectrum[0] < DEGENERACY_GAP).count();
        return Err(Error::DegenerateGroundState { count, gap });
    }

    let mut psi = vec![ZERO; model.dim()];
    for (&x, &a) in basis.iter().zip(&vector) {
        psi[x] = a;
    }
    let bit = |q: usize| 1usize << (len - 1 - q);
    let (mut xx, mut zz) = (0.0, 0.0);
    for &(a, b) in &bonds {
        let flip = bit(a) | bit(b);
        for (x, amp) in psi.iter().enumerate() {
            if *amp == ZERO {
                continue;
            }
            xx += (psi[x ^ flip].conj() * amp).re;
            let same = ((x & bit(a)) != 0) == ((x & bit(b)) != 0);
            zz += amp.norm_sqr() * if same { 1.0 } else { -1.0 };
        }
    }
    let nb = bonds.len() as f64;
    let (g_xx, g_zz) = (xx / nb / 4.0, zz / nb / 4.0);
    // Rounding can push |g| a hair past 1/4 for the exact dimer.
    let clip = |g: f64| g.clamp(-0.25, 0.25);
    let correlations = CorrelationPair::new(clip(g_xx), clip(g_zz))?;
    Ok(GroundState { energy, gap, correlations })
}

pub fn ground_state_correlations(
    lambda: f64,
    len: usize,
    boundary: Boundary,
) -> Result<CorrelationPair> {
    Ok(ground_state(lambda, len, boundary)?.correlations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{pauli_x, pauli_z};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn pair_state_special_cases() {
        let singlet = pair_state(&CorrelationPair::singlet());
        assert!(singlet.matrix().max_abs_diff(bell_state(-1.0).density().matrix()) < 1e-15);
        let mixed = pair_state(&CorrelationPair::new(0.0, 0.0).unwrap());
        assert!(mixed.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).unwrap().matrix()) < 1e-15);
        let p = pair_state(&CorrelationPair::isotropic(-0.2).unwrap());
        let want = [0.05, 0.45, 0.45, 0.05];
        for (i, w) in want.iter().enumerate() {
            assert!((p.matrix()[(i, i)].re - w).abs() < 1e-15);
        }
        assert!((p.matrix()[(1, 2)].re + 0.4).abs() < 1e-15);
        assert!((p.matrix()[(2, 1)].re + 0.4).abs() < 1e-15);
    }

    #[test]
    fn correlation_pair_rejects_non_psd() {
        assert!(matches!(CorrelationPair::new(0.25, 0.25), Err(Error::NotPositive { .. })));
        assert!(CorrelationPair::new(0.3, 0.0).is_err());
        assert!(CorrelationPair::isotropic(0.1).is_err());
        assert!(CorrelationPair::isotropic(1.0 / 12.0).is_ok());
    }

    #[test]
    fn pair_state_grid_satisfies_density_invariants() {
        let zz = kron(&pauli_z(), &pauli_z());
        for i in 0..21 {
            for j in 0..21 {
                let gx = -0.25 + 0.025 * i as f64;
                let gz = -0.25 + 0.025 * j as f64;
                let Ok(c) = CorrelationPair::new(gx, gz) else { continue };
                let rho = pair_state(&c);
                rho.check_invariants().unwrap();
                // structure commutes with σz⊗σz conjugation
                assert_eq!(&(&zz * rho.matrix()) * &zz, *rho.matrix());
            }
        }
    }

    #[test]
    fn w_states() {
        let w2 = w_state(2).unwrap();
        assert!(w2.overlap_sqr(&bell_state(1.0)) > 1.0 - 1e-15);
        let w3 = w_state(3).unwrap();
        let a = 1.0 / 3f64.sqrt();
        for (i, z) in w3.amplitudes().iter().enumerate() {
            let want = if [4, 2, 1].contains(&i) { a } else { 0.0 };
            assert!((z.re - want).abs() < 1e-15 && z.im == 0.0);
        }
        let norm: f64 = w_state(7).unwrap().amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        assert!(w_state(1).is_err());
    }

    #[test]
    fn probe_products() {
        let z = ProbeAngles::new(0.0, 0.0).unwrap();
        assert_eq!(probe_product_state(&[z, z]).unwrap(), PureState::basis(2, 0).unwrap());
        let one = probe_product_state(&[ProbeAngles::new(PI, 0.0).unwrap()]).unwrap();
        assert!(one.overlap_sqr(&PureState::basis(1, 1).unwrap()) > 1.0 - 1e-15);
        let plus = ProbeAngles::new(PI / 2.0, 0.0).unwrap();
        let minus = ProbeAngles::new(PI / 2.0, PI).unwrap();
        let got = probe_product_state(&[plus, minus]).unwrap();
        let h = FRAC_1_SQRT_2;
        let p = [C64::new(h, 0.0), C64::new(h, 0.0)];
        let m = [C64::new(h, 0.0), C64::new(-h, 0.0)];
        let want = kron_vec(&p, &m);
        for (a, b) in got.amplitudes().iter().zip(&want) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(probe_product_state(&[]).is_err());
        assert!(ProbeAngles::new(4.0, 0.0).is_err());
    }

    #[test]
    fn wrapped_angles_describe_the_same_state() {
        for (t, p) in [(-0.4, 1.0), (4.0, -2.0), (7.0, 13.0), (PI, TAU)] {
            let w = ProbeAngles::wrapped(t, p);
            assert!((0.0..=PI).contains(&w.theta()) && (0.0..TAU).contains(&w.phi()));
            let raw = [
                C64::new((t / 2.0).cos(), 0.0),
                C64::from_polar((t / 2.0).sin(), p),
            ];
            let a = w.amplitudes();
            let overlap = (raw[0].conj() * a[0] + raw[1].conj() * a[1]).norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dimer_ground_state_is_singlet() {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let c = ground_state_correlations(1.0, 2, boundary).unwrap();
            assert!((c.g_xx() + 0.25).abs() < 1e-12 && (c.g_zz() + 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn ground_state_rejects_odd_and_oversized_chains() {
        let err = ground_state(1.0, 3, Boundary::Open).unwrap_err();
        assert!(err.to_string().contains("odd"));
        assert!(ground_state(1.0, 14, Boundary::Open).is_err());
    }

    #[test]
    fn ferromagnetic_ising_limit_is_degenerate() {
        // λ → -∞ favours the two fully polarized states equally
        let err = ground_state(-50.0, 4, Boundary::Periodic).unwrap_err();
        assert!(matches!(err, Error::DegenerateGroundState { count: 2, .. }), "{err}");
    }

    /// Brute-force oracle: dense Hamiltonian from Pauli krons, full eig, and
    /// correlators from explicit operator matrices.
    fn dense_oracle(lambda: f64, len: usize, boundary: Boundary) -> (f64, f64) {
        let dim = 1 << len;
        let id2 = ComplexMatrix::identity(2);
        let site_op = |op: &ComplexMatrix, q: usize| {
            let mut m = ComplexMatrix::identity(1);
            for s in 0..len {
                m = kron(&m, if s == q { op } else { &id2 });
            }
            m
        };
        let (x, y, z) = (pauli_x(), crate::qcore::pauli_y(), pauli_z());
        let bonds = chain_bonds(len, boundary);
        let mut h = ComplexMatrix::zeros(dim, dim);
        for &(a, b) in &bonds {
            let xx = &site_op(&x, a) * &site_op(&x, b);
            let yy = &site_op(&y, a) * &site_op(&y, b);
            let zz = (&site_op(&z, a) * &site_op(&z, b)).scale(C64::new(lambda, 0.0));
            h = &h + &(&(&xx + &yy) + &zz);
        }
        let eig = hermitian_eig(&h).unwrap();
        let gs = eig.vector(dim - 1);
        let expect = |m: &ComplexMatrix| -> f64 {
            gs.iter().zip(m.apply(&gs)).map(|(a, b)| (a.conj() * b).re).sum()
        };
        let nb = bonds.len() as f64;
        let gxx: f64 = bonds.iter().map(|&(a, b)| expect(&(&site_op(&x, a) * &site_op(&x, b)))).sum();
        let gzz: f64 = bonds.iter().map(|&(a, b)| expect(&(&site_op(&z, a) * &site_op(&z, b)))).sum();
        (gxx / nb / 4.0, gzz / nb / 4.0)
    }

    #[test]
    fn four_site_rings_match_dense_oracle() {
        for lambda in [1.0, 0.0] {
            let (gx, gz) = dense_oracle(lambda, 4, Boundary::Periodic);
            let c = ground_state_correlations(lambda, 4, Boundary::Periodic).unwrap();
            assert!((c.g_xx() - gx).abs() < 1e-10, "λ={lambda}: {} vs {gx}", c.g_xx());
            assert!((c.g_zz() - gz).abs() < 1e-10, "λ={lambda}: {} vs {gz}", c.g_zz());
        }
    }

    #[test]
    fn four_site_ring_frozen_values() {
        // Heisenberg ring: E0 = -8, so ⟨σ·σ⟩ = -2 per bond and g = -1/6.
        let heis = ground_state_correlations(1.0, 4, Boundary::Periodic).unwrap();
        assert!((heis.g_xx() + 1.0 / 6.0).abs() < 1e-12);
        assert!((heis.g_zz() + 1.0 / 6.0).abs() < 1e-12);
        let (gx, gz) = dense_oracle(0.0, 4, Boundary::Periodic);
        let xy = ground_state_correlations(0.0, 4, Boundary::Periodic).unwrap();
        assert!((xy.g_xx() - gx).abs() < 1e-12 && (xy.g_zz() - gz).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_chains_are_isotropic_and_entangled() {
        for len in [4, 6, 8, 10] {
            for boundary in [Boundary::Open, Boundary::Periodic] {
                let c = ground_state_correlations(1.0, len, boundary).unwrap();
                assert!((c.g_xx() - c.g_zz()).abs() < 1e-10, "L={len} {boundary}");
                assert!(c.g_zz() < -1.0 / 12.0, "L={len} {boundary}: {}", c.g_zz());
            }
        }
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::identity(2);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::NotNormalized { .. })));
        let not_psd = ComplexMatrix::from_real(2, &[1.5, 0.0, 0.0, -0.5]);
        assert!(matches!(DensityMatrix::new(not_psd), Err(Error::NotPositive { .. })));
        let not_herm = ComplexMatrix::from_real(2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(matches!(DensityMatrix::new(not_herm), Err(Error::NotHermitian { .. })));
        assert!(DensityMatrix::new(ComplexMatrix::identity(3)).is_err());
    }
}
