//! Collision Hamiltonians and the closed-form unitaries they generate.
//!
//! Four-body operators act on the register `(1, 2, L, R)`: chain spins 1
//! and 2 are qubits 0 and 1, probes L and R are qubits 2 and 3.
//! Evolution is `exp(-iHt)` throughout and `j_t` always means the
//! dimensionless product of coupling and time.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qcore::{
    self, hermitian_eig, kron, pauli_x, pauli_y, pauli_z, ComplexMatrix, HermitianEig, C64, I,
    ONE, ZERO,
};

/// Largest register (chain plus probes) the spin-star geometry accepts.
pub const MAX_STAR_QUBITS: usize = 12;

/// Which probe touches which chain spins during a collision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Probe L couples to spin 1, probe R to spin 2.
    PairLocal,
    /// Four-body generator exchanging the (1,2) pair with the (L,R) pair.
    GlobalSwap,
    /// Each probe couples uniformly to its own block of `spins_per_probe`
    /// spins of a chain of `chain_len`.
    SpinStar { chain_len: usize, spins_per_probe: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionConfig {
    /// Accumulated coupling area J·τ.
    pub j_tau: f64,
    /// XXZ anisotropy: 1 is Heisenberg, 0 is XY.
    pub lambda: f64,
    pub geometry: Geometry,
}

impl CollisionConfig {
    pub fn pair_local(lambda: f64, j_tau: f64) -> Self {
        CollisionConfig { j_tau, lambda, geometry: Geometry::PairLocal }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.j_tau.is_finite() {
            return Err(Error::param(format!("j_tau must be finite, got {}", self.j_tau)));
        }
        if !self.lambda.is_finite() {
            return Err(Error::param(format!("lambda must be finite, got {}", self.lambda)));
        }
        if let Geometry::SpinStar { chain_len, spins_per_probe } = self.geometry {
            validate_star(chain_len, spins_per_probe)?;
        }
        Ok(())
    }

    /// The collision unitary on the full register, with J = 1.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        match self.geometry {
            Geometry::PairLocal => {
                qcore::unitary_from_hamiltonian(&total_hamiltonian(self, 1.0)?, self.j_tau)
            }
            Geometry::GlobalSwap => Ok(global_partial_swap(self.j_tau)),
            Geometry::SpinStar { .. } => {
                qcore::unitary_from_hamiltonian(&spin_star_hamiltonian(self, 1.0)?, self.j_tau)
            }
        }
    }
}

fn validate_star(chain_len: usize, spins_per_probe: usize) -> Result<()> {
    if spins_per_probe == 0 {
        return Err(Error::param("spin star needs at least one spin per probe"));
    }
    if 2 * spins_per_probe > chain_len {
        return Err(Error::param(format!(
            "probe subsets overlap: 2N = {} exceeds chain length L = {chain_len}",
            2 * spins_per_probe
        )));
    }
    if chain_len + 2 > MAX_STAR_QUBITS {
        return Err(Error::param(format!(
            "register of {} qubits exceeds the limit of {MAX_STAR_QUBITS}",
            chain_len + 2
        )));
    }
    Ok(())
}

/// `J (σx⊗σx + σy⊗σy + λ σz⊗σz)` on two qubits.
pub fn xxz_hamiltonian(coupling: f64, lambda: f64) -> ComplexMatrix {
    let xx = kron(&pauli_x(), &pauli_x());
    let yy = kron(&pauli_y(), &pauli_y());
    let zz = kron(&pauli_z(), &pauli_z()).scale(C64::new(lambda, 0.0));
    (&(&xx + &yy) + &zz).scale(C64::new(coupling, 0.0))
}

/// Embeds a two-qubit operator on qubits `(a, b)` of an `n`-qubit register.
///
/// Qubit `a` takes the operator's first (most significant) factor.
pub fn embed_two_qubit(op: &ComplexMatrix, a: usize, b: usize, n: usize) -> ComplexMatrix {
    assert!(op.rows() == 4 && op.is_square(), "expected a 4x4 operator");
    assert!(a != b && a < n && b < n, "qubits must be distinct and in range");
    let dim = 1usize << n;
    let (ba, bb) = (n - 1 - a, n - 1 - b);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let local_col = (((col >> ba) & 1) << 1) | ((col >> bb) & 1);
        let rest = col & !(1 << ba) & !(1 << bb);
        for local_row in 0..4 {
            let z = op[(local_row, local_col)];
            if z == ZERO {
                continue;
            }
            let row = rest | ((local_row >> 1) << ba) | ((local_row & 1) << bb);
            out[(row, col)] = z;
        }
    }
    out
}

/// `H(λ)_{1L} + H(λ)_{2R}` on the register `(1, 2, L, R)`.
pub fn total_hamiltonian(cfg: &CollisionConfig, coupling: f64) -> Result<ComplexMatrix> {
    if cfg.geometry != Geometry::PairLocal {
        return Err(Error::param(format!(
            "total Hamiltonian needs the pair-local geometry, got {:?}",
            cfg.geometry
        )));
    }
    let h = xxz_hamiltonian(coupling, cfg.lambda);
    Ok(&embed_two_qubit(&h, 0, 2, 4) + &embed_two_qubit(&h, 1, 3, 4))
}

pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    )
}

/// `e^{iJt} (cos 2Jt · 1 − i sin 2Jt · SWAP)`.
pub fn partial_swap(j_t: f64) -> ComplexMatrix {
    let phase = C64::from_polar(1.0, j_t);
    let id = ComplexMatrix::identity(4).scale(C64::new((2.0 * j_t).cos(), 0.0));
    let sw = swap().scale(C64::new(0.0, -(2.0 * j_t).sin()));
    (&id + &sw).scale(phase)
}

/// `|00⟩⟨00| + i|01⟩⟨10| + i|10⟩⟨01| + |11⟩⟨11|`.
pub fn iswap() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 2)] = I;
    m[(2, 1)] = I;
    m[(3, 3)] = ONE;
    m
}

fn basis_index(label: &str) -> usize {
    usize::from_str_radix(label, 2).expect("binary basis label")
}

/// Four-body generator on `(1, 2, L, R)` written out term by term.
///
/// Four fixed configurations on the diagonal, four pair exchanges that a
/// pairwise XXZ coupling can produce, and two genuinely four-spin
/// exchanges, each with its Hermitian conjugate.
pub fn global_swap_generator() -> ComplexMatrix {
    const DIAGONAL: [&str; 4] = ["0000", "0101", "1010", "1111"];
    const PAIR_EXCHANGES: [(&str, &str); 4] =
        [("0001", "0100"), ("0010", "1000"), ("1011", "1110"), ("1101", "0111")];
    const FOUR_SPIN: [(&str, &str); 2] = [("0011", "1100"), ("1001", "0110")];

    let mut h = ComplexMatrix::zeros(16, 16);
    for label in DIAGONAL {
        let i = basis_index(label);
        h[(i, i)] = ONE;
    }
    for (ket, bra) in PAIR_EXCHANGES.iter().chain(FOUR_SPIN.iter()) {
        let (i, j) = (basis_index(ket), basis_index(bra));
        h[(i, j)] = ONE;
        h[(j, i)] = ONE;
    }
    h
}

/// `e^{iJt} (cos 2Jt · 1⊗1 − i sin 2Jt · SWAP_{1L} ⊗ SWAP_{2R})`.
pub fn global_partial_swap(j_t: f64) -> ComplexMatrix {
    let phase = C64::from_polar(1.0, j_t);
    let id = ComplexMatrix::identity(16).scale(C64::new((2.0 * j_t).cos(), 0.0));
    let sw = global_swap_generator().scale(C64::new(0.0, -(2.0 * j_t).sin()));
    (&id + &sw).scale(phase)
}

/// One XXZ bond `J (σxσx + σyσy + λ σzσz)` between two qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub coupling: f64,
    pub lambda: f64,
}

/// A sum of XXZ bonds on an `n`-qubit register.
///
/// Every bond conserves the number of excited qubits, so the Hamiltonian
/// is block diagonal in excitation-number sectors. Evolution and ground
/// states work sector by sector, which keeps 12-qubit registers cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinModel {
    n_qubits: usize,
    bonds: Vec<Bond>,
}

impl SpinModel {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > qcore::MAX_QUBITS {
            return Err(Error::param(format!("register size {n_qubits} out of range")));
        }
        Ok(SpinModel { n_qubits, bonds: Vec::new() })
    }

    pub fn add_bond(&mut self, a: usize, b: usize, coupling: f64, lambda: f64) -> Result<()> {
        if a == b || a >= self.n_qubits || b >= self.n_qubits {
            return Err(Error::InvalidQubitSubset { keep: vec![a, b], n_qubits: self.n_qubits });
        }
        self.bonds.push(Bond { a, b, coupling, lambda });
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    /// Diagonal energy and flip-flop amplitudes for basis state `x`.
    fn for_each_element<F: FnMut(usize, f64)>(&self, x: usize, mut f: F) {
        let mut diag = 0.0;
        for bond in &self.bonds {
            let (ma, mb) = (self.bit(bond.a), self.bit(bond.b));
            let same = ((x & ma) != 0) == ((x & mb) != 0);
            diag += bond.coupling * bond.lambda * if same { 1.0 } else { -1.0 };
            if !same && bond.coupling != 0.0 {
                f(x ^ ma ^ mb, 2.0 * bond.coupling);
            }
        }
        f(x, diag);
    }

    pub fn dense(&self) -> ComplexMatrix {
        let dim = self.dim();
        let mut h = ComplexMatrix::zeros(dim, dim);
        for x in 0..dim {
            self.for_each_element(x, |y, v| h[(y, x)] += C64::new(v, 0.0));
        }
        h
    }

    /// Basis indices with exactly `excitations` qubits in `|1⟩`, ascending.
    pub fn sector_basis(&self, excitations: usize) -> Vec<usize> {
        (0..self.dim()).filter(|x| x.count_ones() as usize == excitations).collect()
    }

    /// The Hamiltonian restricted to the span of `basis`, which must be a
    /// full excitation sector.
    pub fn sector_block(&self, basis: &[usize]) -> ComplexMatrix {
        let pos: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut h = ComplexMatrix::zeros(basis.len(), basis.len());
        for (col, &x) in basis.iter().enumerate() {
            self.for_each_element(x, |y, v| {
                let row = pos[&y];
                h[(row, col)] += C64::new(v, 0.0);
            });
        }
        h
    }

    /// Diagonalizes every sector that `psi` has weight in, for repeated evolution.
    pub fn propagator(&self, psi: &[C64]) -> Result<SectorPropagator> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.len() });
        }
        let mut sectors = Vec::new();
        for k in 0..=self.n_qubits {
            let basis = self.sector_basis(k);
            let amps: Vec<C64> = basis.iter().map(|&x| psi[x]).collect();
            if amps.iter().all(|z| *z == ZERO) {
                continue;
            }
            let eig = hermitian_eig(&self.sector_block(&basis))?;
            // coefficients of psi in the eigenbasis
            let coeffs = (0..eig.dim())
                .map(|j| (0..eig.dim()).map(|r| eig.vectors[(r, j)].conj() * amps[r]).sum())
                .collect();
            sectors.push(Sector { basis, eig, coeffs });
        }
        Ok(SectorPropagator { dim: self.dim(), sectors })
    }

    /// `exp(-iHt) |psi⟩`.
    pub fn evolve(&self, psi: &[C64], t: f64) -> Result<Vec<C64>> {
        Ok(self.propagator(psi)?.evolve(t))
    }
}

#[derive(Debug, Clone)]
struct Sector {
    basis: Vec<usize>,
    eig: HermitianEig,
    coeffs: Vec<C64>,
}

/// A fixed initial state expanded in the eigenbasis of each occupied sector.
#[derive(Debug, Clone)]
pub struct SectorPropagator {
    dim: usize,
    sectors: Vec<Sector>,
}

impl SectorPropagator {
    pub fn evolve(&self, t: f64) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for s in &self.sectors {
            let phased: Vec<C64> = s
                .coeffs
                .iter()
                .zip(&s.eig.values)
                .map(|(c, &e)| c * C64::from_polar(1.0, -e * t))
                .collect();
            for (r, &x) in s.basis.iter().enumerate() {
                out[x] = (0..phased.len()).map(|j| s.eig.vectors[(r, j)] * phased[j]).sum();
            }
        }
        out
    }
}

/// Chain of `chain_len` spins followed by probes L and R; probe L couples
/// to spins `0..N`, probe R to spins `N..2N`.
pub fn spin_star_model(
    chain_len: usize,
    spins_per_probe: usize,
    coupling: f64,
    lambda: f64,
) -> Result<SpinModel> {
    validate_star(chain_len, spins_per_probe)?;
    let mut model = SpinModel::new(chain_len + 2)?;
    let (probe_l, probe_r) = (chain_len, chain_len + 1);
    for s in 0..spins_per_probe {
        model.add_bond(s, probe_l, coupling, lambda)?;
        model.add_bond(spins_per_probe + s, probe_r, coupling, lambda)?;
    }
    Ok(model)
}

/// Dense spin-star Hamiltonian on `chain_len + 2` qubits.
pub fn spin_star_hamiltonian(cfg: &CollisionConfig, coupling: f64) -> Result<ComplexMatrix> {
    match cfg.geometry {
        Geometry::SpinStar { chain_len, spins_per_probe } => {
            Ok(spin_star_model(chain_len, spins_per_probe, coupling, cfg.lambda)?.dense())
        }
        other => Err(Error::param(format!("spin-star Hamiltonian needs SpinStar geometry, got {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::unitary_from_hamiltonian;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn sorted_eigs(m: &ComplexMatrix) -> Vec<f64> {
        hermitian_eig(m).unwrap().values
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    /// Permutation oracle: SWAP_{1L} ⊗ SWAP_{2R} maps |abcd⟩ to |cdab⟩.
    fn swap_pairs_oracle() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(16, 16);
        for x in 0..16usize {
            let (a, b, c, d) = ((x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1);
            let y = (c << 3) | (d << 2) | (a << 1) | b;
            m[(y, x)] = ONE;
        }
        m
    }

    fn bell(sign: f64) -> Vec<C64> {
        let h = FRAC_1_SQRT_2;
        vec![ZERO, C64::new(h, 0.0), C64::new(sign * h, 0.0), ZERO]
    }

    #[test]
    fn xxz_spectra() {
        assert_close(&sorted_eigs(&xxz_hamiltonian(1.0, 1.0)), &[1.0, 1.0, 1.0, -3.0], 1e-13);
        assert_close(&sorted_eigs(&xxz_hamiltonian(1.0, 0.0)), &[2.0, 0.0, 0.0, -2.0], 1e-13);
        assert_eq!(xxz_hamiltonian(0.0, 0.7).max_abs(), 0.0);
    }

    #[test]
    fn spin_model_matches_pauli_construction() {
        let mut model = SpinModel::new(4).unwrap();
        model.add_bond(0, 2, 0.8, 0.3).unwrap();
        model.add_bond(1, 3, 0.8, 0.3).unwrap();
        let cfg = CollisionConfig::pair_local(0.3, 0.0);
        assert!(model.dense().max_abs_diff(&total_hamiltonian(&cfg, 0.8).unwrap()) < 1e-15);
    }

    #[test]
    fn total_hamiltonian_rejects_other_geometries() {
        let cfg = CollisionConfig { j_tau: 0.1, lambda: 1.0, geometry: Geometry::GlobalSwap };
        assert!(total_hamiltonian(&cfg, 1.0).is_err());
        let zero = total_hamiltonian(&CollisionConfig::pair_local(0.4, 0.1), 0.0).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn bell_product_is_eigenstate_only_for_xy() {
        // |ψ⁻⟩_{12} ⊗ |ψ⁺⟩_{LR} on the (1,2,L,R) register
        let state = qcore::kron_vec(&bell(-1.0), &bell(1.0));
        let residual = |lambda: f64| {
            let h = total_hamiltonian(&CollisionConfig::pair_local(lambda, 0.0), 1.0).unwrap();
            let hv = h.apply(&state);
            let e: C64 = state.iter().zip(&hv).map(|(a, b)| a.conj() * b).sum();
            hv.iter().zip(&state).map(|(x, s)| (x - e * s).norm()).fold(0.0, f64::max)
        };
        assert!(residual(0.0) < 1e-14);
        assert!(residual(1.0) > 0.1);
    }

    #[test]
    fn partial_swap_special_points() {
        assert!(partial_swap(0.0).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let full = swap().scale(C64::from_polar(1.0, -FRAC_PI_4));
        assert!(partial_swap(FRAC_PI_4).max_abs_diff(&full) < 1e-15);
    }

    #[test]
    fn partial_swap_is_heisenberg_evolution() {
        let h = xxz_hamiltonian(1.0, 1.0);
        for jt in [0.1, 0.25, 0.3, 0.7, FRAC_PI_4] {
            let u = unitary_from_hamiltonian(&h, jt).unwrap();
            assert!(partial_swap(jt).max_abs_diff(&u) < 1e-12, "j_t = {jt}");
        }
    }

    #[test]
    fn iswap_action() {
        let u = iswap();
        assert_eq!(u.apply(&[ZERO, ONE, ZERO, ZERO]), vec![ZERO, ZERO, I, ZERO]);
        assert_eq!(u.apply(&[ONE, ZERO, ZERO, ZERO]), vec![ONE, ZERO, ZERO, ZERO]);
        let sq = &u * &u;
        assert!((&sq * &sq).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        // two iSWAPs flip the sign of the exchanged amplitudes: ψ⁺ → -ψ⁺ and
        // the single-excitation block becomes -1
        assert_eq!(sq.apply(&bell(1.0)), bell(1.0).iter().map(|z| -z).collect::<Vec<_>>());
    }

    #[test]
    fn global_generator_is_pairwise_swap_permutation() {
        let g = global_swap_generator();
        assert_eq!(g, swap_pairs_oracle());
        for r in 0..16 {
            let row_ones = (0..16).filter(|&c| g[(r, c)] == ONE).count();
            let col_ones = (0..16).filter(|&c| g[(c, r)] == ONE).count();
            assert_eq!((row_ones, col_ones), (1, 1));
        }
        assert_eq!(&g * &g, ComplexMatrix::identity(16));
        // equals SWAP_{1L} ⊗ SWAP_{2R} built by embedding
        let via_embed = &embed_two_qubit(&swap(), 0, 2, 4) * &embed_two_qubit(&swap(), 1, 3, 4);
        assert_eq!(g, via_embed);
    }

    #[test]
    fn global_partial_swap_closed_form_matches_generator_exponential() {
        let s = global_swap_generator();
        let gen = &s.scale(C64::new(2.0, 0.0)) - &ComplexMatrix::identity(16);
        for jt in [0.0, 0.13, 0.2, 0.5, FRAC_PI_4, 1.1] {
            let u = unitary_from_hamiltonian(&gen, jt).unwrap();
            assert!(global_partial_swap(jt).max_abs_diff(&u) < 1e-12);
        }
        let full = s.scale(C64::from_polar(1.0, -FRAC_PI_4));
        assert!(global_partial_swap(FRAC_PI_4).max_abs_diff(&full) < 1e-15);
        assert!(global_partial_swap(0.0).max_abs_diff(&ComplexMatrix::identity(16)) < 1e-15);
    }

    #[test]
    fn global_swap_differs_from_pair_local_heisenberg() {
        for jt in [0.2, 0.5] {
            let local = CollisionConfig::pair_local(1.0, jt).unwrap_unitary();
            let global = global_partial_swap(jt);
            assert!(local.max_abs_diff(&global) > 1e-3);
            // the pair-local evolution is the product of two partial swaps
            let product = &embed_two_qubit(&partial_swap(jt), 0, 2, 4)
                * &embed_two_qubit(&partial_swap(jt), 1, 3, 4);
            assert!(local.max_abs_diff(&product) < 1e-12);
        }
    }

    #[test]
    fn xy_evolution_fixes_bell_product() {
        let state = qcore::kron_vec(&bell(-1.0), &bell(1.0));
        for jt in [0.1, 0.2, 0.9] {
            let out = CollisionConfig::pair_local(0.0, jt).unwrap_unitary().apply(&state);
            let overlap: C64 = state.iter().zip(&out).map(|(a, b)| a.conj() * b).sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn spin_star_degenerate_geometry_is_pair_local() {
        let star = CollisionConfig {
            j_tau: 0.0,
            lambda: 0.6,
            geometry: Geometry::SpinStar { chain_len: 2, spins_per_probe: 1 },
        };
        let h = spin_star_hamiltonian(&star, 1.0).unwrap();
        let local = total_hamiltonian(&CollisionConfig::pair_local(0.6, 0.0), 1.0).unwrap();
        assert!(h.max_abs_diff(&local) < 1e-15);
        assert_eq!(spin_star_hamiltonian(&star, 0.0).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn spin_star_rejects_bad_sizes() {
        assert!(spin_star_model(4, 3, 1.0, 0.0).is_err());
        assert!(spin_star_model(12, 1, 1.0, 0.0).is_err());
        assert!(spin_star_model(4, 0, 1.0, 0.0).is_err());
        let cfg = CollisionConfig::pair_local(0.0, 0.1);
        assert!(spin_star_hamiltonian(&cfg, 1.0).is_err());
    }

    #[test]
    fn sector_evolution_matches_dense_evolution() {
        let model = spin_star_model(4, 2, 1.0, 0.7).unwrap();
        let dim = model.dim();
        let psi: Vec<C64> = (0..dim)
            .map(|x| C64::new(((x * 7) % 5) as f64 - 2.0, ((x * 3) % 4) as f64 * 0.5))
            .collect();
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = psi.into_iter().map(|z| z / norm).collect();
        let dense = unitary_from_hamiltonian(&model.dense(), 0.43).unwrap().apply(&psi);
        let sector = model.evolve(&psi, 0.43).unwrap();
        let err = dense.iter().zip(&sector).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn config_validation() {
        let bad = CollisionConfig::pair_local(1.0, f64::NAN);
        assert!(bad.validate().is_err());
        let overlap = CollisionConfig {
            j_tau: 0.1,
            lambda: 0.0,
            geometry: Geometry::SpinStar { chain_len: 3, spins_per_probe: 2 },
        };
        assert!(overlap.validate().is_err());
    }

    trait UnwrapUnitary {
        fn unwrap_unitary(&self) -> ComplexMatrix;
    }

    impl UnwrapUnitary for CollisionConfig {
        fn unwrap_unitary(&self) -> ComplexMatrix {
            let u = self.unitary().unwrap();
            assert!(u.unitarity_deviation() < 1e-10);
            u
        }
    }
}
