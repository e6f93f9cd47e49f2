//! Dense complex linear algebra for small qubit registers.
//!
//! Everything here works on [`ComplexMatrix`], a row-major dense matrix of
//! `Complex64`. Qubit registers are big-endian: qubit 0 is the most
//! significant bit of a computational-basis index, so `|b0 b1 … b(n-1)⟩`
//! lives at index `Σ b_i 2^(n-1-i)`.
//!
//! Spectral work goes through a cyclic Jacobi eigensolver for Hermitian
//! matrices and a one-sided Jacobi SVD. Matrix functions (exponentials,
//! square roots) are always evaluated through the eigendecomposition.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Entrywise tolerance for Hermiticity and other construction checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance for reconstruction and unitarity checks.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are rounding noise and get clamped to zero.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below this are treated as zero when taking PSD square roots.
///
/// Square roots amplify rounding noise: an eigenvalue of 1e-17 becomes a
/// 3e-9 amplitude. Flooring keeps downstream quantities (concurrence,
/// fidelity) at ~1e-15 accuracy for rank-deficient states.
pub const SPECTRAL_FLOOR: f64 = 1e-13;

/// Largest register the dense routines accept.
pub const MAX_QUBITS: usize = 14;

const MAX_SWEEPS: usize = 100;

/// Number of qubits in an ordered register. Dimension is `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitRegister(usize);

impl QubitRegister {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::param(format!(
                "register size {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        Ok(QubitRegister(n_qubits))
    }

    /// Register whose dimension is `dim`, which must be a power of two.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::param(format!("dimension {dim} is not 2^n with n ≥ 1")));
        }
        Self::new(dim.trailing_zeros() as usize)
    }

    pub fn n_qubits(self) -> usize {
        self.0
    }

    pub fn dim(self) -> usize {
        1 << self.0
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::param("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Square matrix from real row-major entries. Panics on a non-square length.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        ComplexMatrix {
            rows: dim,
            cols: dim,
            data: entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m.data[i * w.len() + j] = vi * wj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M_ij - conj(M_ji)|`, or infinity for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max |U U† - I|` entrywise.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

/// Kronecker product of state vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, -ONE]).unwrap()
}

/// Eigendecomposition `M = V diag(values) V†` with values in descending order.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the same order as `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.dim()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// `V diag(f(λ)) V†`.
    pub fn map<F: Fn(f64) -> C64>(&self, f: F) -> ComplexMatrix {
        let n = self.dim();
        let weights: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, w) in weights.iter().enumerate() {
            if *w == ZERO {
                continue;
            }
            for r in 0..n {
                let vr = self.vectors[(r, k)] * w;
                if vr == ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += vr * self.vectors[(c, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| C64::new(l, 0.0))
    }
}

/// Jacobi rotation zeroing the `(p,q)` entry of the Hermitian 2×2 block
/// `[[app, apq], [conj(apq), aqq]]`.
///
/// Returns `(c, s, phase, t)` with `phase = apq/|apq|` and `t = tan θ`; the
/// rotation acting on columns is `[[c, s], [-s·conj(phase), c·conj(phase)]]`.
#[inline]
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (f64, f64, C64, f64) {
    let r = apq.norm();
    // from_polar keeps |phase| = 1 even when apq is subnormal
    let phase = C64::from_polar(1.0, apq.arg());
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c, phase, t)
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Rejects inputs whose Hermitian deviation exceeds [`HERMITIAN_TOL`]; the
/// input is symmetrized before iterating so the result is exactly Hermitian.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows;
    let mut a = m.data.clone();
    for r in 0..n {
        a[r * n + r] = C64::new(a[r * n + r].re, 0.0);
        for c in (r + 1)..n {
            let z = 0.5 * (a[r * n + c] + a[c * n + r].conj());
            a[r * n + c] = z;
            a[c * n + r] = z.conj();
        }
    }
    // Rows of `vt` are the eigenvectors (columns of V).
    let mut vt = ComplexMatrix::identity(n).data;

    let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tiny = f64::MIN_POSITIVE / f64::EPSILON;
    let mut converged = n <= 1 || frob == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { what: "Jacobi eigensolver", iterations: sweep });
        }
        sweep += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= tiny {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                if sweep > 3
                    && (app.abs() + 1e3 * r == app.abs())
                    && (aqq.abs() + 1e3 * r == aqq.abs())
                {
                    a[p * n + q] = ZERO;
                    a[q * n + p] = ZERO;
                    continue;
                }
                let (c, s, phase, t) = jacobi_rotation(app, aqq, apq);
                let ph = phase.conj();
                // rows p and q, then mirror into columns p and q
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    let new_pk = c * apk - s * phase * aqk;
                    let new_qk = s * apk + c * phase * aqk;
                    a[p * n + k] = new_pk;
                    a[q * n + k] = new_qk;
                    a[k * n + p] = new_pk.conj();
                    a[k * n + q] = new_qk.conj();
                }
                a[p * n + p] = C64::new(app - t * r, 0.0);
                a[q * n + q] = C64::new(aqq + t * r, 0.0);
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                let (head, tail) = vt.split_at_mut(q * n);
                let row_p = &mut head[p * n..(p + 1) * n];
                let row_q = &mut tail[..n];
                for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
                    let (x, y) = (*vp, *vq);
                    *vp = c * x - s * ph * y;
                    *vq = s * x + c * ph * y;
                }
            }
        }
        let off: f64 = (0..n)
            .flat_map(|r| ((r + 1)..n).map(move |c| (r, c)))
            .map(|(r, c)| a[r * n + c].norm_sqr())
            .sum::<f64>()
            .sqrt();
        converged = off <= 0.25 * f64::EPSILON * frob;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = vt[k * n + r];
        }
    }
    Ok(HermitianEig { values, vectors })
}

/// `exp(-i h t)` via the eigendecomposition of `h`.
pub fn unitary_from_hamiltonian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(h)?.map(|e| C64::from_polar(1.0, -e * t)))
}

/// Eigenvalues of a matrix that must be PSD: values in `[-PSD_CLAMP, 0)`
/// are clamped to zero, anything more negative is an error.
pub fn clamp_psd_spectrum(values: &mut [f64]) -> Result<()> {
    for v in values.iter_mut() {
        if *v < -PSD_CLAMP {
            return Err(Error::NotPositive { eigenvalue: *v });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(())
}

/// Principal square root of a PSD matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut eig = hermitian_eig(m)?;
    clamp_psd_spectrum(&mut eig.values)?;
    Ok(eig.map(|l| if l < SPECTRAL_FLOOR { ZERO } else { C64::new(l.sqrt(), 0.0) }))
}

/// Singular values, descending, by one-sided (Hestenes) Jacobi.
///
/// Small singular values come out with absolute error ~ε‖A‖ instead of
/// the √ε one gets from taking roots of `A†A`'s eigenvalues.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let (m, n) = (a.rows, a.cols);
    // columns of `a`, stored contiguously
    let mut cols: Vec<Vec<C64>> = (0..n).map(|c| (0..m).map(|r| a[(r, c)]).collect()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                // √α·√β rather than √(αβ): the product underflows for near-null columns
                if g == 0.0 || g <= f64::EPSILON * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase, _) = jacobi_rotation(alpha, beta, gamma);
                let ph = phase.conj();
                let (head, tail) = cols.split_at_mut(q);
                for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (u, v) = (*x, *y);
                    *x = c * u - s * ph * v;
                    *y = s * u + c * ph * v;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> =
        cols.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Checks that `keep` is a nonempty list of distinct qubit indices.
fn validate_keep(keep: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = 0u64;
    let bad = || Error::InvalidQubitSubset { keep: keep.to_vec(), n_qubits };
    if keep.is_empty() {
        return Err(bad());
    }
    for &q in keep {
        if q >= n_qubits || seen & (1 << q) != 0 {
            return Err(bad());
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// For every (kept index, traced index) pair, the full-register index.
/// Kept qubits appear in the order given by `keep`.
fn index_map(keep: &[usize], n_qubits: usize) -> (usize, usize, Vec<usize>) {
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let dk = 1 << keep.len();
    let dt = 1 << traced.len();
    let bit = |q: usize| 1usize << (n_qubits - 1 - q);
    let mut map = vec![0usize; dk * dt];
    for k in 0..dk {
        let mut base = 0;
        for (pos, &q) in keep.iter().enumerate() {
            if (k >> (keep.len() - 1 - pos)) & 1 == 1 {
                base |= bit(q);
            }
        }
        for t in 0..dt {
            let mut idx = base;
            for (pos, &q) in traced.iter().enumerate() {
                if (t >> (traced.len() - 1 - pos)) & 1 == 1 {
                    idx |= bit(q);
                }
            }
            map[k * dt + t] = idx;
        }
    }
    (dk, dt, map)
}

/// Reduced operator on the qubits in `keep` (in that order), tracing out the rest.
pub fn partial_trace(m: &ComplexMatrix, n_qubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if !m.is_square() || m.rows != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: m.rows });
    }
    validate_keep(keep, n_qubits)?;
    let (dk, dt, map) = index_map(keep, n_qubits);
    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..dk {
        for j in 0..dk {
            out[(i, j)] = (0..dt).map(|t| m[(map[i * dt + t], map[j * dt + t])]).sum();
        }
    }
    Ok(out)
}

/// Reduced density matrix of the pure state `psi` on the qubits in `keep`.
///
/// Never forms the full `|ψ⟩⟨ψ|`, so it is usable on registers where the
/// dense projector would not fit in memory.
pub fn partial_trace_pure(psi: &[C64], n_qubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if psi.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: psi.len() });
    }
    validate_keep(keep, n_qubits)?;
    let (dk, dt, map) = index_map(keep, n_qubits);
    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..dk {
        for j in i..dk {
            let z: C64 =
                (0..dt).map(|t| psi[map[i * dt + t]] * psi[map[j * dt + t]].conj()).sum();
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    Ok(out)
}

/// Solves the real square system `a x = b` by Gaussian elimination with
/// partial pivoting. `a` is row-major `n×n`.
///
/// A pivot below `rank_tol` (relative to the largest entry of `a`) is
/// reported as [`Error::NonUniqueFixedPoint`].
pub fn solve_real(a: &[f64], b: &[f64], rank_tol: f64) -> Result<Vec<f64>> {
    let n = b.len();
    if a.len() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: a.len() });
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))
            .unwrap();
        let pivot = m[piv * n + col];
        if pivot.abs() < rank_tol * scale {
            return Err(Error::NonUniqueFixedPoint { pivot: pivot.abs() / scale });
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[r * n + col] / pivot;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] -= f * m[col * n + k];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let s: f64 = ((col + 1)..n).map(|k| m[col * n + k] * x[k]).sum();
        x[col] = (x[col] - s) / m[col * n + col];
    }
    Ok(x)
}
