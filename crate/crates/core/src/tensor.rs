//! Small dense complex linear algebra (dimension ≤ 8) and the canonical
//! two- and three-qubit states.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius threshold (relative to the input norm) that ends a Jacobi sweep loop.
pub const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Convenience constructor for fixed-size literals. Panics on ragged input.
    pub fn from_rows<const C: usize>(rows: &[[Complex64; C]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self { rows: rows.len(), cols: C, data }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &z) in c.iter().enumerate() {
                m[(i, j)] = z;
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

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `‖m − m†‖` in the operator norm.
    pub fn hermitian_deviation(&self) -> f64 {
        operator_norm(&(self - &self.adjoint()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
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
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: ComplexMatrix) -> ComplexMatrix {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Kronecker product; the left factor indexes the more significant bits.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of factors.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    factors.iter().fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// 2×2 inputs use the closed form; larger ones use cyclic complex Jacobi
/// rotations. Degenerate eigenspaces come back with an arbitrary orthonormal
/// basis.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = (m - &m.adjoint()).max_abs();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    match m.rows {
        0 => Ok(HermitianEigen { values: vec![], vectors: ComplexMatrix::zeros(0, 0) }),
        1 => Ok(HermitianEigen { values: vec![m[(0, 0)].re], vectors: ComplexMatrix::identity(1) }),
        2 => Ok(eig_2x2(m)),
        _ => eig_jacobi(m),
    }
}

fn eig_2x2(m: &ComplexMatrix) -> HermitianEigen {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    // average the two off-diagonal entries to absorb tiny anti-Hermitian noise
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let values = vec![mean - half_gap, mean + half_gap];
    if b.norm() <= f64::EPSILON * (a.abs() + d.abs()).max(f64::MIN_POSITIVE) {
        let vectors =
            if a <= d { ComplexMatrix::identity(2) } else { ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]) };
        return HermitianEigen { values, vectors };
    }
    let columns: Vec<Vec<Complex64>> = values
        .iter()
        .map(|&lambda| {
            // (m − λ)v = 0 gives two candidate null vectors; keep the better conditioned one
            let u = [b, Complex64::new(lambda - a, 0.0)];
            let w = [Complex64::new(lambda - d, 0.0), b.conj()];
            let pick = if norm(&u) >= norm(&w) { u } else { w };
            let n = norm(&pick);
            pick.iter().map(|z| z / n).collect()
        })
        .collect();
    HermitianEigen { values, vectors: ComplexMatrix::from_columns(&columns) }
}

/// Unitary 2×2 rotation that zeroes the off-diagonal entry of the Hermitian
/// block `[[app, apq], [conj(apq), aqq]]` when applied as `J† · J`.
/// Returned as `(c, s, phase)` with `J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase.conj())
}

/// Right-multiplies columns `p`, `q` of `m` by the rotation.
fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    for k in 0..m.rows {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * c - mq * e * s;
        m[(k, q)] = mp * s + mq * e * c;
    }
}

/// Left-multiplies rows `p`, `q` of `m` by the adjoint of the rotation.
fn rotate_rows_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let ec = e.conj();
    for k in 0..m.cols {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = mp * c - mq * ec * s;
        m[(q, k)] = mp * s + mq * ec * c;
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn eig_jacobi(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.rows;
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * m.frobenius_norm().max(1.0);
    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() < f64::MIN_POSITIVE {
                    continue;
                }
                let (c, s, e) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_columns(&mut a, p, q, c, s, e);
                rotate_rows_adjoint(&mut a, p, q, c, s, e);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                rotate_columns(&mut v, p, q, c, s, e);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let columns: Vec<Vec<Complex64>> = order.iter().map(|&i| v.column(i)).collect();
    Ok(HermitianEigen { values, vectors: ComplexMatrix::from_columns(&columns) })
}

/// Thin singular value decomposition `m = U · diag(s) · V†`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: ComplexMatrix,
    /// Descending, non-negative.
    pub singular_values: Vec<f64>,
    /// `cols × k` with orthonormal columns.
    pub v: ComplexMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows < m.cols {
        let t = svd(&m.adjoint());
        return Svd { u: t.v, singular_values: t.singular_values, v: t.u };
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(cols);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                for k in 0..rows {
                    alpha += w[(k, p)].norm_sqr();
                    beta += w[(k, q)].norm_sqr();
                    gamma += w[(k, p)].conj() * w[(k, q)];
                }
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let (c, s, e) = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, c, s, e);
                rotate_columns(&mut v, p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..cols).map(|j| norm(&w.column(j))).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let scale = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = (rows as f64) * f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    let mut v_cols: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for &j in &order {
        v_cols.push(v.column(j));
        if norms[j] > cutoff {
            u_cols.push(w.column(j).iter().map(|z| z / norms[j]).collect());
        } else {
            u_cols.push(complete_orthonormal(&u_cols, rows));
        }
    }
    Svd { u: ComplexMatrix::from_columns(&u_cols), singular_values, v: ComplexMatrix::from_columns(&v_cols) }
}

/// A unit vector orthogonal to every vector in `basis` (Gram–Schmidt against
/// the standard basis).
fn complete_orthonormal(basis: &[Vec<Complex64>], dim: usize) -> Vec<Complex64> {
    let mut best: Option<Vec<Complex64>> = None;
    let mut best_norm = 0.0;
    for e in 0..dim {
        let mut cand = vec![ZERO; dim];
        cand[e] = ONE;
        for b in basis {
            let overlap = inner(b, &cand);
            for (c, bk) in cand.iter_mut().zip(b) {
                *c -= overlap * bk;
            }
        }
        let n = norm(&cand);
        if n > best_norm {
            best_norm = n;
            best = Some(cand);
        }
    }
    let cand = best.expect("dimension must exceed basis size");
    cand.iter().map(|z| z / best_norm).collect()
}

/// Spectral norm (largest singular value).
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    svd(m).singular_values.first().copied().unwrap_or(0.0)
}

/// `⟨x|y⟩`, conjugate-linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean distance between two complex vectors.
pub fn distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// Normalization tolerance for [`PureState::new`].
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Normalized two- or three-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates length and unit norm (within [`STATE_NORM_TOL`]).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(amplitudes, STATE_NORM_TOL)
    }

    /// Validates length and unit norm within `tol`, then renormalizes exactly.
    pub fn with_tolerance(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        let n_qubits = match amplitudes.len() {
            4 => 2,
            8 => 3,
            n => return Err(Error::Dimension(format!("{n} amplitudes; expected 4 or 8"))),
        };
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { n_qubits, amplitudes: amplitudes.iter().map(|z| z / n).collect() })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized { norm: n });
        }
        Self::with_tolerance(amplitudes.iter().map(|z| z / n).collect(), f64::INFINITY)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if !(2..=3).contains(&n_qubits) {
            return Err(Error::QubitCount(n_qubits));
        }
        let dim = 1 << n_qubits;
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} out of range")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n_qubits, amplitudes: amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨ψ|op|ψ⟩` (real part; `op` is expected Hermitian).
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        inner(&self.amplitudes, &op.mul_vec(&self.amplitudes)).re
    }

    pub fn overlap(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Applies a unitary and renormalizes away rounding drift.
    pub fn apply(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} operator on a {}-dimensional state",
                u.rows(),
                u.cols(),
                self.dim()
            )));
        }
        Self::normalized(u.mul_vec(&self.amplitudes))
    }
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(|00> + |11>)/√2`.
pub fn bell_state() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    PureState { n_qubits: 2, amplitudes: vec![r(h), ZERO, ZERO, r(h)] }
}

/// `(|000> + |111>)/√2`.
pub fn ghz_state() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![ZERO; 8];
    amps[0] = r(h);
    amps[7] = r(h);
    PureState { n_qubits: 3, amplitudes: amps }
}

/// `(|001> + |010> + |100>)/√3`.
pub fn w_state() -> PureState {
    let w = 1.0 / 3f64.sqrt();
    let mut amps = vec![ZERO; 8];
    amps[1] = r(w);
    amps[2] = r(w);
    amps[4] = r(w);
    PureState { n_qubits: 3, amplitudes: amps }
}

/// `cos θ |00> + sin θ |11>`.
pub fn schmidt_family_state(theta: f64) -> PureState {
    PureState { n_qubits: 2, amplitudes: vec![r(theta.cos()), ZERO, ZERO, r(theta.sin())] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::pauli;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = (a - b).max_abs();
        assert!(d <= tol, "matrices differ by {d:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn kron_identity_and_paulis() {
        assert_close(&kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)), &ComplexMatrix::identity(4), 0.0);
        let zz = kron(&pauli::z(), &pauli::z());
        assert_close(&zz, &ComplexMatrix::diag(&[r(1.0), r(-1.0), r(-1.0), r(1.0)]), 0.0);
        let xx = kron(&pauli::x(), &pauli::x());
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(xx[(i, j)], expected);
            }
        }
    }

    #[test]
    fn kron_left_factor_is_most_significant() {
        // σx on qubit 1 flips the high bit: |00> -> |10>
        let x1 = kron(&pauli::x(), &ComplexMatrix::identity(2));
        let out = x1.mul_vec(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(out, vec![ZERO, ZERO, ONE, ZERO]);
    }

    #[test]
    fn eig_of_pauli_z_and_x() {
        let e = eig_hermitian(&pauli::z()).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
        assert!((e.vector(0)[1].norm() - 1.0).abs() < 1e-15);
        assert!((e.vector(1)[0].norm() - 1.0).abs() < 1e-15);

        let e = eig_hermitian(&pauli::x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        // (1, -1)/√2 and (1, 1)/√2 up to phase
        assert!((inner(&[r(H), r(-H)], &v0).norm() - 1.0).abs() < 1e-14);
        assert!((inner(&[r(H), r(H)], &v1).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_bad_input() {
        assert!(matches!(eig_hermitian(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        let m = ComplexMatrix::from_rows(&[[ZERO, ONE], [ZERO, ZERO]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_diagonal_8x8_is_sorted() {
        let d: Vec<Complex64> = [3.0, -1.0, 2.0, 0.5, -4.0, 1.0, 7.0, 0.0].iter().map(|&x| r(x)).collect();
        let e = eig_hermitian(&ComplexMatrix::diag(&d)).unwrap();
        assert_eq!(e.values, vec![-4.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 7.0]);
    }

    #[test]
    fn eig_residuals_on_dense_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            [r(2.0), c(1.0, -1.0), c(0.0, 0.5), r(0.3)],
            [c(1.0, 1.0), r(-1.0), r(0.2), c(0.0, -2.0)],
            [c(0.0, -0.5), r(0.2), r(0.5), c(1.5, 0.5)],
            [r(0.3), c(0.0, 2.0), c(1.5, -0.5), r(1.0)],
        ]);
        let e = eig_hermitian(&m).unwrap();
        for k in 0..4 {
            let v = e.vector(k);
            let mv = m.mul_vec(&v);
            let lv: Vec<Complex64> = v.iter().map(|z| z * e.values[k]).collect();
            assert!(distance(&mv, &lv) <= 1e-10);
        }
        assert_close(&(&e.vectors.adjoint() * &e.vectors), &ComplexMatrix::identity(4), 1e-10);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn svd_examples() {
        let s = svd(&ComplexMatrix::identity(2));
        assert_eq!(s.singular_values, vec![1.0, 1.0]);
        let s = svd(&ComplexMatrix::zeros(2, 2));
        assert_eq!(s.singular_values, vec![0.0, 0.0]);
        assert_close(&(&s.u.adjoint() * &s.u), &ComplexMatrix::identity(2), 1e-15);
        let bell = ComplexMatrix::from_rows(&[[r(H), ZERO], [ZERO, r(H)]]);
        let s = svd(&bell);
        assert!(s.singular_values.iter().all(|x| (x - H).abs() < 1e-15));
    }

    #[test]
    fn svd_reconstructs_rectangular_and_rank_deficient() {
        let wide = ComplexMatrix::from_rows(&[[r(1.0), c(0.0, 2.0), r(-1.0)], [r(2.0), c(0.0, 4.0), r(-2.0)]]);
        for m in [wide.clone(), wide.adjoint()] {
            let s = svd(&m);
            let sigma = ComplexMatrix::diag(&s.singular_values.iter().map(|&x| r(x)).collect::<Vec<_>>());
            assert_close(&(&(&s.u * &sigma) * &s.v.adjoint()), &m, 1e-12);
            assert_close(&(&s.u.adjoint() * &s.u), &ComplexMatrix::identity(2), 1e-12);
            assert_close(&(&s.v.adjoint() * &s.v), &ComplexMatrix::identity(2), 1e-12);
            assert!(s.singular_values[1].abs() < 1e-12);
        }
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&pauli::x()) - 1.0).abs() < 1e-15);
        assert!((operator_norm(&ComplexMatrix::identity(4).scale_re(2.0)) - 2.0).abs() < 1e-15);
        assert!((operator_norm(&pauli::y().scale_re(-3.0)) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn canonical_states() {
        let b = bell_state();
        assert_eq!(b.amplitudes(), &[r(H), ZERO, ZERO, r(H)]);
        let g = ghz_state();
        assert_eq!(g.amplitudes()[0], r(H));
        assert_eq!(g.amplitudes()[7], r(H));
        assert!(g.amplitudes()[1..7].iter().all(|z| *z == ZERO));
        let w = w_state();
        let t = 1.0 / 3f64.sqrt();
        let expected: Vec<Complex64> = [0.0, t, t, 0.0, t, 0.0, 0.0, 0.0].iter().map(|&x| r(x)).collect();
        assert_eq!(w.amplitudes(), expected.as_slice());
        for s in [b, g, w] {
            assert!((norm(s.amplitudes()) - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn state_validation() {
        assert!(matches!(PureState::new(vec![ONE, ONE, ZERO, ZERO]), Err(Error::NotNormalized { .. })));
        assert!(matches!(PureState::new(vec![ONE, ZERO, ZERO]), Err(Error::Dimension(_))));
        assert!(PureState::normalized(vec![ZERO; 4]).is_err());
        assert!(PureState::new(vec![r(f64::NAN), ZERO, ZERO, ZERO]).is_err());
        let s = PureState::normalized(vec![ONE, ZERO, ZERO, ONE]).unwrap();
        assert_eq!(s, bell_state());
    }
}
