//! Spin observables `a·σ` and the Pauli-triad algebra.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tensor::{operator_norm, ComplexMatrix};

/// Tolerance on `‖a‖ = 1` for [`UnitVector3::new`].
pub const UNIT_TOL: f64 = 1e-12;

pub mod pauli {
    use super::*;

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);
    const P: Complex64 = Complex64::new(1.0, 0.0);
    const M: Complex64 = Complex64::new(-1.0, 0.0);

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[O, P], [P, O]])
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[O, -I], [I, O]])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[P, O], [O, M]])
    }

    /// `v·σ` for an arbitrary real 3-vector.
    pub fn dot(v: [f64; 3]) -> ComplexMatrix {
        let [x, y, z] = v;
        ComplexMatrix::from_rows(&[
            [Complex64::new(z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(-z, 0.0)],
        ])
    }

    /// Pauli components `(tr(mσx), tr(mσy), tr(mσz))/2` of a 2×2 matrix (real parts).
    pub fn components(m: &ComplexMatrix) -> [f64; 3] {
        let x = (m[(0, 1)] + m[(1, 0)]).re * 0.5;
        let y = (m[(1, 0)] - m[(0, 1)]).im * 0.5;
        let z = (m[(0, 0)] - m[(1, 1)]).re * 0.5;
        [x, y, z]
    }
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Unit direction in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3([f64; 3]);

impl UnitVector3 {
    pub fn new(v: [f64; 3]) -> Result<Self> {
        Self::with_tolerance(v, UNIT_TOL)
    }

    /// Accepts `v` if `|‖v‖ − 1| ≤ tol`, then renormalizes.
    pub fn with_tolerance(v: [f64; 3], tol: f64) -> Result<Self> {
        let n = norm3(v);
        if !n.is_finite() || (n - 1.0).abs() > tol {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(Self(v.map(|x| x / n)))
    }

    /// Normalizes any non-zero finite vector.
    pub fn normalize(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(Self(v.map(|x| x / n)))
    }

    /// Uniform on the sphere: normalized triple of standard Gaussians.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n = norm3(v);
            if n > 1e-12 {
                return Self(v.map(|x| x / n));
            }
        }
    }

    pub const X: Self = Self([1.0, 0.0, 0.0]);
    pub const Y: Self = Self([0.0, 1.0, 0.0]);
    pub const Z: Self = Self([0.0, 0.0, 1.0]);

    pub fn get(&self) -> [f64; 3] {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

/// A ±1-valued qubit observable `a·σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinObservable {
    direction: UnitVector3,
    matrix: ComplexMatrix,
}

impl SpinObservable {
    pub fn direction(&self) -> UnitVector3 {
        self.direction
    }

    pub fn vector(&self) -> [f64; 3] {
        self.direction.get()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn sigma_x() -> Self {
        observable_from_vector(UnitVector3::X)
    }

    pub fn sigma_y() -> Self {
        observable_from_vector(UnitVector3::Y)
    }

    pub fn sigma_z() -> Self {
        observable_from_vector(UnitVector3::Z)
    }

    /// Observable along a raw vector, validated as unit within [`UNIT_TOL`].
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        Ok(observable_from_vector(UnitVector3::new(v)?))
    }

    pub fn negated(&self) -> Self {
        observable_from_vector(self.direction.neg())
    }

    /// `U (a·σ) U†`, i.e. the observable along the rotated direction.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        let m = &(u * &self.matrix) * &u.adjoint();
        let dir = UnitVector3::normalize(pauli::components(&m)).expect("unitary conjugation keeps unit norm");
        observable_from_vector(dir)
    }
}

pub fn observable_from_vector(a: UnitVector3) -> SpinObservable {
    SpinObservable { direction: a, matrix: pauli::dot(a.get()) }
}

/// `(A, A′) = a·a′`.
pub fn inner(a: &SpinObservable, a_prime: &SpinObservable) -> f64 {
    dot3(a.vector(), a_prime.vector())
}

/// `(a × a′)·σ`; the direction is generally not unit.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossObservable {
    pub vector: [f64; 3],
    pub matrix: ComplexMatrix,
}

impl CrossObservable {
    pub fn norm(&self) -> f64 {
        norm3(self.vector)
    }
}

pub fn cross_observable(a: &SpinObservable, a_prime: &SpinObservable) -> CrossObservable {
    let vector = cross3(a.vector(), a_prime.vector());
    CrossObservable { vector, matrix: pauli::dot(vector) }
}

/// Operator-norm residuals of the Pauli product rules for a candidate triad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadResiduals {
    /// `AA′ = iA″`, `A′A = −iA″`
    pub first_second: f64,
    /// `A′A″ = iA`, `A″A′ = −iA`
    pub second_third: f64,
    /// `A″A = iA′`, `AA″ = −iA′`
    pub third_first: f64,
    /// `A² = A′² = A″² = I`
    pub squares: f64,
}

impl TriadResiduals {
    pub fn max(&self) -> f64 {
        self.first_second.max(self.second_third).max(self.third_first).max(self.squares)
    }
}

/// Checks that `(A, A′, A″)` multiply like `(σx, σy, σz)`.
pub fn verify_triad(a: &SpinObservable, a_prime: &SpinObservable, a_dprime: &ComplexMatrix) -> TriadResiduals {
    let i = Complex64::new(0.0, 1.0);
    let m1 = a.matrix();
    let m2 = a_prime.matrix();
    let m3 = a_dprime;
    let id = ComplexMatrix::identity(2);

    let rule = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| -> f64 {
        let forward = operator_norm(&(&(p * q) - &r.scale(i)));
        let backward = operator_norm(&(&(q * p) + &r.scale(i)));
        forward.max(backward)
    };
    let squares = [m1, m2, m3].iter().map(|m| operator_norm(&(&(*m * *m) - &id))).fold(0.0, f64::max);

    TriadResiduals {
        first_second: rule(m1, m2, m3),
        second_third: rule(m2, m3, m1),
        third_first: rule(m3, m1, m2),
        squares,
    }
}

/// Gram–Schmidt: the component of `b` orthogonal to unit `a`, normalized.
/// Returns `None` when `‖a × b‖` is below `1e-8`.
pub fn orthogonalize(a: UnitVector3, b: UnitVector3) -> Option<UnitVector3> {
    let (av, bv) = (a.get(), b.get());
    if norm3(cross3(av, bv)) < 1e-8 {
        return None;
    }
    let d = dot3(av, bv);
    UnitVector3::normalize([bv[0] - d * av[0], bv[1] - d * av[1], bv[2] - d * av[2]]).ok()
}

/// Random orthogonal pair, resampling nearly parallel draws.
pub fn random_orthogonal_pair<R: Rng + ?Sized>(rng: &mut R) -> (UnitVector3, UnitVector3) {
    loop {
        let a = UnitVector3::random(rng);
        let b = UnitVector3::random(rng);
        if let Some(b) = orthogonalize(a, b) {
            return (a, b);
        }
    }
}
