//! Local-unitary invariants: Schmidt form, entanglement entropy, 3-tangle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{svd, ComplexMatrix, PureState};

/// Threshold for the class certificates of [`certify_target_class`].
pub const CLASS_TOL: f64 = 1e-6;

/// `ψ = Σₖ sₖ |uₖ⟩ ⊗ |vₖ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtForm {
    /// Descending, non-negative.
    pub coefficients: [f64; 2],
    /// `uₖ` on qubit 1.
    pub basis_first: [[Complex64; 2]; 2],
    /// `vₖ` on qubit 2.
    pub basis_second: [[Complex64; 2]; 2],
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    amps[2 * i + j] += self.basis_first[k][i] * self.basis_second[k][j] * self.coefficients[k];
                }
            }
        }
        amps
    }
}

fn require_qubits(psi: &PureState, n: usize) -> Result<()> {
    if psi.n_qubits() != n {
        return Err(Error::QubitCount(psi.n_qubits()));
    }
    Ok(())
}

/// Singular value decomposition of the 2×2 amplitude matrix `M[i][j] = ψ_{ij}`.
pub fn schmidt(psi: &PureState) -> Result<SchmidtForm> {
    require_qubits(psi, 2)?;
    let m = ComplexMatrix::from_row_major(2, 2, psi.amplitudes().to_vec())?;
    let d = svd(&m);
    // M = U S V† gives ψ = Σ sₖ uₖ ⊗ conj(vₖ)
    let col = |mat: &ComplexMatrix, k: usize, conj: bool| -> [Complex64; 2] {
        let c = [mat[(0, k)], mat[(1, k)]];
        if conj {
            c.map(|z| z.conj())
        } else {
            c
        }
    };
    Ok(SchmidtForm {
        coefficients: [d.singular_values[0], d.singular_values[1]],
        basis_first: [col(&d.u, 0, false), col(&d.u, 1, false)],
        basis_second: [col(&d.v, 0, true), col(&d.v, 1, true)],
    })
}

/// Von Neumann entropy of either qubit, in bits.
pub fn entanglement_entropy(psi: &PureState) -> Result<f64> {
    let s = schmidt(psi)?;
    let h: f64 = s.coefficients.iter().map(|c| c * c).filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum();
    Ok(h.clamp(0.0, 1.0))
}

/// Coffman–Kundu–Wootters residual tangle `τ = 4 |Det(ψ)|`, with `Det`
/// Cayley's hyperdeterminant of the 2×2×2 amplitude tensor.
pub fn three_tangle(psi: &PureState) -> Result<f64> {
    require_qubits(psi, 3)?;
    let a = |i: usize, j: usize, k: usize| psi.amplitudes()[4 * i + 2 * j + k];

    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);

    let det = d1 - d2 * 2.0 + d3 * 4.0;
    Ok((4.0 * det.norm()).clamp(0.0, 1.0))
}

/// Reduced density matrix of one qubit (`site` counts from 0, most significant first).
pub fn single_site_density(psi: &PureState, site: usize) -> ComplexMatrix {
    let n = psi.n_qubits();
    assert!(site < n, "site {site} out of range");
    let shift = n - 1 - site;
    let amps = psi.amplitudes();
    let mut rho = ComplexMatrix::zeros(2, 2);
    for idx in (0..amps.len()).filter(|i| (i >> shift) & 1 == 0) {
        for (bi, bj) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            let i = idx | (bi << shift);
            let j = idx | (bj << shift);
            rho[(bi, bj)] += amps[i] * amps[j].conj();
        }
    }
    rho
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetClass {
    BellClass,
    GhzClass,
    Other,
}

impl TargetClass {
    pub fn name(self) -> &'static str {
        match self {
            TargetClass::BellClass => "BellClass",
            TargetClass::GhzClass => "GhzClass",
            TargetClass::Other => "Other",
        }
    }
}

/// Largest deviation of any single-qubit marginal from `I/2`.
pub fn marginal_mixedness_deviation(psi: &PureState) -> f64 {
    let half = ComplexMatrix::identity(2).scale_re(0.5);
    (0..psi.n_qubits()).map(|k| (&single_site_density(psi, k) - &half).max_abs()).fold(0.0, f64::max)
}

/// Two qubits: Bell class iff one full bit of entanglement. Three qubits: GHZ
/// class iff the 3-tangle is 1 and every marginal is maximally mixed.
pub fn certify_target_class(psi: &PureState) -> TargetClass {
    let certified = match psi.n_qubits() {
        2 => entanglement_entropy(psi).is_ok_and(|h| h >= 1.0 - CLASS_TOL),
        3 => three_tangle(psi).is_ok_and(|t| t >= 1.0 - CLASS_TOL) && marginal_mixedness_deviation(psi) <= CLASS_TOL,
        _ => false,
    };
    match (certified, psi.n_qubits()) {
        (true, 2) => TargetClass::BellClass,
        (true, 3) => TargetClass::GhzClass,
        _ => TargetClass::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{bell_state, distance, ghz_state, schmidt_family_state, w_state};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn schmidt_examples() {
        let s = schmidt(&bell_state()).unwrap();
        assert!(s.coefficients.iter().all(|c| (c - FRAC_1_SQRT_2).abs() < 1e-15));
        let s = schmidt(&PureState::basis(2, 0).unwrap()).unwrap();
        assert_eq!(s.coefficients, [1.0, 0.0]);
        let psi = schmidt_family_state(PI / 6.0);
        let s = schmidt(&psi).unwrap();
        assert!((s.coefficients[0] - (PI / 6.0).cos()).abs() < 1e-15);
        assert!((s.coefficients[1] - (PI / 6.0).sin()).abs() < 1e-15);
        assert!(distance(&s.reconstruct(), psi.amplitudes()) <= 1e-10);
        assert!(matches!(schmidt(&ghz_state()), Err(Error::QubitCount(3))));
    }

    #[test]
    fn entropy_examples() {
        assert!((entanglement_entropy(&bell_state()).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(entanglement_entropy(&PureState::basis(2, 3).unwrap()).unwrap(), 0.0);
        // binary entropy at p = sin²(π/6) = 1/4
        let p: f64 = 0.25;
        let h = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((h - 0.811278).abs() < 1e-6);
        let got = entanglement_entropy(&schmidt_family_state(PI / 6.0)).unwrap();
        assert!((got - h).abs() < 1e-12);
    }

    #[test]
    fn tangle_examples() {
        assert!((three_tangle(&ghz_state()).unwrap() - 1.0).abs() < 1e-14);
        assert!(three_tangle(&w_state()).unwrap().abs() < 1e-15);
        assert_eq!(three_tangle(&PureState::basis(3, 0).unwrap()).unwrap(), 0.0);
        assert!(matches!(three_tangle(&bell_state()), Err(Error::QubitCount(2))));
    }

    #[test]
    fn marginals() {
        let rho = single_site_density(&w_state(), 0);
        assert!((rho[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho[(1, 1)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!(marginal_mixedness_deviation(&ghz_state()) < 1e-15);
    }

    #[test]
    fn classes() {
        assert_eq!(certify_target_class(&bell_state()), TargetClass::BellClass);
        assert_eq!(certify_target_class(&ghz_state()), TargetClass::GhzClass);
        assert_eq!(certify_target_class(&w_state()), TargetClass::Other);
        assert_eq!(certify_target_class(&PureState::basis(2, 0).unwrap()), TargetClass::Other);
    }
}
