//! Factorization of maximal violators into local unitaries on the Bell/GHZ state.
//!
//! Orthogonal local settings `(X, X′)` complete to a Pauli triad with
//! `X″ = X × X′`. In the `X″` eigenbasis `{|0⟩, |1⟩}` the pair acts as
//!
//! ```text
//! X|0⟩ = e^{−iα}|1⟩,   X′|0⟩ = i·e^{−iα}|1⟩
//! ```
//!
//! for a site phase `α`. A maximal violator has support only on
//! `|0…0⟩` and `|1…1⟩` of the joint frame basis with equal moduli, which
//! pins the local unitaries.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, TAU};

use num_complex::Complex64;

use crate::bell_ops::{chsh_operator, chsh_prime_operator, klyshko_operator, ChshSettings, KlyshkoSettings};
use crate::error::{Error, Result};
use crate::spin::{cross3, dot3, orthogonalize, pauli, SpinObservable, UnitVector3};
use crate::tensor::{bell_state, distance, eig_hermitian, ghz_state, inner, kron, kron_all, ComplexMatrix, PureState};
use crate::{KLYSHKO_MAX, TSIRELSON};

/// Largest `|(a, a′)|` accepted by [`pauli_frame`].
pub const FRAME_ORTHOGONALITY_TOL: f64 = 1e-8;
/// Largest residual of the `X′` relation accepted by [`pauli_frame`].
pub const FRAME_CONSISTENCY_TOL: f64 = 1e-8;
/// Slack below the bound still accepted as a maximal violation.
pub const MAXIMALITY_TOL: f64 = 1e-6;
/// Threshold for vanishing frame-basis cross terms.
pub const CROSS_TERM_TOL: f64 = 1e-6;
/// Components below this modulus are skipped when fixing eigenvector phases.
pub const PHASE_FIX_THRESHOLD: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Eigenbasis of `X″ = X × X′` and the site phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliFrame {
    /// `X″ ket0 = +ket0`.
    pub ket0: [Complex64; 2],
    /// `X″ ket1 = −ket1`.
    pub ket1: [Complex64; 2],
    /// `⟨ket1|X|ket0⟩ = e^{−i·phase}`, in `[0, 2π)`.
    pub phase: f64,
}

impl PauliFrame {
    /// `U` with `U|0⟩ = ket0`, `U|1⟩ = ket1`.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&[self.ket0.to_vec(), self.ket1.to_vec()])
    }
}

fn wrap_phase(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    // `-0.0` survives `rem_euclid`; also fold the rounding case `w == 2π`.
    if w >= TAU || w == 0.0 {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Multiplies by a phase so the first component above [`PHASE_FIX_THRESHOLD`] is real positive.
fn fix_phase(v: Vec<Complex64>) -> [Complex64; 2] {
    let lead = v.iter().find(|z| z.norm() > PHASE_FIX_THRESHOLD).copied().unwrap_or(Complex64::new(1.0, 0.0));
    let rot = lead.conj() / lead.norm();
    [v[0] * rot, v[1] * rot]
}

/// Builds the `X″`-representation for an orthogonal pair `(X, X′)`.
pub fn pauli_frame(a: &SpinObservable, a_prime: &SpinObservable) -> Result<PauliFrame> {
    let overlap = dot3(a.vector(), a_prime.vector());
    if overlap.abs() > FRAME_ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal { inner: overlap });
    }
    let third = UnitVector3::normalize(cross3(a.vector(), a_prime.vector()))?;
    let third_matrix = pauli::dot(third.get());
    let eig = eig_hermitian(&third_matrix)?;
    let ket0 = fix_phase(eig.vector(1));
    let ket1 = fix_phase(eig.vector(0));

    let flip = inner(&ket1, &a.matrix().mul_vec(&ket0));
    let phase = wrap_phase(-flip.arg());
    let expected_prime = I * Complex64::from_polar(1.0, -phase);
    let prime_flip = inner(&ket1, &a_prime.matrix().mul_vec(&ket0));

    let residual = (flip.norm() - 1.0)
        .abs()
        .max((prime_flip - expected_prime).norm())
        .max(distance(&third_matrix.mul_vec(&ket0), &ket0));
    if residual > FRAME_CONSISTENCY_TOL {
        return Err(Error::FrameInconsistent { residual });
    }
    Ok(PauliFrame { ket0, ket1, phase })
}

/// Frame for a site after Gram–Schmidt of `X′` against `X`, plus `X″` as a matrix.
///
/// Exactly orthogonal pairs pass through unchanged; near-maximal inputs from
/// an iterative search are projected onto the nearest orthogonal pair.
fn site_frame(x: &SpinObservable, x_prime: &SpinObservable) -> Result<(PauliFrame, ComplexMatrix)> {
    let ortho = orthogonalize(x.direction(), x_prime.direction())
        .ok_or(Error::NotOrthogonal { inner: dot3(x.vector(), x_prime.vector()) })?;
    let x_prime = crate::spin::observable_from_vector(ortho);
    let frame = pauli_frame(x, &x_prime)?;
    let third = pauli::dot(cross3(x.vector(), x_prime.vector()));
    Ok((frame, third))
}

/// Amplitudes `λ_ε = ⟨ε₁ε₂…|ψ⟩` in the product frame basis.
fn frame_amplitudes(psi: &PureState, frames: &[&PauliFrame]) -> Vec<Complex64> {
    let unitaries: Vec<ComplexMatrix> = frames.iter().map(|f| f.unitary()).collect();
    let refs: Vec<&ComplexMatrix> = unitaries.iter().collect();
    kron_all(&refs).adjoint().mul_vec(psi.amplitudes())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Bell,
    Ghz,
}

impl Target {
    pub fn state(self) -> PureState {
        match self {
            Target::Bell => bell_state(),
            Target::Ghz => ghz_state(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::Bell => "Bell",
            Target::Ghz => "GHZ",
        }
    }
}

/// Site phases `α, β[, γ]` and amplitude phases `θ[, φ]`, all in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractedPhases {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Option<f64>,
    pub theta: f64,
    pub phi: Option<f64>,
}

/// Diagnostics of the maximal-violation conditions; reported, not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalChecks {
    /// `⟨ψ|B|ψ⟩`.
    pub violation: f64,
    /// Largest modulus among the frame-basis amplitudes that must vanish.
    pub cross_term_max: f64,
    /// Largest `||λ| − 1/√2|` over the two surviving amplitudes.
    pub modulus_deviation: f64,
    /// Two qubits: distance of `arg λ₀₀ − arg λ₁₁` from `α + β − π/4`.
    pub phase_relation_residual: Option<f64>,
    /// Two qubits: `‖A″B″ψ − ψ‖`; three qubits: `‖B₃²ψ − 16ψ‖`.
    pub eigen_condition_residual: f64,
    /// Three qubits only: see [`amplitude_balance_residual`].
    pub amplitude_balance_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalDecomposition {
    /// One 2×2 unitary per site, qubit 1 first.
    pub local_unitaries: Vec<ComplexMatrix>,
    pub phases: ExtractedPhases,
    /// `|⟨ψ|(⊗U)|target⟩|`.
    pub fidelity: f64,
    pub target: Target,
    pub checks: CanonicalChecks,
}

impl CanonicalDecomposition {
    /// `(⊗U)|target⟩`.
    pub fn reconstruct(&self) -> PureState {
        let refs: Vec<&ComplexMatrix> = self.local_unitaries.iter().collect();
        self.target.state().apply(&kron_all(&refs)).expect("unitaries match target dimension")
    }

    /// `max_k ‖U_k†U_k − I‖`.
    pub fn unitarity_residual(&self) -> f64 {
        self.local_unitaries
            .iter()
            .map(|u| (&(&u.adjoint() * u) - &ComplexMatrix::identity(2)).max_abs())
            .fold(0.0, f64::max)
    }
}

fn diag2(d0: Complex64, d1: Complex64) -> ComplexMatrix {
    ComplexMatrix::diag(&[d0, d1])
}

fn fidelity(psi: &PureState, unitaries: &[ComplexMatrix], target: Target) -> f64 {
    let refs: Vec<&ComplexMatrix> = unitaries.iter().collect();
    let image = kron_all(&refs).mul_vec(target.state().amplitudes());
    inner(psi.amplitudes(), &image).norm()
}

/// `‖A″B″ψ − ψ‖` for `A″ = A × A′`, `B″ = B × B′`.
pub fn chsh_eigen_condition_residual(psi: &PureState, s: &ChshSettings) -> f64 {
    let ca = pauli::dot(cross3(s.a.vector(), s.a_prime.vector()));
    let cb = pauli::dot(cross3(s.b.vector(), s.b_prime.vector()));
    distance(&kron(&ca, &cb).mul_vec(psi.amplitudes()), psi.amplitudes())
}

/// `‖B₃²ψ − 16ψ‖`.
pub fn klyshko_square_eigen_residual(psi: &PureState, s: &KlyshkoSettings) -> f64 {
    let b3 = klyshko_operator(s);
    let sq = &b3 * &b3;
    let target: Vec<Complex64> = psi.amplitudes().iter().map(|z| z * 16.0).collect();
    distance(&sq.mul_vec(psi.amplitudes()), &target)
}

fn require(psi: &PureState, n: usize) -> Result<()> {
    if psi.n_qubits() != n {
        return Err(Error::QubitCount(psi.n_qubits()));
    }
    Ok(())
}

/// Writes a maximal CHSH violator as `(U_A ⊗ U_B)(|00⟩ + |11⟩)/√2`.
///
/// `U_A = e^{iθ} U₁` and `U_B = U₂ · diag(e^{i(α+β−π/4)}, 1)`, where `U₁`,
/// `U₂` map the computational basis onto the frame bases and `θ = arg λ₁₁`.
pub fn canonicalize_two_qubit(psi: &PureState, s: &ChshSettings) -> Result<CanonicalDecomposition> {
    require(psi, 2)?;
    let violation = psi.expectation(&chsh_operator(s));
    if violation < TSIRELSON - MAXIMALITY_TOL {
        return Err(Error::NotMaximal { value: violation, required: TSIRELSON - MAXIMALITY_TOL });
    }
    let (fa, ca) = site_frame(&s.a, &s.a_prime)?;
    let (fb, cb) = site_frame(&s.b, &s.b_prime)?;
    let lambda = frame_amplitudes(psi, &[&fa, &fb]);

    let relative = fa.phase + fb.phase - FRAC_PI_4;
    let theta = wrap_phase(lambda[3].arg());
    let u_a = fa.unitary().scale(Complex64::from_polar(1.0, theta));
    let u_b = &fb.unitary() * &diag2(Complex64::from_polar(1.0, relative), Complex64::new(1.0, 0.0));
    let unitaries = vec![u_a, u_b];

    let checks = CanonicalChecks {
        violation,
        cross_term_max: lambda[1].norm().max(lambda[2].norm()),
        modulus_deviation: (lambda[0].norm() - FRAC_1_SQRT_2).abs().max((lambda[3].norm() - FRAC_1_SQRT_2).abs()),
        phase_relation_residual: Some(angular_distance(lambda[0].arg() - lambda[3].arg(), relative)),
        eigen_condition_residual: distance(&kron(&ca, &cb).mul_vec(psi.amplitudes()), psi.amplitudes()),
        amplitude_balance_residual: None,
    };
    Ok(CanonicalDecomposition {
        fidelity: fidelity(psi, &unitaries, Target::Bell),
        local_unitaries: unitaries,
        phases: ExtractedPhases { alpha: fa.phase, beta: fb.phase, gamma: None, theta, phi: None },
        target: Target::Bell,
        checks,
    })
}

/// Writes a maximal Klyshko violator as `(U_A ⊗ U_B ⊗ U_C)(|000⟩ + |111⟩)/√2`.
///
/// `U_A = U₁ · diag(e^{iφ}, 1)`, `U_B = U₂ · diag(1, e^{iθ})`, `U_C = U₃`
/// with `φ = arg λ₀₀₀` and `θ = arg λ₁₁₁`.
pub fn canonicalize_three_qubit(psi: &PureState, s: &KlyshkoSettings) -> Result<CanonicalDecomposition> {
    require(psi, 3)?;
    let violation = psi.expectation(&klyshko_operator(s));
    if violation < KLYSHKO_MAX - MAXIMALITY_TOL {
        return Err(Error::NotMaximal { value: violation, required: KLYSHKO_MAX - MAXIMALITY_TOL });
    }
    let (fa, _) = site_frame(&s.a, &s.a_prime)?;
    let (fb, _) = site_frame(&s.b, &s.b_prime)?;
    let (fc, _) = site_frame(&s.c, &s.c_prime)?;
    let lambda = frame_amplitudes(psi, &[&fa, &fb, &fc]);

    let phi = wrap_phase(lambda[0].arg());
    let theta = wrap_phase(lambda[7].arg());
    let one = Complex64::new(1.0, 0.0);
    let unitaries = vec![
        &fa.unitary() * &diag2(Complex64::from_polar(1.0, phi), one),
        &fb.unitary() * &diag2(one, Complex64::from_polar(1.0, theta)),
        fc.unitary(),
    ];

    let cross_term_max = lambda[1..7].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let balance =
        if cross_term_max <= CROSS_TERM_TOL { Some(balance_residual(&lambda, &fa, &fb, &fc, s)) } else { None };
    let checks = CanonicalChecks {
        violation,
        cross_term_max,
        modulus_deviation: (lambda[0].norm() - FRAC_1_SQRT_2).abs().max((lambda[7].norm() - FRAC_1_SQRT_2).abs()),
        phase_relation_residual: None,
        eigen_condition_residual: klyshko_square_eigen_residual(psi, s),
        amplitude_balance_residual: balance,
    };
    Ok(CanonicalDecomposition {
        fidelity: fidelity(psi, &unitaries, Target::Ghz),
        local_unitaries: unitaries,
        phases: ExtractedPhases { alpha: fa.phase, beta: fb.phase, gamma: Some(fc.phase), theta, phi: Some(phi) },
        target: Target::Ghz,
        checks,
    })
}

/// For `ψ = a|000⟩ + b|111⟩` in the frame basis, the `|1⟩_C` and `|0⟩_C`
/// components of `B₃ψ = 4ψ` read
///
/// ```text
/// ½ a e^{−iγ} [(1+i)B₂′ − (1−i)B₂] |00⟩ = 4b |11⟩
/// ½ b e^{+iγ} [(1−i)B₂′ − (1+i)B₂] |11⟩ = 4a |00⟩
/// ```
///
/// Returns the larger of the two norm differences.
pub fn amplitude_balance_residual(psi: &PureState, s: &KlyshkoSettings) -> Result<f64> {
    require(psi, 3)?;
    let (fa, _) = site_frame(&s.a, &s.a_prime)?;
    let (fb, _) = site_frame(&s.b, &s.b_prime)?;
    let (fc, _) = site_frame(&s.c, &s.c_prime)?;
    let lambda = frame_amplitudes(psi, &[&fa, &fb, &fc]);
    let cross = lambda[1..7].iter().map(|z| z.norm()).fold(0.0, f64::max);
    if cross > CROSS_TERM_TOL {
        return Err(Error::NotFrameForm { cross });
    }
    Ok(balance_residual(&lambda, &fa, &fb, &fc, s))
}

fn balance_residual(
    lambda: &[Complex64],
    fa: &PauliFrame,
    fb: &PauliFrame,
    fc: &PauliFrame,
    s: &KlyshkoSettings,
) -> f64 {
    let (a, b) = (lambda[0], lambda[7]);
    let ab = s.ab();
    let b2 = chsh_operator(&ab);
    let b2p = chsh_prime_operator(&ab);
    let one = Complex64::new(1.0, 0.0);
    let ket = |x: &[Complex64; 2], y: &[Complex64; 2]| -> Vec<Complex64> {
        vec![x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
    };
    let k00 = ket(&fa.ket0, &fb.ket0);
    let k11 = ket(&fa.ket1, &fb.ket1);
    let e_gamma = Complex64::from_polar(1.0, fc.phase);

    let op31 = &b2p.scale(one + I) - &b2.scale(one - I);
    let lhs31: Vec<Complex64> = op31.mul_vec(&k00).iter().map(|z| z * a * e_gamma.conj() * 0.5).collect();
    let rhs31: Vec<Complex64> = k11.iter().map(|z| z * b * 4.0).collect();

    let op32 = &b2p.scale(one - I) - &b2.scale(one + I);
    let lhs32: Vec<Complex64> = op32.mul_vec(&k11).iter().map(|z| z * b * e_gamma * 0.5).collect();
    let rhs32: Vec<Complex64> = k00.iter().map(|z| z * a * 4.0).collect();

    distance(&lhs31, &rhs31).max(distance(&lhs32, &rhs32))
}
