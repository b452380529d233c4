//! Numbers checked against independent computations: dense planar grid
//! searches, the Cayley hyperdeterminant and hand-built matrices. The frozen
//! constants were produced by the same oracles run offline at higher
//! resolution.

mod common;

use std::f64::consts::{PI, SQRT_2};

use bellmax::bell_ops::chsh_operator;
use bellmax::canonical::{amplitude_balance_residual, canonicalize_three_qubit, pauli_frame};
use bellmax::invariants::{entanglement_entropy, schmidt, three_tangle};
use bellmax::maximizer::{best_settings_step, seesaw_maximize, w_max_klyshko};
use bellmax::rng::seeded;
use bellmax::spin::observable_from_vector;
use bellmax::tensor::{eig_hermitian, ghz_state, schmidt_family_state, w_state};
use bellmax::{ChshSettings, ComplexMatrix, Error, KlyshkoSettings, PureState, SeesawConfig, UnitVector3, TSIRELSON};
use common::random_state;
use num_complex::Complex64;

/// Frozen planar-grid optima for cos θ|00⟩ + sin θ|11⟩.
const GISIN_ORACLE: [(f64, f64); 4] = [
    (PI / 12.0, 2.2360679774997902),
    (PI / 8.0, 2.4494897427831788),
    (PI / 6.0, 2.645751311064591),
    (PI / 5.0, 2.760078620030578),
];
/// Frozen planar-grid optimum of the Klyshko value on the W state.
const W_ORACLE: f64 = 3.0459560059918074;

/// Expectation of `⊗ₖ O(tₖ)` on a real state, `O(t) = sin t·σx + cos t·σz`,
/// summed directly over basis pairs.
fn planar_expectation(amps: &[f64], angles: &[f64]) -> f64 {
    let n = angles.len();
    let mut total = 0.0;
    for (i, &ai) in amps.iter().enumerate() {
        for (j, &aj) in amps.iter().enumerate() {
            let mut elem = 1.0;
            for (k, &t) in angles.iter().enumerate() {
                let shift = n - 1 - k;
                let (bi, bj) = ((i >> shift) & 1, (j >> shift) & 1);
                elem *= match (bi, bj) {
                    (0, 0) => t.cos(),
                    (1, 1) => -t.cos(),
                    _ => t.sin(),
                };
                if elem == 0.0 {
                    break;
                }
            }
            total += ai * elem * aj;
        }
    }
    total
}

/// Planar correlation tensor over axes (x, z), indexed `Σ axisₖ·2^(n−1−k)`.
fn planar_tensor(amps: &[f64], n: usize) -> Vec<f64> {
    (0..1usize << n)
        .map(|idx| {
            let angles: Vec<f64> = (0..n).map(|k| if (idx >> (n - 1 - k)) & 1 == 0 { PI / 2.0 } else { 0.0 }).collect();
            planar_expectation(amps, &angles)
        })
        .collect()
}

fn planar(t: f64) -> [f64; 2] {
    [t.sin(), t.cos()]
}

/// `T(u₁, …, u_{n−1}, ·)` as a planar vector.
fn open_last(tensor: &[f64], us: &[[f64; 2]]) -> [f64; 2] {
    let mut out = [0.0; 2];
    for (idx, &v) in tensor.iter().enumerate() {
        let n = us.len() + 1;
        let mut w = v;
        for (k, u) in us.iter().enumerate() {
            w *= u[(idx >> (n - 1 - k)) & 1];
        }
        out[idx & 1] += w;
    }
    out
}

fn len2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Grid search followed by repeated local zooms over `dim` angles.
fn grid_zoom(dim: usize, coarse: usize, f: impl Fn(&[f64]) -> f64) -> f64 {
    let mut best = (f64::NEG_INFINITY, vec![0.0; dim]);
    let mut idx = vec![0usize; dim];
    'grid: loop {
        let p: Vec<f64> = idx.iter().map(|&i| 2.0 * PI * i as f64 / coarse as f64).collect();
        let v = f(&p);
        if v > best.0 {
            best = (v, p);
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < coarse {
                continue 'grid;
            }
            *slot = 0;
        }
        break;
    }
    let mut step = 2.0 * PI / coarse as f64;
    for _ in 0..60 {
        let centre = best.1.clone();
        let mut idx = vec![0usize; dim];
        'zoom: loop {
            let p: Vec<f64> = centre.iter().zip(&idx).map(|(c, &i)| c + step * (i as f64 - 2.0) / 2.0).collect();
            let v = f(&p);
            if v > best.0 {
                best = (v, p);
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < 5 {
                    continue 'zoom;
                }
                *slot = 0;
            }
            break;
        }
        step *= 0.6;
    }
    best.0
}

/// Two qubits: optimal `b, b′` are closed-form for given `a, a′`.
fn chsh_planar_oracle(amps: &[f64]) -> f64 {
    let t = planar_tensor(amps, 2);
    grid_zoom(2, 360, |p| {
        let (a, ap) = (planar(p[0]), planar(p[1]));
        let plus = [a[0] + ap[0], a[1] + ap[1]];
        let minus = [a[0] - ap[0], a[1] - ap[1]];
        len2(open_last(&t, &[plus])) + len2(open_last(&t, &[minus]))
    })
}

/// Three qubits: `⟨B₃⟩ = c·(T(a′,b′,·) − T(a,b,·)) + c′·(T(a′,b,·) + T(a,b′,·))`.
fn klyshko_planar_oracle(amps: &[f64]) -> f64 {
    let t = planar_tensor(amps, 3);
    grid_zoom(4, 20, |p| {
        let (a, ap, b, bp) = (planar(p[0]), planar(p[1]), planar(p[2]), planar(p[3]));
        let u1 = open_last(&t, &[ap, bp]);
        let u2 = open_last(&t, &[a, b]);
        let v1 = open_last(&t, &[ap, b]);
        let v2 = open_last(&t, &[a, bp]);
        len2([u1[0] - u2[0], u1[1] - u2[1]]) + len2([v1[0] + v2[0], v1[1] + v2[1]])
    })
}

fn real_parts(psi: &PureState) -> Vec<f64> {
    psi.amplitudes().iter().map(|z| z.re).collect()
}

fn frozen_max(psi: PureState, restarts: usize) -> f64 {
    let n = psi.n_qubits();
    let cfg = SeesawConfig { restarts, frozen_state: Some(psi), ..SeesawConfig::new(n) };
    seesaw_maximize(&cfg).unwrap().value
}

#[test]
fn planar_oracle_reproduces_frozen_gisin_values() {
    for (theta, frozen) in GISIN_ORACLE {
        let oracle = chsh_planar_oracle(&real_parts(&schmidt_family_state(theta)));
        assert!((oracle - frozen).abs() <= 1e-9, "θ={theta}: {oracle} vs {frozen}");
    }
}

#[test]
fn frozen_state_seesaw_matches_gisin_oracle() {
    for (theta, frozen) in GISIN_ORACLE {
        let value = frozen_max(schmidt_family_state(theta), 20);
        assert!((value - frozen).abs() <= 1e-6, "θ={theta}: {value} vs {frozen}");
        assert!(value > 2.0);
    }
}

#[test]
fn product_state_respects_classical_bound() {
    let psi = PureState::basis(2, 0).unwrap();
    assert!((chsh_planar_oracle(&real_parts(&psi)) - 2.0).abs() <= 1e-9);
    assert!((frozen_max(psi.clone(), 20) - 2.0).abs() <= 1e-9);

    // A settings step from any start on |00⟩ lands on the classical value.
    let start = ChshSettings::random(&mut seeded(5));
    let stepped = best_settings_step(&psi, &start.into()).unwrap();
    assert!((psi.expectation(&stepped.operator()) - 2.0).abs() <= 1e-9);
}

#[test]
fn w_state_falls_short_of_the_klyshko_maximum() {
    let oracle = klyshko_planar_oracle(&real_parts(&w_state()));
    assert!((oracle - W_ORACLE).abs() <= 1e-8, "{oracle}");
    let value = w_max_klyshko(200, 0).unwrap();
    assert!((value - W_ORACLE).abs() <= 1e-6, "{value}");
    assert!(value > 3.0 && value < 3.5);
    assert_eq!(value.to_bits(), w_max_klyshko(200, 0).unwrap().to_bits());
}

#[test]
fn standard_chsh_operator_matches_hand_built_matrix() {
    // √2(σz⊗σz + σx⊗σx): block [[1, 1], [1, 1]] on {|00⟩, |11⟩}, [[−1, 1], [1, −1]] on {|01⟩, |10⟩}.
    let r = |x: f64| Complex64::new(SQRT_2 * x, 0.0);
    let expected = ComplexMatrix::from_rows(&[
        [r(1.0), r(0.0), r(0.0), r(1.0)],
        [r(0.0), r(-1.0), r(1.0), r(0.0)],
        [r(0.0), r(1.0), r(-1.0), r(0.0)],
        [r(1.0), r(0.0), r(0.0), r(1.0)],
    ]);
    let b = chsh_operator(&ChshSettings::standard());
    assert!((&b - &expected).max_abs() <= 1e-15);
    let values = eig_hermitian(&b).unwrap().values;
    for (v, e) in values.iter().zip([-TSIRELSON, 0.0, 0.0, TSIRELSON]) {
        assert!((v - e).abs() <= 1e-12);
    }
}

/// `4|p₁² − 4p₀p₂|` with `det(A₀ + xA₁) = p₀ + p₁x + p₂x²`, `(A_k)_{jl} = ψ_{kjl}`.
fn hyperdeterminant_tangle(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    let (a0, a1) = (&a[0..4], &a[4..8]);
    let det = |m: &[Complex64]| m[0] * m[3] - m[1] * m[2];
    let p0 = det(a0);
    let p2 = det(a1);
    let p1 = a0[0] * a1[3] + a1[0] * a0[3] - a0[1] * a1[2] - a1[1] * a0[2];
    4.0 * (p1 * p1 - p0 * p2 * 4.0).norm()
}

#[test]
fn three_tangle_matches_hyperdeterminant() {
    assert!((three_tangle(&ghz_state()).unwrap() - 1.0).abs() <= 1e-9);
    assert!(three_tangle(&w_state()).unwrap().abs() <= 1e-9);
    assert!(three_tangle(&PureState::basis(3, 0).unwrap()).unwrap().abs() <= 1e-15);
    assert!((hyperdeterminant_tangle(&ghz_state()) - 1.0).abs() <= 1e-15);
    let mut rng = seeded(31);
    for _ in 0..200 {
        let psi = random_state(&mut rng, 3);
        assert!((three_tangle(&psi).unwrap() - hyperdeterminant_tangle(&psi)).abs() <= 1e-12);
    }
}

#[test]
fn schmidt_family_invariants() {
    let psi = schmidt_family_state(PI / 6.0);
    let c = schmidt(&psi).unwrap().coefficients;
    assert!((c[0] - (PI / 6.0).cos()).abs() <= 1e-12 && (c[1] - 0.5).abs() <= 1e-12);
    // Binary entropy at sin²(π/6) = 1/4.
    let h = -(0.25_f64 * 0.25_f64.log2() + 0.75 * 0.75_f64.log2());
    assert!((entanglement_entropy(&psi).unwrap() - h).abs() <= 1e-12);
    assert!((h - 0.8112781244591328).abs() <= 1e-15);
}

#[test]
fn pauli_frame_of_rotated_pair() {
    let y = observable_from_vector(UnitVector3::Y);
    let minus_x = observable_from_vector(UnitVector3::X.neg());
    let f = pauli_frame(&y, &minus_x).unwrap();
    // ⟨1|σy|0⟩ = i = e^{−i·3π/2}.
    assert!((f.phase - 1.5 * PI).abs() <= 1e-12);
    assert!(matches!(pauli_frame(&minus_x, &minus_x), Err(Error::NotOrthogonal { .. })));
}

#[test]
fn amplitude_balance_detects_imbalance() {
    let s = KlyshkoSettings::ghz_optimal();
    assert!(amplitude_balance_residual(&ghz_state(), &s).unwrap() <= 1e-12);

    let (a, b) = (0.9_f64, (1.0 - 0.81_f64).sqrt());
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0] = Complex64::new(a, 0.0);
    amps[7] = Complex64::new(b, 0.0);
    let skewed = PureState::new(amps).unwrap();
    let r = amplitude_balance_residual(&skewed, &s).unwrap();
    assert!((r - 4.0 * (a - b)).abs() <= 1e-12 && r > 0.1);

    let r0 = amplitude_balance_residual(&PureState::basis(3, 0).unwrap(), &s).unwrap();
    assert!((r0 - 4.0).abs() <= 1e-12);

    assert!(canonicalize_three_qubit(&w_state(), &s).is_err());
}
