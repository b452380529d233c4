//! See-saw search for maximal Bell violations.
//!
//! For a fixed state the Bell expectation is multilinear in the local
//! direction vectors, `⟨B⟩ = Σ_terms ± T(x₁, x₂[, x₃])`, where `T` is the
//! state's Pauli correlation tensor. Each vector can therefore be replaced by
//! its normalized gradient, which is the exact maximizer over the unit
//! sphere with the others fixed. For fixed settings the best state is a top
//! eigenvector of the Bell operator. Alternating the two never decreases the
//! objective.

use rayon::prelude::*;

use crate::bell_ops::Settings;
use crate::error::{Error, Result};
use crate::rng::{derive_seeds, seeded};
use crate::spin::{norm3, pauli, UnitVector3};
use crate::tensor::{eig_hermitian, kron_all, w_state, ComplexMatrix, PureState};

/// Gradients shorter than this leave the previous direction in place.
pub const DEGENERATE_GRADIENT: f64 = 1e-12;

/// `(sign, primed-choice per site)` for `B₂ = AB + AB′ + A′B − A′B′`.
const CHSH_TERMS: [(f64, [usize; 2]); 4] = [(1.0, [0, 0]), (1.0, [0, 1]), (1.0, [1, 0]), (-1.0, [1, 1])];

/// `(sign, primed-choice per site)` for `B₃ = A′B′C + A′BC′ + AB′C′ − ABC`.
const KLYSHKO_TERMS: [(f64, [usize; 3]); 4] = [(1.0, [1, 1, 0]), (1.0, [1, 0, 1]), (1.0, [0, 1, 1]), (-1.0, [0, 0, 0])];

fn terms(n_qubits: usize) -> Vec<(f64, Vec<usize>)> {
    match n_qubits {
        2 => CHSH_TERMS.iter().map(|(s, c)| (*s, c.to_vec())).collect(),
        _ => KLYSHKO_TERMS.iter().map(|(s, c)| (*s, c.to_vec())).collect(),
    }
}

/// Pauli correlations `T_{ij[k]} = ⟨ψ|σᵢ⊗σⱼ[⊗σₖ]|ψ⟩`, axes ordered `(x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    order: usize,
    entries: Vec<f64>,
}

impl CorrelationTensor {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry for one axis per site (`0 = x, 1 = y, 2 = z`).
    pub fn get(&self, axes: &[usize]) -> f64 {
        assert_eq!(axes.len(), self.order);
        self.entries[flat_index(axes)]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Full contraction with one vector per site.
    pub fn contract(&self, vectors: &[[f64; 3]]) -> f64 {
        assert_eq!(vectors.len(), self.order);
        let mut total = 0.0;
        for (flat, t) in self.entries.iter().enumerate() {
            let axes = unflatten(flat, self.order);
            total += t * axes.iter().zip(vectors).map(|(&i, v)| v[i]).product::<f64>();
        }
        total
    }

    /// Contraction over every site except `site`, leaving a 3-vector.
    pub fn contract_except(&self, site: usize, vectors: &[[f64; 3]]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (flat, t) in self.entries.iter().enumerate() {
            let axes = unflatten(flat, self.order);
            let weight: f64 =
                axes.iter().enumerate().filter(|&(k, _)| k != site).map(|(k, &i)| vectors[k][i]).product();
            out[axes[site]] += t * weight;
        }
        out
    }
}

fn flat_index(axes: &[usize]) -> usize {
    axes.iter().fold(0, |acc, &i| acc * 3 + i)
}

fn unflatten(mut flat: usize, order: usize) -> Vec<usize> {
    let mut axes = vec![0; order];
    for k in (0..order).rev() {
        axes[k] = flat % 3;
        flat /= 3;
    }
    axes
}

/// Direct expectation values of every Pauli product.
pub fn correlation_tensor(psi: &PureState) -> CorrelationTensor {
    let order = psi.n_qubits();
    let paulis = [pauli::x(), pauli::y(), pauli::z()];
    let entries = (0..3usize.pow(order as u32))
        .map(|flat| {
            let axes = unflatten(flat, order);
            let factors: Vec<&ComplexMatrix> = axes.iter().map(|&i| &paulis[i]).collect();
            psi.expectation(&kron_all(&factors))
        })
        .collect();
    CorrelationTensor { order, entries }
}

/// `⟨B⟩` evaluated through the correlation tensor; `directions` are in
/// `(a, a′, b, b′[, c, c′])` order.
pub fn tensor_expectation(t: &CorrelationTensor, directions: &[[f64; 3]]) -> f64 {
    terms(t.order)
        .iter()
        .map(|(sign, choice)| {
            let vs: Vec<[f64; 3]> = choice.iter().enumerate().map(|(site, &c)| directions[2 * site + c]).collect();
            sign * t.contract(&vs)
        })
        .sum()
}

/// Gradient of `⟨B⟩` with respect to the direction at `(site, choice)`.
fn gradient(t: &CorrelationTensor, directions: &[[f64; 3]], site: usize, choice: usize) -> [f64; 3] {
    let mut g = [0.0; 3];
    for (sign, pick) in terms(t.order) {
        if pick[site] != choice {
            continue;
        }
        let vs: Vec<[f64; 3]> = pick.iter().enumerate().map(|(k, &c)| directions[2 * k + c]).collect();
        let part = t.contract_except(site, &vs);
        for i in 0..3 {
            g[i] += sign * part[i];
        }
    }
    g
}

/// Largest eigenvalue of a Bell operator and a unit eigenvector for it.
pub fn best_state(bell_op: &ComplexMatrix) -> Result<(f64, PureState)> {
    if bell_op.rows() != 4 && bell_op.rows() != 8 {
        return Err(Error::Dimension(format!("Bell operator of size {}", bell_op.rows())));
    }
    let e = eig_hermitian(bell_op)?;
    let top = e.values.len() - 1;
    Ok((e.values[top], PureState::normalized(e.vector(top))?))
}

/// One pass of exact per-vector updates, in `a, a′, b, b′[, c, c′]` order.
pub fn best_settings_step(psi: &PureState, settings: &Settings) -> Result<Settings> {
    if psi.n_qubits() != settings.n_qubits() {
        return Err(Error::Dimension(format!(
            "{}-qubit state with {}-qubit settings",
            psi.n_qubits(),
            settings.n_qubits()
        )));
    }
    let t = correlation_tensor(psi);
    let mut dirs: Vec<[f64; 3]> = settings.directions().iter().map(UnitVector3::get).collect();
    settings_step(&t, &mut dirs);
    Ok(Settings::from_directions(&to_units(&dirs)))
}

fn settings_step(t: &CorrelationTensor, dirs: &mut [[f64; 3]]) {
    for site in 0..t.order {
        for choice in 0..2 {
            let g = gradient(t, dirs, site, choice);
            let n = norm3(g);
            if n >= DEGENERATE_GRADIENT {
                dirs[2 * site + choice] = g.map(|x| x / n);
            }
        }
    }
}

fn to_units(dirs: &[[f64; 3]]) -> Vec<UnitVector3> {
    dirs.iter().map(|&d| UnitVector3::normalize(d).expect("directions stay unit")).collect()
}

#[derive(Debug, Clone)]
pub struct SeesawConfig {
    pub n_qubits: usize,
    pub restarts: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
    /// Settings-only mode: the state is held fixed.
    pub frozen_state: Option<PureState>,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self { n_qubits: 2, restarts: 50, tol: 1e-12, max_iters: 500, seed: 0, frozen_state: None }
    }
}

impl SeesawConfig {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct MaximizerResult {
    /// `⟨state|B(settings)|state⟩`.
    pub value: f64,
    pub state: PureState,
    pub settings: Settings,
    /// Full see-saw iterations used by the winning restart.
    pub iterations: usize,
    pub restarts_used: usize,
    pub best_restart: usize,
    pub converged: bool,
    pub orthogonality_residual: f64,
    /// Objective after every half-step of the winning restart, starting from
    /// the initial point.
    pub trace: Vec<f64>,
}

struct Run {
    value: f64,
    state: PureState,
    directions: Vec<[f64; 3]>,
    iterations: usize,
    converged: bool,
    trace: Vec<f64>,
}

fn operator_for(dirs: &[[f64; 3]]) -> ComplexMatrix {
    Settings::from_directions(&to_units(dirs)).operator()
}

fn single_run(cfg: &SeesawConfig, seed: u64) -> Result<Run> {
    let mut rng = seeded(seed);
    let mut dirs: Vec<[f64; 3]> = (0..2 * cfg.n_qubits).map(|_| UnitVector3::random(&mut rng).get()).collect();
    let mut state = match &cfg.frozen_state {
        Some(s) => s.clone(),
        None => best_state(&operator_for(&dirs))?.1,
    };
    let mut t = correlation_tensor(&state);
    let mut value = tensor_expectation(&t, &dirs);
    let mut trace = vec![value];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iters {
        iterations += 1;
        let previous = value;
        settings_step(&t, &mut dirs);
        value = tensor_expectation(&t, &dirs);
        trace.push(value);
        if cfg.frozen_state.is_none() {
            let (top, psi) = best_state(&operator_for(&dirs))?;
            state = psi;
            t = correlation_tensor(&state);
            value = top;
            trace.push(value);
        }
        if value - previous < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(Run { value, state, directions: dirs, iterations, converged, trace })
}

/// Best of `restarts` independent see-saw runs; deterministic in `seed`.
///
/// Restarts run in parallel. The winner is the largest final value, ties
/// going to the lowest restart index.
pub fn seesaw_maximize(cfg: &SeesawConfig) -> Result<MaximizerResult> {
    if !(2..=3).contains(&cfg.n_qubits) {
        return Err(Error::QubitCount(cfg.n_qubits));
    }
    if cfg.restarts == 0 {
        return Err(Error::Dimension("at least one restart is required".into()));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::Dimension(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    if let Some(s) = &cfg.frozen_state {
        if s.n_qubits() != cfg.n_qubits {
            return Err(Error::Dimension(format!(
                "frozen {}-qubit state for a {}-qubit search",
                s.n_qubits(),
                cfg.n_qubits
            )));
        }
    }
    let seeds = derive_seeds(cfg.seed, cfg.restarts);
    let runs = seeds.par_iter().map(|&s| single_run(cfg, s)).collect::<Result<Vec<_>>>()?;

    let (best_restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|acc, cand| if cand.1.value > acc.1.value { cand } else { acc })
        .expect("at least one restart");

    let settings = Settings::from_directions(&to_units(&best.directions));
    let value = best.state.expectation(&settings.operator());
    Ok(MaximizerResult {
        value,
        orthogonality_residual: settings.orthogonality_residual(),
        state: best.state,
        settings,
        iterations: best.iterations,
        restarts_used: cfg.restarts,
        best_restart,
        converged: best.converged,
        trace: best.trace,
    })
}

/// Largest Klyshko value found for the W state by settings-only see-saw.
pub fn w_max_klyshko(restarts: usize, seed: u64) -> Result<f64> {
    let cfg = SeesawConfig { n_qubits: 3, restarts, seed, frozen_state: Some(w_state()), ..SeesawConfig::default() };
    Ok(seesaw_maximize(&cfg)?.value)
}
