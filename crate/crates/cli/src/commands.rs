//! Subcommand bodies. Each returns the JSON document for stdout plus a
//! success flag; errors carry their own exit code.

use bellmax::bell_ops::{
    chsh_square_residual, cross_norm_residual, klyshko_decomposition_residual, klyshko_square_residual,
};
use bellmax::canonical::{canonicalize_three_qubit, canonicalize_two_qubit};
use bellmax::invariants::{certify_target_class, entanglement_entropy, schmidt, three_tangle};
use bellmax::{
    rng, CanonicalDecomposition, ChshSettings, Error, KlyshkoSettings, MaximizerResult, PureState, SeesawConfig,
    Settings,
};
use serde::Serialize;

use crate::docs::{matrix_entries, read_json, SettingsDocument, StateDocument};
use crate::{json, CanonicalizeArgs, CliError, IdentitiesArgs, InvariantsArgs, MaximizeArgs};

/// Identity residuals above this fail the `identities` check.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Canonicalization succeeds when the reconstructed fidelity reaches `1 − FIDELITY_TOL`.
pub const FIDELITY_TOL: f64 = 1e-8;

pub struct Outcome {
    pub json: String,
    pub success: bool,
    pub failure_note: String,
}

fn emit<T: Serialize>(doc: &T, success: bool, failure_note: impl Into<String>) -> Result<Outcome, CliError> {
    let json = json::to_string(doc).map_err(|e| CliError::Input(format!("serializing output: {e}")))?;
    Ok(Outcome { json, success, failure_note: failure_note.into() })
}

fn library_error(e: Error) -> CliError {
    match e {
        Error::QubitCount(_)
        | Error::Dimension(_)
        | Error::NotUnit { .. }
        | Error::NotNormalized { .. }
        | Error::NonFinite
        | Error::NotSquare { .. }
        | Error::NotHermitian { .. } => CliError::Input(e.to_string()),
        _ => CliError::Precondition(e.to_string()),
    }
}

fn qubits_flag(q: usize) -> Result<usize, CliError> {
    match q {
        2 | 3 => Ok(q),
        n => Err(CliError::Input(format!("--qubits must be 2 or 3, got {n}"))),
    }
}

#[derive(Serialize)]
struct IdentityCheck {
    name: &'static str,
    max_residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct IdentitiesReport {
    qubits: usize,
    samples: usize,
    tolerance: f64,
    identities: Vec<IdentityCheck>,
    all_pass: bool,
}

pub fn identities(args: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let samples: Vec<Settings> = match (&args.settings, args.random) {
        (Some(path), _) => {
            let s = read_json::<SettingsDocument>(path)?.to_settings()?;
            if let Some(q) = args.qubits {
                if q != s.n_qubits() {
                    return Err(CliError::Input(format!(
                        "--qubits {q} contradicts a {}-qubit settings file",
                        s.n_qubits()
                    )));
                }
            }
            vec![s]
        }
        (None, Some(n)) => {
            if n == 0 {
                return Err(CliError::Input("--random needs at least one sample".into()));
            }
            let q = qubits_flag(args.qubits.unwrap_or(2))?;
            let mut rng = rng::seeded(args.seed);
            (0..n)
                .map(|_| match q {
                    2 => ChshSettings::random(&mut rng).into(),
                    _ => KlyshkoSettings::random(&mut rng).into(),
                })
                .collect()
        }
        (None, None) => return Err(CliError::Input("give --settings FILE or --random N".into())),
    };
    let qubits = samples[0].n_qubits();
    eprintln!("checking identities on {} {qubits}-qubit setting(s)", samples.len());

    let mut names: Vec<&'static str> = vec!["chsh_square", "cross_norm"];
    if qubits == 3 {
        names.extend(["klyshko_square", "klyshko_decomposition"]);
    }
    let mut worst = vec![0.0_f64; names.len()];
    for s in &samples {
        let residuals = match s {
            Settings::Chsh(c) => vec![chsh_square_residual(c), cross_norm_residual(s)],
            Settings::Klyshko(k) => vec![
                chsh_square_residual(&k.ab()),
                cross_norm_residual(s),
                klyshko_square_residual(k),
                klyshko_decomposition_residual(k),
            ],
        };
        for (w, r) in worst.iter_mut().zip(residuals) {
            // NaN must not slip past the check.
            *w = if r.is_nan() { f64::NAN } else { w.max(r) };
        }
    }
    let identities: Vec<IdentityCheck> = names
        .into_iter()
        .zip(worst)
        .map(|(name, max_residual)| IdentityCheck { name, max_residual, pass: max_residual <= IDENTITY_TOL })
        .collect();
    let all_pass = identities.iter().all(|c| c.pass);
    let report = IdentitiesReport { qubits, samples: samples.len(), tolerance: IDENTITY_TOL, identities, all_pass };
    emit(&report, all_pass, "identity residual above tolerance")
}

#[derive(Serialize)]
struct MaximizeReport {
    qubits: usize,
    value: f64,
    settings: SettingsDocument,
    state: StateDocument,
    orthogonality_residual: f64,
    iterations: usize,
    restarts_used: usize,
    best_restart: usize,
    converged: bool,
    frozen_state: bool,
    seed: u64,
}

pub fn maximize(args: &MaximizeArgs) -> Result<Outcome, CliError> {
    let frozen = match &args.state {
        Some(path) => Some(read_json::<StateDocument>(path)?.to_state()?),
        None => None,
    };
    let qubits = match (args.qubits, &frozen) {
        (Some(q), Some(psi)) if q != psi.n_qubits() => {
            return Err(CliError::Input(format!("--qubits {q} contradicts a {}-qubit state file", psi.n_qubits())))
        }
        (Some(q), _) => qubits_flag(q)?,
        (None, Some(psi)) => psi.n_qubits(),
        (None, None) => 2,
    };
    if args.restarts == 0 {
        return Err(CliError::Input("--restarts must be at least 1".into()));
    }
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be positive, got {}", args.tol)));
    }
    let cfg = SeesawConfig {
        n_qubits: qubits,
        restarts: args.restarts,
        tol: args.tol,
        max_iters: args.max_iters,
        seed: args.seed,
        frozen_state: frozen.clone(),
    };
    eprintln!("see-saw: {qubits} qubits, {} restarts, seed {}", args.restarts, args.seed);
    let r: MaximizerResult = bellmax::maximizer::seesaw_maximize(&cfg).map_err(library_error)?;
    eprintln!("best value {} from restart {}", r.value, r.best_restart);
    let report = MaximizeReport {
        qubits,
        value: r.value,
        settings: SettingsDocument::from_settings(&r.settings),
        state: StateDocument::from_state(&r.state),
        orthogonality_residual: r.orthogonality_residual,
        iterations: r.iterations,
        restarts_used: r.restarts_used,
        best_restart: r.best_restart,
        converged: r.converged,
        frozen_state: frozen.is_some(),
        seed: args.seed,
    };
    emit(&report, true, "")
}

#[derive(Serialize)]
struct PhasesDoc {
    alpha: f64,
    beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<f64>,
}

#[derive(Serialize)]
struct ChecksDoc {
    violation: f64,
    cross_term_max: f64,
    modulus_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_relation_residual: Option<f64>,
    eigen_condition_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitude_balance_residual: Option<f64>,
}

#[derive(Serialize)]
struct CanonicalReport {
    qubits: usize,
    target: &'static str,
    /// One row-major list of `[re, im]` pairs per site.
    unitaries: Vec<Vec<[f64; 2]>>,
    phases: PhasesDoc,
    fidelity: f64,
    unitarity_residual: f64,
    checks: ChecksDoc,
}

impl CanonicalReport {
    fn new(qubits: usize, d: &CanonicalDecomposition) -> Self {
        let p = d.phases;
        let c = d.checks;
        Self {
            qubits,
            target: d.target.name(),
            unitaries: d.local_unitaries.iter().map(matrix_entries).collect(),
            phases: PhasesDoc { alpha: p.alpha, beta: p.beta, gamma: p.gamma, theta: p.theta, phi: p.phi },
            fidelity: d.fidelity,
            unitarity_residual: d.unitarity_residual(),
            checks: ChecksDoc {
                violation: c.violation,
                cross_term_max: c.cross_term_max,
                modulus_deviation: c.modulus_deviation,
                phase_relation_residual: c.phase_relation_residual,
                eigen_condition_residual: c.eigen_condition_residual,
                amplitude_balance_residual: c.amplitude_balance_residual,
            },
        }
    }
}

pub fn canonicalize(args: &CanonicalizeArgs) -> Result<Outcome, CliError> {
    let psi = read_json::<StateDocument>(&args.state)?.to_state()?;
    let settings = read_json::<SettingsDocument>(&args.settings)?.to_settings()?;
    if psi.n_qubits() != settings.n_qubits() {
        return Err(CliError::Input(format!(
            "{}-qubit state with {}-qubit settings",
            psi.n_qubits(),
            settings.n_qubits()
        )));
    }
    let d = match &settings {
        Settings::Chsh(s) => canonicalize_two_qubit(&psi, s),
        Settings::Klyshko(s) => canonicalize_three_qubit(&psi, s),
    }
    .map_err(library_error)?;
    let ok = d.fidelity >= 1.0 - FIDELITY_TOL;
    emit(
        &CanonicalReport::new(psi.n_qubits(), &d),
        ok,
        format!("reconstruction fidelity {} below 1 - {FIDELITY_TOL}", d.fidelity),
    )
}

#[derive(Serialize)]
struct SchmidtDoc {
    coefficients: [f64; 2],
}

#[derive(Serialize)]
struct InvariantsReport {
    qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    schmidt: Option<SchmidtDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    three_tangle: Option<f64>,
    class: &'static str,
}

fn invariants_of(psi: &PureState) -> Result<InvariantsReport, CliError> {
    let (schmidt_doc, entropy, tangle) = match psi.n_qubits() {
        2 => {
            let sf = schmidt(psi).map_err(library_error)?;
            let h = entanglement_entropy(psi).map_err(library_error)?;
            (Some(SchmidtDoc { coefficients: sf.coefficients }), Some(h), None)
        }
        _ => (None, None, Some(three_tangle(psi).map_err(library_error)?)),
    };
    Ok(InvariantsReport {
        qubits: psi.n_qubits(),
        schmidt: schmidt_doc,
        entropy,
        three_tangle: tangle,
        class: certify_target_class(psi).name(),
    })
}

pub fn invariants(args: &InvariantsArgs) -> Result<Outcome, CliError> {
    let psi = read_json::<StateDocument>(&args.state)?.to_state()?;
    emit(&invariants_of(&psi)?, true, "")
}
