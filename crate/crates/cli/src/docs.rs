//! Settings and state file formats.

use std::fs;
use std::path::Path;

use bellmax::{ChshSettings, ComplexMatrix, KlyshkoSettings, PureState, Settings, UnitVector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Unit-norm slack accepted on input vectors and states before renormalizing.
pub const INPUT_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingsDocument {
    pub qubits: usize,
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub b: [f64; 3],
    pub b_prime: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_prime: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

fn unit(name: &str, v: [f64; 3]) -> Result<UnitVector3, CliError> {
    UnitVector3::with_tolerance(v, INPUT_NORM_TOL)
        .map_err(|e| CliError::Input(format!("settings vector `{name}`: {e}")))
}

impl SettingsDocument {
    pub fn to_settings(&self) -> Result<Settings, CliError> {
        let ab =
            [unit("a", self.a)?, unit("a_prime", self.a_prime)?, unit("b", self.b)?, unit("b_prime", self.b_prime)?];
        match (self.qubits, self.c, self.c_prime) {
            (2, None, None) => Ok(Settings::Chsh(ChshSettings::from_directions(ab))),
            (3, Some(c), Some(cp)) => {
                let [a, ap, b, bp] = ab;
                Ok(Settings::Klyshko(KlyshkoSettings::from_directions([
                    a,
                    ap,
                    b,
                    bp,
                    unit("c", c)?,
                    unit("c_prime", cp)?,
                ])))
            }
            (2, _, _) => Err(CliError::Input("two-qubit settings must not contain `c` or `c_prime`".into())),
            (3, _, _) => Err(CliError::Input("three-qubit settings need both `c` and `c_prime`".into())),
            (n, _, _) => Err(CliError::Input(format!("`qubits` must be 2 or 3, got {n}"))),
        }
    }

    pub fn from_settings(s: &Settings) -> Self {
        let d: Vec<[f64; 3]> = s.directions().iter().map(UnitVector3::get).collect();
        Self {
            qubits: s.n_qubits(),
            a: d[0],
            a_prime: d[1],
            b: d[2],
            b_prime: d[3],
            c: d.get(4).copied(),
            c_prime: d.get(5).copied(),
        }
    }
}

impl StateDocument {
    pub fn to_state(&self) -> Result<PureState, CliError> {
        let expected = match self.qubits {
            2 => 4,
            3 => 8,
            n => return Err(CliError::Input(format!("`qubits` must be 2 or 3, got {n}"))),
        };
        if self.amplitudes.len() != expected {
            return Err(CliError::Input(format!(
                "{} qubits need {expected} amplitudes, found {}",
                self.qubits,
                self.amplitudes.len()
            )));
        }
        let amps = self.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        PureState::with_tolerance(amps, INPUT_NORM_TOL).map_err(|e| CliError::Input(format!("state: {e}")))
    }

    pub fn from_state(psi: &PureState) -> Self {
        Self { qubits: psi.n_qubits(), amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect() }
    }
}

/// Row-major `[re, im]` pairs.
pub fn matrix_entries(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.as_slice().iter().map(|z| [z.re, z.im]).collect()
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
