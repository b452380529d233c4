//! Two- and three-qubit Bell operators (CHSH and Mermin–Klyshko), their
//! operator-algebra identities, see-saw search for maximal violations, and a
//! constructive factorization of every maximal violator into local unitaries
//! acting on the Bell or GHZ state.
//!
//! Basis ordering is fixed crate-wide: qubit 1 is the most significant bit,
//! so `|q1 q2 q3>` has index `4*q1 + 2*q2 + q3`.

pub mod bell_ops;
pub mod canonical;
pub mod error;
pub mod invariants;
pub mod maximizer;
pub mod rng;
pub mod spin;
pub mod tensor;

pub use bell_ops::{ChshSettings, KlyshkoSettings, Settings};
pub use canonical::{CanonicalDecomposition, PauliFrame, Target};
pub use error::{Error, Result};
pub use invariants::{SchmidtForm, TargetClass};
pub use maximizer::{CorrelationTensor, MaximizerResult, SeesawConfig};
pub use spin::{SpinObservable, UnitVector3};
pub use tensor::{ComplexMatrix, PureState};

/// Tsirelson bound `2√2` for the CHSH operator.
pub const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Maximal quantum value of the three-qubit Klyshko operator.
pub const KLYSHKO_MAX: f64 = 4.0;

/// Local-realist bound shared by both inequalities.
pub const CLASSICAL_BOUND: f64 = 2.0;
