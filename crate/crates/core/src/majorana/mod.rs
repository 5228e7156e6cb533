//! Majorana monomials with exact Z4 phases and the braid gates acting on
//! them by conjugation.

mod circuit;
mod gate;
mod string;

pub use circuit::{circuit_matrix, conjugate_circuit, invert, Circuit, GateCounts};
pub use gate::{conjugate, gate_matrix, BraidGate, BraidKind, Direction};
pub use string::MajoranaString;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajoranaError {
    #[error("mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("mode {0} repeated")]
    RepeatedMode(usize),
    #[error("expected {expected} modes, found {found}")]
    ModeCountMismatch { expected: usize, found: usize },
    #[error("gate needs {expected} modes, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("cannot parse gate `{0}`")]
    Parse(String),
}
