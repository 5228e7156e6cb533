//! Encoding and decoding circuits for Majorana stabilizer codes.
//!
//! Codes are tables of Majorana monomials (bitstring plus Z4 phase). The
//! synthesizer maps a code onto single-mode parities `i c_{2j} c_{2j+1}`
//! with quadratic and quartic braid gates, tracking every phase exactly,
//! and the encoder is the inverse circuit. A dense-matrix oracle gives an
//! independent check for small mode counts.

pub mod bitlinalg;
pub mod codes;
pub mod diagram;
pub mod format;
pub mod majorana;
pub mod oracle;
pub mod par;
pub mod synth;
pub mod tableau;
pub mod verify;

pub use bitlinalg::{BitMatrix, BitVec};
pub use codes::{kitaev_chain, shortest_code};
pub use majorana::{BraidGate, BraidKind, Circuit, Direction, MajoranaString};
pub use synth::{synthesize, synthesize_ancilla_free, synthesize_with_ancilla, SynthesisResult, Variant};
pub use tableau::{DecodedTarget, StabilizerCode, ValidationError};
