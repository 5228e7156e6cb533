//! TOML documents for codes and circuits.
//!
//! Both carry `format_version = 1`; unknown fields are rejected and mode
//! lists must be strictly ascending, 0-based.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::majorana::{BraidGate, BraidKind, Circuit, Direction, MajoranaError, MajoranaString};
use crate::tableau::{StabilizerCode, ValidationError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("modes must be strictly ascending: {0:?}")]
    Unsorted(Vec<usize>),
    #[error("direction must be +1 or -1, got {0}")]
    Direction(i64),
    #[error("invalid ancilla modes {0:?}")]
    Ancilla(Vec<usize>),
    #[error(transparent)]
    Majorana(#[from] MajoranaError),
    #[error("invalid code: {0}")]
    Invalid(#[from] ValidationError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n_modes: usize,
    #[serde(default)]
    generators: Vec<GeneratorDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    modes: Vec<usize>,
    phase_r: u8,
}

fn check_ascending(modes: &[usize]) -> Result<(), FormatError> {
    if modes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FormatError::Unsorted(modes.to_vec()));
    }
    Ok(())
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v != FORMAT_VERSION {
        return Err(FormatError::Version(v));
    }
    Ok(())
}

/// Parses a code document without running [`StabilizerCode::validate`].
pub fn parse_code_unchecked(text: &str) -> Result<StabilizerCode, FormatError> {
    let doc: CodeDoc = toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    check_version(doc.format_version)?;
    let mut generators = Vec::with_capacity(doc.generators.len());
    for g in &doc.generators {
        check_ascending(&g.modes)?;
        if g.phase_r > 3 {
            return Err(FormatError::Syntax(format!("phase_r {} outside 0..=3", g.phase_r)));
        }
        generators.push(MajoranaString::from_modes(doc.n_modes, &g.modes, g.phase_r)?);
    }
    let code = StabilizerCode::new(doc.n_modes, generators);
    Ok(match doc.name {
        Some(name) => code.with_name(name),
        None => code,
    })
}

/// Parses and validates a code document.
pub fn parse_code(text: &str) -> Result<StabilizerCode, FormatError> {
    let code = parse_code_unchecked(text)?;
    code.validate()?;
    Ok(code)
}

pub fn serialize_code(code: &StabilizerCode) -> String {
    let doc = CodeDoc {
        format_version: FORMAT_VERSION,
        name: code.name().map(str::to_string),
        n_modes: code.n_modes(),
        generators: code
            .generators()
            .iter()
            .map(|g| GeneratorDoc {
                modes: g.modes(),
                phase_r: g.phase(),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("code documents always serialize")
}

/// Which way a stored circuit runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircuitRole {
    Encoder,
    Decoder,
}

/// A circuit together with the wires reserved for ancilla modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDocument {
    pub role: CircuitRole,
    pub ancilla_modes: Vec<usize>,
    pub circuit: Circuit,
}

impl CircuitDocument {
    /// The decoding direction of the stored circuit.
    pub fn decoder(&self) -> Circuit {
        match self.role {
            CircuitRole::Decoder => self.circuit.clone(),
            CircuitRole::Encoder => self.circuit.inverse(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    format_version: u32,
    role: CircuitRole,
    n_modes: usize,
    #[serde(default)]
    ancilla_modes: Vec<usize>,
    #[serde(default)]
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: BraidKind,
    modes: Vec<usize>,
    direction: i64,
}

pub fn parse_circuit(text: &str) -> Result<CircuitDocument, FormatError> {
    let doc: CircuitDoc = toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    check_version(doc.format_version)?;
    check_ascending(&doc.ancilla_modes)?;
    if doc.ancilla_modes.iter().any(|&a| a >= doc.n_modes) {
        return Err(FormatError::Ancilla(doc.ancilla_modes));
    }
    let mut circuit = Circuit::new(doc.n_modes);
    for g in &doc.gates {
        check_ascending(&g.modes)?;
        let direction = Direction::from_sign(g.direction).ok_or(FormatError::Direction(g.direction))?;
        circuit.push(BraidGate::new(g.kind, &g.modes, direction)?)?;
    }
    Ok(CircuitDocument {
        role: doc.role,
        ancilla_modes: doc.ancilla_modes,
        circuit,
    })
}

pub fn serialize_circuit(doc: &CircuitDocument) -> String {
    let out = CircuitDoc {
        format_version: FORMAT_VERSION,
        role: doc.role,
        n_modes: doc.circuit.n_modes(),
        ancilla_modes: doc.ancilla_modes.clone(),
        gates: doc
            .circuit
            .gates()
            .iter()
            .map(|g| GateDoc {
                kind: g.kind(),
                modes: g.modes().to_vec(),
                direction: g.direction().sign() as i64,
            })
            .collect(),
    };
    toml::to_string(&out).expect("circuit documents always serialize")
}
