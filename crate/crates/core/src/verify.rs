//! Checks that a decoding circuit maps a code onto its decoded form.

use std::fmt;

use thiserror::Error;

use crate::majorana::{Circuit, MajoranaString};
use crate::oracle::{self, OracleError};
use crate::par::Execution;
use crate::tableau::{DecodedTarget, StabilizerCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("circuit acts on {circuit} modes but code plus {ancillas} ancillas has {expected}")]
    ModeCountMismatch {
        circuit: usize,
        expected: usize,
        ancillas: usize,
    },
    #[error("ancilla modes must be a prefix 0..a, got {0:?}")]
    AncillaLayout(Vec<usize>),
    #[error("{r} generators do not fit on {n_modes} modes after the ancillas")]
    TooManyGenerators { r: usize, n_modes: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    DecodedForm,
    Symplectic,
    Oracle,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::DecodedForm => "decoded-form",
            Check::Symplectic => "symplectic",
            Check::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub oracle: bool,
    pub exec: Execution,
}

/// Element of the decoded group covering the same pairs as `image`, or
/// `None` when `image` is not a union of decoded pairs.
fn decoded_element(image: &MajoranaString, target: &DecodedTarget) -> Option<MajoranaString> {
    let bits = image.bits();
    let mut acc = MajoranaString::identity(target.n_modes);
    let mut covered = 0;
    for j in 0..target.r {
        let a = target.pair_start(j);
        match (bits.get(a), bits.get(a + 1)) {
            (true, true) => {
                acc = acc.multiply(&target.generator(j)).expect("same modes");
                covered += 2;
            }
            (false, false) => {}
            _ => return None,
        }
    }
    (covered == bits.weight()).then_some(acc)
}

/// How the decoder's generator images relate to the decoded target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodedStatus {
    /// Generator `j` maps to `+i c_{b+2j} c_{b+2j+1}`.
    Exact,
    /// Every image is a product of decoded generators with matching sign,
    /// so the stabilizer groups agree.
    SameGroup,
    /// Generator `index` maps outside the decoded group or with the wrong sign.
    Failed { index: usize, image: MajoranaString },
}

pub fn decoded_status(code: &StabilizerCode, decoder: &Circuit, target: &DecodedTarget) -> DecodedStatus {
    let images = code.apply_circuit(decoder).expect("mode counts checked");
    if images.is_decoded(target) {
        return DecodedStatus::Exact;
    }
    for (j, img) in images.generators().iter().enumerate() {
        if decoded_element(img, target).as_ref() != Some(img) {
            return DecodedStatus::Failed {
                index: j,
                image: img.clone(),
            };
        }
    }
    DecodedStatus::SameGroup
}

/// Runs every requested check of `decoder` against `code`, whose modes sit
/// after the prefix `ancilla_modes`.
pub fn verify_decoder(
    code: &StabilizerCode,
    ancilla_modes: &[usize],
    decoder: &Circuit,
    opts: VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let a = ancilla_modes.len();
    if ancilla_modes.iter().enumerate().any(|(i, &m)| i != m) {
        return Err(VerifyError::AncillaLayout(ancilla_modes.to_vec()));
    }
    let expected = code.n_modes() + a;
    if decoder.n_modes() != expected {
        return Err(VerifyError::ModeCountMismatch {
            circuit: decoder.n_modes(),
            expected,
            ancillas: a,
        });
    }
    let r = code.num_generators();
    if a + 2 * r > expected {
        return Err(VerifyError::TooManyGenerators { r, n_modes: expected });
    }
    let working = code.embedded(a);
    let target = DecodedTarget::new(expected, a, r);
    let mut report = VerifyReport::default();

    let status = decoded_status(&working, decoder, &target);
    report.outcomes.push(CheckOutcome {
        check: Check::DecodedForm,
        passed: !matches!(status, DecodedStatus::Failed { .. }),
        detail: match &status {
            DecodedStatus::Exact => "every generator maps to its decoded pair with phase +i".into(),
            DecodedStatus::SameGroup => "images generate the decoded group (generating set differs)".into(),
            DecodedStatus::Failed { index, image } => format!("generator {index} maps to {image}"),
        },
    });

    let symplectic = decoder
        .matrix()
        .check_symplectic()
        .expect("circuit matrices are square");
    report.outcomes.push(CheckOutcome {
        check: Check::Symplectic,
        passed: symplectic,
        detail: if symplectic {
            "binary matrix preserves the fermionic symplectic form".into()
        } else {
            "binary matrix violates the fermionic symplectic form".into()
        },
    });

    if opts.oracle {
        report
            .outcomes
            .push(oracle_outcome(&working, decoder, &target, opts.exec));
    }
    Ok(report)
}

fn oracle_outcome(
    working: &StabilizerCode,
    decoder: &Circuit,
    target: &DecodedTarget,
    exec: Execution,
) -> CheckOutcome {
    let images = working.apply_circuit(decoder).expect("mode counts checked");
    let expected: Vec<MajoranaString> = images
        .generators()
        .iter()
        .enumerate()
        .map(|(j, img)| decoded_element(img, target).unwrap_or_else(|| target.generator(j)))
        .collect();
    let (passed, detail) = match oracle::maps_generators(decoder, working.generators(), &expected, exec) {
        Ok(true) => (
            true,
            format!(
                "dense conjugation agrees at dimension {}",
                oracle::dimension(decoder.n_modes())
            ),
        ),
        Ok(false) => (false, "dense conjugation disagrees with the decoded target".into()),
        Err(OracleError::DimensionTooLarge { n_modes }) => (
            false,
            format!("{n_modes} modes exceed the dense-oracle limit of {}", oracle::MAX_MODES),
        ),
        Err(e) => (false, e.to_string()),
    };
    CheckOutcome {
        check: Check::Oracle,
        passed,
        detail,
    }
}
