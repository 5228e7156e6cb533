//! Majorana stabilizer codes as phase-tracked generator tables.

use std::fmt;

use thiserror::Error;

use crate::bitlinalg::{pairing_unchecked, BitVec, ColumnBasis};
use crate::majorana::{Circuit, MajoranaError, MajoranaString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("number of modes {0} is not even")]
    OddModeCount(usize),
    #[error("generator {index} has {found} modes, code has {expected}")]
    ModeCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {0} has odd weight")]
    OddWeight(usize),
    #[error("generator {0} is not Hermitian (phase inconsistent with weight)")]
    BadPhase(usize),
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("{generators} generators exceed the maximum {max} for this mode count")]
    TooManyGenerators { generators: usize, max: usize },
}

/// A Majorana stabilizer code: `n_modes` Majorana modes and `r`
/// generators. Construction does not validate; call [`StabilizerCode::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n_modes: usize,
    generators: Vec<MajoranaString>,
    name: Option<String>,
}

impl StabilizerCode {
    pub fn new(n_modes: usize, generators: Vec<MajoranaString>) -> Self {
        Self {
            n_modes,
            generators,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn generators(&self) -> &[MajoranaString] {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> &MajoranaString {
        &self.generators[j]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Number of encoded qubits `N/2 − r` (saturating).
    pub fn num_logicals(&self) -> usize {
        (self.n_modes / 2).saturating_sub(self.generators.len())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Checks mode counts, then weights, phases, commutation, independence
    /// and generator count, in that order, returning the first violation.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !self.n_modes.is_multiple_of(2) {
            return Err(ValidationError::OddModeCount(self.n_modes));
        }
        for (j, g) in self.generators.iter().enumerate() {
            if g.n_modes() != self.n_modes {
                return Err(ValidationError::ModeCountMismatch {
                    index: j,
                    expected: self.n_modes,
                    found: g.n_modes(),
                });
            }
        }
        if let Some(j) = self.generators.iter().position(|g| g.weight() % 2 == 1) {
            return Err(ValidationError::OddWeight(j));
        }
        if let Some(j) = self.generators.iter().position(|g| !g.is_hermitian()) {
            return Err(ValidationError::BadPhase(j));
        }
        for (j, a) in self.generators.iter().enumerate() {
            for (k, b) in self.generators.iter().enumerate().skip(j + 1) {
                if pairing_unchecked(a.bits(), b.bits()) {
                    return Err(ValidationError::Anticommuting(j, k));
                }
            }
        }
        let mut basis = ColumnBasis::new(self.n_modes);
        if !self.generators.iter().all(|g| basis.insert(g.bits())) {
            return Err(ValidationError::Dependent);
        }
        let max = self.n_modes / 2;
        if self.generators.len() > max {
            return Err(ValidationError::TooManyGenerators {
                generators: self.generators.len(),
                max,
            });
        }
        Ok(())
    }

    /// Conjugates every generator through the circuit.
    pub fn apply_circuit(&self, c: &Circuit) -> Result<StabilizerCode, MajoranaError> {
        let generators = self
            .generators
            .iter()
            .map(|g| c.conjugate(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StabilizerCode {
            n_modes: self.n_modes,
            generators,
            name: self.name.clone(),
        })
    }

    /// Whether the total parity (all-ones bitstring) lies in the generator span.
    pub fn contains_total_parity(&self) -> bool {
        let basis = ColumnBasis::from_columns(self.n_modes, self.generators.iter().map(|g| g.bits()));
        basis.contains(&BitVec::ones(self.n_modes))
    }

    pub fn is_decoded(&self, target: &DecodedTarget) -> bool {
        self.n_modes == target.n_modes
            && self.generators.len() == target.r
            && self
                .generators
                .iter()
                .enumerate()
                .all(|(j, g)| *g == target.generator(j))
    }

    /// True iff `m` commutes with every generator.
    pub fn in_normalizer(&self, m: &MajoranaString) -> Result<bool, MajoranaError> {
        if m.n_modes() != self.n_modes {
            return Err(MajoranaError::ModeCountMismatch {
                expected: self.n_modes,
                found: m.n_modes(),
            });
        }
        Ok(self.generators.iter().all(|g| !pairing_unchecked(g.bits(), m.bits())))
    }

    /// The same code on `n_modes + offset` modes, every mode shifted up.
    pub fn embedded(&self, offset: usize) -> StabilizerCode {
        StabilizerCode {
            n_modes: self.n_modes + offset,
            generators: self.generators.iter().map(|g| g.embedded(offset)).collect(),
            name: self.name.clone(),
        }
    }

    /// Replaces generator `i` by the product `g_i · g_j`.
    pub fn multiply_generator(&mut self, i: usize, j: usize) {
        let product = self.generators[i]
            .multiply(&self.generators[j])
            .expect("generators share a mode count");
        self.generators[i] = product;
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(
                f,
                "{name}: {} modes, {} generators",
                self.n_modes,
                self.generators.len()
            )?;
        } else {
            writeln!(f, "{} modes, {} generators", self.n_modes, self.generators.len())?;
        }
        for g in &self.generators {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

/// The decoded form: generator `j` is `i c_{b+2j} c_{b+2j+1}` with `b` the pivot base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodedTarget {
    pub n_modes: usize,
    pub pivot_base: usize,
    pub r: usize,
}

impl DecodedTarget {
    pub fn new(n_modes: usize, pivot_base: usize, r: usize) -> Self {
        assert!(pivot_base + 2 * r <= n_modes, "decoded pairs exceed the mode count");
        Self { n_modes, pivot_base, r }
    }

    /// First mode of decoded pair `j`.
    pub fn pair_start(&self, j: usize) -> usize {
        self.pivot_base + 2 * j
    }

    pub fn generator(&self, j: usize) -> MajoranaString {
        let p = self.pair_start(j);
        MajoranaString::from_modes(self.n_modes, &[p, p + 1], 1).expect("pair in range")
    }

    pub fn code(&self) -> StabilizerCode {
        StabilizerCode::new(self.n_modes, (0..self.r).map(|j| self.generator(j)).collect())
    }

    /// Modes outside every decoded pair, ascending: ancilla modes below the
    /// pivot base, then the logical region.
    pub fn free_modes(&self) -> Vec<usize> {
        (0..self.pivot_base)
            .chain(self.pivot_base + 2 * self.r..self.n_modes)
            .collect()
    }

    /// Number of logical pairs after the decoded block.
    pub fn num_logical_pairs(&self) -> usize {
        (self.n_modes - self.pivot_base - 2 * self.r) / 2
    }

    /// First mode of logical pair `l`.
    pub fn logical_pair_start(&self, l: usize) -> usize {
        self.pivot_base + 2 * (self.r + l)
    }
}

pub fn validate(code: &StabilizerCode) -> Result<(), ValidationError> {
    code.validate()
}

pub fn apply_circuit(code: &StabilizerCode, c: &Circuit) -> Result<StabilizerCode, MajoranaError> {
    code.apply_circuit(c)
}

pub fn contains_total_parity(code: &StabilizerCode) -> bool {
    code.contains_total_parity()
}

pub fn is_decoded(code: &StabilizerCode, target: &DecodedTarget) -> bool {
    code.is_decoded(target)
}

pub fn in_normalizer(code: &StabilizerCode, m: &MajoranaString) -> Result<bool, MajoranaError> {
    code.in_normalizer(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorana::BraidGate;

    fn ms(n: usize, modes: &[usize], phase: u8) -> MajoranaString {
        MajoranaString::from_modes(n, modes, phase).unwrap()
    }

    #[test]
    fn anticommuting_generators_are_reported() {
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1], 1), ms(4, &[1, 2], 1)]);
        assert_eq!(code.validate(), Err(ValidationError::Anticommuting(0, 1)));
    }

    #[test]
    fn odd_weight_is_reported_first() {
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1, 2], 1)]);
        assert_eq!(code.validate(), Err(ValidationError::OddWeight(0)));
    }

    #[test]
    fn bad_phase_dependent_and_count() {
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1], 0)]);
        assert_eq!(code.validate(), Err(ValidationError::BadPhase(0)));
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1], 1), ms(4, &[0, 1], 3)]);
        assert_eq!(code.validate(), Err(ValidationError::Dependent));
        let code = StabilizerCode::new(3, vec![]);
        assert_eq!(code.validate(), Err(ValidationError::OddModeCount(3)));
    }

    #[test]
    fn total_parity_membership() {
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1, 2, 3], 0)]);
        assert!(code.contains_total_parity());
        let code = StabilizerCode::new(4, vec![ms(4, &[0, 1], 1)]);
        assert!(!code.contains_total_parity());
    }

    #[test]
    fn decoded_form_checks() {
        let target = DecodedTarget::new(6, 0, 2);
        let code = target.code();
        assert!(code.validate().is_ok());
        assert!(code.is_decoded(&target));
        let mut flipped = code.clone();
        flipped.generators[1] = flipped.generators[1].negated();
        assert!(!flipped.is_decoded(&target));
        assert!(!code.is_decoded(&DecodedTarget::new(6, 2, 2)));
    }

    #[test]
    fn apply_even_overlap_gate_leaves_code() {
        let code = StabilizerCode::new(2, vec![ms(2, &[0, 1], 1)]);
        let c = Circuit::from_gates(2, vec![BraidGate::braid2(0, 1).unwrap()]).unwrap();
        assert_eq!(code.apply_circuit(&c).unwrap(), code);
        assert_eq!(code.apply_circuit(&Circuit::new(2)).unwrap(), code);
    }

    #[test]
    fn normalizer_membership() {
        let code = StabilizerCode::new(2, vec![ms(2, &[0, 1], 1)]);
        assert!(!code.in_normalizer(&ms(2, &[0], 0)).unwrap());
        assert!(code.in_normalizer(code.generator(0)).unwrap());
        assert!(code.in_normalizer(&ms(3, &[0], 0)).is_err());
    }

    #[test]
    fn target_free_modes() {
        let t = DecodedTarget::new(10, 2, 2);
        assert_eq!(t.free_modes(), vec![0, 1, 6, 7, 8, 9]);
        assert_eq!(t.num_logical_pairs(), 2);
        assert_eq!(t.logical_pair_start(1), 8);
    }
}
