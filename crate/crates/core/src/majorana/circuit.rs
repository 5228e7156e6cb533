use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitlinalg::BitMatrix;

use super::{BraidGate, BraidKind, MajoranaError, MajoranaString};

/// An ordered braid-gate sequence on a fixed number of modes.
///
/// Gates act left to right: conjugating by the circuit conjugates by
/// `gates[0]` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Circuit {
    n_modes: usize,
    gates: Vec<BraidGate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub braid2: usize,
    pub braid4: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.braid2 + self.braid4
    }
}

impl Circuit {
    pub fn new(n_modes: usize) -> Self {
        Self {
            n_modes,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_modes: usize, gates: Vec<BraidGate>) -> Result<Self, MajoranaError> {
        for g in &gates {
            g.check_range(n_modes)?;
        }
        Ok(Self { n_modes, gates })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn gates(&self) -> &[BraidGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: BraidGate) -> Result<(), MajoranaError> {
        gate.check_range(self.n_modes)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = BraidGate>) -> Result<(), MajoranaError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            match g.kind() {
                BraidKind::Braid2 => counts.braid2 += 1,
                BraidKind::Braid4 => counts.braid4 += 1,
            }
        }
        counts
    }

    /// Sequential conjugation through every gate.
    pub fn conjugate(&self, m: &MajoranaString) -> Result<MajoranaString, MajoranaError> {
        if m.n_modes() != self.n_modes {
            return Err(MajoranaError::ModeCountMismatch {
                expected: self.n_modes,
                found: m.n_modes(),
            });
        }
        let mut out = m.clone();
        for g in &self.gates {
            g.conjugate_in_place(&mut out);
        }
        Ok(out)
    }

    /// Binary matrix of the circuit: the product of gate matrices, last gate leftmost.
    pub fn matrix(&self) -> BitMatrix {
        let n = self.n_modes;
        let mut columns: Vec<_> = BitMatrix::identity(n).columns().to_vec();
        // Each gate matrix acts on every column image; only support rows change.
        for g in &self.gates {
            for col in columns.iter_mut() {
                if g.overlap(col) % 2 == 1 {
                    for &a in g.modes() {
                        col.flip(a);
                    }
                }
            }
        }
        BitMatrix::from_columns(n, columns).expect("columns have n rows")
    }

    /// Reversed gate order with every direction flipped.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_modes: self.n_modes,
            gates: self.gates.iter().rev().map(BraidGate::inverse).collect(),
        }
    }
}

pub fn conjugate_circuit(c: &Circuit, m: &MajoranaString) -> Result<MajoranaString, MajoranaError> {
    c.conjugate(m)
}

pub fn circuit_matrix(c: &Circuit) -> BitMatrix {
    c.matrix()
}

pub fn invert(c: &Circuit) -> Circuit {
    c.inverse()
}

impl fmt::Display for Circuit {
    /// One gate per line in canonical text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(n: usize, modes: &[usize], phase: u8) -> MajoranaString {
        MajoranaString::from_modes(n, modes, phase).unwrap()
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(4);
        let m = ms(4, &[0, 3], 1);
        assert_eq!(c.conjugate(&m).unwrap(), m);
        assert_eq!(c.matrix(), BitMatrix::identity(4));
        assert_eq!(c.inverse(), c);
    }

    #[test]
    fn braid2_has_order_four_on_operators() {
        let g = BraidGate::braid2(0, 1).unwrap();
        let c = Circuit::from_gates(2, vec![g; 4]).unwrap();
        let m = ms(2, &[0], 0);
        assert_eq!(c.conjugate(&m).unwrap(), m);
        let two = Circuit::from_gates(2, vec![g; 2]).unwrap();
        assert_eq!(two.conjugate(&m).unwrap(), ms(2, &[0], 2));
    }

    #[test]
    fn single_gate_circuit_matches_gate() {
        let g = BraidGate::braid4(0, 1, 3, 5).unwrap();
        let c = Circuit::from_gates(6, vec![g]).unwrap();
        assert_eq!(c.matrix(), g.matrix(6).unwrap());
        let m = ms(6, &[1, 2], 1);
        assert_eq!(c.conjugate(&m).unwrap(), g.conjugate(&m).unwrap());
    }

    #[test]
    fn matrix_is_ordered_product() {
        let g1 = BraidGate::braid2(0, 2).unwrap();
        let g2 = BraidGate::braid4(0, 1, 2, 3).unwrap();
        let c = Circuit::from_gates(4, vec![g1, g2]).unwrap();
        let expected = g2.matrix(4).unwrap().mul(&g1.matrix(4).unwrap()).unwrap();
        assert_eq!(c.matrix(), expected);
    }

    #[test]
    fn inverse_undoes_phases() {
        let c = Circuit::from_gates(
            6,
            vec![
                BraidGate::braid4(0, 1, 2, 3).unwrap(),
                BraidGate::braid2(2, 5).unwrap(),
                BraidGate::braid4(1, 3, 4, 5).unwrap().inverse(),
            ],
        )
        .unwrap();
        let inv = c.inverse();
        assert_eq!(inv.inverse(), c);
        for mask in 0u32..64 {
            let modes: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            for phase in 0..4 {
                let m = ms(6, &modes, phase);
                assert_eq!(inv.conjugate(&c.conjugate(&m).unwrap()).unwrap(), m);
            }
        }
    }

    #[test]
    fn push_rejects_out_of_range() {
        let mut c = Circuit::new(3);
        assert!(c.push(BraidGate::braid2(1, 3).unwrap()).is_err());
        assert!(c.conjugate(&ms(4, &[0], 0)).is_err());
    }

    #[test]
    fn counts() {
        let c = Circuit::from_gates(
            4,
            vec![BraidGate::braid2(0, 1).unwrap(), BraidGate::braid4(0, 1, 2, 3).unwrap()],
        )
        .unwrap();
        assert_eq!(c.gate_counts(), GateCounts { braid2: 1, braid4: 1 });
        assert_eq!(c.to_string(), "B2 +(0,1)\nB4 +(0,1,2,3)\n");
    }
}
