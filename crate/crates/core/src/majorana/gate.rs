use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitlinalg::{BitMatrix, BitVec};

use super::{MajoranaError, MajoranaString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidKind {
    Braid2,
    Braid4,
}

impl BraidKind {
    pub fn arity(self) -> usize {
        match self {
            BraidKind::Braid2 => 2,
            BraidKind::Braid4 => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn sign(self) -> i8 {
        match self {
            Direction::Forward => 1,
            Direction::Reverse => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Direction::Forward),
            -1 => Some(Direction::Reverse),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

/// A π/4 braid rotation on two or four Majorana modes.
///
/// `Braid2{i,j}` forward is `exp(−π/4 c_i c_j)`; `Braid4{a,b,c,d}` forward
/// is `exp(iπ/4 c_a c_b c_c c_d)`. Both are `exp(iπ/4 V)` with
/// `V = i^{r'} [v]` Hermitian, where `r' = 1` for Braid2 and `r' = 0` for
/// Braid4; the reverse direction negates `V`. Modes are kept sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidGate {
    kind: BraidKind,
    modes: [usize; 4],
    direction: Direction,
}

impl BraidGate {
    pub fn new(kind: BraidKind, modes: &[usize], direction: Direction) -> Result<Self, MajoranaError> {
        if modes.len() != kind.arity() {
            return Err(MajoranaError::WrongArity {
                expected: kind.arity(),
                found: modes.len(),
            });
        }
        let mut sorted = [0usize; 4];
        sorted[..modes.len()].copy_from_slice(modes);
        sorted[..modes.len()].sort_unstable();
        if let Some(w) = sorted[..modes.len()].windows(2).find(|w| w[0] == w[1]) {
            return Err(MajoranaError::RepeatedMode(w[0]));
        }
        Ok(Self {
            kind,
            modes: sorted,
            direction,
        })
    }

    pub fn braid2(a: usize, b: usize) -> Result<Self, MajoranaError> {
        Self::new(BraidKind::Braid2, &[a, b], Direction::Forward)
    }

    pub fn braid4(a: usize, b: usize, c: usize, d: usize) -> Result<Self, MajoranaError> {
        Self::new(BraidKind::Braid4, &[a, b, c, d], Direction::Forward)
    }

    #[inline]
    pub fn kind(&self) -> BraidKind {
        self.kind
    }

    #[inline]
    pub fn direction(&self) -> Direction {
        self.direction
    }

    #[inline]
    pub fn modes(&self) -> &[usize] {
        &self.modes[..self.kind.arity()]
    }

    pub fn max_mode(&self) -> usize {
        *self.modes().last().expect("gates have at least two modes")
    }

    pub fn inverse(&self) -> Self {
        Self {
            direction: self.direction.flipped(),
            ..*self
        }
    }

    /// Exponent `r'` with `V = i^{r'} [v]` the Hermitian generator.
    pub fn generator_phase(&self) -> u8 {
        let base = match self.kind {
            BraidKind::Braid2 => 1,
            BraidKind::Braid4 => 0,
        };
        match self.direction {
            Direction::Forward => base,
            Direction::Reverse => base + 2,
        }
    }

    /// The Hermitian generator `V` as a monomial on `n_modes` modes.
    pub fn generator(&self, n_modes: usize) -> Result<MajoranaString, MajoranaError> {
        MajoranaString::from_modes(n_modes, self.modes(), self.generator_phase())
    }

    pub fn support(&self, n_modes: usize) -> Result<BitVec, MajoranaError> {
        self.check_range(n_modes)?;
        Ok(BitVec::from_indices(n_modes, self.modes()).expect("range checked"))
    }

    pub(crate) fn check_range(&self, n_modes: usize) -> Result<(), MajoranaError> {
        let max = self.max_mode();
        if max >= n_modes {
            return Err(MajoranaError::ModeOutOfRange { mode: max, n_modes });
        }
        Ok(())
    }

    /// Number of support modes occupied in `bits`.
    #[inline]
    pub(crate) fn overlap(&self, bits: &BitVec) -> usize {
        self.modes().iter().filter(|&&m| bits.get(m)).count()
    }

    /// Conjugation `U m U†` on a monomial; see [`conjugate`].
    pub fn conjugate(&self, m: &MajoranaString) -> Result<MajoranaString, MajoranaError> {
        conjugate(self, m)
    }

    /// Conjugates in place; the gate must be in range.
    pub(crate) fn conjugate_in_place(&self, m: &mut MajoranaString) {
        // Even support: pairing reduces to the overlap parity.
        if self.overlap(m.bits()).is_multiple_of(2) {
            return;
        }
        // Σ_{α∈v} #{β ∈ m : β < α}
        let reorder: usize = self.modes().iter().map(|&a| m.bits().count_below(a)).sum();
        let delta = 1 + self.generator_phase() + 2 * (reorder % 2) as u8;
        m.add_phase(delta);
        let bits = m.bits_mut();
        for &a in self.modes() {
            bits.flip(a);
        }
    }

    /// GF(2) action on bitstrings: identity off the support, `J − I` on it.
    pub fn matrix(&self, n_modes: usize) -> Result<BitMatrix, MajoranaError> {
        self.check_range(n_modes)?;
        let mut m = BitMatrix::identity(n_modes);
        for &a in self.modes() {
            for &b in self.modes() {
                m.set(a, b, a != b);
            }
        }
        Ok(m)
    }
}

/// `U m U†` for `U = exp(iπ/4 V)`.
///
/// With `p = pairing(v, m)`: if `p = 0` the monomial is unchanged;
/// otherwise the result is `i^{r + 1 + r' + 2ρ(v,m)} [v ⊕ m]` where
/// `ρ(v, m) = Σ_{α>β} v_α m_β` counts the reordering transpositions of `[v][m]`.
pub fn conjugate(g: &BraidGate, m: &MajoranaString) -> Result<MajoranaString, MajoranaError> {
    g.check_range(m.n_modes())?;
    let mut out = m.clone();
    g.conjugate_in_place(&mut out);
    Ok(out)
}

pub fn gate_matrix(g: &BraidGate, n_modes: usize) -> Result<BitMatrix, MajoranaError> {
    g.matrix(n_modes)
}

impl fmt::Display for BraidGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BraidKind::Braid2 => "B2",
            BraidKind::Braid4 => "B4",
        };
        let sign = match self.direction {
            Direction::Forward => '+',
            Direction::Reverse => '-',
        };
        write!(f, "{kind} {sign}(")?;
        for (i, m) in self.modes().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for BraidGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BraidGate {
    type Err = MajoranaError;

    /// Parses the canonical text form, e.g. `B4 +(0,2,3,4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MajoranaError::Parse(s.to_string());
        let s = s.trim();
        let (kind, rest) = s.split_once(' ').ok_or_else(bad)?;
        let kind = match kind {
            "B2" => BraidKind::Braid2,
            "B4" => BraidKind::Braid4,
            _ => return Err(bad()),
        };
        let rest = rest.trim();
        let direction = match rest.chars().next() {
            Some('+') => Direction::Forward,
            Some('-') => Direction::Reverse,
            _ => return Err(bad()),
        };
        let inner = rest[1..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let modes = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        BraidGate::new(kind, &modes, direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitlinalg::symplectic_pairing;

    fn ms(n: usize, modes: &[usize], phase: u8) -> MajoranaString {
        MajoranaString::from_modes(n, modes, phase).unwrap()
    }

    #[test]
    fn braid4_on_single_mode() {
        let g = BraidGate::braid4(0, 1, 2, 3).unwrap();
        assert_eq!(conjugate(&g, &ms(4, &[0], 0)).unwrap(), ms(4, &[1, 2, 3], 3));
    }

    #[test]
    fn braid2_rotates_pair() {
        let g = BraidGate::braid2(0, 1).unwrap();
        assert_eq!(conjugate(&g, &ms(2, &[0], 0)).unwrap(), ms(2, &[1], 0));
        assert_eq!(conjugate(&g, &ms(2, &[1], 0)).unwrap(), ms(2, &[0], 2));
    }

    #[test]
    fn even_overlap_is_identity() {
        let g = BraidGate::braid4(0, 1, 2, 3).unwrap();
        let m = ms(4, &[0, 1], 1);
        assert_eq!(conjugate(&g, &m).unwrap(), m);
    }

    #[test]
    fn out_of_range_gate_is_rejected() {
        let g = BraidGate::braid2(0, 5).unwrap();
        assert!(conjugate(&g, &ms(4, &[0], 0)).is_err());
        assert!(g.matrix(4).is_err());
    }

    #[test]
    fn constructor_sorts_and_rejects_repeats() {
        let g = BraidGate::braid4(3, 0, 2, 1).unwrap();
        assert_eq!(g.modes(), &[0, 1, 2, 3]);
        assert_eq!(BraidGate::braid2(1, 1).unwrap_err(), MajoranaError::RepeatedMode(1));
        assert!(BraidGate::new(BraidKind::Braid4, &[0, 1], Direction::Forward).is_err());
    }

    #[test]
    fn swap_and_all_but_diagonal_matrices() {
        let b2 = BraidGate::braid2(0, 1).unwrap().matrix(2).unwrap();
        assert!(!b2.get(0, 0) && b2.get(0, 1) && b2.get(1, 0) && !b2.get(1, 1));
        let b4 = BraidGate::braid4(0, 1, 2, 3).unwrap().matrix(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b4.get(i, j), i != j);
            }
        }
    }

    #[test]
    fn gate_matrix_is_symplectic_involution() {
        for g in [BraidGate::braid2(1, 4).unwrap(), BraidGate::braid4(0, 2, 3, 5).unwrap()] {
            let m = g.matrix(6).unwrap();
            assert_eq!(m.mul(&m).unwrap(), BitMatrix::identity(6));
            assert!(m.check_symplectic().unwrap());
        }
    }

    #[test]
    fn matrix_agrees_with_conjugation_bits() {
        let g = BraidGate::braid4(0, 2, 3, 5).unwrap();
        let mat = g.matrix(6).unwrap();
        for mask in 0u32..64 {
            let modes: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            let m = ms(6, &modes, 0);
            let img = conjugate(&g, &m).unwrap();
            assert_eq!(&mat.mul_vec(m.bits()).unwrap(), img.bits(), "mask {mask:b}");
        }
    }

    #[test]
    fn sparse_rule_matches_closed_form_pairing() {
        let g = BraidGate::braid4(1, 2, 4, 7).unwrap();
        let v = g.support(8).unwrap();
        for mask in 0u32..256 {
            let modes: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            let m = ms(8, &modes, 0);
            let p = symplectic_pairing(&v, m.bits()).unwrap();
            assert_eq!(p, g.overlap(m.bits()) % 2 == 1);
            let expected = if p {
                let reorder = crate::bitlinalg::reorder_parity(&v, m.bits()).unwrap() as u8;
                MajoranaString::new(v.xor(m.bits()), 1 + 2 * reorder)
            } else {
                m.clone()
            };
            assert_eq!(conjugate(&g, &m).unwrap(), expected);
        }
    }

    #[test]
    fn text_form_round_trips() {
        let g = BraidGate::new(BraidKind::Braid4, &[4, 0, 3, 2], Direction::Forward).unwrap();
        assert_eq!(g.to_string(), "B4 +(0,2,3,4)");
        assert_eq!("B4 +(0,2,3,4)".parse::<BraidGate>().unwrap(), g);
        let r = "B2 -(1,3)".parse::<BraidGate>().unwrap();
        assert_eq!(r, BraidGate::braid2(1, 3).unwrap().inverse());
        assert!("B3 +(0,1)".parse::<BraidGate>().is_err());
        assert!("B2 (0,1)".parse::<BraidGate>().is_err());
    }
}
