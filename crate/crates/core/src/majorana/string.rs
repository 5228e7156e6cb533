use std::fmt;

use crate::bitlinalg::{reorder_unchecked, BitVec};

use super::MajoranaError;

/// A Majorana monomial `i^r · c_{a1} c_{a2} ⋯` with the modes in
/// ascending order and `r ∈ Z4`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MajoranaString {
    bits: BitVec,
    phase: u8,
}

impl MajoranaString {
    pub fn new(bits: BitVec, phase: u8) -> Self {
        Self { bits, phase: phase % 4 }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self::new(BitVec::zeros(n_modes), 0)
    }

    /// Single Majorana `c_k`.
    pub fn mode(n_modes: usize, k: usize) -> Result<Self, MajoranaError> {
        Self::from_modes(n_modes, &[k], 0)
    }

    /// `i^phase` times the ordered product of `modes`. Modes must be distinct.
    pub fn from_modes(n_modes: usize, modes: &[usize], phase: u8) -> Result<Self, MajoranaError> {
        let mut bits = BitVec::zeros(n_modes);
        for &m in modes {
            if m >= n_modes {
                return Err(MajoranaError::ModeOutOfRange { mode: m, n_modes });
            }
            if bits.get(m) {
                return Err(MajoranaError::RepeatedMode(m));
            }
            bits.set(m, true);
        }
        Ok(Self::new(bits, phase))
    }

    #[inline]
    pub fn n_modes(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn modes(&self) -> Vec<usize> {
        self.bits.iter_ones().collect()
    }

    pub(crate) fn bits_mut(&mut self) -> &mut BitVec {
        &mut self.bits
    }

    pub(crate) fn add_phase(&mut self, delta: u8) {
        self.phase = (self.phase + delta) % 4;
    }

    pub fn negated(&self) -> Self {
        Self::new(self.bits.clone(), self.phase + 2)
    }

    /// Hermitian (and hence squaring to +1) iff `r ≡ w(w−1)/2 mod 2`.
    pub fn is_hermitian(&self) -> bool {
        let w = self.weight();
        (self.phase as usize) % 2 == (w * w.saturating_sub(1) / 2) % 2
    }

    /// `self · other`, reordered into ascending mode order.
    pub fn multiply(&self, other: &MajoranaString) -> Result<MajoranaString, MajoranaError> {
        if self.n_modes() != other.n_modes() {
            return Err(MajoranaError::ModeCountMismatch {
                expected: self.n_modes(),
                found: other.n_modes(),
            });
        }
        let reorder = reorder_unchecked(&self.bits, &other.bits) as u8;
        Ok(MajoranaString::new(
            self.bits.xor(&other.bits),
            self.phase + other.phase + 2 * reorder,
        ))
    }

    /// Copy on `n_modes + offset` modes with every mode index shifted up by `offset`.
    pub fn embedded(&self, offset: usize) -> MajoranaString {
        MajoranaString::new(self.bits.shifted(offset), self.phase)
    }
}

impl fmt::Display for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        if self.bits.is_zero() {
            return f.write_str("1");
        }
        for (n, m) in self.bits.iter_ones().enumerate() {
            if n > 0 || self.phase % 2 == 1 {
                f.write_str(" ")?;
            }
            write!(f, "c{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MajoranaString({self} on {})", self.n_modes())
    }
}
