//! Bit-packed GF(2) vectors and matrices.
//!
//! Majorana monomials are bitstrings over the mode set; commutation is
//! decided by the fermionic symplectic form `Λ_f = I + J` (J the all-ones
//! matrix), which in closed form is `w(u)·w(v) + u·v mod 2`.

mod bitmatrix;
mod bitvec;

pub use bitmatrix::{BitMatrix, ColumnBasis};
pub use bitvec::BitVec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

fn check_lengths(u: &BitVec, v: &BitVec) -> Result<(), LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(())
}

/// `uᵀ Λ_f v`: zero iff the monomials with bitstrings `u` and `v` commute.
pub fn symplectic_pairing(u: &BitVec, v: &BitVec) -> Result<bool, LinalgError> {
    check_lengths(u, v)?;
    Ok(pairing_unchecked(u, v))
}

#[inline]
pub(crate) fn pairing_unchecked(u: &BitVec, v: &BitVec) -> bool {
    ((u.weight() & v.weight()) & 1 == 1) ^ u.dot(v)
}

/// `uᵀ Λ_f^L v = Σ_{α>β} u_α v_β mod 2`, the number of transpositions
/// needed to bring `[u][v]` into ascending mode order.
pub fn reorder_parity(u: &BitVec, v: &BitVec) -> Result<bool, LinalgError> {
    check_lengths(u, v)?;
    Ok(reorder_unchecked(u, v))
}

#[inline]
pub(crate) fn reorder_unchecked(u: &BitVec, v: &BitVec) -> bool {
    u.dot(&v.prefix_parity())
}
