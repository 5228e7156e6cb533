use std::fmt;

use super::{pairing_unchecked, BitVec, LinalgError};

/// Dense GF(2) matrix stored column-major.
///
/// Columns are the natural unit here: stabilizer matrices hold one
/// generator per column, and a circuit matrix maps a column bitstring to
/// its image.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            columns: vec![BitVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|j| {
                let mut c = BitVec::zeros(n);
                c.set(j, true);
                c
            })
            .collect();
        Self { rows: n, columns }
    }

    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Result<Self, LinalgError> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(LinalgError::LengthMismatch {
                left: rows,
                right: bad.len(),
            });
        }
        Ok(Self { rows, columns })
    }

    /// The fermionic symplectic form `Λ_f = I + J` over GF(2): zero
    /// diagonal, ones elsewhere.
    pub fn lambda_f(n: usize) -> Self {
        let columns = (0..n)
            .map(|j| {
                let mut c = BitVec::ones(n);
                c.set(j, false);
                c
            })
            .collect();
        Self { rows: n, columns }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols()
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.columns[col].set(row, value)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols(), self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            for i in c.iter_ones() {
                out.columns[i].set(j, true);
            }
        }
        out
    }

    /// `self · v`: XOR of the columns selected by `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if v.len() != self.cols() {
            return Err(LinalgError::LengthMismatch {
                left: self.cols(),
                right: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for j in v.iter_ones() {
            out.xor_assign(&self.columns[j]);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols() != other.rows {
            return Err(LinalgError::LengthMismatch {
                left: self.cols(),
                right: other.rows,
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|c| self.mul_vec(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitMatrix {
            rows: self.rows,
            columns,
        })
    }

    /// GF(2) rank by column elimination.
    pub fn rank(&self) -> usize {
        ColumnBasis::from_columns(self.rows, self.columns.iter()).rank()
    }

    /// Whether `v` lies in the column span.
    pub fn in_span(&self, v: &BitVec) -> Result<bool, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::LengthMismatch {
                left: self.rows,
                right: v.len(),
            });
        }
        Ok(ColumnBasis::from_columns(self.rows, self.columns.iter()).contains(v))
    }

    /// `Cᵀ Λ_f C = Λ_f`. Λ_f is materialized here only.
    pub fn check_symplectic(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols(),
            });
        }
        let lambda = BitMatrix::lambda_f(self.rows);
        let form = self.transpose().mul(&lambda)?.mul(self)?;
        Ok(form == lambda)
    }

    /// `Cᵀ Λ_f C = Λ_f` through the closed-form pairing, without building Λ_f.
    pub fn preserves_pairing(&self) -> bool {
        self.is_square()
            && (0..self.cols())
                .all(|i| (i + 1..self.cols()).all(|j| pairing_unchecked(&self.columns[i], &self.columns[j])))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols())?;
        for i in 0..self.rows {
            for j in 0..self.cols() {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incrementally built, fully reduced basis of a GF(2) column space.
///
/// Pivot for each inserted vector is the lowest row index with a set bit
/// after reduction; every basis vector is zero at every other pivot.
#[derive(Clone, Debug)]
pub struct ColumnBasis {
    rows: usize,
    basis: Vec<(usize, BitVec)>,
}

impl ColumnBasis {
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            basis: Vec::new(),
        }
    }

    pub fn from_columns<'a>(rows: usize, columns: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut basis = Self::new(rows);
        for c in columns {
            basis.insert(c);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (pivot, b) in &self.basis {
            if r.get(*pivot) {
                r.xor_assign(b);
            }
        }
        r
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.rows, "length mismatch in basis insert");
        let r = self.reduce(v);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        for (_, b) in self.basis.iter_mut() {
            if b.get(pivot) {
                b.xor_assign(&r);
            }
        }
        self.basis.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(n: usize, idx: &[usize]) -> BitVec {
        BitVec::from_indices(n, idx).unwrap()
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(BitMatrix::zeros(5, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn span_examples() {
        let m = BitMatrix::from_columns(4, vec![bv(4, &[0, 1]), bv(4, &[2, 3])]).unwrap();
        assert!(m.in_span(&BitVec::zeros(4)).unwrap());
        assert!(m.in_span(&BitVec::ones(4)).unwrap());
        assert!(!m.in_span(&bv(4, &[0, 2])).unwrap());
        assert!(m.in_span(&bv(3, &[])).is_err());
    }

    #[test]
    fn lambda_f_is_an_involution_for_even_n() {
        let l = BitMatrix::lambda_f(6);
        assert_eq!(l.mul(&l).unwrap(), BitMatrix::identity(6));
    }

    #[test]
    fn symplectic_checks() {
        assert!(BitMatrix::identity(4).check_symplectic().unwrap());
        let mut swap = BitMatrix::identity(4);
        swap.set(0, 0, false);
        swap.set(1, 1, false);
        swap.set(0, 1, true);
        swap.set(1, 0, true);
        assert!(swap.check_symplectic().unwrap());
        assert!(swap.preserves_pairing());
        let mut broken = BitMatrix::identity(4);
        broken.set(2, 2, false);
        assert!(!broken.check_symplectic().unwrap());
        assert!(BitMatrix::zeros(3, 2).check_symplectic().is_err());
    }

    #[test]
    fn transpose_round_trips() {
        let m = BitMatrix::from_columns(3, vec![bv(3, &[0]), bv(3, &[1, 2])]).unwrap();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().rows(), 2);
    }
}
