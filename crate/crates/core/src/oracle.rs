//! Exact dense-matrix reference for Majorana operators and braid unitaries.
//!
//! Entries live in `Z[ω]/√2^e` with `ω = e^{iπ/4}`: every braid unitary is
//! `(I + iV)/√2` with `V` a signed permutation, so all products stay in this
//! ring and comparisons are exact. Modes map to qubits by the chain
//! construction `c_{2j} = Z⊗…⊗Z⊗X⊗I…`, `c_{2j+1} = Z⊗…⊗Z⊗Y⊗I…`, qubit 0
//! being the most significant tensor factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::majorana::{BraidGate, Circuit, MajoranaString};
use crate::par::{self, Execution};
use crate::tableau::StabilizerCode;

/// Largest mode count the oracle accepts (dimension 256).
pub const MAX_MODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n_modes} modes exceed the dense-oracle limit of {MAX_MODES}")]
    DimensionTooLarge { n_modes: usize },
    #[error("dense representation needs an even mode count, got {0}")]
    OddModeCount(usize),
    #[error("mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("operands act on {left} and {right} modes")]
    ModeCountMismatch { left: usize, right: usize },
}

/// `a_0 + a_1 ω + a_2 ω² + a_3 ω³` with `ω⁴ = −1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZOmega(pub [i64; 4]);

impl ZOmega {
    pub const ZERO: ZOmega = ZOmega([0; 4]);
    pub const ONE: ZOmega = ZOmega([1, 0, 0, 0]);
    pub const I: ZOmega = ZOmega([0, 0, 1, 0]);
    pub const SQRT2: ZOmega = ZOmega([0, 1, 0, -1]);

    pub fn from_int(n: i64) -> Self {
        ZOmega([n, 0, 0, 0])
    }

    /// `i^r`.
    pub fn i_pow(r: u8) -> Self {
        match r % 4 {
            0 => ZOmega([1, 0, 0, 0]),
            1 => ZOmega([0, 0, 1, 0]),
            2 => ZOmega([-1, 0, 0, 0]),
            _ => ZOmega([0, 0, -1, 0]),
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0; 4]
    }

    pub fn conj(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        ZOmega([a0, -a3, -a2, -a1])
    }

    /// `self / √2` when the quotient stays in `Z[ω]`.
    pub fn div_sqrt2(self) -> Option<Self> {
        let [b0, b1, b2, b3] = (self * ZOmega::SQRT2).0;
        if [b0, b1, b2, b3].iter().any(|b| b % 2 != 0) {
            return None;
        }
        Some(ZOmega([b0 / 2, b1 / 2, b2 / 2, b3 / 2]))
    }

    /// Approximate complex value.
    pub fn to_complex(self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a0, a1, a2, a3] = self.0.map(|a| a as f64);
        (a0 + h * (a1 - a3), a2 + h * (a1 + a3))
    }
}

impl Add for ZOmega {
    type Output = ZOmega;
    fn add(self, o: ZOmega) -> ZOmega {
        ZOmega(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for ZOmega {
    type Output = ZOmega;
    fn sub(self, o: ZOmega) -> ZOmega {
        ZOmega(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for ZOmega {
    type Output = ZOmega;
    fn neg(self) -> ZOmega {
        ZOmega(self.0.map(|a| -a))
    }
}

impl Mul for ZOmega {
    type Output = ZOmega;
    fn mul(self, o: ZOmega) -> ZOmega {
        let mut out = [0i64; 4];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                let k = i + j;
                if k < 4 {
                    out[k] += a * b;
                } else {
                    out[k - 4] -= a * b;
                }
            }
        }
        ZOmega(out)
    }
}

impl fmt::Display for ZOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.0;
        write!(f, "({a0} + {a1}ω + {a2}ω² + {a3}ω³)")
    }
}

/// Square matrix with entries `entries[i·dim + j] / √2^exp`, kept in lowest
/// terms so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOperator {
    dim: usize,
    exp: u32,
    entries: Vec<ZOmega>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            exp: 0,
            entries: vec![ZOmega::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ZOmega::ONE;
        }
        m
    }

    fn from_parts(dim: usize, exp: u32, entries: Vec<ZOmega>) -> Self {
        let mut m = Self { dim, exp, entries };
        m.normalize();
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Power of `√2` dividing every entry.
    pub fn sqrt2_exponent(&self) -> u32 {
        self.exp
    }

    /// Numerator of entry `(i, j)`; the value is this over `√2^sqrt2_exponent()`.
    pub fn numerator(&self, i: usize, j: usize) -> ZOmega {
        self.entries[i * self.dim + j]
    }

    /// Approximate complex value of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> (f64, f64) {
        let (re, im) = self.numerator(i, j).to_complex();
        let s = 2f64.sqrt().powi(self.exp as i32);
        (re / s, im / s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.is_zero())
    }

    fn normalize(&mut self) {
        while self.exp > 0 {
            let reduced: Option<Vec<ZOmega>> = self.entries.iter().map(|z| z.div_sqrt2()).collect();
            match reduced {
                Some(e) => {
                    self.entries = e;
                    self.exp -= 1;
                }
                None => break,
            }
        }
    }

    fn raised(&self, exp: u32) -> Vec<ZOmega> {
        let mut factor = ZOmega::ONE;
        for _ in self.exp..exp {
            factor = factor * ZOmega::SQRT2;
        }
        self.entries.iter().map(|&z| z * factor).collect()
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![ZOmega::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Self {
            dim: d,
            exp: self.exp,
            entries,
        }
    }

    /// Matrix product; rows of `self` are scanned for nonzeros so signed
    /// permutations and braid unitaries multiply in `O(nnz · dim)`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![ZOmega::ZERO; d * d];
        for i in 0..d {
            let out = &mut entries[i * d..(i + 1) * d];
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.entries[k * d..(k + 1) * d];
                for (o, &b) in out.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *o = *o + a * b;
                    }
                }
            }
        }
        Self::from_parts(d, self.exp + other.exp, entries)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let exp = self.exp.max(other.exp);
        let entries = self
            .raised(exp)
            .into_iter()
            .zip(other.raised(exp))
            .map(|(a, b)| a + b)
            .collect();
        Self::from_parts(self.dim, exp, entries)
    }

    /// Multiplies by `z / √2^div_exp`.
    pub fn scale(&self, z: ZOmega, div_exp: u32) -> Self {
        Self::from_parts(
            self.dim,
            self.exp + div_exp,
            self.entries.iter().map(|&a| a * z).collect(),
        )
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut entries = vec![ZOmega::ZERO; d * d];
        for i1 in 0..a {
            for j1 in 0..a {
                let x = self.entries[i1 * a + j1];
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..b {
                    for j2 in 0..b {
                        entries[(i1 * b + i2) * d + j1 * b + j2] = x * other.entries[i2 * b + j2];
                    }
                }
            }
        }
        Self::from_parts(d, self.exp + other.exp, entries)
    }

    /// Trace as a numerator over `√2^sqrt2_exponent()`.
    pub fn trace(&self) -> ZOmega {
        (0..self.dim).fold(ZOmega::ZERO, |acc, i| acc + self.entries[i * self.dim + i])
    }

    /// Whether the trace equals the integer `n`.
    pub fn trace_equals(&self, n: i64) -> bool {
        let mut expected = ZOmega::from_int(n);
        for _ in 0..self.exp {
            expected = expected * ZOmega::SQRT2;
        }
        self.trace() == expected
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_unitary(&self) -> bool {
        self.matmul(&self.adjoint()).is_identity()
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }
}

fn small(entries: [ZOmega; 4]) -> DenseOperator {
    DenseOperator::from_parts(2, 0, entries.to_vec())
}

fn pauli_x() -> DenseOperator {
    small([ZOmega::ZERO, ZOmega::ONE, ZOmega::ONE, ZOmega::ZERO])
}

fn pauli_y() -> DenseOperator {
    small([ZOmega::ZERO, -ZOmega::I, ZOmega::I, ZOmega::ZERO])
}

fn pauli_z() -> DenseOperator {
    small([ZOmega::ONE, ZOmega::ZERO, ZOmega::ZERO, -ZOmega::ONE])
}

fn check_modes(n_modes: usize) -> Result<(), OracleError> {
    if n_modes > MAX_MODES {
        return Err(OracleError::DimensionTooLarge { n_modes });
    }
    if !n_modes.is_multiple_of(2) {
        return Err(OracleError::OddModeCount(n_modes));
    }
    Ok(())
}

/// Dimension `2^{n_modes/2}` of the dense representation.
pub fn dimension(n_modes: usize) -> usize {
    1 << (n_modes / 2)
}

pub fn dense_majorana(k: usize, n_modes: usize) -> Result<DenseOperator, OracleError> {
    check_modes(n_modes)?;
    if k >= n_modes {
        return Err(OracleError::ModeOutOfRange { mode: k, n_modes });
    }
    let q = k / 2;
    let site = if k.is_multiple_of(2) { pauli_x() } else { pauli_y() };
    let mut m = DenseOperator::identity(1);
    for j in 0..n_modes / 2 {
        let factor = match j.cmp(&q) {
            std::cmp::Ordering::Less => pauli_z(),
            std::cmp::Ordering::Equal => site.clone(),
            std::cmp::Ordering::Greater => DenseOperator::identity(2),
        };
        m = m.kron(&factor);
    }
    Ok(m)
}

/// `i^r` times the ascending product of the monomial's modes.
pub fn dense_monomial(m: &MajoranaString) -> Result<DenseOperator, OracleError> {
    let n = m.n_modes();
    check_modes(n)?;
    let mut acc = DenseOperator::identity(dimension(n)).scale(ZOmega::i_pow(m.phase()), 0);
    for k in m.bits().iter_ones() {
        acc = acc.matmul(&dense_majorana(k, n)?);
    }
    Ok(acc)
}

/// `exp(iπ/4 V) = (I + iV)/√2` for the gate's generator `V`.
pub fn dense_gate(g: &BraidGate, n_modes: usize) -> Result<DenseOperator, OracleError> {
    check_modes(n_modes)?;
    if g.max_mode() >= n_modes {
        return Err(OracleError::ModeOutOfRange {
            mode: g.max_mode(),
            n_modes,
        });
    }
    let v = dense_monomial(&g.generator(n_modes).expect("range checked"))?;
    let iv = v.scale(ZOmega::I, 0);
    Ok(DenseOperator::identity(dimension(n_modes))
        .add(&iv)
        .scale(ZOmega::ONE, 1))
}

/// `U_k ⋯ U_1` for gates `g_1, …, g_k` applied in order.
pub fn dense_circuit(c: &Circuit) -> Result<DenseOperator, OracleError> {
    let n = c.n_modes();
    check_modes(n)?;
    let mut u = DenseOperator::identity(dimension(n));
    for g in c.gates() {
        u = dense_gate(g, n)?.matmul(&u);
    }
    Ok(u)
}

/// `U M U†`.
pub fn conjugate_dense(u: &DenseOperator, m: &DenseOperator) -> DenseOperator {
    u.matmul(m).matmul(&u.adjoint())
}

/// Whether symbolic gate conjugation of `m` matches the dense computation.
pub fn gate_conjugation_agrees(g: &BraidGate, m: &MajoranaString) -> Result<bool, OracleError> {
    let n = m.n_modes();
    let symbolic = g.conjugate(m).map_err(|_| OracleError::ModeOutOfRange {
        mode: g.max_mode(),
        n_modes: n,
    })?;
    let dense = conjugate_dense(&dense_gate(g, n)?, &dense_monomial(m)?);
    Ok(dense == dense_monomial(&symbolic)?)
}

/// Whether symbolic circuit conjugation matches the dense computation for
/// every monomial in `ms`.
pub fn circuit_conjugation_agrees(c: &Circuit, ms: &[MajoranaString], exec: Execution) -> Result<bool, OracleError> {
    if let Some(m) = ms.iter().find(|m| m.n_modes() != c.n_modes()) {
        return Err(OracleError::ModeCountMismatch {
            left: c.n_modes(),
            right: m.n_modes(),
        });
    }
    let u = dense_circuit(c)?;
    let results = par::map(exec, ms, |m| -> Result<bool, OracleError> {
        let symbolic = c.conjugate(m).expect("mode counts checked");
        Ok(conjugate_dense(&u, &dense_monomial(m)?) == dense_monomial(&symbolic)?)
    });
    results.into_iter().try_fold(true, |ok, r| Ok(ok && r?))
}

/// Whether `U S_j U† = T_j` as dense matrices for every pair.
pub fn maps_generators(
    c: &Circuit,
    sources: &[MajoranaString],
    targets: &[MajoranaString],
    exec: Execution,
) -> Result<bool, OracleError> {
    assert_eq!(sources.len(), targets.len(), "one target per source");
    let u = dense_circuit(c)?;
    let pairs: Vec<_> = sources.iter().zip(targets).collect();
    let results = par::map(exec, &pairs, |(s, t)| -> Result<bool, OracleError> {
        Ok(conjugate_dense(&u, &dense_monomial(s)?) == dense_monomial(t)?)
    });
    results.into_iter().try_fold(true, |ok, r| Ok(ok && r?))
}

/// `∏_j (I + S_j)/2` over the code's generators.
pub fn code_projector(code: &StabilizerCode) -> Result<DenseOperator, OracleError> {
    let n = code.n_modes();
    check_modes(n)?;
    let id = DenseOperator::identity(dimension(n));
    let mut p = id.clone();
    for g in code.generators() {
        let factor = id.add(&dense_monomial(g)?).scale(ZOmega::ONE, 2);
        p = p.matmul(&factor);
    }
    Ok(p)
}

/// Whether the code projector is idempotent with trace `2^k`.
pub fn projector_has_rank(code: &StabilizerCode) -> Result<bool, OracleError> {
    let p = code_projector(code)?;
    let k = (code.n_modes() / 2).saturating_sub(code.num_generators());
    Ok(!p.is_zero() && p.matmul(&p) == p && p.trace_equals(1 << k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorana::Direction;

    fn ms(n: usize, modes: &[usize], phase: u8) -> MajoranaString {
        MajoranaString::from_modes(n, modes, phase).unwrap()
    }

    #[test]
    fn omega_arithmetic() {
        let w = ZOmega([0, 1, 0, 0]);
        assert_eq!(w * w, ZOmega::I);
        assert_eq!(w * w * w * w, -ZOmega::ONE);
        assert_eq!(ZOmega::SQRT2 * ZOmega::SQRT2, ZOmega::from_int(2));
        assert_eq!(w * w.conj(), ZOmega::ONE);
        assert_eq!(ZOmega::from_int(2).div_sqrt2(), Some(ZOmega::SQRT2));
        assert_eq!(ZOmega::ONE.div_sqrt2(), None);
        let (re, im) = w.to_complex();
        assert!((re - im).abs() < 1e-12 && (re - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_fermion() {
        let c0 = dense_majorana(0, 2).unwrap();
        let c1 = dense_majorana(1, 2).unwrap();
        assert_eq!(c0, pauli_x());
        assert_eq!(c1, pauli_y());
        assert_eq!(c0.matmul(&c1), pauli_z().scale(ZOmega::I, 0));
        // i c0 c1 = i (i Z) = −Z
        let m = dense_monomial(&ms(2, &[0, 1], 1)).unwrap();
        assert_eq!(m, pauli_z().scale(-ZOmega::ONE, 0));
    }

    #[test]
    fn majoranas_are_traceless_involutions() {
        let n = 6;
        let id = DenseOperator::identity(8);
        for j in 0..n {
            let cj = dense_majorana(j, n).unwrap();
            assert!(cj.trace().is_zero());
            assert!(cj.is_hermitian());
            for k in 0..n {
                let ck = dense_majorana(k, n).unwrap();
                let anti = cj.matmul(&ck).add(&ck.matmul(&cj));
                let expected = if j == k {
                    id.scale(ZOmega::from_int(2), 0)
                } else {
                    DenseOperator::zeros(8)
                };
                assert_eq!(anti, expected, "modes {j},{k}");
            }
        }
    }

    #[test]
    fn identity_monomial() {
        assert!(dense_monomial(&MajoranaString::identity(6)).unwrap().is_identity());
    }

    #[test]
    fn braid4_on_c0() {
        let g = BraidGate::braid4(0, 1, 2, 3).unwrap();
        let u = dense_gate(&g, 4).unwrap();
        let image = conjugate_dense(&u, &dense_majorana(0, 4).unwrap());
        assert_eq!(image, dense_monomial(&ms(4, &[1, 2, 3], 3)).unwrap());
        assert!(gate_conjugation_agrees(&g, &ms(4, &[0], 0)).unwrap());
    }

    #[test]
    fn gates_are_unitary_and_invert() {
        let n = 6;
        for g in [
            BraidGate::braid2(1, 4).unwrap(),
            BraidGate::braid4(0, 2, 3, 5).unwrap(),
            BraidGate::new(crate::majorana::BraidKind::Braid2, &[0, 5], Direction::Reverse).unwrap(),
        ] {
            let u = dense_gate(&g, n).unwrap();
            assert!(u.is_unitary());
            assert!(u.matmul(&dense_gate(&g.inverse(), n).unwrap()).is_identity());
        }
    }

    #[test]
    fn dimension_guard() {
        assert_eq!(
            dense_majorana(0, 18).unwrap_err(),
            OracleError::DimensionTooLarge { n_modes: 18 }
        );
        assert!(dense_majorana(6, 6).is_err());
    }

    #[test]
    fn projector_rank() {
        let code = StabilizerCode::new(6, vec![ms(6, &[0, 1], 1), ms(6, &[2, 3, 4, 5], 0)]);
        assert!(projector_has_rank(&code).unwrap());
        let p = code_projector(&code).unwrap();
        assert!(p.trace_equals(2));
    }
}
