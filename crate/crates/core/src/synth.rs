//! Decoding-circuit synthesis.
//!
//! Generators are processed one column at a time. For column `i` the pivot
//! is `p = b + 2i` (`b = 2` with the ancilla pair prepended, `b = 0`
//! without). The free region is every mode outside the already decoded
//! pairs: the ancilla modes and `p..N`. Gates supported in the free region
//! never touch decoded columns, and a gate that covers a whole decoded pair
//! has even overlap with it, so finished columns stay fixed bit for bit and
//! phase for phase.
//!
//! 1. Shrink: while the column has more than two set modes in the free
//!    region, a Braid4 over the three lowest set modes and the lowest free
//!    zero mode removes two of them (overlap three is odd). With ancillas a
//!    Braid2 moves the bit parked on the ancilla back.
//! 2. Swap the two survivors onto `(p, p+1)` with Braid2 gates.
//! 3. Clear each decoded pair the column still covers with
//!    `Braid4{z, pair, p}` then `Braid2{z, p}`, `z` a free zero mode.
//!
//! Afterwards generators read `±i c_{b+2j} c_{b+2j+1}`; each `−i` is fixed
//! by a doubled gate, and with ancillas the image of `i c_0 c_1` is pushed
//! back onto the ancilla pair.

use std::ops::Range;

use log::debug;
use thiserror::Error;

use crate::majorana::{BraidGate, Circuit, GateCounts, MajoranaString};
use crate::par::{self, Execution};
use crate::tableau::{DecodedTarget, StabilizerCode, ValidationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Two ancilla modes prepended at indices 0 and 1.
    WithAncilla,
    /// No extra modes; fails when the total parity is a stabilizer and `r < N/2`.
    AncillaFree,
}

impl Variant {
    pub fn pivot_base(self) -> usize {
        match self {
            Variant::WithAncilla => 2,
            Variant::AncillaFree => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("invalid code: {0}")]
    InvalidCode(#[from] ValidationError),
    #[error("total parity lies in the stabilizer group with r < N/2; no ancilla-free decoder exists")]
    TotalParityObstruction,
    #[error("generator {generator} has the wrong sign and the total parity forbids fixing it without an ancilla")]
    NoValidSupport { generator: usize },
    #[error("code has no logical qubits")]
    NoLogicals,
}

/// Generator `target` was replaced by `g_target · g_factor` before decoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub target: usize,
    pub factor: usize,
}

/// Logical pair whose representative signs were negated by phase correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalFlip {
    pub pair: usize,
    pub first: bool,
    pub second: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaStatus {
    /// The decoder maps `i c_0 c_1` to `± i c_0 c_1`.
    Reset,
    /// The image is `± i c_0 c_1` times decoded stabilizers.
    ResetModuloStabilizers,
    /// The image cannot be moved back; happens exactly when the total
    /// parity is a stabilizer and logical qubits remain.
    Entangled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncillaReport {
    /// Image of `i c_0 c_1` under the full decoder.
    pub image: MajoranaString,
    pub status: AncillaStatus,
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    variant: Variant,
    decoder: Circuit,
    encoder: Circuit,
    target: DecodedTarget,
    working: StabilizerCode,
    basis_changes: Vec<BasisChange>,
    logical_sign_flips: Vec<LogicalFlip>,
    correction_gates: Range<usize>,
    reset_gates: Range<usize>,
    ancilla: Option<AncillaReport>,
}

impl SynthesisResult {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn decoder(&self) -> &Circuit {
        &self.decoder
    }

    pub fn encoder(&self) -> &Circuit {
        &self.encoder
    }

    pub fn total_modes(&self) -> usize {
        self.decoder.n_modes()
    }

    pub fn ancilla_modes(&self) -> Vec<usize> {
        (0..self.variant.pivot_base()).collect()
    }

    pub fn target(&self) -> &DecodedTarget {
        &self.target
    }

    /// The input code on the circuit's modes with basis changes applied;
    /// the decoder maps it exactly onto the decoded target.
    pub fn working_code(&self) -> &StabilizerCode {
        &self.working
    }

    pub fn basis_changes(&self) -> &[BasisChange] {
        &self.basis_changes
    }

    pub fn logical_sign_flips(&self) -> &[LogicalFlip] {
        &self.logical_sign_flips
    }

    pub fn gate_counts(&self) -> GateCounts {
        self.decoder.gate_counts()
    }

    /// Decoder gate indices added by phase correction.
    pub fn correction_gates(&self) -> Range<usize> {
        self.correction_gates.clone()
    }

    /// Decoder gate indices added by the ancilla reset.
    pub fn reset_gates(&self) -> Range<usize> {
        self.reset_gates.clone()
    }

    pub fn ancilla(&self) -> Option<&AncillaReport> {
        self.ancilla.as_ref()
    }

    /// The decoder with the phase-correction gates removed.
    pub fn uncorrected_decoder(&self) -> Circuit {
        let gates = self
            .decoder
            .gates()
            .iter()
            .enumerate()
            .filter(|(k, _)| !self.correction_gates.contains(k))
            .map(|(_, g)| *g)
            .collect();
        Circuit::from_gates(self.decoder.n_modes(), gates).expect("same modes")
    }

    /// Encoder image of `c_{b+2j}`: anticommutes with working generator `j` only.
    pub fn destabilizers(&self) -> Vec<MajoranaString> {
        (0..self.target.r)
            .map(|j| self.encode_mode(self.target.pair_start(j)))
            .collect()
    }

    /// Encoder images of the single-mode operators on each logical pair.
    pub fn logical_representatives(&self) -> Result<Vec<(MajoranaString, MajoranaString)>, SynthesisError> {
        let k = self.target.num_logical_pairs();
        if k == 0 {
            return Err(SynthesisError::NoLogicals);
        }
        Ok((0..k)
            .map(|l| {
                let s = self.target.logical_pair_start(l);
                (self.encode_mode(s), self.encode_mode(s + 1))
            })
            .collect())
    }

    fn encode_mode(&self, mode: usize) -> MajoranaString {
        let m = MajoranaString::mode(self.total_modes(), mode).expect("mode in range");
        self.encoder.conjugate(&m).expect("same modes")
    }
}

/// Working tableau plus the circuit built so far.
struct Engine {
    variant: Variant,
    n: usize,
    base: usize,
    tableau: Vec<MajoranaString>,
    original: Vec<MajoranaString>,
    circuit: Circuit,
    basis_changes: Vec<BasisChange>,
}

impl Engine {
    fn apply(&mut self, g: BraidGate) {
        self.circuit.push(g).expect("synthesized gates are in range");
        for t in self.tableau.iter_mut() {
            g.conjugate_in_place(t);
        }
    }

    fn multiply_generators(&mut self, target: usize, factor: usize) {
        debug!("generating-set change: g{target} <- g{target} * g{factor}");
        self.tableau[target] = self.tableau[target]
            .multiply(&self.tableau[factor])
            .expect("same modes");
        self.original[target] = self.original[target]
            .multiply(&self.original[factor])
            .expect("same modes");
        self.basis_changes.push(BasisChange { target, factor });
    }

    fn free_modes(&self, pivot: usize) -> impl Iterator<Item = usize> {
        (0..self.base).chain(pivot..self.n)
    }

    fn free_set(&self, i: usize, pivot: usize) -> Vec<usize> {
        let bits = self.tableau[i].bits();
        self.free_modes(pivot).filter(|&m| bits.get(m)).collect()
    }

    fn free_zero(&self, i: usize, pivot: usize) -> Option<usize> {
        let bits = self.tableau[i].bits();
        self.free_modes(pivot).find(|&m| !bits.get(m))
    }

    fn process_column(&mut self, i: usize) {
        let p = self.base + 2 * i;

        loop {
            let set = self.free_set(i, p);
            debug_assert!(set.len().is_multiple_of(2));
            if set.len() <= 2 {
                break;
            }
            match self.free_zero(i, p) {
                Some(z) => {
                    let (a1, a2, a3) = (set[0], set[1], set[2]);
                    self.apply(BraidGate::braid4(z, a1, a2, a3).expect("distinct modes"));
                    if z < self.base {
                        self.apply(BraidGate::braid2(z, a1).expect("distinct modes"));
                    }
                }
                None => {
                    // Only reachable without ancillas when r = N/2.
                    let factor = (i + 1..self.tableau.len())
                        .find(|&j| self.free_modes(p).any(|m| self.tableau[j].bits().get(m)))
                        .expect("an independent generator has free support");
                    self.multiply_generators(i, factor);
                }
            }
        }

        let set = self.free_set(i, p);
        assert_eq!(set.len(), 2, "generator {i} became dependent on decoded pairs");
        if !self.tableau[i].bits().get(p) {
            let s = *set.iter().find(|&&m| m != p + 1).expect("two set modes");
            self.apply(BraidGate::braid2(p, s).expect("distinct modes"));
        }
        if !self.tableau[i].bits().get(p + 1) {
            let t = *self.free_set(i, p).iter().find(|&&m| m != p).expect("two set modes");
            self.apply(BraidGate::braid2(p + 1, t).expect("distinct modes"));
        }

        for j in 0..i {
            let a = self.base + 2 * j;
            if !self.tableau[i].bits().get(a) {
                continue;
            }
            debug_assert!(self.tableau[i].bits().get(a + 1), "pair {j} not aligned in column {i}");
            match self.free_zero(i, p) {
                Some(z) => {
                    self.apply(BraidGate::braid4(z, a, a + 1, p).expect("distinct modes"));
                    self.apply(BraidGate::braid2(z, p).expect("distinct modes"));
                }
                None => self.multiply_generators(i, j),
            }
        }
    }
}

/// Gates that flip the sign of every generator reading `−i c_a c_{a+1}`.
///
/// Each flip is a gate applied twice whose support has one mode in the
/// flipped pair and even overlap with every other pair: three free modes
/// when available, else one free mode and another whole pair, else a
/// Braid2 onto a free mode. With no free modes at all the total parity
/// fixes the parity of the number of flips, and flips are done two at a
/// time through one mode of each pair.
pub fn phase_correction(tableau: &[MajoranaString], target: &DecodedTarget) -> Result<Vec<BraidGate>, SynthesisError> {
    let free = target.free_modes();
    let flipped: Vec<usize> = (0..tableau.len()).filter(|&j| tableau[j].phase() == 3).collect();
    let other_pair = |skip: &[usize]| (0..target.r).find(|l| !skip.contains(l)).map(|l| target.pair_start(l));
    let mut gates = Vec::new();

    if free.is_empty() {
        if flipped.len() % 2 == 1 {
            return Err(SynthesisError::NoValidSupport {
                generator: flipped[flipped.len() - 1],
            });
        }
        for two in flipped.chunks(2) {
            let (a, b) = (target.pair_start(two[0]), target.pair_start(two[1]));
            let gate = match other_pair(two) {
                Some(c) => BraidGate::braid4(a, b, c, c + 1),
                None => BraidGate::braid2(a, b),
            }
            .expect("distinct modes");
            gates.extend([gate, gate]);
        }
        return Ok(gates);
    }

    for j in flipped {
        let a = target.pair_start(j);
        let gate = if free.len() >= 3 {
            BraidGate::braid4(a, free[0], free[1], free[2])
        } else if let Some(b) = other_pair(&[j]) {
            BraidGate::braid4(a, free[0], b, b + 1)
        } else {
            BraidGate::braid2(a, free[0])
        }
        .expect("distinct modes");
        gates.extend([gate, gate]);
    }
    Ok(gates)
}

/// Gates appended to `decoder` that bring the image of `i c_0 c_1` back to
/// the ancilla pair without touching the decoded generators.
pub fn reset_ancilla_pair(decoder: &Circuit, target: &DecodedTarget) -> (Vec<BraidGate>, AncillaReport) {
    let n = decoder.n_modes();
    let pair = MajoranaString::from_modes(n, &[0, 1], 1).expect("ancilla modes exist");
    let mut q = decoder.conjugate(&pair).expect("same modes");
    let free = target.free_modes();
    let mut gates = Vec::new();
    let mut emit = |g: BraidGate, q: &mut MajoranaString| {
        g.conjugate_in_place(q);
        gates.push(g);
    };

    let status = loop {
        let bits = q.bits().clone();
        if bits.weight() == 2 && bits.get(0) && bits.get(1) {
            break AncillaStatus::Reset;
        }
        let set: Vec<usize> = free.iter().copied().filter(|&m| bits.get(m)).collect();
        let zero = free.iter().copied().find(|&m| !bits.get(m));
        let covered = (0..target.r).find(|&j| bits.get(target.pair_start(j)));

        if set.len() == 2 && covered.is_none() {
            if !bits.get(0) {
                let s = *set.iter().find(|&&m| m != 1).expect("two set modes");
                emit(BraidGate::braid2(0, s).expect("distinct"), &mut q);
            }
            if !q.bits().get(1) {
                let t = q.bits().iter_ones().find(|&m| m != 0).expect("two set modes");
                emit(BraidGate::braid2(1, t).expect("distinct"), &mut q);
            }
            continue;
        }

        let Some(z) = zero else {
            let only_pairs_left = set.len() == 2 && bits.get(0) && bits.get(1);
            break if only_pairs_left {
                AncillaStatus::ResetModuloStabilizers
            } else {
                AncillaStatus::Entangled
            };
        };
        let s = set[0];
        let (a, b) = match covered {
            Some(j) => (target.pair_start(j), target.pair_start(j) + 1),
            None => (set[set.len() - 2], set[set.len() - 1]),
        };
        emit(BraidGate::braid4(s, a, b, z).expect("distinct"), &mut q);
        emit(BraidGate::braid2(s, z).expect("distinct"), &mut q);
    };

    (gates, AncillaReport { image: q, status })
}

pub fn synthesize(code: &StabilizerCode, variant: Variant) -> Result<SynthesisResult, SynthesisError> {
    code.validate()?;
    let n_code = code.n_modes();
    let r = code.num_generators();
    if variant == Variant::AncillaFree && 2 * r < n_code && code.contains_total_parity() {
        return Err(SynthesisError::TotalParityObstruction);
    }

    let base = variant.pivot_base();
    let n = n_code + base;
    let embedded = code.embedded(base);
    let mut engine = Engine {
        variant,
        n,
        base,
        tableau: embedded.generators().to_vec(),
        original: embedded.generators().to_vec(),
        circuit: Circuit::new(n),
        basis_changes: Vec::new(),
    };
    let target = DecodedTarget::new(n, base, r);

    for i in 0..r {
        let finished: Vec<MajoranaString> = engine.tableau[..i].to_vec();
        engine.process_column(i);
        debug_assert_eq!(
            &engine.tableau[..i],
            &finished[..],
            "column {i} disturbed earlier columns"
        );
        debug_assert_eq!(engine.tableau[i].bits(), target.generator(i).bits());
    }
    debug!(
        "{:?}: {} column gates for {} generators on {} modes",
        engine.variant,
        engine.circuit.len(),
        r,
        n
    );

    let correction = phase_correction(&engine.tableau, &target)?;
    let correction_start = engine.circuit.len();
    for g in correction {
        engine.apply(g);
    }
    let correction_gates = correction_start..engine.circuit.len();

    let reset_start = engine.circuit.len();
    let ancilla = if variant == Variant::WithAncilla {
        let (gates, report) = reset_ancilla_pair(&engine.circuit, &target);
        for g in gates {
            engine.apply(g);
        }
        Some(report)
    } else {
        None
    };
    let reset_gates = reset_start..engine.circuit.len();

    for (j, g) in engine.tableau.iter().enumerate() {
        assert_eq!(*g, target.generator(j), "generator {j} not decoded");
    }

    let mut working = StabilizerCode::new(n, engine.original);
    if let Some(name) = code.name() {
        working = working.with_name(name);
    }
    let decoder = engine.circuit;
    let encoder = decoder.inverse();
    let mut result = SynthesisResult {
        variant,
        decoder,
        encoder,
        target,
        working,
        basis_changes: engine.basis_changes,
        logical_sign_flips: Vec::new(),
        correction_gates,
        reset_gates,
        ancilla,
    };
    result.logical_sign_flips = logical_flips(&result);
    Ok(result)
}

fn logical_flips(result: &SynthesisResult) -> Vec<LogicalFlip> {
    if result.correction_gates.is_empty() {
        return Vec::new();
    }
    let uncorrected = result.uncorrected_decoder().inverse();
    let n = result.total_modes();
    let flipped = |mode: usize| {
        let m = MajoranaString::mode(n, mode).expect("in range");
        let a = result.encoder.conjugate(&m).expect("same modes");
        let b = uncorrected.conjugate(&m).expect("same modes");
        debug_assert_eq!(a.bits(), b.bits());
        a.phase() != b.phase()
    };
    (0..result.target.num_logical_pairs())
        .filter_map(|l| {
            let s = result.target.logical_pair_start(l);
            let (first, second) = (flipped(s), flipped(s + 1));
            (first || second).then_some(LogicalFlip { pair: l, first, second })
        })
        .collect()
}

pub fn synthesize_with_ancilla(code: &StabilizerCode) -> Result<SynthesisResult, SynthesisError> {
    synthesize(code, Variant::WithAncilla)
}

pub fn synthesize_ancilla_free(code: &StabilizerCode) -> Result<SynthesisResult, SynthesisError> {
    synthesize(code, Variant::AncillaFree)
}

/// Synthesizes every code independently.
pub fn synthesize_batch(
    codes: &[StabilizerCode],
    variant: Variant,
    exec: Execution,
) -> Vec<Result<SynthesisResult, SynthesisError>> {
    par::map(exec, codes, |c| synthesize(c, variant))
}
