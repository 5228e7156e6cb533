//! Built-in codes and seeded random code generation.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::majorana::{BraidGate, BraidKind, Circuit, Direction, MajoranaString};
use crate::tableau::{DecodedTarget, StabilizerCode};

pub use crate::format::{parse_code, serialize_code};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("a Kitaev chain needs at least 2 fermions, got {0}")]
    ChainTooShort(usize),
    #[error("invalid parameters: {n_modes} modes, {r} generators")]
    BadParameters { n_modes: usize, r: usize },
}

/// Kitaev chain on `n` fermions: generators `i c_{2i−1} c_{2i}` (0-based) for `i = 1..n`.
pub fn kitaev_chain(n: usize) -> Result<StabilizerCode, CodeError> {
    if n < 2 {
        return Err(CodeError::ChainTooShort(n));
    }
    let n_modes = 2 * n;
    let generators = (1..n)
        .map(|i| MajoranaString::from_modes(n_modes, &[2 * i - 1, 2 * i], 1).expect("in range"))
        .collect();
    Ok(StabilizerCode::new(n_modes, generators).with_name(format!("kitaev:{n}")))
}

/// The `[[6,1,3]]_f` code on twelve Majorana modes.
pub fn shortest_code() -> StabilizerCode {
    let gens: [(&[usize], u8); 5] = [
        (&[0, 1, 2, 3], 0),
        (&[2, 3, 4, 5], 0),
        (&[6, 7, 8, 9], 0),
        (&[8, 9, 10, 11], 0),
        (&[1, 3, 5, 7, 9, 11], 1),
    ];
    let generators = gens
        .iter()
        .map(|(modes, phase)| MajoranaString::from_modes(12, modes, *phase).expect("in range"))
        .collect();
    StabilizerCode::new(12, generators).with_name("shortest")
}

/// Odd-weight logical `c_0 c_2 c_4` of [`shortest_code`].
pub fn shortest_code_logical() -> MajoranaString {
    MajoranaString::from_modes(12, &[0, 2, 4], 0).expect("in range")
}

/// The single-generator code `⟨c_0 c_1 c_2 c_3⟩` on four modes.
pub fn total_parity_code() -> StabilizerCode {
    StabilizerCode::new(
        4,
        vec![MajoranaString::from_modes(4, &[0, 1, 2, 3], 0).expect("in range")],
    )
    .with_name("parity4")
}

/// Resolves a built-in name: `kitaev:<n>`, `shortest`, `parity4`.
pub fn builtin(name: &str) -> Option<StabilizerCode> {
    match name {
        "shortest" => Some(shortest_code()),
        "parity4" => Some(total_parity_code()),
        _ => {
            let n = name.strip_prefix("kitaev:")?.parse().ok()?;
            kitaev_chain(n).ok()
        }
    }
}

/// A uniformly chosen braid gate on `n_modes` modes (Braid4 only when `n_modes ≥ 4`).
pub fn random_gate<R: Rng + ?Sized>(rng: &mut R, n_modes: usize) -> BraidGate {
    let kind = if n_modes >= 4 && rng.random_bool(0.5) {
        BraidKind::Braid4
    } else {
        BraidKind::Braid2
    };
    let modes = sample(rng, n_modes, kind.arity()).into_vec();
    let direction = if rng.random_bool(0.5) {
        Direction::Forward
    } else {
        Direction::Reverse
    };
    BraidGate::new(kind, &modes, direction).expect("sampled modes are distinct")
}

pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n_modes: usize, depth: usize) -> Circuit {
    let gates = (0..depth).map(|_| random_gate(rng, n_modes)).collect();
    Circuit::from_gates(n_modes, gates).expect("gates in range")
}

fn check_params(n_modes: usize, r: usize) -> Result<(), CodeError> {
    if !n_modes.is_multiple_of(2) || n_modes < 2 || 2 * r > n_modes {
        return Err(CodeError::BadParameters { n_modes, r });
    }
    Ok(())
}

/// The decoded target on `n_modes` modes scrambled by `depth` seeded random gates.
pub fn random_code_with_depth(n_modes: usize, r: usize, depth: usize, seed: u64) -> Result<StabilizerCode, CodeError> {
    check_params(n_modes, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scramble = random_circuit(&mut rng, n_modes, depth);
    let code = DecodedTarget::new(n_modes, 0, r)
        .code()
        .apply_circuit(&scramble)
        .expect("mode counts agree");
    Ok(code.with_name(format!("random:{n_modes}:{r}:{seed}")))
}

/// Random valid code with `2·n_modes` scrambling gates.
pub fn random_code(n_modes: usize, r: usize, seed: u64) -> Result<StabilizerCode, CodeError> {
    random_code_with_depth(n_modes, r, 2 * n_modes, seed)
}

/// Random code whose stabilizer group contains the total parity: pairs
/// `i c_{2j} c_{2j+1}` for `j < r − 1` plus the product of every remaining
/// mode, then scrambled.
pub fn random_code_with_total_parity(n_modes: usize, r: usize, seed: u64) -> Result<StabilizerCode, CodeError> {
    check_params(n_modes, r)?;
    if r == 0 {
        return Err(CodeError::BadParameters { n_modes, r });
    }
    let mut generators: Vec<_> = (0..r - 1)
        .map(|j| MajoranaString::from_modes(n_modes, &[2 * j, 2 * j + 1], 1).expect("in range"))
        .collect();
    let rest: Vec<usize> = (2 * (r - 1)..n_modes).collect();
    let w = rest.len();
    let phase = ((w * (w - 1) / 2) % 2) as u8;
    generators.push(MajoranaString::from_modes(n_modes, &rest, phase).expect("in range"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scramble = random_circuit(&mut rng, n_modes, 2 * n_modes);
    let code = StabilizerCode::new(n_modes, generators)
        .apply_circuit(&scramble)
        .expect("mode counts agree");
    Ok(code.with_name(format!("random-parity:{n_modes}:{r}:{seed}")))
}
