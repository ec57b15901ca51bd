//! Codings of orbits, the substitutions `σ₀ … σ₃`, S-adic decomposition,
//! digit addresses over `{0, 2, 3, 5}` and their exact evaluation.

mod automaton;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{Cyclo, CycloError};
use crate::dynamics::{self, loz_in_tzed, loz_ttilde, DynamicsError, Loz};
use crate::regions::{HalfOpenConvexPolygon, Named};

pub use automaton::{
    build_edge_automaton, classify_multiplicative, AutomatonGraph, EdgeState, MultiplicativeClass, Side,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("symbol {symbol:?} at position {pos} is not in the alphabet")]
    BadSymbol { pos: usize, symbol: char },
    #[error("word is not a prefix of an S-adic limit (mismatch at position {pos})")]
    NotSAdic { pos: usize },
    #[error("the periodic part of a lasso must be nonempty")]
    EmptyCycle,
    #[error("automaton construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// `{0, 1}`: `Δ` versus `𝒵`.
    Binary,
    /// `{a, b}`: the induced coding.
    Ab,
    /// `{0, 1, 2, 3}`: indices of `σ₀ … σ₃`.
    Sigma,
    /// `{0, 2, 3, 5}` (and `1`, `4` in leading position): address digits.
    Digit,
}

impl Alphabet {
    pub fn symbols(self) -> &'static str {
        match self {
            Alphabet::Binary => "01",
            Alphabet::Ab => "ab",
            Alphabet::Sigma => "0123",
            Alphabet::Digit => "012345",
        }
    }

    fn check(self, w: &str, offset: usize) -> Result<(), SymbolicError> {
        match w.chars().enumerate().find(|(_, c)| !self.symbols().contains(*c)) {
            Some((pos, symbol)) => Err(SymbolicError::BadSymbol { pos: pos + offset, symbol }),
            None => Ok(()),
        }
    }
}

/// A finite word, or an eventually periodic word `prefix · cycle^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coding {
    pub alphabet: Alphabet,
    pub symbols: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<String>,
}

impl Coding {
    pub fn finite(alphabet: Alphabet, symbols: String) -> Result<Self, SymbolicError> {
        alphabet.check(&symbols, 0)?;
        Ok(Coding { alphabet, symbols, cycle: None })
    }

    pub fn lasso(alphabet: Alphabet, prefix: String, cycle: String) -> Result<Self, SymbolicError> {
        if cycle.is_empty() {
            return Err(SymbolicError::EmptyCycle);
        }
        alphabet.check(&prefix, 0)?;
        alphabet.check(&cycle, prefix.len())?;
        Ok(Coding { alphabet, symbols: prefix, cycle: Some(cycle) })
    }
}

/// An eventually periodic word `prefix · cycle^∞` over address digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lasso {
    pub prefix: Vec<u8>,
    pub cycle: Vec<u8>,
}

impl Lasso {
    pub fn new(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self, SymbolicError> {
        if cycle.is_empty() {
            return Err(SymbolicError::EmptyCycle);
        }
        Ok(Lasso { prefix, cycle })
    }

    /// Parses `"02(0)"`, i.e. the periodic part in parentheses.
    pub fn parse(s: &str) -> Result<Self, SymbolicError> {
        let s = s.trim();
        let (pre, cyc) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => return Err(SymbolicError::EmptyCycle),
        };
        Alphabet::Digit.check(pre, 0)?;
        Alphabet::Digit.check(cyc, pre.len() + 1)?;
        let digits = |w: &str| w.bytes().map(|b| b - b'0').collect::<Vec<u8>>();
        Lasso::new(digits(pre), digits(cyc))
    }

    /// The first `n` symbols.
    pub fn take(&self, n: usize) -> Vec<u8> {
        self.prefix.iter().chain(self.cycle.iter().cycle()).take(n).copied().collect()
    }
}

impl std::fmt::Display for Lasso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |w: &[u8]| w.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        write!(f, "{}({})", s(&self.prefix), s(&self.cycle))
    }
}

/// `x ↦ a·x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub a: Cyclo,
    pub b: Cyclo,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { a: Cyclo::one(5), b: Cyclo::zero(5) }
    }

    pub fn apply(&self, x: &Cyclo) -> Cyclo {
        &(&self.a * x) + &self.b
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Affine) -> Affine {
        Affine { a: &self.a * &inner.a, b: self.apply(&inner.b) }
    }

    /// The unique fixed point of a contraction.
    pub fn fixed_point(&self) -> Result<Cyclo, CycloError> {
        self.b.div(&(&Cyclo::one(5) - &self.a))
    }
}

/// `x ↦ ζᵐω⁻²x + d_m`.
pub fn digit_map(m: u8) -> Affine {
    Affine { a: &Cyclo::zeta_pow(5, m as i64) * &Cyclo::omega_pow(-2), b: dynamics::digit(m as usize).clone() }
}

/// `f_{w₁} ∘ f_{w₂} ∘ … ∘ f_{w_k}`.
pub fn word_map(word: &[u8]) -> Affine {
    word.iter().rev().fold(Affine::identity(), |acc, &m| digit_map(m).compose(&acc))
}

/// Exact value of the address `prefix · cycle^∞`.
pub fn eval_lasso(l: &Lasso) -> Result<Cyclo, SymbolicError> {
    let y = word_map(&l.cycle).fixed_point()?;
    Ok(word_map(&l.prefix).apply(&y))
}

/// The cylinder `[w₁ … w_k]` drawn on the closed hull of `Y′`.
pub fn cylinder(word: &[u8]) -> HalfOpenConvexPolygon {
    let f = word_map(word);
    Named::Hull.region().parts()[0].affine(&f.a, &f.b)
}

/// The three pairs of addresses naming the same cut point.
pub fn cut_point_pairs() -> Vec<(Lasso, Lasso)> {
    let l = |p: &[u8], c: &[u8]| Lasso { prefix: p.to_vec(), cycle: c.to_vec() };
    vec![
        (l(&[0, 2], &[0]), l(&[3, 3], &[5])),
        (l(&[3], &[0]), l(&[2], &[5])),
        (l(&[2, 2], &[0]), l(&[5, 3], &[5])),
    ]
}

/// `(ψ(Tⁿx))_{n<len}` with `ψ = 0` on `Δ`, `1` on `𝒵`.
pub fn coding_d(x: &Cyclo, len: usize) -> Result<String, SymbolicError> {
    let mut p = Loz::from_cyclo(x)?;
    if !p.in_l() {
        return Err(DynamicsError::NotInL(x.to_string()).into());
    }
    let mut out = String::with_capacity(len);
    for _ in 0..len {
        out.push(if p.in_delta_halfplane() { '0' } else { '1' });
        p = p.step();
    }
    Ok(out)
}

/// `(ψ̃(T̃ⁿx))_{n<len}` with `ψ̃ = a` on `Δ`, `b` on `T(𝒵) ∖ Δ`.
pub fn coding_dtilde(x: &Cyclo, len: usize) -> Result<String, SymbolicError> {
    let mut p = Loz::from_cyclo(x)?;
    if !loz_in_tzed(&p) {
        return Err(DynamicsError::NotInTZed(x.to_string()).into());
    }
    let mut out = String::with_capacity(len);
    for _ in 0..len {
        out.push(if p.in_delta_halfplane() { 'a' } else { 'b' });
        p = loz_ttilde(&p);
    }
    Ok(out)
}

/// `a → 01`, `b → 1`.
pub fn ab_to_binary(w: &str) -> Result<String, SymbolicError> {
    Alphabet::Ab.check(w, 0)?;
    Ok(w.chars().map(|c| if c == 'a' { "01" } else { "1" }).collect())
}

const SIGMA: [[&str; 2]; 4] = [["aaba", "baba"], ["aaab", "abab"], ["baaa", "baba"], ["abaa", "abab"]];

/// Leading words `λ, a, ba, aba` with `σ_k(w) = p_k·σ₀(w)·p_k⁻¹`.
const LEAD: [&str; 4] = ["", "a", "ba", "aba"];

/// Image of `word` under `σ_i`.
pub fn apply_substitution(i: usize, word: &str) -> Result<String, SymbolicError> {
    Alphabet::Ab.check(word, 0)?;
    let table = SIGMA.get(i).ok_or(SymbolicError::BadSymbol { pos: 0, symbol: char::from(b'0' + i as u8) })?;
    Ok(word.chars().map(|c| table[(c == 'b') as usize]).collect())
}

/// Prefix of `lim σ₀ⁿ(a)`.
pub fn sigma0_fixed_point(len: usize) -> String {
    let mut w = String::from("a");
    while w.len() < len {
        w = apply_substitution(0, &w).expect("ab word");
    }
    w.truncate(len);
    w
}

/// Result of [`sadic_decompose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SAdicDecomposition {
    /// `m₁, m₂, …` with `word = σ_{m₁} ∘ σ_{m₂} ∘ …(residual)` on the prefix.
    pub indices: Vec<usize>,
    /// The innermost word once the prefix no longer fixes the next index.
    pub residual: String,
    /// Length of `word` covered by `σ_{m₁} ∘ … (residual)`.
    pub consumed: usize,
}

/// Phases `k` for which `word` reads as `p_k·σ₀(z)`; returns `(k, z)` pairs.
fn phases(word: &[u8]) -> Vec<(usize, Vec<u8>)> {
    let pattern = b"aba";
    let mut out = Vec::new();
    for k in 0..4 {
        let mut z = Vec::new();
        let mut ok = true;
        for (i, &c) in word.iter().enumerate() {
            let pos = (i as i64 - k as i64).rem_euclid(4) as usize;
            if pos == 0 {
                z.push(c);
            } else if c != pattern[pos - 1] {
                ok = false;
                break;
            }
        }
        // images of σ₀ never contain bb, so neither does any level of a valid word
        if ok && !z.windows(2).any(|w| w == b"bb") {
            out.push((k, z));
        }
    }
    out
}

fn first_mismatch(word: &[u8]) -> usize {
    let pattern = b"aba";
    (0..4)
        .map(|k| {
            word.iter()
                .enumerate()
                .position(|(i, &c)| {
                    let pos = (i as i64 - k as i64).rem_euclid(4) as usize;
                    pos != 0 && c != pattern[pos - 1]
                })
                .unwrap_or(word.len())
        })
        .max()
        .unwrap_or(0)
}

/// Peels `word = p_{m}·σ₀(z)` level by level while the phase is unique.
pub fn sadic_decompose(word: &str) -> Result<SAdicDecomposition, SymbolicError> {
    Alphabet::Ab.check(word, 0)?;
    let mut cur = word.as_bytes().to_vec();
    let mut indices = Vec::new();
    let mut scale = 1usize;
    let mut offset = 0usize;
    while cur.len() >= 6 {
        let cands = phases(&cur);
        match cands.len() {
            0 if indices.is_empty() => return Err(SymbolicError::NotSAdic { pos: first_mismatch(&cur) }),
            0 => return Err(SymbolicError::NotSAdic { pos: offset + first_mismatch(&cur) * scale }),
            1 => {
                let (k, z) = cands.into_iter().next().expect("one candidate");
                indices.push(k);
                offset += k * scale;
                scale *= 4;
                cur = z;
            }
            _ => break,
        }
    }
    let consumed = (offset + cur.len() * scale).min(word.len());
    Ok(SAdicDecomposition { indices, residual: String::from_utf8(cur).expect("ascii"), consumed })
}

/// `σ_{m₁} ∘ … ∘ σ_{m_ℓ}(seed)`.
pub fn compose_substitutions(indices: &[usize], seed: &str) -> Result<String, SymbolicError> {
    let mut w = seed.to_string();
    for &i in indices.iter().rev() {
        w = apply_substitution(i, &w)?;
    }
    Ok(w)
}

/// `σ_κ(w)` on an infinite word's prefix: `p_κ·σ₀(w)`.
pub fn apply_substitution_infinite(i: usize, word: &str) -> Result<String, SymbolicError> {
    let lead = LEAD.get(i).ok_or(SymbolicError::BadSymbol { pos: 0, symbol: char::from(b'0' + i as u8) })?;
    Ok(format!("{lead}{}", apply_substitution(0, word)?))
}

/// Position of address digit `m ∈ {0, 2, 3, 5}` among the four substitutions.
pub fn sigma_index(m: u8) -> Option<usize> {
    [0u8, 2, 3, 5].iter().position(|&d| d == m)
}

/// Address digit of `σ_k`.
pub fn digit_of_sigma(k: usize) -> Option<u8> {
    [0u8, 2, 3, 5].get(k).copied()
}

/// Digits `m₁ … m_k` of the address of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Address {
    pub digits: Vec<u8>,
    /// `S` became undefined before the requested length (a periodic point).
    pub truncated: bool,
}

/// Records the digit of each `S`-step along the orbit of `x`.
pub fn address_of(x: &Cyclo, len: usize) -> Result<Address, SymbolicError> {
    let mut digits = Vec::with_capacity(len);
    let mut cur = x.clone();
    while digits.len() < len {
        match dynamics::step_s_with_digit(&cur)? {
            Some((m, next)) => {
                digits.push(m as u8);
                cur = next;
            }
            None => return Ok(Address { digits, truncated: true }),
        }
    }
    Ok(Address { digits, truncated: false })
}

/// `d̃(f_m(x))` against `σ_κ(d̃(x))` on the first `len` symbols.
pub fn renormalization_holds(x: &Cyclo, m: u8, len: usize) -> Result<bool, SymbolicError> {
    let k = sigma_index(m).ok_or(SymbolicError::BadSymbol { pos: 0, symbol: char::from(b'0' + m) })?;
    let y = digit_map(m).apply(x);
    let lhs = coding_dtilde(&y, len)?;
    let rhs = apply_substitution_infinite(k, &coding_dtilde(x, len.div_ceil(4) + 1)?)?;
    Ok(lhs == rhs[..len])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;
    use crate::regions::PointSet;
    use proptest::prelude::*;

    fn pt(s: &str) -> Cyclo {
        parse_cyclo(5, s).unwrap()
    }

    #[test]
    fn d_coding_of_one_third() {
        assert_eq!(coding_d(&pt("1/3"), 26).unwrap(), "10110101011010101101101101");
        assert_eq!(coding_d(&Cyclo::zero(5), 8).unwrap(), "00000000");
        let w = coding_d(&pt("1/3"), 500).unwrap();
        assert!(!w.contains("00"));
    }

    #[test]
    fn induced_coding_expands_to_d() {
        let x = pt("-2*zeta^-1/3");
        let dt = coding_dtilde(&x, 200).unwrap();
        let d = ab_to_binary(&dt).unwrap();
        assert_eq!(coding_d(&x, d.len()).unwrap(), d);
        assert!(coding_dtilde(&pt("1/3"), 4).is_err());
    }

    #[test]
    fn induced_coding_at_q_repeats_with_period_five() {
        let q = crate::regions::center_q();
        let w = coding_dtilde(q, 40).unwrap();
        assert!(w.as_bytes().windows(6).all(|s| s[0] == s[5]));
    }

    #[test]
    fn substitution_images() {
        assert_eq!(apply_substitution(0, "a").unwrap(), "aaba");
        assert_eq!(apply_substitution(2, "b").unwrap(), "baba");
        assert_eq!(apply_substitution(1, "ab").unwrap(), "aaababab");
        // σ_k is conjugate to σ₀ by its leading word
        for k in 0..4 {
            for w in ["ab", "aab", "abaab"] {
                let conj = format!("{}{}", LEAD[k], apply_substitution(0, w).unwrap());
                assert_eq!(apply_substitution(k, w).unwrap(), conj[..conj.len() - k]);
            }
        }
        let fp = sigma0_fixed_point(64);
        assert_eq!(apply_substitution(0, &fp[..16]).unwrap(), fp);
    }

    #[test]
    fn decomposition_of_the_fixed_point_is_all_zero() {
        let d = sadic_decompose(&sigma0_fixed_point(4096)).unwrap();
        assert!(d.indices.len() >= 4);
        assert!(d.indices.iter().all(|&i| i == 0));
        let w = compose_substitutions(&[1, 0], "abaab").unwrap();
        assert_eq!(sadic_decompose(&w).unwrap().indices[..2], [1, 0]);
        assert!(matches!(sadic_decompose("aaaaaaaa"), Err(SymbolicError::NotSAdic { .. })));
    }

    #[test]
    fn decomposition_matches_address_of_t_one_third() {
        let x = pt("-2*zeta^-1/3");
        let d = sadic_decompose(&coding_dtilde(&x, 4 * 4096).unwrap()).unwrap();
        let addr = address_of(&x, d.indices.len()).unwrap();
        assert!(d.indices.len() >= 5);
        let from_sigma: Vec<u8> = d.indices.iter().map(|&k| digit_of_sigma(k).unwrap()).collect();
        assert_eq!(from_sigma, addr.digits);
    }

    #[test]
    fn digits_one_and_four_stop_once_the_orbit_enters_tzed() {
        assert_eq!(address_of(&pt("1/3"), 4).unwrap().digits, [0, 1, 0, 5]);
        for a in 0..12 {
            for b in 0..12 {
                let mut x = pt(&format!("{a}/12 - zeta^-1*{b}/12"));
                let mut inside = false;
                for _ in 0..30 {
                    inside |= dynamics::in_tzed(&x);
                    let Some((m, y)) = dynamics::step_s_with_digit(&x).unwrap() else { break };
                    assert!(!inside || ![1, 4].contains(&m), "{x}");
                    x = y;
                }
            }
        }
        assert_eq!(address_of(&Cyclo::zero(5), 5).unwrap().digits, vec![0; 5]);
        assert!(address_of(crate::regions::center_p(), 3).unwrap().truncated);
    }

    #[test]
    fn cut_points_coincide() {
        for (u, v) in cut_point_pairs() {
            assert_eq!(eval_lasso(&u).unwrap(), eval_lasso(&v).unwrap(), "{u} vs {v}");
        }
        assert_eq!(eval_lasso(&Lasso::parse("(0)").unwrap()).unwrap(), Cyclo::zero(5));
        assert_eq!(Lasso::parse("02(0)").unwrap().to_string(), "02(0)");
    }

    #[test]
    fn cylinders_nest() {
        let outer = cylinder(&[5]);
        let inner = cylinder(&[5, 3]);
        for v in inner.vertices() {
            assert!(outer.closure_contains(v));
        }
        assert!(Named::Hull.region().contains(&eval_lasso(&Lasso::parse("2(35)").unwrap()).unwrap()));
    }

    #[test]
    fn renormalization_on_samples() {
        let tz = Named::TZed.region();
        let samples: Vec<Cyclo> = tz.sample_points(6).into_iter().filter(|x| tz.contains(x)).collect();
        assert!(!samples.is_empty());
        for x in &samples {
            for m in [0u8, 2, 3, 5] {
                assert!(renormalization_holds(x, m, 80).unwrap(), "{x} digit {m}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn decompose_inverts_composition(ms in proptest::collection::vec(0usize..4, 10), start in 0usize..200) {
            let fp = sigma0_fixed_point(220);
            let w = compose_substitutions(&ms, &fp[start..start + 6]).unwrap();
            let d = sadic_decompose(&w).unwrap();
            prop_assert!(d.indices.len() >= 10);
            prop_assert_eq!(&d.indices[..10], &ms[..]);
        }
    }
}
