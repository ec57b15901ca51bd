//! The 2-adic odometer model of the aperiodic dynamics.
//!
//! Eventually periodic 2-adic integers are base-4 lassos. A multiplicative
//! coding `σ_{y₀}σ_{y₁}…` maps to `ι = −Σ κ(yᵢ)4ⁱ`, and `φ` sends a 2-adic
//! integer to the point of `Y′` whose address is the digit image of its
//! coding. Adding one corresponds to `T̃`, dropping a digit to `S`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{Cyclo, CycloError};
use crate::dynamics::{self, CertificateKind, DynamicsError};
use crate::fractal::{self, ADDRESS_DIGITS};
use crate::symbolic::{self, Lasso, SymbolicError};

type Rat = BigRational;

#[derive(Debug, Error)]
pub enum OdometerError {
    #[error("base-4 digit {0} out of range")]
    BadDigit(u8),
    #[error("empty periodic part")]
    EmptyCycle,
    #[error("digit {digit} does not match the S-step of {point}")]
    WrongDigit { digit: u8, point: String },
    #[error("{0} is periodic under T, outside the aperiodic expansion")]
    Periodic(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Shortest form of `prefix · cycle^∞`: primitive cycle, then the prefix
/// tail folded into the cycle.
pub fn canonical_lasso(prefix: &[u8], cycle: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let n = cycle.len();
    let root = (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| cycle[i] == cycle[i % d])).unwrap_or(n);
    let mut cycle = cycle[..root].to_vec();
    let mut prefix = prefix.to_vec();
    while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
        if p != c {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    (prefix, cycle)
}

/// An eventually periodic 2-adic integer as base-4 digits, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

impl Dyadic {
    pub fn new(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self, OdometerError> {
        if cycle.is_empty() {
            return Err(OdometerError::EmptyCycle);
        }
        if let Some(&d) = prefix.iter().chain(&cycle).find(|&&d| d > 3) {
            return Err(OdometerError::BadDigit(d));
        }
        let (prefix, cycle) = canonical_lasso(&prefix, &cycle);
        Ok(Dyadic { prefix, cycle })
    }

    pub fn zero() -> Self {
        Dyadic { prefix: Vec::new(), cycle: vec![0] }
    }

    pub fn from_i64(n: i64) -> Self {
        let fill = if n < 0 { 3 } else { 0 };
        let mut prefix = Vec::new();
        let mut v = n;
        while v != 0 && v != -1 {
            prefix.push(v.rem_euclid(4) as u8);
            v = v.div_euclid(4);
        }
        Dyadic::new(prefix, vec![fill]).expect("valid digits")
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u8] {
        &self.cycle
    }

    /// Base-4 digit `i`.
    pub fn digit(&self, i: usize) -> u8 {
        match self.prefix.get(i) {
            Some(&d) => d,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    pub fn digits(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// The rational number with this 2-adic expansion.
    pub fn to_rational(&self) -> Rat {
        let four = BigInt::from(4);
        let horner = |w: &[u8]| w.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &four + d);
        let head = horner(&self.prefix);
        let period = four.pow(self.cycle.len() as u32);
        let tail = Rat::new(horner(&self.cycle), BigInt::one() - period);
        Rat::from_integer(head) + tail * Rat::from_integer(four.pow(self.prefix.len() as u32))
    }

    pub fn add_one(&self) -> Dyadic {
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&self.cycle);
        for d in prefix.iter_mut() {
            if *d < 3 {
                *d += 1;
                return Dyadic::new(prefix, self.cycle.clone()).expect("valid digits");
            }
            *d = 0;
        }
        // the cycle is all 3s: the carry runs forever and leaves zeros
        Dyadic::new(prefix, vec![0]).expect("valid digits")
    }

    /// Digitwise complement, `−x − 1`.
    pub fn complement(&self) -> Dyadic {
        let flip = |w: &[u8]| w.iter().map(|d| 3 - d).collect();
        Dyadic::new(flip(&self.prefix), flip(&self.cycle)).expect("valid digits")
    }

    pub fn neg(&self) -> Dyadic {
        self.complement().add_one()
    }

    /// `x mod 4`.
    pub fn low_digit(&self) -> u8 {
        self.digit(0)
    }

    /// `(x − (x mod 4))/4`: drops the lowest digit.
    pub fn rho(&self) -> Dyadic {
        if self.prefix.is_empty() {
            let mut c = self.cycle.clone();
            c.rotate_left(1);
            Dyadic::new(Vec::new(), c).expect("valid digits")
        } else {
            Dyadic::new(self.prefix[1..].to_vec(), self.cycle.clone()).expect("valid digits")
        }
    }

    /// `(x + ((−x) mod 4))/4`, the digit drop on `−x` carried back: `−ρ(−x)`.
    pub fn rho_corrected(&self) -> Dyadic {
        self.neg().rho().neg()
    }

    /// `(−x) mod 4`, the index of the substitution leading the coding.
    pub fn lead_index(&self) -> u8 {
        self.neg().low_digit()
    }

    pub fn random<R: Rng>(rng: &mut R, max_prefix: usize, max_cycle: usize) -> Dyadic {
        let p = rng.gen_range(0..=max_prefix);
        let c = rng.gen_range(1..=max_cycle);
        let prefix = (0..p).map(|_| rng.gen_range(0..4)).collect();
        let cycle = (0..c).map(|_| rng.gen_range(0..4)).collect();
        Dyadic::new(prefix, cycle).expect("valid digits")
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |w: &[u8]| w.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        write!(f, "{}({})", s(&self.prefix), s(&self.cycle))
    }
}

/// `κ` of each lead word: `λ ↦ 0`, `a ↦ 1`, `ba ↦ 2`, `aba ↦ 3`.
pub fn kappa(lead: &str) -> Option<u8> {
    ["", "a", "ba", "aba"].iter().position(|&w| w == lead).map(|k| k as u8)
}

/// `ι(z) = −Σ κ(yᵢ)4ⁱ` for a coding given by substitution indices.
pub fn iota(indices: &Lasso) -> Result<Dyadic, OdometerError> {
    Ok(Dyadic::new(indices.prefix.clone(), indices.cycle.clone())?.neg())
}

/// Substitution indices of the coding with `ι = x`.
pub fn iota_inv(x: &Dyadic) -> Lasso {
    let y = x.neg();
    Lasso { prefix: y.prefix, cycle: y.cycle }
}

/// Address digit `ξ(σ_k)`.
pub fn xi(k: u8) -> u8 {
    ADDRESS_DIGITS[k as usize]
}

/// The address `ξ(y₀)ξ(y₁)…` of `φ(x)`.
pub fn phi_address(x: &Dyadic) -> Lasso {
    let z = iota_inv(x);
    Lasso { prefix: z.prefix.iter().map(|&k| xi(k)).collect(), cycle: z.cycle.iter().map(|&k| xi(k)).collect() }
}

/// `φ = η ∘ ι⁻¹`, exact.
pub fn phi_map(x: &Dyadic) -> Result<Cyclo, OdometerError> {
    Ok(symbolic::eval_lasso(&phi_address(x))?)
}

/// Whether some tail of the address is one side of a cut-point pair, so
/// the point it names has a second address.
pub fn is_cut_point_address(addr: &Lasso) -> bool {
    let cuts: Vec<(Vec<u8>, Vec<u8>)> = symbolic::cut_point_pairs()
        .into_iter()
        .flat_map(|(a, b)| [a, b])
        .map(|l| canonical_lasso(&l.prefix, &l.cycle))
        .collect();
    let word: Vec<u8> = addr.prefix.iter().chain(&addr.cycle).copied().collect();
    (0..=word.len()).any(|s| {
        let tail = if s <= addr.prefix.len() {
            canonical_lasso(&addr.prefix[s..], &addr.cycle)
        } else {
            let mut c = addr.cycle.clone();
            c.rotate_left(s - addr.prefix.len());
            canonical_lasso(&[], &c)
        };
        cuts.contains(&tail)
    })
}

fn edge_automaton() -> &'static symbolic::AutomatonGraph {
    static G: OnceLock<symbolic::AutomatonGraph> = OnceLock::new();
    G.get_or_init(|| symbolic::build_edge_automaton().expect("edge automaton"))
}

/// Whether the address names a point on an open edge of some `Dᵢ`: a cut
/// point, or a point whose address tail runs along the edge automaton.
pub fn is_boundary_address(addr: &Lasso) -> bool {
    is_cut_point_address(addr) || edge_automaton().accepts_lasso(addr)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DiagramReport {
    pub samples: usize,
    pub exact_passes: usize,
    pub cutpoint_exceptions: Vec<String>,
    pub failures: Vec<String>,
}

impl DiagramReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, x: &Dyadic, holds: bool, addresses: &[Lasso]) {
        self.samples += 1;
        if holds {
            self.exact_passes += 1;
        } else if addresses.iter().any(is_boundary_address) {
            self.cutpoint_exceptions.push(x.to_string());
        } else {
            self.failures.push(x.to_string());
        }
    }
}

/// `φ(x + 1) = T̃(φ(x))`.
pub fn additive_holds(x: &Dyadic) -> Result<bool, OdometerError> {
    let y = phi_map(x)?;
    if !dynamics::in_tzed(&y) {
        return Ok(false);
    }
    Ok(phi_map(&x.add_one())? == dynamics::step_ttilde(&y)?)
}

/// `φ(r(x)) = S(φ(x))` for the digit drop `r`.
pub fn multiplicative_holds(x: &Dyadic, r: impl Fn(&Dyadic) -> Dyadic) -> Result<bool, OdometerError> {
    let y = phi_map(x)?;
    if !dynamics::in_l(&y) {
        return Ok(false);
    }
    Ok(match dynamics::step_s(&y)? {
        Some(s) => phi_map(&r(x))? == s,
        None => false,
    })
}

pub fn additive_diagram(xs: &[Dyadic]) -> Result<DiagramReport, OdometerError> {
    let mut rep = DiagramReport::default();
    for x in xs {
        let holds = additive_holds(x)?;
        rep.record(x, holds, &[phi_address(x), phi_address(&x.add_one())]);
    }
    Ok(rep)
}

/// The multiplicative diagram with `ρ` as stated (`corrected = false`) or with `−ρ(−x)`.
pub fn multiplicative_diagram(xs: &[Dyadic], corrected: bool) -> Result<DiagramReport, OdometerError> {
    let r = |x: &Dyadic| if corrected { x.rho_corrected() } else { x.rho() };
    let mut rep = DiagramReport::default();
    for x in xs {
        let holds = multiplicative_holds(x, r)?;
        rep.record(x, holds, &[phi_address(x), phi_address(&r(x))]);
    }
    Ok(rep)
}

/// Random lassos whose `φ`-addresses, and those of their images, avoid the boundary.
pub fn sample_dyadics<R: Rng>(rng: &mut R, n: usize) -> Vec<Dyadic> {
    sample_dyadics_avoiding(rng, n, is_boundary_address)
}

/// Random lassos whose `φ`-addresses, and those of their images, satisfy no `bad`.
pub fn sample_dyadics_avoiding<R: Rng>(rng: &mut R, n: usize, bad: impl Fn(&Lasso) -> bool) -> Vec<Dyadic> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = Dyadic::random(rng, 6, 4);
        let clean = [phi_address(&x), phi_address(&x.add_one()), phi_address(&x.rho()), phi_address(&x.rho_corrected())]
            .iter()
            .all(|a| !bad(a));
        if clean {
            out.push(x);
        }
    }
    out
}

/// A point of the natural extension: the forward point in `Y′` and the
/// backward point in the dual attractor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalExtensionPoint {
    pub forward: Cyclo,
    pub backward: Cyclo,
}

/// `(η, θ) ↦ ((η − d_m)ω²/ζᵐ, ζ^{−2m}(θ − u_m)/ω²)`.
pub fn natural_extension_step(p: &NaturalExtensionPoint, m: u8) -> Result<NaturalExtensionPoint, OdometerError> {
    let wrong = || OdometerError::WrongDigit { digit: m, point: p.forward.to_string() };
    let (digit, next) = dynamics::step_s_with_digit(&p.forward)?.ok_or_else(wrong)?;
    if digit as u8 != m {
        return Err(wrong());
    }
    let d = dynamics::digit(m as usize);
    let forward = (&p.forward - d).div(&Cyclo::zeta_pow(5, m as i64))? * Cyclo::omega_pow(2);
    debug_assert_eq!(forward, next);
    Ok(NaturalExtensionPoint { forward, backward: fractal::dual_map(m).apply(&p.backward) })
}

/// The inverse of [`natural_extension_step`] with digit `m`.
pub fn natural_extension_unstep(p: &NaturalExtensionPoint, m: u8) -> Result<NaturalExtensionPoint, OdometerError> {
    let g = fractal::dual_map(m);
    let backward = (&p.backward - &g.b).div(&g.a)?;
    Ok(NaturalExtensionPoint { forward: symbolic::digit_map(m).apply(&p.forward), backward })
}

/// A number in `[0, 1)` as base-4 digits after the point, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base4Fraction {
    pub prefix: Vec<u8>,
    pub cycle: Vec<u8>,
}

impl Base4Fraction {
    pub fn new(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self, OdometerError> {
        if cycle.is_empty() {
            return Err(OdometerError::EmptyCycle);
        }
        if let Some(&d) = prefix.iter().chain(&cycle).find(|&&d| d > 3) {
            return Err(OdometerError::BadDigit(d));
        }
        let (prefix, cycle) = canonical_lasso(&prefix, &cycle);
        Ok(Base4Fraction { prefix, cycle })
    }

    pub fn to_rational(&self) -> Rat {
        let four = BigInt::from(4);
        let head = self.prefix.iter().fold(BigInt::zero(), |acc, &d| acc * &four + d);
        let body = self.cycle.iter().fold(BigInt::zero(), |acc, &d| acc * &four + d);
        let period = four.pow(self.cycle.len() as u32) - 1;
        let scale = four.pow(self.prefix.len() as u32);
        (Rat::from_integer(head) + Rat::new(body, period)) / Rat::from_integer(scale)
    }

    /// `(y + c)/4`: `c` becomes the leading digit.
    pub fn push_front(&self, c: u8) -> Base4Fraction {
        let mut prefix = vec![c];
        prefix.extend_from_slice(&self.prefix);
        Base4Fraction::new(prefix, self.cycle.clone()).expect("valid digits")
    }
}

/// `φ′(0.c₁c₂…₄) = lim g_{ξ(c₁)} ∘ g_{ξ(c₂)} ∘ …`, the dual telescope.
pub fn phi_dual(y: &Base4Fraction) -> Result<Cyclo, OdometerError> {
    let word = |w: &[u8]| {
        w.iter()
            .rev()
            .fold(symbolic::Affine::identity(), |acc, &c| fractal::dual_map(xi(c)).compose(&acc))
    };
    let fixed = word(&y.cycle).fixed_point()?;
    Ok(word(&y.prefix).apply(&fixed))
}

/// `(x, y) ↦ ((x − c)/4, (y + c)/4)` with `c = x mod 4`.
pub fn rho_hat(x: &Dyadic, y: &Base4Fraction) -> (Dyadic, Base4Fraction) {
    let c = x.low_digit();
    (x.rho(), y.push_front(c))
}

/// `(x, y) ↦ ((x + c)/4, (y + c)/4)` with `c = (−x) mod 4`.
pub fn rho_hat_corrected(x: &Dyadic, y: &Base4Fraction) -> (Dyadic, Base4Fraction) {
    let c = x.lead_index();
    (x.rho_corrected(), y.push_front(c))
}

/// `(φ × φ′) ∘ r = Ŝ ∘ (φ × φ′)` at `(x, y)`.
pub fn natural_extension_conjugacy(
    x: &Dyadic,
    y: &Base4Fraction,
    r: impl Fn(&Dyadic, &Base4Fraction) -> (Dyadic, Base4Fraction),
) -> Result<bool, OdometerError> {
    let p = NaturalExtensionPoint { forward: phi_map(x)?, backward: phi_dual(y)? };
    let m = xi(x.lead_index());
    let Ok(next) = natural_extension_step(&p, m) else {
        return Ok(false);
    };
    let (x2, y2) = r(x, y);
    Ok(next == NaturalExtensionPoint { forward: phi_map(&x2)?, backward: phi_dual(&y2)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PurityVerdict {
    PurelyPeriodic,
    NotPurelyPeriodic,
}

/// Evidence from covers of the dual attractor for `galois(y, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "depth")]
pub enum DualEvidence {
    /// Outside the depth-`d` cover, hence outside the attractor.
    ExcludedAt(usize),
    /// Inside every cover up to this depth.
    ConsistentThrough(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityReport {
    pub point: Cyclo,
    pub verdict: PurityVerdict,
    pub preperiod: usize,
    pub cycle: usize,
    pub dual_point: Cyclo,
    pub dual_evidence: DualEvidence,
}

/// Membership of `y` in the closure of the depth-`d` cover of the dual attractor.
pub fn dual_cover_contains(y: &Cyclo, depth: usize) -> bool {
    let sys = fractal::IfsSystem::dual();
    fn go(y: &Cyclo, d: usize, sys: &fractal::IfsSystem) -> bool {
        if !sys.seed.closure_contains(y) {
            return false;
        }
        d == 0
            || sys.maps.iter().any(|g| {
                let pre = (y - &g.b).div(&g.a).expect("nonzero scale");
                go(&pre, d - 1, sys)
            })
    }
    go(y, depth, &sys)
}

/// Pure periodicity of the `S`-expansion of `y`, decided exactly from its
/// `S`-orbit, with cover evidence for the dual point.
pub fn pure_periodicity_test(y: &Cyclo, max_depth: usize) -> Result<PurityReport, OdometerError> {
    let cert = dynamics::classify(y)?;
    if cert.kind == CertificateKind::Periodic {
        return Err(OdometerError::Periodic(y.to_string()));
    }
    let preperiod = cert.preperiod.expect("aperiodic certificate");
    let cycle = cert.cycle.expect("aperiodic certificate");
    let dual_point = y.galois(2)?;
    let dual_evidence = (0..=max_depth)
        .find(|&d| !dual_cover_contains(&dual_point, d))
        .map_or(DualEvidence::ConsistentThrough(max_depth), DualEvidence::ExcludedAt);
    let verdict = if preperiod == 0 { PurityVerdict::PurelyPeriodic } else { PurityVerdict::NotPurelyPeriodic };
    Ok(PurityReport { point: y.clone(), verdict, preperiod, cycle, dual_point, dual_evidence })
}

/// `(y, galois(y, 2))` for each point of the `S`-cycle of `y`, in orbit order.
pub fn natural_extension_cycle(y: &Cyclo) -> Result<Vec<(NaturalExtensionPoint, u8)>, OdometerError> {
    let cert = dynamics::classify(y)?;
    if cert.kind == CertificateKind::Periodic {
        return Err(OdometerError::Periodic(y.to_string()));
    }
    let l = cert.cycle.unwrap_or(0);
    let mut out = Vec::with_capacity(l);
    let mut cur = cert.witness_point.clone();
    for _ in 0..l {
        let (m, next) = dynamics::step_s_with_digit(&cur)?.expect("aperiodic orbit");
        out.push((NaturalExtensionPoint { forward: cur.clone(), backward: cur.galois(2)? }, m as u8));
        cur = next;
    }
    Ok(out)
}
