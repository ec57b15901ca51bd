//! Exact arithmetic in the cyclotomic fields Q(ζ₅), Q(ζ₇) and Q(ζ₉).
//!
//! Elements are stored over the power basis `1, ζ, …, ζ^{φ(n)−1}` and are
//! always reduced modulo the n-th cyclotomic polynomial, so equality of field
//! elements is equality of coordinates.
//!
//! For n = 5 every sign question is answered with rational arithmetic in
//! Q(√5) via [`QuadReal`]. For n = 7, 9 signs come from certified interval
//! enclosures of the complex embedding.

mod interval;
mod parse;
pub mod poly;
mod quad;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use interval::{ComplexInterval, Interval};
pub use parse::parse_cyclo;
pub use poly::{is_pisot, is_unit, IntPoly, PisotReport};
pub use quad::{floor_omega_times, floor_sqrt5_times, QuadReal};

pub(crate) use quad::{rat_to_f64, sign_of};

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("unsupported cyclotomic order {0}; expected 5, 7 or 9")]
    UnsupportedOrder(u32),
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is not invertible modulo {n}")]
    NotAUnit { k: i64, n: u32 },
    #[error("expected {expected} coefficients, got {got}")]
    CoeffCount { expected: usize, got: usize },
    #[error("operation is only defined for n = 5")]
    NeedsOrderFive,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is reducible, with factor {0}")]
    Reducible(String),
    #[error("degenerate polynomial: {0}")]
    Degenerate(String),
}

/// Euler φ for the supported orders.
pub fn degree(n: u32) -> Result<usize, CycloError> {
    match n {
        5 => Ok(4),
        7 | 9 => Ok(6),
        _ => Err(CycloError::UnsupportedOrder(n)),
    }
}

/// Coefficients of Φₙ, lowest degree first (monic).
fn cyclotomic_poly(n: u32) -> &'static [i8] {
    match n {
        5 => &[1, 1, 1, 1, 1],
        7 => &[1, 1, 1, 1, 1, 1, 1],
        9 => &[1, 0, 0, 1, 0, 0, 1],
        _ => unreachable!("order checked at construction"),
    }
}

fn rat(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

/// An element of Q(ζₙ).
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    n: u32,
    c: Vec<Rat>,
}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for x in &self.c {
            x.hash(state);
        }
    }
}

impl Cyclo {
    pub fn from_coeffs(n: u32, c: Vec<Rat>) -> Result<Self, CycloError> {
        let d = degree(n)?;
        if c.len() != d {
            return Err(CycloError::CoeffCount { expected: d, got: c.len() });
        }
        Ok(Cyclo { n, c })
    }

    /// Builds from an arbitrary-length polynomial in ζ, reducing modulo Φₙ.
    pub fn from_poly(n: u32, mut p: Vec<Rat>) -> Result<Self, CycloError> {
        let d = degree(n)?;
        reduce(n, &mut p);
        p.resize(d, Rat::zero());
        Ok(Cyclo { n, c: p })
    }

    pub fn zero(n: u32) -> Self {
        let d = degree(n).expect("supported order");
        Cyclo { n, c: vec![Rat::zero(); d] }
    }

    pub fn from_rational(n: u32, q: Rat) -> Self {
        let mut z = Cyclo::zero(n);
        z.c[0] = q;
        z
    }

    pub fn from_int(n: u32, i: i64) -> Self {
        Cyclo::from_rational(n, rat(i))
    }

    pub fn one(n: u32) -> Self {
        Cyclo::from_int(n, 1)
    }

    /// ζₙᵏ for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rat::zero(); k + 1];
        p[k] = Rat::one();
        Cyclo::from_poly(n, p).expect("supported order")
    }

    pub fn zeta(n: u32) -> Self {
        Cyclo::zeta_pow(n, 1)
    }

    /// ω = −ζ² − ζ⁻² in Q(ζ₅).
    pub fn omega() -> Self {
        -(&Cyclo::zeta_pow(5, 2) + &Cyclo::zeta_pow(5, 3))
    }

    /// 1/ω = ζ + ζ⁻¹ in Q(ζ₅).
    pub fn inv_omega() -> Self {
        &Cyclo::zeta_pow(5, 1) + &Cyclo::zeta_pow(5, 4)
    }

    /// ωᵏ in Q(ζ₅), any integer k.
    pub fn omega_pow(k: i64) -> Self {
        let base = if k >= 0 { Cyclo::omega() } else { Cyclo::inv_omega() };
        base.pow_u(k.unsigned_abs())
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, o: &Cyclo) -> Result<(), CycloError> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(CycloError::OrderMismatch(self.n, o.n))
        }
    }

    pub fn try_add(&self, o: &Cyclo) -> Result<Cyclo, CycloError> {
        self.check_same(o)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &Cyclo) -> Result<Cyclo, CycloError> {
        self.check_same(o)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &Cyclo) -> Result<Cyclo, CycloError> {
        self.check_same(o)?;
        Ok(self * o)
    }

    /// Multiplicative inverse via the product of the non-trivial conjugates.
    pub fn inv(&self) -> Result<Cyclo, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let mut others = Cyclo::one(self.n);
        for k in units(self.n).into_iter().skip(1) {
            others = &others * &self.galois_unchecked(k);
        }
        let norm = &(self * &others).c[0];
        Ok(others.scale(&(Rat::one() / norm)))
    }

    pub fn div(&self, o: &Cyclo) -> Result<Cyclo, CycloError> {
        self.check_same(o)?;
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, q: &Rat) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * q).collect() }
    }

    pub fn pow_u(&self, mut e: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<Cyclo, CycloError> {
        if e >= 0 {
            Ok(self.pow_u(e as u64))
        } else {
            Ok(self.inv()?.pow_u(e.unsigned_abs()))
        }
    }

    /// Multiplication by ζᵏ; cheaper than a general product.
    pub fn mul_zeta_pow(&self, k: i64) -> Cyclo {
        let k = k.rem_euclid(self.n as i64) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut p = vec![Rat::zero(); self.c.len() + k];
        for (i, x) in self.c.iter().enumerate() {
            p[i + k] = x.clone();
        }
        Cyclo::from_poly(self.n, p).expect("same order")
    }

    /// Ring homomorphism ζ ↦ ζᵏ.
    pub fn galois(&self, k: i64) -> Result<Cyclo, CycloError> {
        let kk = k.rem_euclid(self.n as i64);
        if num_integer::gcd(kk, self.n as i64) != 1 {
            return Err(CycloError::NotAUnit { k, n: self.n });
        }
        Ok(self.galois_unchecked(kk))
    }

    fn galois_unchecked(&self, k: i64) -> Cyclo {
        let n = self.n as i64;
        let mut p = vec![Rat::zero(); self.n as usize];
        for (j, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                let e = ((j as i64) * k).rem_euclid(n) as usize;
                p[e] += x;
            }
        }
        Cyclo::from_poly(self.n, p).expect("same order")
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclo {
        self.galois_unchecked(self.n as i64 - 1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Coordinates `(x₁, x₂, y₁, y₂)` over `Q(ω)` with `x = x₁ + x₂ω + (y₁ + y₂ω)ζ`.
    pub fn pentagon_basis(&self) -> Result<[Rat; 4], CycloError> {
        if self.n != 5 {
            return Err(CycloError::NeedsOrderFive);
        }
        let [a0, a1, a2, a3] = [&self.c[0], &self.c[1], &self.c[2], &self.c[3]];
        Ok([a0 - a2 + a3, -a3.clone(), a1 - a2 + a3, a2 - a3])
    }

    pub fn from_pentagon_basis(b: &[Rat; 4]) -> Cyclo {
        let [x1, x2, y1, y2] = b;
        Cyclo { n: 5, c: vec![x1 + y2, y1 + y2, y2 - x2, -x2.clone()] }
    }

    /// Coordinates `(X, Y)` with `x = X − ζ⁻¹Y`, both real in Q(ω).
    ///
    /// The lozenge `L` is exactly `X, Y ∈ [0, 1)`.
    pub fn lozenge_coords(&self) -> Result<(QuadReal, QuadReal), CycloError> {
        let [x1, x2, y1, y2] = self.pentagon_basis()?;
        let xx = QuadReal::new(&x1 - &y1 + &y2, &x2 + &y1);
        let yy = QuadReal::new(y1, y2);
        Ok((xx, yy))
    }

    pub fn from_lozenge_coords(x: &QuadReal, y: &QuadReal) -> Cyclo {
        // X − ζ⁻¹Y with ζ⁻¹ = 1/ω − ζ
        let xc = Cyclo::from_quad(x);
        let yc = Cyclo::from_quad(y);
        &xc - &(&Cyclo::zeta_pow(5, -1) * &yc)
    }

    /// The real element `a + bω` of Q(ζ₅).
    pub fn from_quad(q: &QuadReal) -> Cyclo {
        let w = Cyclo::omega();
        &Cyclo::from_rational(5, q.a.clone()) + &w.scale(&q.b)
    }

    /// Real element of Q(ζ₅) as `a + bω`; `None` if not real.
    pub fn as_quad(&self) -> Option<QuadReal> {
        if self.n != 5 || !self.c[1].is_zero() || self.c[2] != self.c[3] {
            return None;
        }
        // a0 + a2(ζ² + ζ³) = a0 − a2ω
        Some(QuadReal::new(self.c[0].clone(), -self.c[2].clone()))
    }

    /// `2·Re(x)` as an element of Q(ω) (n = 5).
    pub fn re2_quad(&self) -> Result<QuadReal, CycloError> {
        if self.n != 5 {
            return Err(CycloError::NeedsOrderFive);
        }
        // cos 72° = (ω−1)/2, cos 144° = −ω/2
        let [a0, a1, a2, a3] = [&self.c[0], &self.c[1], &self.c[2], &self.c[3]];
        Ok(QuadReal::new(a0 * rat(2) - a1, a1 - a2 - a3))
    }

    /// `Im(x)/sin 72°` as an element of Q(ω) (n = 5).
    pub fn im_quad(&self) -> Result<QuadReal, CycloError> {
        if self.n != 5 {
            return Err(CycloError::NeedsOrderFive);
        }
        // sin 144° / sin 72° = 1/ω = ω − 1
        let [_, a1, a2, a3] = [&self.c[0], &self.c[1], &self.c[2], &self.c[3]];
        Ok(QuadReal::new(a1 - a2 + a3, a2 - a3))
    }

    pub fn sign_real(&self) -> i8 {
        if self.n == 5 {
            return self.re2_quad().expect("n = 5").signum();
        }
        let re2 = self + &self.conj();
        if re2.is_zero() {
            return 0;
        }
        interval::certified_sign(self, interval::Part::Re)
    }

    pub fn sign_imag(&self) -> i8 {
        if self.n == 5 {
            return self.im_quad().expect("n = 5").signum();
        }
        let im2 = self - &self.conj();
        if im2.is_zero() {
            return 0;
        }
        interval::certified_sign(self, interval::Part::Im)
    }

    /// Certified enclosure of the complex embedding ζ ↦ exp(2πi/n).
    pub fn embed(&self, bits: u32) -> ComplexInterval {
        interval::embed(self, bits.max(16))
    }

    /// Floating-point embedding for rendering and diagnostics.
    pub fn to_c64(&self) -> (f64, f64) {
        let n = self.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, x) in self.c.iter().enumerate() {
            let v = rat_to_f64(x);
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Squared modulus `x·x̄`, a real element.
    pub fn norm_sq(&self) -> Cyclo {
        self * &self.conj()
    }

    /// Sum of the absolute values of the coordinates.
    pub fn coeff_l1(&self) -> Rat {
        self.c.iter().map(|x| x.abs()).fold(Rat::zero(), |a, b| a + b)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
    }
}

/// The unit group representatives of Z/nZ in increasing order (1 first).
pub fn units(n: u32) -> Vec<i64> {
    (1..n as i64).filter(|k| num_integer::gcd(*k, n as i64) == 1).collect()
}

fn reduce(n: u32, p: &mut Vec<Rat>) {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    while p.len() > d {
        let top = p.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = p.len() - d;
        for (j, &cj) in phi[..d].iter().enumerate() {
            if cj != 0 {
                p[base + j] -= &top * rat(cj as i64);
            }
        }
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n, "cyclotomic order mismatch");
        Cyclo { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n, "cyclotomic order mismatch");
        Cyclo { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n, "cyclotomic order mismatch");
        let d = self.c.len();
        let mut p = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        reduce(self.n, &mut p);
        p.resize(d, Rat::zero());
        Cyclo { n: self.n, c: p }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                (&self).$m(&o)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl fmt::Display for Cyclo {
    /// Power-basis rationals separated by commas, e.g. `1/3,0,0,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_c64();
        write!(f, "Cyclo{}[{}] (≈ {re:.6}{im:+.6}i)", self.n, self)
    }
}

impl std::str::FromStr for Cyclo {
    type Err = CycloError;
    /// Parses in Q(ζ₅); use [`parse_cyclo`] for other orders.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cyclo(5, s)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5(v: [i64; 4]) -> Cyclo {
        Cyclo::from_coeffs(5, v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn zeta_times_zeta4_is_one() {
        let z = Cyclo::zeta(5);
        assert!((&z * &Cyclo::zeta_pow(5, 4)).is_one());
    }

    #[test]
    fn omega_identities() {
        let w = Cyclo::omega();
        assert!((&w * &Cyclo::inv_omega()).is_one());
        assert_eq!(&w * &w, &w + &Cyclo::one(5));
        assert_eq!(Cyclo::zeta_pow(5, 4), c5([-1, -1, -1, -1]));
        assert_eq!(w.as_quad().unwrap(), QuadReal::omega());
    }

    #[test]
    fn galois_examples() {
        let w = Cyclo::omega();
        assert_eq!(w.galois(2).unwrap(), -Cyclo::inv_omega());
        let d3 = Cyclo::zeta(5).div(&w).unwrap();
        let expect = -(&w * &Cyclo::zeta_pow(5, 2));
        assert_eq!(d3.galois(2).unwrap(), expect);
        assert!(w.galois(5).is_err());
        assert!(Cyclo::zeta(9).galois(3).is_err());
    }

    #[test]
    fn pentagon_basis_examples() {
        let wz = &Cyclo::omega() * &Cyclo::zeta(5);
        assert_eq!(wz, c5([1, 1, 1, 0]));
        assert_eq!(wz.pentagon_basis().unwrap(), [rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(Cyclo::one(5).pentagon_basis().unwrap(), [rat(1), rat(0), rat(0), rat(0)]);
        let z3 = Cyclo::zeta_pow(5, 3);
        assert_eq!(z3.pentagon_basis().unwrap(), [rat(1), rat(-1), rat(1), rat(-1)]);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Cyclo::zeta(5).sign_imag(), 1);
        assert_eq!(Cyclo::one(5).sign_imag(), 0);
        let mzi = -Cyclo::zeta_pow(5, -1);
        assert_eq!(mzi.sign_imag(), 1);
        // the QuadReal route (x − x̄)/(ζ − ζ⁻¹) agrees
        let d = &Cyclo::zeta(5) - &Cyclo::zeta_pow(5, -1);
        let y = (&mzi - &mzi.conj()).div(&d).unwrap();
        assert_eq!(y.as_quad().unwrap().signum(), 1);
    }

    #[test]
    fn embed_examples() {
        let near = |iv: &Interval, v: f64, tol: f64| rat_to_f64(&iv.lo) >= v - tol && rat_to_f64(&iv.hi) <= v + tol;
        let w = Cyclo::omega().embed(53);
        assert!(near(&w.re, 1.618_033_988_7, 1e-10));
        assert!(w.re.contains(&Rat::new(16_180_339_887_498_948i64.into(), 10_000_000_000_000_000i64.into())));
        let z = Cyclo::zeta(5).embed(53);
        assert!(near(&z.re, 72f64.to_radians().cos(), 1e-14));
        assert!(near(&z.im, 72f64.to_radians().sin(), 1e-14));
        let w4 = Cyclo::omega_pow(4).embed(53);
        assert!(near(&w4.re, 6.854_101_966_2, 1e-10));
    }

    #[test]
    fn lozenge_coords_round_trip() {
        let x = c5([1, 2, -3, 5]).scale(&Rat::new(1.into(), 7.into()));
        let (a, b) = x.lozenge_coords().unwrap();
        assert_eq!(Cyclo::from_lozenge_coords(&a, &b), x);
        let (a, b) = (-Cyclo::zeta_pow(5, -1)).lozenge_coords().unwrap();
        assert_eq!((a, b), (QuadReal::zero(), QuadReal::one()));
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(Cyclo::zero(7).inv(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn orders_seven_and_nine_invert() {
        for n in [7u32, 9] {
            let x = &Cyclo::zeta(n) + &Cyclo::from_int(n, 3);
            assert!((&x * &x.inv().unwrap()).is_one());
            let z = Cyclo::zeta(n);
            assert!(z.pow_u(n as u64).is_one());
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(a, b)| Rat::new(a.into(), b.into()))
    }

    fn cyclo5() -> impl Strategy<Value = Cyclo> {
        proptest::collection::vec(small_rat(), 4).prop_map(|v| Cyclo::from_coeffs(5, v).unwrap())
    }

    fn cyclo_n() -> impl Strategy<Value = Cyclo> {
        prop_oneof![Just(7u32), Just(9u32)].prop_flat_map(|n| {
            proptest::collection::vec(small_rat(), 6).prop_map(move |v| Cyclo::from_coeffs(n, v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn pentagon_basis_round_trips(x in cyclo5()) {
            let b = x.pentagon_basis().unwrap();
            prop_assert_eq!(Cyclo::from_pentagon_basis(&b), x);
        }

        #[test]
        fn galois_two_has_order_four(x in cyclo5()) {
            let mut y = x.clone();
            for _ in 0..4 { y = y.galois(2).unwrap(); }
            prop_assert_eq!(y, x);
        }

        #[test]
        fn galois_is_multiplicative(x in cyclo5(), y in cyclo5()) {
            prop_assert_eq!((&x * &y).galois(2).unwrap(), &x.galois(2).unwrap() * &y.galois(2).unwrap());
        }

        #[test]
        fn inverse_is_inverse(x in cyclo5()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn sign_imag_matches_embedding(x in cyclo5()) {
            prop_assume!(!x.is_zero());
            let e = x.embed(256);
            let s = x.sign_imag();
            match s {
                1 => prop_assert!(e.im.lo_positive()),
                -1 => prop_assert!(e.im.hi_negative()),
                _ => prop_assert!(e.im.contains_zero()),
            }
            let r = x.sign_real();
            match r {
                1 => prop_assert!(e.re.lo_positive()),
                -1 => prop_assert!(e.re.hi_negative()),
                _ => prop_assert!(e.re.contains_zero()),
            }
        }

        #[test]
        fn signs_for_higher_orders_match_floats(x in cyclo_n()) {
            let (re, im) = x.to_c64();
            if im.abs() > 1e-9 { prop_assert_eq!(x.sign_imag() as f64, im.signum()); }
            if re.abs() > 1e-9 { prop_assert_eq!(x.sign_real() as f64, re.signum()); }
        }
    }
}
