//! Real elements of Q(√5) written as `a + bω`, ω the golden ratio.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycloError;

/// `a + bω` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadReal {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadReal { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        QuadReal::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadReal::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        QuadReal::from_int(0)
    }

    pub fn one() -> Self {
        QuadReal::from_int(1)
    }

    /// The golden ratio itself.
    pub fn omega() -> Self {
        QuadReal::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign under ω ↦ 1.618…, using rational operations only.
    ///
    /// `a + bω = ((2a + b) + b√5) / 2`, so compare `(2a+b)²` against `5b²`
    /// when the two summands have opposite signs.
    pub fn signum(&self) -> i8 {
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sign_of(&self.a);
        }
        let two = BigRational::from_integer(2.into());
        let u = &self.a * &two + &self.b;
        let su = sign_of(&u);
        if su == 0 || su == sb {
            return sb;
        }
        let five = BigRational::from_integer(5.into());
        let lhs = &u * &u;
        let rhs = &self.b * &self.b * five;
        if lhs > rhs {
            su
        } else {
            sb
        }
    }

    /// Galois conjugate `a + b(1 − ω)`.
    pub fn conj(&self) -> Self {
        QuadReal::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let c = self.conj();
        Ok(QuadReal::new(c.a / &n, c.b / &n))
    }

    pub fn div(&self, other: &QuadReal) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        // Start from a float estimate and correct with exact comparisons.
        let est = self.to_f64().floor();
        let mut k = if est.is_finite() {
            BigInt::from(est as i128)
        } else {
            self.floor_by_bounds()
        };
        loop {
            let kq = QuadReal::from_rational(BigRational::from_integer(k.clone()));
            if (self - &kq).signum() < 0 {
                k -= 1;
                continue;
            }
            let k1 = QuadReal::from_rational(BigRational::from_integer(&k + 1));
            if (self - &k1).signum() >= 0 {
                k += 1;
                continue;
            }
            return k;
        }
    }

    fn floor_by_bounds(&self) -> BigInt {
        // ω ∈ (1, 2): a crude exact bracket, refined by the caller's loop.
        let lo = if self.b.is_negative() { &self.a + &self.b * BigRational::from_integer(2.into()) } else { &self.a + &self.b };
        lo.floor().to_integer()
    }

    /// Fractional part `x − ⌊x⌋ ∈ [0, 1)`.
    pub fn fract(&self) -> Self {
        let f = self.floor();
        self - &QuadReal::from_rational(BigRational::from_integer(f))
    }

    /// When `a` and `b` have opposite signs the direct sum cancels, so the
    /// value is taken as `N(x) / x′` instead.
    pub fn to_f64(&self) -> f64 {
        let w = (1.0 + 5f64.sqrt()) / 2.0;
        let (a, b) = (rat_to_f64(&self.a), rat_to_f64(&self.b));
        if sign_of(&self.a) * sign_of(&self.b) >= 0 {
            return a + b * w;
        }
        rat_to_f64(&self.norm()) / (a - b / w)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

pub(crate) fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators and denominators together.
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift = (nb.max(db) - 60).max(0) as u32;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                f64::INFINITY.copysign(n)
            } else {
                n / d
            }
        }
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add for &QuadReal {
    type Output = QuadReal;
    fn add(self, o: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QuadReal {
    type Output = QuadReal;
    fn sub(self, o: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QuadReal {
    type Output = QuadReal;
    fn mul(self, o: &QuadReal) -> QuadReal {
        // ω² = ω + 1
        let bd = &self.b * &o.b;
        QuadReal::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::new(-&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadReal {
            type Output = QuadReal;
            fn $m(self, o: QuadReal) -> QuadReal {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -&self
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ω", self.a, self.b)
    }
}

/// `⌊ω·a⌋` for an integer `a`.
pub fn floor_omega_times(a: &BigInt) -> BigInt {
    QuadReal::new(BigRational::zero(), BigRational::from_integer(a.clone())).floor()
}

/// Exact `⌊a√5⌋`, used as an independent oracle in tests.
pub fn floor_sqrt5_times(a: &BigInt) -> BigInt {
    let sq = (a * a * 5u32).sqrt();
    if a.is_negative() {
        if &sq * &sq == a * a * 5u32 {
            -sq
        } else {
            -sq - 1
        }
    } else {
        sq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn q(a: i64, b: i64) -> QuadReal {
        QuadReal::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    #[test]
    fn omega_squared_is_omega_plus_one() {
        let w = QuadReal::omega();
        assert_eq!(&w * &w, q(1, 1));
    }

    #[test]
    fn signs_match_floats() {
        for a in -30..30 {
            for b in -30..30 {
                let x = q(a, b);
                let f = x.to_f64();
                let expect = if a == 0 && b == 0 { 0 } else if f > 0.0 { 1 } else { -1 };
                assert_eq!(x.signum(), expect, "{a} + {b}ω");
            }
        }
    }

    #[test]
    fn to_f64_survives_cancellation() {
        // ω⁻³⁰ has coefficients near 10⁶ of opposite sign
        let w = QuadReal::omega();
        let x = (0..30).fold(QuadReal::one(), |acc, _| acc.div(&w).unwrap());
        let want = 1.618_033_988_749_895f64.powi(-30);
        assert!((x.to_f64() - want).abs() < 1e-15 * want, "{}", x.to_f64());
    }

    #[test]
    fn inverse_round_trips() {
        let x = q(3, -7);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadReal::one());
        assert!(QuadReal::zero().inv().is_err());
    }

    #[test]
    fn floor_of_omega_multiples() {
        for a in -200i64..200 {
            let ai = BigInt::from(a);
            let expect = (BigInt::from(a) + floor_sqrt5_times(&ai)).div_floor(&BigInt::from(2));
            assert_eq!(floor_omega_times(&ai), expect, "a = {a}");
        }
    }

    #[test]
    fn fract_in_unit_interval() {
        for a in -50..50 {
            let f = q(0, a).fract();
            assert!(f.signum() >= 0);
            assert!((&f - &QuadReal::one()).signum() < 0);
        }
    }
}
