//! Points of `(1/M)·Z[ζ₅]` in lozenge coordinates with a shared denominator.
//!
//! `x = X − ζ⁻¹Y` with `X = (x₀ + x₁ω)/M`, `Y = (y₀ + y₁ω)/M`. In these
//! coordinates the lozenge map is integral:
//! `T(X, Y) = (Y, Y/ω − X + [X > Y/ω])`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{Cyclo, CycloError, QuadReal, Rat};

/// Sign of `a + bω` for integers.
pub(crate) fn sign_ab(a: &BigInt, b: &BigInt) -> i8 {
    let sb = b.sign();
    if sb == num_bigint::Sign::NoSign {
        return sgn(a);
    }
    let u: BigInt = a * 2 + b;
    let su = sgn(&u);
    let sbv = sgn(b);
    if su == 0 || su == sbv {
        return sbv;
    }
    let lhs = &u * &u;
    let rhs = b * b * 5;
    if lhs > rhs {
        su
    } else {
        sbv
    }
}

fn sgn(a: &BigInt) -> i8 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

/// Integer pair `a + bω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Zw(pub BigInt, pub BigInt);

impl Zw {
    fn sub(&self, o: &Zw) -> Zw {
        Zw(&self.0 - &o.0, &self.1 - &o.1)
    }

    /// Multiplication by `1/ω = ω − 1`.
    fn div_omega(&self) -> Zw {
        Zw(&self.1 - &self.0, self.0.clone())
    }

    /// Multiplication by `ω² = ω + 1`.
    fn mul_omega2(&self) -> Zw {
        Zw(&self.0 + &self.1, &self.0 + &self.1 * 2)
    }

    /// Multiplication by `ω⁻² = 2 − ω`.
    fn div_omega2(&self) -> Zw {
        Zw(&self.0 * 2 - &self.1, &self.1 - &self.0)
    }

    fn sign(&self) -> i8 {
        sign_ab(&self.0, &self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Loz {
    x: Zw,
    y: Zw,
    den: BigInt,
}

impl Loz {
    pub fn from_cyclo(p: &Cyclo) -> Result<Loz, CycloError> {
        let (x, y) = p.lozenge_coords()?;
        let den = [&x.a, &x.b, &y.a, &y.b].iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = |q: &Rat| (q * Rat::from_integer(den.clone())).to_integer();
        Ok(Loz { x: Zw(num(&x.a), num(&x.b)), y: Zw(num(&y.a), num(&y.b)), den })
    }

    pub fn to_cyclo(&self) -> Cyclo {
        let (x, y) = self.coords();
        Cyclo::from_lozenge_coords(&x, &y)
    }

    pub fn coords(&self) -> (QuadReal, QuadReal) {
        let q = |z: &Zw| {
            QuadReal::new(Rat::new(z.0.clone(), self.den.clone()), Rat::new(z.1.clone(), self.den.clone()))
        };
        (q(&self.x), q(&self.y))
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Same point with the shared denominator made minimal.
    pub fn canonical(&self) -> Loz {
        let g = [&self.x.0, &self.x.1, &self.y.0, &self.y.1].iter().fold(self.den.clone(), |acc, v| acc.gcd(v));
        if g.is_one() {
            return self.clone();
        }
        Loz {
            x: Zw(&self.x.0 / &g, &self.x.1 / &g),
            y: Zw(&self.y.0 / &g, &self.y.1 / &g),
            den: &self.den / &g,
        }
    }

    pub fn is_origin(&self) -> bool {
        [&self.x.0, &self.x.1, &self.y.0, &self.y.1].iter().all(|v| v.is_zero())
    }

    /// `0 ≤ v < bound·den`, where `bound` is `a + bω`.
    fn in_range(v: &Zw, bound: &Zw, den: &BigInt) -> bool {
        v.sign() >= 0 && Zw(&v.0 - &bound.0 * den, &v.1 - &bound.1 * den).sign() < 0
    }

    pub fn in_l(&self) -> bool {
        let one = Zw(BigInt::one(), BigInt::zero());
        Self::in_range(&self.x, &one, &self.den) && Self::in_range(&self.y, &one, &self.den)
    }

    /// Membership in `L′ = ω⁻²L`, i.e. both coordinates in `[0, ω⁻²)`.
    pub fn in_lprime(&self) -> bool {
        let b = Zw(BigInt::from(2), BigInt::from(-1));
        Self::in_range(&self.x, &b, &self.den) && Self::in_range(&self.y, &b, &self.den)
    }

    /// `X ≤ Y/ω`, the closed half-plane `Im(x/ζ) ≥ 0`.
    pub fn in_delta_halfplane(&self) -> bool {
        self.x.sub(&self.y.div_omega()).sign() <= 0
    }

    /// `Y ≤ X/ω`, the half-plane containing `T(Δ)`.
    pub fn in_tdelta_halfplane(&self) -> bool {
        self.y.sub(&self.x.div_omega()).sign() <= 0
    }

    /// One step of the lozenge map; the caller guarantees `self ∈ L`.
    pub fn step(&self) -> Loz {
        let mut nx = self.y.div_omega().sub(&self.x);
        if !self.in_delta_halfplane() {
            nx.0 += &self.den;
        }
        Loz { x: self.y.clone(), y: nx, den: self.den.clone() }
    }

    /// Inverse step; the caller guarantees `self ∈ L`.
    pub fn step_back(&self) -> Loz {
        let mut px = self.x.div_omega().sub(&self.y);
        if px.sign() < 0 {
            px.0 += &self.den;
        }
        Loz { x: px, y: self.x.clone(), den: self.den.clone() }
    }

    pub fn mul_omega2(&self) -> Loz {
        Loz { x: self.x.mul_omega2(), y: self.y.mul_omega2(), den: self.den.clone() }
    }

    pub fn div_omega2(&self) -> Loz {
        Loz { x: self.x.div_omega2(), y: self.y.div_omega2(), den: self.den.clone() }
    }

    /// Builds `(⟨ωa⟩, ⟨ωb⟩)` for integers `a`, `b`.
    pub fn from_fractional_parts(a: &BigInt, b: &BigInt) -> Loz {
        let frac = |k: &BigInt| {
            let f = crate::cyclo::floor_omega_times(k);
            Zw(-f, k.clone())
        };
        Loz { x: frac(a), y: frac(b), den: BigInt::one() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;

    #[test]
    fn integer_sign_matches_quadreal() {
        for a in -40i64..40 {
            for b in -40i64..40 {
                let q = QuadReal::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()));
                assert_eq!(sign_ab(&a.into(), &b.into()), q.signum());
            }
        }
    }

    #[test]
    fn round_trip() {
        for s in ["1/3", "1/2 - zeta^-1/7", "0", "2/5*omega - 1", "zeta^2"] {
            let x = parse_cyclo(5, s).unwrap();
            assert_eq!(Loz::from_cyclo(&x).unwrap().to_cyclo(), x, "{s}");
        }
    }

    #[test]
    fn omega_multiples() {
        let p = Loz::from_cyclo(&parse_cyclo(5, "1/3").unwrap()).unwrap();
        assert_eq!(p.mul_omega2().div_omega2(), p);
        assert_eq!(p.mul_omega2().to_cyclo(), parse_cyclo(5, "omega^2/3").unwrap());
    }
}
