//! Outward-rounded rational intervals and certified embeddings of Q(ζₙ).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat_to_f64, Cyclo};

type Rat = BigRational;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn point(q: Rat) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Interval::point(Rat::zero())
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("nonempty").clone();
        let hi = p.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rat) -> Interval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Widens to endpoints on the grid `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        let s = Rat::from_integer(BigInt::one() << bits);
        let lo = (&self.lo * &s).floor() / &s;
        let hi = (&self.hi * &s).ceil() / &s;
        Interval { lo, hi }
    }

    pub fn contains(&self, q: &Rat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        rat_to_f64(&self.lo) <= v && v <= rat_to_f64(&self.hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn lo_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn hi_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        (rat_to_f64(&self.lo) + rat_to_f64(&self.hi)) / 2.0
    }
}

/// Rectangle enclosure of a complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn round_out(&self, bits: u32) -> ComplexInterval {
        ComplexInterval { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }
}

/// Integer polynomial (lowest first) whose root in `bracket` is 2cos(2π/n).
fn two_cos_poly(n: u32) -> (&'static [i64], (i64, i64)) {
    match n {
        5 => (&[-1, 1, 1], (1, 2)),
        7 => (&[-1, -2, 1, 1], (2, 3)),
        9 => (&[1, -3, 0, 1], (2, 4)),
        _ => unreachable!("supported order"),
    }
}

fn eval_int_poly(p: &[i64], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, &c| acc * x + Rat::from_integer(c.into()))
}

/// Bracket of 2cos(2π/n) of width `2^-bits`; the bracket ends are halves.
fn two_cos(n: u32, bits: u32) -> Interval {
    let (p, (a, b)) = two_cos_poly(n);
    let half = Rat::new(1.into(), 2.into());
    let mut lo = Rat::from_integer(a.into()) * &half;
    let mut hi = Rat::from_integer(b.into()) * &half;
    let slo = eval_int_poly(p, &lo).is_positive();
    let eps = Rat::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) * &half;
        let v = eval_int_poly(p, &mid);
        if v.is_zero() {
            return Interval::point(mid);
        }
        if v.is_positive() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// Lower and upper bounds of √q on the `2^-bits` grid.
fn sqrt_bounds(q: &Interval, bits: u32) -> Interval {
    let s2 = Rat::from_integer(BigInt::one() << (2 * bits));
    let s = Rat::from_integer(BigInt::one() << bits);
    let lo_scaled = (&q.lo * &s2).floor().to_integer();
    let hi_scaled = (&q.hi * &s2).ceil().to_integer();
    let lo = if lo_scaled.is_positive() { lo_scaled.sqrt() } else { BigInt::zero() };
    let mut hi = hi_scaled.sqrt();
    if &hi * &hi < hi_scaled {
        hi += 1;
    }
    Interval { lo: Rat::from_integer(lo) / &s, hi: Rat::from_integer(hi) / &s }
}

fn compute_table(n: u32, bits: u32) -> Vec<ComplexInterval> {
    let work = bits + 16;
    let c2 = two_cos(n, work);
    let half = Rat::new(1.into(), 2.into());
    let cos = c2.scale(&half);
    let one = Interval::point(Rat::one());
    let sin2 = one.sub(&cos.mul(&cos));
    let sin = sqrt_bounds(&sin2, work);
    let z = ComplexInterval { re: cos, im: sin };
    let d = super::degree(n).expect("supported order");
    let mut out = Vec::with_capacity(d);
    let mut cur = ComplexInterval { re: Interval::point(Rat::one()), im: Interval::zero() };
    for _ in 0..d {
        out.push(cur.clone());
        cur = cur.mul(&z).round_out(work);
    }
    out
}

fn table(n: u32, bits: u32) -> Arc<Vec<ComplexInterval>> {
    type Cache = Mutex<HashMap<(u32, u32), Arc<Vec<ComplexInterval>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&(n, bits)) {
        return t.clone();
    }
    let t = Arc::new(compute_table(n, bits));
    cache.lock().expect("cache lock").insert((n, bits), t.clone());
    t
}

pub(super) fn embed(x: &Cyclo, bits: u32) -> ComplexInterval {
    let t = table(x.order(), bits);
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    for (c, z) in x.coeffs().iter().zip(t.iter()) {
        if c.is_zero() {
            continue;
        }
        re = re.add(&z.re.scale(c));
        im = im.add(&z.im.scale(c));
    }
    ComplexInterval { re: re.round_out(bits), im: im.round_out(bits) }
}

#[derive(Clone, Copy, Debug)]
pub(super) enum Part {
    Re,
    Im,
}

/// Sign of a nonzero real or imaginary part, by a guarded double-precision
/// estimate and then interval refinement at doubling precision.
pub(super) fn certified_sign(x: &Cyclo, part: Part) -> i8 {
    let (re, im) = x.to_c64();
    let est = match part {
        Part::Re => re,
        Part::Im => im,
    };
    let l1 = rat_to_f64(&x.coeff_l1());
    let guard = 1e-12 * (1.0 + l1);
    if est.is_finite() && l1.is_finite() && est.abs() > guard {
        return if est > 0.0 { 1 } else { -1 };
    }
    let mut bits = 64;
    loop {
        let e = embed(x, bits);
        let v = match part {
            Part::Re => e.re,
            Part::Im => e.im,
        };
        if v.lo_positive() {
            return 1;
        }
        if v.hi_negative() {
            return -1;
        }
        assert!(bits < 1 << 20, "sign refinement did not terminate for a nonzero value");
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_brackets_are_tight() {
        for (n, v) in [(5u32, 0.618_033_988_749_895), (7, 1.246_979_603_717_467), (9, 1.532_088_886_237_956)] {
            let c = two_cos(n, 80);
            assert!((c.mid_f64() - v).abs() < 1e-15, "n = {n}");
            assert!(c.width() <= Rat::new(1.into(), BigInt::one() << 80));
        }
    }

    #[test]
    fn table_encloses_roots_of_unity() {
        for n in [5u32, 7, 9] {
            let t = table(n, 60);
            for (j, z) in t.iter().enumerate() {
                let a = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                assert!(z.re.contains_f64(a.cos()) || (z.re.mid_f64() - a.cos()).abs() < 1e-15);
                assert!(z.im.contains_f64(a.sin()) || (z.im.mid_f64() - a.sin()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn width_shrinks_with_precision() {
        let x = Cyclo::zeta(7);
        let w64 = x.embed(64).re.width();
        let w256 = x.embed(256).re.width();
        assert!(w256 < w64);
    }
}
