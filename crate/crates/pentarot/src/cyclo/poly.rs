//! Integer polynomials: irreducibility over Q, Pisot and unit tests.
//!
//! Root counting inside the unit disk uses the Schur–Cohn transform with
//! exact rationals, so the Pisot verdict involves no floating point. A
//! certified bracket of the dominant real root comes from bisection with
//! exact sign evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycloError, Interval};

type Rat = BigRational;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        if c.is_empty() {
            c.push(BigInt::zero());
        }
        IntPoly { c }
    }

    /// Coefficients from highest to lowest degree, as usually written.
    pub fn from_desc(desc: &[i64]) -> Self {
        IntPoly::new(desc.iter().rev().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.c.last().expect("nonempty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + Rat::from_integer(a.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::NAN))
    }

    fn to_rat(&self) -> Vec<Rat> {
        self.c.iter().map(|a| Rat::from_integer(a.clone())).collect()
    }

    /// A nontrivial factor over Z if one exists.
    ///
    /// Linear factors come from the rational root test; higher-degree factors
    /// from Kronecker's interpolation search.
    pub fn find_factor(&self) -> Option<IntPoly> {
        let d = self.degree();
        if d <= 1 {
            return None;
        }
        if self.c[0].is_zero() {
            return Some(IntPoly::from_desc(&[1, 0]));
        }
        if let Some(r) = self.rational_root() {
            return Some(IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]));
        }
        (2..=d / 2).find_map(|k| self.kronecker_factor(k))
    }

    pub fn is_irreducible(&self) -> bool {
        self.degree() >= 1 && self.find_factor().is_none()
    }

    fn rational_root(&self) -> Option<Rat> {
        let p = divisors(&self.c[0]);
        let q = divisors(self.leading());
        for a in &p {
            for b in &q {
                for s in [1, -1] {
                    let r = Rat::new(a * s, b.clone());
                    if self.eval_rat(&r).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        None
    }

    /// Searches for a factor of exact degree `k` through its values at `0..=k`.
    fn kronecker_factor(&self, k: usize) -> Option<IntPoly> {
        let pts: Vec<BigInt> = (0..=k as i64).map(BigInt::from).collect();
        let vals: Vec<BigInt> = pts.iter().map(|x| self.eval_int(x)).collect();
        if vals.iter().any(Zero::is_zero) {
            return None;
        }
        let choices: Vec<Vec<BigInt>> = vals
            .iter()
            .map(|v| divisors(v).into_iter().flat_map(|x| [x.clone(), -x]).collect())
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<Rat> = idx.iter().zip(&choices).map(|(&i, c)| Rat::from_integer(c[i].clone())).collect();
            if let Some(f) = interpolate_integer(&pts, &ys) {
                if f.degree() == k && self.divisible_by(&f) {
                    return Some(f);
                }
            }
            let mut j = 0;
            loop {
                if j > k {
                    return None;
                }
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    fn divisible_by(&self, f: &IntPoly) -> bool {
        let (_, r) = poly_divrem(&self.to_rat(), &f.to_rat());
        r.iter().all(Zero::is_zero)
    }

    /// Number of roots in the open unit disk, or `None` if roots on (or
    /// extremely close to) the circle prevent a certified count.
    ///
    /// The count is taken for the disks of radius `1 ± 2^-k`; once both agree
    /// the annulus between them is root-free.
    pub fn roots_inside_unit_disk(&self) -> Option<usize> {
        let p = self.to_rat();
        for k in 4..=96u32 {
            let eps = Rat::new(BigInt::one(), BigInt::one() << k);
            let inner = schur_cohn_count(&scale_var(&p, &(Rat::one() - &eps)));
            let outer = schur_cohn_count(&scale_var(&p, &(Rat::one() + &eps)));
            if let (Some(i), Some(o)) = (inner, outer) {
                if i == o {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Sturm sequence of the polynomial.
    fn sturm(&self) -> Vec<Vec<Rat>> {
        let p = self.to_rat();
        let dp = trim(p.iter().enumerate().skip(1).map(|(i, a)| a * Rat::from_integer(i.into())).collect());
        let mut seq = vec![p, dp];
        while seq[seq.len() - 1].len() > 1 {
            let n = seq.len();
            let (_, r) = poly_divrem(&seq[n - 2], &seq[n - 1]);
            if r.iter().all(Zero::is_zero) {
                break;
            }
            seq.push(r.into_iter().map(|x| -x).collect());
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots(&self, a: &Rat, b: &Rat) -> usize {
        let seq = self.sturm();
        let changes = |x: &Rat| {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| super::sign_of(&eval_rat_poly(p, x)))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a).saturating_sub(changes(b))
    }

    /// Cauchy bound: every root has modulus below this integer.
    pub fn root_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let m = self.c[..self.degree()].iter().map(|a| a.abs()).max().unwrap_or_default();
        m.div_ceil(&lead) + 1
    }

    /// Bracket of width at most `2^-bits` around the unique real root in `(lo, hi)`,
    /// assuming a sign change across the interval.
    pub fn refine_root(&self, lo: Rat, hi: Rat, bits: u32) -> Interval {
        let (mut lo, mut hi) = (lo, hi);
        let slo = super::sign_of(&self.eval_rat(&lo));
        let eps = Rat::new(BigInt::one(), BigInt::one() << bits);
        let half = Rat::new(1.into(), 2.into());
        while &hi - &lo > eps {
            let mid = (&lo + &hi) * &half;
            let s = super::sign_of(&self.eval_rat(&mid));
            if s == 0 {
                return Interval::point(mid);
            }
            if s == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Interval { lo, hi }
    }

    /// Bracket of the largest real root, if any.
    pub fn largest_real_root(&self, bits: u32) -> Option<Interval> {
        let bound = Rat::from_integer(self.root_bound());
        let (mut lo, mut hi) = (-bound.clone(), bound);
        if self.count_real_roots(&lo, &hi) == 0 {
            return None;
        }
        let half = Rat::new(1.into(), 2.into());
        // invariant: the largest root lies in (lo, hi]
        while self.count_real_roots(&lo, &hi) > 1 {
            let mid = (&lo + &hi) * &half;
            if self.count_real_roots(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if self.eval_rat(&hi).is_zero() {
            return Some(Interval::point(hi));
        }
        Some(self.refine_root(lo, hi, bits))
    }
}

/// Coefficients of `p(r·z)`.
fn scale_var(p: &[Rat], r: &Rat) -> Vec<Rat> {
    let mut f = Rat::one();
    p.iter()
        .map(|a| {
            let v = a * &f;
            f *= r;
            v
        })
        .collect()
}

/// Roots strictly inside the unit disk by the Schur–Cohn transform:
/// the count of negative partial products of the pivots.
/// `None` when a pivot vanishes.
fn schur_cohn_count(p: &[Rat]) -> Option<usize> {
    let d = p.len() - 1;
    let mut p = p.to_vec();
    let mut prod = Rat::one();
    let mut negatives = 0;
    for k in 0..d {
        let m = d - k;
        let next: Vec<Rat> = (0..m).map(|j| &p[0] * &p[j] - &p[m] * &p[m - j]).collect();
        if next[0].is_zero() {
            return None;
        }
        prod *= &next[0];
        if prod.is_negative() {
            negatives += 1;
        }
        p = next;
    }
    Some(negatives)
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval_rat_poly(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
}

/// Polynomial long division over Q.
pub(crate) fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by the zero polynomial");
    if r.len() < b.len() {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let f = &r[i + db] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &f * bj;
        }
        q[i] = f;
    }
    r.truncate(db.max(1));
    (q, trim(r))
}

/// Lagrange interpolation; `None` unless all coefficients are integers.
fn interpolate_integer(xs: &[BigInt], ys: &[Rat]) -> Option<IntPoly> {
    let n = xs.len();
    let mut acc = vec![Rat::zero(); n];
    for i in 0..n {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let xj = Rat::from_integer(xs[j].clone());
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= Rat::from_integer(&xs[i] - &xs[j]);
        }
        let w = &ys[i] / denom;
        for (k, b) in basis.iter().enumerate() {
            acc[k] += b * &w;
        }
    }
    if acc.iter().all(|a| a.is_integer()) {
        Some(IntPoly::new(acc.into_iter().map(|a| a.to_integer()).collect()))
    } else {
        None
    }
}

/// Positive divisors of a nonzero integer.
fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    if v.is_zero() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if v.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &v / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() && !(i == 0 && first) {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show = !mag.is_one() || i == 0;
            if show {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Outcome of a Pisot test with the evidence behind it.
#[derive(Clone, Debug)]
pub struct PisotReport {
    pub poly: IntPoly,
    pub pisot: bool,
    pub unit: bool,
    /// Roots strictly inside the unit disk, when the Schur–Cohn test is regular.
    pub roots_inside: Option<usize>,
    /// Bracket of the largest real root.
    pub dominant_root: Option<Interval>,
}

/// Decides whether the (irreducible) polynomial's dominant root is a Pisot number.
pub fn is_pisot(p: &IntPoly) -> Result<bool, CycloError> {
    Ok(pisot_report(p)?.pisot)
}

/// Constant coefficient ±1 on a monic polynomial.
pub fn is_unit(p: &IntPoly) -> bool {
    p.is_monic() && p.coeffs()[0].abs().is_one()
}

pub fn pisot_report(p: &IntPoly) -> Result<PisotReport, CycloError> {
    if p.degree() == 0 {
        return Err(CycloError::Degenerate(format!("constant polynomial {p}")));
    }
    if let Some(f) = p.find_factor() {
        return Err(CycloError::Reducible(f.to_string()));
    }
    let d = p.degree();
    let roots_inside = p.roots_inside_unit_disk();
    let dominant_root = p.largest_real_root(64);
    let above_one = p.count_real_roots(&Rat::one(), &Rat::from_integer(p.root_bound())) == 1;
    let pisot = p.is_monic() && roots_inside == Some(d - 1) && above_one;
    Ok(PisotReport { poly: p.clone(), pisot, unit: is_unit(p), roots_inside, dominant_root })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(iv: &Interval, v: f64) -> bool {
        (iv.mid_f64() - v).abs() < 1e-9
    }

    #[test]
    fn golden_ratio_is_pisot_unit() {
        let p = IntPoly::from_desc(&[1, -1, -1]);
        let r = pisot_report(&p).unwrap();
        assert!(r.pisot && r.unit);
        assert!(close(&r.dominant_root.unwrap(), 1.618_033_988_749_895));
    }

    #[test]
    fn heptagonal_b_is_pisot() {
        let p = IntPoly::from_desc(&[1, -2, -1, 1]);
        let r = pisot_report(&p).unwrap();
        assert!(r.pisot && r.unit);
        assert!(close(&r.dominant_root.unwrap(), 2.246_979_603_717_467));
    }

    #[test]
    fn two_cos_heptagon_is_not_pisot() {
        // roots 2cos(2πk/7): two of them lie outside the unit disk
        let p = IntPoly::from_desc(&[1, 1, -2, -1]);
        let r = pisot_report(&p).unwrap();
        assert!(!r.pisot);
        assert_eq!(r.roots_inside, Some(1));
    }

    #[test]
    fn reducible_input_names_a_factor() {
        let p = IntPoly::from_desc(&[1, 0, -1]);
        assert!(matches!(is_pisot(&p), Err(CycloError::Reducible(_))));
        // (x² + x + 1)(x² − 3x + 1) has no rational root
        let q = IntPoly::from_desc(&[1, -2, -1, -2, 1]);
        let f = q.find_factor().expect("quadratic factor");
        assert_eq!(f.degree(), 2);
        assert!(q.divisible_by(&f));
    }

    #[test]
    fn schur_cohn_on_known_roots() {
        // (2x − 1)(x − 3)
        let p = IntPoly::from_desc(&[2, -7, 3]);
        assert_eq!(p.roots_inside_unit_disk(), Some(1));
        assert_eq!(IntPoly::from_desc(&[1, 0, 1]).roots_inside_unit_disk(), None);
        assert_eq!(IntPoly::from_desc(&[1, -1, -1]).roots_inside_unit_disk(), Some(1));
    }

    #[test]
    fn sturm_counts() {
        let p = IntPoly::from_desc(&[1, 0, -3, 1]);
        let big = Rat::from_integer(10.into());
        assert_eq!(p.count_real_roots(&-big.clone(), &big), 3);
        assert_eq!(p.count_real_roots(&Rat::one(), &big), 1);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_desc(&[1, -6, 5, -1]).to_string(), "x^3 - 6x^2 + 5x - 1");
        assert_eq!(IntPoly::from_desc(&[1, 0, -3, 1]).to_string(), "x^3 - 3x + 1");
    }
}
