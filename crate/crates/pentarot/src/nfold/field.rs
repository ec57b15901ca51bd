//! Real number fields `Q(c)` with `c` a chosen real root of a monic integer
//! polynomial, and exact arithmetic on elements in the power basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclo::{IntPoly, Interval};

type Rat = BigRational;

fn rat_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
pub struct RealField {
    poly: IntPoly,
    approx: f64,
    bracket: Interval,
}

/// Element `Σ aᵢcⁱ`, `i < degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem(pub Vec<Rat>);

impl RealField {
    /// The field generated by the root of `poly` nearest to `approx`.
    /// `None` if `poly` is not monic or no root is isolated near `approx`.
    pub fn new(poly: IntPoly, approx: f64) -> Option<Self> {
        if !poly.is_monic() || poly.degree() == 0 {
            return None;
        }
        let to_rat = |v: f64| Rat::from_float(v).expect("finite");
        for w in [0.05, 0.01, 0.001] {
            let (lo, hi) = (to_rat(approx - w), to_rat(approx + w));
            if poly.count_real_roots(&lo, &hi) == 1 {
                let bracket = poly.refine_root(lo, hi, 96);
                return Some(RealField { approx: bracket.mid_f64(), poly, bracket });
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn generator_f64(&self) -> f64 {
        self.approx
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![Rat::zero(); self.degree()])
    }

    pub fn from_rat(&self, q: Rat) -> FieldElem {
        let mut v = self.zero();
        v.0[0] = q;
        v
    }

    pub fn from_int(&self, i: i64) -> FieldElem {
        self.from_rat(Rat::from_integer(i.into()))
    }

    pub fn generator(&self) -> FieldElem {
        self.from_coeffs(&[0, 1])
    }

    /// `Σ coeffs[i]·cⁱ` for integer coefficients, reduced.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElem {
        coeffs.iter().rev().fold(self.zero(), |acc, &a| self.add(&self.mul_gen(&acc), &self.from_int(a)))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &FieldElem, q: &Rat) -> FieldElem {
        FieldElem(a.0.iter().map(|x| x * q).collect())
    }

    /// `c·a`.
    pub fn mul_gen(&self, a: &FieldElem) -> FieldElem {
        let d = self.degree();
        let top = a.0[d - 1].clone();
        let mut out = vec![Rat::zero(); d];
        out[1..d].clone_from_slice(&a.0[..d - 1]);
        // cᵈ = −Σ pᵢcⁱ
        for (i, p) in self.poly.coeffs()[..d].iter().enumerate() {
            out[i] -= &top * Rat::from_integer(p.clone());
        }
        FieldElem(out)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        let mut pow = b.clone();
        for ai in &a.0 {
            acc = self.add(&acc, &self.scale(&pow, ai));
            pow = self.mul_gen(&pow);
        }
        acc
    }

    /// Matrix of `x ↦ a·x` in the power basis, columns indexed by basis element.
    fn mul_matrix(&self, a: &FieldElem) -> Vec<Vec<Rat>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.from_int(1);
        for _ in 0..d {
            cols.push(self.mul(a, &basis).0);
            basis = self.mul_gen(&basis);
        }
        (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        let d = self.degree();
        let mut m = self.mul_matrix(a);
        for (r, row) in m.iter_mut().enumerate() {
            row.push(if r == 0 { Rat::one() } else { Rat::zero() });
        }
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(FieldElem(m.into_iter().map(|row| row[d].clone()).collect()))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// Characteristic polynomial of multiplication by `a`, lowest degree
    /// first, by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self, a: &FieldElem) -> Vec<Rat> {
        let d = self.degree();
        let m = self.mul_matrix(a);
        let matmul = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            (0..d)
                .map(|i| (0..d).map(|j| (0..d).fold(Rat::zero(), |s, k| s + &x[i][k] * &y[k][j])).collect())
                .collect()
        };
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = Rat::one();
        let mut mk: Vec<Vec<Rat>> = (0..d).map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        for k in 1..=d {
            let am = matmul(&m, &mk);
            let trace = (0..d).fold(Rat::zero(), |s, i| s + &am[i][i]);
            let ck = -trace / Rat::from_integer((k as i64).into());
            coeffs[d - k] = ck.clone();
            mk = am;
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &ck;
            }
        }
        coeffs
    }

    /// Integer characteristic polynomial, if all coefficients are integers.
    pub fn char_int_poly(&self, a: &FieldElem) -> Option<IntPoly> {
        let c = self.char_poly(a);
        c.iter().all(|q| q.is_integer()).then(|| IntPoly::new(c.iter().map(|q| q.to_integer()).collect()))
    }

    pub fn to_f64(&self, a: &FieldElem) -> f64 {
        a.0.iter().rev().fold(0.0, |acc, q| acc * self.approx + rat_f64(q))
    }

    fn eval_interval(&self, a: &FieldElem, bracket: &Interval) -> Interval {
        a.0.iter().rev().fold(Interval::zero(), |acc, q| acc.mul(bracket).add(&Interval::point(q.clone())))
    }

    /// Exact sign.
    pub fn sign(&self, a: &FieldElem) -> i8 {
        let v = self.to_f64(a);
        let g = self.approx.abs().max(1.0);
        let size: f64 = a.0.iter().enumerate().map(|(i, q)| rat_f64(q).abs() * g.powi(i as i32)).sum();
        if v.abs() > 1e-9 * (1.0 + size) {
            return if v > 0.0 { 1 } else { -1 };
        }
        if a.0.iter().all(Zero::is_zero) {
            return 0;
        }
        let mut bracket = self.bracket.clone();
        let mut bits = 96;
        loop {
            let iv = self.eval_interval(a, &bracket);
            if iv.lo_positive() {
                return 1;
            }
            if iv.hi_negative() {
                return -1;
            }
            bits *= 2;
            bracket = self.poly.refine_root(bracket.lo.clone(), bracket.hi.clone(), bits);
        }
    }

    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> std::cmp::Ordering {
        self.sign(&self.sub(a, b)).cmp(&0)
    }

    /// `⌊a⌋`, exactly.
    pub fn floor(&self, a: &FieldElem) -> BigInt {
        let mut k = BigInt::from(self.to_f64(a).floor() as i64);
        loop {
            let below = self.sub(a, &self.from_rat(Rat::from_integer(k.clone())));
            if self.sign(&below) < 0 {
                k -= 1;
                continue;
            }
            let above = self.sub(&below, &self.from_int(1));
            if self.sign(&above) >= 0 {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// `⌈a⌉`, exactly.
    pub fn ceil(&self, a: &FieldElem) -> BigInt {
        -self.floor(&FieldElem(a.0.iter().map(|q| -q).collect()))
    }
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}
