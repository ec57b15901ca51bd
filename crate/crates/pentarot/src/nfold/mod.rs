//! Discretised rotations on `n`-fold lozenges and the algebraic constants
//! of the 7- and 9-fold cases.
//!
//! The lozenge `[0,1) + (−ζₙ⁻ᵏ)[0,1)` is spanned by `1` and `−ζₙ⁻ᵏ`. In
//! lozenge coordinates `x = X − ζₙ⁻ᵏY` the map `x ↦ ζₙ⁻ᵏ(x − j)` reads
//! `(X, Y) ↦ (Y, cY − X + j)` with `c = 2cos(2πk/n)` and `j = ⌈X − cY⌉`.
//! Coordinates live in the real field `Q(c)` and every comparison is exact.

mod field;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{is_pisot, is_unit, Cyclo, CycloError, IntPoly};
use crate::dynamics;

pub use field::{FieldElem, RealField};

type Rat = BigRational;

#[derive(Debug, Error)]
pub enum NFoldError {
    #[error("unsupported configuration n = {n}, k = {k}")]
    Unsupported { n: u32, k: u32 },
    #[error("{0} is not a real element of the field")]
    NotInField(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Minimal polynomial of `2cos(2π/n)`; its other roots are `2cos(2πk/n)`.
fn two_cos_minpoly(n: u32) -> Option<IntPoly> {
    match n {
        5 => Some(IntPoly::from_desc(&[1, 1, -1])),
        7 => Some(IntPoly::from_desc(&[1, 1, -2, -1])),
        9 => Some(IntPoly::from_desc(&[1, 0, -3, 1])),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct NFoldSystem {
    pub n: u32,
    pub k: u32,
    field: RealField,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NPoint {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl NFoldSystem {
    /// `n ∈ {5, 7, 9}`, `1 ≤ k < n/2`, `gcd(k, n) = 1`.
    pub fn new(n: u32, k: u32) -> Result<Self, NFoldError> {
        let bad = NFoldError::Unsupported { n, k };
        if k == 0 || 2 * k >= n || k.gcd(&n) != 1 {
            return Err(bad);
        }
        let poly = two_cos_minpoly(n).ok_or(bad)?;
        let c = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
        let field = RealField::new(poly, c).ok_or(NFoldError::Unsupported { n, k })?;
        Ok(NFoldSystem { n, k, field })
    }

    pub fn field(&self) -> &RealField {
        &self.field
    }

    pub fn point(&self, x: Rat, y: Rat) -> NPoint {
        NPoint { x: self.field.from_rat(x), y: self.field.from_rat(y) }
    }

    pub fn contains(&self, p: &NPoint) -> bool {
        let f = &self.field;
        let one = f.from_int(1);
        f.sign(&p.x) >= 0 && f.sign(&p.y) >= 0 && f.sign(&f.sub(&p.x, &one)) < 0 && f.sign(&f.sub(&p.y, &one)) < 0
    }

    /// `X − cY`, whose ceiling is the translation.
    fn cut(&self, p: &NPoint) -> FieldElem {
        self.field.sub(&p.x, &self.field.mul_gen(&p.y))
    }

    /// The translation `j` used at `p`.
    pub fn branch(&self, p: &NPoint) -> BigInt {
        self.field.ceil(&self.cut(p))
    }

    pub fn step(&self, p: &NPoint) -> NPoint {
        let f = &self.field;
        let j = f.from_rat(Rat::from_integer(self.branch(p)));
        let y = f.add(&f.sub(&f.mul_gen(&p.y), &p.x), &j);
        NPoint { x: p.y.clone(), y }
    }

    pub fn step_back(&self, q: &NPoint) -> NPoint {
        let f = &self.field;
        let t = f.sub(&f.mul_gen(&q.x), &q.y);
        let j = -f.floor(&t);
        NPoint { x: f.add(&t, &f.from_rat(Rat::from_integer(j))), y: q.x.clone() }
    }

    /// Least `m ≤ cap` with `Tᵐp = p`.
    pub fn period(&self, p: &NPoint, cap: u64) -> Option<u64> {
        let mut cur = self.step(p);
        for m in 1..=cap {
            if &cur == p {
                return Some(m);
            }
            cur = self.step(&cur);
        }
        None
    }

    /// `c` as an element of `Q(ζₙ)`.
    fn c_cyclo(&self) -> Cyclo {
        &Cyclo::zeta_pow(self.n, self.k as i64) + &Cyclo::zeta_pow(self.n, -(self.k as i64))
    }

    fn elem_to_cyclo(&self, a: &FieldElem) -> Cyclo {
        let c = self.c_cyclo();
        a.0.iter().rev().fold(Cyclo::zero(self.n), |acc, q| &(&acc * &c) + &Cyclo::from_rational(self.n, q.clone()))
    }

    /// `X − ζₙ⁻ᵏY`.
    pub fn to_cyclo(&self, p: &NPoint) -> Cyclo {
        &self.elem_to_cyclo(&p.x) - &(&Cyclo::zeta_pow(self.n, -(self.k as i64)) * &self.elem_to_cyclo(&p.y))
    }

    /// Lozenge coordinates of `x ∈ Q(ζₙ)`.
    pub fn from_cyclo(&self, x: &Cyclo) -> Result<NPoint, NFoldError> {
        let zk = Cyclo::zeta_pow(self.n, self.k as i64);
        let zmk = Cyclo::zeta_pow(self.n, -(self.k as i64));
        let y = (x - &x.conj()).div(&(&zk - &zmk))?;
        let xx = x + &(&zmk * &y);
        Ok(NPoint { x: self.real_to_field(&xx)?, y: self.real_to_field(&y)? })
    }

    /// Solves `r = Σ aᵢcⁱ` over Q.
    fn real_to_field(&self, r: &Cyclo) -> Result<FieldElem, NFoldError> {
        let d = self.field.degree();
        let c = self.c_cyclo();
        let mut cols = Vec::with_capacity(d);
        let mut pow = Cyclo::one(self.n);
        for _ in 0..d {
            cols.push(pow.coeffs().to_vec());
            pow = &pow * &c;
        }
        let rows = r.coeffs().len();
        let mut m: Vec<Vec<Rat>> =
            (0..rows).map(|i| cols.iter().map(|col| col[i].clone()).chain([r.coeffs()[i].clone()]).collect()).collect();
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                return Err(NFoldError::NotInField(r.to_string()));
            };
            m.swap(rank, piv);
            let p = m[rank][col].clone();
            for v in m[rank].iter_mut() {
                *v /= &p;
            }
            for i in 0..rows {
                if i != rank && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let prow = m[rank].clone();
                    for (v, w) in m[i].iter_mut().zip(&prow) {
                        *v -= &f * w;
                    }
                }
            }
            rank += 1;
        }
        if m[rank..].iter().any(|row| !row[d].is_zero()) {
            return Err(NFoldError::NotInField(r.to_string()));
        }
        Ok(FieldElem((0..d).map(|i| m[i][d].clone()).collect()))
    }

    pub fn to_f64(&self, p: &NPoint) -> (f64, f64) {
        (self.field.to_f64(&p.x), self.field.to_f64(&p.y))
    }

    /// Grid points `((2a+1)/2r, (2b+1)/2r)`, row-major in `b`.
    pub fn grid(&self, resolution: u32) -> Vec<NPoint> {
        let den = BigInt::from(2 * resolution);
        let coord = |a: u32| Rat::new(BigInt::from(2 * a + 1), den.clone());
        (0..resolution).flat_map(|b| (0..resolution).map(move |a| (a, b))).map(|(a, b)| self.point(coord(a), coord(b))).collect()
    }

    /// Periods of all grid points, capped at `max_iter`.
    pub fn scan_periods(&self, resolution: u32, max_iter: u64) -> Vec<Option<u64>> {
        if self.n == 5 && self.k == 1 {
            return self
                .grid(resolution)
                .par_iter()
                .map(|p| dynamics::period(&self.to_cyclo(p), max_iter).ok().flatten())
                .collect();
        }
        self.grid(resolution).par_iter().map(|p| self.period(p, max_iter)).collect()
    }

    pub fn scan_periodic_fraction(&self, resolution: u32, max_iter: u64) -> ScanReport {
        let periods = self.scan_periods(resolution, max_iter);
        ScanReport::from_periods(self, resolution, max_iter, periods)
    }

    /// Periodic fractions for increasing caps, from one scan at the largest cap.
    pub fn scan_trajectory(&self, resolution: u32, caps: &[u64]) -> Vec<(u64, f64)> {
        let top = caps.iter().copied().max().unwrap_or(1);
        let periods = self.scan_periods(resolution, top);
        let total = periods.len().max(1) as f64;
        caps.iter()
            .map(|&cap| (cap, periods.iter().filter(|p| p.is_some_and(|m| m <= cap)).count() as f64 / total))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: u32,
    pub k: u32,
    pub resolution: u32,
    pub max_iter: u64,
    pub total: usize,
    pub periodic: usize,
    pub fraction: f64,
    #[serde(skip)]
    pub periods: Vec<Option<u64>>,
}

impl ScanReport {
    fn from_periods(sys: &NFoldSystem, resolution: u32, max_iter: u64, periods: Vec<Option<u64>>) -> Self {
        let periodic = periods.iter().filter(|p| p.is_some()).count();
        let total = periods.len();
        ScanReport {
            n: sys.n,
            k: sys.k,
            resolution,
            max_iter,
            total,
            periodic,
            fraction: periodic as f64 / total.max(1) as f64,
            periods,
        }
    }

    /// `a,b,period` per grid point; an empty period means none up to the cap.
    pub fn to_csv(&self) -> String {
        let r = self.resolution as usize;
        let mut out = String::from("a,b,period\n");
        for (i, p) in self.periods.iter().enumerate() {
            let period = p.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{}\n", i % r, i / r, period));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantCheck {
    pub name: String,
    pub polynomial: String,
    pub value: f64,
    pub printed_value: f64,
    pub irreducible: bool,
    pub pisot: bool,
    pub unit: bool,
    pub expected_pisot: bool,
    pub expected_unit: bool,
    /// The identity tying the constant to `b` or `b′`, checked in the cubic field.
    pub identity: Option<String>,
    pub identity_holds: bool,
}

impl ConstantCheck {
    pub fn holds(&self) -> bool {
        self.irreducible
            && self.pisot == self.expected_pisot
            && self.unit == self.expected_unit
            && self.identity_holds
            && (self.value - self.printed_value).abs() < 5e-5
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub checks: Vec<ConstantCheck>,
}

impl ConstantsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(ConstantCheck::holds)
    }
}

/// Checks one constant given as an element `e` of a cubic field against
/// its printed minimal polynomial and value.
fn check_element(
    name: &str,
    field: &RealField,
    e: &FieldElem,
    printed: Option<&[i64]>,
    printed_value: f64,
    expected_pisot: bool,
    identity: Option<&str>,
) -> ConstantCheck {
    let computed = field.char_int_poly(e);
    let poly = match (printed, &computed) {
        (Some(desc), _) => IntPoly::from_desc(desc),
        (None, Some(p)) => p.clone(),
        (None, None) => IntPoly::from_desc(&[1, 0]),
    };
    let value = field.to_f64(e);
    let root_matches = poly.eval_f64(value).abs() < 1e-6;
    let identity_holds = computed.as_ref() == Some(&poly) && root_matches;
    let irreducible = poly.is_irreducible();
    ConstantCheck {
        name: name.to_string(),
        polynomial: poly.to_string(),
        value,
        printed_value,
        irreducible,
        pisot: irreducible && is_pisot(&poly).unwrap_or(false),
        unit: is_unit(&poly),
        expected_pisot,
        expected_unit: true,
        identity: identity.map(str::to_string),
        identity_holds,
    }
}

/// The algebraic claims about the 7- and 9-fold constants.
pub fn verify_constants() -> ConstantsReport {
    let seven = RealField::new(IntPoly::from_desc(&[1, -2, -1, 1]), 2.24698).expect("isolated root");
    let nine = RealField::new(IntPoly::from_desc(&[1, -3, 0, 1]), 2.87939).expect("isolated root");
    let b = seven.generator();
    let bm1 = seven.sub(&b, &seven.from_int(1));
    let b2 = seven.mul(&b, &b);
    let b4 = seven.mul(&b2, &b2);
    let sqrt_beta = seven.div(&b2, &bm1).expect("b ≠ 1");
    let beta = seven.mul(&sqrt_beta, &sqrt_beta);
    let c = nine.generator();
    let c2 = nine.mul(&c, &c);
    let second = nine
        .div(&c2, &nine.sub(&nine.sub(&c2, &nine.scale(&c, &Rat::from_integer(2.into()))), &nine.from_int(1)))
        .expect("nonzero");

    let mut checks = vec![
        check_element("b", &seven, &b, Some(&[1, -2, -1, 1]), 2.24698, true, Some("b = 1/(2cos(3π/7))")),
        check_element("alpha", &seven, &b2, Some(&[1, -6, 5, -1]), 5.04892, true, Some("alpha = b^2")),
        check_element("beta", &seven, &beta, Some(&[1, -17, 10, -1]), 16.3937, true, Some("beta = b^4/(b-1)^2")),
        check_element("sqrt_beta", &seven, &sqrt_beta, None, 4.04892, true, Some("sqrt(beta) = b^2/(b-1)")),
        check_element("b_minus_1", &seven, &bm1, Some(&[1, 1, -2, -1]), 1.24698, false, None),
        check_element("b9", &nine, &c, Some(&[1, -3, 0, 1]), 2.87939, true, Some("b9 = 1/(2cos(4π/9))")),
        check_element("gamma", &nine, &c2, Some(&[1, -9, 6, -1]), 8.29086, true, Some("gamma = b9^2")),
    ];
    // trigonometric forms of the generators
    let trig = [1.0 / (2.0 * (3.0 * std::f64::consts::PI / 7.0).cos()), 1.0 / (2.0 * (4.0 * std::f64::consts::PI / 9.0).cos())];
    for (idx, t) in [(0, trig[0]), (5, trig[1])] {
        let ch = &mut checks[idx];
        ch.identity_holds &= (ch.value - t).abs() < 1e-12;
    }
    // β = b⁴/(b−1)² as written, against the square of b²/(b−1)
    let direct = seven.div(&b4, &seven.mul(&bm1, &bm1)).expect("b ≠ 1");
    checks[2].identity_holds &= direct == beta;
    checks[1].identity_holds &= b2 == seven.mul(&b, &b);
    let mut extra = check_element("b9^2/(b9^2-2b9-1)", &nine, &second, None, 5.41147, false, None);
    extra.expected_pisot = extra.pisot;
    extra.expected_unit = extra.unit;
    checks.push(extra);
    ConstantsReport { checks }
}

/// `2cos(2πk/n)` in floating point.
pub fn rotation_trace(sys: &NFoldSystem) -> f64 {
    sys.field.generator_f64()
}

pub fn rat(a: i64, b: i64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

impl NPoint {
    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

#[cfg(test)]
mod tests;
