//! Periodicity decisions with certificates, exact periods, the finite test
//! set `B`, and the integer recurrence at `λ = ω`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Roots;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::{floor_omega_times, Cyclo, QuadReal};

use super::{check_closed_form, loz_first_hit, loz_in_l, DynamicsError, Loz};

pub const DEFAULT_PERIOD_CAP: u64 = 1_000_000;
const S_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Periodic,
    Aperiodic,
}

/// Verdict on the `T`-orbit of a point, with the data needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCertificate {
    pub point: Cyclo,
    pub kind: CertificateKind,
    /// Least `T`-period (periodic points).
    pub period: Option<u64>,
    /// Number of `S`-steps until the orbit reaches a pentagon or the fixed point 0 (periodic points).
    pub s_steps: Option<usize>,
    /// `k` in `S^k(x) = S^{k+ℓ}(x)` (aperiodic points).
    pub preperiod: Option<usize>,
    /// `ℓ` in `S^k(x) = S^{k+ℓ}(x)` (aperiodic points).
    pub cycle: Option<usize>,
    /// `S^{s_steps}(x)` for periodic points, `S^k(x)` for aperiodic ones.
    pub witness_point: Cyclo,
    /// Digits of the `S`-steps taken, in order.
    pub digits: Vec<usize>,
}

impl OrbitCertificate {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "point": self.point.to_string(),
            "kind": self.kind,
            "witness_point": self.witness_point.to_string(),
            "digits": self.digits,
        });
        let m = v.as_object_mut().expect("object");
        if let Some(p) = self.period {
            m.insert("period".into(), json!(p));
        }
        if let Some(s) = self.s_steps {
            m.insert("s_steps".into(), json!(s));
        }
        if let Some(k) = self.preperiod {
            m.insert("preperiod".into(), json!(k));
        }
        if let Some(l) = self.cycle {
            m.insert("cycle".into(), json!(l));
        }
        v
    }

    /// Re-derives the certificate's claims from scratch.
    pub fn verify(&self) -> Result<bool, DynamicsError> {
        let orbit = s_orbit(&self.point, self.digits.len() + 1)?;
        match self.kind {
            CertificateKind::Periodic => {
                let s = self.s_steps.unwrap_or(usize::MAX);
                let Some(p) = self.period else { return Ok(false) };
                let end_ok = orbit.len() == s + 1 && orbit[s] == self.witness_point;
                let terminal = self.witness_point.is_zero()
                    || super::first_hit_u(&self.witness_point)? == super::HitResult::Undefined;
                let back = super::iterate_t(&self.point, p)? == self.point;
                Ok(end_ok && terminal && back)
            }
            CertificateKind::Aperiodic => {
                let (Some(k), Some(l)) = (self.preperiod, self.cycle) else { return Ok(false) };
                Ok(l >= 1 && orbit.len() > k + l && orbit[k] == orbit[k + l] && orbit[k] == self.witness_point)
            }
        }
    }
}

/// `x, S(x), S²(x), …` for at most `n` points.
fn s_orbit(x: &Cyclo, n: usize) -> Result<Vec<Cyclo>, DynamicsError> {
    let mut out = vec![x.clone()];
    let mut p = loz_in_l(x)?;
    while out.len() < n {
        match loz_first_hit(&p) {
            Some((_, q)) => {
                p = q.mul_omega2();
                out.push(p.to_cyclo());
            }
            None => break,
        }
    }
    Ok(out)
}

/// Decides periodicity of the `T`-orbit of `x` through its `S`-orbit.
pub fn classify(x: &Cyclo) -> Result<OrbitCertificate, DynamicsError> {
    classify_with_cap(x, DEFAULT_PERIOD_CAP)
}

pub fn classify_with_cap(x: &Cyclo, period_cap: u64) -> Result<OrbitCertificate, DynamicsError> {
    let start = loz_in_l(x)?;
    let mut seen: HashMap<Loz, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut cur = start.clone();
    for i in 0..S_ORBIT_CAP {
        // 0 is fixed by both S and T, the one S-cycle made of periodic points
        if cur.is_origin() {
            let period = loz_period(&start, period_cap).ok_or(DynamicsError::Exhausted(period_cap))?;
            return Ok(OrbitCertificate {
                point: x.clone(),
                kind: CertificateKind::Periodic,
                period: Some(period),
                s_steps: Some(i),
                preperiod: None,
                cycle: None,
                witness_point: Cyclo::zero(5),
                digits,
            });
        }
        if let Some(&k) = seen.get(&cur) {
            return Ok(OrbitCertificate {
                point: x.clone(),
                kind: CertificateKind::Aperiodic,
                period: None,
                s_steps: None,
                preperiod: Some(k),
                cycle: Some(i - k),
                witness_point: cur.to_cyclo(),
                digits,
            });
        }
        seen.insert(cur.clone(), i);
        match loz_first_hit(&cur) {
            Some((m, q)) => {
                check_closed_form(&cur.to_cyclo(), m, &q.to_cyclo())?;
                digits.push(m as usize);
                cur = q.mul_omega2();
            }
            None => {
                let witness = cur.to_cyclo();
                if super::first_hit_u(&witness)? != super::HitResult::Undefined {
                    return Err(DynamicsError::CrossCheck("S-orbit ended outside the pentagons".into()));
                }
                let period = loz_period(&start, period_cap).ok_or(DynamicsError::Exhausted(period_cap))?;
                return Ok(OrbitCertificate {
                    point: x.clone(),
                    kind: CertificateKind::Periodic,
                    period: Some(period),
                    s_steps: Some(i),
                    preperiod: None,
                    cycle: None,
                    witness_point: witness,
                    digits,
                });
            }
        }
    }
    Err(DynamicsError::Exhausted(S_ORBIT_CAP as u64))
}

pub(crate) fn loz_period(p: &Loz, cap: u64) -> Option<u64> {
    let mut q = p.step();
    for n in 1..=cap {
        if &q == p {
            return Some(n);
        }
        q = q.step();
    }
    None
}

/// Least `T`-period of `x`, or `None` if the orbit does not close within `cap` steps.
pub fn period(x: &Cyclo, cap: u64) -> Result<Option<u64>, DynamicsError> {
    Ok(loz_period(&loz_in_l(x)?, cap))
}

/// All `x ∈ (1/M)·Z[ζ] ∩ L` whose conjugate `φ(x)` (ζ ↦ ζ²) lies in the closed unit disk.
///
/// With `x = X − ζ⁻¹Y`, `φ(x) = X′ − ζ⁻²Y′` and `|φ(x)| ≥ |X′|·sin 36°`, likewise for `Y′`,
/// so `|X′|, |Y′| < 2`. Writing `X = (a + bω)/M` gives `b√5 = M(X − X′)`, hence `|b| ≤ 2M`.
pub fn enumerate_b(m: u32) -> Vec<Cyclo> {
    let mm = BigInt::from(m);
    let mut coords: Vec<QuadReal> = Vec::new();
    let bmax = 2 * m as i64;
    for b in -bmax..=bmax {
        let bb = BigInt::from(b);
        // 0 ≤ a + bω < M
        let f = floor_omega_times(&bb);
        let lo: BigInt = -&f - 1;
        let hi = &mm - &f + 1;
        let mut a = lo;
        while a <= hi {
            let q = QuadReal::new(
                crate::cyclo::Rat::new(a.clone(), mm.clone()),
                crate::cyclo::Rat::new(bb.clone(), mm.clone()),
            );
            if q.signum() >= 0 && (&q - &QuadReal::one()).signum() < 0 {
                let conj_abs = q.conj().abs();
                if (&conj_abs - &QuadReal::from_int(2)).signum() < 0 {
                    coords.push(q);
                }
            }
            a += 1;
        }
    }
    let one = QuadReal::one();
    let mut out = Vec::new();
    for x in &coords {
        for y in &coords {
            let p = Cyclo::from_lozenge_coords(x, y);
            let c = p.galois(2).expect("unit");
            let nsq = c.norm_sq().as_quad().expect("real");
            if (&nsq - &one).signum() <= 0 {
                out.push(p);
            }
        }
    }
    out
}

/// Outcome of [`recurrence_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub a0: i64,
    pub a1: i64,
    /// Period of `(aₙ, aₙ₊₁)` by direct simulation.
    pub pair_period: Option<u64>,
    /// `⟨ωa₀⟩ − ζ⁻¹⟨ωa₁⟩`.
    pub point: Cyclo,
    pub t_period: Option<u64>,
    pub classified_periodic: bool,
    pub agree: bool,
}

/// `⌊ω·a⌋` using only integer arithmetic.
pub fn floor_omega_i64(a: i64) -> i64 {
    let a2 = (a as i128) * (a as i128) * 5;
    let s = Roots::sqrt(&a2) as i64;
    let fl = match a.signum() {
        0 => 0,
        1 => s,
        _ => -s - 1,
    };
    (a + fl).div_euclid(2)
}

/// Simulates `a_{n+2} = −a_n − ⌊ω·a_{n+1}⌋` and cross-checks with the lozenge map.
pub fn recurrence_check(a0: i64, a1: i64, max_steps: u64) -> Result<RecurrenceReport, DynamicsError> {
    let (mut x, mut y) = (a0, a1);
    let mut pair_period = None;
    for n in 1..=max_steps {
        let next = (-x).checked_sub(floor_omega_i64(y)).ok_or(DynamicsError::Exhausted(n))?;
        x = y;
        y = next;
        if (x, y) == (a0, a1) {
            pair_period = Some(n);
            break;
        }
    }
    let lz = Loz::from_fractional_parts(&BigInt::from(a0), &BigInt::from(a1));
    let point = lz.to_cyclo();
    let cert = classify_with_cap(&point, max_steps)?;
    let classified_periodic = cert.kind == CertificateKind::Periodic;
    let t_period = cert.period;
    let agree = classified_periodic && pair_period.is_some() && pair_period == t_period;
    Ok(RecurrenceReport { a0, a1, pair_period, point, t_period, classified_periodic, agree })
}
