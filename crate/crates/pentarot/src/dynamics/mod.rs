//! The lozenge map `T`, its first-return and first-hitting maps, the
//! renormalization `S = ω²U`, the induced map `T̃`, and periodicity
//! certificates.
//!
//! Public functions take and return [`Cyclo`] points. Iteration runs on
//! [`Loz`], an integral lozenge-coordinate form of the same points.

mod cells;
mod classify;
mod loz;

use std::sync::OnceLock;

use thiserror::Error;

use crate::cyclo::{Cyclo, CycloError};
use crate::regions::{Named, PointSet};

pub use cells::{
    corrected_self_rhs, image_under_t, induced_self_lhs, return_time_cells, self_identity, CellPartition,
};
pub use classify::{
    classify, enumerate_b, floor_omega_i64, period, recurrence_check, CertificateKind, OrbitCertificate,
    RecurrenceReport, DEFAULT_PERIOD_CAP,
};
pub use loz::Loz;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("point {0} is not in the lozenge L")]
    NotInL(String),
    #[error("point {0} is not in T(Z)")]
    NotInTZed(String),
    #[error("point {0} is not in L'")]
    NotInLPrime(String),
    #[error("internal consistency check failed: {0}")]
    CrossCheck(String),
    #[error("iteration bound {0} exhausted")]
    Exhausted(u64),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Region(#[from] crate::regions::RegionError),
}

/// The six translation digits `d₀ … d₅` of the first-hitting map.
pub fn digits() -> &'static [Cyclo; 6] {
    static D: OnceLock<[Cyclo; 6]> = OnceLock::new();
    D.get_or_init(|| {
        let z = |k| Cyclo::zeta_pow(5, k);
        let wi = Cyclo::inv_omega();
        [
            Cyclo::zero(5),
            Cyclo::one(5),
            z(1),
            &z(1) * &wi,
            -(&wi * &z(-2)),
            -(&wi * &z(-1)),
        ]
    })
}

pub fn digit(m: usize) -> &'static Cyclo {
    &digits()[m]
}

fn loz(x: &Cyclo) -> Result<Loz, DynamicsError> {
    Ok(Loz::from_cyclo(x)?)
}

fn loz_in_l(x: &Cyclo) -> Result<Loz, DynamicsError> {
    let p = loz(x)?;
    if p.in_l() {
        Ok(p)
    } else {
        Err(DynamicsError::NotInL(x.to_string()))
    }
}

pub fn in_l(x: &Cyclo) -> bool {
    Loz::from_cyclo(x).is_ok_and(|p| p.in_l())
}

pub fn in_lprime(x: &Cyclo) -> bool {
    Loz::from_cyclo(x).is_ok_and(|p| p.in_lprime())
}

/// `x ∈ Δ`, i.e. `x ∈ L` and `Im(x/ζ) ≥ 0`.
pub fn in_delta(x: &Cyclo) -> bool {
    Loz::from_cyclo(x).is_ok_and(|p| p.in_l() && p.in_delta_halfplane())
}

/// `x ∈ T(𝒵)`, i.e. `x ∈ L` outside the closed half-plane of `T(Δ)`.
pub fn in_tzed(x: &Cyclo) -> bool {
    Loz::from_cyclo(x).is_ok_and(|p| loz_in_tzed(&p))
}

pub(crate) fn loz_in_tzed(p: &Loz) -> bool {
    p.in_l() && !p.in_tdelta_halfplane()
}

/// `T(x) = x/ζ` if `Im(x/ζ) ≥ 0`, else `(x − 1)/ζ`.
pub fn step_t(x: &Cyclo) -> Result<Cyclo, DynamicsError> {
    Ok(loz_in_l(x)?.step().to_cyclo())
}

pub fn step_t_inv(y: &Cyclo) -> Result<Cyclo, DynamicsError> {
    Ok(loz_in_l(y)?.step_back().to_cyclo())
}

/// `Tⁿ(x)`.
pub fn iterate_t(x: &Cyclo, n: u64) -> Result<Cyclo, DynamicsError> {
    let mut p = loz_in_l(x)?;
    for _ in 0..n {
        p = p.step();
    }
    Ok(p.to_cyclo())
}

/// First return to `L′`: `(T^m(x), m)` with `m ≥ 1` minimal.
pub fn first_return_lprime(x: &Cyclo) -> Result<(Cyclo, u32), DynamicsError> {
    let p = loz_in_l(x)?;
    if !p.in_lprime() {
        return Err(DynamicsError::NotInLPrime(x.to_string()));
    }
    let (q, m) = loz_first_return(&p)?;
    Ok((q.to_cyclo(), m))
}

pub(crate) fn loz_first_return(p: &Loz) -> Result<(Loz, u32), DynamicsError> {
    let mut q = p.step();
    for m in 1..=6 {
        if q.in_lprime() {
            return Ok((q, m));
        }
        q = q.step();
    }
    Err(DynamicsError::CrossCheck(format!("no return to L' within 6 steps from {}", p.to_cyclo())))
}

/// Value of the first-hitting map `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HitResult {
    /// `Tᵐ(x) ∈ L′` for the least `m ∈ 0..=5`; then `value = (x − d_m)/ζᵐ`.
    Defined { steps: u8, value: Cyclo },
    /// The orbit never enters `L′`: `x ∈ P₀ ∪ P₁ ∪ P₂`.
    Undefined,
}

impl HitResult {
    pub fn value(&self) -> Option<&Cyclo> {
        match self {
            HitResult::Defined { value, .. } => Some(value),
            HitResult::Undefined => None,
        }
    }

    pub fn digit(&self) -> Option<usize> {
        match self {
            HitResult::Defined { steps, .. } => Some(*steps as usize),
            HitResult::Undefined => None,
        }
    }
}

pub(crate) fn loz_first_hit(p: &Loz) -> Option<(u8, Loz)> {
    let mut q = p.clone();
    for m in 0..=5u8 {
        if q.in_lprime() {
            return Some((m, q));
        }
        q = q.step();
    }
    None
}

/// Digits of up to `len` steps of `S` from `p`, stopping where `U` is undefined.
pub(crate) fn loz_address(p: &Loz, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let mut cur = p.clone();
    while out.len() < len {
        match loz_first_hit(&cur) {
            Some((m, q)) => {
                out.push(m);
                cur = q.mul_omega2();
            }
            None => break,
        }
    }
    out
}

/// First-hitting map with the closed-form table as a mandatory cross-check.
pub fn first_hit_u(x: &Cyclo) -> Result<HitResult, DynamicsError> {
    let p = loz_in_l(x)?;
    match loz_first_hit(&p) {
        Some((m, q)) => {
            let value = q.to_cyclo();
            check_closed_form(x, m, &value)?;
            Ok(HitResult::Defined { steps: m, value })
        }
        None => {
            let in_pent = [Named::P0, Named::P1, Named::P2].iter().any(|r| r.region().contains(x));
            if !in_pent {
                return Err(DynamicsError::CrossCheck(format!("U undefined outside the pentagons at {x}")));
            }
            Ok(HitResult::Undefined)
        }
    }
}

fn check_closed_form(x: &Cyclo, m: u8, value: &Cyclo) -> Result<(), DynamicsError> {
    let back = &value.mul_zeta_pow(m as i64) + digit(m as usize);
    if &back != x {
        return Err(DynamicsError::CrossCheck(format!("U({x}) disagrees with (x - d{m})/zeta^{m}")));
    }
    Ok(())
}

/// `S(x) = ω²U(x)`; `None` where `U` is undefined.
pub fn step_s(x: &Cyclo) -> Result<Option<Cyclo>, DynamicsError> {
    Ok(first_hit_u(x)?.value().map(|v| v * &Cyclo::omega_pow(2)))
}

/// One step of `S` together with its digit.
pub fn step_s_with_digit(x: &Cyclo) -> Result<Option<(usize, Cyclo)>, DynamicsError> {
    let h = first_hit_u(x)?;
    Ok(match h {
        HitResult::Defined { steps, value } => Some((steps as usize, &value * &Cyclo::omega_pow(2))),
        HitResult::Undefined => None,
    })
}

/// `T̃ = T²` on `Δ` and `T` on `T(𝒵) ∖ Δ`.
pub fn step_ttilde(x: &Cyclo) -> Result<Cyclo, DynamicsError> {
    let p = loz(x)?;
    if !loz_in_tzed(&p) {
        return Err(DynamicsError::NotInTZed(x.to_string()));
    }
    Ok(loz_ttilde(&p).to_cyclo())
}

pub(crate) fn loz_ttilde(p: &Loz) -> Loz {
    if p.in_delta_halfplane() {
        p.step().step()
    } else {
        p.step()
    }
}

/// Inverse of [`step_ttilde`] on `T(𝒵)`.
pub fn step_ttilde_inv(y: &Cyclo) -> Result<Cyclo, DynamicsError> {
    let p = loz(y)?;
    if !loz_in_tzed(&p) {
        return Err(DynamicsError::NotInTZed(y.to_string()));
    }
    let a = p.step_back();
    if loz_in_tzed(&a) && !a.in_delta_halfplane() {
        return Ok(a.to_cyclo());
    }
    let b = a.step_back();
    if b.in_l() && b.in_delta_halfplane() {
        Ok(b.to_cyclo())
    } else {
        Err(DynamicsError::CrossCheck(format!("no T~ preimage for {y}")))
    }
}
