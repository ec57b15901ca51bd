//! Return-time cells of `L′`, their orbits, and the self-inducing identities.

use crate::cyclo::Cyclo;
use crate::regions::{Named, PointSet, Region, RegionError};

use super::{loz, loz_first_return, loz_in_l, loz_in_tzed, loz_ttilde, DynamicsError, Loz};

/// Image of a region under `T`, provided every part lies on one side of the
/// cut line `Im(x/ζ) = 0`.
pub fn image_under_t(r: &Region) -> Result<Region, DynamicsError> {
    let zeta_inv = Cyclo::zeta_pow(5, -1);
    let mut parts = Vec::new();
    for p in r.parts() {
        let side = |v: &Cyclo| -> Result<i8, DynamicsError> {
            let q = Loz::from_cyclo(v)?;
            let (x, y) = q.coords();
            let lhs = &x - &(&y * &crate::cyclo::QuadReal::omega().inv()?);
            Ok(lhs.signum())
        };
        let c = side(&p.centroid())?;
        for v in p.vertices() {
            let s = side(v)?;
            if s != 0 && s != c {
                return Err(RegionError::Incidence("polygon straddles the cut line of T".into()).into());
            }
        }
        let shift = if c <= 0 { Cyclo::zero(5) } else { -&zeta_inv };
        parts.push(p.affine(&zeta_inv, &shift));
    }
    Ok(Region::new(parts))
}

/// Cells of constant return time in `L′` and the orbit pieces that tile `L`.
#[derive(Clone, Debug)]
pub struct CellPartition {
    /// `ω⁻²Δ`, return time 1.
    pub time1: Region,
    /// `ω⁻²P₀`, return time 3.
    pub time3: Region,
    /// `D = ω⁻²(𝒵 ∖ P₀)`, return time 6.
    pub time6: Region,
    /// `T(D), …, T⁵(D)`.
    pub d_orbit: Vec<Region>,
    /// `T(ω⁻²P₀)`, `T²(ω⁻²P₀)`.
    pub p0_orbit: Vec<Region>,
}

impl CellPartition {
    /// Named pieces `L′, T(D) … T⁵(D), T(ω⁻²P₀), T²(ω⁻²P₀), P₀, P₁, P₂`.
    pub fn pieces(&self) -> Vec<(String, Region)> {
        let mut out = vec![("Lprime".to_string(), Named::LPrime.region().clone())];
        for (i, r) in self.d_orbit.iter().enumerate() {
            out.push((format!("T{}(D)", i + 1), r.clone()));
        }
        for (i, r) in self.p0_orbit.iter().enumerate() {
            out.push((format!("T{}(w-2 P0)", i + 1), r.clone()));
        }
        for n in [Named::P0, Named::P1, Named::P2] {
            out.push((n.label().to_string(), n.region().clone()));
        }
        out
    }
}

pub fn return_time_cells() -> Result<CellPartition, DynamicsError> {
    let wi2 = Cyclo::omega_pow(-2);
    let zero = Cyclo::zero(5);
    let time1 = Named::Delta.region().affine(&wi2, &zero);
    let time3 = Named::P0.region().affine(&wi2, &zero);
    let time6 = Named::D.region().clone();
    let mut d_orbit = Vec::new();
    let mut cur = time6.clone();
    for _ in 0..5 {
        cur = image_under_t(&cur)?;
        d_orbit.push(cur.clone());
    }
    let mut p0_orbit = Vec::new();
    let mut cur = time3.clone();
    for _ in 0..2 {
        cur = image_under_t(&cur)?;
        p0_orbit.push(cur.clone());
    }
    Ok(CellPartition { time1, time3, time6, d_orbit, p0_orbit })
}

/// `(ω²·T̂(ω⁻²x), T(x))` for `x ∈ L`.
pub fn self_identity(x: &Cyclo) -> Result<(Cyclo, Cyclo), DynamicsError> {
    let p = loz_in_l(x)?;
    let (r, _) = loz_first_return(&p.div_omega2())?;
    Ok((r.mul_omega2().to_cyclo(), p.step().to_cyclo()))
}

/// `T³(x)` on `P₀` and `T(x)` elsewhere: the value actually taken by
/// `ω²·T̂(ω⁻²x)`.
pub fn corrected_self_rhs(x: &Cyclo) -> Result<Cyclo, DynamicsError> {
    let p = loz_in_l(x)?;
    let k = if Named::P0.region().contains(x) { 3 } else { 1 };
    let mut q = p;
    for _ in 0..k {
        q = q.step();
    }
    Ok(q.to_cyclo())
}

/// `ω²·R(ω⁻²x)` where `R` is the first return of `T̃` to `ω⁻²T(𝒵)`.
pub fn induced_self_lhs(x: &Cyclo) -> Result<Cyclo, DynamicsError> {
    let p = loz(x)?;
    if !loz_in_tzed(&p) {
        return Err(DynamicsError::NotInTZed(x.to_string()));
    }
    let mut q = loz_ttilde(&p.div_omega2());
    for _ in 0..64 {
        if loz_in_tzed(&q.mul_omega2()) {
            return Ok(q.mul_omega2().to_cyclo());
        }
        q = loz_ttilde(&q);
    }
    Err(DynamicsError::Exhausted(64))
}

#[cfg(test)]
mod tests {
    use super::super::{first_return_lprime, iterate_t};
    use super::*;
    use crate::regions::partition_check;

    fn samples() -> Vec<Cyclo> {
        let mut out = Vec::new();
        for a in 0..30i64 {
            for b in 0..30i64 {
                let x = crate::cyclo::parse_cyclo(5, &format!("{a}/30 - zeta^-1*{b}/30")).unwrap();
                out.push(x);
            }
        }
        for n in [Named::P0, Named::P1, Named::P2, Named::D, Named::Delta, Named::TZed] {
            out.extend(n.region().sample_points(5));
        }
        out.retain(super::super::in_l);
        out
    }

    #[test]
    fn orbit_pieces_tile_the_lozenge() {
        let cells = return_time_cells().unwrap();
        let pieces = cells.pieces();
        let mut samples = samples();
        for (_, r) in &pieces {
            samples.extend(r.sample_points(4).into_iter().filter(super::super::in_l));
        }
        let parts: Vec<(String, &dyn PointSet)> = pieces.iter().map(|(n, r)| (n.clone(), r as &dyn PointSet)).collect();
        let rep = partition_check(&parts, Named::L.region(), &samples);
        assert!(rep.is_ok(), "{:?}", rep.violators.iter().take(3).collect::<Vec<_>>());
    }

    #[test]
    fn return_time_one_on_scaled_delta() {
        let cells = return_time_cells().unwrap();
        for x in cells.time1.sample_points(5).into_iter().filter(|x| cells.time1.contains(x)) {
            assert_eq!(first_return_lprime(&x).unwrap().1, 1);
        }
        for x in cells.time3.sample_points(5).into_iter().filter(|x| cells.time3.contains(x)) {
            assert_eq!(first_return_lprime(&x).unwrap().1, 3);
        }
    }

    #[test]
    fn self_identity_holds_off_p0() {
        for x in samples() {
            let (lhs, rhs) = self_identity(&x).unwrap();
            if Named::P0.region().contains(&x) {
                assert_eq!(lhs, iterate_t(&x, 3).unwrap());
            } else {
                assert_eq!(lhs, rhs, "{x:?}");
            }
            assert_eq!(lhs, corrected_self_rhs(&x).unwrap());
        }
    }
}
