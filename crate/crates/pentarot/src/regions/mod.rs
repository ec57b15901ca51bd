//! Exact half-open polygons in Q(ζ₅) and the named regions of the lozenge map.
//!
//! All regions are convex polygons with closedness flags, or disjoint unions
//! of such polygons when the set is not convex (`D₀` and the return-time cell
//! `D`). Membership is decided with exact orientation tests.

mod export;
mod polygon;

use std::sync::OnceLock;

use num_rational::BigRational;
use thiserror::Error;

use crate::cyclo::{Cyclo, CycloError};

pub use export::{polygon_json, region_json, region_svg};
pub use polygon::{orient, HalfOpenConvexPolygon, PointSet, Region};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("{vertices} vertices but {flags} edge flags")]
    FlagCount { vertices: usize, flags: usize },
    #[error("vertices are not strictly convex and counterclockwise at vertex {0}")]
    NotConvex(usize),
    #[error("polygon vertices must lie in Q(ζ₅)")]
    WrongField,
    #[error("incidence check failed: {0}")]
    Incidence(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// The regions with names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    /// The lozenge `[0,1) + (−ζ⁻¹)[0,1)`.
    L,
    /// `{x ∈ L : Im(x/ζ) ≥ 0}`.
    Delta,
    /// The trapezoid `L ∖ Δ`.
    Zed,
    /// `T(Δ) = Δ/ζ`.
    TDelta,
    /// `T(𝒵) = L ∖ T(Δ)`.
    TZed,
    /// `ω⁻²L`.
    LPrime,
    /// Largest open pentagon of period 5.
    P0,
    /// Closed pentagon of period 10.
    P1,
    /// `P₁/ζ`.
    P2,
    /// Closed pentagon carrying the open set condition.
    K,
    /// `T(𝒵) ∖ P₀`.
    D0,
    /// `ω⁻²(𝒵 ∖ P₀)`, where the return time to `L′` is 6.
    D,
    /// Convex hull of the attractor used as the seed of cylinder sets.
    Hull,
}

impl Named {
    pub const ALL: [Named; 13] = [
        Named::L,
        Named::Delta,
        Named::Zed,
        Named::TDelta,
        Named::TZed,
        Named::LPrime,
        Named::P0,
        Named::P1,
        Named::P2,
        Named::K,
        Named::D0,
        Named::D,
        Named::Hull,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Named::L => "L",
            Named::Delta => "Delta",
            Named::Zed => "Z",
            Named::TDelta => "TDelta",
            Named::TZed => "TZ",
            Named::LPrime => "Lprime",
            Named::P0 => "P0",
            Named::P1 => "P1",
            Named::P2 => "P2",
            Named::K => "K",
            Named::D0 => "D0",
            Named::D => "D",
            Named::Hull => "Hull",
        }
    }

    pub fn region(self) -> &'static Region {
        &table().regions[self as usize]
    }
}

pub(crate) fn z(k: i64) -> Cyclo {
    Cyclo::zeta_pow(5, k)
}

pub(crate) fn w(k: i64) -> Cyclo {
    Cyclo::omega_pow(k)
}

fn int(i: i64) -> Cyclo {
    Cyclo::from_int(5, i)
}

/// Center of P₀.
pub fn center_p() -> &'static Cyclo {
    &table().p
}

/// Center of P₁, `−1/(ζ − ζ⁻¹)`.
pub fn center_q() -> &'static Cyclo {
    &table().q
}

struct Table {
    regions: Vec<Region>,
    p: Cyclo,
    q: Cyclo,
}

fn table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| build_named_regions().expect("named regions are consistent"))
}

/// Checks that `verts` is a regular pentagon about `c`, listed counterclockwise.
fn check_regular(name: &str, c: &Cyclo, verts: &[Cyclo]) -> Result<(), RegionError> {
    for i in 0..verts.len() {
        let next = &(&verts[i] - c).mul_zeta_pow(1) + c;
        if next != verts[(i + 1) % verts.len()] {
            return Err(RegionError::Incidence(format!("{name} is not a regular pentagon about its center")));
        }
    }
    Ok(())
}

fn incidence(ok: bool, what: &str) -> Result<(), RegionError> {
    if ok {
        Ok(())
    } else {
        Err(RegionError::Incidence(what.to_string()))
    }
}

fn build_named_regions() -> Result<Table, RegionError> {
    let zero = Cyclo::zero(5);
    let one = int(1);
    let zi = z(-1);
    let wi = w(-1);
    let wi2 = w(-2);
    let poly = HalfOpenConvexPolygon::new;

    let l = poly(vec![zero.clone(), one.clone(), &one - &zi, -&zi], vec![true, false, false, true])?;

    // Δ: the line Im(x/ζ) = 0 through 0 meets the top edge of L at ζ.
    let top = (&one - &zi) - (-&zi);
    incidence(orient(&-&zi, &(&-&zi + &top), &z(1)) == 0, "ζ lies on the top edge of L")?;
    let delta = poly(vec![zero.clone(), z(1), -&zi], vec![true, false, true])?;
    let zed = poly(vec![zero.clone(), one.clone(), &one - &zi, z(1)], vec![true, false, false, false])?;
    let t_delta = poly(vec![zero.clone(), one.clone(), -z(3)], vec![true, false, true])?;
    incidence(orient(&one, &(&one - &zi), &-z(3)) == 0, "−ζ³ lies on the right edge of L")?;
    let t_zed = poly(vec![zero.clone(), -z(3), &one - &zi, -&zi], vec![false, false, false, true])?;

    let p0_verts = vec![&one - &zi, z(1), &z(1) * &wi, &-z(3) * &wi, -z(3)];
    let mut p = Cyclo::zero(5);
    for v in &p0_verts {
        p = &p + v;
    }
    let p = p.scale(&BigRational::new(1.into(), 5.into()));
    check_regular("P0", &p, &p0_verts)?;
    let p0 = HalfOpenConvexPolygon::open(p0_verts)?;

    let q = -(&z(1) - &zi).inv()?;
    let top1 = &q + &(&(&z(1) * &wi) - &q).mul_zeta_pow(1);
    let p1_verts = vec![&z(1) * &wi, top1, &-&zi * &wi, &-&zi * &wi2, &z(1) * &wi2];
    check_regular("P1", &q, &p1_verts)?;
    let p1 = HalfOpenConvexPolygon::closed(p1_verts)?;
    let p2 = p1.transform(-1, &one, &zero);

    let k_verts = vec![zero.clone(), &-z(-2) * &wi, z(1), -&zi, &(&-z(1) * &wi) - &zi];
    let mut kc = Cyclo::zero(5);
    for v in &k_verts {
        kc = &kc + v;
    }
    let kc = kc.scale(&BigRational::new(1.into(), 5.into()));
    check_regular("K", &kc, &k_verts)?;
    let k = HalfOpenConvexPolygon::closed(k_verts)?;

    // D₀ = T(𝒵) ∖ P₀ = (Δ without 0) ∪ tri, split along the segment [0, ζ/ω].
    let tri = HalfOpenConvexPolygon::new(vec![zero.clone(), &-z(3) * &wi, &z(1) * &wi], vec![false, true, false])?
        .with_vertex(0, false)
        .with_vertex(1, false)
        .with_vertex(2, false);
    let d0 = Region::new(vec![delta.clone().with_vertex(0, false), tri.clone()]);

    // 𝒵 ∖ P₀ = (T(Δ) without 0) ∪ tri, then scaled into L′.
    let zed_minus_p0 = Region::new(vec![t_delta.clone().with_vertex(0, false), tri]);
    let d = zed_minus_p0.affine(&wi2, &zero);

    let hull = HalfOpenConvexPolygon::closed(vec![zero.clone(), &-z(3) * &wi, z(1), -&zi])?;

    let regions: Vec<Region> = vec![
        l.clone().into(),
        delta.into(),
        zed.into(),
        t_delta.into(),
        t_zed.into(),
        l.affine(&wi2, &zero).into(),
        p0.into(),
        p1.into(),
        p2.into(),
        k.into(),
        d0,
        d,
        hull.into(),
    ];
    Ok(Table { regions, p, q })
}

/// Outcome of [`partition_check`].
#[derive(Clone, Debug, Default)]
pub struct PartitionReport {
    pub samples: usize,
    pub outside_universe: Vec<Cyclo>,
    /// Samples in zero or several parts, with the names of the parts hit.
    pub violators: Vec<(Cyclo, Vec<String>)>,
}

impl PartitionReport {
    pub fn is_ok(&self) -> bool {
        self.outside_universe.is_empty() && self.violators.is_empty()
    }
}

/// Checks that every sample of `universe` lies in exactly one part.
pub fn partition_check(parts: &[(String, &dyn PointSet)], universe: &dyn PointSet, samples: &[Cyclo]) -> PartitionReport {
    let mut rep = PartitionReport { samples: samples.len(), ..Default::default() };
    for x in samples {
        if !universe.contains(x) {
            rep.outside_universe.push(x.clone());
            continue;
        }
        let hits: Vec<String> = parts.iter().filter(|(_, s)| s.contains(x)).map(|(n, _)| n.clone()).collect();
        if hits.len() != 1 {
            rep.violators.push((x.clone(), hits));
        }
    }
    rep
}

/// Image of a polygon under `x ↦ scale·ζᵏ·x + translate`; see
/// [`HalfOpenConvexPolygon::transform`].
pub fn transform(p: &HalfOpenConvexPolygon, k: i64, scale: &Cyclo, translate: &Cyclo) -> HalfOpenConvexPolygon {
    p.transform(k, scale, translate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclo;

    fn pt(s: &str) -> Cyclo {
        parse_cyclo(5, s).unwrap()
    }

    #[test]
    fn lozenge_boundary() {
        let l = Named::L.region();
        assert!(l.contains(&Cyclo::zero(5)));
        assert!(!l.contains(&Cyclo::one(5)));
        assert!(!l.contains(&pt("-zeta^-1")));
        assert!(l.contains(&pt("-zeta^-1/2")));
        assert!(!l.contains(&pt("1 - zeta^-1/2")));
    }

    #[test]
    fn one_third_is_in_the_trapezoid() {
        let x = pt("1/3");
        assert!(!Named::Delta.region().contains(&x));
        assert!(Named::Zed.region().contains(&x));
    }

    #[test]
    fn centers() {
        let (re, im) = center_p().to_c64();
        let expect = (5.0 * (5.0 + 2.0 * 5f64.sqrt())).sqrt() / 10.0;
        assert!((re - 0.5).abs() < 1e-12 && (im - expect).abs() < 1e-12);
        assert!(Named::P0.region().contains(center_p()));
        let (qr, qi) = center_q().to_c64();
        assert!(qr.abs() < 1e-12 && (qi - ((5.0 - 5f64.sqrt()) / 10.0).sqrt()).abs() < 1e-12);
        assert!(Named::P1.region().contains(center_q()));
    }

    #[test]
    fn named_vertex_lists() {
        let lp = &Named::LPrime.region().parts()[0];
        let wi2 = w(-2);
        let expect = [Cyclo::zero(5), wi2.clone(), &wi2 * &(&Cyclo::one(5) - &z(-1)), -(&wi2 * &z(-1))];
        assert_eq!(lp.vertices(), &expect[..]);
        let k = &Named::K.region().parts()[0];
        assert_eq!(k.vertices()[1], pt("-zeta^-2/omega"));
        let p2 = &Named::P2.region().parts()[0];
        assert_eq!(p2, &transform(&Named::P1.region().parts()[0], 4, &Cyclo::one(5), &Cyclo::zero(5)));
    }

    #[test]
    fn delta_and_zed_partition_l() {
        let l = Named::L.region();
        let mut samples = Vec::new();
        for a in 0..25i64 {
            for b in 0..25i64 {
                samples.push(pt(&format!("{a}/25 - zeta^-1*{b}/25")));
            }
        }
        for r in [Named::Delta, Named::Zed, Named::L, Named::P0, Named::P1, Named::TZed] {
            samples.extend(r.region().sample_points(6).into_iter().filter(|x| l.contains(x)));
        }
        let parts: Vec<(String, &dyn PointSet)> =
            vec![("Delta".into(), Named::Delta.region()), ("Z".into(), Named::Zed.region())];
        let rep = partition_check(&parts, l, &samples);
        assert!(rep.is_ok(), "{:?}", rep.violators.first());
        let parts: Vec<(String, &dyn PointSet)> =
            vec![("TDelta".into(), Named::TDelta.region()), ("TZ".into(), Named::TZed.region())];
        assert!(partition_check(&parts, l, &samples).is_ok());
    }

    #[test]
    fn d0_is_tz_minus_p0() {
        let tz = Named::TZed.region();
        let p0 = Named::P0.region();
        let d0 = Named::D0.region();
        let mut samples = Vec::new();
        for r in [Named::TZed, Named::P0, Named::Delta, Named::D0] {
            samples.extend(r.region().sample_points(8));
        }
        for x in samples.iter().filter(|x| Named::L.region().contains(x)) {
            assert_eq!(d0.contains(x), tz.contains(x) && !p0.contains(x), "{x:?}");
        }
    }

    #[test]
    fn area_ratio_of_l_prime() {
        let r = Named::LPrime.region().area_over_sin72().div(&Named::L.region().area_over_sin72()).unwrap();
        assert_eq!(r, w(-4).as_quad().unwrap());
    }
}
