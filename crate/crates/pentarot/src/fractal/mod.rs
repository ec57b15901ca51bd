//! Iterated function systems for `Y`, `Y′` and the dual attractor `𝒴`,
//! pentagon removal sets `Dᵢ`, open set condition checks, cylinder sets
//! and visit statistics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{Cyclo, CycloError, QuadReal};
use crate::dynamics::{self, DynamicsError};
use crate::regions::{orient, HalfOpenConvexPolygon, Named, PointSet, Region, RegionError};
use crate::render::{depth_fill, Svg};
use crate::symbolic::{self, Affine};

type Rat = BigRational;

#[derive(Debug, Error)]
pub enum FractalError {
    #[error("cylinder word contains digit {0}, expected one of 0, 2, 3, 5")]
    BadDigit(u8),
    #[error("polygon {0} straddles the boundary of Δ")]
    Straddles(String),
    #[error("point {0} is not in T(𝒵)")]
    NotInTZed(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// The digits of `Y′`, in address order.
pub const ADDRESS_DIGITS: [u8; 4] = [0, 2, 3, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IfsKind {
    Y,
    Yprime,
    Dual,
    Custom,
}

/// A finite family of contractions together with a seed polygon that each
/// map sends into itself.
#[derive(Clone, Debug)]
pub struct IfsSystem {
    pub kind: IfsKind,
    pub labels: Vec<u8>,
    pub maps: Vec<Affine>,
    pub seed: HalfOpenConvexPolygon,
}

impl IfsSystem {
    /// The six maps `x ↦ ζⁱω⁻²x + dᵢ` on the pentagon with vertices `ωζᵏ`,
    /// the smallest pentagon `ωʲζᵏ` that they send into itself.
    pub fn y() -> Self {
        let labels: Vec<u8> = (0..6).collect();
        let maps = labels.iter().map(|&m| symbolic::digit_map(m)).collect();
        let seed = pentagon(&Cyclo::omega());
        IfsSystem { kind: IfsKind::Y, labels, maps, seed }
    }

    /// The four maps with digits 0, 2, 3, 5 on the pentagon `K`.
    pub fn yprime() -> Self {
        let labels = ADDRESS_DIGITS.to_vec();
        let maps = labels.iter().map(|&m| symbolic::digit_map(m)).collect();
        let seed = closed_copy(&Named::K.region().parts()[0]);
        IfsSystem { kind: IfsKind::Yprime, labels, maps, seed }
    }

    /// The maps `y ↦ ζ^{−2m}ω⁻²(y − u_m)` on the pentagon with vertices `2ζᵏ`.
    pub fn dual() -> Self {
        let labels = ADDRESS_DIGITS.to_vec();
        let maps = labels.iter().map(|&m| dual_map(m)).collect();
        IfsSystem { kind: IfsKind::Dual, labels, maps, seed: dual_seed() }
    }

    pub fn custom(labels: Vec<u8>, maps: Vec<Affine>, seed: HalfOpenConvexPolygon) -> Self {
        IfsSystem { kind: IfsKind::Custom, labels, maps, seed }
    }

    /// Whether every map sends the seed into its own closure.
    pub fn seed_is_invariant(&self) -> bool {
        self.maps.iter().all(|f| {
            let img = self.seed.affine(&f.a, &f.b);
            polygon_inside(&img, &self.seed)
        })
    }
}

fn closed_copy(p: &HalfOpenConvexPolygon) -> HalfOpenConvexPolygon {
    HalfOpenConvexPolygon::closed(p.vertices().to_vec()).expect("closure of a valid polygon")
}

fn pentagon(r: &Cyclo) -> HalfOpenConvexPolygon {
    let verts = (0..5).map(|k| r.mul_zeta_pow(k)).collect();
    HalfOpenConvexPolygon::closed(verts).expect("regular pentagon")
}

fn dual_seed() -> HalfOpenConvexPolygon {
    pentagon(&Cyclo::from_int(5, 2))
}

/// `u_m = galois(d_m, 2)`, the images of the digits under the conjugation `ζ ↦ ζ²`.
pub fn dual_digits() -> Vec<(u8, Cyclo)> {
    ADDRESS_DIGITS
        .iter()
        .map(|&m| (m, dynamics::digit(m as usize).galois(2).expect("unit exponent")))
        .collect()
}

/// The rotation part `ζ^{−2m}` of the dual map with digit `m`.
pub fn dual_rotation(m: u8) -> Cyclo {
    Cyclo::zeta_pow(5, -2 * m as i64)
}

/// `y ↦ ζ^{−2m}ω⁻²(y − u_m)`.
pub fn dual_map(m: u8) -> Affine {
    let u = dynamics::digit(m as usize).galois(2).expect("unit exponent");
    let a = &dual_rotation(m) * &Cyclo::omega_pow(-2);
    let b = -(&a * &u);
    Affine { a, b }
}

/// One piece of a cover: the word, the composed map and the image of the seed.
#[derive(Clone, Debug)]
pub struct Piece {
    pub word: Vec<u8>,
    pub map: Affine,
    pub polygon: HalfOpenConvexPolygon,
}

/// Images of the seed under all compositions of `depth` maps, ordered
/// lexicographically by word.
pub fn attractor_cover(system: &IfsSystem, depth: usize) -> Vec<Piece> {
    let mut level = vec![Piece { word: Vec::new(), map: Affine::identity(), polygon: system.seed.clone() }];
    for _ in 0..depth {
        level = level
            .par_iter()
            .flat_map_iter(|p| {
                system.labels.iter().zip(&system.maps).map(move |(&m, f)| {
                    let map = p.map.compose(f);
                    let mut word = p.word.clone();
                    word.push(m);
                    let polygon = system.seed.affine(&map.a, &map.b);
                    Piece { word, map, polygon }
                })
            })
            .collect();
    }
    level
}

/// Whether the closure of `inner` lies in the closure of the convex `outer`.
pub fn polygon_inside(inner: &HalfOpenConvexPolygon, outer: &HalfOpenConvexPolygon) -> bool {
    inner.vertices().iter().all(|v| outer.closure_contains(v))
}

/// Exact test for disjoint interiors of two convex polygons: some edge line
/// of one of them has the whole other polygon on its closed outer side.
pub fn interiors_disjoint(p: &HalfOpenConvexPolygon, q: &HalfOpenConvexPolygon) -> bool {
    separated_by_edge(p, q) || separated_by_edge(q, p)
}

fn separated_by_edge(p: &HalfOpenConvexPolygon, q: &HalfOpenConvexPolygon) -> bool {
    (0..p.len()).any(|i| {
        let (a, b) = p.edge(i);
        q.vertices().iter().all(|v| orient(a, b, v) <= 0)
    })
}

/// Whether two polygons describe the same closed set.
pub fn same_polygon(p: &HalfOpenConvexPolygon, q: &HalfOpenConvexPolygon) -> bool {
    p.len() == q.len() && p.vertices().iter().all(|v| q.vertices().contains(v))
}

/// Every piece of the next level lies in its parent piece.
pub fn refinement_consistent(system: &IfsSystem, depth: usize) -> bool {
    let parents = attractor_cover(system, depth);
    let children = attractor_cover(system, depth + 1);
    let k = system.maps.len();
    children
        .par_iter()
        .enumerate()
        .all(|(i, c)| polygon_inside(&c.polygon, &parents[i / k].polygon))
}

#[derive(Clone, Debug, Serialize)]
pub struct OscReport {
    pub depth: usize,
    pub pieces: usize,
    pub pairs_checked: usize,
    pub overlaps: Vec<(Vec<u8>, Vec<u8>)>,
    pub nested: bool,
}

impl OscReport {
    pub fn is_ok(&self) -> bool {
        self.overlaps.is_empty() && self.nested
    }
}

/// Pairwise interior-disjointness of the depth-level pieces, and containment
/// of every piece in the seed.
pub fn osc_check(system: &IfsSystem, depth: usize) -> OscReport {
    let pieces = attractor_cover(system, depth);
    let polys: Vec<&HalfOpenConvexPolygon> = pieces.iter().map(|p| &p.polygon).collect();
    let overlaps = overlapping_pairs(&polys)
        .into_iter()
        .map(|(i, j)| (pieces[i].word.clone(), pieces[j].word.clone()))
        .collect();
    let n = pieces.len();
    OscReport {
        depth,
        pieces: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        overlaps,
        nested: pieces.iter().all(|p| polygon_inside(&p.polygon, &system.seed)),
    }
}

fn overlapping_pairs(polys: &[&HalfOpenConvexPolygon]) -> Vec<(usize, usize)> {
    let n = polys.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            ((i + 1)..n).filter(move |&j| !interiors_disjoint(polys[i], polys[j])).map(move |j| (i, j))
        })
        .collect()
}

/// The open set condition with `Inn(D₀)` as the open set: the first-level
/// images of `D₀` have pairwise disjoint interiors and lie in `D₀`'s closure.
pub fn osc_check_d0(depth: usize) -> OscReport {
    let pieces = pentagon_removal(depth);
    let mut overlaps = Vec::new();
    let mut pairs = 0;
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            pairs += 1;
            let clash = pieces[i].1.parts().iter().any(|p| pieces[j].1.parts().iter().any(|q| !interiors_disjoint(p, q)));
            if clash {
                overlaps.push((pieces[i].0.clone(), pieces[j].0.clone()));
            }
        }
    }
    let d0 = Named::D0.region();
    let nested = pieces
        .iter()
        .all(|(_, r)| r.parts().iter().all(|p| p.vertices().iter().all(|v| d0.closure_contains(v))));
    OscReport { depth, pieces: pieces.len(), pairs_checked: pairs, overlaps, nested }
}

/// The `4ⁱ` pieces of `Dᵢ`, each an image of `D₀` under a word map.
pub fn pentagon_removal(i: usize) -> Vec<(Vec<u8>, Region)> {
    let d0 = Named::D0.region();
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..i {
        words = words
            .into_iter()
            .flat_map(|w| {
                ADDRESS_DIGITS.iter().map(move |&m| {
                    let mut w = w.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    words
        .into_par_iter()
        .map(|w| {
            let f = symbolic::word_map(&w);
            let r = d0.affine(&f.a, &f.b);
            (w, r)
        })
        .collect()
}

/// Membership in `Dᵢ`, by pulling `x` back through the digit maps.
pub fn removal_contains(x: &Cyclo, i: usize) -> bool {
    let d0 = Named::D0.region();
    if i == 0 {
        return d0.contains(x);
    }
    ADDRESS_DIGITS.iter().any(|&m| {
        let f = symbolic::digit_map(m);
        let y = (x - &f.b).div(&f.a).expect("nonzero scale");
        d0.closure_contains(&y) && removal_contains(&y, i - 1)
    })
}

/// `(4/ω⁴)ⁱ`.
pub fn removal_ratio(i: usize) -> QuadReal {
    let w2 = &QuadReal::omega() * &QuadReal::omega();
    let step = QuadReal::from_int(4).div(&(&w2 * &w2)).expect("nonzero");
    (0..i).fold(QuadReal::one(), |acc, _| &acc * &step)
}

/// Exact `area(Dᵢ) / area(D₀)` from the shoelace formula.
pub fn removal_area_ratio(i: usize) -> QuadReal {
    let pieces = pentagon_removal(i);
    let total = pieces.iter().fold(QuadReal::zero(), |acc, (_, r)| &acc + &r.area_over_sin72());
    total.div(&Named::D0.region().area_over_sin72()).expect("D₀ has positive area")
}

/// Every sample of `D₀` is in `D₁` or in exactly one of the three removed
/// pentagons `P₁`, `ω⁻²P₀`, `(ω⁻²P₀ − 1)/ζ`, never in both.
pub fn d1_identity_holds(samples: &[Cyclo]) -> bool {
    let removed = removed_pentagons();
    let d0 = Named::D0.region();
    samples.iter().filter(|x| d0.contains(x)).all(|x| {
        let hits = removed.iter().filter(|r| r.contains(x)).count();
        let in_d1 = removal_contains(x, 1);
        (in_d1 && hits == 0) || (!in_d1 && hits == 1)
    })
}

/// `P₁`, `ω⁻²P₀` and `(ω⁻²P₀ − 1)/ζ`.
pub fn removed_pentagons() -> Vec<Region> {
    let p0 = Named::P0.region();
    let small = p0.affine(&Cyclo::omega_pow(-2), &Cyclo::zero(5));
    let zi = Cyclo::zeta_pow(5, -1);
    let moved = small.affine(&zi, &-&zi);
    vec![Named::P1.region().clone(), small, moved]
}

/// Points of the attractor by random iteration; for pictures only.
pub fn chaos_game(system: &IfsSystem, n_points: usize, seed: u64) -> Vec<(f64, f64)> {
    let maps: Vec<((f64, f64), (f64, f64))> = system.maps.iter().map(|f| (f.a.to_c64(), f.b.to_c64())).collect();
    let start = system.maps[0].fixed_point().expect("contraction").to_c64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = start;
    let mut out = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        let ((ar, ai), (br, bi)) = maps[rng.gen_range(0..maps.len())];
        p = (ar * p.0 - ai * p.1 + br, ar * p.1 + ai * p.0 + bi);
        out.push(p);
    }
    out
}

/// Least-squares slope of `log N(ε)` against `log 1/ε` for box sizes
/// `2^{-k}`, `k ∈ scales`.
pub fn box_dimension(points: &[(f64, f64)], scales: std::ops::RangeInclusive<u32>) -> f64 {
    let data: Vec<(f64, f64)> = scales
        .map(|k| {
            let inv = (1u64 << k) as f64;
            let mut boxes: Vec<(i64, i64)> =
                points.iter().map(|&(x, y)| ((x * inv).floor() as i64, (y * inv).floor() as i64)).collect();
            boxes.sort_unstable();
            boxes.dedup();
            (inv.ln(), (boxes.len() as f64).ln())
        })
        .collect();
    let n = data.len() as f64;
    let (sx, sy) = data.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = data.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = data.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}

/// A cylinder of `Y′`: the image of the hull under the word map.
#[derive(Clone, Debug)]
pub struct CylinderSet {
    pub word: Vec<u8>,
    pub polygon: HalfOpenConvexPolygon,
}

impl CylinderSet {
    pub fn new(word: &[u8]) -> Result<Self, FractalError> {
        if let Some(&m) = word.iter().find(|m| !ADDRESS_DIGITS.contains(m)) {
            return Err(FractalError::BadDigit(m));
        }
        Ok(CylinderSet { word: word.to_vec(), polygon: symbolic::cylinder(word) })
    }

    /// Self-similar measure `4^{−ℓ}`.
    pub fn measure(&self) -> Rat {
        Rat::new(BigInt::from(1), BigInt::from(4).pow(self.word.len() as u32))
    }

    /// Exact squared diameter, the largest squared vertex distance.
    pub fn diameter_sq(&self) -> QuadReal {
        diameter_sq(&self.polygon)
    }
}

pub fn diameter_sq(p: &HalfOpenConvexPolygon) -> QuadReal {
    let vs = p.vertices();
    let mut best = QuadReal::zero();
    for a in vs {
        for b in vs {
            let d = (a - b).norm_sq().as_quad().expect("real");
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Visit counts of `T̃ⁿx`, `n < N`, to level-`ℓ` cylinders.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyTable {
    pub samples: u64,
    pub level: usize,
    pub counts: BTreeMap<String, u64>,
}

impl FrequencyTable {
    pub fn frequency(&self, word: &str) -> f64 {
        *self.counts.get(word).unwrap_or(&0) as f64 / self.samples as f64
    }

    /// Largest `|freq − 4^{−ℓ}|` over all `4^ℓ` cylinders.
    pub fn max_deviation(&self) -> f64 {
        let expect = 0.25f64.powi(self.level as i32);
        all_words(self.level)
            .iter()
            .map(|w| (self.frequency(&word_label(w)) - expect).abs())
            .fold(0.0, f64::max)
    }
}

fn word_label(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

fn all_words(len: usize) -> Vec<Vec<u8>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                ADDRESS_DIGITS.iter().map(move |&m| {
                    let mut w = w.clone();
                    w.push(m);
                    w
                })
            })
            .collect()
    })
}

/// Counts the address prefixes of length `len` along the `T̃`-orbit of `x`.
/// Orbit points whose address ends early are counted under the shorter word.
pub fn cylinder_freq(x: &Cyclo, n: u64, len: usize) -> Result<FrequencyTable, FractalError> {
    if !dynamics::in_tzed(x) {
        return Err(FractalError::NotInTZed(x.to_string()));
    }
    let mut p = dynamics::Loz::from_cyclo(x)?;
    let mut counts = BTreeMap::new();
    for _ in 0..n {
        let word = dynamics::loz_address(&p, len);
        *counts.entry(word_label(&word)).or_insert(0) += 1;
        p = dynamics::loz_ttilde(&p);
    }
    Ok(FrequencyTable { samples: n, level: len, counts })
}

/// `T̃` on a polygon lying on one side of the line bounding `Δ`.
pub fn ttilde_polygon(p: &HalfOpenConvexPolygon) -> Result<HalfOpenConvexPolygon, FractalError> {
    let zi = Cyclo::zeta_pow(5, -1);
    let side: Vec<i8> = p.vertices().iter().map(|v| (v * &zi).sign_imag()).collect();
    if side.iter().all(|&s| s >= 0) {
        Ok(p.affine(&Cyclo::zeta_pow(5, -2), &-&zi))
    } else if side.iter().all(|&s| s <= 0) {
        Ok(p.affine(&zi, &-&zi))
    } else {
        Err(FractalError::Straddles(format!("{:?}", p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>())))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderRelation {
    pub source: String,
    pub target: String,
    pub holds: bool,
}

/// The six relations `T̃⁻¹([target]) = [source]`, checked as `T̃([source]) = [target]`.
pub fn cylinder_relations() -> Result<Vec<CylinderRelation>, FractalError> {
    let pairs: [(&[u8], &[u8]); 6] = [
        (&[5], &[3]),
        (&[3], &[2]),
        (&[2], &[0]),
        (&[0, 5], &[5, 3]),
        (&[0, 3], &[5, 2]),
        (&[0, 2], &[5, 0]),
    ];
    pairs
        .iter()
        .map(|&(s, t)| {
            let image = ttilde_polygon(&CylinderSet::new(s)?.polygon)?;
            let holds = same_polygon(&image, &CylinderSet::new(t)?.polygon);
            Ok(CylinderRelation { source: word_label(s), target: word_label(t), holds })
        })
        .collect()
}

/// SVG of cover pieces, one path each, filled by `depth`.
pub fn pieces_svg(polys: &[&HalfOpenConvexPolygon], depth: usize, max_depth: usize) -> String {
    let mut svg = Svg::new();
    let fill = depth_fill(depth, max_depth);
    for p in polys {
        let pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| v.to_c64()).collect();
        svg.polygon(&pts, &fill, "black");
    }
    svg.finish()
}

/// SVG of `Dᵢ` drawn over `D₀`.
pub fn removal_svg(i: usize) -> String {
    let mut svg = Svg::new();
    crate::regions::region_svg(&mut svg, Named::D0.region(), "white");
    for (_, r) in pentagon_removal(i) {
        crate::regions::region_svg(&mut svg, &r, &depth_fill(i, i.max(1)));
    }
    svg.finish()
}

pub fn cloud_svg(points: &[(f64, f64)], radius: f64) -> String {
    let mut svg = Svg::new();
    svg.points(points, radius, "navy");
    svg.finish()
}
