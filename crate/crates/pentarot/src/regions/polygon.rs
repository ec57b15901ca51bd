//! Convex polygons with per-edge and per-vertex closedness.

use serde::Serialize;

use crate::cyclo::{Cyclo, QuadReal};

use super::RegionError;

/// Anything that can decide exact membership of a point.
pub trait PointSet {
    fn contains(&self, x: &Cyclo) -> bool;
}

/// Signed orientation of the triangle `(a, b, c)`: +1 for a left turn.
pub fn orient(a: &Cyclo, b: &Cyclo, c: &Cyclo) -> i8 {
    let u = b - a;
    let v = c - a;
    (&u.conj() * &v).sign_imag()
}

/// Convex polygon with counterclockwise vertices in Q(ζ₅).
///
/// Edge `i` joins vertex `i` to vertex `i + 1`. A point on the relative
/// interior of an edge belongs to the polygon iff that edge is closed; a
/// vertex belongs iff its own flag is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfOpenConvexPolygon {
    vertices: Vec<Cyclo>,
    edge_closed: Vec<bool>,
    vertex_included: Vec<bool>,
}

impl HalfOpenConvexPolygon {
    /// A vertex is included iff both adjacent edges are closed.
    pub fn new(vertices: Vec<Cyclo>, edge_closed: Vec<bool>) -> Result<Self, RegionError> {
        let n = vertices.len();
        if edge_closed.len() != n {
            return Err(RegionError::FlagCount { vertices: n, flags: edge_closed.len() });
        }
        let vertex_included = (0..n).map(|i| edge_closed[i] && edge_closed[(i + n - 1) % n]).collect();
        let p = HalfOpenConvexPolygon { vertices, edge_closed, vertex_included };
        p.validate()?;
        Ok(p)
    }

    pub fn closed(vertices: Vec<Cyclo>) -> Result<Self, RegionError> {
        let n = vertices.len();
        Self::new(vertices, vec![true; n])
    }

    pub fn open(vertices: Vec<Cyclo>) -> Result<Self, RegionError> {
        let n = vertices.len();
        Self::new(vertices, vec![false; n])
    }

    pub fn with_vertex(mut self, i: usize, included: bool) -> Self {
        self.vertex_included[i] = included;
        self
    }

    fn validate(&self) -> Result<(), RegionError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(RegionError::TooFewVertices(n));
        }
        if self.vertices.iter().any(|v| v.order() != 5) {
            return Err(RegionError::WrongField);
        }
        for i in 0..n {
            let (a, b, c) = (&self.vertices[i], &self.vertices[(i + 1) % n], &self.vertices[(i + 2) % n]);
            if orient(a, b, c) <= 0 {
                return Err(RegionError::NotConvex(i + 1));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Cyclo] {
        &self.vertices
    }

    pub fn edge_closed(&self) -> &[bool] {
        &self.edge_closed
    }

    pub fn vertex_included(&self) -> &[bool] {
        &self.vertex_included
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (&Cyclo, &Cyclo) {
        let n = self.vertices.len();
        (&self.vertices[i % n], &self.vertices[(i + 1) % n])
    }

    /// Membership in the closure, ignoring all flags.
    pub fn closure_contains(&self, x: &Cyclo) -> bool {
        (0..self.len()).all(|i| {
            let (a, b) = self.edge(i);
            orient(a, b, x) >= 0
        })
    }

    /// Membership in the interior.
    pub fn interior_contains(&self, x: &Cyclo) -> bool {
        (0..self.len()).all(|i| {
            let (a, b) = self.edge(i);
            orient(a, b, x) > 0
        })
    }

    /// Image under `x ↦ a·x + b` with `a ≠ 0`; flags carried over unchanged.
    pub fn affine(&self, a: &Cyclo, b: &Cyclo) -> Self {
        HalfOpenConvexPolygon {
            vertices: self.vertices.iter().map(|v| &(a * v) + b).collect(),
            edge_closed: self.edge_closed.clone(),
            vertex_included: self.vertex_included.clone(),
        }
    }

    /// Image under `x ↦ scale·ζᵏ·x + translate`.
    pub fn transform(&self, k: i64, scale: &Cyclo, translate: &Cyclo) -> Self {
        self.affine(&scale.mul_zeta_pow(k), translate)
    }

    /// Area divided by sin 72°, exactly.
    pub fn area_over_sin72(&self) -> QuadReal {
        let n = self.len();
        let mut acc = QuadReal::zero();
        for i in 0..n {
            let (a, b) = self.edge(i);
            let cross = (&a.conj() * b).im_quad().expect("n = 5");
            acc = &acc + &cross;
        }
        let half = QuadReal::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        &acc * &half
    }

    pub fn area_f64(&self) -> f64 {
        self.area_over_sin72().to_f64() * 72f64.to_radians().sin()
    }

    /// Mean of the vertices; an interior point.
    pub fn centroid(&self) -> Cyclo {
        let mut s = Cyclo::zero(5);
        for v in &self.vertices {
            s = &s + v;
        }
        s.scale(&num_rational::BigRational::new(1.into(), (self.len() as i64).into()))
    }

    /// Rational points on the boundary and inside: vertices, edge points at
    /// parameters `j/parts`, and interior points toward the centroid.
    pub fn sample_points(&self, parts: i64) -> Vec<Cyclo> {
        let mut out = self.vertices.clone();
        let c = self.centroid();
        out.push(c.clone());
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            for j in 1..parts {
                let t = num_rational::BigRational::new(j.into(), parts.into());
                let p = a + &(b - a).scale(&t);
                out.push(&p + &(&c - &p).scale(&num_rational::BigRational::new(1.into(), 7.into())));
                out.push(p);
            }
        }
        out
    }
}

impl PointSet for HalfOpenConvexPolygon {
    fn contains(&self, x: &Cyclo) -> bool {
        let n = self.len();
        let mut on_edge = None;
        for i in 0..n {
            let (a, b) = self.edge(i);
            match orient(a, b, x) {
                s if s < 0 => return false,
                0 => {
                    if on_edge.is_some() {
                        // on two edge lines of a convex polygon: a vertex
                        return self.vertices.iter().position(|v| v == x).is_some_and(|k| self.vertex_included[k]);
                    }
                    on_edge = Some(i);
                }
                _ => {}
            }
        }
        match on_edge {
            None => true,
            Some(i) => match self.vertices.iter().position(|v| v == x) {
                Some(k) => self.vertex_included[k],
                None => self.edge_closed[i],
            },
        }
    }
}

/// A finite disjoint union of half-open convex polygons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    parts: Vec<HalfOpenConvexPolygon>,
}

impl Region {
    pub fn new(parts: Vec<HalfOpenConvexPolygon>) -> Self {
        Region { parts }
    }

    pub fn parts(&self) -> &[HalfOpenConvexPolygon] {
        &self.parts
    }

    pub fn affine(&self, a: &Cyclo, b: &Cyclo) -> Region {
        Region { parts: self.parts.iter().map(|p| p.affine(a, b)).collect() }
    }

    pub fn transform(&self, k: i64, scale: &Cyclo, translate: &Cyclo) -> Region {
        Region { parts: self.parts.iter().map(|p| p.transform(k, scale, translate)).collect() }
    }

    pub fn area_over_sin72(&self) -> QuadReal {
        self.parts.iter().fold(QuadReal::zero(), |acc, p| &acc + &p.area_over_sin72())
    }

    pub fn area_f64(&self) -> f64 {
        self.parts.iter().map(HalfOpenConvexPolygon::area_f64).sum()
    }

    pub fn closure_contains(&self, x: &Cyclo) -> bool {
        self.parts.iter().any(|p| p.closure_contains(x))
    }

    pub fn sample_points(&self, parts: i64) -> Vec<Cyclo> {
        self.parts.iter().flat_map(|p| p.sample_points(parts)).collect()
    }
}

impl From<HalfOpenConvexPolygon> for Region {
    fn from(p: HalfOpenConvexPolygon) -> Self {
        Region { parts: vec![p] }
    }
}

impl PointSet for Region {
    fn contains(&self, x: &Cyclo) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }
}
