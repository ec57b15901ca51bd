//! JSON and SVG export of polygons.

use serde_json::{json, Value};

use crate::render::Svg;

use super::{HalfOpenConvexPolygon, Region};

/// `{vertices: ["a,b,c,d", …], edge_closed: […], vertex_included: […]}`.
pub fn polygon_json(p: &HalfOpenConvexPolygon) -> Value {
    json!({
        "vertices": p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "edge_closed": p.edge_closed(),
        "vertex_included": p.vertex_included(),
    })
}

pub fn region_json(r: &Region) -> Value {
    json!({ "parts": r.parts().iter().map(polygon_json).collect::<Vec<_>>() })
}

/// Draws the region's polygons into `svg`.
pub fn region_svg(svg: &mut Svg, r: &Region, fill: &str) {
    for p in r.parts() {
        let pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| v.to_c64()).collect();
        svg.polygon(&pts, fill, "black");
    }
}

#[cfg(test)]
mod tests {
    use super::super::Named;
    use super::*;

    #[test]
    fn lozenge_json() {
        let v = region_json(Named::L.region());
        assert_eq!(v["parts"][0]["vertices"][1], "1,0,0,0");
        assert_eq!(v["parts"][0]["edge_closed"], json!([true, false, false, true]));
        assert_eq!(v["parts"][0]["vertex_included"], json!([true, false, false, false]));
    }
}
