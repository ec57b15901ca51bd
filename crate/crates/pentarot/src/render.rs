//! Minimal SVG writer. Coordinates are mathematical (y up) and printed with
//! 12 significant digits.

use std::fmt::Write;

/// Formats `v` with 12 significant digits, trimming trailing zeros.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{rounded}")
}

#[derive(Clone, Debug)]
pub struct Svg {
    min: (f64, f64),
    max: (f64, f64),
    body: String,
}

impl Default for Svg {
    fn default() -> Self {
        Svg::new()
    }
}

impl Svg {
    pub fn new() -> Self {
        Svg { min: (f64::INFINITY, f64::INFINITY), max: (f64::NEG_INFINITY, f64::NEG_INFINITY), body: String::new() }
    }

    fn grow(&mut self, (x, y): (f64, f64)) {
        self.min = (self.min.0.min(x), self.min.1.min(y));
        self.max = (self.max.0.max(x), self.max.1.max(y));
    }

    pub fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str) {
        if pts.is_empty() {
            return;
        }
        let mut d = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            self.grow((x, y));
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, sig12(x), sig12(-y));
        }
        d.push('Z');
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="{fill}" stroke="{stroke}" stroke-width="0.002"/>"#
        );
    }

    pub fn points(&mut self, pts: &[(f64, f64)], radius: f64, fill: &str) {
        for &(x, y) in pts {
            self.grow((x, y));
            let _ = writeln!(
                self.body,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
                sig12(x),
                sig12(-y),
                sig12(radius)
            );
        }
    }

    pub fn finish(&self) -> String {
        let (w, h) = (self.max.0 - self.min.0, self.max.1 - self.min.1);
        let pad = 0.02 * w.max(h).max(1e-9);
        let (x0, y0) = (self.min.0 - pad, -self.max.1 - pad);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">\n{}</svg>\n",
            sig12(x0),
            sig12(y0),
            sig12(w + 2.0 * pad),
            sig12(h + 2.0 * pad),
            (800.0 * (h + 2.0 * pad) / (w + 2.0 * pad)).round().max(1.0),
            self.body
        )
    }
}

/// Fill colour for depth `k` of `n`, from light to dark blue.
pub fn depth_fill(k: usize, n: usize) -> String {
    let t = if n == 0 { 0.0 } else { k as f64 / n as f64 };
    let c = (220.0 - 150.0 * t).round() as u8;
    format!("rgb({c},{c},255)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(-1234.5), "-1234.5");
    }

    #[test]
    fn document_is_stable() {
        let mut s = Svg::new();
        s.polygon(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], "none", "black");
        let a = s.finish();
        assert_eq!(a, s.finish());
        assert!(a.starts_with("<svg"));
        assert!(a.contains("M0 0 L1 0 L0 -1 Z"));
    }
}
