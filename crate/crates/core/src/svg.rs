//! Minimal deterministic SVG 1.1 writer in mathematical (y-up) coordinates.
//!
//! Drawing happens inside a group flipped by `scale(1,-1)`; text is placed
//! outside it so that it reads upright. Numbers are printed with a fixed
//! number of decimals, so identical input gives byte-identical output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geom::{Circle, Line, Point};

const DECIMALS: usize = 6;

/// Axis-aligned box `[min.x, max.x] × [min.y, max.y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn new(min: Point, max: Point) -> Self {
        Self {
            min: Point::new(min.x.min(max.x), min.y.min(max.y)),
            max: Point::new(min.x.max(max.x), min.y.max(max.y)),
        }
    }

    pub fn around(p: Point) -> Self {
        Self { min: p, max: p }
    }

    pub fn include(&mut self, p: Point) {
        self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    pub fn include_circle(&mut self, c: &Circle) {
        let r = Point::new(c.radius, c.radius);
        self.include(c.center - r);
        self.include(c.center + r);
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Grows each side by `fraction` of the larger extent (at least a unit
    /// box for a single point).
    pub fn with_margin(&self, fraction: f64) -> Self {
        let extent = self.width().max(self.height());
        let pad = if extent > 0.0 { extent * fraction } else { 1.0 };
        let d = Point::new(pad, pad);
        Self::new(self.min - d, self.max + d)
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.min.x..=self.max.x).contains(&p.x) && (self.min.y..=self.max.y).contains(&p.y)
    }

    /// The part of `line` inside the box, if any.
    pub fn clip_line(&self, line: &Line) -> Option<(Point, Point)> {
        // Slab clipping on the parametrization anchor + t·direction.
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, d, lo, hi) in [
            (line.anchor.x, line.direction.x, self.min.x, self.max.x),
            (line.anchor.y, line.direction.y, self.min.y, self.max.y),
        ] {
            if d == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
            } else {
                let (a, b) = ((lo - o) / d, (hi - o) / d);
                t0 = t0.max(a.min(b));
                t1 = t1.min(a.max(b));
            }
        }
        (t0 < t1).then(|| (line.point_at(t0), line.point_at(t1)))
    }
}

/// Fixed-decimal number with negative zero folded into zero.
pub fn num(x: f64) -> String {
    let s = format!("{x:.DECIMALS$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone)]
pub struct SvgDocument {
    view: BBox,
    stroke: f64,
    shapes: Vec<String>,
    labels: Vec<String>,
}

impl SvgDocument {
    pub fn new(view: BBox) -> Self {
        let stroke = view.width().max(view.height()) / 400.0;
        Self {
            view,
            stroke,
            shapes: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn view(&self) -> BBox {
        self.view
    }

    /// Stroke width for a weight of 1.
    pub fn stroke(&self) -> f64 {
        self.stroke
    }

    pub fn circle(&mut self, c: &Circle, color: &str, weight: f64) {
        self.shapes.push(format!(
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            num(c.center.x),
            num(c.center.y),
            num(c.radius),
            num(self.stroke * weight)
        ));
    }

    pub fn segment(&mut self, p: Point, q: Point, color: &str, weight: f64) {
        self.shapes.push(format!(
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"/>"#,
            num(p.x),
            num(p.y),
            num(q.x),
            num(q.y),
            num(self.stroke * weight)
        ));
    }

    /// Draws the visible part of an infinite line.
    pub fn line(&mut self, l: &Line, color: &str, weight: f64) {
        if let Some((p, q)) = self.view.clip_line(l) {
            self.segment(p, q, color, weight);
        }
    }

    pub fn polygon(&mut self, pts: &[Point], color: &str, weight: f64) {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(p.x), num(p.y));
        }
        d.push_str(" Z");
        self.shapes.push(format!(
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            num(self.stroke * weight)
        ));
    }

    /// Circular arc about `center` from angle `from` to `to` (counterclockwise
    /// for `to > from`).
    pub fn arc(&mut self, center: Point, radius: f64, from: f64, to: f64, color: &str, weight: f64) {
        let p = center + Point::from_polar(radius, from);
        let q = center + Point::from_polar(radius, to);
        let large = u8::from((to - from).abs() > std::f64::consts::PI);
        // Inside the flipped group a mathematically positive sweep is flag 1.
        let sweep = u8::from(to > from);
        self.shapes.push(format!(
            r#"<path d="M{} {} A{} {} 0 {large} {sweep} {} {}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            num(p.x),
            num(p.y),
            num(radius),
            num(radius),
            num(q.x),
            num(q.y),
            num(self.stroke * weight)
        ));
    }

    pub fn dot(&mut self, p: Point, color: &str) {
        self.shapes.push(format!(
            r#"<circle cx="{}" cy="{}" r="{}" fill="{color}" stroke="none"/>"#,
            num(p.x),
            num(p.y),
            num(self.stroke * 2.5)
        ));
    }

    /// Text anchored at `p`, slightly offset up and right.
    pub fn label(&mut self, p: Point, text: &str, color: &str) {
        let off = self.stroke * 4.0;
        self.labels.push(format!(
            r#"<text x="{}" y="{}" font-family="serif" font-size="{}" fill="{color}">{}</text>"#,
            num(p.x + off),
            num(-(p.y + off)),
            num(self.stroke * 14.0),
            escape(text)
        ));
    }

    pub fn finish(&self) -> String {
        let v = self.view;
        let (w, h) = (v.width(), v.height());
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{}" viewBox="{} {} {} {}">"#,
            num(800.0 * h / w).trim_end_matches('0').trim_end_matches('.'),
            num(v.min.x),
            num(-v.max.y),
            num(w),
            num(h)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
            num(v.min.x),
            num(-v.max.y),
            num(w),
            num(h)
        );
        out.push_str("<g transform=\"scale(1,-1)\">\n");
        for s in &self.shapes {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str("</g>\n");
        for s in &self.labels {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(1.5), "1.500000");
        assert_eq!(num(-2.25), "-2.250000");
    }

    #[test]
    fn margin_and_clip() {
        let b = BBox::new(Point::ZERO, Point::new(2.0, 1.0)).with_margin(0.05);
        assert!((b.min.x + 0.1).abs() < 1e-15 && (b.max.y - 1.1).abs() < 1e-15);
        let l = Line::new(Point::new(1.0, 0.5), Point::ONE).unwrap();
        let (p, q) = b.clip_line(&l).unwrap();
        assert!((p.x - b.min.x).abs() < 1e-12 && (q.x - b.max.x).abs() < 1e-12);
        let off = Line::new(Point::new(0.0, 5.0), Point::ONE).unwrap();
        assert!(b.clip_line(&off).is_none());
    }

    #[test]
    fn document_is_flipped_and_deterministic() {
        let mut doc = SvgDocument::new(BBox::new(Point::ZERO, Point::new(1.0, 1.0)));
        doc.circle(&Circle::new(Point::new(0.5, 0.5), 0.25).unwrap(), "black", 1.0);
        doc.label(Point::new(0.5, 0.5), "a<b", "black");
        let s = doc.finish();
        assert!(s.contains("scale(1,-1)"));
        assert!(s.contains("a&lt;b"));
        assert!(s.contains(r#"viewBox="0.000000 -1.000000 1.000000 1.000000""#));
        assert_eq!(s, doc.finish());
    }
}
