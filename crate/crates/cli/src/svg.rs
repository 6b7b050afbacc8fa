//! Minimal SVG scenes in world coordinates. The y axis is flipped by
//! negating y, so the view box spans `[-maxy, -miny]` vertically.

use polycenter::disks::{ArcGeom, BoundaryArc};
use polycenter::Point;
use std::f64::consts::PI;
use std::fmt::Write;

#[derive(Debug, Clone)]
pub enum Prim {
    Ring(Vec<Point>),
    Polyline(Vec<Point>),
    /// Closed cycle of boundary arcs.
    Outline(Vec<BoundaryArc>),
    Marker(Point),
    Label(Point, String),
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub class: &'static str,
    pub color: &'static str,
    pub prim: Prim,
}

/// Ordered layers and the viewport that contains them.
#[derive(Debug, Clone, Default)]
pub struct RenderScene {
    pub layers: Vec<Layer>,
}

fn f(x: f64) -> String {
    crate::fmt::short(x)
}

fn xy(p: Point) -> String {
    format!("{} {}", f(p.x), f(-p.y))
}

impl RenderScene {
    pub fn push(&mut self, class: &'static str, color: &'static str, prim: Prim) {
        self.layers.push(Layer { class, color, prim });
    }

    fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut add = |p: Point| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        for l in &self.layers {
            match &l.prim {
                Prim::Ring(v) | Prim::Polyline(v) => v.iter().copied().for_each(&mut add),
                Prim::Outline(arcs) => {
                    for a in arcs {
                        for k in 0..=8 {
                            add(a.point_at(k as f64 / 8.0));
                        }
                    }
                }
                Prim::Marker(p) | Prim::Label(p, _) => add(*p),
            }
        }
        if !lo.x.is_finite() {
            return (Point::new(0.0, 0.0), Point::new(1.0, 1.0));
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let m = 0.05 * span;
        let stroke = 0.004 * span;
        let (w, h) = (hi.x - lo.x + 2.0 * m, hi.y - lo.y + 2.0 * m);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
            f(lo.x - m),
            f(-hi.y - m),
            f(w),
            f(h),
            f((600.0 * w / w.max(h)).round()),
            f((600.0 * h / w.max(h)).round())
        );
        for l in &self.layers {
            let style = format!(r#"class="{}" stroke="{}" stroke-width="{}""#, l.class, l.color, f(stroke));
            match &l.prim {
                Prim::Ring(v) => {
                    let pts: Vec<String> = v.iter().map(|&p| xy(p).replace(' ', ",")).collect();
                    let _ = writeln!(s, r#"<polygon {style} fill="none" points="{}"/>"#, pts.join(" "));
                }
                Prim::Polyline(v) => {
                    let pts: Vec<String> = v.iter().map(|&p| xy(p).replace(' ', ",")).collect();
                    let _ = writeln!(s, r#"<polyline {style} fill="none" points="{}"/>"#, pts.join(" "));
                }
                Prim::Outline(arcs) => {
                    let _ = writeln!(s, r#"<path {style} fill="none" d="{}"/>"#, outline_path(arcs));
                }
                Prim::Marker(p) => {
                    let _ = writeln!(
                        s,
                        r#"<circle class="{}" fill="{}" cx="{}" cy="{}" r="{}"/>"#,
                        l.class,
                        l.color,
                        f(p.x),
                        f(-p.y),
                        f(3.0 * stroke)
                    );
                }
                Prim::Label(p, text) => {
                    let _ = writeln!(
                        s,
                        r#"<text class="{}" fill="{}" x="{}" y="{}" font-size="{}">{}</text>"#,
                        l.class,
                        l.color,
                        f(p.x),
                        f(-p.y),
                        f(8.0 * stroke),
                        escape(text)
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Path data for a closed arc cycle. Clockwise arcs in y-up coordinates turn
/// positive once y is negated, hence sweep flag 1.
fn outline_path(arcs: &[BoundaryArc]) -> String {
    let Some(first) = arcs.first() else { return String::new() };
    let mut d = format!("M {}", xy(first.start));
    for a in arcs {
        match a.geom {
            ArcGeom::Circle { radius, from, to, .. } => {
                // Split long arcs so a full circle still has distinct endpoints.
                if from - to > 0.5 * PI {
                    let _ = write!(d, " A {} {} 0 0 1 {}", f(radius), f(radius), xy(a.point_at(0.5)));
                }
                let _ = write!(d, " A {} {} 0 0 1 {}", f(radius), f(radius), xy(a.end));
            }
            ArcGeom::Edge { .. } => {
                let _ = write!(d, " L {}", xy(a.end));
            }
        }
    }
    d.push_str(" Z");
    d
}
