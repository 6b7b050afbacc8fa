//! Simple polygons, boundary coordinates and clockwise boundary chains.
//!
//! Vertices are stored clockwise (negative signed area with the y axis
//! pointing up); edge `e_i` runs from `v_i` to `v_{i+1}` and all indices wrap.

use crate::error::{GeoError, Result};
use crate::geom::{
    on_segment, orient, point_segment_distance, segments_cross_properly, signed_area,
    winding_number, Point, TAU_ON,
};

/// A validated simple polygon with clockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

/// Result of a point-location query against the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// A point on the boundary: fraction `t` along the directed edge `e_edge`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCoord {
    pub edge: usize,
    pub t: f64,
}

impl BoundaryCoord {
    pub fn new(edge: usize, t: f64) -> Self {
        BoundaryCoord { edge, t }
    }

    pub fn vertex(k: usize) -> Self {
        BoundaryCoord { edge: k, t: 0.0 }
    }

    /// Canonical form: `t` in `[0, 1)`, edge index reduced modulo `n`.
    pub fn canonical(self, n: usize) -> Self {
        let mut edge = self.edge % n;
        let mut t = self.t.clamp(0.0, 1.0);
        if t >= 1.0 {
            edge = (edge + 1) % n;
            t = 0.0;
        }
        BoundaryCoord { edge, t }
    }

    /// Cyclic boundary position in `[0, n)`.
    pub fn position(self, n: usize) -> f64 {
        let c = self.canonical(n);
        c.edge as f64 + c.t
    }

    pub fn from_position(pos: f64, n: usize) -> Self {
        let nf = n as f64;
        let mut p = pos % nf;
        if p < 0.0 {
            p += nf;
        }
        let edge = (p.floor() as usize).min(n - 1);
        BoundaryCoord { edge, t: p - edge as f64 }.canonical(n)
    }

    /// If this coordinate is (numerically) a vertex, its index.
    pub fn as_vertex(self, n: usize) -> Option<usize> {
        let c = self.canonical(n);
        if c.t <= 1e-15 {
            Some(c.edge)
        } else {
            None
        }
    }
}

/// Part of the boundary walked clockwise from `from` to `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub from: BoundaryCoord,
    pub to: BoundaryCoord,
    pub vertex_indices: Vec<usize>,
}

impl SimplePolygon {
    /// Validate raw input and normalize it to clockwise order.
    pub fn new(raw: Vec<Point>) -> Result<Self> {
        validate_polygon(raw)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertex `v_k` with wrap-around.
    #[inline]
    pub fn v(&self, k: usize) -> Point {
        self.vertices[k % self.vertices.len()]
    }

    /// Endpoints of edge `e_k`.
    #[inline]
    pub fn edge(&self, k: usize) -> (Point, Point) {
        (self.v(k), self.v(k + 1))
    }

    #[inline]
    pub fn next(&self, k: usize) -> usize {
        (k + 1) % self.n()
    }

    #[inline]
    pub fn prev(&self, k: usize) -> usize {
        (k + self.n() - 1) % self.n()
    }

    pub fn area(&self) -> f64 {
        -signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.n()).map(|k| self.v(k).dist(self.v(k + 1))).sum()
    }

    /// Bounding box as `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bbox();
        lo.dist(hi)
    }

    /// A vertex is reflex when the interior angle exceeds π.
    pub fn is_reflex(&self, k: usize) -> bool {
        // Clockwise polygon: a left turn at v_k is reflex.
        orient(self.v(self.prev(k)), self.v(k), self.v(k + 1)) > 0
    }

    pub fn is_convex_vertex(&self, k: usize) -> bool {
        orient(self.v(self.prev(k)), self.v(k), self.v(k + 1)) < 0
    }

    pub fn point_at(&self, c: BoundaryCoord) -> Point {
        let c = c.canonical(self.n());
        let (a, b) = self.edge(c.edge);
        if c.t == 0.0 {
            a
        } else {
            a.lerp(b, c.t)
        }
    }

    /// Closest boundary coordinate to `p` (exact vertices snap to `t = 0`).
    pub fn project_to_boundary(&self, p: Point) -> (BoundaryCoord, f64) {
        let mut best = (BoundaryCoord::vertex(0), f64::INFINITY);
        for k in 0..self.n() {
            let (a, b) = self.edge(k);
            let (d, t) = point_segment_distance(p, a, b);
            if d < best.1 {
                best = (BoundaryCoord::new(k, t).canonical(self.n()), d);
            }
        }
        best
    }

    /// Standard point location with boundary tolerance [`TAU_ON`].
    pub fn locate(&self, p: Point) -> Containment {
        self.locate_with_tol(p, TAU_ON)
    }

    pub fn locate_with_tol(&self, p: Point, tol: f64) -> Containment {
        for k in 0..self.n() {
            let (a, b) = self.edge(k);
            if on_segment(p, a, b) || point_segment_distance(p, a, b).0 <= tol {
                return Containment::Boundary;
            }
        }
        if winding_number(&self.vertices, p) != 0 {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.locate(p) != Containment::Outside
    }

    /// Clockwise chain from `u` to `w`; `u == w` yields the degenerate chain.
    pub fn chain(&self, u: BoundaryCoord, w: BoundaryCoord) -> Chain {
        let n = self.n();
        let u = u.canonical(n);
        let w = w.canonical(n);
        let pu = u.position(n);
        let pw = w.position(n);
        let mut vertex_indices = Vec::new();
        if pu != pw {
            let span = cyclic_span(pu, pw, n);
            // Vertices with cyclic offset in [0, span] from u, in order.
            let first = if u.t == 0.0 { u.edge } else { (u.edge + 1) % n };
            let mut k = first;
            loop {
                let off = cyclic_span(pu, k as f64, n);
                if off > span || (off == 0.0 && k != u.edge) {
                    break;
                }
                vertex_indices.push(k);
                if vertex_indices.len() > n {
                    break;
                }
                k = (k + 1) % n;
                if k == first {
                    break;
                }
            }
        }
        Chain { from: u, to: w, vertex_indices }
    }
}

/// Clockwise distance (in edge units) from position `a` to position `b`.
pub fn cyclic_span(a: f64, b: f64, n: usize) -> f64 {
    let d = b - a;
    if d >= 0.0 {
        d
    } else {
        d + n as f64
    }
}

/// Validate a raw vertex list, returning a clockwise [`SimplePolygon`].
pub fn validate_polygon(raw: Vec<Point>) -> Result<SimplePolygon> {
    let n = raw.len();
    if n < 3 {
        return Err(GeoError::TooFewVertices(n));
    }
    for (i, p) in raw.iter().enumerate() {
        if !p.is_finite() {
            return Err(GeoError::NonFinite(i));
        }
    }
    for i in 0..n {
        if raw[i] == raw[(i + 1) % n] {
            return Err(GeoError::DegenerateEdge((i + 1) % n));
        }
    }
    for i in 0..n {
        let (a, b) = (raw[i], raw[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (raw[j], raw[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Shared endpoint only: the far endpoint of one edge must
                // not lie on the other.
                let (shared_far_a, shared_far_b) = if j == i + 1 { (a, d) } else { (b, c) };
                let (seg1, seg2) = if j == i + 1 { ((c, d), (a, b)) } else { ((c, d), (a, b)) };
                if on_segment(shared_far_a, seg1.0, seg1.1) || on_segment(shared_far_b, seg2.0, seg2.1) {
                    return Err(GeoError::SelfIntersecting(i, j));
                }
                if n == 3 {
                    continue;
                }
            } else if segments_cross_properly(a, b, c, d)
                || on_segment(c, a, b)
                || on_segment(d, a, b)
                || on_segment(a, c, d)
                || on_segment(b, c, d)
            {
                return Err(GeoError::SelfIntersecting(i, j));
            }
        }
    }
    let area = signed_area(&raw);
    if area == 0.0 {
        return Err(GeoError::ZeroArea);
    }
    let vertices = if area > 0.0 {
        let mut v = Vec::with_capacity(n);
        v.push(raw[0]);
        v.extend(raw[1..].iter().rev().copied());
        v
    } else {
        raw
    };
    Ok(SimplePolygon { vertices })
}

/// Parse the polygon text format: a count line followed by `x y` lines;
/// `#` starts a comment line.
pub fn parse_polygon(text: &str) -> Result<SimplePolygon> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or(GeoError::Parse { line: 0, msg: "empty input".into() })?;
    let n: usize = first.parse().map_err(|_| GeoError::Parse {
        line: ln,
        msg: format!("expected vertex count, found {first:?}"),
    })?;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or(GeoError::Parse {
            line: 0,
            msg: format!("expected {n} vertices, found {}", pts.len()),
        })?;
        let mut it = l.split_whitespace();
        let mut coord = || -> Result<f64> {
            let tok = it.next().ok_or(GeoError::Parse { line: ln, msg: "missing coordinate".into() })?;
            tok.parse::<f64>()
                .map_err(|_| GeoError::Parse { line: ln, msg: format!("bad number {tok:?}") })
        };
        let x = coord()?;
        let y = coord()?;
        if it.next().is_some() {
            return Err(GeoError::Parse { line: ln, msg: "trailing tokens".into() });
        }
        pts.push(Point::new(x, y));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(GeoError::Parse { line: ln, msg: "more vertices than declared".into() });
    }
    validate_polygon(pts)
}

/// Serialize in the text format accepted by [`parse_polygon`].
pub fn format_polygon(p: &SimplePolygon) -> String {
    let mut s = format!("{}\n", p.n());
    for v in p.vertices() {
        s.push_str(&format!("{} {}\n", v.x, v.y));
    }
    s
}

/// Fixture polygons used throughout tests and the CLI.
pub mod fixtures {
    use super::*;

    pub fn square() -> SimplePolygon {
        validate_polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ])
        .unwrap()
    }

    pub fn lshape() -> SimplePolygon {
        validate_polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 2.0),
            Point::new(1.0, 2.0),
            Point::new(1.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(2.0, 0.0),
        ])
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn ccw_input_is_reversed() {
        let ccw = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let p = validate_polygon(ccw.clone()).unwrap();
        assert!(signed_area(p.vertices()) < 0.0);
        let mut a: Vec<_> = p.vertices().iter().map(|q| (q.x as i64, q.y as i64)).collect();
        let mut b: Vec<_> = ccw.iter().map(|q| (q.x as i64, q.y as i64)).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(p, square());
    }

    #[test]
    fn bow_tie_rejected() {
        let r = validate_polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ]);
        assert!(matches!(r, Err(GeoError::SelfIntersecting(_, _))));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert_eq!(
            validate_polygon(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]),
            Err(GeoError::TooFewVertices(2))
        );
        let r = validate_polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ]);
        assert!(matches!(r, Err(GeoError::DegenerateEdge(_))));
        let r = validate_polygon(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)]);
        assert!(r.is_err());
        // Edge folding back onto its neighbour.
        let r = validate_polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn lshape_accepted() {
        let l = lshape();
        assert_eq!(l.n(), 6);
        assert!((l.area() - 3.0).abs() < 1e-12);
        assert!(l.is_reflex(3));
        assert_eq!((0..6).filter(|&k| l.is_reflex(k)).count(), 1);
    }

    #[test]
    fn point_location_examples() {
        let s = square();
        assert_eq!(s.locate(Point::new(0.5, 0.5)), Containment::Inside);
        assert_eq!(s.locate(Point::new(0.0, 0.5)), Containment::Boundary);
        assert_eq!(lshape().locate(Point::new(1.5, 1.5)), Containment::Outside);
    }

    #[test]
    fn chain_examples() {
        let s = square();
        let c = s.chain(BoundaryCoord::new(0, 0.5), BoundaryCoord::new(2, 0.5));
        assert_eq!(c.vertex_indices, vec![1, 2]);
        let c = s.chain(BoundaryCoord::new(1, 0.25), BoundaryCoord::new(1, 0.25));
        assert!(c.vertex_indices.is_empty());
        let l = lshape();
        let c = l.chain(BoundaryCoord::vertex(0), BoundaryCoord::vertex(3));
        assert_eq!(c.vertex_indices, vec![0, 1, 2, 3]);
        // Wrapping past v_0.
        let c = l.chain(BoundaryCoord::new(4, 0.5), BoundaryCoord::new(1, 0.5));
        assert_eq!(c.vertex_indices, vec![5, 0, 1]);
        // Same edge, forward: no vertices.
        let c = l.chain(BoundaryCoord::new(2, 0.2), BoundaryCoord::new(2, 0.7));
        assert!(c.vertex_indices.is_empty());
        // Same edge, backward: full loop.
        let c = l.chain(BoundaryCoord::new(2, 0.7), BoundaryCoord::new(2, 0.2));
        assert_eq!(c.vertex_indices, vec![3, 4, 5, 0, 1, 2]);
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let text = "# comment\n4\n0 0\n1 0\n1 1\n0 1\n";
        let p = parse_polygon(text).unwrap();
        assert_eq!(p, square());
        assert_eq!(parse_polygon(&format_polygon(&p)).unwrap(), p);
        assert!(matches!(parse_polygon("3\n0 0\n1 x\n0 1\n"), Err(GeoError::Parse { line: 3, .. })));
        assert!(matches!(parse_polygon("4\n0 0\n1 0\n"), Err(GeoError::Parse { .. })));
        assert!(parse_polygon("").is_err());
    }

    #[test]
    fn boundary_coord_canonical() {
        let n = 4;
        let c = BoundaryCoord::new(1, 1.0).canonical(n);
        assert_eq!(c, BoundaryCoord::new(2, 0.0));
        assert_eq!(BoundaryCoord::from_position(3.5, n), BoundaryCoord::new(3, 0.5));
        assert_eq!(BoundaryCoord::from_position(4.0, n), BoundaryCoord::new(0, 0.0));
    }
}
