//! Geodesic disks, bisecting curves and intersections of equal-radius
//! geodesic disks centered at polygon vertices.
//!
//! Inside one shortest-path-map cell the distance to the root is
//! `offset + |q - apex|`, so a level set of the distance is a circle arc
//! clipped to a convex cell. Disk boundaries are assembled from those arcs
//! and from the sub-intervals of polygon edges within reach.

use crate::error::{GeoError, Result};
use crate::geodesic::{Geodesy, ProfilePiece, ShortestPathMap};
use crate::geom::{signed_area, Point};
use crate::numeric::bracket_root;
use crate::onecenter::enclose_sites;
use crate::polygon::{BoundaryCoord, Containment};
use std::f64::consts::{PI, TAU};

/// A closed subset of the circle of directions, as sorted disjoint
/// intervals of `[0, 2π]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AngleSet {
    ivs: Vec<(f64, f64)>,
}

impl AngleSet {
    pub fn empty() -> Self {
        AngleSet { ivs: Vec::new() }
    }

    pub fn full() -> Self {
        AngleSet { ivs: vec![(0.0, TAU)] }
    }

    /// Counterclockwise interval of length `len` starting at `start`.
    pub fn arc(start: f64, len: f64) -> Self {
        if len >= TAU {
            return Self::full();
        }
        if len.is_nan() || len < 0.0 {
            return Self::empty();
        }
        let s = start.rem_euclid(TAU);
        let e = s + len;
        if e <= TAU {
            AngleSet { ivs: vec![(s, e)] }
        } else {
            AngleSet { ivs: vec![(0.0, e - TAU), (s, TAU)] }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.ivs.iter().map(|(a, b)| b - a).sum()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.ivs
    }

    pub fn intersect(&self, o: &AngleSet) -> AngleSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ivs.len() && j < o.ivs.len() {
            let (a0, a1) = self.ivs[i];
            let (b0, b1) = o.ivs[j];
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if hi > lo {
                out.push((lo, hi));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        AngleSet { ivs: out }
    }

    pub fn union(&self, o: &AngleSet) -> AngleSet {
        let mut all: Vec<(f64, f64)> = self.ivs.iter().chain(o.ivs.iter()).copied().collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(all.len());
        for (a, b) in all {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        AngleSet { ivs: out }
    }

    /// Maximal arcs `(lo, hi)` with `lo < hi`; an arc through angle zero is
    /// reported once with `hi > 2π`.
    pub fn arcs(&self) -> Vec<(f64, f64)> {
        let mut v = self.ivs.clone();
        if v.len() >= 2 && v[0].0 <= 0.0 && v[v.len() - 1].1 >= TAU {
            let first = v.remove(0);
            let last = v.last_mut().unwrap();
            last.1 = TAU + first.1;
        }
        v
    }
}

/// Directions `θ` with `c + ρ (cos θ, sin θ)` in the convex polygon `poly`.
pub fn circle_in_convex(c: Point, rho: f64, poly: &[Point]) -> AngleSet {
    let m = poly.len();
    if m < 3 || rho <= 0.0 {
        return AngleSet::empty();
    }
    let sgn = if signed_area(poly) >= 0.0 { 1.0 } else { -1.0 };
    let mut set = AngleSet::full();
    for k in 0..m {
        let p = poly[k];
        let d = poly[(k + 1) % m] - p;
        let len = d.norm();
        if len == 0.0 {
            continue;
        }
        // Inside means sgn * cross(d, z - p) >= 0, i.e. sgn * sin(θ - φ) >= -h / ρ.
        let h = sgn * d.cross(c - p) / len;
        let k_ = -h / rho;
        if k_ <= -1.0 {
            continue;
        }
        if k_ > 1.0 {
            return AngleSet::empty();
        }
        let a = k_.asin();
        let phi = d.angle();
        let base = if sgn > 0.0 { phi + a } else { phi + PI + a };
        set = set.intersect(&AngleSet::arc(base, PI - 2.0 * a));
        if set.is_empty() {
            break;
        }
    }
    set
}

/// Directions `θ` with `c + ρ (cos θ, sin θ)` within Euclidean distance
/// `rho2` of `c2`.
pub fn circle_in_disk(c: Point, rho: f64, c2: Point, rho2: f64) -> AngleSet {
    if rho2 < 0.0 || rho <= 0.0 {
        return AngleSet::empty();
    }
    let v = c2 - c;
    let delta = v.norm();
    if delta == 0.0 {
        return if rho <= rho2 { AngleSet::full() } else { AngleSet::empty() };
    }
    let k = (rho * rho + delta * delta - rho2 * rho2) / (2.0 * rho * delta);
    if k <= -1.0 {
        return AngleSet::full();
    }
    if k > 1.0 {
        return AngleSet::empty();
    }
    let a = k.acos();
    AngleSet::arc(v.angle() - a, 2.0 * a)
}

/// Geometry of one boundary arc.
#[derive(Debug, Clone, PartialEq)]
pub enum ArcGeom {
    /// Circle arc traversed clockwise: the angle falls from `from` to `to`.
    Circle { center: Point, radius: f64, from: f64, to: f64 },
    /// Piece of edge `edge` between parameters `t0 <= t1`.
    Edge { edge: usize, t0: f64, t1: f64 },
}

/// One arc of a clockwise boundary cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryArc {
    pub geom: ArcGeom,
    /// Vertex whose disk contributes a circular arc (intersections only).
    pub site: Option<usize>,
    /// Vertex at the circle center; `None` when it is the disk center itself.
    pub anchor: Option<usize>,
    pub start: Point,
    pub end: Point,
    /// Triangles crossed by a circular arc, as `(triangle, from, to)`.
    pub spans: Vec<(usize, f64, f64)>,
}

impl BoundaryArc {
    fn circle(center: Point, radius: f64, from: f64, to: f64, tri: usize) -> BoundaryArc {
        BoundaryArc {
            geom: ArcGeom::Circle { center, radius, from, to },
            site: None,
            anchor: None,
            start: center + Point::from_angle(from) * radius,
            end: center + Point::from_angle(to) * radius,
            spans: vec![(tri, from, to)],
        }
    }

    fn edge(geo: &Geodesy, edge: usize, t0: f64, t1: f64) -> BoundaryArc {
        let (a, b) = geo.polygon().edge(edge);
        BoundaryArc {
            geom: ArcGeom::Edge { edge, t0, t1 },
            site: None,
            anchor: None,
            start: a.lerp(b, t0),
            end: a.lerp(b, t1),
            spans: Vec::new(),
        }
    }

    pub fn is_circular(&self) -> bool {
        matches!(self.geom, ArcGeom::Circle { .. })
    }

    pub fn length(&self) -> f64 {
        match self.geom {
            ArcGeom::Circle { radius, from, to, .. } => radius * (from - to),
            ArcGeom::Edge { .. } => self.start.dist(self.end),
        }
    }

    /// Point at fraction `s` of the way from `start` to `end`.
    pub fn point_at(&self, s: f64) -> Point {
        match self.geom {
            ArcGeom::Circle { center, radius, from, to } => center + Point::from_angle(from + (to - from) * s) * radius,
            ArcGeom::Edge { .. } => self.start.lerp(self.end, s),
        }
    }
}

/// Geodesic disk `D_r(c)` with its clockwise boundary.
#[derive(Debug, Clone)]
pub struct GeodesicDisk {
    pub center: Point,
    pub radius: f64,
    pub arcs: Vec<BoundaryArc>,
    map: ShortestPathMap,
}

impl GeodesicDisk {
    /// Membership through the arc of the cell containing `q`.
    pub fn contains(&self, geo: &Geodesy, q: Point) -> bool {
        match self.map.anchor(geo, q) {
            Some(a) => a.pos.dist(q) <= self.radius - a.offset + 1e-12 * self.radius.max(1.0),
            None => false,
        }
    }

    pub fn circular_arcs(&self) -> impl Iterator<Item = &BoundaryArc> {
        self.arcs.iter().filter(|a| a.is_circular())
    }
}

/// Parameters of edge `a -> b` within distance `r` under the given profile.
/// Distance is convex along a segment, so the set is one interval.
pub fn edge_sublevel(pieces: &[ProfilePiece], a: Point, b: Point, r: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in pieces {
        if let Some((s, e)) = segment_in_disk(a, b, p.apex_pos, r - p.offset) {
            let s = s.max(p.t0);
            let e = e.min(p.t1);
            if e >= s {
                lo = lo.min(s);
                hi = hi.max(e);
            }
        }
    }
    (hi >= lo).then_some((lo, hi))
}

/// Parameters `t` of `a + t (b - a)` with `|· - c| <= rho`, unclamped.
pub fn segment_in_disk(a: Point, b: Point, c: Point, rho: f64) -> Option<(f64, f64)> {
    if rho < 0.0 {
        return None;
    }
    let d = b - a;
    let w = a - c;
    let dd = d.norm2();
    if dd == 0.0 {
        return (w.norm() <= rho).then_some((0.0, 1.0));
    }
    let wd = w.dot(d);
    let disc = wd * wd - dd * (w.norm2() - rho * rho);
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((-wd - s) / dd, (-wd + s) / dd))
}

fn scale_of(geo: &Geodesy) -> f64 {
    geo.polygon().diameter_bound().max(1e-300)
}

/// Order boundary pieces into one clockwise cycle and merge neighbours that
/// continue the same circle or edge.
fn assemble(pieces: Vec<BoundaryArc>, scale: f64) -> Vec<BoundaryArc> {
    if pieces.is_empty() {
        return pieces;
    }
    let m = pieces.len();
    let mut used = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let mut cur = 0;
    used[0] = true;
    order.push(0);
    for _ in 1..m {
        let end = pieces[cur].end;
        let mut best = usize::MAX;
        let mut bd = f64::INFINITY;
        for (k, p) in pieces.iter().enumerate() {
            if !used[k] {
                let d = p.start.dist(end);
                if d < bd {
                    bd = d;
                    best = k;
                }
            }
        }
        used[best] = true;
        order.push(best);
        cur = best;
    }
    let tol = 1e-9 * scale;
    let mut out: Vec<BoundaryArc> = Vec::with_capacity(m);
    for k in order {
        let p = pieces[k].clone();
        if let Some(last) = out.last_mut() {
            if try_merge(last, &p, tol) {
                continue;
            }
        }
        out.push(p);
    }
    if out.len() > 1 {
        let first = out[0].clone();
        let last = out.last_mut().unwrap();
        if try_merge(last, &first, tol) {
            let merged = out.pop().unwrap();
            out[0] = merged;
        }
    }
    if out.len() > 1 {
        out.retain(|a| a.length() > 1e-12 * scale);
    }
    out
}

fn try_merge(a: &mut BoundaryArc, b: &BoundaryArc, tol: f64) -> bool {
    if a.site != b.site || a.anchor != b.anchor || a.end.dist(b.start) > tol {
        return false;
    }
    match (&mut a.geom, &b.geom) {
        (
            ArcGeom::Circle { center, radius, to, from },
            ArcGeom::Circle { center: c2, radius: r2, from: f2, to: t2 },
        ) if center == c2 && (*radius - r2).abs() <= tol => {
            // Continue clockwise: shift b's angles to start where a ends.
            let shift = ((*to - f2) / TAU).round() * TAU;
            let new_to = t2 + shift;
            if *from - new_to > TAU + 1e-9 {
                return false;
            }
            *to = new_to;
            a.end = b.end;
            a.spans.extend(b.spans.iter().map(|&(t, x, y)| (t, x + shift, y + shift)));
            true
        }
        (ArcGeom::Edge { edge, t1, .. }, ArcGeom::Edge { edge: e2, t1: u1, .. }) if edge == e2 => {
            *t1 = *u1;
            a.end = b.end;
            true
        }
        _ => false,
    }
}

/// Geodesic disk of radius `r` around `c`.
pub fn geodesic_disk(geo: &Geodesy, c: Point, r: f64) -> Result<GeodesicDisk> {
    if !(r >= 0.0) {
        return Err(GeoError::NegativeRadius(r));
    }
    geo.check_inside(c)?;
    let map = geo.point_map(c)?;
    let n = geo.n();
    let scale = scale_of(geo);
    let mut pieces = Vec::new();
    for cell in map.cells() {
        let rho = r - cell.offset;
        if rho <= 1e-15 * scale {
            continue;
        }
        for (lo, hi) in circle_in_convex(cell.apex_pos, rho, &cell.region).arcs() {
            let mut arc = BoundaryArc::circle(cell.apex_pos, rho, hi, lo, cell.triangle);
            arc.anchor = (cell.apex != map.root_id()).then_some(cell.apex);
            pieces.push(arc);
        }
    }
    for e in 0..n {
        let (a, b) = geo.polygon().edge(e);
        if let Some((t0, t1)) = edge_sublevel(map.edge_profile(e), a, b, r) {
            if t1 > t0 {
                pieces.push(BoundaryArc::edge(geo, e, t0, t1));
            }
        }
    }
    let arcs = assemble(pieces, scale);
    Ok(GeodesicDisk { center: c, radius: r, arcs, map })
}

/// Intersection of the radius-`r` geodesic disks around a set of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskIntersection {
    pub radius: f64,
    pub sites: Vec<usize>,
    /// Clockwise boundary cycle; empty when the intersection is empty or a
    /// single point.
    pub arcs: Vec<BoundaryArc>,
    pub empty: bool,
    /// Set when the intersection degenerates to one point.
    pub point: Option<Point>,
}

impl DiskIntersection {
    pub fn circular_arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_circular()).count()
    }

    /// True when the circular arcs of every site form one run in the cyclic
    /// order (boundary pieces do not break a run).
    pub fn site_runs_contiguous(&self) -> bool {
        let mut runs: Vec<usize> = Vec::new();
        for a in self.arcs.iter().filter(|a| a.is_circular()) {
            let s = a.site.unwrap_or(usize::MAX);
            if runs.last() != Some(&s) {
                runs.push(s);
            }
        }
        if runs.len() > 1 && runs.first() == runs.last() {
            runs.pop();
        }
        let mut seen = runs.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == runs.len()
    }

    /// A point of the intersection: an arc endpoint or the degenerate point.
    pub fn some_point(&self) -> Option<Point> {
        self.point.or_else(|| self.arcs.first().map(|a| a.start))
    }
}

/// `∩ D_r(v_s)` over `sites`, with circular arcs tagged by site and anchor.
pub fn disks_intersection(geo: &Geodesy, sites: &[usize], r: f64) -> DiskIntersection {
    let n = geo.n();
    let scale = scale_of(geo);
    let sites: Vec<usize> = sites.iter().map(|&s| s % n).collect();
    let mut out = DiskIntersection { radius: r, sites: sites.clone(), arcs: Vec::new(), empty: false, point: None };
    if sites.is_empty() {
        out.arcs = assemble((0..n).map(|e| BoundaryArc::edge(geo, e, 0.0, 1.0)).collect(), scale);
        return out;
    }
    let maps: Vec<&ShortestPathMap> = sites.iter().map(|&s| geo.vertex_map(s)).collect();
    let enc = enclose_sites(geo, &maps);
    let tol = 1e-12 * scale.max(1.0);
    if enc.radius > r + tol {
        out.empty = true;
        return out;
    }
    if enc.radius >= r - tol {
        out.point = Some(enc.center);
        return out;
    }
    let mut pieces = Vec::new();
    for (si, &s) in sites.iter().enumerate() {
        let ms = maps[si];
        for cell in ms.cells() {
            let rho = r - cell.offset;
            if rho <= 1e-15 * scale {
                continue;
            }
            let mut set = circle_in_convex(cell.apex_pos, rho, &cell.region);
            for (ti, mt) in maps.iter().enumerate() {
                if set.is_empty() {
                    break;
                }
                if ti == si {
                    continue;
                }
                let mut allowed = AngleSet::empty();
                for tc in mt.cells_in_triangle(cell.triangle) {
                    let rho2 = r - tc.offset;
                    if rho2 < 0.0 {
                        continue;
                    }
                    let inside = circle_in_convex(cell.apex_pos, rho, &tc.region);
                    if inside.is_empty() {
                        continue;
                    }
                    let whole = tc.region.iter().all(|q| q.dist(tc.apex_pos) <= rho2);
                    let part = if whole { inside } else { inside.intersect(&circle_in_disk(cell.apex_pos, rho, tc.apex_pos, rho2)) };
                    allowed = allowed.union(&part);
                }
                set = set.intersect(&allowed);
            }
            for (lo, hi) in set.arcs() {
                let mut arc = BoundaryArc::circle(cell.apex_pos, rho, hi, lo, cell.triangle);
                arc.site = Some(s);
                arc.anchor = Some(if cell.apex == ms.root_id() { s } else { cell.apex });
                pieces.push(arc);
            }
        }
    }
    for e in 0..n {
        let (a, b) = geo.polygon().edge(e);
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for m in &maps {
            match edge_sublevel(m.edge_profile(e), a, b, r) {
                Some((s, t)) => {
                    lo = lo.max(s);
                    hi = hi.min(t);
                }
                None => {
                    hi = -1.0;
                }
            }
            if hi <= lo {
                break;
            }
        }
        if hi > lo {
            pieces.push(BoundaryArc::edge(geo, e, lo, hi));
        }
    }
    if pieces.is_empty() {
        out.point = Some(enc.center);
        return out;
    }
    out.arcs = assemble(pieces, scale);
    out
}

/// The part of the bisector of `x` and `y` that crosses `π(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BisectingCurve {
    pub points: Vec<Point>,
    /// Boundary coordinates of the two ends; `None` when the trace stopped
    /// at a two-dimensional bisector region.
    pub start: Option<BoundaryCoord>,
    pub end: Option<BoundaryCoord>,
}

/// Trace the bisecting curve of `x` and `y` from the midpoint of `π(x, y)`
/// in both directions until it reaches the polygon boundary.
pub fn bisecting_curve(geo: &Geodesy, x: Point, y: Point) -> Result<BisectingCurve> {
    geo.check_inside(x)?;
    geo.check_inside(y)?;
    if x == y {
        return Err(GeoError::CoincidentPoints);
    }
    let mx = geo.point_map(x)?;
    let my = geo.point_map(y)?;
    let path = geo.shortest_path(x, y)?;
    let mid = path.midpoint();
    let scale = scale_of(geo);
    let tracer = Tracer { geo, mx: &mx, my: &my, scale };
    let g = tracer.grad(mid).ok_or(GeoError::CoincidentPoints)?;
    let dir = g.perp().unit();
    let (fwd, end) = tracer.trace(mid, dir);
    let (bwd, start) = tracer.trace(mid, dir * -1.0);
    let mut points: Vec<Point> = bwd.into_iter().rev().collect();
    points.push(mid);
    points.extend(fwd);
    Ok(BisectingCurve { points, start, end })
}

struct Tracer<'a> {
    geo: &'a Geodesy,
    mx: &'a ShortestPathMap,
    my: &'a ShortestPathMap,
    scale: f64,
}

impl Tracer<'_> {
    fn f(&self, p: Point) -> f64 {
        self.mx.distance(self.geo, p) - self.my.distance(self.geo, p)
    }

    fn grad(&self, p: Point) -> Option<Point> {
        let ax = self.mx.anchor(self.geo, p)?;
        let ay = self.my.anchor(self.geo, p)?;
        let g = (p - ax.pos).unit() - (p - ay.pos).unit();
        (g.norm() > 1e-9).then_some(g)
    }

    fn inside(&self, p: Point) -> bool {
        self.geo.polygon().locate_with_tol(p, 0.0) != Containment::Outside
    }

    /// Newton steps along the gradient back onto `f = 0`.
    fn correct(&self, mut p: Point) -> Option<Point> {
        for _ in 0..8 {
            let v = self.f(p);
            if v.abs() <= 1e-14 * self.scale {
                break;
            }
            let g = self.grad(p)?;
            let q = p - g * (v / g.norm2());
            if !self.inside(q) {
                return None;
            }
            p = q;
        }
        Some(p)
    }

    fn trace(&self, start: Point, dir0: Point) -> (Vec<Point>, Option<BoundaryCoord>) {
        let h = self.scale / 256.0;
        let mut pts = Vec::new();
        let mut p = start;
        let mut dir = dir0;
        for _ in 0..4096 {
            let Some(g) = self.grad(p) else {
                return (pts, None);
            };
            let mut t = g.perp().unit();
            if t.dot(dir) < 0.0 {
                t = t * -1.0;
            }
            dir = t;
            let q = p + t * h;
            let next = if self.inside(q) { self.correct(q) } else { None };
            match next {
                Some(q) => {
                    pts.push(q);
                    p = q;
                }
                None => {
                    let (b, coord) = self.finish(p, p + t * h);
                    pts.push(b);
                    return (pts, Some(coord));
                }
            }
        }
        (pts, None)
    }

    /// Boundary point of the bisector near the exit between inside `p` and
    /// outside (or uncorrectable) `q`.
    fn finish(&self, p: Point, q: Point) -> (Point, BoundaryCoord) {
        let poly = self.geo.polygon();
        let (mut a, mut b) = (0.0, 1.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if self.inside(p.lerp(q, m)) {
                a = m;
            } else {
                b = m;
            }
        }
        let hit = p.lerp(q, a);
        let (c, _) = poly.project_to_boundary(hit);
        let n = poly.n();
        let pos = c.position(n);
        let w = 4.0 * p.dist(q) / poly.perimeter() * n as f64;
        let g = |s: f64| self.f(poly.point_at(BoundaryCoord::from_position(s, n)));
        let (lo, hi) = (pos - w, pos + w);
        let (glo, ghi) = (g(lo), g(hi));
        let s = if glo.signum() != ghi.signum() { bracket_root(lo, hi, 1e-15, g) } else { pos };
        let coord = BoundaryCoord::from_position(s, n);
        (poly.point_at(coord), coord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn angle_sets_wrap() {
        let a = AngleSet::arc(-0.5, 1.0);
        assert_eq!(a.intervals().len(), 2);
        assert!((a.measure() - 1.0).abs() < 1e-15);
        let arcs = a.arcs();
        assert_eq!(arcs.len(), 1);
        assert!((arcs[0].1 - arcs[0].0 - 1.0).abs() < 1e-12);
        let b = AngleSet::arc(0.25, 1.0);
        assert!((a.intersect(&b).measure() - 0.25).abs() < 1e-12);
        assert!((a.union(&b).measure() - 1.75).abs() < 1e-12);
    }

    #[test]
    fn circle_clipped_by_square() {
        let sq = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        // Circle of radius 0.5 around (0.5, 0): the upper half lies inside.
        let s = circle_in_convex(p(0.5, 0.0), 0.5, &sq);
        assert!((s.measure() - PI).abs() < 1e-12);
        let d = circle_in_disk(p(0.0, 0.0), 1.0, p(1.0, 0.0), 1.0);
        assert!((d.measure() - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn square_small_disk_is_one_circle() {
        let g = Geodesy::new(square());
        let d = geodesic_disk(&g, p(0.5, 0.5), 0.4).unwrap();
        assert_eq!(d.arcs.len(), 1);
        assert!((d.arcs[0].length() - TAU * 0.4).abs() < 1e-12);
    }

    #[test]
    fn square_circumradius_disk_touches_corners() {
        let g = Geodesy::new(square());
        let d = geodesic_disk(&g, p(0.5, 0.5), 0.5f64.sqrt()).unwrap();
        let edges = d.arcs.iter().filter(|a| !a.is_circular()).count();
        assert_eq!(edges, 4);
        for v in g.polygon().vertices() {
            assert!(d.arcs.iter().any(|a| a.start.dist(*v) < 1e-9));
            assert!(d.contains(&g, *v));
        }
    }

    #[test]
    fn lshape_disk_bends_around_reflex_vertex() {
        let g = Geodesy::new(lshape());
        let c = p(1.75, 0.25);
        let d = geodesic_disk(&g, c, 1.2).unwrap();
        let rho = 1.2 - c.dist(p(1.0, 1.0));
        let arc = d.arcs.iter().find(|a| a.anchor == Some(3)).expect("arc around (1,1)");
        match arc.geom {
            ArcGeom::Circle { center, radius, .. } => {
                assert_eq!(center, p(1.0, 1.0));
                assert!((radius - rho).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
        for a in &d.arcs {
            for s in [0.0, 0.3, 0.7, 1.0] {
                let q = a.point_at(s);
                assert!((g.distance(c, q).unwrap() - 1.2).abs() < 1e-9 || !a.is_circular());
            }
        }
        assert_eq!(geodesic_disk(&g, c, -1.0).unwrap_err(), GeoError::NegativeRadius(-1.0));
        assert!(matches!(geodesic_disk(&g, p(1.5, 1.5), 1.0), Err(GeoError::PointOutside(..))));
    }

    #[test]
    fn boundary_cycle_closes() {
        let g = Geodesy::new(lshape());
        for r in [0.3, 0.9, 1.5, 2.5, 4.0] {
            let d = geodesic_disk(&g, p(0.4, 1.3), r).unwrap();
            let m = d.arcs.len();
            for k in 0..m {
                assert!(d.arcs[k].end.dist(d.arcs[(k + 1) % m].start) < 1e-9, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn square_intersection_examples() {
        let g = Geodesy::new(square());
        let all = [0, 1, 2, 3];
        let pt = disks_intersection(&g, &all, 0.5f64.sqrt());
        assert!(pt.point.unwrap().dist(p(0.5, 0.5)) < 1e-9);
        let lens = disks_intersection(&g, &all, 0.8);
        assert!(!lens.empty && lens.point.is_none());
        assert_eq!(lens.circular_arc_count(), 4);
        assert!(lens.arcs.iter().all(|a| a.is_circular()));
        assert!(lens.site_runs_contiguous());
        assert!(disks_intersection(&g, &all, 0.6).empty);
        let whole = disks_intersection(&g, &all, 1.5);
        assert_eq!(whole.circular_arc_count(), 0);
        assert_eq!(whole.arcs.len(), 4);
    }

    #[test]
    fn square_bisector_is_vertical() {
        let g = Geodesy::new(square());
        let b = bisecting_curve(&g, p(0.25, 0.5), p(0.75, 0.5)).unwrap();
        for q in &b.points {
            assert!((q.x - 0.5).abs() < 1e-9);
        }
        let ys: Vec<f64> = [b.start.unwrap(), b.end.unwrap()].iter().map(|c| g.polygon().point_at(*c).y).collect();
        assert!(ys.iter().any(|y| y.abs() < 1e-9) && ys.iter().any(|y| (y - 1.0).abs() < 1e-9));
        assert_eq!(bisecting_curve(&g, p(0.3, 0.3), p(0.3, 0.3)).unwrap_err(), GeoError::CoincidentPoints);
    }

    #[test]
    fn lshape_bisector_crosses_path_midpoint() {
        let g = Geodesy::new(lshape());
        let (x, y) = (p(0.5, 1.5), p(1.5, 0.5));
        let b = bisecting_curve(&g, x, y).unwrap();
        let mid = g.shortest_path(x, y).unwrap().midpoint();
        assert!(b.points.iter().any(|q| q.dist(mid) < 1e-12));
        for q in &b.points {
            assert!((g.distance(q.clone(), x).unwrap() - g.distance(*q, y).unwrap()).abs() <= 1e-7);
        }
        assert!(b.start.is_some() && b.end.is_some());
    }
}
