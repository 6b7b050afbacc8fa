//! Farthest-point geodesic Voronoi structure of a vertex set.
//!
//! Each triangle of the triangulation is subdivided adaptively. A piece is
//! accepted as a refined cell once its corners agree on the farthest site
//! and that site's anchor, and a distance bound certifies the site on the
//! whole piece: every distance field is convex inside a triangle, so the
//! corner maximum bounds it from above, while the winner is bounded from
//! below by its Euclidean distance to the piece. Pieces still undecided at
//! the depth limit straddle the skeleton; queries there fall back to direct
//! evaluation. Diagram vertices are refined by Newton's method from those
//! pieces, and boundary vertices by bisection along the edges.

use crate::geodesic::{Anchor, Geodesy, ShortestPathMap};
use crate::geom::{point_segment_distance, Point};

const MAX_DEPTH: u32 = 7;
const MIN_DEPTH: u32 = 1;

/// A piece of the polygon with one farthest site and one anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedCell {
    pub site: usize,
    /// Last vertex of the path from the site (the site itself when direct).
    pub anchor: usize,
    pub triangle: usize,
    pub region: [Point; 3],
}

/// A point where the farthest site changes, with the common distance.
#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiVertex {
    pub point: Point,
    /// Sites at the maximal distance, ascending.
    pub sites: Vec<usize>,
    pub distance: f64,
    pub on_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct FarthestVoronoi {
    pub sites: Vec<usize>,
    pub cells: Vec<RefinedCell>,
    /// Undecided pieces along the skeleton.
    pub frontier: Vec<(usize, [Point; 3])>,
    pub vertices: Vec<VoronoiVertex>,
}

#[derive(Clone, Copy)]
struct Eval {
    site: usize,
    anchor: usize,
    dist: f64,
}

struct Builder<'a> {
    geo: &'a Geodesy,
    sites: &'a [usize],
    maps: Vec<&'a ShortestPathMap>,
    scale: f64,
}

impl Builder<'_> {
    fn anchors(&self, t: usize, q: Point) -> Vec<Anchor> {
        self.maps.iter().map(|m| m.anchor_in(self.geo, t, q)).collect()
    }

    fn label(&self, anchors: &[Anchor], q: Point) -> Eval {
        let mut best = Eval { site: usize::MAX, anchor: 0, dist: f64::NEG_INFINITY };
        for (k, a) in anchors.iter().enumerate() {
            let d = a.distance(q);
            if d > best.dist {
                let anchor = if a.id == self.geo.n() { self.sites[k] } else { a.id };
                best = Eval { site: k, anchor, dist: d };
            }
        }
        best
    }

    fn certified(&self, tri: [Point; 3], corners: &[Vec<Anchor>; 3], e: Eval) -> bool {
        let win = corners[0][e.site];
        let lower = win.offset + dist_to_triangle(win.pos, tri);
        (0..self.maps.len()).all(|k| {
            k == e.site || (0..3).map(|c| corners[c][k].distance(tri[c])).fold(f64::NEG_INFINITY, f64::max) <= lower
        })
    }

    fn subdivide(&self, t: usize, tri: [Point; 3], corners: [Vec<Anchor>; 3], depth: u32, out: &mut FarthestVoronoi) {
        let labels: Vec<Eval> = (0..3).map(|c| self.label(&corners[c], tri[c])).collect();
        let same = labels.iter().all(|l| l.site == labels[0].site && l.anchor == labels[0].anchor);
        if depth >= MIN_DEPTH && same && self.certified(tri, &corners, labels[0]) {
            out.cells.push(RefinedCell { site: self.sites[labels[0].site], anchor: labels[0].anchor, triangle: t, region: tri });
            return;
        }
        if depth >= MAX_DEPTH {
            out.frontier.push((t, tri));
            return;
        }
        let m = [tri[0].midpoint(tri[1]), tri[1].midpoint(tri[2]), tri[2].midpoint(tri[0])];
        let am: Vec<Vec<Anchor>> = m.iter().map(|&q| self.anchors(t, q)).collect();
        let [c0, c1, c2] = corners;
        self.subdivide(t, [tri[0], m[0], m[2]], [c0, am[0].clone(), am[2].clone()], depth + 1, out);
        self.subdivide(t, [m[0], tri[1], m[1]], [am[0].clone(), c1, am[1].clone()], depth + 1, out);
        self.subdivide(t, [m[2], m[1], tri[2]], [am[2].clone(), am[1].clone(), c2], depth + 1, out);
        let [a0, a1, a2]: [Vec<Anchor>; 3] = am.try_into().unwrap();
        self.subdivide(t, [m[0], m[1], m[2]], [a0, a1, a2], depth + 1, out);
    }

    fn dists(&self, q: Point) -> Option<Vec<f64>> {
        let t = self.geo.locate_triangle(q)?;
        Some(self.maps.iter().map(|m| m.anchor_in(self.geo, t, q).distance(q)).collect())
    }

    /// Newton iteration for the point equidistant from three sites.
    fn tie3(&self, s: [usize; 3], start: Point) -> Option<Point> {
        let mut p = start;
        for _ in 0..40 {
            let t = self.geo.locate_triangle(p)?;
            let a: Vec<Anchor> = s.iter().map(|&k| self.maps[k].anchor_in(self.geo, t, p)).collect();
            let f = [a[0].distance(p) - a[1].distance(p), a[0].distance(p) - a[2].distance(p)];
            if f[0].abs().max(f[1].abs()) <= 1e-13 * self.scale {
                return Some(p);
            }
            let u: Vec<Point> = a.iter().map(|x| (p - x.pos).unit()).collect();
            let j0 = u[0] - u[1];
            let j1 = u[0] - u[2];
            let det = j0.cross(j1);
            if det.abs() < 1e-14 {
                return None;
            }
            let dx = (f[0] * j1.y - f[1] * j0.y) / det;
            let dy = (j0.x * f[1] - j1.x * f[0]) / det;
            p = p - Point::new(dx, dy);
        }
        None
    }

    fn push_vertex(&self, out: &mut FarthestVoronoi, p: Point, on_boundary: bool) {
        let Some(d) = self.dists(p) else { return };
        let top = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-9 * self.scale.max(1.0);
        let mut sites: Vec<usize> = (0..d.len()).filter(|&k| d[k] >= top - tol).map(|k| self.sites[k]).collect();
        sites.sort_unstable();
        if sites.len() < 2 {
            return;
        }
        if out.vertices.iter().any(|v| v.point.dist(p) <= 1e-9 * self.scale) {
            return;
        }
        out.vertices.push(VoronoiVertex { point: p, sites, distance: top, on_boundary });
    }
}

fn dist_to_triangle(q: Point, t: [Point; 3]) -> f64 {
    let inside = {
        let s = [(t[1] - t[0]).cross(q - t[0]), (t[2] - t[1]).cross(q - t[1]), (t[0] - t[2]).cross(q - t[2])];
        s.iter().all(|&v| v >= 0.0) || s.iter().all(|&v| v <= 0.0)
    };
    if inside {
        return 0.0;
    }
    (0..3).map(|k| point_segment_distance(q, t[k], t[(k + 1) % 3]).0).fold(f64::INFINITY, f64::min)
}

impl FarthestVoronoi {
    /// Farthest site of `q` (lowest index on ties) and its distance.
    pub fn farthest(&self, geo: &Geodesy, q: Point) -> Option<(usize, f64)> {
        let t = geo.locate_triangle(q)?;
        let mut best: Option<(usize, f64)> = None;
        for &s in &self.sites {
            let d = geo.vertex_map(s).anchor_in(geo, t, q).distance(q);
            if best.map_or(true, |(bs, bd)| d > bd || (d == bd && s < bs)) {
                best = Some((s, d));
            }
        }
        best
    }

    /// Site of the refined cell containing `q`, resolved directly on the
    /// skeleton frontier.
    pub fn site_at(&self, geo: &Geodesy, q: Point) -> Option<usize> {
        let t = geo.locate_triangle(q)?;
        for c in self.cells.iter().filter(|c| c.triangle == t) {
            if dist_to_triangle(q, c.region) == 0.0 {
                return Some(c.site);
            }
        }
        self.farthest(geo, q).map(|x| x.0)
    }

    /// Distances attached to diagram vertices, sorted and deduplicated.
    pub fn vertex_distances(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.vertices.iter().map(|v| v.distance).collect();
        d.sort_by(f64::total_cmp);
        d.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs().max(1.0));
        d
    }
}

/// Farthest-point geodesic Voronoi structure of the vertices `sites`.
pub fn farthest_voronoi(geo: &Geodesy, sites: &[usize]) -> FarthestVoronoi {
    let n = geo.n();
    let sites: Vec<usize> = sites.iter().map(|&s| s % n).collect();
    let maps: Vec<&ShortestPathMap> = sites.iter().map(|&s| geo.vertex_map(s)).collect();
    let scale = geo.polygon().diameter_bound();
    let b = Builder { geo, sites: &sites, maps, scale };
    let mut out = FarthestVoronoi { sites: sites.clone(), cells: Vec::new(), frontier: Vec::new(), vertices: Vec::new() };
    if sites.is_empty() {
        return out;
    }
    let poly = geo.polygon();
    let tris = geo.triangulation();
    for t in 0..tris.len() {
        let tri = tris.corners(poly, t);
        let corners = tri.map(|q| b.anchors(t, q));
        b.subdivide(t, tri, corners, 0, &mut out);
    }
    if sites.len() < 2 {
        return out;
    }
    // Interior vertices: three-way ties near the frontier.
    let frontier = out.frontier.clone();
    for (t, tri) in &frontier {
        let mut labels: Vec<usize> = Vec::new();
        let centroid = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
        for q in tri.iter().chain(std::iter::once(&centroid)) {
            let e = b.label(&b.anchors(*t, *q), *q);
            if !labels.contains(&e.site) {
                labels.push(e.site);
            }
        }
        if labels.len() < 3 {
            continue;
        }
        labels.sort_unstable();
        let size = tri[0].dist(tri[1]).max(tri[1].dist(tri[2])).max(tri[2].dist(tri[0]));
        for x in 0..labels.len() {
            for y in x + 1..labels.len() {
                for z in y + 1..labels.len() {
                    if let Some(p) = b.tie3([labels[x], labels[y], labels[z]], centroid) {
                        if p.dist(centroid) <= 4.0 * size && poly.contains(p) {
                            b.push_vertex(&mut out, p, false);
                        }
                    }
                }
            }
        }
    }
    // Boundary vertices: farthest-site changes along each edge.
    let samples = 128;
    for e in 0..n {
        let (a, c) = poly.edge(e);
        let site_at = |s: f64| {
            let q = a.lerp(c, s);
            b.dists(q).map(|d| {
                let mut k = 0;
                for i in 1..d.len() {
                    if d[i] > d[k] {
                        k = i;
                    }
                }
                k
            })
        };
        let mut prev = site_at(0.0);
        for k in 1..=samples {
            let s1 = k as f64 / samples as f64;
            let cur = site_at(s1);
            if cur != prev {
                let (mut lo, mut hi) = ((k - 1) as f64 / samples as f64, s1);
                for _ in 0..60 {
                    let m = 0.5 * (lo + hi);
                    if site_at(m) == prev {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                b.push_vertex(&mut out, a.lerp(c, 0.5 * (lo + hi)), true);
            }
            prev = cur;
        }
    }
    out.vertices.sort_by(|u, v| u.point.x.total_cmp(&v.point.x).then(u.point.y.total_cmp(&v.point.y)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn square_cells_meet_at_center() {
        let g = Geodesy::new(square());
        let v = farthest_voronoi(&g, &[0, 1, 2, 3]);
        let mut sites: Vec<usize> = v.cells.iter().map(|c| c.site).collect();
        sites.sort_unstable();
        sites.dedup();
        assert_eq!(sites, vec![0, 1, 2, 3]);
        let center = v.vertices.iter().find(|x| x.point.dist(Point::new(0.5, 0.5)) < 1e-9).expect("center vertex");
        assert!(center.sites.len() >= 3);
        assert!((center.distance - 0.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn lshape_reflex_vertex_is_a_tie() {
        let g = Geodesy::new(lshape());
        let v = farthest_voronoi(&g, &(0..6).collect::<Vec<_>>());
        assert!(v.vertex_distances().iter().any(|d| (d - 2f64.sqrt()).abs() < 1e-9), "{:?}", v.vertices);
    }

    #[test]
    fn cells_match_brute_force() {
        let g = Geodesy::new(lshape());
        let v = farthest_voronoi(&g, &[0, 1, 2, 4, 5]);
        for q in crate::oracle::random_interior_points(g.polygon(), 1000, 3) {
            let (s, _) = v.farthest(&g, q).unwrap();
            assert_eq!(v.site_at(&g, q), Some(s));
        }
    }
}
