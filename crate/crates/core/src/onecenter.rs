//! Geodesic 1-center of a set of sites, of the polygon, and of the
//! restricted subpolygons `P(α, β)`.
//!
//! The minimum enclosing geodesic disk of a point set in a simple polygon is
//! an LP-type problem of combinatorial dimension 3, so Welzl's incremental
//! scheme applies once the three basis solvers are geodesic: a single site,
//! the midpoint of the geodesic between two sites, and the point equidistant
//! from three sites.

use crate::error::{GeoError, Result};
use crate::geodesic::{Anchor, Geodesy, ShortestPathMap};
use crate::geom::{Point, TAU_ON};
use crate::numeric::{golden_min, nelder_mead, pattern_search};
use crate::polygon::BoundaryCoord;
use crate::subpolygon::{chain_points, SubPolygon};
use std::borrow::Cow;
use std::sync::atomic::{AtomicUsize, Ordering};

static PROJECTIONS: AtomicUsize = AtomicUsize::new(0);
static FALLBACKS: AtomicUsize = AtomicUsize::new(0);

/// Number of restricted centers moved onto the closing path so far.
pub fn projection_count() -> usize {
    PROJECTIONS.load(Ordering::Relaxed)
}

/// Number of three-site bases solved by direct minimization instead of the
/// equidistance iteration.
pub fn fallback_count() -> usize {
    FALLBACKS.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneCenterResult {
    pub center: Point,
    pub radius: f64,
    /// Vertex indices of the basis sites.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedRadius {
    pub alpha: BoundaryCoord,
    pub beta: BoundaryCoord,
    pub radius: f64,
    pub center: Point,
    /// True when the unconstrained center was moved onto `π(α, β)`.
    pub projected: bool,
}

/// Smallest enclosing geodesic disk of a site set.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteDisk {
    pub center: Point,
    pub radius: f64,
    /// Indices into the site list.
    pub basis: Vec<usize>,
}

struct Solver<'a> {
    geo: &'a Geodesy,
    sites: &'a [&'a ShortestPathMap],
    tol: f64,
    scale: f64,
}

impl Solver<'_> {
    fn dist(&self, i: usize, c: Point) -> f64 {
        self.sites[i].distance(self.geo, c)
    }

    fn contains(&self, d: &SiteDisk, i: usize) -> bool {
        d.radius >= 0.0 && self.dist(i, d.center) <= d.radius + self.tol
    }

    fn welzl(&self, upto: usize, basis: &mut Vec<usize>) -> SiteDisk {
        let mut d = self.trivial(basis);
        if basis.len() == 3 {
            return d;
        }
        for i in 0..upto {
            if !self.contains(&d, i) {
                basis.push(i);
                d = self.welzl(i, basis);
                basis.pop();
            }
        }
        d
    }

    fn trivial(&self, basis: &[usize]) -> SiteDisk {
        match basis.len() {
            0 => SiteDisk { center: Point::new(0.0, 0.0), radius: -1.0, basis: vec![] },
            1 => SiteDisk { center: self.sites[basis[0]].root, radius: 0.0, basis: basis.to_vec() },
            2 => {
                let (a, b) = (basis[0], basis[1]);
                let center = self.midpoint(a, b);
                let radius = self.dist(a, center).max(self.dist(b, center));
                SiteDisk { center, radius, basis: basis.to_vec() }
            }
            _ => self.circumcenter([basis[0], basis[1], basis[2]]),
        }
    }

    fn midpoint(&self, a: usize, b: usize) -> Point {
        match self.sites[a].path_to(self.geo, self.sites[b].root) {
            Ok(p) => p.midpoint(),
            Err(_) => self.sites[a].root.midpoint(self.sites[b].root),
        }
    }

    fn max3(&self, s: [usize; 3], c: Point) -> f64 {
        s.iter().map(|&i| self.dist(i, c)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn circumcenter(&self, s: [usize; 3]) -> SiteDisk {
        let mut seeds = vec![self.midpoint(s[0], s[1]), self.midpoint(s[1], s[2]), self.midpoint(s[2], s[0])];
        let p: Vec<Point> = s.iter().map(|&i| self.sites[i].root).collect();
        if let Some(c) = euclid_circumcenter(p[0], p[1], p[2]) {
            if self.geo.polygon().contains(c) {
                seeds.insert(0, c);
            }
        }
        let mut best: Option<(Point, f64)> = None;
        for &seed in &seeds {
            if let Some((c, r)) = self.equidistant(s, seed) {
                if best.map_or(true, |(_, br)| r < br) {
                    best = Some((c, r));
                }
            }
        }
        let (center, radius) = match best {
            Some(b) => b,
            None => {
                FALLBACKS.fetch_add(1, Ordering::Relaxed);
                let start = seeds
                    .iter()
                    .copied()
                    .min_by(|a, b| self.max3(s, *a).total_cmp(&self.max3(s, *b)))
                    .expect("seeds are non-empty");
                let (c, _) = pattern_search(start, 0.05 * self.scale, 1e-9 * self.scale, 16, |c| self.max3(s, c));
                nelder_mead(c, 1e-6 * self.scale, 1e-14 * self.scale, |c| self.max3(s, c))
            }
        };
        SiteDisk { center, radius, basis: s.to_vec() }
    }

    /// Point equidistant from three sites, by repeated solves of the
    /// fixed-anchor system `|c - A_k| = R - D_k`.
    fn equidistant(&self, s: [usize; 3], seed: Point) -> Option<(Point, f64)> {
        let geo = self.geo;
        let tri = geo.triangulation();
        let poly = geo.polygon();
        let mut c = seed;
        for _ in 0..60 {
            let t = tri.locate(poly, c, TAU_ON)?;
            let an: Vec<Anchor> = s.iter().map(|&i| self.sites[i].anchor_in(geo, t, c)).collect();
            let cands = solve_offsets([an[0], an[1], an[2]]);
            let next = cands.into_iter().min_by(|a, b| a.0.dist(c).total_cmp(&b.0.dist(c)))?.0;
            let mut step = next - c;
            let mut moved = false;
            for _ in 0..40 {
                let cand = c + step;
                if tri.locate(poly, cand, TAU_ON).is_some() {
                    let done = step.norm() <= 1e-15 * self.scale;
                    c = cand;
                    moved = true;
                    if done {
                        return self.verify(s, c);
                    }
                    break;
                }
                step = step * 0.5;
            }
            if !moved {
                return None;
            }
        }
        self.verify(s, c)
    }

    fn verify(&self, s: [usize; 3], c: Point) -> Option<(Point, f64)> {
        let d: Vec<f64> = s.iter().map(|&i| self.dist(i, c)).collect();
        let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
        if hi - lo <= 1e-10 * self.scale.max(1.0) {
            Some((c, hi))
        } else {
            None
        }
    }
}

/// Candidate solutions `(c, R)` of `|c - A_k| = R - D_k`, `k = 1..3`.
fn solve_offsets(an: [Anchor; 3]) -> Vec<(Point, f64)> {
    let o = an[0].pos;
    let a2 = an[1].pos - o;
    let a3 = an[2].pos - o;
    let (d1, d2, d3) = (an[0].offset, an[1].offset, an[2].offset);
    let (m11, m12, m21, m22) = (2.0 * a2.x, 2.0 * a2.y, 2.0 * a3.x, 2.0 * a3.y);
    let det = m11 * m22 - m12 * m21;
    if det.abs() <= 1e-14 * 4.0 * a2.norm() * a3.norm() || det == 0.0 {
        return vec![];
    }
    let b0 = [a2.norm2() - d2 * d2 + d1 * d1, a3.norm2() - d3 * d3 + d1 * d1];
    let b1 = [2.0 * (d2 - d1), 2.0 * (d3 - d1)];
    let inv = |b: [f64; 2]| Point::new((m22 * b[0] - m12 * b[1]) / det, (-m21 * b[0] + m11 * b[1]) / det);
    let c0 = inv(b0);
    let c1 = inv(b1);
    let qa = c1.norm2() - 1.0;
    let qb = 2.0 * (c0.dot(c1) + d1);
    let qc = c0.norm2() - d1 * d1;
    let mut roots = Vec::new();
    if qa.abs() < 1e-14 {
        if qb != 0.0 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * sq);
            if q != 0.0 {
                roots.push(q / qa);
                roots.push(qc / q);
            } else {
                roots.push(-qb / (2.0 * qa));
            }
        }
    }
    let dmax = d1.max(d2).max(d3);
    roots
        .into_iter()
        .filter(|r| r.is_finite() && *r >= dmax - 1e-12 * (1.0 + dmax))
        .map(|r| (o + c0 + c1 * r, r))
        .collect()
}

fn euclid_circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    if d.abs() < 1e-300 {
        return None;
    }
    let ux = (ac.y * ab.norm2() - ab.y * ac.norm2()) / d;
    let uy = (ab.x * ac.norm2() - ac.x * ab.norm2()) / d;
    Some(a + Point::new(ux, uy))
}

/// Smallest enclosing geodesic disk of the roots of `sites`, processing the
/// sites in the given order.
pub fn enclose_sites(geo: &Geodesy, sites: &[&ShortestPathMap]) -> SiteDisk {
    let scale = geo.polygon().diameter_bound().max(1e-300);
    let solver = Solver { geo, sites, tol: 1e-12 * scale.max(1.0), scale };
    let mut basis = Vec::with_capacity(3);
    let mut d = solver.welzl(sites.len(), &mut basis);
    d.radius = (0..sites.len()).map(|i| solver.dist(i, d.center)).fold(0.0, f64::max);
    d
}

/// Geodesic 1-center of the polygon (of its vertex set).
pub fn one_center(geo: &Geodesy) -> OneCenterResult {
    let maps: Vec<&ShortestPathMap> = (0..geo.n()).map(|k| geo.vertex_map(k)).collect();
    let d = enclose_sites(geo, &maps);
    let mut witnesses = d.basis.clone();
    witnesses.sort_unstable();
    OneCenterResult { center: d.center, radius: d.radius, witnesses }
}

/// Geodesic 1-center of a subpolygon of `geo`'s polygon.
pub fn one_center_subpolygon(geo: &Geodesy, sub: &SubPolygon) -> Result<OneCenterResult> {
    let r = restricted_radius(geo, sub.chain.from, sub.chain.to)?;
    let witnesses: Vec<usize> = sub
        .chain
        .vertex_indices
        .iter()
        .copied()
        .filter(|&k| (geo.vertex_map(k).distance(geo, r.center) - r.radius).abs() <= 1e-9)
        .collect();
    Ok(OneCenterResult { center: r.center, radius: r.radius, witnesses })
}

/// Cell-free shortest-path map rooted at a boundary point, borrowed when the point is
/// a vertex.
pub fn boundary_map(geo: &Geodesy, c: BoundaryCoord) -> Result<Cow<'_, ShortestPathMap>> {
    let n = geo.n();
    let c = c.canonical(n);
    if c.t == 0.0 {
        Ok(Cow::Borrowed(geo.vertex_map(c.edge)))
    } else {
        Ok(Cow::Owned(geo.point_map_lite(geo.polygon().point_at(c))?))
    }
}

/// `r(α, β)`: radius of `P(α, β)` and a center inside it.
pub fn restricted_radius(geo: &Geodesy, alpha: BoundaryCoord, beta: BoundaryCoord) -> Result<RestrictedRadius> {
    let ma = boundary_map(geo, alpha)?;
    let mb = boundary_map(geo, beta)?;
    restricted_with_maps(geo, alpha, beta, &ma, &mb)
}

/// [`restricted_radius`] with precomputed maps of `α` and `β`.
pub fn restricted_with_maps(
    geo: &Geodesy,
    alpha: BoundaryCoord,
    beta: BoundaryCoord,
    ma: &ShortestPathMap,
    mb: &ShortestPathMap,
) -> Result<RestrictedRadius> {
    let poly = geo.polygon();
    let n = poly.n();
    if alpha.edge >= n || beta.edge >= n {
        return Err(GeoError::BadEdge(alpha.edge.max(beta.edge)));
    }
    let a = alpha.canonical(n);
    let b = beta.canonical(n);
    let (pa, pb) = (poly.point_at(a), poly.point_at(b));
    if pa == pb {
        return Err(GeoError::DegeneratePartition);
    }
    let chain = poly.chain(a, b);
    let mut sites: Vec<&ShortestPathMap> = Vec::with_capacity(chain.vertex_indices.len() + 2);
    if a.t != 0.0 {
        sites.push(ma);
    }
    for &k in &chain.vertex_indices {
        sites.push(geo.vertex_map(k));
    }
    if b.t != 0.0 {
        sites.push(mb);
    }
    let disk = enclose_sites(geo, &sites);
    let scale = poly.diameter_bound();
    // Keep the center inside P(α, β): otherwise minimize along π(α, β).
    let path = ma.path_to(geo, pb)?;
    let mut ring = chain_points(geo, &chain);
    ring.extend(path.points[1..path.points.len() - 1].iter().rev());
    let sub_inside = {
        let m = ring.len();
        (0..m).any(|i| crate::geom::point_segment_distance(disk.center, ring[i], ring[(i + 1) % m]).0 <= 1e-12 * scale)
            || crate::geom::winding_number(&ring, disk.center) != 0
    };
    if sub_inside {
        return Ok(RestrictedRadius { alpha: a, beta: b, radius: disk.radius, center: disk.center, projected: false });
    }
    PROJECTIONS.fetch_add(1, Ordering::Relaxed);
    let f = |s: f64| {
        let x = path.point_at_length(s);
        sites.iter().map(|m| m.distance(geo, x)).fold(0.0, f64::max)
    };
    let (s, v) = golden_min(0.0, path.length, 1e-13 * scale.max(1.0), f);
    let center = path.point_at_length(s);
    Ok(RestrictedRadius { alpha: a, beta: b, radius: v.max(disk.radius), center, projected: true })
}

/// `max(r(α, β), r(β, α))`.
pub fn maxrad(geo: &Geodesy, alpha: BoundaryCoord, beta: BoundaryCoord) -> Result<f64> {
    let ma = boundary_map(geo, alpha)?;
    let mb = boundary_map(geo, beta)?;
    let r1 = restricted_with_maps(geo, alpha, beta, &ma, &mb)?;
    let r2 = restricted_with_maps(geo, beta, alpha, &mb, &ma)?;
    Ok(r1.radius.max(r2.radius))
}

/// Geodesic 1-center of a polygon.
pub fn one_center_polygon(poly: &crate::polygon::SimplePolygon) -> OneCenterResult {
    one_center(&Geodesy::new(poly.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn square_center() {
        let r = one_center(&Geodesy::new(square()));
        assert!(r.center.dist(Point::new(0.5, 0.5)) < 1e-12);
        assert!((r.radius - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lshape_center_is_reflex_vertex() {
        let r = one_center(&Geodesy::new(lshape()));
        assert!(r.center.dist(Point::new(1.0, 1.0)) < 1e-9, "{:?}", r);
        assert!((r.radius - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn square_halves() {
        let g = Geodesy::new(square());
        let r = restricted_radius(&g, BoundaryCoord::new(0, 0.5), BoundaryCoord::new(2, 0.5)).unwrap();
        assert!((r.radius - 0.3125f64.sqrt()).abs() < 1e-12);
        assert!(r.center.dist(Point::new(0.5, 0.75)) < 1e-9, "{:?}", r.center);
        let m = maxrad(&g, BoundaryCoord::new(0, 0.5), BoundaryCoord::new(2, 0.5)).unwrap();
        assert!((m - 0.3125f64.sqrt()).abs() < 1e-12);
        let off = maxrad(&g, BoundaryCoord::new(0, 0.25), BoundaryCoord::new(2, 0.75)).unwrap();
        assert!(off > m + 1e-6);
    }

    #[test]
    fn restricted_is_monotone_in_beta() {
        let g = Geodesy::new(lshape());
        let alpha = BoundaryCoord::new(0, 0.3);
        let mut last = 0.0;
        for k in 1..=16 {
            let pos = 0.3 + 5.4 * k as f64 / 16.0;
            let beta = BoundaryCoord::from_position(pos, 6);
            let r = restricted_radius(&g, alpha, beta).unwrap().radius;
            assert!(r >= last - 1e-9, "step {k}: {r} < {last}");
            last = r;
        }
    }

    #[test]
    fn degenerate_partition() {
        let g = Geodesy::new(square());
        assert_eq!(maxrad(&g, BoundaryCoord::vertex(1), BoundaryCoord::new(0, 1.0)), Err(GeoError::DegeneratePartition));
    }
}
