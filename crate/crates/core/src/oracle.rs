//! Brute-force reference computations used to cross-check the fast paths.

use crate::error::{GeoError, Result};
use crate::geodesic::{segment_inside, Geodesy};
use crate::geom::Point;
use crate::numeric::{golden_min, nelder_mead, pattern_search};
use crate::onecenter::{boundary_map, restricted_with_maps};
use crate::polygon::{BoundaryCoord, Containment, SimplePolygon};
use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};

/// Geodesic distance by Dijkstra over the visibility graph of the polygon
/// vertices and the two query points.
pub fn visgraph_distance(poly: &SimplePolygon, x: Point, y: Point) -> Result<f64> {
    for p in [x, y] {
        if poly.locate(p) == Containment::Outside {
            return Err(GeoError::PointOutside(p.x, p.y));
        }
    }
    if segment_inside(poly, x, y) {
        return Ok(x.dist(y));
    }
    let mut nodes: Vec<Point> = poly.vertices().to_vec();
    nodes.push(x);
    nodes.push(y);
    let m = nodes.len();
    let mut g: UnGraph<(), f64> = UnGraph::with_capacity(m, m * m / 2);
    let ids: Vec<NodeIndex> = (0..m).map(|_| g.add_node(())).collect();
    for i in 0..m {
        for j in i + 1..m {
            if segment_inside(poly, nodes[i], nodes[j]) {
                g.add_edge(ids[i], ids[j], nodes[i].dist(nodes[j]));
            }
        }
    }
    let dist = dijkstra(&g, ids[m - 2], Some(ids[m - 1]), |e| *e.weight());
    dist.get(&ids[m - 1]).copied().ok_or(GeoError::PointOutside(y.x, y.y))
}

/// Uniformly random points inside the polygon by rejection sampling.
pub fn random_interior_points(poly: &SimplePolygon, count: usize, seed: u64) -> Vec<Point> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = poly.bbox();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
        if poly.locate(p) == Containment::Inside {
            out.push(p);
        }
    }
    out
}

/// Max geodesic distance from `p` to the polygon vertices (`inf` outside).
pub fn vertex_eccentricity(geo: &Geodesy, p: Point) -> f64 {
    let Some(t) = geo.locate_triangle(p) else {
        return f64::INFINITY;
    };
    if geo.polygon().locate(p) == Containment::Outside {
        return f64::INFINITY;
    }
    (0..geo.n()).map(|k| geo.vertex_map(k).anchor_in(geo, t, p).distance(p)).fold(0.0, f64::max)
}

/// 1-center by brute force: the best of a `resolution`² grid of interior
/// points, refined by compass search and a simplex polish.
pub fn grid_one_center(poly: &SimplePolygon, resolution: usize) -> (Point, f64) {
    let geo = Geodesy::new(poly.clone());
    grid_one_center_in(&geo, resolution)
}

pub fn grid_one_center_in(geo: &Geodesy, resolution: usize) -> (Point, f64) {
    let poly = geo.polygon();
    let (lo, hi) = poly.bbox();
    let res = resolution.max(2);
    let mut best = (lo, f64::INFINITY);
    for i in 0..res {
        for j in 0..res {
            let p = Point::new(
                lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / res as f64,
                lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / res as f64,
            );
            if poly.locate(p) != Containment::Inside {
                continue;
            }
            let v = vertex_eccentricity(geo, p);
            if v < best.1 {
                best = (p, v);
            }
        }
    }
    let h = (hi.x - lo.x).max(hi.y - lo.y) / res as f64;
    let f = |p: Point| vertex_eccentricity(geo, p);
    let (p, _) = pattern_search(best.0, h, 1e-9 * h, 16, f);
    nelder_mead(p, 1e-3 * h, 1e-14 * h.max(1e-300), f)
}

/// Boundary point at arc length `s` from `v_0`, measured clockwise.
fn coord_at_length(poly: &SimplePolygon, s: f64) -> BoundaryCoord {
    let n = poly.n();
    let mut rest = s.rem_euclid(poly.perimeter());
    for e in 0..n {
        let (a, b) = poly.edge(e);
        let len = a.dist(b);
        if rest < len {
            return BoundaryCoord::new(e, rest / len);
        }
        rest -= len;
    }
    BoundaryCoord::vertex(0)
}

/// `max(r(α, β), r(β, α))` from prepared maps; `inf` for a degenerate split.
fn split_radius(geo: &Geodesy, a: BoundaryCoord, b: BoundaryCoord, ma: &crate::ShortestPathMap, mb: &crate::ShortestPathMap) -> f64 {
    match (restricted_with_maps(geo, a, b, ma, mb), restricted_with_maps(geo, b, a, mb, ma)) {
        (Ok(r1), Ok(r2)) => r1.radius.max(r2.radius),
        _ => f64::INFINITY,
    }
}

fn split_radius_at(geo: &Geodesy, a: BoundaryCoord, b: BoundaryCoord) -> f64 {
    match (boundary_map(geo, a), boundary_map(geo, b)) {
        (Ok(ma), Ok(mb)) => split_radius(geo, a, b, &ma, &mb),
        _ => f64::INFINITY,
    }
}

/// Sample points of the boundary: `samples` points evenly spaced by arc
/// length plus every vertex, in clockwise order.
fn boundary_samples(poly: &SimplePolygon, samples: usize) -> Vec<BoundaryCoord> {
    let n = poly.n();
    let per = poly.perimeter();
    let mut pts: Vec<BoundaryCoord> = (0..samples).map(|k| coord_at_length(poly, per * k as f64 / samples as f64)).collect();
    pts.extend((0..n).map(BoundaryCoord::vertex));
    pts.sort_by(|a, b| a.position(n).total_cmp(&b.position(n)));
    pts.dedup_by(|a, b| (a.position(n) - b.position(n)).abs() < 1e-12);
    pts
}

/// Best sampled split as `(radius, a, b)` with indices into the samples.
fn best_sampled_split(geo: &Geodesy, pts: &[BoundaryCoord]) -> (f64, usize, usize) {
    let maps: Vec<_> = pts.iter().map(|&c| boundary_map(geo, c).ok()).collect();
    let mut best = (f64::INFINITY, 0, 0);
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            if let (Some(ma), Some(mb)) = (&maps[a], &maps[b]) {
                let r = split_radius(geo, pts[a], pts[b], ma, mb);
                if r < best.0 {
                    best = (r, a, b);
                }
            }
        }
    }
    best
}

/// Best split over all pairs of boundary samples, without polishing:
/// `(radius, (α, β))`.
pub fn sampled_partition_min(geo: &Geodesy, samples: usize) -> (f64, (BoundaryCoord, BoundaryCoord)) {
    let pts = boundary_samples(geo.polygon(), samples);
    let (r, a, b) = best_sampled_split(geo, &pts);
    (r, (pts[a], pts[b]))
}

/// 2-center radius by dense boundary sampling, with a nested golden-section
/// polish of the best split between the neighbouring samples.
pub fn sampled_two_center(geo: &Geodesy, samples: usize) -> (f64, (BoundaryCoord, BoundaryCoord)) {
    let n = geo.n();
    let pts = boundary_samples(geo.polygon(), samples);
    let m = pts.len();
    let (r0, a, b) = best_sampled_split(geo, &pts);
    if !r0.is_finite() {
        return (r0, (pts[a], pts[b]));
    }
    let nf = n as f64;
    // Window `[prev, next]` around sample k in unwrapped positions.
    let around = |k: usize| {
        let p = pts[k].position(n);
        let prev = pts[(k + m - 1) % m].position(n);
        let next = pts[(k + 1) % m].position(n);
        (if prev < p { prev } else { prev - nf }, if next > p { next } else { next + nf })
    };
    let at = |p: f64| BoundaryCoord::from_position(p.rem_euclid(nf), n);
    let (wa, wb) = (around(a), around(b));
    let inner = |x: f64| golden_min(wb.0, wb.1, 1e-11, |y| split_radius_at(geo, at(x), at(y)));
    let (x, v) = golden_min(wa.0, wa.1, 1e-11, |x| inner(x).1);
    if v < r0 {
        let y = inner(x).0;
        (v, (at(x), at(y)))
    } else {
        (r0, (pts[a], pts[b]))
    }
}

/// Deterministic low-discrepancy points inside the polygon (Halton bases 2
/// and 3 over the bounding box).
pub fn halton_points(poly: &SimplePolygon, count: usize) -> Vec<Point> {
    let radical = |mut k: usize, base: usize| {
        let mut f = 1.0;
        let mut r = 0.0;
        while k > 0 {
            f /= base as f64;
            r += f * (k % base) as f64;
            k /= base;
        }
        r
    };
    let (lo, hi) = poly.bbox();
    let mut out = Vec::with_capacity(count);
    let mut k = 1;
    while out.len() < count && k < 1000 * count + 1000 {
        let p = Point::new(lo.x + (hi.x - lo.x) * radical(k, 2), lo.y + (hi.y - lo.y) * radical(k, 3));
        if poly.locate(p) != Containment::Outside {
            out.push(p);
        }
        k += 1;
    }
    out
}
