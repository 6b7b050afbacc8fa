//! Seeded random simple polygons by recursive space partitioning.
//!
//! Random points are joined into a simple polygon by splitting the point set
//! with random lines through already placed points; each half is then chained
//! independently, so the two halves can never cross.

use crate::geom::{orient, Point};
use crate::polygon::SimplePolygon;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random simple polygon with `n` vertices in the unit square.
pub fn random_polygon(n: usize, seed: u64) -> SimplePolygon {
    assert!(n >= 3, "polygon needs at least 3 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        if let Some(ring) = space_partition(&pts, &mut rng) {
            if let Ok(p) = SimplePolygon::new(ring) {
                if well_separated(&p) {
                    return p;
                }
            }
        }
    }
}

/// `count` random polygons with sizes drawn from `lo..=hi`.
pub fn random_polygons(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<SimplePolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            random_polygon(n, rng.gen())
        })
        .collect()
}

/// Reject near-degenerate inputs: nearly coincident vertices or vertices
/// almost touching a non-incident edge.
fn well_separated(p: &SimplePolygon) -> bool {
    let n = p.n();
    let tol = 1e-3;
    for k in 0..n {
        let v = p.v(k);
        for e in 0..n {
            if e == k || (e + 1) % n == k {
                continue;
            }
            let (a, b) = p.edge(e);
            if crate::geom::point_segment_distance(v, a, b).0 < tol {
                return false;
            }
        }
    }
    true
}

fn space_partition(pts: &[Point], rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let n = pts.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let (a, b) = (pts[idx[0]], pts[idx[1]]);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in &idx[2..] {
        match orient(a, b, pts[i]) {
            1 => left.push(pts[i]),
            -1 => right.push(pts[i]),
            _ => return None,
        }
    }
    let mut ring = vec![a];
    chain(a, b, right, rng, &mut ring)?;
    ring.push(b);
    chain(b, a, left, rng, &mut ring)?;
    Some(ring)
}

/// Append a chain from `a` to `b` (exclusive) through all of `set`, which
/// lies strictly on one side of the line `ab`.
fn chain(a: Point, b: Point, set: Vec<Point>, rng: &mut ChaCha8Rng, out: &mut Vec<Point>) -> Option<()> {
    if set.is_empty() {
        return Some(());
    }
    let s = set[rng.gen_range(0..set.len())];
    // Split line through `s` and a random point of segment `ab`.
    let q = a.lerp(b, rng.gen_range(0.05..0.95));
    let side_a = orient(s, q, a);
    let mut near_a = Vec::new();
    let mut near_b = Vec::new();
    for p in set {
        if p == s {
            continue;
        }
        let o = orient(s, q, p);
        if o == 0 {
            return None;
        }
        if o == side_a {
            near_a.push(p);
        } else {
            near_b.push(p);
        }
    }
    chain(a, s, near_a, rng, out)?;
    out.push(s);
    chain(s, b, near_b, rng, out)
}
