//! Ear-clipping triangulation with its dual tree.

use crate::geom::{orient, Point};
use crate::polygon::SimplePolygon;
use std::collections::{HashMap, VecDeque};

/// Triangles are stored counterclockwise as vertex-index triples. Edge `k`
/// of a triangle runs from corner `k` to corner `k + 1`.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    /// `adjacency[t][k]`: triangle across edge `k` of `t` (None for polygon edges).
    pub adjacency: Vec<[Option<usize>; 3]>,
    /// `edge_triangle[k]`: the triangle containing polygon edge `e_k`.
    pub edge_triangle: Vec<usize>,
    next_hop: Vec<u32>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, poly: &SimplePolygon, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [poly.v(a), poly.v(b), poly.v(c)]
    }

    /// Closed containment test against triangle `t`.
    pub fn contains(&self, poly: &SimplePolygon, t: usize, p: Point) -> bool {
        let [a, b, c] = self.corners(poly, t);
        orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0
    }

    /// First triangle containing `p`, falling back to the nearest triangle
    /// within `tol`.
    pub fn locate(&self, poly: &SimplePolygon, p: Point, tol: f64) -> Option<usize> {
        for t in 0..self.len() {
            if self.contains(poly, t, p) {
                return Some(t);
            }
        }
        let mut best = (f64::INFINITY, None);
        for t in 0..self.len() {
            let c = self.corners(poly, t);
            for k in 0..3 {
                let (d, _) = crate::geom::point_segment_distance(p, c[k], c[(k + 1) % 3]);
                if d < best.0 {
                    best = (d, Some(t));
                }
            }
        }
        if best.0 <= tol {
            best.1
        } else {
            None
        }
    }

    /// Neighbor of `from` on the dual-tree path towards `to`.
    #[inline]
    pub fn next_hop(&self, from: usize, to: usize) -> usize {
        self.next_hop[from * self.len() + to] as usize
    }

    /// Triangles on the dual-tree path from `from` to `to`, inclusive.
    pub fn dual_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = vec![from];
        let mut cur = from;
        while cur != to {
            cur = self.next_hop(cur, to);
            out.push(cur);
        }
        out
    }

    /// Local index of the edge of `t` shared with `nb`.
    pub fn shared_edge(&self, t: usize, nb: usize) -> Option<usize> {
        (0..3).find(|&k| self.adjacency[t][k] == Some(nb))
    }

    /// The corner of `t` that is neither `a` nor `b`.
    pub fn third_vertex(&self, t: usize, a: usize, b: usize) -> usize {
        let tri = self.triangles[t];
        *tri.iter().find(|&&v| v != a && v != b).expect("triangle has a third corner")
    }

    /// Number of edges in the dual graph (should be `len() - 1`).
    pub fn dual_edge_count(&self) -> usize {
        self.adjacency.iter().flatten().filter(|x| x.is_some()).count() / 2
    }
}

/// Triangulate by ear clipping. Vertices with a straight angle that never
/// become ears are dropped from the working ring without emitting a triangle.
pub fn triangulate(poly: &SimplePolygon) -> Triangulation {
    let n = poly.n();
    // Counterclockwise working order.
    let mut ring: Vec<usize> = (0..n).rev().collect();
    let mut triangles = Vec::with_capacity(n.saturating_sub(2));
    let mut guard = 0usize;
    let mut i = 0usize;
    while ring.len() > 3 && guard < 4 * n * n + 16 {
        guard += 1;
        let m = ring.len();
        let mut clipped = false;
        for off in 0..m {
            let k = (i + off) % m;
            let (ip, ic, inx) = (ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]);
            if is_ear(poly, &ring, ip, ic, inx) {
                triangles.push([ip, ic, inx]);
                ring.remove(k);
                i = k % ring.len();
                clipped = true;
                break;
            }
        }
        if !clipped {
            // Only straight-angle vertices remain blocking; drop one.
            let m = ring.len();
            let k = (0..m)
                .find(|&k| {
                    orient(poly.v(ring[(k + m - 1) % m]), poly.v(ring[k]), poly.v(ring[(k + 1) % m])) == 0
                })
                .unwrap_or(0);
            ring.remove(k);
        }
    }
    if ring.len() == 3 {
        let (a, b, c) = (ring[0], ring[1], ring[2]);
        if orient(poly.v(a), poly.v(b), poly.v(c)) > 0 {
            triangles.push([a, b, c]);
        }
    }
    build(poly, triangles)
}

fn is_ear(poly: &SimplePolygon, ring: &[usize], a: usize, b: usize, c: usize) -> bool {
    let (pa, pb, pc) = (poly.v(a), poly.v(b), poly.v(c));
    if orient(pa, pb, pc) <= 0 {
        return false;
    }
    for &v in ring {
        if v == a || v == b || v == c {
            continue;
        }
        let p = poly.v(v);
        if orient(pa, pb, p) >= 0 && orient(pb, pc, p) >= 0 && orient(pc, pa, p) >= 0 {
            return false;
        }
    }
    true
}

fn build(poly: &SimplePolygon, triangles: Vec<[usize; 3]>) -> Triangulation {
    let n = poly.n();
    let m = triangles.len();
    let mut edges: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            edges.entry((a.min(b), a.max(b))).or_default().push((t, k));
        }
    }
    let mut adjacency = vec![[None; 3]; m];
    for list in edges.values() {
        if list.len() == 2 {
            let (t1, k1) = list[0];
            let (t2, k2) = list[1];
            adjacency[t1][k1] = Some(t2);
            adjacency[t2][k2] = Some(t1);
        }
    }
    // Each polygon edge belongs to exactly one triangle, unless a
    // straight-angle vertex was dropped; then it lies on a longer side.
    let mut edge_triangle = vec![usize::MAX; n];
    for k in 0..n {
        let (a, b) = (k, (k + 1) % n);
        if let Some(list) = edges.get(&(a.min(b), a.max(b))) {
            edge_triangle[k] = list[0].0;
        }
    }
    for k in 0..n {
        if edge_triangle[k] == usize::MAX {
            let (pa, pb) = poly.edge(k);
            let mid = pa.midpoint(pb);
            edge_triangle[k] = (0..m)
                .find(|&t| {
                    let tri = triangles[t];
                    let c = [poly.v(tri[0]), poly.v(tri[1]), poly.v(tri[2])];
                    (0..3).any(|j| crate::geom::on_segment(mid, c[j], c[(j + 1) % 3]))
                })
                .unwrap_or(0);
        }
    }
    // All-pairs next hop on the dual tree, one BFS per target.
    let mut next_hop = vec![u32::MAX; m * m];
    let mut queue = VecDeque::new();
    for target in 0..m {
        next_hop[target * m + target] = target as u32;
        queue.clear();
        queue.push_back(target);
        while let Some(cur) = queue.pop_front() {
            for nb in adjacency[cur].iter().flatten() {
                if next_hop[nb * m + target] == u32::MAX {
                    next_hop[nb * m + target] = cur as u32;
                    queue.push_back(*nb);
                }
            }
        }
    }
    Triangulation { triangles, adjacency, edge_triangle, next_hop }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polygon_area;
    use crate::polygon::fixtures::*;

    fn total_area(p: &SimplePolygon, t: &Triangulation) -> f64 {
        (0..t.len()).map(|i| polygon_area(&t.corners(p, i))).sum()
    }

    #[test]
    fn fixture_triangle_counts() {
        let s = square();
        let ts = triangulate(&s);
        assert_eq!(ts.len(), 2);
        assert_eq!(ts.dual_edge_count(), 1);
        let l = lshape();
        let tl = triangulate(&l);
        assert_eq!(tl.len(), 4);
        assert_eq!(tl.dual_edge_count(), 3);
        assert!((total_area(&l, &tl) - l.area()).abs() < 1e-12);
    }

    #[test]
    fn dual_paths_are_connected() {
        let l = lshape();
        let t = triangulate(&l);
        for a in 0..t.len() {
            for b in 0..t.len() {
                let path = t.dual_path(a, b);
                assert_eq!(*path.last().unwrap(), b);
                for w in path.windows(2) {
                    assert!(t.shared_edge(w[0], w[1]).is_some());
                }
            }
        }
    }

    #[test]
    fn edge_triangles_contain_edges() {
        let l = lshape();
        let t = triangulate(&l);
        for k in 0..l.n() {
            let tri = t.triangles[t.edge_triangle[k]];
            assert!(tri.contains(&k) && tri.contains(&((k + 1) % l.n())));
        }
    }
}
