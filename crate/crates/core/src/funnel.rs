//! Funnels over a triangulation: the deque `f_0 = L .. apex .. f_m = R`
//! spanning a diagonal `(L, R)` whose far triangle lies left of `L -> R`.

use crate::geom::{clip_convex, orient, Point};

/// Id used for the funnel root when it is not a polygon vertex.
pub const NO_VERTEX: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FNode {
    /// Path identity: a vertex index, or the root id.
    pub id: usize,
    /// Polygon vertex occupying this position, or [`NO_VERTEX`].
    pub vert: usize,
    pub p: Point,
    /// Geodesic distance from the root.
    pub d: f64,
}

#[derive(Debug, Clone)]
pub struct Funnel {
    pub nodes: Vec<FNode>,
    pub apex: usize,
}

impl Funnel {
    /// Funnel `[l, root, r]`, collapsing `l` or `r` into the root when they
    /// coincide with it.
    pub fn initial(l: FNode, root: FNode, r: FNode) -> Funnel {
        let mut nodes = Vec::with_capacity(3);
        let mut root = root;
        if l.p == root.p {
            root.vert = l.vert;
        } else {
            nodes.push(l);
        }
        let apex = nodes.len();
        if r.p == root.p {
            root.vert = r.vert;
            nodes.push(root);
        } else {
            nodes.push(root);
            nodes.push(r);
        }
        Funnel { nodes, apex }
    }

    #[inline]
    pub fn left(&self) -> &FNode {
        &self.nodes[0]
    }

    #[inline]
    pub fn right(&self) -> &FNode {
        self.nodes.last().expect("funnel is never empty")
    }

    #[inline]
    pub fn last_index(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Boundary constraints of the cone of node `k`: `(a, b, want, dir)`
    /// asks `orient(a, b, q) == want`, or `q` on the ray from `f_k` along
    /// `dir` when collinear.
    fn constraints(&self, k: usize) -> [Option<(Point, Point, i8, Point)>; 2] {
        let f = &self.nodes;
        let a = self.apex;
        let m = self.last_index();
        let p = f[k].p;
        if k < a {
            let first = Some((f[k + 1].p, p, 1, p - f[k + 1].p));
            let second = if k > 0 { Some((p, f[k - 1].p, -1, f[k - 1].p - p)) } else { None };
            [first, second]
        } else if k > a {
            let first = Some((f[k - 1].p, p, -1, p - f[k - 1].p));
            let second = if k < m { Some((p, f[k + 1].p, 1, f[k + 1].p - p)) } else { None };
            [first, second]
        } else {
            let first = if a > 0 { Some((p, f[a - 1].p, -1, f[a - 1].p - p)) } else { None };
            let second = if a < m { Some((p, f[a + 1].p, 1, f[a + 1].p - p)) } else { None };
            [first, second]
        }
    }

    /// Closed cone test: is `q` reached through node `k`?
    pub fn in_cone(&self, k: usize, q: Point) -> bool {
        let origin = self.nodes[k].p;
        self.constraints(k).iter().flatten().all(|&(a, b, want, dir)| {
            let s = orient(a, b, q);
            s == want || (s == 0 && (q - origin).dot(dir) >= 0.0)
        })
    }

    /// Index of the node through which `q` is reached. Chain vertices are
    /// scanned before the apex so points on a cone boundary adopt the vertex.
    pub fn tangent(&self, q: Point) -> usize {
        let a = self.apex;
        let m = self.last_index();
        for k in 0..a {
            if self.in_cone(k, q) {
                return k;
            }
        }
        for k in (a + 1..=m).rev() {
            if self.in_cone(k, q) {
                return k;
            }
        }
        a
    }

    /// Split at the far vertex `c` with tangent `k`: the left child spans
    /// `(L, c)` and the right child spans `(c, R)`.
    pub fn split(&self, k: usize, c: FNode) -> (Funnel, Funnel) {
        let a = self.apex;
        let mut left: Vec<FNode> = self.nodes[..=k].to_vec();
        left.push(c);
        let mut right = Vec::with_capacity(self.nodes.len() - k + 1);
        right.push(c);
        right.extend_from_slice(&self.nodes[k..]);
        let la = k.min(a);
        let ra = if k <= a { a - k + 1 } else { 1 };
        (Funnel { nodes: left, apex: la }, Funnel { nodes: right, apex: ra })
    }

    /// In-place variant keeping only the child across `(L, c)`.
    pub fn keep_left(&mut self, k: usize, c: FNode) {
        self.apex = self.apex.min(k);
        self.nodes.truncate(k + 1);
        self.nodes.push(c);
    }

    /// In-place variant keeping only the child across `(c, R)`.
    pub fn keep_right(&mut self, k: usize, c: FNode) {
        let a = self.apex;
        self.nodes.drain(..k);
        self.nodes.insert(0, c);
        self.apex = if k <= a { a - k + 1 } else { 1 };
    }

    /// Clip the convex region `poly` to the cone of node `k`.
    pub fn clip_to_cone(&self, k: usize, poly: &[Point]) -> Vec<Point> {
        let mut out = poly.to_vec();
        for (a, b, want, _) in self.constraints(k).into_iter().flatten() {
            out = clip_convex(&out, a, b, want as f64);
        }
        out
    }

    /// Parameter interval of the segment `s -> e` lying in the cone of `k`.
    pub fn cone_interval(&self, k: usize, s: Point, e: Point) -> Option<(f64, f64)> {
        let origin = self.nodes[k].p;
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for (a, b, want, dir) in self.constraints(k).into_iter().flatten() {
            // Keep t where g(t) = want * cross(b - a, s + t (e - s) - a) >= 0,
            // or where the point lies on the cone ray when collinear.
            let (g0, g1) = if orient(a, b, s) == 0 && orient(a, b, e) == 0 {
                ((s - origin).dot(dir), (e - origin).dot(dir))
            } else {
                let d = b - a;
                (want as f64 * d.cross(s - a), want as f64 * d.cross(e - a))
            };
            if g0 >= 0.0 && g1 >= 0.0 {
                continue;
            }
            if g0 < 0.0 && g1 < 0.0 {
                return None;
            }
            let t = g0 / (g0 - g1);
            if g0 < 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        if hi > lo {
            Some((lo, hi))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: usize, x: f64, y: f64, d: f64) -> FNode {
        FNode { id, vert: id, p: Point::new(x, y), d }
    }

    fn sample() -> Funnel {
        // Left chain bends around (-0.5,-0.5); apex below the diagonal y = 0.
        Funnel {
            nodes: vec![node(0, -1.0, 0.0, 2.3), node(1, -0.5, -0.5, 1.58), node(9, 0.0, -2.0, 0.0), node(2, 1.0, 0.0, 2.24)],
            apex: 2,
        }
    }

    #[test]
    fn tangent_picks_cones() {
        let f = sample();
        assert_eq!(f.tangent(Point::new(-0.8, 0.1)), 1);
        assert_eq!(f.tangent(Point::new(-0.5, 0.1)), 2);
        assert_eq!(f.tangent(Point::new(-1.5, 0.1)), 0);
        assert_eq!(f.tangent(Point::new(2.0, 0.1)), 3);
    }

    #[test]
    fn points_on_the_window_use_the_apex() {
        // Two-node funnel whose apex is its right end: points on the
        // segment between the nodes are seen from the apex.
        let f = Funnel { nodes: vec![node(0, 0.0, 1.0, 1.0), node(1, 0.0, 0.0, 0.0)], apex: 1 };
        assert_eq!(f.tangent(Point::new(0.0, 0.0)), 1);
        assert_eq!(f.tangent(Point::new(0.0, 0.5)), 1);
        assert_eq!(f.tangent(Point::new(0.0, 2.0)), 0);
    }

    #[test]
    fn split_keeps_apex_indices() {
        let f = sample();
        let c = node(5, 0.0, 1.0, 0.0);
        let (l, r) = f.split(1, c);
        assert_eq!(l.nodes.len(), 3);
        assert_eq!(l.apex, 1);
        assert_eq!(r.nodes[r.apex].id, 9);
        let mut g = f.clone();
        g.keep_right(1, c);
        assert_eq!(g.nodes.len(), r.nodes.len());
        assert_eq!(g.apex, r.apex);
    }

    #[test]
    fn cone_intervals_tile_segment() {
        let f = sample();
        let (s, e) = (Point::new(-2.0, 0.5), Point::new(2.0, 0.5));
        let mut total = 0.0;
        for k in 0..f.nodes.len() {
            if let Some((a, b)) = f.cone_interval(k, s, e) {
                total += b - a;
            }
        }
        assert!((total - 1.0).abs() < 1e-12);
    }
}
