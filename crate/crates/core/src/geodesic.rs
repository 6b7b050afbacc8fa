//! Geodesic distances, shortest paths, shortest-path trees and maps.
//!
//! Everything is driven by the funnel walk over the ear-clipping
//! triangulation. A [`Geodesy`] holds the triangulation and lazily built
//! shortest-path maps of all polygon vertices.

use crate::error::{GeoError, Result};
use crate::funnel::{FNode, Funnel, NO_VERTEX};
use crate::geom::{orient, polygon_area, segments_cross_properly, Point, TAU_ON};
use crate::polygon::{Containment, SimplePolygon};
use crate::triangulation::{triangulate, Triangulation};
use std::sync::OnceLock;

/// A shortest path between two points of the polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub src: Point,
    pub dst: Point,
    /// Reflex vertices where the path bends, in order from `src`.
    pub anchors: Vec<usize>,
    /// Full polyline `src, anchors.., dst`.
    pub points: Vec<Point>,
    pub length: f64,
}

impl GeodesicPath {
    /// Point at arc length `s` from `src` (clamped).
    pub fn point_at_length(&self, s: f64) -> Point {
        let mut acc = 0.0;
        for w in self.points.windows(2) {
            let l = w[0].dist(w[1]);
            if acc + l >= s && l > 0.0 {
                return w[0].lerp(w[1], ((s - acc) / l).clamp(0.0, 1.0));
            }
            acc += l;
        }
        self.dst
    }

    pub fn midpoint(&self) -> Point {
        self.point_at_length(0.5 * self.length)
    }
}

/// Piece of a polygon edge reached through a single apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePiece {
    pub t0: f64,
    pub t1: f64,
    /// Vertex index of the apex, or `n` for the root.
    pub apex: usize,
    pub apex_pos: Point,
    /// Geodesic distance from the root to the apex.
    pub offset: f64,
}

impl ProfilePiece {
    #[inline]
    pub fn distance(&self, q: Point) -> f64 {
        self.offset + self.apex_pos.dist(q)
    }
}

/// Convex cell of a shortest-path map: every point is reached by a straight
/// segment from `apex`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpmCell {
    pub triangle: usize,
    /// Vertex index of the apex, or `n` for the root.
    pub apex: usize,
    pub apex_pos: Point,
    pub offset: f64,
    pub region: Vec<Point>,
}

/// Where a query point is reached from: the last vertex of its shortest path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub id: usize,
    pub pos: Point,
    pub offset: f64,
}

impl Anchor {
    #[inline]
    pub fn distance(&self, q: Point) -> f64 {
        self.offset + self.pos.dist(q)
    }
}

/// Shortest-path tree over the polygon vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree {
    pub root: Point,
    /// Parent of each vertex; `None` when the root sees the vertex directly.
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<f64>,
}

/// Shortest-path map of a root point.
#[derive(Debug, Clone)]
pub struct ShortestPathMap {
    pub root: Point,
    /// Vertex index when the root coincides with a polygon vertex.
    pub root_vertex: Option<usize>,
    root_tri: usize,
    n: usize,
    parent: Vec<usize>,
    dist: Vec<f64>,
    funnels: Vec<Option<Funnel>>,
    cells: Vec<SpmCell>,
    tri_cells: Vec<(usize, usize)>,
    edge_profiles: Vec<Vec<ProfilePiece>>,
}

impl ShortestPathMap {
    /// Id used for the root in `apex` fields.
    pub fn root_id(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[SpmCell] {
        &self.cells
    }

    pub fn cells_in_triangle(&self, t: usize) -> &[SpmCell] {
        let (a, b) = self.tri_cells[t];
        &self.cells[a..b]
    }

    /// Geodesic distance from the root to vertex `k`.
    #[inline]
    pub fn vertex_distance(&self, k: usize) -> f64 {
        self.dist[k]
    }

    /// Parent of vertex `k` (`n` denotes the root).
    pub fn vertex_parent(&self, k: usize) -> usize {
        self.parent[k]
    }

    pub fn edge_profile(&self, e: usize) -> &[ProfilePiece] {
        &self.edge_profiles[e]
    }

    fn apex_pos(&self, geo: &Geodesy, id: usize) -> Point {
        if id == self.n {
            self.root
        } else {
            geo.poly.v(id)
        }
    }

    fn anchor_of(&self, geo: &Geodesy, id: usize) -> Anchor {
        Anchor {
            id,
            pos: self.apex_pos(geo, id),
            offset: if id == self.n { 0.0 } else { self.dist[id] },
        }
    }

    /// Anchor of `q` given the triangle containing it.
    pub fn anchor_in(&self, geo: &Geodesy, t: usize, q: Point) -> Anchor {
        if t == self.root_tri {
            return self.anchor_of(geo, self.n);
        }
        match &self.funnels[t] {
            Some(f) => {
                let k = f.tangent(q);
                let node = f.nodes[k];
                Anchor { id: node.id, pos: node.p, offset: node.d }
            }
            None => self.anchor_of(geo, self.n),
        }
    }

    /// Anchor of `q`, or `None` when `q` is outside the polygon.
    pub fn anchor(&self, geo: &Geodesy, q: Point) -> Option<Anchor> {
        let t = geo.tri.locate(&geo.poly, q, TAU_ON)?;
        Some(self.anchor_in(geo, t, q))
    }

    /// Geodesic distance from the root to `q` (`inf` outside the polygon).
    pub fn distance(&self, geo: &Geodesy, q: Point) -> f64 {
        match self.anchor(geo, q) {
            Some(a) => a.distance(q),
            None => f64::INFINITY,
        }
    }

    /// Shortest path from the root to `q`.
    pub fn path_to(&self, geo: &Geodesy, q: Point) -> Result<GeodesicPath> {
        let a = self.anchor(geo, q).ok_or(GeoError::PointOutside(q.x, q.y))?;
        let mut ids = Vec::new();
        let mut cur = a.id;
        while cur != self.n {
            ids.push(cur);
            cur = self.parent[cur];
            if ids.len() > self.n {
                break;
            }
        }
        ids.reverse();
        Ok(geo.assemble_path(self.root, q, &ids, a.distance(q)))
    }

    pub fn tree(&self) -> ShortestPathTree {
        ShortestPathTree {
            root: self.root,
            parent: self.parent.iter().map(|&p| if p == self.n { None } else { Some(p) }).collect(),
            dist: self.dist.clone(),
        }
    }
}

/// Triangulated polygon with cached vertex shortest-path maps.
#[derive(Debug)]
pub struct Geodesy {
    poly: SimplePolygon,
    tri: Triangulation,
    vertex_maps: Vec<OnceLock<ShortestPathMap>>,
}

impl Clone for Geodesy {
    fn clone(&self) -> Self {
        Geodesy::new(self.poly.clone())
    }
}

impl Geodesy {
    pub fn new(poly: SimplePolygon) -> Geodesy {
        let tri = triangulate(&poly);
        let vertex_maps = (0..poly.n()).map(|_| OnceLock::new()).collect();
        Geodesy { poly, tri, vertex_maps }
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.poly
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    /// Shortest-path map of vertex `k`, built on first use.
    pub fn vertex_map(&self, k: usize) -> &ShortestPathMap {
        let k = k % self.n();
        self.vertex_maps[k].get_or_init(|| self.build_map(self.poly.v(k), Some(k), true))
    }

    /// Geodesic distance between two polygon vertices.
    #[inline]
    pub fn vertex_distance(&self, a: usize, b: usize) -> f64 {
        self.vertex_map(a).vertex_distance(b % self.n())
    }

    /// Shortest-path map of an arbitrary point of the polygon.
    pub fn point_map(&self, p: Point) -> Result<ShortestPathMap> {
        if let Some(k) = self.vertex_at(p) {
            return Ok(self.vertex_map(k).clone());
        }
        self.check_inside(p)?;
        Ok(self.build_map(p, None, true))
    }

    /// [`Geodesy::point_map`] without the cell subdivision; distance and path
    /// queries work, `cells` is empty.
    pub fn point_map_lite(&self, p: Point) -> Result<ShortestPathMap> {
        if let Some(k) = self.vertex_at(p) {
            return Ok(self.vertex_map(k).clone());
        }
        self.check_inside(p)?;
        Ok(self.build_map(p, None, false))
    }

    /// Index of the vertex at exactly `p`, if any.
    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.poly.vertices().iter().position(|&v| v == p)
    }

    pub fn check_inside(&self, p: Point) -> Result<()> {
        if !p.is_finite() || self.poly.locate(p) == Containment::Outside {
            return Err(GeoError::PointOutside(p.x, p.y));
        }
        Ok(())
    }

    /// Triangle containing `p` (within [`TAU_ON`]).
    pub fn locate_triangle(&self, p: Point) -> Option<usize> {
        self.tri.locate(&self.poly, p, TAU_ON)
    }

    fn locate_tri(&self, p: Point) -> Result<usize> {
        self.tri.locate(&self.poly, p, TAU_ON).ok_or(GeoError::PointOutside(p.x, p.y))
    }

    fn vnode(&self, v: usize, root: Point) -> FNode {
        let p = self.poly.v(v);
        FNode { id: v, vert: v, p, d: p.dist(root) }
    }

    fn root_node(&self, root: Point, root_vertex: Option<usize>) -> FNode {
        FNode { id: self.n(), vert: root_vertex.unwrap_or(NO_VERTEX), p: root, d: 0.0 }
    }

    /// Funnel from the root in triangle `t0` across its edge `k`.
    fn initial_funnel(&self, t0: usize, k: usize, root: FNode) -> Funnel {
        let tri = self.tri.triangles[t0];
        let (a, b) = (tri[k], tri[(k + 1) % 3]);
        Funnel::initial(self.vnode(b, root.p), root, self.vnode(a, root.p))
    }

    fn edge_between(&self, t: usize, a: usize, b: usize) -> Option<usize> {
        let tri = self.tri.triangles[t];
        (0..3).find(|&k| {
            let (x, y) = (tri[k], tri[(k + 1) % 3]);
            (x == a && y == b) || (x == b && y == a)
        })
    }

    fn build_map(&self, root: Point, root_vertex: Option<usize>, with_cells: bool) -> ShortestPathMap {
        let n = self.n();
        let m = self.tri.len();
        let root_tri = self.tri.locate(&self.poly, root, TAU_ON).unwrap_or(0);
        let rnode = self.root_node(root, root_vertex);
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![f64::INFINITY; n];
        let mut funnels: Vec<Option<Funnel>> = vec![None; m];
        let mut cells = Vec::new();
        let mut tri_cells = vec![(0, 0); m];
        let mut per_tri: Vec<Vec<SpmCell>> = vec![Vec::new(); m];

        for &v in &self.tri.triangles[root_tri] {
            parent[v] = n;
            dist[v] = self.poly.v(v).dist(root);
        }
        if let Some(k) = root_vertex {
            parent[k] = n;
            dist[k] = 0.0;
        }
        if with_cells {
            let region = self.tri.corners(&self.poly, root_tri).to_vec();
            per_tri[root_tri].push(SpmCell { triangle: root_tri, apex: n, apex_pos: root, offset: 0.0, region });
        }
        let mut stack: Vec<(usize, Funnel)> = Vec::new();
        for k in 0..3 {
            if let Some(nb) = self.tri.adjacency[root_tri][k] {
                stack.push((nb, self.initial_funnel(root_tri, k, rnode)));
            }
        }
        while let Some((t, f)) = stack.pop() {
            let (lv, rv) = (f.left().vert, f.right().vert);
            let c = self.tri.third_vertex(t, lv, rv);
            let pc = self.poly.v(c);
            let k = f.tangent(pc);
            let w = f.nodes[k];
            let cnode = FNode { id: c, vert: c, p: pc, d: w.d + w.p.dist(pc) };
            if cnode.d < dist[c] {
                parent[c] = w.id;
                dist[c] = cnode.d;
            }
            if with_cells {
                let region = [f.left().p, f.right().p, pc];
                for j in 0..f.nodes.len() {
                    let poly = f.clip_to_cone(j, &region);
                    if poly.len() >= 3 && polygon_area(&poly) > 1e-20 {
                        let node = f.nodes[j];
                        per_tri[t].push(SpmCell { triangle: t, apex: node.id, apex_pos: node.p, offset: node.d, region: poly });
                    }
                }
            }
            let (fl, fr) = f.split(k, cnode);
            if let Some(e) = self.edge_between(t, lv, c) {
                if let Some(nb) = self.tri.adjacency[t][e] {
                    stack.push((nb, fl));
                }
            }
            if let Some(e) = self.edge_between(t, c, rv) {
                if let Some(nb) = self.tri.adjacency[t][e] {
                    stack.push((nb, fr));
                }
            }
            funnels[t] = Some(f);
        }
        for (t, list) in per_tri.into_iter().enumerate() {
            let a = cells.len();
            cells.extend(list);
            tri_cells[t] = (a, cells.len());
        }
        let mut map = ShortestPathMap {
            root,
            root_vertex,
            root_tri,
            n,
            parent,
            dist,
            funnels,
            cells,
            tri_cells,
            edge_profiles: Vec::new(),
        };
        // Vertices dropped by the triangulation (straight angles) are
        // located directly.
        for v in 0..n {
            if map.parent[v] == usize::MAX {
                let p = self.poly.v(v);
                let a = map.anchor(self, p).unwrap_or(Anchor { id: n, pos: root, offset: 0.0 });
                map.parent[v] = a.id;
                map.dist[v] = a.distance(p);
            }
        }
        map.edge_profiles = (0..n).map(|e| self.profile_in_map(&map, e)).collect();
        map
    }

    fn profile_in_map(&self, map: &ShortestPathMap, e: usize) -> Vec<ProfilePiece> {
        let t = self.tri.edge_triangle[e];
        let (a, b) = self.poly.edge(e);
        match &map.funnels[t] {
            Some(f) if t != map.root_tri => profile_of_funnel(f, a, b),
            _ => vec![ProfilePiece { t0: 0.0, t1: 1.0, apex: map.n, apex_pos: map.root, offset: 0.0 }],
        }
    }

    /// Walk the funnel from `x` (in triangle `tx`) to the funnel entering
    /// triangle `target`. Records path parents when `parents` is given.
    fn walk(&self, x: Point, tx: usize, target: usize, mut parents: Option<&mut Vec<usize>>) -> Funnel {
        let root = self.root_node(x, self.vertex_at(x));
        let nb = self.tri.next_hop(tx, target);
        let k = self.tri.shared_edge(tx, nb).expect("dual neighbours share an edge");
        let mut f = self.initial_funnel(tx, k, root);
        let mut cur = nb;
        while cur != target {
            let (lv, rv) = (f.left().vert, f.right().vert);
            let c = self.tri.third_vertex(cur, lv, rv);
            let pc = self.poly.v(c);
            let j = f.tangent(pc);
            let w = f.nodes[j];
            if let Some(p) = parents.as_deref_mut() {
                p[c] = w.id;
            }
            let cnode = FNode { id: c, vert: c, p: pc, d: w.d + w.p.dist(pc) };
            let next = self.tri.next_hop(cur, target);
            if self.tri.triangles[next].contains(&lv) {
                f.keep_left(j, cnode);
            } else {
                debug_assert!(self.tri.triangles[next].contains(&rv));
                f.keep_right(j, cnode);
            }
            cur = next;
        }
        f
    }

    /// Anchor of `y` for paths from `x`, with the parent table of the walk.
    fn anchor_between(&self, x: Point, y: Point, parents: Option<&mut Vec<usize>>) -> Result<Anchor> {
        let tx = self.locate_tri(x)?;
        let ty = self.locate_tri(y)?;
        let root = Anchor { id: self.n(), pos: x, offset: 0.0 };
        if tx == ty || self.tri.contains(&self.poly, tx, y) || self.tri.contains(&self.poly, ty, x) {
            return Ok(root);
        }
        let f = self.walk(x, tx, ty, parents);
        let node = f.nodes[f.tangent(y)];
        Ok(Anchor { id: node.id, pos: node.p, offset: node.d })
    }

    /// Geodesic distance between two points of the polygon.
    pub fn distance(&self, x: Point, y: Point) -> Result<f64> {
        self.check_inside(x)?;
        self.check_inside(y)?;
        Ok(self.anchor_between(x, y, None)?.distance(y))
    }

    /// Shortest path between two points of the polygon.
    pub fn shortest_path(&self, x: Point, y: Point) -> Result<GeodesicPath> {
        self.check_inside(x)?;
        self.check_inside(y)?;
        let n = self.n();
        let mut parents = vec![usize::MAX; n + 1];
        let a = self.anchor_between(x, y, Some(&mut parents))?;
        let mut ids = Vec::new();
        let mut cur = a.id;
        while cur != n && cur != usize::MAX && ids.len() <= n {
            ids.push(cur);
            cur = parents[cur];
        }
        ids.reverse();
        Ok(self.assemble_path(x, y, &ids, a.distance(y)))
    }

    fn assemble_path(&self, x: Point, y: Point, ids: &[usize], length: f64) -> GeodesicPath {
        let mut points = vec![x];
        let mut anchors = Vec::new();
        for &id in ids {
            let p = self.poly.v(id);
            if p == x || p == y {
                continue;
            }
            points.push(p);
            if self.poly.is_reflex(id) {
                anchors.push(id);
            }
        }
        points.push(y);
        GeodesicPath { src: x, dst: y, anchors, points, length }
    }

    /// Distance profile of edge `e` as seen from `x`: pieces of `[0, 1]`
    /// each reached through one apex.
    pub fn edge_profile_from(&self, x: Point, e: usize) -> Result<Vec<ProfilePiece>> {
        let n = self.n();
        let e = e % n;
        let tx = self.locate_tri(x)?;
        let te = self.tri.edge_triangle[e];
        let whole = vec![ProfilePiece { t0: 0.0, t1: 1.0, apex: n, apex_pos: x, offset: 0.0 }];
        if tx == te || self.tri.contains(&self.poly, te, x) {
            return Ok(whole);
        }
        let f = self.walk(x, tx, te, None);
        let (a, b) = self.poly.edge(e);
        Ok(profile_of_funnel(&f, a, b))
    }
}

/// Cone pieces of segment `a -> b` inside the triangle entered by `f`.
fn profile_of_funnel(f: &Funnel, a: Point, b: Point) -> Vec<ProfilePiece> {
    let mut pieces: Vec<ProfilePiece> = Vec::new();
    for k in 0..f.nodes.len() {
        if let Some((t0, t1)) = f.cone_interval(k, a, b) {
            let node = f.nodes[k];
            pieces.push(ProfilePiece { t0, t1, apex: node.id, apex_pos: node.p, offset: node.d });
        }
    }
    if pieces.is_empty() {
        let node = f.nodes[f.tangent(a.midpoint(b))];
        return vec![ProfilePiece { t0: 0.0, t1: 1.0, apex: node.id, apex_pos: node.p, offset: node.d }];
    }
    pieces.sort_by(|p, q| p.t0.total_cmp(&q.t0));
    pieces[0].t0 = 0.0;
    let last = pieces.len() - 1;
    pieces[last].t1 = 1.0;
    for i in 0..last {
        pieces[i].t1 = pieces[i + 1].t0;
    }
    pieces.retain(|p| p.t1 > p.t0);
    pieces
}

/// Shortest path between two points of `poly`.
pub fn shortest_path(poly: &SimplePolygon, x: Point, y: Point) -> Result<GeodesicPath> {
    Geodesy::new(poly.clone()).shortest_path(x, y)
}

/// Geodesic distance between two points of `poly`.
pub fn geodesic_distance(poly: &SimplePolygon, x: Point, y: Point) -> Result<f64> {
    Geodesy::new(poly.clone()).distance(x, y)
}

/// Shortest-path tree of `root` over the vertices of `poly`.
pub fn shortest_path_tree(poly: &SimplePolygon, root: Point) -> Result<ShortestPathTree> {
    Ok(Geodesy::new(poly.clone()).point_map(root)?.tree())
}

/// Shortest-path map of `root` over `poly`.
pub fn shortest_path_map(poly: &SimplePolygon, root: Point) -> Result<(Geodesy, ShortestPathMap)> {
    let geo = Geodesy::new(poly.clone());
    let map = geo.point_map(root)?;
    Ok((geo, map))
}

/// Samples `d(a, x)` at `k` evenly spaced points `x` of `π(b, c)` and checks
/// that the sequence is convex (within 1e-7) and never exceeds
/// `max(d(a, b), d(a, c))` by more than 1e-9. Returns false when a point is
/// outside the polygon.
pub fn path_convexity_check(poly: &SimplePolygon, a: Point, b: Point, c: Point, k: usize) -> bool {
    let geo = Geodesy::new(poly.clone());
    let Ok(path) = geo.shortest_path(b, c) else {
        return false;
    };
    let Ok(map) = geo.point_map(a) else {
        return false;
    };
    let k = k.max(3);
    let vals: Vec<f64> = (0..k)
        .map(|s| map.distance(&geo, path.point_at_length(path.length * s as f64 / (k - 1) as f64)))
        .collect();
    let bound = vals[0].max(vals[k - 1]) + 1e-9;
    vals.iter().all(|&v| v <= bound) && vals.windows(3).all(|w| w[0] + w[2] - 2.0 * w[1] >= -1e-7)
}

/// True when `path` is a locally taut polyline inside `poly`: every bend is
/// at a reflex vertex with the polygon exterior inside the bend, and every
/// segment stays in the polygon.
pub fn path_is_taut(poly: &SimplePolygon, path: &GeodesicPath) -> bool {
    let pts = &path.points;
    let n = poly.n();
    for w in pts.windows(2) {
        if !segment_inside(poly, w[0], w[1]) {
            return false;
        }
    }
    for i in 1..pts.len().saturating_sub(1) {
        let (p, v, q) = (pts[i - 1], pts[i], pts[i + 1]);
        let Some(k) = (0..n).find(|&k| poly.v(k) == v) else {
            return false;
        };
        if orient(p, v, q) == 0 {
            continue;
        }
        if !poly.is_reflex(k) {
            return false;
        }
        // Both boundary directions at v must lie in the convex bend sector.
        let turn = orient(p, v, q);
        for w in [poly.v(poly.prev(k)), poly.v(k + 1)] {
            let a = orient(v, p, w);
            let b = orient(v, w, q);
            if a == turn || b == turn {
                return false;
            }
        }
    }
    true
}

/// True when the closed segment `ab` lies in the closed polygon.
pub fn segment_inside(poly: &SimplePolygon, a: Point, b: Point) -> bool {
    let n = poly.n();
    for k in 0..n {
        let (c, d) = poly.edge(k);
        if segments_cross_properly(a, b, c, d) {
            return false;
        }
    }
    // Split at polygon vertices lying on the segment and test midpoints.
    let mut ts = vec![0.0, 1.0];
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return poly.contains(a);
    }
    for k in 0..n {
        let v = poly.v(k);
        if crate::geom::on_segment(v, a, b) {
            ts.push((v - a).dot(ab) / len2);
        }
    }
    ts.sort_by(f64::total_cmp);
    let tol = 1e-12 * poly.diameter_bound();
    for w in ts.windows(2) {
        if w[1] - w[0] <= 0.0 {
            continue;
        }
        let m = a.lerp(b, 0.5 * (w[0] + w[1]));
        if poly.locate_with_tol(m, tol) == Containment::Outside {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn square_diagonal_is_straight() {
        let g = Geodesy::new(square());
        let p = g.shortest_path(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        assert!((p.length - 2f64.sqrt()).abs() < EPS);
        assert!(p.anchors.is_empty());
    }

    #[test]
    fn lshape_path_wraps_reflex_vertex() {
        let g = Geodesy::new(lshape());
        let p = g.shortest_path(Point::new(0.5, 1.75), Point::new(1.75, 0.5)).unwrap();
        let expect = Point::new(0.5, 1.75).dist(Point::new(1.0, 1.0)) + Point::new(1.0, 1.0).dist(Point::new(1.75, 0.5));
        assert!((p.length - expect).abs() < EPS);
        assert!((p.length - 1.8027756).abs() < 1e-7);
        assert_eq!(p.anchors, vec![3]);
        assert!(path_is_taut(g.polygon(), &p));
    }

    #[test]
    fn lshape_tree_parent() {
        let t = shortest_path_tree(&lshape(), Point::new(1.75, 0.25)).unwrap();
        // Vertex (0,2) is v1 and is reached around (1,1) = v3.
        assert_eq!(t.parent[1], Some(3));
        assert!((t.dist[1] - (Point::new(1.75, 0.25).dist(Point::new(1.0, 1.0)) + 2f64.sqrt())).abs() < EPS);
    }

    #[test]
    fn lshape_map_apex() {
        let (g, m) = shortest_path_map(&lshape(), Point::new(1.75, 0.25)).unwrap();
        let a = m.anchor(&g, Point::new(0.5, 1.75)).unwrap();
        assert_eq!(a.id, 3);
        let total: f64 = m.cells().iter().map(|c| polygon_area(&c.region)).sum();
        assert!((total - 3.0).abs() < 1e-9);
    }

    #[test]
    fn vertex_maps_are_symmetric() {
        let g = Geodesy::new(lshape());
        for a in 0..6 {
            for b in 0..6 {
                assert!((g.vertex_distance(a, b) - g.vertex_distance(b, a)).abs() < EPS);
            }
        }
        assert!((g.vertex_distance(1, 5) - 2.0 * 2f64.sqrt()).abs() < EPS);
    }

    #[test]
    fn edge_profile_matches_distance() {
        let g = Geodesy::new(lshape());
        let x = Point::new(0.25, 1.8);
        for e in 0..6 {
            let prof = g.edge_profile_from(x, e).unwrap();
            let (a, b) = g.polygon().edge(e);
            for piece in &prof {
                let t = 0.5 * (piece.t0 + piece.t1);
                let q = a.lerp(b, t);
                assert!((piece.distance(q) - g.distance(x, q).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn distance_is_convex_along_paths() {
        let p = |x, y| Point::new(x, y);
        let sq = square();
        assert!(path_convexity_check(&sq, p(0.2, 0.7), p(0.0, 0.0), p(1.0, 0.3), 32));
        let l = lshape();
        assert!(path_convexity_check(&l, p(0.25, 1.75), p(1.75, 0.25), p(0.25, 0.25), 64));
        // `a` on the path: the maximum sits at an endpoint.
        assert!(path_convexity_check(&l, p(1.0, 1.0), p(0.5, 1.75), p(1.75, 0.5), 64));
    }

    #[test]
    fn outside_point_is_rejected() {
        let g = Geodesy::new(lshape());
        assert!(matches!(g.distance(Point::new(1.5, 1.5), Point::new(0.1, 0.1)), Err(GeoError::PointOutside(..))));
    }
}
