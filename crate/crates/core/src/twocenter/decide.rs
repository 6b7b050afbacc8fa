//! Decision procedure for one edge pair: is there a 2-center of radius `r`
//! whose partition points lie on `e_i` and `e_j`?
//!
//! With `I_1`, `I_2` the intersections of the radius-`r` disks around the
//! vertices of the two sides, a center `x ∈ I_1` covers the piece
//! `[φ_1(x), 1]` of `e_i` and `[0, ψ_1(x)]` of `e_j`; `y ∈ I_2` covers
//! `[0, φ_2(y)]` and `[ψ_2(y), 1]`. The answer is yes iff some pair of
//! boundary points satisfies `φ_1(x) ≤ φ_2(y)` and `ψ_2(y) ≤ ψ_1(x)`.
//! Both boundaries are split into pieces where the functions are monotone and
//! every pair of pieces is tested.

use super::RadiusTable;
use crate::disks::{circle_in_convex, disks_intersection, edge_sublevel, ArcGeom, BoundaryArc, DiskIntersection};
use crate::error::{GeoError, Result};
use crate::geodesic::{Geodesy, ShortestPathMap};
use crate::geom::Point;
use crate::numeric::{bracket_root, golden_min, last_true, sampled_min};
use crate::onecenter::restricted_radius;
use crate::polygon::BoundaryCoord;
use crate::voronoi::{farthest_voronoi, FarthestVoronoi};
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Step below which coverage values count as equal.
const FLAT: f64 = 1e-12;
/// Slack allowed when checking a witness.
const WITNESS_TOL: f64 = 1e-9;

/// Centers and partition of a yes answer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub c1: Point,
    pub c2: Point,
    pub alpha: BoundaryCoord,
    pub beta: BoundaryCoord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionStage {
    /// A side alone needs a larger radius.
    ScreenNo,
    /// A vertex partition already works.
    ScreenYes,
    /// `I_1` or `I_2` is empty.
    Empty,
    /// Decided by the boundary search.
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionOutcome {
    pub answer: bool,
    pub witness: Option<Witness>,
    pub stage: DecisionStage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventTag {
    /// End of a monotone piece.
    End,
    /// Endpoint of a finer arc.
    T1,
    /// `φ_1` passes a subedge endpoint of `e_i`.
    T2,
    /// `ψ_1` passes a subedge endpoint of `e_j`.
    T3,
}

/// Shape of one intersection boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionStats {
    pub side: u8,
    pub sites: usize,
    pub arcs: usize,
    pub circular_arcs: usize,
    pub contiguous: bool,
}

/// Coverage values sampled along one monotone piece of `∂I_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageProfile {
    pub side: u8,
    pub positions: Vec<f64>,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
}

/// Events of one piece of `∂I_1` with the matching positions on a piece of
/// `∂I_2`, in traversal order. `±inf` marks an empty range.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRun {
    pub events: Vec<(f64, EventTag)>,
    pub mu1: Vec<f64>,
    pub mu2: Vec<f64>,
}

/// Record of the work done by decisions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DecisionTrace {
    pub intersections: Vec<IntersectionStats>,
    pub subchain_counts: Vec<usize>,
    pub profiles: Vec<CoverageProfile>,
    pub runs: Vec<EventRun>,
    /// Largest adjustment made to keep event thresholds monotone.
    pub max_clamp: f64,
    pub pair_tests: usize,
    /// Searches where the two ranges on the partner piece have opposite kinds.
    pub mu_searches: usize,
    /// Build the event run of every such search, even when an end check
    /// settles it. The answer is unchanged.
    pub full_runs: bool,
}

impl DecisionTrace {
    /// A trace that records every event run.
    pub fn with_full_runs() -> Self {
        DecisionTrace { full_runs: true, ..Default::default() }
    }
}

/// Radius-independent data for one edge pair.
#[derive(Debug)]
pub struct PairContext<'a> {
    pub table: &'a RadiusTable<'a>,
    pub i: usize,
    pub j: usize,
    /// Vertices `v_{i+1} .. v_j` and `v_{j+1} .. v_i`.
    pub sites1: Vec<usize>,
    pub sites2: Vec<usize>,
    /// Largest radius for which a side alone fails: `max(r(v_{i+1}, v_j), r(v_{j+1}, v_i))`.
    pub lower: f64,
    /// Radius from which a vertex partition works.
    pub upper: f64,
    yes1: f64,
    yes2: f64,
    subedges_i: OnceLock<Vec<f64>>,
    subedges_j: OnceLock<Vec<f64>>,
    fvd1: OnceLock<FarthestVoronoi>,
    fvd2: OnceLock<FarthestVoronoi>,
}

fn chain(a: usize, b: usize, n: usize) -> Vec<usize> {
    let mut v = vec![a % n];
    let mut k = a % n;
    while k != b % n {
        k = (k + 1) % n;
        v.push(k);
    }
    v
}

fn sign(d: f64) -> i8 {
    if d > FLAT {
        1
    } else if d < -FLAT {
        -1
    } else {
        0
    }
}

impl<'a> PairContext<'a> {
    pub fn new(table: &'a RadiusTable<'a>, i: usize, j: usize) -> Result<Self> {
        let n = table.n();
        if i >= n || j >= n {
            return Err(GeoError::BadEdge(i.max(j)));
        }
        if i == j {
            return Err(GeoError::DegeneratePartition);
        }
        let (i1, j1) = ((i + 1) % n, (j + 1) % n);
        let no1 = table.get(i1, j);
        let no2 = table.get(j1, i);
        let yes1 = if j1 == i { table.whole() } else { table.get(i, j1) };
        let yes2 = if i1 == j { table.whole() } else { table.get(j, i1) };
        let lower = no1.max(no2);
        Ok(PairContext {
            table,
            i,
            j,
            sites1: chain(i1, j, n),
            sites2: chain(j1, i, n),
            lower,
            upper: lower.max(yes1.min(yes2)),
            yes1,
            yes2,
            subedges_i: OnceLock::new(),
            subedges_j: OnceLock::new(),
            fvd1: OnceLock::new(),
            fvd2: OnceLock::new(),
        })
    }

    pub fn geo(&self) -> &'a Geodesy {
        self.table.geo()
    }

    fn scale(&self) -> f64 {
        self.geo().polygon().diameter_bound().max(1.0)
    }

    fn subedges(&self, e: usize) -> Vec<f64> {
        let geo = self.geo();
        let mut out = vec![0.0, 1.0];
        for k in 0..geo.n() {
            out.extend(geo.vertex_map(k).edge_profile(e).iter().skip(1).map(|p| p.t0));
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        out
    }

    /// Subedge endpoints of `e_i`: parameters where the shortest path from
    /// some vertex changes its last anchor.
    pub fn subedges_i(&self) -> &[f64] {
        self.subedges_i.get_or_init(|| self.subedges(self.i))
    }

    pub fn subedges_j(&self) -> &[f64] {
        self.subedges_j.get_or_init(|| self.subedges(self.j))
    }

    pub fn fvd1(&self) -> &FarthestVoronoi {
        self.fvd1.get_or_init(|| farthest_voronoi(self.geo(), &self.sites1))
    }

    pub fn fvd2(&self) -> &FarthestVoronoi {
        self.fvd2.get_or_init(|| farthest_voronoi(self.geo(), &self.sites2))
    }

    pub fn decide(&self, r: f64) -> DecisionOutcome {
        self.decide_traced(r, &mut DecisionTrace::default())
    }

    pub fn decide_traced(&self, r: f64, trace: &mut DecisionTrace) -> DecisionOutcome {
        let no = DecisionOutcome { answer: false, witness: None, stage: DecisionStage::ScreenNo };
        if !(r >= self.lower) {
            return no;
        }
        if r >= self.yes1 {
            let w = self.vertex_witness(BoundaryCoord::new(self.i, 0.0), BoundaryCoord::new(self.j, 1.0), 1);
            return DecisionOutcome { answer: true, witness: Some(w), stage: DecisionStage::ScreenYes };
        }
        if r >= self.yes2 {
            let w = self.vertex_witness(BoundaryCoord::new(self.i, 1.0), BoundaryCoord::new(self.j, 0.0), 2);
            return DecisionOutcome { answer: true, witness: Some(w), stage: DecisionStage::ScreenYes };
        }
        let geo = self.geo();
        let i1 = disks_intersection(geo, &self.sites1, r);
        let i2 = disks_intersection(geo, &self.sites2, r);
        for (t, d) in [(1u8, &i1), (2, &i2)] {
            trace.intersections.push(IntersectionStats {
                side: t,
                sites: d.sites.len(),
                arcs: d.arcs.len(),
                circular_arcs: d.circular_arc_count(),
                contiguous: d.site_runs_contiguous(),
            });
        }
        if i1.empty || i2.empty {
            return DecisionOutcome { answer: false, witness: None, stage: DecisionStage::Empty };
        }
        let s1 = Side::new(self, 1, r, &i1, trace);
        let s2 = Side::new(self, 2, r, &i2, trace);
        for a in &s1.pieces {
            for b in &s2.pieces {
                trace.pair_tests += 1;
                if let Some((u, v)) = pair_test(&s1, a, &s2, b, trace) {
                    if let Some(w) = self.witness_from(&s1, u, &s2, v, r) {
                        return DecisionOutcome { answer: true, witness: Some(w), stage: DecisionStage::Search };
                    }
                }
            }
        }
        DecisionOutcome { answer: false, witness: None, stage: DecisionStage::Search }
    }

    /// Centers of the two sides of a vertex partition. When `α` and `β`
    /// meet, the side listed in `whole` is the entire polygon and the other
    /// is the meeting point.
    fn vertex_witness(&self, alpha: BoundaryCoord, beta: BoundaryCoord, whole: u8) -> Witness {
        let geo = self.geo();
        let (pa, pb) = (geo.polygon().point_at(alpha), geo.polygon().point_at(beta));
        let (c1, c2) = if pa == pb {
            let c = crate::onecenter::one_center(geo).center;
            if whole == 1 {
                (c, pa)
            } else {
                (pa, c)
            }
        } else {
            partition_centers(geo, alpha, beta)
        };
        Witness { c1, c2, alpha, beta }
    }

    fn witness_from(&self, s1: &Side, u: f64, s2: &Side, v: f64, r: f64) -> Option<Witness> {
        let (f1, g1) = s1.fg(u);
        let (f2, g2) = s2.fg(v);
        if f1 > f2 + FLAT || g2 > g1 + FLAT {
            return None;
        }
        let geo = self.geo();
        let poly = geo.polygon();
        let alpha = BoundaryCoord::new(self.i, (0.5 * (f1 + f2)).clamp(0.0, 1.0));
        let beta = BoundaryCoord::new(self.j, (0.5 * (g1 + g2)).clamp(0.0, 1.0));
        let (c1, c2) = (s1.point_at(u), s2.point_at(v));
        let tol = r + WITNESS_TOL * self.scale();
        let ends = [poly.point_at(alpha), poly.point_at(beta)];
        for (c, sites) in [(c1, &self.sites1), (c2, &self.sites2)] {
            let map = geo.point_map_lite(c).ok()?;
            let far = sites.iter().map(|&k| map.vertex_distance(k)).chain(ends.iter().map(|&q| map.distance(geo, q)));
            if far.fold(0.0, f64::max) > tol {
                return None;
            }
        }
        Some(Witness { c1, c2, alpha, beta })
    }
}

/// Restricted centers of `P(α, β)` and `P(β, α)` for distinct points.
pub(crate) fn partition_centers(geo: &Geodesy, alpha: BoundaryCoord, beta: BoundaryCoord) -> (Point, Point) {
    let poly = geo.polygon();
    let (pa, pb) = (poly.point_at(alpha), poly.point_at(beta));
    let c1 = restricted_radius(geo, alpha, beta).map(|r| r.center).unwrap_or(pa);
    let c2 = restricted_radius(geo, beta, alpha).map(|r| r.center).unwrap_or(pb);
    (c1, c2)
}

/// Decide `r ≥ r*_ij` for the pair the context was built for.
pub fn decide(ctx: &PairContext, pair: &super::CandidatePair, r: f64) -> Result<DecisionOutcome> {
    if pair.i != ctx.i || pair.j != ctx.j {
        return Err(GeoError::ContextMismatch(ctx.i, ctx.j));
    }
    if !(r >= 0.0) {
        return Err(GeoError::NegativeRadius(r));
    }
    Ok(ctx.decide(r))
}

/// Monotone piece `[a, b]` of the boundary cycle (`b` may exceed the cycle
/// length) with the directions of both coverage functions.
#[derive(Debug, Clone)]
struct Piece {
    a: f64,
    b: f64,
    df: i8,
    dg: i8,
    /// Finer-arc endpoints strictly inside.
    cuts: Vec<f64>,
}

/// One intersection boundary as a closed curve parametrized by arc length.
struct Side<'c, 'a> {
    ctx: &'c PairContext<'a>,
    t: u8,
    r: f64,
    arcs: Vec<BoundaryArc>,
    cum: Vec<f64>,
    total: f64,
    point: Option<Point>,
    cache: RefCell<HashMap<u64, (f64, f64)>>,
    pieces: Vec<Piece>,
}

impl<'c, 'a> Side<'c, 'a> {
    fn new(ctx: &'c PairContext<'a>, t: u8, r: f64, d: &DiskIntersection, trace: &mut DecisionTrace) -> Self {
        let mut cum = vec![0.0];
        for a in &d.arcs {
            cum.push(cum.last().unwrap() + a.length());
        }
        let total = *cum.last().unwrap();
        let point = if d.arcs.is_empty() || total <= 0.0 { d.point.or(d.arcs.first().map(|a| a.start)) } else { None };
        let mut side = Side {
            ctx,
            t,
            r,
            arcs: d.arcs.clone(),
            cum,
            total,
            point,
            cache: RefCell::new(HashMap::new()),
            pieces: Vec::new(),
        };
        side.pieces = side.split();
        trace.subchain_counts.push(side.pieces.len());
        for p in &side.pieces {
            let positions: Vec<f64> = (0..=8).map(|k| p.a + (p.b - p.a) * k as f64 / 8.0).collect();
            let vals: Vec<(f64, f64)> = positions.iter().map(|&s| side.fg(s)).collect();
            trace.profiles.push(CoverageProfile {
                side: t,
                positions,
                phi: vals.iter().map(|v| v.0).collect(),
                psi: vals.iter().map(|v| v.1).collect(),
            });
        }
        side
    }

    fn point_at(&self, s: f64) -> Point {
        if let Some(p) = self.point {
            return p;
        }
        let s = s.rem_euclid(self.total);
        let k = self.cum.partition_point(|&c| c <= s).saturating_sub(1).min(self.arcs.len() - 1);
        let len = self.cum[k + 1] - self.cum[k];
        let f = if len > 0.0 { ((s - self.cum[k]) / len).clamp(0.0, 1.0) } else { 0.0 };
        self.arcs[k].point_at(f)
    }

    /// `(φ_t, ψ_t)` at position `s`.
    fn fg(&self, s: f64) -> (f64, f64) {
        let key = s.to_bits();
        if let Some(&v) = self.cache.borrow().get(&key) {
            return v;
        }
        let v = self.coverage(self.point_at(s));
        self.cache.borrow_mut().insert(key, v);
        v
    }

    fn coverage(&self, x: Point) -> (f64, f64) {
        let geo = self.ctx.geo();
        // Boundary points of I_t sit at distance r up to rounding.
        let r = self.r + FLAT * self.ctx.scale();
        let on_i = edge_cover(geo, x, self.ctx.i, r);
        let on_j = edge_cover(geo, x, self.ctx.j, r);
        // Missing coverage gets values no partner can match.
        if self.t == 1 {
            (on_i.map_or(2.0, |v| v.0), on_j.map_or(-1.0, |v| v.1))
        } else {
            (on_i.map_or(-1.0, |v| v.1), on_j.map_or(2.0, |v| v.0))
        }
    }

    /// Maps whose cells cut the boundary into finer arcs.
    fn cut_maps(&self) -> [&'a ShortestPathMap; 4] {
        let geo = self.ctx.geo();
        let n = geo.n();
        let (i, j) = (self.ctx.i, self.ctx.j);
        [geo.vertex_map(i), geo.vertex_map((i + 1) % n), geo.vertex_map(j), geo.vertex_map((j + 1) % n)]
    }

    /// Arc-length positions of finer-arc endpoints, sorted in `[0, total)`.
    fn finer_cuts(&self) -> Vec<f64> {
        let maps = self.cut_maps();
        let mut cuts: Vec<f64> = self.cum[..self.arcs.len()].to_vec();
        for (k, arc) in self.arcs.iter().enumerate() {
            let len = self.cum[k + 1] - self.cum[k];
            if len <= 0.0 {
                continue;
            }
            match arc.geom {
                ArcGeom::Circle { center, radius, from, to } => {
                    for &(tri, _, _) in &arc.spans {
                        for m in &maps {
                            for cell in m.cells_in_triangle(tri) {
                                for (lo, hi) in circle_in_convex(center, radius, &cell.region).arcs() {
                                    for theta in [lo, hi] {
                                        for w in -2..=2 {
                                            let th = theta + 2.0 * PI * w as f64;
                                            if th < from && th > to {
                                                cuts.push(self.cum[k] + len * (from - th) / (from - to));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                ArcGeom::Edge { edge, t0, t1 } => {
                    for m in &maps {
                        for p in m.edge_profile(edge).iter().skip(1) {
                            if p.t0 > t0 && p.t0 < t1 {
                                cuts.push(self.cum[k] + len * (p.t0 - t0) / (t1 - t0));
                            }
                        }
                    }
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        let tol = 1e-12 * self.total;
        cuts.dedup_by(|a, b| (*a - *b).abs() <= tol);
        let mut extra = self.endpoint_crossings(&cuts, &maps);
        cuts.append(&mut extra);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= tol);
        cuts
    }

    /// Positions where the boundary crosses distance `r` from `v_i`,
    /// `v_{i+1}`, `v_j` or `v_{j+1}`: there a coverage function starts or
    /// stops saturating at an edge end. Within a finer arc each distance is
    /// Euclidean from a fixed anchor, so the crossings are circle or segment
    /// intersections.
    fn endpoint_crossings(&self, cuts: &[f64], maps: &[&ShortestPathMap; 4]) -> Vec<f64> {
        let geo = self.ctx.geo();
        let mut out = Vec::new();
        for (k, &c) in cuts.iter().enumerate() {
            let next = cuts.get(k + 1).copied().unwrap_or(self.total);
            if next <= c {
                continue;
            }
            let mid = 0.5 * (c + next);
            let a = self.cum.partition_point(|&x| x <= mid).saturating_sub(1).min(self.arcs.len() - 1);
            let arc = &self.arcs[a];
            let len = self.cum[a + 1] - self.cum[a];
            let q = self.point_at(mid);
            for m in maps {
                let Some(anchor) = m.anchor(geo, q) else { continue };
                let rho = self.r - anchor.offset;
                if rho <= 0.0 {
                    continue;
                }
                let mut hits = Vec::new();
                match arc.geom {
                    ArcGeom::Circle { center, radius, from, to } => {
                        for (lo, hi) in crate::disks::circle_in_disk(center, radius, anchor.pos, rho).arcs() {
                            for theta in [lo, hi] {
                                for w in -2..=2 {
                                    let th = theta + 2.0 * PI * w as f64;
                                    if th < from && th > to {
                                        hits.push(self.cum[a] + len * (from - th) / (from - to));
                                    }
                                }
                            }
                        }
                    }
                    ArcGeom::Edge { .. } => {
                        if let Some((t0, t1)) = crate::disks::segment_in_disk(arc.start, arc.end, anchor.pos, rho) {
                            hits.extend([t0, t1].iter().filter(|t| **t > 0.0 && **t < 1.0).map(|t| self.cum[a] + len * t));
                        }
                    }
                }
                out.extend(hits.into_iter().filter(|&h| h > c && h < next));
            }
        }
        out
    }

    /// Split the cycle at the extrema of both coverage functions.
    fn split(&self) -> Vec<Piece> {
        if self.point.is_some() {
            return vec![Piece { a: 0.0, b: 0.0, df: 0, dg: 0, cuts: vec![] }];
        }
        let total = self.total;
        let cuts = self.finer_cuts();
        let mut samples = Vec::with_capacity(3 * cuts.len() + 16);
        for (k, &c) in cuts.iter().enumerate() {
            let next = cuts.get(k + 1).copied().unwrap_or(total + cuts[0]);
            samples.extend((0..4).map(|q| c + (next - c) * q as f64 / 4.0));
        }
        if samples.len() < 48 {
            samples.extend((0..48).map(|k| total * k as f64 / 48.0));
        }
        let mut samples: Vec<f64> = samples.into_iter().map(|s| s.rem_euclid(total)).collect();
        samples.sort_by(f64::total_cmp);
        samples.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * total);
        let vals: Vec<(f64, f64)> = samples.iter().map(|&s| self.fg(s)).collect();
        let mut ends = Vec::new();
        for which in 0..2 {
            let pick = |v: &(f64, f64)| if which == 0 { v.0 } else { v.1 };
            let seq: Vec<f64> = vals.iter().map(pick).collect();
            for (lo, hi, is_max) in extrema(&samples, &seq, total) {
                let sgn = if is_max { -1.0 } else { 1.0 };
                let (x, _) = golden_min(lo, hi, 1e-12 * total, |s| sgn * pick(&self.fg(s)));
                ends.push(x.rem_euclid(total));
            }
        }
        ends.sort_by(f64::total_cmp);
        ends.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * total);
        let bounds: Vec<(f64, f64)> = match ends.len() {
            0 => vec![(0.0, total)],
            1 => vec![(ends[0], ends[0] + total)],
            m => (0..m).map(|k| (ends[k], if k + 1 < m { ends[k + 1] } else { ends[0] + total })).collect(),
        };
        bounds
            .into_iter()
            .map(|(a, b)| {
                let (fa, ga) = self.fg(a);
                let (fb, gb) = self.fg(b);
                let inner = cuts
                    .iter()
                    .flat_map(|&c| [c, c + total])
                    .filter(|&c| c > a && c < b)
                    .collect();
                Piece { a, b, df: sign(fb - fa), dg: sign(gb - ga), cuts: inner }
            })
            .collect()
    }
}

/// Parameter interval of edge `e` within geodesic distance `r` of `x`.
pub(crate) fn edge_cover(geo: &Geodesy, x: Point, e: usize, r: f64) -> Option<(f64, f64)> {
    let pieces = geo.edge_profile_from(x, e).ok()?;
    let (a, b) = geo.polygon().edge(e);
    edge_sublevel(&pieces, a, b, r).map(|(lo, hi)| (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0)))
}

/// Brackets `(lo, hi, is_max)` around the turning points of a cyclic
/// sequence sampled at sorted positions; `hi` may exceed `total`.
fn extrema(pos: &[f64], vals: &[f64], total: f64) -> Vec<(f64, f64, bool)> {
    let m = pos.len();
    if m < 2 {
        return vec![];
    }
    let at = |k: usize| pos[k % m] + total * (k / m) as f64;
    let step = |k: usize| sign(vals[(k + 1) % m] - vals[k % m]);
    let Some(k0) = (0..m).find(|&k| step(k) != 0) else {
        return vec![];
    };
    let mut out = Vec::new();
    let mut last = k0;
    for k in k0 + 1..=k0 + m {
        let s = step(k);
        if s == 0 {
            continue;
        }
        if s != step(last) {
            out.push((at(last), at(k + 1), step(last) > 0));
        }
        last = k;
    }
    out
}

/// Largest `v` in `[a, b]` with `pred(v)` for a predicate holding on a
/// prefix; `-inf` when it fails at `a`.
fn sup_where(a: f64, b: f64, pred: impl FnMut(f64) -> bool) -> f64 {
    let mut pred = pred;
    if !pred(a) {
        return f64::NEG_INFINITY;
    }
    last_true(a, b, (b - a) * 1e-13, pred)
}

/// Smallest `v` in `[a, b]` with `pred(v)` for a predicate holding on a
/// suffix; `+inf` when it fails at `b`.
fn inf_where(a: f64, b: f64, mut pred: impl FnMut(f64) -> bool) -> f64 {
    if !pred(b) {
        return f64::INFINITY;
    }
    -last_true(-b, -a, (b - a) * 1e-13, |x| pred(-x))
}

/// Search a piece pair for `u` on `p1`, `v` on `p2` with `φ_1(u) ≤ φ_2(v)`
/// and `ψ_2(v) ≤ ψ_1(u)`.
fn pair_test(s1: &Side, p1: &Piece, s2: &Side, p2: &Piece, trace: &mut DecisionTrace) -> Option<(f64, f64)> {
    let (f1a, g1a) = s1.fg(p1.a);
    let (f1b, g1b) = s1.fg(p1.b);
    let (f2a, g2a) = s2.fg(p2.a);
    let (f2b, g2b) = s2.fg(p2.b);
    if f1a.min(f1b) > f2a.max(f2b) + FLAT || g1a.max(g1b) + FLAT < g2a.min(g2b) {
        return None;
    }
    // A(u) = {v : φ_2(v) ≥ φ_1(u)} and B(u) = {v : ψ_2(v) ≤ ψ_1(u)} are
    // prefixes or suffixes of p2.
    let a_prefix = p2.df <= 0;
    let b_prefix = p2.dg >= 0;
    if a_prefix == b_prefix {
        let v = if a_prefix { p2.a } else { p2.b };
        let (cf, cg) = s2.fg(v);
        return best_on_piece(s1, p1, cf, cg).map(|u| (u, v));
    }
    mu_search(s1, p1, s2, p2, a_prefix, trace)
}

/// `u` on the piece maximizing `min(cf - φ_1(u), ψ_1(u) - cg)` if that is
/// nonnegative.
fn best_on_piece(s1: &Side, p: &Piece, cf: f64, cg: f64) -> Option<f64> {
    let h = |u: f64| {
        let (f, g) = s1.fg(u);
        (cf - f).min(g - cg)
    };
    let d1 = -p.df;
    let d2 = p.dg;
    let u = if d1 >= 0 && d2 >= 0 {
        p.b
    } else if d1 <= 0 && d2 <= 0 {
        p.a
    } else {
        let diff = |u: f64| {
            let (f, g) = s1.fg(u);
            (cf - f) - (g - cg)
        };
        let (da, db) = (diff(p.a), diff(p.b));
        if da.signum() == db.signum() {
            if h(p.a) >= h(p.b) {
                p.a
            } else {
                p.b
            }
        } else {
            bracket_root(p.a, p.b, 1e-13 * (p.b - p.a).max(1e-300), diff)
        }
    };
    [u, p.a, p.b].into_iter().find(|&x| h(x) >= 0.0)
}

/// The case where `A(u)` and `B(u)` are of opposite kinds: with
/// `μ_1(u)` the far end of the allowed range and `μ_2(u)` the near end,
/// a partner exists iff `μ_2(u) ≤ μ_1(u)`. Both are monotone in `u`; the
/// piece is scanned over its events.
fn mu_search(s1: &Side, p1: &Piece, s2: &Side, p2: &Piece, a_prefix: bool, trace: &mut DecisionTrace) -> Option<(f64, f64)> {
    let (a2, b2) = (p2.a, p2.b);
    let f2 = |v: f64| s2.fg(v).0;
    let g2 = |v: f64| s2.fg(v).1;
    // Positions on p2 for thresholds (cf, cg) = (φ_1(u), ψ_1(u)).
    let mu = |cf: f64, cg: f64| -> (f64, f64) {
        if a_prefix {
            (sup_where(a2, b2, |v| f2(v) >= cf), inf_where(a2, b2, |v| g2(v) <= cg))
        } else {
            (sup_where(a2, b2, |v| g2(v) <= cg), inf_where(a2, b2, |v| f2(v) >= cf))
        }
    };
    // Directions of μ_1 and μ_2 along p1.
    let (d1, d2) = if a_prefix { (-p1.df, -p1.dg) } else { (p1.dg, p1.df) };
    trace.mu_searches += 1;
    if d1 * d2 < 0 {
        // μ_1 - μ_2 is monotone: only the ends matter.
        for u in [p1.a, p1.b] {
            let (cf, cg) = s1.fg(u);
            let (m1, m2) = mu(cf, cg);
            if m2 <= m1 {
                return Some((u, pick_between(m1, m2)));
            }
        }
        return None;
    }
    let dir = if d1 != 0 { d1 } else { d2 };
    // Cheap end checks before generating events.
    let ends: Vec<(f64, f64)> = [p1.a, p1.b].iter().map(|&u| s1.fg(u)).map(|(cf, cg)| mu(cf, cg)).collect();
    let mut settled = None;
    for (k, &(m1, m2)) in ends.iter().enumerate() {
        if m2 <= m1 {
            settled = Some(Some((if k == 0 { p1.a } else { p1.b }, pick_between(m1, m2))));
            break;
        }
    }
    let (first, last) = if dir >= 0 { (ends[0], ends[1]) } else { (ends[1], ends[0]) };
    if settled.is_none() && last.0 < first.1 {
        settled = Some(None);
    }
    if let (Some(out), false) = (settled, trace.full_runs) {
        return out;
    }

    let mut events: Vec<(f64, EventTag)> = vec![(p1.a, EventTag::End), (p1.b, EventTag::End)];
    events.extend(p1.cuts.iter().map(|&c| (c, EventTag::T1)));
    let tol = 1e-13 * (p1.b - p1.a).max(1e-300);
    let ctx = s1.ctx;
    let (f1a, g1a) = s1.fg(p1.a);
    let (f1b, g1b) = s1.fg(p1.b);
    for (vals, lo, hi, tag, pick) in [
        (ctx.subedges_i(), f1a, f1b, EventTag::T2, 0usize),
        (ctx.subedges_j(), g1a, g1b, EventTag::T3, 1),
    ] {
        let (mn, mx) = (lo.min(hi), lo.max(hi));
        for &q in vals {
            if q > mn + FLAT && q < mx - FLAT {
                let u = bracket_root(p1.a, p1.b, tol, |u| {
                    let v = s1.fg(u);
                    (if pick == 0 { v.0 } else { v.1 }) - q
                });
                events.push((u, tag));
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    events.dedup_by(|a, b| (a.0 - b.0).abs() <= tol);
    if dir < 0 {
        events.reverse();
    }
    // Thresholds must move so that μ_1 and μ_2 are nondecreasing: for a
    // prefix A both fall, otherwise both rise.
    let falling = a_prefix;
    let mut run = EventRun { events: events.clone(), mu1: Vec::new(), mu2: Vec::new() };
    let (mut cf_prev, mut cg_prev) = (f64::NAN, f64::NAN);
    for &(u, _) in &events {
        let (mut cf, mut cg) = s1.fg(u);
        if !cf_prev.is_nan() {
            let (cf2, cg2) = if falling { (cf.min(cf_prev), cg.min(cg_prev)) } else { (cf.max(cf_prev), cg.max(cg_prev)) };
            trace.max_clamp = trace.max_clamp.max((cf2 - cf).abs()).max((cg2 - cg).abs());
            cf = cf2;
            cg = cg2;
        }
        cf_prev = cf;
        cg_prev = cg;
        let (m1, m2) = mu(cf, cg);
        run.mu1.push(m1);
        run.mu2.push(m2);
    }
    let found = match settled {
        Some(out) => out,
        None => scan_events(s1, s2, p2, a_prefix, &run),
    };
    trace.runs.push(run);
    found
}

fn pick_between(m1: f64, m2: f64) -> f64 {
    0.5 * (m1 + m2)
}

/// Walk consecutive events; test inside an interval only when the
/// monotone bounds leave room.
fn scan_events(s1: &Side, s2: &Side, p2: &Piece, a_prefix: bool, run: &EventRun) -> Option<(f64, f64)> {
    let ev = &run.events;
    for k in 0..ev.len() {
        if run.mu2[k] <= run.mu1[k] {
            return Some((ev[k].0, pick_between(run.mu1[k], run.mu2[k])));
        }
        if k + 1 == ev.len() || run.mu1[k + 1] < run.mu2[k] {
            continue;
        }
        let (lo, hi) = (ev[k].0.min(ev[k + 1].0), ev[k].0.max(ev[k + 1].0));
        if let Some(found) = interval_search(s1, s2, p2, a_prefix, lo, hi) {
            return Some(found);
        }
    }
    None
}

/// Maximize over `u ∈ [lo, hi]` the best slack
/// `H(u) = max_v min(φ_2(v) - φ_1(u), ψ_1(u) - ψ_2(v))`. Along `v` the two
/// terms move in opposite directions, so the inner maximum sits where
/// `φ_2 + ψ_2` crosses `φ_1(u) + ψ_1(u)`.
fn interval_search(s1: &Side, s2: &Side, p2: &Piece, a_prefix: bool, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let (a2, b2) = (p2.a, p2.b);
    let tol = 1e-13 * (b2 - a2).max(1e-300);
    let k = |v: f64| {
        let (f, g) = s2.fg(v);
        f + g
    };
    let best_v = |u: f64| -> (f64, f64) {
        let (f1, g1) = s1.fg(u);
        let target = f1 + g1;
        let v = if a_prefix {
            let s = sup_where(a2, b2, |v| k(v) >= target);
            if s.is_finite() {
                s
            } else {
                a2
            }
        } else {
            let s = inf_where(a2, b2, |v| k(v) >= target);
            if s.is_finite() {
                s
            } else {
                b2
            }
        };
        let slack = |v: f64| {
            let (f2, g2) = s2.fg(v);
            (f2 - f1).min(g1 - g2)
        };
        let alt = if a_prefix { (v + tol).min(b2) } else { (v - tol).max(a2) };
        let (h0, h1) = (slack(v), slack(alt));
        if h0 >= h1 {
            (v, h0)
        } else {
            (alt, h1)
        }
    };
    let (u, neg) = sampled_min(lo, hi, 6, 1e-13 * (hi - lo).max(1e-300), |u| -best_v(u).1);
    (-neg >= 0.0).then(|| (u, best_v(u).0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn square_opposite_edges() {
        let g = Geodesy::new(square());
        let t = RadiusTable::new(&g);
        let ctx = PairContext::new(&t, 0, 2).unwrap();
        let mut trace = DecisionTrace::default();
        let yes = ctx.decide_traced(0.60, &mut trace);
        assert!(yes.answer, "{yes:?}");
        let w = yes.witness.unwrap();
        for q in crate::oracle::random_interior_points(g.polygon(), 500, 3) {
            let d = g.distance(w.c1, q).unwrap().min(g.distance(w.c2, q).unwrap());
            assert!(d <= 0.60 + 1e-7);
        }
        assert!(!ctx.decide(0.50).answer);
        assert!(ctx.decide(0.56).answer);
        assert!(!ctx.decide(0.558).answer);
    }

    #[test]
    fn context_mismatch() {
        let g = Geodesy::new(square());
        let t = RadiusTable::new(&g);
        let ctx = PairContext::new(&t, 0, 2).unwrap();
        let pair = super::super::CandidatePair::new(1, 3, super::super::PairKind::Type1);
        assert_eq!(decide(&ctx, &pair, 0.6), Err(GeoError::ContextMismatch(0, 2)));
    }

    #[test]
    fn extrema_of_cyclic_sequence() {
        let pos: Vec<f64> = (0..8).map(|k| k as f64).collect();
        let vals = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0, 0.0, -1.0];
        let e = extrema(&pos, &vals, 8.0);
        assert_eq!(e.len(), 2);
        assert!(e.iter().any(|&(lo, hi, m)| m && lo <= 3.0 && hi >= 3.0));
        assert!(e.iter().any(|&(lo, hi, m)| !m && lo <= 7.0 && hi >= 7.0));
    }
}
