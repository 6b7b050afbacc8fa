//! Geodesic 2-center: candidate edge pairs, the decision procedure for one
//! pair, per-pair optimization and the global minimum.
//!
//! A 2-center splits the boundary at two points `α ∈ e_i`, `β ∈ e_j`; each
//! center is the 1-center of its side. `r(a, b)` denotes the radius of
//! `P(v_a, v_b)`, the subpolygon bounded by the clockwise chain from `v_a` to
//! `v_b` and the shortest path back.

mod decide;
mod optimize;

pub use decide::{
    decide, CoverageProfile, DecisionOutcome, DecisionStage, DecisionTrace, EventRun, EventTag, IntersectionStats,
    PairContext, Witness,
};
pub use optimize::{optimize_pair, refine_quadruple};

use crate::geodesic::Geodesy;
use crate::geom::Point;
use crate::onecenter::{one_center, restricted_radius};
use crate::polygon::BoundaryCoord;
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

/// Lazily filled table of `r(v_a, v_b)` over vertex pairs.
#[derive(Debug)]
pub struct RadiusTable<'a> {
    geo: &'a Geodesy,
    cells: Vec<OnceLock<f64>>,
    whole: OnceLock<f64>,
}

impl<'a> RadiusTable<'a> {
    pub fn new(geo: &'a Geodesy) -> Self {
        let n = geo.n();
        RadiusTable { geo, cells: (0..n * n).map(|_| OnceLock::new()).collect(), whole: OnceLock::new() }
    }

    pub fn geo(&self) -> &'a Geodesy {
        self.geo
    }

    pub fn n(&self) -> usize {
        self.geo.n()
    }

    /// `r(v_a, v_b)`; zero when `a == b`.
    pub fn get(&self, a: usize, b: usize) -> f64 {
        let n = self.n();
        let (a, b) = (a % n, b % n);
        if a == b {
            return 0.0;
        }
        *self.cells[a * n + b].get_or_init(|| {
            restricted_radius(self.geo, BoundaryCoord::vertex(a), BoundaryCoord::vertex(b))
                .map(|r| r.radius)
                .unwrap_or(f64::INFINITY)
        })
    }

    /// Radius of the whole polygon.
    pub fn whole(&self) -> f64 {
        *self.whole.get_or_init(|| one_center(self.geo).radius)
    }

    /// Tolerance for comparing radii.
    pub fn tol(&self) -> f64 {
        1e-12 * self.geo.polygon().diameter_bound().max(1.0)
    }
}

/// Neighbours of the balanced partner of each vertex.
///
/// With `g_k(w) = r(v_k, w) - r(w, v_k)`, nondecreasing as `w` moves
/// clockwise from `v_{k+1}`, `cw[k]` is the last vertex with `g_k < 0` and
/// `ccw[k]` the first with `g_k > 0`. Either is `k` itself when no such vertex
/// exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborMaps {
    pub cw: Vec<usize>,
    pub ccw: Vec<usize>,
}

fn balance(t: &RadiusTable, k: usize, m: usize) -> f64 {
    t.get(k, k + m) - t.get(k + m, k)
}

/// Neighbour maps by binary search on the sign of `g_k`.
pub fn neighbor_maps(t: &RadiusTable) -> NeighborMaps {
    let n = t.n();
    let tol = t.tol();
    let mut cw = vec![0; n];
    let mut ccw = vec![0; n];
    // First m in 1..n with pred(m), or n.
    let first = |pred: &dyn Fn(usize) -> bool| {
        let (mut lo, mut hi) = (1usize, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };
    for k in 0..n {
        let neg_end = first(&|m| balance(t, k, m) >= -tol);
        let pos_start = first(&|m| balance(t, k, m) > tol);
        cw[k] = if neg_end > 1 { (k + neg_end - 1) % n } else { k };
        ccw[k] = if pos_start < n { (k + pos_start) % n } else { k };
    }
    NeighborMaps { cw, ccw }
}

/// Neighbour maps by scanning every partner.
pub fn neighbor_maps_exhaustive(t: &RadiusTable) -> NeighborMaps {
    let n = t.n();
    let tol = t.tol();
    let mut cw = vec![0; n];
    let mut ccw = vec![0; n];
    for k in 0..n {
        let g: Vec<f64> = (1..n).map(|m| balance(t, k, m)).collect();
        cw[k] = g.iter().rposition(|&v| v < -tol).map_or(k, |m| (k + m + 1) % n);
        ccw[k] = g.iter().position(|&v| v > tol).map_or(k, |m| (k + m + 1) % n);
    }
    NeighborMaps { cw, ccw }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    /// `v_j` or `v_{j+1}` is `ccw(i)` or `cw(i+1)`.
    Type1,
    /// `e_j` lies strictly inside the chain from `ccw(i)` to `cw(i+1)`.
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidatePair {
    pub i: usize,
    pub j: usize,
    pub kind: PairKind,
}

impl CandidatePair {
    pub fn new(i: usize, j: usize, kind: PairKind) -> Self {
        CandidatePair { i, j, kind }
    }
}

/// Candidate edge pairs, sorted by `(i, j)`.
pub fn candidate_pairs(t: &RadiusTable) -> Vec<CandidatePair> {
    candidates_from_maps(t.n(), &neighbor_maps(t))
}

pub fn candidates_from_maps(n: usize, maps: &NeighborMaps) -> Vec<CandidatePair> {
    let mut out = Vec::new();
    for i in 0..n {
        let a = maps.ccw[i];
        let b = maps.cw[(i + 1) % n];
        for j in [a, a + n - 1, b, b + n - 1] {
            let j = j % n;
            if j != i {
                out.push(CandidatePair::new(i, j, PairKind::Type1));
            }
        }
        let pos = |x: usize| (x + n - i) % n;
        if pos(a) < pos(b) {
            for m in pos(a) + 1..pos(b).saturating_sub(1) {
                let j = (i + m) % n;
                if j != i {
                    out.push(CandidatePair::new(i, j, PairKind::Type2));
                }
            }
        }
    }
    out.sort();
    out.dedup_by(|x, y| x.i == y.i && x.j == y.j);
    out
}

/// A 2-center with its boundary partition.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCenterResult {
    pub c1: Point,
    pub c2: Point,
    pub radius: f64,
    /// `(α, β)`: `c1` serves `P(α, β)`, `c2` serves `P(β, α)`.
    pub partition: (BoundaryCoord, BoundaryCoord),
    pub edge_pair: (usize, usize),
    /// 1: no partition point is at distance `radius` from both centers;
    /// 2: one of them is; 3: both are.
    pub configuration: u8,
}

/// Geodesic 2-center of the polygon.
pub fn solve(geo: &Geodesy, eps: f64) -> TwoCenterResult {
    solve_with_threads(geo, eps, 1)
}

pub fn solve_with_threads(geo: &Geodesy, eps: f64, threads: usize) -> TwoCenterResult {
    let table = RadiusTable::new(geo);
    let pairs: Vec<(usize, usize)> = candidate_pairs(&table).iter().map(|p| (p.i, p.j)).collect();
    minimize_over_pairs(&table, &pairs, eps, threads)
}

/// Minimum over every ordered pair of distinct edges (the exhaustive check
/// for the candidate set).
pub fn all_pairs_minimum(geo: &Geodesy, eps: f64, threads: usize) -> TwoCenterResult {
    let table = RadiusTable::new(geo);
    let n = geo.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    minimize_over_pairs(&table, &pairs, eps, threads)
}

/// Best [`optimize_pair`] result over `pairs`. Pairs whose lower bound or
/// decision at the running best radius rules them out are skipped; ties go
/// to the lowest `(i, j)`.
pub fn minimize_over_pairs(table: &RadiusTable, pairs: &[(usize, usize)], eps: f64, threads: usize) -> TwoCenterResult {
    let tie = 1e-9 * table.geo().polygon().diameter_bound().max(1.0);
    let mut order: Vec<(f64, f64, usize, usize)> = pairs
        .iter()
        .filter_map(|&(i, j)| PairContext::new(table, i, j).ok().map(|c| (c.lower, c.upper, i, j)))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)).then(a.3.cmp(&b.3)));
    let start = order.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
    let best = AtomicU64::new(start.to_bits());
    let run = |&(lower, _, i, j): &(f64, f64, usize, usize)| -> Option<TwoCenterResult> {
        let bound = f64::from_bits(best.load(Ordering::Relaxed)) + tie;
        if lower > bound {
            return None;
        }
        let ctx = PairContext::new(table, i, j).ok()?;
        if !ctx.decide(bound).answer {
            return None;
        }
        let res = optimize_pair(&ctx, eps);
        best.fetch_min_f64(res.radius);
        Some(res)
    };
    let results: Vec<TwoCenterResult> = if threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| order.par_iter().filter_map(run).collect()),
            Err(_) => order.iter().filter_map(run).collect(),
        }
    } else {
        order.iter().filter_map(run).collect()
    };
    let min = results.iter().map(|r| r.radius).fold(f64::INFINITY, f64::min);
    results
        .into_iter()
        .filter(|r| r.radius <= min + tie)
        .min_by_key(|r| r.edge_pair)
        .expect("the pair attaining the smallest upper bound is never pruned")
}

trait FetchMinF64 {
    fn fetch_min_f64(&self, v: f64);
}

impl FetchMinF64 for AtomicU64 {
    fn fetch_min_f64(&self, v: f64) {
        let mut cur = self.load(Ordering::Relaxed);
        while v < f64::from_bits(cur) {
            match self.compare_exchange_weak(cur, v.to_bits(), Ordering::Relaxed, Ordering::Relaxed) {
                Ok(_) => break,
                Err(c) => cur = c,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn square_neighbors_flank_the_opposite_vertex() {
        let g = Geodesy::new(square());
        let t = RadiusTable::new(&g);
        let m = neighbor_maps(&t);
        assert_eq!(m, neighbor_maps_exhaustive(&t));
        for k in 0..4 {
            assert_eq!(m.cw[k], (k + 1) % 4, "{m:?}");
            assert_eq!(m.ccw[k], (k + 3) % 4, "{m:?}");
        }
    }

    #[test]
    fn square_candidates() {
        let g = Geodesy::new(square());
        let t = RadiusTable::new(&g);
        let c = candidate_pairs(&t);
        assert!(c.len() <= 20);
        assert!(c.iter().any(|p| p.i == 0 && p.j == 2));
        assert!(c.windows(2).all(|w| (w[0].i, w[0].j) < (w[1].i, w[1].j)));
    }
}
