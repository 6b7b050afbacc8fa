//! Optimal radius for one edge pair: bracket with candidate radii from the
//! farthest-point Voronoi vertices, bisect with the decision procedure, then
//! polish the partition directly.

use super::decide::{edge_cover, partition_centers, PairContext, Witness};
use super::TwoCenterResult;
use crate::geodesic::Geodesy;
use crate::geom::Point;
use crate::numeric::{bracket_root, golden_min, sampled_min};
use crate::onecenter::{boundary_map, maxrad, restricted_radius, restricted_with_maps};
use crate::polygon::BoundaryCoord;

/// Distance tolerance for classifying the configuration.
const CONFIG_TOL: f64 = 1e-7;

/// `r*_ij` to within `eps`, with centers and partition.
pub fn optimize_pair(ctx: &PairContext, eps: f64) -> TwoCenterResult {
    let geo = ctx.geo();
    let n = geo.n();
    let (i, j) = (ctx.i, ctx.j);
    let lower = ctx.lower;

    // Both sides already served by their vertex centers at the lower bound.
    let center_of = |a: usize, b: usize| {
        if a == b {
            geo.polygon().v(a)
        } else {
            restricted_radius(geo, BoundaryCoord::vertex(a), BoundaryCoord::vertex(b)).map_or(geo.polygon().v(a), |r| r.center)
        }
    };
    let c1 = center_of((i + 1) % n, j);
    let c2 = center_of((j + 1) % n, i);
    let slack = lower + 1e-12 * geo.polygon().diameter_bound().max(1.0);
    if let (Some(a1), Some(b1), Some(a2), Some(b2)) =
        (edge_cover(geo, c1, i, slack), edge_cover(geo, c1, j, slack), edge_cover(geo, c2, i, slack), edge_cover(geo, c2, j, slack))
    {
        if a1.0 <= a2.1 && b2.0 <= b1.1 {
            let alpha = BoundaryCoord::new(i, 0.5 * (a1.0 + a2.1));
            let beta = BoundaryCoord::new(j, 0.5 * (b2.0 + b1.1));
            let w = Witness { c1, c2, alpha, beta };
            return finish(ctx, w, slack, None);
        }
    }

    let first = ctx.decide(lower);
    if first.answer {
        return finish(ctx, first.witness.expect("yes carries a witness"), lower, None);
    }
    let mut lo = lower;
    let mut hi = ctx.upper;
    let mut witness = ctx.decide(hi).witness.unwrap_or_else(|| {
        let (a, b) = (BoundaryCoord::new(i, 0.0), BoundaryCoord::new(j, 1.0));
        let (c1, c2) = partition_centers(geo, a, b);
        Witness { c1, c2, alpha: a, beta: b }
    });

    // Candidate radii inside the bracket.
    let mut radii: Vec<f64> = ctx.fvd1().vertex_distances();
    radii.extend(ctx.fvd2().vertex_distances());
    radii.retain(|&r| r > lo && r < hi);
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let (mut a, mut b) = (0usize, radii.len());
    while a < b {
        let m = (a + b) / 2;
        let out = ctx.decide(radii[m]);
        if out.answer {
            hi = radii[m];
            witness = out.witness.expect("yes carries a witness");
            b = m;
        } else {
            lo = radii[m];
            a = m + 1;
        }
    }

    while hi - lo > eps {
        let mid = 0.5 * (lo + hi);
        let out = ctx.decide(mid);
        if out.answer {
            hi = mid;
            witness = out.witness.expect("yes carries a witness");
        } else {
            lo = mid;
        }
    }
    finish(ctx, witness, hi, Some(lo))
}

/// Build the result from the best of the witness partition and its
/// refinement.
fn finish(ctx: &PairContext, w: Witness, hi: f64, lo: Option<f64>) -> TwoCenterResult {
    let geo = ctx.geo();
    let mut best = match maxrad(geo, w.alpha, w.beta) {
        Ok(r) => {
            let (c1, c2) = partition_centers(geo, w.alpha, w.beta);
            (w.alpha, w.beta, r, c1, c2)
        }
        Err(_) => (w.alpha, w.beta, hi, w.c1, w.c2),
    };
    if lo.is_some() {
        if let Some((a, b, r)) = refine_quadruple(ctx, w.alpha, w.beta) {
            if r < best.2 && ctx.decide(r).answer {
                let (c1, c2) = partition_centers(geo, a, b);
                best = (a, b, r, c1, c2);
            }
        }
    }
    let (alpha, beta, radius, c1, c2) = best;
    TwoCenterResult {
        c1,
        c2,
        radius,
        partition: (alpha, beta),
        edge_pair: (ctx.i, ctx.j),
        configuration: configuration(geo, c1, c2, alpha, beta, radius),
    }
}

/// Classify a solution by which partition points are at distance `radius`
/// from both centers.
pub(crate) fn configuration(geo: &Geodesy, c1: Point, c2: Point, alpha: BoundaryCoord, beta: BoundaryCoord, radius: f64) -> u8 {
    let poly = geo.polygon();
    let tight = |c: Point, q: BoundaryCoord| geo.distance(c, poly.point_at(q)).map_or(false, |d| (d - radius).abs() <= CONFIG_TOL);
    let at_alpha = tight(c1, alpha) && tight(c2, alpha);
    let at_beta = tight(c1, beta) && tight(c2, beta);
    match (at_alpha, at_beta) {
        (true, true) => 3,
        (false, false) => 1,
        _ => 2,
    }
}

/// Window of subedges around parameter `t`, widened by `extra` subedges on
/// each side.
fn window(subedges: &[f64], t: f64, extra: usize) -> (f64, f64) {
    let k = subedges.partition_point(|&s| s <= t).saturating_sub(1);
    let lo = subedges[k.saturating_sub(1 + extra)];
    let hi = subedges[(k + 2 + extra).min(subedges.len() - 1)];
    (lo, hi)
}

/// Minimize `max(r(α, β), r(β, α))` over `α ∈ e_i`, `β ∈ e_j` near a
/// witness partition. For fixed `α` the best `β` balances the two radii;
/// the outer search runs over `α`. The window grows while the optimum sits on
/// its border.
pub fn refine_quadruple(ctx: &PairContext, alpha: BoundaryCoord, beta: BoundaryCoord) -> Option<(BoundaryCoord, BoundaryCoord, f64)> {
    let geo = ctx.geo();
    let (i, j) = (ctx.i, ctx.j);
    let (si, sj) = (ctx.subedges_i(), ctx.subedges_j());
    let inner = |ta: f64, wb: (f64, f64)| -> Option<(f64, f64)> {
        let a = BoundaryCoord::new(i, ta);
        let ma = boundary_map(geo, a).ok()?;
        let eval = |tb: f64| -> Option<(f64, f64)> {
            let b = BoundaryCoord::new(j, tb);
            let mb = boundary_map(geo, b).ok()?;
            let r1 = restricted_with_maps(geo, a, b, &ma, &mb).ok()?.radius;
            let r2 = restricted_with_maps(geo, b, a, &mb, &ma).ok()?.radius;
            Some((r1 - r2, r1.max(r2)))
        };
        let (d0, v0) = eval(wb.0)?;
        let (d1, v1) = eval(wb.1)?;
        let tb = if d0 >= 0.0 {
            return Some((wb.0, v0));
        } else if d1 <= 0.0 {
            return Some((wb.1, v1));
        } else {
            bracket_root(wb.0, wb.1, 1e-12, |t| eval(t).map_or(0.0, |e| e.0))
        };
        eval(tb).map(|e| (tb, e.1))
    };
    let mut best: Option<(f64, f64, f64)> = None;
    for extra in 0..4 {
        let wa = window(si, alpha.t, extra);
        let wb = window(sj, beta.t, extra);
        let f = |ta: f64| inner(ta, wb).map_or(f64::INFINITY, |e| e.1);
        let (ta, v) = sampled_min(wa.0, wa.1, 4, 1e-10, f);
        let (ta, v) = if v.is_finite() { (ta, v) } else { golden_min(wa.0, wa.1, 1e-10, f) };
        if !v.is_finite() {
            break;
        }
        let tb = inner(ta, wb)?.0;
        if best.map_or(true, |b| v < b.2) {
            best = Some((ta, tb, v));
        }
        let on_border = |t: f64, w: (f64, f64)| (t - w.0 < 1e-9 && w.0 > 0.0) || (w.1 - t < 1e-9 && w.1 < 1.0);
        if !on_border(ta, wa) && !on_border(tb, wb) {
            break;
        }
    }
    best.map(|(ta, tb, v)| (BoundaryCoord::new(i, ta), BoundaryCoord::new(j, tb), v))
}
