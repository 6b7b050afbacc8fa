//! Invariants checked on generated polygons. Each case draws a polygon size
//! and a generator seed, plus query parameters.

use polycenter::disks::disks_intersection;
use polycenter::gen::random_polygon;
use polycenter::onecenter::restricted_radius;
use polycenter::oracle::{random_interior_points, sampled_partition_min, visgraph_distance};
use polycenter::polygon::{format_polygon, parse_polygon, validate_polygon};
use polycenter::subpolygon::subpolygon;
use polycenter::twocenter::{candidate_pairs, PairContext, RadiusTable};
use polycenter::voronoi::farthest_voronoi;
use polycenter::{BoundaryCoord, Geodesy, Point, SimplePolygon};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn polygon() -> impl Strategy<Value = SimplePolygon> {
    (6usize..=20, any::<u64>()).prop_map(|(n, seed)| random_polygon(n, seed))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..ProptestConfig::default() }
}

/// Winding number of the ring around `q`.
fn winding(ring: &[Point], q: Point) -> i32 {
    let mut w = 0;
    for k in 0..ring.len() {
        let (a, b) = (ring[k], ring[(k + 1) % ring.len()]);
        let side = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
        if a.y <= q.y && b.y > q.y && side > 0.0 {
            w += 1;
        } else if a.y > q.y && b.y <= q.y && side < 0.0 {
            w -= 1;
        }
    }
    w
}

fn same_ring_up_to_rotation(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|k| a[k] == b[(k + s) % b.len()]))
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn orientation_is_normalized(p in polygon()) {
        let mut rev = p.vertices().to_vec();
        rev.reverse();
        let q = validate_polygon(rev).unwrap();
        prop_assert!(same_ring_up_to_rotation(p.vertices(), q.vertices()));
        let back = parse_polygon(&format_polygon(&p)).unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
    }

    #[test]
    fn containment_matches_winding_number(p in polygon(), seed in any::<u64>()) {
        let (lo, hi) = p.bbox();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for _ in 0..500 {
            let q = Point::new(rand::Rng::gen_range(&mut rng, lo.x..hi.x), rand::Rng::gen_range(&mut rng, lo.y..hi.y));
            let (_, d) = p.project_to_boundary(q);
            if d > 1e-9 {
                prop_assert_eq!(p.contains(q), winding(p.vertices(), q) != 0);
            }
        }
    }

    #[test]
    fn geodesic_distance_is_a_metric_with_reflex_anchors(p in polygon(), seed in any::<u64>()) {
        let g = Geodesy::new(p.clone());
        let pts = random_interior_points(&p, 3, seed);
        let (a, b, c) = (pts[0], pts[1], pts[2]);
        let ab = g.distance(a, b).unwrap();
        let bc = g.distance(b, c).unwrap();
        let ac = g.distance(a, c).unwrap();
        prop_assert!((ab - g.distance(b, a).unwrap()).abs() <= 1e-9);
        prop_assert!(ac <= ab + bc + 1e-9);
        prop_assert!(ab >= a.dist(b) - 1e-12);
        prop_assert!((ab - visgraph_distance(&p, a, b).unwrap()).abs() <= 1e-9);
        for k in g.shortest_path(a, c).unwrap().anchors {
            prop_assert!(p.is_reflex(k));
        }
    }

    #[test]
    fn distance_along_a_path_is_convex(p in polygon(), seed in any::<u64>()) {
        let g = Geodesy::new(p.clone());
        let pts = random_interior_points(&p, 3, seed);
        let path = g.shortest_path(pts[1], pts[2]).unwrap();
        let m = g.point_map(pts[0]).unwrap();
        let d: Vec<f64> = (0..=32).map(|k| m.distance(&g, path.point_at_length(path.length * k as f64 / 32.0))).collect();
        let cap = d[0].max(d[32]);
        for w in d.windows(3) {
            prop_assert!(w[1] <= 0.5 * (w[0] + w[2]) + 1e-7);
        }
        prop_assert!(d.iter().all(|&x| x <= cap + 1e-9));
    }

    #[test]
    fn intersections_grow_with_the_radius(p in polygon(), a in 0usize..64, len in 1usize..64, f in 1.0f64..1.5) {
        let g = Geodesy::new(p.clone());
        let n = p.n();
        let a = a % n;
        let sites: Vec<usize> = (0..=(len % (n - 1)) + 1).map(|k| (a + k) % n).collect();
        let r = p.diameter_bound() * 0.6;
        let small = disks_intersection(&g, &sites, r);
        let big = disks_intersection(&g, &sites, r * f);
        prop_assume!(!small.empty);
        prop_assert!(!big.empty);
        prop_assert!(small.site_runs_contiguous());
        prop_assert!(small.circular_arc_count() <= 4 * (n + sites.len()));
        for arc in &small.arcs {
            for &s in &sites {
                prop_assert!(g.vertex_map(s).distance(&g, arc.start) <= r * f + 1e-9);
            }
        }
    }

    #[test]
    fn farthest_site_matches_brute_force(p in polygon(), seed in any::<u64>()) {
        let g = Geodesy::new(p.clone());
        let sites: Vec<usize> = (0..p.n()).collect();
        let fvd = farthest_voronoi(&g, &sites);
        for q in random_interior_points(&p, 50, seed) {
            let (_, d) = fvd.farthest(&g, q).unwrap();
            let brute = sites.iter().map(|&s| g.vertex_map(s).distance(&g, q)).fold(0.0, f64::max);
            prop_assert!((d - brute).abs() <= 1e-9);
        }
    }

    #[test]
    fn complementary_chains_cover_each_vertex_once(p in polygon(), pu in 0.0f64..1.0, pw in 0.0f64..1.0) {
        let g = Geodesy::new(p.clone());
        let n = p.n();
        let u = BoundaryCoord::from_position(pu * n as f64, n);
        let w = BoundaryCoord::from_position(pw * n as f64, n);
        prop_assume!(p.point_at(u).dist(p.point_at(w)) > 1e-6);
        let a = subpolygon(&g, u, w).unwrap();
        let b = subpolygon(&g, w, u).unwrap();
        let ends: Vec<usize> = [u, w].iter().filter_map(|c| c.as_vertex(n)).collect();
        for k in 0..n {
            let hits = a.chain.vertex_indices.iter().chain(&b.chain.vertex_indices).filter(|&&v| v == k).count();
            let expected = if ends.contains(&k) { 2 } else { 1 };
            prop_assert_eq!(hits, expected, "vertex {}", k);
        }
        // The closing paths agree up to direction.
        prop_assert!((a.closing_path.length - b.closing_path.length).abs() <= 1e-9);
    }

    #[test]
    fn restricted_radius_is_monotone(p in polygon(), start in 0usize..64) {
        let g = Geodesy::new(p.clone());
        let n = p.n();
        let alpha = BoundaryCoord::vertex(start % n);
        let steps: Vec<BoundaryCoord> =
            (1..2 * n - 1).map(|k| BoundaryCoord::from_position(alpha.position(n) + k as f64 * 0.5, n)).collect();
        let fwd: Vec<f64> = steps.iter().map(|&x| restricted_radius(&g, alpha, x).unwrap().radius).collect();
        let back: Vec<f64> = steps.iter().map(|&x| restricted_radius(&g, x, alpha).unwrap().radius).collect();
        prop_assert!(fwd.windows(2).all(|w| w[1] >= w[0] - 1e-9), "{fwd:?}");
        prop_assert!(back.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{back:?}");
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn decisions_change_sign_once(p in polygon(), pick in any::<usize>()) {
        let g = Geodesy::new(p);
        let t = RadiusTable::new(&g);
        let pairs = candidate_pairs(&t);
        let c = pairs[pick % pairs.len()];
        let ctx = PairContext::new(&t, c.i, c.j).unwrap();
        let answers: Vec<bool> =
            (0..=12).map(|k| ctx.decide(ctx.lower * 0.95 + (ctx.upper * 1.02 - ctx.lower * 0.95) * k as f64 / 12.0).answer).collect();
        prop_assert!(answers.windows(2).all(|w| !(w[0] && !w[1])), "{answers:?}");
        prop_assert!(*answers.last().unwrap());
    }

    #[test]
    fn more_samples_never_raise_the_oracle(n in 6usize..=12, seed in any::<u64>()) {
        let g = Geodesy::new(random_polygon(n, seed));
        let (coarse, _) = sampled_partition_min(&g, 2 * n);
        let (fine, _) = sampled_partition_min(&g, 4 * n);
        prop_assert!(fine <= coarse + 1e-9);
    }
}
