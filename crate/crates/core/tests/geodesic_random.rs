use polycenter::gen::random_polygons;
use polycenter::geodesic::{path_convexity_check, path_is_taut};
use polycenter::oracle::{random_interior_points, visgraph_distance};
use polycenter::Geodesy;

#[test]
fn funnel_matches_visibility_graph() {
    let polys = random_polygons(30, 8, 40, 7);
    let mut worst: f64 = 0.0;
    for (i, p) in polys.iter().enumerate() {
        let g = Geodesy::new(p.clone());
        let pts = random_interior_points(p, 20, i as u64);
        for w in pts.chunks(2) {
            let d = g.distance(w[0], w[1]).unwrap();
            let r = visgraph_distance(p, w[0], w[1]).unwrap();
            worst = worst.max((d - r).abs());
            let path = g.shortest_path(w[0], w[1]).unwrap();
            assert!((path.length - d).abs() < 1e-12);
            assert!(path_is_taut(p, &path), "polygon {i}");
        }
    }
    assert!(worst <= 1e-9, "worst {worst}");
}

#[test]
fn vertex_maps_match_visibility_graph() {
    for (i, p) in random_polygons(10, 8, 30, 11).iter().enumerate() {
        let g = Geodesy::new(p.clone());
        for a in 0..p.n() {
            for b in 0..p.n() {
                let d = g.vertex_distance(a, b);
                let r = visgraph_distance(p, p.v(a), p.v(b)).unwrap();
                assert!((d - r).abs() <= 1e-9, "poly {i} {a}->{b}: {d} vs {r}");
            }
        }
        let pts = random_interior_points(p, 10, 99);
        for a in 0..p.n() {
            let m = g.vertex_map(a);
            for &q in &pts {
                let d = m.distance(&g, q);
                let r = visgraph_distance(p, p.v(a), q).unwrap();
                assert!((d - r).abs() <= 1e-9, "poly {i} map {a}: {d} vs {r}");
            }
        }
    }
}

#[test]
fn distance_is_convex_along_random_paths() {
    for (i, p) in random_polygons(10, 8, 30, 23).iter().enumerate() {
        let pts = random_interior_points(p, 15, 500 + i as u64);
        for w in pts.chunks(3) {
            assert!(path_convexity_check(p, w[0], w[1], w[2], 48), "polygon {i}");
        }
    }
}
