use polycenter::gen::random_polygons;
use polycenter::onecenter::one_center;
use polycenter::oracle::{grid_one_center_in, vertex_eccentricity};
use polycenter::Geodesy;

#[test]
fn one_center_matches_grid_oracle() {
    for (i, p) in random_polygons(10, 8, 32, 3).iter().enumerate() {
        let g = Geodesy::new(p.clone());
        let r = one_center(&g);
        let (c, v) = grid_one_center_in(&g, 128);
        let ecc = vertex_eccentricity(&g, r.center);
        println!("poly {i} n={} fast={:.12} grid={:.12} ecc={:.12} centers {:?} {:?}", p.n(), r.radius, v, ecc, r.center, c);
        assert!((ecc - r.radius).abs() < 1e-9);
        assert!((r.radius - v).abs() <= 2e-5, "poly {i}");
        assert!(r.radius <= v + 1e-9, "poly {i}: fast above oracle");
    }
}
