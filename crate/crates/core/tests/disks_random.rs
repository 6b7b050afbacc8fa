use polycenter::disks::{disks_intersection, geodesic_disk, DiskIntersection};
use polycenter::gen::random_polygons;
use polycenter::onecenter::enclose_sites;
use polycenter::oracle::random_interior_points;
use polycenter::{Geodesy, ShortestPathMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn chain(a: usize, b: usize, n: usize) -> Vec<usize> {
    let mut v = vec![a];
    let mut k = a;
    while k != b {
        k = (k + 1) % n;
        v.push(k);
    }
    v
}

fn boundary_points(d: &DiskIntersection) -> Vec<polycenter::Point> {
    d.arcs.iter().flat_map(|a| [a.start, a.point_at(0.5)]).chain(d.point).collect()
}

#[test]
fn disk_membership_matches_distance() {
    for (i, p) in random_polygons(8, 8, 30, 41).iter().enumerate() {
        let g = Geodesy::new(p.clone());
        let c = random_interior_points(p, 1, 900 + i as u64)[0];
        let map = g.point_map(c).unwrap();
        for r in [0.2, 0.5, 0.9] {
            let disk = geodesic_disk(&g, c, r).unwrap();
            for q in random_interior_points(p, 1000, i as u64) {
                let d = map.distance(&g, q);
                if (d - r).abs() > 1e-9 {
                    assert_eq!(disk.contains(&g, q), d <= r, "poly {i} r {r}");
                }
            }
            for a in disk.circular_arcs() {
                for s in [0.0, 0.5, 1.0] {
                    assert!((map.distance(&g, a.point_at(s)) - r).abs() < 1e-9);
                }
            }
            assert!(disk.circular_arcs().count() <= 4 * p.n() + 4);
        }
    }
}

#[test]
fn intersections_respect_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (i, p) in random_polygons(12, 8, 32, 17).iter().enumerate() {
        let g = Geodesy::new(p.clone());
        let n = p.n();
        for _ in 0..6 {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let sites = chain(a, b, n);
            let maps: Vec<&ShortestPathMap> = sites.iter().map(|&s| g.vertex_map(s)).collect();
            let r0 = enclose_sites(&g, &maps).radius;
            let r1 = r0 * rng.gen_range(1.0..1.6);
            let r2 = r1 * rng.gen_range(1.0..1.3);
            let i1 = disks_intersection(&g, &sites, r1);
            let i2 = disks_intersection(&g, &sites, r2);
            assert!(!i1.empty, "poly {i}");
            assert!(i1.circular_arc_count() <= 4 * (n + sites.len()), "poly {i}");
            assert!(i1.site_runs_contiguous(), "poly {i} sites {sites:?} r {r1}: {:?}", i1.arcs.iter().map(|a| a.site).collect::<Vec<_>>());
            assert!(i2.site_runs_contiguous(), "poly {i}");
            let m = i1.arcs.len();
            for k in 0..m {
                assert!(i1.arcs[k].end.dist(i1.arcs[(k + 1) % m].start) < 1e-9, "poly {i}: cycle gap");
            }
            // Every point of the smaller intersection lies in every larger disk.
            for q in boundary_points(&i1) {
                for &s in &sites {
                    let d = g.vertex_map(s).distance(&g, q);
                    assert!(d <= r1 + 1e-9, "poly {i}");
                    assert!(d <= r2 + 1e-9);
                }
            }
            assert!(disks_intersection(&g, &sites, r0 * 0.99).empty || r0 == 0.0);
        }
    }
}
