//! Subpolygons `P(u, w)`: the clockwise chain from `u` to `w` closed by the
//! geodesic path back from `w` to `u`.

use crate::error::{GeoError, Result};
use crate::geodesic::{GeodesicPath, Geodesy};
use crate::geom::{point_segment_distance, winding_number, Point};
use crate::polygon::{BoundaryCoord, Chain};

#[derive(Debug, Clone, PartialEq)]
pub struct SubPolygon {
    pub chain: Chain,
    /// Geodesic path from `u` to `w`.
    pub closing_path: GeodesicPath,
    /// Chain points from `u` to `w`, then the interior points of the
    /// closing path in reverse. May touch itself at anchors.
    pub ring: Vec<Point>,
}

impl SubPolygon {
    /// Closed containment test with absolute tolerance `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let m = self.ring.len();
        for i in 0..m {
            if point_segment_distance(p, self.ring[i], self.ring[(i + 1) % m]).0 <= tol {
                return true;
            }
        }
        winding_number(&self.ring, p) != 0
    }
}

/// Build `P(u, w)`.
pub fn subpolygon(geo: &Geodesy, u: BoundaryCoord, w: BoundaryCoord) -> Result<SubPolygon> {
    let poly = geo.polygon();
    let n = poly.n();
    if u.edge >= n || w.edge >= n {
        return Err(GeoError::BadEdge(u.edge.max(w.edge)));
    }
    let (pu, pw) = (poly.point_at(u), poly.point_at(w));
    if pu == pw {
        return Err(GeoError::DegeneratePartition);
    }
    let chain = poly.chain(u, w);
    let closing_path = geo.shortest_path(pu, pw)?;
    let mut ring = chain_points(geo, &chain);
    let inner = &closing_path.points[1..closing_path.points.len() - 1];
    ring.extend(inner.iter().rev());
    Ok(SubPolygon { chain, closing_path, ring })
}

/// Points of a chain: its endpoints and the vertices strictly between.
pub fn chain_points(geo: &Geodesy, chain: &Chain) -> Vec<Point> {
    let poly = geo.polygon();
    let (pu, pw) = (poly.point_at(chain.from), poly.point_at(chain.to));
    let mut ring = vec![pu];
    for &k in &chain.vertex_indices {
        let v = poly.v(k);
        if v != pu && v != pw {
            ring.push(v);
        }
    }
    ring.push(pw);
    ring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn square_right_half() {
        let g = Geodesy::new(square());
        let s = subpolygon(&g, BoundaryCoord::new(0, 0.5), BoundaryCoord::new(2, 0.5)).unwrap();
        assert_eq!(s.chain.vertex_indices, vec![1, 2]);
        assert!(s.closing_path.anchors.is_empty());
        assert_eq!(s.ring.len(), 4);
        assert!((crate::geom::polygon_area(&s.ring) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lshape_arm_closes_through_reflex_vertex() {
        let g = Geodesy::new(lshape());
        let s = subpolygon(&g, BoundaryCoord::vertex(1), BoundaryCoord::vertex(5)).unwrap();
        assert_eq!(s.closing_path.anchors, vec![3]);
        // Chain v1..v5 passes v3 too, so the ring touches itself there.
        assert_eq!(s.ring.iter().filter(|&&p| p == Point::new(1.0, 1.0)).count(), 2);
    }

    #[test]
    fn same_point_is_degenerate() {
        let g = Geodesy::new(square());
        assert_eq!(
            subpolygon(&g, BoundaryCoord::new(0, 1.0), BoundaryCoord::vertex(1)),
            Err(GeoError::DegeneratePartition)
        );
    }
}
