//! Geodesic geometry inside simple polygons: shortest paths, geodesic disks,
//! farthest-point Voronoi structure, and the geodesic 1- and 2-center.

pub mod disks;
pub mod error;
pub mod funnel;
pub mod gen;
pub mod geodesic;
pub mod geom;
pub mod numeric;
pub mod onecenter;
pub mod oracle;
pub mod polygon;
pub mod subpolygon;
pub mod triangulation;
pub mod twocenter;
pub mod voronoi;

pub use error::{GeoError, Result};
pub use geodesic::{GeodesicPath, Geodesy, ShortestPathMap, ShortestPathTree};
pub use geom::{Point, TAU_ON};
pub use polygon::{BoundaryCoord, Chain, Containment, SimplePolygon};
