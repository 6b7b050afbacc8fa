//! Planar points and robust predicates.
//!
//! Orientation tests go through Shewchuk's adaptive-precision `orient2d`, so
//! the sign is exact for every pair of finite `f64` inputs. Everything that
//! derives new coordinates (intersections, projections) is plain `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Absolute tolerance used to classify a point as lying on the boundary.
pub const TAU_ON: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self × o`.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    #[inline]
    pub fn midpoint(self, o: Point) -> Point {
        self.lerp(o, 0.5)
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Unit vector in the same direction, or zero for the zero vector.
    pub fn unit(self) -> Point {
        let n = self.norm();
        if n > 0.0 {
            Point::new(self.x / n, self.y / n)
        } else {
            Point::default()
        }
    }

    /// Polar angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Point {
        Point::new(theta.cos(), theta.sin())
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Sign of the orientation of the triangle `abc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Clockwise = -1,
    Collinear = 0,
    CounterClockwise = 1,
}

impl Orientation {
    #[inline]
    pub fn as_i8(self) -> i8 {
        self as i8
    }
}

/// Exact sign of twice the signed area of `abc` (+1 for a left turn).
#[inline]
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let v = orient_raw(a, b, c);
    if v > 0.0 {
        Orientation::CounterClockwise
    } else if v < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Signed value whose sign is exact; magnitude approximates twice the area.
#[inline]
pub fn orient_raw(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

/// Convenience: `orientation(a, b, c)` as -1, 0 or +1.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    orientation(a, b, c).as_i8()
}

/// Euclidean distance from `p` to the closed segment `ab`, and the parameter
/// of the closest point.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> (f64, f64) {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return (p.dist(a), 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (p.dist(a.lerp(b, t)), t)
}

/// True when `p` lies on the closed segment `ab` (exact collinearity test).
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True when the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True when the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    if segments_cross_properly(a, b, c, d) {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Intersection parameters `(s, t)` of the lines `a + s(b-a)` and
/// `c + t(d-c)`, or `None` for parallel lines.
pub fn line_intersection_params(a: Point, b: Point, c: Point, d: Point) -> Option<(f64, f64)> {
    let r = b - a;
    let s = d - c;
    let den = r.cross(s);
    if den == 0.0 {
        return None;
    }
    let ac = c - a;
    Some((ac.cross(s) / den, ac.cross(r) / den))
}

/// Signed area of a ring (positive for counterclockwise, y-up).
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        s += a.cross(b);
    }
    0.5 * s
}

/// Winding number of a closed ring around `p` (boundary points give an
/// unspecified but finite value).
pub fn winding_number(ring: &[Point], p: Point) -> i32 {
    let n = ring.len();
    let mut wn = 0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    wn
}

/// Clip a convex polygon (either orientation) by the closed half-plane
/// `{q : side * orient_raw(a, b, q) >= 0}` (Sutherland–Hodgman step).
pub fn clip_convex(poly: &[Point], a: Point, b: Point, side: f64) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    let dir = b - a;
    let val = |q: Point| side * dir.cross(q - a);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let vp = val(p);
        let vq = val(q);
        if vp >= 0.0 {
            out.push(p);
        }
        if (vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0) {
            let t = vp / (vp - vq);
            out.push(p.lerp(q, t));
        }
    }
    dedup_ring(&mut out, 1e-15);
    out
}

/// Drop consecutive duplicate vertices of a ring.
pub fn dedup_ring(ring: &mut Vec<Point>, tol: f64) {
    ring.dedup_by(|a, b| a.dist(*b) <= tol);
    while ring.len() > 1 && ring[0].dist(*ring.last().unwrap()) <= tol {
        ring.pop();
    }
}

/// Area of a convex polygon (absolute value).
pub fn polygon_area(poly: &[Point]) -> f64 {
    signed_area(poly).abs()
}

/// True if `p` is inside or on the convex polygon (any orientation) up to
/// an absolute tolerance.
pub fn in_convex(poly: &[Point], p: Point, tol: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let sgn = if signed_area(poly) >= 0.0 { 1.0 } else { -1.0 };
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        if sgn * e.cross(p - a) / len < -tol {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_examples() {
        let o = Point::new(0.0, 0.0);
        assert_eq!(orient(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0)), 1);
        assert_eq!(orient(o, Point::new(1.0, 1.0), Point::new(2.0, 2.0)), 0);
        assert_eq!(orient(o, Point::new(0.0, 1.0), Point::new(1.0, 1.0)), -1);
    }

    #[test]
    fn orientation_is_exact_on_near_collinear_input() {
        // Naive evaluation of these gets the sign wrong.
        let a = Point::new(0.5, 0.5);
        let b = Point::new(12.0, 12.0);
        let c = Point::new(24.0, 24.0);
        for i in 0..64 {
            let d = Point::new(0.5 + i as f64 * f64::EPSILON, 0.5);
            let s = orient(d, b, c);
            let cross = (b - d).cross(c - d);
            if cross.abs() > 1e-10 {
                assert_eq!(s as f64, cross.signum());
            }
        }
        assert_eq!(orient(a, b, c), 0);
    }

    #[test]
    fn clip_square_by_diagonal() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let half = clip_convex(&sq, Point::new(0.0, 0.0), Point::new(1.0, 1.0), 1.0);
        assert!((polygon_area(&half) - 0.5).abs() < 1e-15);
        assert_eq!(half.len(), 3);
    }

    #[test]
    fn segment_crossings() {
        let p = |x, y| Point::new(x, y);
        assert!(segments_cross_properly(p(0., 0.), p(1., 1.), p(0., 1.), p(1., 0.)));
        assert!(!segments_cross_properly(p(0., 0.), p(1., 1.), p(1., 1.), p(2., 0.)));
        assert!(segments_intersect(p(0., 0.), p(1., 1.), p(1., 1.), p(2., 0.)));
    }
}
