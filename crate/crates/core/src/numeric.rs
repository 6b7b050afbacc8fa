//! Small 1D/2D numerical routines: golden-section search, bracketed root
//! finding and a derivative-free pattern search.

use crate::geom::Point;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimize a unimodal `f` on `[a, b]`; returns `(x, f(x))`.
pub fn golden_min(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while (b - a).abs() > tol && iter < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iter += 1;
    }
    let fa = f(a);
    let fb = f(b);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    if fa < best.1 {
        best = (a, fa);
    }
    if fb < best.1 {
        best = (b, fb);
    }
    best
}

/// Minimize `f` on `[a, b]` by sampling `samples + 1` points and polishing
/// the best bracket with golden-section search.
pub fn sampled_min(a: f64, b: f64, samples: usize, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let samples = samples.max(2);
    let h = (b - a) / samples as f64;
    let mut best = (a, f(a));
    let mut best_i = 0;
    for i in 1..=samples {
        let x = if i == samples { b } else { a + h * i as f64 };
        let v = f(x);
        if v < best.1 {
            best = (x, v);
            best_i = i;
        }
    }
    let lo = a + h * best_i.saturating_sub(1) as f64;
    let hi = (a + h * (best_i + 1) as f64).min(b);
    let polished = golden_min(lo, hi, tol, &mut f);
    if polished.1 <= best.1 {
        polished
    } else {
        best
    }
}

/// Largest `x` in `[a, b]` with `pred(x)` true, for a predicate that is true
/// on a prefix of the interval. Requires `pred(a)`.
pub fn last_true(mut a: f64, mut b: f64, tol: f64, mut pred: impl FnMut(f64) -> bool) -> f64 {
    if pred(b) {
        return b;
    }
    let mut iter = 0;
    while b - a > tol && iter < 200 {
        let m = 0.5 * (a + b);
        if pred(m) {
            a = m;
        } else {
            b = m;
        }
        iter += 1;
    }
    a
}

/// Root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite signs
/// (Illinois variant of regula falsi, with bisection safeguard).
pub fn bracket_root(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    if fa.signum() == fb.signum() {
        return if fa.abs() < fb.abs() { a } else { b };
    }
    let mut side = 0;
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        if !x.is_finite() || x <= a.min(b) || x >= a.max(b) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = x;
            fa = fx;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        // Guard against slow one-sided convergence.
        if (b - a).abs() > tol {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return m;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}

/// Compass search with a direction set rotated after every contraction, so
/// ridges of max-type functions do not stall the search. `f` may return
/// `inf` for infeasible points.
pub fn pattern_search(x0: Point, step: f64, min_step: f64, dirs: usize, mut f: impl FnMut(Point) -> f64) -> (Point, f64) {
    let mut x = x0;
    let mut fx = f(x);
    let mut h = step;
    let mut rot = 0.0f64;
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut evals = 0usize;
    while h > min_step && evals < 200_000 {
        let mut improved = false;
        for k in 0..dirs {
            let th = rot + std::f64::consts::TAU * k as f64 / dirs as f64;
            let y = x + Point::from_angle(th) * h;
            let fy = f(y);
            evals += 1;
            if fy < fx {
                x = y;
                fx = fy;
                improved = true;
                break;
            }
        }
        if !improved {
            h *= 0.5;
            rot += golden_angle;
        }
    }
    (x, fx)
}

/// Nelder–Mead simplex search in the plane, restarted around the incumbent
/// until a restart no longer improves it. `f` may return `inf`.
pub fn nelder_mead(x0: Point, step: f64, tol: f64, mut f: impl FnMut(Point) -> f64) -> (Point, f64) {
    let mut best = (x0, f(x0));
    let mut h = step;
    for _ in 0..12 {
        let start = best;
        let mut s = [
            (best.0, best.1),
            (best.0 + Point::new(h, 0.0), f(best.0 + Point::new(h, 0.0))),
            (best.0 + Point::new(0.0, h), f(best.0 + Point::new(0.0, h))),
        ];
        for _ in 0..2000 {
            s.sort_by(|a, b| a.1.total_cmp(&b.1));
            let size = s[0].0.dist(s[1].0).max(s[0].0.dist(s[2].0));
            if size <= tol {
                break;
            }
            let c = (s[0].0 + s[1].0) * 0.5;
            let xr = c + (c - s[2].0);
            let fr = f(xr);
            if fr < s[0].1 {
                let xe = c + (c - s[2].0) * 2.0;
                let fe = f(xe);
                s[2] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < s[1].1 {
                s[2] = (xr, fr);
            } else {
                let xc = if fr < s[2].1 { c + (xr - c) * 0.5 } else { c + (s[2].0 - c) * 0.5 };
                let fc = f(xc);
                if fc < s[2].1.min(fr) {
                    s[2] = (xc, fc);
                } else {
                    for k in 1..3 {
                        let p = s[0].0 + (s[k].0 - s[0].0) * 0.5;
                        s[k] = (p, f(p));
                    }
                }
            }
        }
        s.sort_by(|a, b| a.1.total_cmp(&b.1));
        if s[0].1 < best.1 {
            best = s[0];
        }
        if best.1 >= start.1 && h <= tol * 16.0 {
            break;
        }
        h = (h * 0.1).max(tol * 4.0);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_min() {
        let (x, v) = golden_min(-3.0, 5.0, 1e-12, |x| (x - 1.25) * (x - 1.25) + 2.0);
        assert!((x - 1.25).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn root_of_cubic() {
        let r = bracket_root(0.0, 2.0, 1e-15, |x| x * x * x - 2.0);
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn last_true_prefix() {
        let x = last_true(0.0, 1.0, 1e-14, |x| x <= 0.3);
        assert!((x - 0.3).abs() < 1e-13);
    }

    #[test]
    fn pattern_search_follows_ridge() {
        // max of two cones has a ridge along the line x = y.
        let f = |p: Point| (p - Point::new(0.0, 0.0)).norm().max((p - Point::new(2.0, 2.0)).norm());
        let (x, _) = pattern_search(Point::new(0.3, 1.9), 0.5, 1e-12, 16, f);
        let (x, v) = nelder_mead(x, 1e-3, 1e-13, f);
        assert!((v - 2f64.sqrt()).abs() < 1e-10, "{x:?} {v}");
    }
}
