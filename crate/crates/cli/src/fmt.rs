//! Number formatting for the `key=value` output lines.

use polycenter::{BoundaryCoord, Point};

/// Nine decimals, ties to even; negative zero prints as zero.
pub fn num(x: f64) -> String {
    let s = format!("{:.9}", x);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Nine decimals with trailing zeros removed.
pub fn short(x: f64) -> String {
    let s = num(x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn point(p: Point) -> String {
    format!("({},{})", num(p.x), num(p.y))
}

pub fn short_point(p: Point) -> String {
    format!("({},{})", short(p.x), short(p.y))
}

pub fn coord(c: BoundaryCoord) -> String {
    format!("({},{})", c.edge, num(c.t))
}

pub fn list<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    let parts: Vec<String> = items.into_iter().map(f).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_decimals_ties_to_even() {
        assert_eq!(num(2f64.sqrt()), "1.414213562");
        assert_eq!(num(0.5), "0.500000000");
        // 2^-10 = 0.0009765625 is an exact tie at the ninth decimal.
        assert_eq!(num(1.0 / 1024.0), "0.000976562");
        assert_eq!(num(3.0 / 1024.0), "0.002929688");
        assert_eq!(num(-1e-12), "0.000000000");
        assert_eq!(num(-0.25), "-0.250000000");
    }

    #[test]
    fn short_form_trims_zeros() {
        assert_eq!(short(1.0), "1");
        assert_eq!(short(0.25), "0.25");
        assert_eq!(short(-0.0), "0");
        assert_eq!(short_point(Point::new(1.0, 1.0)), "(1,1)");
    }
}
