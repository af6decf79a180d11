//! Upper half-plane points, the distance formula, Gromov products, and
//! the four-point defect.

use serde::{Deserialize, Serialize};

use super::GeomError;

/// Point of the upper half-plane; the imaginary part is strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub re: f64,
    pub im: f64,
}

impl HPoint {
    pub fn new(re: f64, im: f64) -> Result<HPoint, GeomError> {
        if im <= 0.0 || !re.is_finite() || !im.is_finite() {
            return Err(GeomError::InvalidPoint { re, im });
        }
        Ok(HPoint { re, im })
    }

    pub const I: HPoint = HPoint { re: 0.0, im: 1.0 };
}

/// arccosh(1 + u) for u >= 0, evaluated in the numerically safe form
/// asinh(sqrt(u^2 + 2u)).
pub fn acosh1p(u: f64) -> f64 {
    (u * (u + 2.0)).sqrt().asinh()
}

/// Hyperbolic distance, in the cancellation-free form
/// 2 asinh(|p - q| / (2 sqrt(im p * im q))).
pub fn distance(p: HPoint, q: HPoint) -> f64 {
    let dx = p.re - q.re;
    let dy = p.im - q.im;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (p.im * q.im).sqrt())).asinh()
}

/// Gromov product of x and y seen from base:
/// ( d(x, base) + d(y, base) - d(x, y) ) / 2.
pub fn gromov_product(x: HPoint, y: HPoint, base: HPoint) -> f64 {
    0.5 * (distance(x, base) + distance(y, base) - distance(x, y))
}

/// min{ (x|y)_t, (y|z)_t } - (x|z)_t. The supremum of this quantity over
/// quadruples is the four-point hyperbolicity constant of the plane.
pub fn four_point_defect(x: HPoint, y: HPoint, z: HPoint, t: HPoint) -> f64 {
    let xy = gromov_product(x, y, t);
    let yz = gromov_product(y, z, t);
    let xz = gromov_product(x, z, t);
    xy.min(yz) - xz
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(re: f64, im: f64) -> HPoint {
        HPoint::new(re, im).unwrap()
    }

    #[test]
    fn distance_on_axis() {
        // d(i, 2i) = ln 2
        assert_relative_eq!(
            distance(HPoint::I, pt(0.0, 2.0)),
            std::f64::consts::LN_2,
            epsilon = 1e-14
        );
        assert_eq!(distance(HPoint::I, HPoint::I), 0.0);
    }

    #[test]
    fn distance_symmetric_and_additive_on_axis() {
        let a = pt(0.0, 1.0);
        let b = pt(0.0, 3.0);
        let c = pt(0.0, 9.0);
        assert_relative_eq!(distance(a, b), distance(b, a), epsilon = 1e-15);
        assert_relative_eq!(distance(a, c), distance(a, b) + distance(b, c), epsilon = 1e-13);
    }

    #[test]
    fn gromov_product_degenerate() {
        let x = pt(1.0, 2.0);
        let y = pt(-1.0, 0.5);
        assert_relative_eq!(gromov_product(x, y, x), 0.0, epsilon = 1e-12);
        // collinear on the axis with the middle point as base
        let lo = pt(0.0, 0.5);
        let mid = pt(0.0, 2.0);
        let hi = pt(0.0, 8.0);
        assert_relative_eq!(gromov_product(lo, hi, mid), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn gromov_product_range_on_samples() {
        // nonnegative, and bounded by both distances to the base point
        let mut state = 1u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..2_000 {
            let p = pt(8.0 * next() - 4.0, 0.05 + 6.0 * next());
            let q = pt(8.0 * next() - 4.0, 0.05 + 6.0 * next());
            let base = pt(8.0 * next() - 4.0, 0.05 + 6.0 * next());
            let g = gromov_product(p, q, base);
            assert!(g >= -1e-12);
            assert!(g <= distance(p, base).min(distance(q, base)) + 1e-12);
        }
    }

    #[test]
    fn defect_nonpositive_when_degenerate() {
        let x = pt(0.4, 1.2);
        let y = pt(-2.0, 0.3);
        let t = pt(1.0, 5.0);
        assert!(four_point_defect(x, y, x, t) <= 1e-13);
        assert!(four_point_defect(x, y, pt(3.0, 0.7), y) <= 1e-13);
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(0.0, -1.0).is_err());
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
    }
}
