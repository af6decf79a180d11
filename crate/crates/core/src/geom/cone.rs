//! Hyperbolic cone metric over a circle, and the conical law of cosines.
//!
//! A cone of radius rho over a space Y carries the metric
//! cosh d = cosh r cosh r' - sinh r sinh r' cos(min{pi, d_Y / sinh rho}).
//! The same expression, read with an angle argument instead of d_Y, is
//! the law of cosines at a cone point of total angle Theta. Both entry
//! points below evaluate their formula in a cancellation-free form, so
//! the degenerate cases (apex, zero angle, saturation at pi) come out
//! exact to machine precision without special casing.

use serde::{Deserialize, Serialize};

use super::halfplane::acosh1p;
use super::GeomError;

/// Cone radius and total apex angle; the circle underneath the cone has
/// circumference total_angle * sinh(radius).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConeParams {
    rho: f64,
    total_angle: f64,
}

impl ConeParams {
    pub fn new(rho: f64, total_angle: f64) -> Result<ConeParams, GeomError> {
        if rho <= 0.0 || !rho.is_finite() {
            return Err(GeomError::BadConeRadius(rho));
        }
        if total_angle < 2.0 * std::f64::consts::PI || !total_angle.is_finite() {
            return Err(GeomError::BadConeAngle(total_angle));
        }
        Ok(ConeParams { rho, total_angle })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn total_angle(&self) -> f64 {
        self.total_angle
    }

    pub fn circumference(&self) -> f64 {
        self.total_angle * self.rho.sinh()
    }

    fn check_radius(&self, r: f64) -> Result<(), GeomError> {
        if !(0.0..=self.rho).contains(&r) {
            return Err(GeomError::RadiusOutOfRange { r, rho: self.rho });
        }
        Ok(())
    }
}

/// cosh d - 1 for the conical formula at a clamped angle, computed as a
/// sum of two nonnegative terms.
fn cosh_dist_minus_one(angle_clamped: f64, r1: f64, r2: f64) -> f64 {
    let half = (r1 - r2) / 2.0;
    let sin_half = (angle_clamped / 2.0).sin();
    2.0 * half.sinh().powi(2) + 2.0 * r1.sinh() * r2.sinh() * sin_half * sin_half
}

/// Distance in the cone between points (y, r1) and (y', r2) whose
/// projections are d_y apart in Y.
pub fn cone_distance(cp: &ConeParams, d_y: f64, r1: f64, r2: f64) -> Result<f64, GeomError> {
    cp.check_radius(r1)?;
    cp.check_radius(r2)?;
    if d_y < 0.0 || d_y.is_nan() {
        return Err(GeomError::NegativeBaseDistance(d_y));
    }
    let angle = (d_y / cp.rho.sinh()).min(std::f64::consts::PI);
    Ok(acosh1p(cosh_dist_minus_one(angle, r1, r2)))
}

/// Law of cosines at the apex: side length opposite the angle `theta`
/// between radii r1 and r2. `theta` must be the reduced representative in
/// (-Theta/2, Theta/2]; its magnitude is clamped at pi, where the
/// geodesic passes through the apex.
pub fn cone_law_of_cosines(
    cp: &ConeParams,
    theta: f64,
    r1: f64,
    r2: f64,
) -> Result<f64, GeomError> {
    cp.check_radius(r1)?;
    cp.check_radius(r2)?;
    let half_range = cp.total_angle / 2.0;
    if !(theta > -half_range && theta <= half_range) {
        return Err(GeomError::AngleNotReduced { theta, total_angle: cp.total_angle });
    }
    let angle = theta.abs().min(std::f64::consts::PI);
    Ok(acosh1p(cosh_dist_minus_one(angle, r1, r2)))
}

/// Distance between positions u1, u2 on a circle of circumference len.
pub fn circle_distance(len: f64, u1: f64, u2: f64) -> f64 {
    let d = (u1 - u2).rem_euclid(len);
    d.min(len - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cp() -> ConeParams {
        ConeParams::new(1.5, 3.0 * PI).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ConeParams::new(0.0, 7.0).is_err());
        assert!(ConeParams::new(1.0, 6.0).is_err()); // below 2 pi
        assert!(cone_distance(&cp(), 1.0, -0.1, 0.5).is_err());
        assert!(cone_distance(&cp(), 1.0, 0.5, 2.0).is_err());
        assert!(cone_distance(&cp(), -1.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn apex_distance() {
        // r2 = 0 forces d = r1 regardless of the base distance
        for d_y in [0.0, 0.7, 40.0] {
            assert_relative_eq!(
                cone_distance(&cp(), d_y, 1.2, 0.0).unwrap(),
                1.2,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn zero_base_distance_is_radial() {
        assert_relative_eq!(
            cone_distance(&cp(), 0.0, 1.4, 0.3).unwrap(),
            1.1,
            epsilon = 1e-14
        );
    }

    #[test]
    fn saturation_goes_through_apex() {
        let c = cp();
        let d_y = PI * c.rho().sinh() * 1.7; // anything past pi saturates
        assert_relative_eq!(
            cone_distance(&c, d_y, 0.9, 1.1).unwrap(),
            2.0,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            cone_law_of_cosines(&c, PI + 0.4, 0.9, 1.1).unwrap(),
            2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn law_of_cosines_matches_cone_metric() {
        let c = cp();
        for (theta, r1, r2) in [(0.3f64, 0.5, 1.2), (-1.9, 1.5, 0.01), (2.8, 0.8, 0.8)] {
            let d_y = theta.abs() * c.rho().sinh();
            let lhs = cone_law_of_cosines(&c, theta, r1, r2).unwrap();
            let rhs = cone_distance(&c, d_y, r1, r2).unwrap();
            assert_relative_eq!(lhs, rhs, epsilon = 1e-13);
        }
    }

    #[test]
    fn cone_distance_is_symmetric() {
        let c = cp();
        let a = cone_distance(&c, 2.3, 0.4, 1.1).unwrap();
        let b = cone_distance(&c, 2.3, 1.1, 0.4).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-15);
    }

    #[test]
    fn angle_reduction_enforced() {
        let c = cp();
        assert!(cone_law_of_cosines(&c, c.total_angle(), 0.5, 0.5).is_err());
        assert!(cone_law_of_cosines(&c, -c.total_angle() / 2.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn circle_metric() {
        assert_relative_eq!(circle_distance(10.0, 1.0, 9.5), 1.5);
        assert_relative_eq!(circle_distance(10.0, 3.0, 6.0), 3.0);
    }
}
