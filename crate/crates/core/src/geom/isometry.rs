//! Orientation-preserving isometries of the half-plane as normalized
//! 2 x 2 real matrices acting by Moebius transformations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::halfplane::{acosh1p, distance, gromov_product, HPoint};
use super::GeomError;

/// Classification threshold: |trace| within 1e-9 of 2 counts as parabolic.
pub const PARABOLIC_TRACE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// Determinant-one matrix (a, b; c, d) acting by z -> (az + b)/(cz + d).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    m: [[f64; 2]; 2],
}

impl Isometry {
    /// Normalizes the determinant to one. Matrices with nonpositive
    /// determinant do not act on the half-plane and are rejected.
    pub fn new(m: [[f64; 2]; 2]) -> Result<Isometry, GeomError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !det.is_finite() || det <= 0.0 {
            return Err(GeomError::InvalidMatrix { det });
        }
        let s = det.sqrt();
        Ok(Isometry {
            m: [[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]],
        })
    }

    pub fn identity() -> Isometry {
        Isometry { m: [[1.0, 0.0], [0.0, 1.0]] }
    }

    /// Hyperbolic translation by `length` along the imaginary axis,
    /// moving i to i e^length.
    pub fn translation(length: f64) -> Isometry {
        let h = (length / 2.0).exp();
        Isometry { m: [[h, 0.0], [0.0, 1.0 / h]] }
    }

    /// Rotation by `angle` about the point i (counterclockwise).
    pub fn rotation_about_i(angle: f64) -> Isometry {
        let (s, c) = (angle / 2.0).sin_cos();
        Isometry { m: [[c, s], [-s, c]] }
    }

    /// The isometry taking `p` to i (and verticals through p to verticals).
    pub fn mapping_to_i(p: HPoint) -> Isometry {
        let s = p.im.sqrt();
        Isometry { m: [[1.0 / s, -p.re / s], [0.0, s]] }
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn apply(&self, p: HPoint) -> HPoint {
        let [[a, b], [c, d]] = self.m;
        let den_re = c * p.re + d;
        let den_im = c * p.im;
        let den_sq = den_re * den_re + den_im * den_im;
        let num_re = a * p.re + b;
        let num_im = a * p.im;
        // (num * conj(den)) / |den|^2; im(Mz) = im(z)/|cz+d|^2 by det = 1
        HPoint {
            re: (num_re * den_re + num_im * den_im) / den_sq,
            im: p.im / den_sq,
        }
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        let a = self.m;
        let b = other.m;
        Isometry {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    /// Adjugate; exact for determinant one.
    pub fn inverse(&self) -> Isometry {
        let [[a, b], [c, d]] = self.m;
        Isometry { m: [[d, -b], [-c, a]] }
    }

    pub fn conjugated_by(&self, g: &Isometry) -> Isometry {
        g.compose(self).compose(&g.inverse())
    }

    pub fn displacement(&self, p: HPoint) -> f64 {
        distance(self.apply(p), p)
    }

    pub fn classify(&self) -> IsometryClass {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= PARABOLIC_TRACE_TOLERANCE {
            IsometryClass::Parabolic
        } else if t < 2.0 {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Loxodromic
        }
    }

    /// 2 arccosh(|trace| / 2) for loxodromic isometries, zero otherwise.
    pub fn stable_translation_length(&self) -> f64 {
        match self.classify() {
            IsometryClass::Loxodromic => 2.0 * acosh1p(self.trace().abs() / 2.0 - 1.0),
            _ => 0.0,
        }
    }

    /// Largest absolute difference from the identity or its negative.
    pub fn projective_distance_to_identity(&self) -> f64 {
        let id = [[1.0f64, 0.0], [0.0, 1.0]];
        let mut plus = 0.0f64;
        let mut minus = 0.0f64;
        for (row, id_row) in self.m.iter().zip(&id) {
            for (v, e) in row.iter().zip(id_row) {
                plus = plus.max((v - e).abs());
                minus = minus.max((v + e).abs());
            }
        }
        plus.min(minus)
    }

    /// Both fixed points on the boundary circle, as points of the real
    /// axis with `None` standing for infinity. Loxodromic only.
    pub fn boundary_fixed_points(&self) -> Result<(Option<f64>, Option<f64>), GeomError> {
        if self.classify() != IsometryClass::Loxodromic {
            return Err(GeomError::NotLoxodromic { trace: self.trace() });
        }
        let [[a, b], [c, d]] = self.m;
        if c.abs() < 1e-300 {
            // fixed points: infinity and b/(d - a)
            if (d - a).abs() < 1e-300 {
                return Err(GeomError::NotLoxodromic { trace: self.trace() });
            }
            return Ok((None, Some(b / (d - a))));
        }
        let disc = (a + d) * (a + d) - 4.0;
        let root = disc.sqrt();
        Ok((Some((a - d + root) / (2.0 * c)), Some((a - d - root) / (2.0 * c))))
    }

    /// Two points on the translation axis at parameter -t and +t from a
    /// reference point of the axis.
    pub fn axis_points(&self, t: f64) -> Result<(HPoint, HPoint), GeomError> {
        let (f1, f2) = self.boundary_fixed_points()?;
        match (f1, f2) {
            (Some(u), Some(v)) => {
                // half-circle over [u, v]: z(s) = center + radius (tanh s + i sech s)
                let center = 0.5 * (u + v);
                let radius = 0.5 * (v - u).abs();
                let at = |s: f64| HPoint {
                    re: center + radius * s.tanh(),
                    im: radius / s.cosh(),
                };
                Ok((at(-t), at(t)))
            }
            (None, Some(u)) | (Some(u), None) => {
                // vertical axis through u
                Ok((HPoint { re: u, im: (-t).exp() }, HPoint { re: u, im: t.exp() }))
            }
            (None, None) => unreachable!("two fixed points coincide"),
        }
    }

    /// Gromov product, seen from y, of the two boundary fixed points of a
    /// loxodromic isometry, computed along the axis truncated at parameter
    /// `t`. Returns the value together with the gap to the half-parameter
    /// evaluation as a stabilisation certificate.
    pub fn boundary_gromov_product(&self, y: HPoint, t: f64) -> Result<RayLimit, GeomError> {
        let eval = |s: f64| -> Result<f64, GeomError> {
            let (p, q) = self.axis_points(s)?;
            Ok(gromov_product(p, q, y))
        };
        let value = eval(t)?;
        let coarse = eval(t / 2.0 + 2.0)?;
        Ok(RayLimit { value, stabilisation_gap: (value - coarse).abs() })
    }
}

/// Result of a truncated limit along a geodesic ray.
#[derive(Debug, Clone, Copy)]
pub struct RayLimit {
    pub value: f64,
    pub stabilisation_gap: f64,
}

/// Direction angle at i of the geodesic from i toward `w`; straight up is
/// zero and angles grow counterclockwise.
pub fn direction_from_i(w: HPoint) -> f64 {
    let z = Complex64::new(w.re, w.im);
    let i = Complex64::new(0.0, 1.0);
    ((z - i) / (z + i)).arg()
}

/// The isometry sending p1 to q1 and the geodesic direction (p1 -> p2) to
/// the direction (q1 -> q2). When d(p1, p2) = d(q1, q2) it maps p2 to q2.
pub fn mapping_segment(
    p1: HPoint,
    p2: HPoint,
    q1: HPoint,
    q2: HPoint,
) -> Result<Isometry, GeomError> {
    let align = |x1: HPoint, x2: HPoint| -> Result<Isometry, GeomError> {
        if distance(x1, x2) < 1e-14 {
            return Err(GeomError::DegenerateSegment);
        }
        let g = Isometry::mapping_to_i(x1);
        let phi = direction_from_i(g.apply(x2));
        Ok(Isometry::rotation_about_i(-phi).compose(&g))
    };
    let b = align(p1, p2)?;
    let a = align(q1, q2)?;
    Ok(a.inverse().compose(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(re: f64, im: f64) -> HPoint {
        HPoint::new(re, im).unwrap()
    }

    #[test]
    fn classification() {
        let par = Isometry::new([[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(par.classify(), IsometryClass::Parabolic);
        assert_eq!(par.stable_translation_length(), 0.0);

        let lox = Isometry::new([[2.0, 0.0], [0.0, 0.5]]).unwrap();
        assert_eq!(lox.classify(), IsometryClass::Loxodromic);
        assert_relative_eq!(
            lox.stable_translation_length(),
            2.0 * std::f64::consts::LN_2,
            epsilon = 1e-12
        );

        let ell = Isometry::new([[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert_eq!(ell.classify(), IsometryClass::Elliptic);
        assert_eq!(ell.stable_translation_length(), 0.0);
    }

    #[test]
    fn normalization_and_bad_matrices() {
        let m = Isometry::new([[4.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_relative_eq!(m.det(), 1.0, epsilon = 1e-15);
        assert!(Isometry::new([[1.0, 0.0], [0.0, -1.0]]).is_err());
        assert!(Isometry::new([[1.0, 2.0], [2.0, 4.0]]).is_err());
    }

    #[test]
    fn moebius_action() {
        // z -> 4z doubles the axis twice over: d(i, 4i) = ln 4
        let m = Isometry::new([[2.0, 0.0], [0.0, 0.5]]).unwrap();
        let img = m.apply(HPoint::I);
        assert_relative_eq!(img.im, 4.0, epsilon = 1e-14);
        assert_relative_eq!(m.displacement(HPoint::I), 4.0f64.ln(), epsilon = 1e-13);
        // inverse undoes
        let p = pt(0.3, 2.5);
        let q = m.inverse().apply(m.apply(p));
        assert_relative_eq!(q.re, p.re, epsilon = 1e-12);
        assert_relative_eq!(q.im, p.im, epsilon = 1e-12);
    }

    #[test]
    fn parabolic_displacement_decays() {
        let par = Isometry::new([[1.0, 1.0], [0.0, 1.0]]).unwrap();
        let mut last = f64::INFINITY;
        for k in 0..6 {
            let y = 2.0f64.powi(k);
            let d = par.displacement(pt(0.0, y));
            let predicted = 2.0 * (1.0 / (2.0 * y)).asinh();
            assert_relative_eq!(d, predicted, epsilon = 1e-12);
            assert!(d < last);
            last = d;
        }
    }

    #[test]
    fn rotation_fixes_i() {
        let r = Isometry::rotation_about_i(1.1);
        let img = r.apply(HPoint::I);
        assert_relative_eq!(img.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(img.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn segment_mapping_moves_points() {
        let p1 = pt(0.0, 1.0);
        let p2 = pt(0.0, 3.0);
        let q1 = pt(2.0, 0.5);
        let q2 = pt(1.0, 1.5);
        let m = mapping_segment(p1, p2, q1, q2).unwrap();
        let img = m.apply(p1);
        assert_relative_eq!(img.re, q1.re, epsilon = 1e-10);
        assert_relative_eq!(img.im, q1.im, epsilon = 1e-10);
        // an isometry: the image of p2 sits at the original distance, on
        // the geodesic toward q2
        let d_img = distance(m.apply(p2), q1);
        assert_relative_eq!(d_img, distance(p1, p2), epsilon = 1e-10);
        let towards = gromov_product(m.apply(p2), q2, q1);
        assert_relative_eq!(towards, distance(q1, q2).min(d_img), epsilon = 1e-9);
    }

    #[test]
    fn axis_points_straddle_fixed_points() {
        let m = Isometry::new([[2.0, 0.0], [0.0, 0.5]]).unwrap();
        let (lo, hi) = m.axis_points(3.0).unwrap();
        assert_relative_eq!(lo.im, (-3.0f64).exp(), epsilon = 1e-12);
        assert_relative_eq!(hi.im, 3.0f64.exp(), epsilon = 1e-12);
        // a conjugated translation has a half-circle axis
        let g = Isometry::new([[1.0, 2.0], [0.5, 2.0]]).unwrap();
        let c = m.conjugated_by(&g);
        let (p, q) = c.axis_points(5.0).unwrap();
        // both axis points are displaced by about the translation length
        assert_relative_eq!(c.displacement(p), c.stable_translation_length(), epsilon = 1e-6);
        assert_relative_eq!(c.displacement(q), c.stable_translation_length(), epsilon = 1e-6);
    }

    #[test]
    fn boundary_product_matches_distance_to_axis() {
        // for y at distance t from the axis the product is ln cosh t
        let m = Isometry::new([[2.0, 0.0], [0.0, 0.5]]).unwrap();
        let t = 1.3f64;
        let y = pt(t.tanh(), 1.0 / t.cosh());
        let lim = m.boundary_gromov_product(y, 30.0).unwrap();
        assert_relative_eq!(lim.value, t.cosh().ln(), epsilon = 1e-9);
        assert!(lim.stabilisation_gap < 1e-9);
    }
}
