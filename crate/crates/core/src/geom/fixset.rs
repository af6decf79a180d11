//! Sampled probes of almost-fixed-point sets and the thinness defect of
//! loxodromic isometries.
//!
//! Fix(U, d) is the set of points every member of U moves by at most d.
//! The probe classifies samples, estimates the diameter of the sampled
//! inside, and checks the displacement growth law for outside points:
//! the largest displacement must be at least
//! 2 dist(x, Fix) + d - 10 delta.

use super::halfplane::{distance, HPoint};
use super::isometry::{Isometry, IsometryClass};
use super::GeomError;

#[derive(Debug, Clone)]
pub struct FixSetProbe {
    pub inside: Vec<HPoint>,
    pub outside: Vec<HPoint>,
    pub diameter_estimate: f64,
    /// Outside samples violating the displacement growth bound.
    pub growth_violations: Vec<HPoint>,
}

/// Classifies `samples` against Fix(U, d) and checks the growth law for
/// the outside ones, using the sampled inside as a stand-in for the set.
pub fn fix_set_probe(
    u: &[Isometry],
    d: f64,
    samples: &[HPoint],
    delta_hat: f64,
) -> Result<FixSetProbe, GeomError> {
    if u.is_empty() {
        return Err(GeomError::EmptyIsometrySet);
    }
    if samples.is_empty() {
        return Err(GeomError::EmptySampleSet);
    }
    if d <= 0.0 || d.is_nan() {
        return Err(GeomError::BadDisplacementBound(d));
    }
    let sup_displacement =
        |p: HPoint| u.iter().map(|m| m.displacement(p)).fold(0.0, f64::max);

    let (inside, outside): (Vec<HPoint>, Vec<HPoint>) =
        samples.iter().partition(|&&p| sup_displacement(p) <= d);

    let mut diameter_estimate = 0.0f64;
    for (i, &p) in inside.iter().enumerate() {
        for &q in &inside[i + 1..] {
            diameter_estimate = diameter_estimate.max(distance(p, q));
        }
    }

    let mut growth_violations = Vec::new();
    if !inside.is_empty() {
        for &x in &outside {
            let dist_to_fix = inside
                .iter()
                .map(|&p| distance(x, p))
                .fold(f64::INFINITY, f64::min);
            // the sampled set is a subset of Fix, so this distance
            // overestimates dist(x, Fix); the slack 10 delta absorbs it
            if sup_displacement(x) < 2.0 * dist_to_fix + d - 10.0 * delta_hat {
                growth_violations.push(x);
            }
        }
    }
    Ok(FixSetProbe { inside, outside, diameter_estimate, growth_violations })
}

/// Largest thinness defect over the samples lying in Fix(M, d):
/// (M^- | M^+)_y - (d - ||M||)/2, with the boundary product evaluated
/// along the truncated axis. In the plane the translation length equals
/// the stable length, which is what is used for ||M||.
pub fn thinness_defect(
    m: &Isometry,
    d: f64,
    samples: &[HPoint],
) -> Result<f64, GeomError> {
    if m.classify() != IsometryClass::Loxodromic {
        return Err(GeomError::NotLoxodromic { trace: m.trace() });
    }
    let norm = m.stable_translation_length();
    if d < norm {
        return Err(GeomError::BadDisplacementBound(d));
    }
    let mut defect: Option<f64> = None;
    for &y in samples {
        if m.displacement(y) > d {
            continue;
        }
        let lim = m.boundary_gromov_product(y, 30.0)?;
        let value = lim.value - 0.5 * (d - norm);
        defect = Some(defect.map_or(value, |best| best.max(value)));
    }
    defect.ok_or(GeomError::EmptySampleSet)
}

/// Points at perpendicular distance `t` from the axis of `m`, with feet
/// spread over axis parameters `spread`; the standard way to sample
/// Fix(m, d) for a loxodromic isometry.
///
/// Built by carrying the explicit tube around the imaginary axis,
/// e^s (tanh t + i sech t), through an isometry taking the imaginary
/// axis onto the axis of `m`.
pub fn tube_samples(
    m: &Isometry,
    t_values: &[f64],
    spread: &[f64],
) -> Result<Vec<HPoint>, GeomError> {
    let (f1, f2) = m.boundary_fixed_points()?;
    let conj = match (f1, f2) {
        (Some(u), Some(v)) => {
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            // 0 -> lo, infinity -> hi
            Isometry::new([[hi, lo], [1.0, 1.0]])?
        }
        (None, Some(u)) | (Some(u), None) => Isometry::new([[1.0, u], [0.0, 1.0]])?,
        (None, None) => unreachable!("loxodromic isometries fix two boundary points"),
    };
    let mut out = Vec::with_capacity(t_values.len() * spread.len());
    for &t in t_values {
        for &s in spread {
            let base = HPoint { re: s.exp() * t.tanh(), im: s.exp() / t.cosh() };
            out.push(conj.apply(base));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn diag(length: f64) -> Isometry {
        Isometry::translation(length)
    }

    #[test]
    fn tube_radius_controls_membership() {
        let ell = 0.9f64;
        let m = diag(ell);
        let d = ell + 1.0;
        // Fix(m, d) is the tube cosh t <= sinh(d/2)/sinh(ell/2)
        let t_max = ((d / 2.0).sinh() / (ell / 2.0).sinh()).acosh();
        let inside = tube_samples(&m, &[0.0, t_max * 0.9], &[-1.0, 0.0, 1.0]).unwrap();
        let outside = tube_samples(&m, &[t_max * 1.2], &[0.0]).unwrap();
        for p in &inside {
            assert!(m.displacement(*p) <= d, "{p:?}");
        }
        for p in &outside {
            assert!(m.displacement(*p) > d, "{p:?}");
        }
    }

    #[test]
    fn probe_classifies_and_checks_growth() {
        let ell = 0.9f64;
        let m = diag(ell);
        let d = ell + 0.8;
        let t_max = ((d / 2.0).sinh() / (ell / 2.0).sinh()).acosh();
        let mut samples =
            tube_samples(&m, &[0.0, 0.5 * t_max], &[-1.0, -0.3, 0.3, 1.0]).unwrap();
        samples.extend(tube_samples(&m, &[t_max + 0.5, t_max + 2.0], &[-0.8, 0.4]).unwrap());
        let probe = fix_set_probe(&[m], d, &samples, 0.7).unwrap();
        assert_eq!(probe.inside.len(), 8);
        assert_eq!(probe.outside.len(), 4);
        assert!(probe.growth_violations.is_empty());
        assert!(probe.diameter_estimate > 0.0);
    }

    #[test]
    fn small_bound_has_empty_inside() {
        let m = diag(1.5);
        let samples = tube_samples(&m, &[0.0, 0.4], &[-0.5, 0.5]).unwrap();
        let probe = fix_set_probe(&[m], 0.2, &samples, 0.7).unwrap();
        assert!(probe.inside.is_empty());
        assert!(probe.growth_violations.is_empty()); // vacuous without a fix sample
    }

    #[test]
    fn identity_probe_all_inside() {
        let samples = vec![HPoint::I, HPoint { re: 1.0, im: 2.0 }];
        let probe = fix_set_probe(&[Isometry::identity()], 0.5, &samples, 0.7).unwrap();
        assert_eq!(probe.inside.len(), 2);
        assert!(probe.outside.is_empty());
    }

    #[test]
    fn defect_nonpositive_on_axis() {
        let m = diag(1.1);
        let d = 1.1 + 2.0;
        let on_axis = tube_samples(&m, &[0.0], &[-1.0, 0.0, 1.5]).unwrap();
        let defect = thinness_defect(&m, d, &on_axis).unwrap();
        assert!(defect <= 1e-9, "defect = {defect}");
    }

    #[test]
    fn defect_matches_log_cosh_off_axis() {
        let ell = 1.0f64;
        let m = diag(ell);
        let d = ell + 3.0;
        let t = 0.8f64;
        let samples = tube_samples(&m, &[t], &[0.0]).unwrap();
        let defect = thinness_defect(&m, d, &samples).unwrap();
        assert_relative_eq!(defect, t.cosh().ln() - 1.5, epsilon = 1e-8);
    }

    #[test]
    fn thinness_rejects_non_loxodromic() {
        let r = Isometry::rotation_about_i(0.3);
        assert!(thinness_defect(&r, 1.0, &[HPoint::I]).is_err());
    }
}
