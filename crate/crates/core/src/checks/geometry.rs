//! Sampled numerical checks for the hyperbolic-plane layer, all quoting
//! the frozen calibration for the measured hyperbolicity constant.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{
    cone_distance, cone_law_of_cosines, displacement_min, distance, energy, genus2_fuchsian,
    injectivity_radius_estimate, relator_product, restricted_energy, thinness_defect,
    tube_samples, Calibration, ConeParams, EnergyConfig, EnergyNorm, HPoint, Isometry,
    IsometryClass, SearchDomain,
};
use crate::geom::cone::circle_distance;
use crate::par::{mix_seed, sampled_fold};
use crate::report::{CheckReport, ReportBuilder};
use crate::CheckError;

/// Fresh quadruples must not beat the frozen constant by more than the
/// stated slack.
pub fn four_point(cal: &Calibration, samples: u64, seed: u64) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("four-point", seed)
        .param("samples", samples)
        .param("delta_hat", cal.delta_hat);
    let fresh = crate::geom::calibrate::max_defect_raw(samples, seed, &cal.sample_box);
    builder.item_tol(
        "fresh defect excess over delta_hat",
        0.0,
        (fresh - cal.delta_hat).max(0.0),
        1e-6,
    );
    builder.item("largest fresh defect positive", true, fresh > 0.0);
    Ok(builder.finish())
}

/// Triangle inequality for the plane metric and the cone metric.
pub fn triangle(samples: u64, seed: u64) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("triangle", seed).param("samples", samples);
    let boxx = crate::geom::default_box();
    let plane_worst = sampled_fold(
        samples,
        seed,
        |rng, count| {
            let mut worst = 0.0f64;
            for _ in 0..count {
                let (x, y, z) = (boxx.sample(rng), boxx.sample(rng), boxx.sample(rng));
                worst = worst.max(distance(x, z) - distance(x, y) - distance(y, z));
            }
            worst
        },
        f64::max,
        0.0,
    );
    let cone_worst = sampled_fold(
        samples,
        mix_seed(seed, 1),
        |rng, count| {
            let mut worst = 0.0f64;
            for _ in 0..count {
                let cp = random_cone(rng);
                let len = cp.circumference();
                let pt = |rng: &mut ChaCha8Rng| {
                    (rng.gen_range(0.0..len), rng.gen_range(0.0..cp.rho()))
                };
                let (a, b, c) = (pt(rng), pt(rng), pt(rng));
                let d = |p: (f64, f64), q: (f64, f64)| {
                    cone_distance(&cp, circle_distance(len, p.0, q.0), p.1, q.1)
                        .expect("radii in range")
                };
                worst = worst.max(d(a, c) - d(a, b) - d(b, c));
            }
            worst
        },
        f64::max,
        0.0,
    );
    builder.item_tol("plane triangle violation", 0.0, plane_worst, 1e-12);
    builder.item_tol("cone triangle violation", 0.0, cone_worst, 1e-12);
    Ok(builder.finish())
}

/// A loxodromic isometry with translation length in [0.3, 3] whose axis
/// passes through a bounded region, in generic position.
pub fn random_loxodromic(rng: &mut impl Rng) -> (Isometry, HPoint) {
    let length = rng.gen_range(0.3..3.0);
    let anchor = HPoint { re: rng.gen_range(-2.0..2.0), im: rng.gen_range(0.5..4.0) };
    let angle = rng.gen_range(0.0..std::f64::consts::PI);
    let conj = Isometry::mapping_to_i(anchor)
        .inverse()
        .compose(&Isometry::rotation_about_i(angle));
    (Isometry::translation(length).conjugated_by(&conj), anchor)
}

/// Regular-versus-stable length: the numerical displacement minimum is
/// squeezed between the stable length and the stable length plus the
/// 8-delta slack; stable lengths add along powers.
pub fn length_relations(
    cal: &Calibration,
    count: u64,
    seed: u64,
) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("length-relations", seed)
        .param("count", count)
        .param("delta_hat", cal.delta_hat);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = 0.0f64;
    let mut above = 0.0f64;
    let mut power_gap = 0.0f64;
    for _ in 0..count {
        let (m, anchor) = random_loxodromic(&mut rng);
        let stable = m.stable_translation_length();
        let domain = SearchDomain::around(anchor, 2.0)?.with_grid(40, 4);
        let observed = displacement_min(&m, domain)?.value;
        below = below.max(stable - observed);
        above = above.max(observed - (stable + 8.0 * cal.delta_hat));
        let mut power = m;
        for k in 1..=5u32 {
            power_gap = power_gap
                .max((power.stable_translation_length() - f64::from(k) * stable).abs());
            power = power.compose(&m);
        }
    }
    builder.item_tol("displacement below stable length", 0.0, below.max(0.0), 1e-6);
    builder.item_tol("displacement above stable + 8 delta", 0.0, above.max(0.0), 0.0);
    builder.item_tol("power additivity gap (k <= 5)", 0.0, power_gap, 1e-9);
    Ok(builder.finish())
}

fn random_cone(rng: &mut impl Rng) -> ConeParams {
    let rho = rng.gen_range(0.5..2.5);
    let theta = rng.gen_range(2.0 * std::f64::consts::PI..5.0 * std::f64::consts::PI);
    ConeParams::new(rho, theta).expect("parameters in range")
}

/// Cone special cases and the two algebraic routes to the same distance.
pub fn cone(samples: u64, seed: u64) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("cone", seed).param("samples", samples);
    let run = |rng: &mut ChaCha8Rng, count: u64| -> [f64; 4] {
        let mut worst = [0.0f64; 4];
        for _ in 0..count {
            let cp = random_cone(rng);
            let r = |rng: &mut ChaCha8Rng| rng.gen_range(0.01..cp.rho());
            let (r1, r2) = (r(rng), r(rng));
            // apex: distance to the tip is the radius
            let apex = cone_distance(&cp, rng.gen_range(0.0..10.0), r1, 0.0).unwrap();
            worst[0] = worst[0].max((apex - r1).abs());
            // zero base distance: radial difference
            let radial = cone_distance(&cp, 0.0, r1, r2).unwrap();
            worst[1] = worst[1].max((radial - (r1 - r2).abs()).abs());
            // saturation past pi: through the apex
            let far = std::f64::consts::PI * cp.rho().sinh() * rng.gen_range(1.0..3.0);
            let through = cone_distance(&cp, far, r1, r2).unwrap();
            worst[2] = worst[2].max((through - (r1 + r2)).abs());
            // matched samples: law of cosines vs cone metric
            let theta = rng.gen_range(-cp.total_angle() / 2.0..=cp.total_angle() / 2.0);
            let lhs = cone_law_of_cosines(&cp, theta, r1, r2).unwrap();
            let rhs = cone_distance(&cp, theta.abs() * cp.rho().sinh(), r1, r2).unwrap();
            worst[3] = worst[3].max((lhs - rhs).abs());
        }
        worst
    };
    let worst = sampled_fold(
        samples,
        seed,
        run,
        |a, b| [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2]), a[3].max(b[3])],
        [0.0; 4],
    );
    builder.item_tol("apex distance error", 0.0, worst[0], 1e-12);
    builder.item_tol("zero-angle radial error", 0.0, worst[1], 1e-12);
    builder.item_tol("pi-saturation error", 0.0, worst[2], 1e-12);
    builder.item_tol("law-of-cosines vs cone metric", 0.0, worst[3], 1e-12);
    Ok(builder.finish())
}

/// Energy chain on random configurations of up to four isometries, all
/// minimised over one shared grid.
pub fn energy_chain(configs: u64, seed: u64, grid: usize) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("energy-chain", seed)
        .param("configs", configs)
        .param("grid", grid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain_violation = 0.0f64;
    let mut restricted_violation = 0.0f64;
    for _ in 0..configs {
        let card = rng.gen_range(1..=4usize);
        let isometries: Vec<Isometry> = (0..card)
            .map(|_| match rng.gen_range(0..3) {
                0 => random_loxodromic(&mut rng).0,
                1 => {
                    // parabolic conjugate
                    let (_, anchor) = random_loxodromic(&mut rng);
                    let conj = Isometry::mapping_to_i(anchor).inverse();
                    Isometry::new([[1.0, rng.gen_range(0.2..2.0)], [0.0, 1.0]])
                        .unwrap()
                        .conjugated_by(&conj)
                }
                _ => Isometry::rotation_about_i(rng.gen_range(0.2..2.8))
                    .conjugated_by(&Isometry::translation(rng.gen_range(-1.0..1.0))),
            })
            .collect();
        let domain = SearchDomain::new(-3.0, 3.0, 0.2, 8.0)?.with_grid(grid, 3);
        let balls = vec![(
            HPoint { re: rng.gen_range(-2.0..2.0), im: rng.gen_range(0.5..4.0) },
            rng.gen_range(0.3..1.0),
        )];
        let cfg = EnergyConfig::new(isometries, domain)?.with_excluded_balls(balls)?;
        let l_inf = energy(&cfg, EnergyNorm::LInf)?.value;
        let l_one = energy(&cfg, EnergyNorm::L1)?.value;
        let l_one_plus = restricted_energy(&cfg)?.value;
        chain_violation = chain_violation
            .max(l_inf - l_one)
            .max(l_one - cfg.isometries.len() as f64 * l_inf);
        restricted_violation = restricted_violation.max(l_one - l_one_plus);
    }
    builder.item_tol(
        "l-infinity <= l1 <= card * l-infinity (violation)",
        0.0,
        chain_violation.max(0.0),
        1e-3,
    );
    builder.item_tol("l1 <= restricted l1 (violation)", 0.0, restricted_violation.max(0.0), 1e-3);
    Ok(builder.finish())
}

/// The construction certificate for the explicit genus-2 group.
pub fn fuchsian(cal: &Calibration) -> Result<CheckReport, CheckError> {
    let gens = genus2_fuchsian();
    let mut builder = ReportBuilder::new("fuchsian", 0);
    builder.item_tol(
        "relator distance to +-identity",
        0.0,
        relator_product(&gens).projective_distance_to_identity(),
        1e-9,
    );
    let non_loxodromic =
        gens.iter().filter(|g| g.classify() != IsometryClass::Loxodromic).count();
    builder.item("non-loxodromic generators", 0, non_loxodromic);
    let lengths: Vec<f64> = gens.iter().map(|g| g.stable_translation_length()).collect();
    let spread = lengths
        .iter()
        .map(|l| (l - lengths[0]).abs())
        .fold(0.0, f64::max);
    builder.item_tol("translation length spread", 0.0, spread, 1e-9);
    builder.item_tol(
        "length matches frozen value",
        cal.generator_length,
        lengths[0],
        1e-9,
    );
    match injectivity_radius_estimate(&gens, 3) {
        Some(inj) => {
            builder.item("injectivity radius positive (L = 3)", true, inj > 0.0);
            builder.item_tol("injectivity radius value", cal.generator_length, inj, 1e-9);
        }
        None => builder.item("injectivity radius positive (L = 3)", true, false),
    }
    Ok(builder.finish())
}

/// Thinness of random loxodromic isometries at two displacement bounds.
pub fn thinness(cal: &Calibration, count: u64, seed: u64) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("thinness", seed)
        .param("count", count)
        .param("delta_hat", cal.delta_hat);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut excess = 0.0f64;
    let mut largest_defect = f64::NEG_INFINITY;
    for _ in 0..count {
        let (m, _) = random_loxodromic(&mut rng);
        let norm = m.stable_translation_length();
        let bound = 100.0 * (cal.delta_hat / norm + 1.0) * cal.delta_hat;
        for extra in [1.0, 5.0] {
            let d = norm + extra;
            let t_max = ((d / 2.0).sinh() / (norm / 2.0).sinh()).acosh();
            let t_values: Vec<f64> = (0..8).map(|i| t_max * i as f64 / 7.0).collect();
            let spread: Vec<f64> = (-2..=2).map(f64::from).collect();
            let samples = tube_samples(&m, &t_values, &spread)?;
            let defect = thinness_defect(&m, d, &samples)?;
            largest_defect = largest_defect.max(defect);
            excess = excess.max(defect - bound);
        }
    }
    builder.item_tol("defect excess over thinness bound", 0.0, excess.max(0.0), 0.0);
    builder.item("a defect was sampled", true, largest_defect.is_finite());
    Ok(builder.finish())
}

/// The geometry acceptance cells at their contractual sample sizes.
pub fn geometry_cells() -> Vec<super::SuiteCell> {
    let p = |k: &str, v: &str| (k.to_string(), v.to_string());
    vec![
        ("four-point".into(), vec![p("samples", "100000")]),
        ("triangle".into(), vec![p("samples", "100000")]),
        ("length-relations".into(), vec![p("count", "50")]),
        ("cone".into(), vec![p("samples", "10000")]),
        ("energy-chain".into(), vec![p("configs", "100")]),
        ("fuchsian".into(), Vec::new()),
        ("thinness".into(), vec![p("count", "20")]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::calibrate::calibrate;

    fn quick_cal() -> Calibration {
        calibrate(30_000, 0)
    }

    #[test]
    fn four_point_regression_small() {
        let cal = quick_cal();
        let r = four_point(&cal, 3_000, 17).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn triangle_small() {
        let r = triangle(3_000, 5).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn lengths_small() {
        let cal = quick_cal();
        let r = length_relations(&cal, 8, 3).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn cone_small() {
        let r = cone(2_000, 11).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn energy_small() {
        let r = energy_chain(6, 23, 24).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn fuchsian_report() {
        let cal = quick_cal();
        let r = fuchsian(&cal).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn thinness_small() {
        let cal = quick_cal();
        let r = thinness(&cal, 4, 29).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}
