//! Acceptance suite: the contractual checks at their full parameter
//! ranges, one summary line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines; the test fails if any criterion fails.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use pql_core::checks::{algebra, geometry};
use pql_core::geom::calibrate::calibrate;
use pql_core::geom::Calibration;
use pql_core::report::CheckReport;
use pql_core::surface::scc_specs;
use pql_core::twist::{twist_specs, TwistWitness};

const CALIBRATION_SAMPLES: u64 = 1_000_000;
const CALIBRATION_SEED: u64 = 0;

fn calibration() -> &'static Calibration {
    static CAL: OnceLock<Calibration> = OnceLock::new();
    CAL.get_or_init(|| calibrate(CALIBRATION_SAMPLES, CALIBRATION_SEED))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Vec<CheckReport>,
}

fn metabelian_certificates() -> Vec<CheckReport> {
    (3..=12)
        .map(|n| algebra::metabelian(n, 1000, 0x5eed + n).expect("valid params"))
        .collect()
}

fn cyclotomic_identities() -> Vec<CheckReport> {
    vec![algebra::cyclotomic(200, 32, 64).expect("valid params")]
}

fn scc_order_certificates() -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for genus in 2..=4 {
        for n in 3..=12 {
            for spec in scc_specs(genus) {
                reports.push(algebra::scc_order(genus, n, spec).expect("valid params"));
            }
        }
    }
    reports
}

fn twist_validity_and_triviality() -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for genus in 2..=3usize {
        for spec in twist_specs(genus) {
            reports.push(algebra::twist_validity(genus, spec).expect("valid params"));
            for n in 3..=10 {
                for witness in [TwistWitness::QnViaF, TwistWitness::H1Mod] {
                    reports.push(
                        algebra::twist_power(genus, n, spec, witness).expect("valid params"),
                    );
                }
            }
        }
        for j1 in 1..=genus {
            for j2 in j1 + 1..=genus {
                reports
                    .push(algebra::commuting_twists(genus, 6, j1, j2).expect("valid params"));
            }
        }
    }
    reports
}

fn calibration_and_four_point() -> Vec<CheckReport> {
    let cal = calibration();
    vec![
        geometry::four_point(cal, 100_000, 0xf4e5).expect("calibrated"),
        geometry::triangle(100_000, 0x7219).expect("valid params"),
    ]
}

fn length_relations() -> Vec<CheckReport> {
    vec![geometry::length_relations(calibration(), 50, 0x1e47).expect("calibrated")]
}

fn cone_identities() -> Vec<CheckReport> {
    vec![geometry::cone(10_000, 0xc0e).expect("valid params")]
}

fn energy_chain() -> Vec<CheckReport> {
    vec![geometry::energy_chain(100, 0xe4e6, 32).expect("valid params")]
}

fn fuchsian_model() -> Vec<CheckReport> {
    vec![geometry::fuchsian(calibration()).expect("calibrated")]
}

fn thinness() -> Vec<CheckReport> {
    vec![geometry::thinness(calibration(), 20, 0x7415).expect("calibrated")]
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            name: "metabelian certificate (n = 3..12, 10^3 trials)",
            budget: Some(Duration::from_secs(5)),
            run: metabelian_certificates,
        },
        Criterion {
            name: "cyclotomic identities (products to 200, chi to 32, orders to 64)",
            budget: None,
            run: cyclotomic_identities,
        },
        Criterion {
            name: "scc order certificates (g = 2..4, n = 3..12, all curve types)",
            budget: Some(Duration::from_secs(5)),
            run: scc_order_certificates,
        },
        Criterion {
            name: "twist validity, power triviality, and commutation",
            budget: Some(Duration::from_secs(10)),
            run: twist_validity_and_triviality,
        },
        Criterion {
            name: "four-point calibration regression and triangle inequalities",
            budget: Some(Duration::from_secs(30)),
            run: calibration_and_four_point,
        },
        Criterion {
            name: "length relations (50 loxodromics, power additivity)",
            budget: None,
            run: length_relations,
        },
        Criterion {
            name: "cone identities (special cases and matched samples)",
            budget: None,
            run: cone_identities,
        },
        Criterion {
            name: "energy chain (100 configurations, |U| <= 4)",
            budget: None,
            run: energy_chain,
        },
        Criterion {
            name: "fuchsian genus-2 model (relator, lengths, injectivity radius)",
            budget: None,
            run: fuchsian_model,
        },
        Criterion {
            name: "thinness bound (20 loxodromics, two displacement bounds)",
            budget: None,
            run: thinness,
        },
    ];

    // force the calibration outside the per-criterion clocks
    let cal_start = Instant::now();
    let cal = calibration();
    println!(
        "calibration: delta_hat = {:.9} from {} samples in {:?}",
        cal.delta_hat,
        CALIBRATION_SAMPLES,
        cal_start.elapsed()
    );

    let mut failures = Vec::new();
    for (index, criterion) in criteria.iter().enumerate() {
        let start = Instant::now();
        let reports = (criterion.run)();
        let elapsed = start.elapsed();
        let failed: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed()).collect();
        let over_budget = criterion.budget.is_some_and(|b| elapsed > b);
        let verdict = if failed.is_empty() && !over_budget { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2}: {:70} {} ({} cells, {:?})",
            index + 1,
            criterion.name,
            verdict,
            reports.len(),
            elapsed
        );
        for report in failed {
            failures.push(format!("criterion {}: {}", index + 1, report.to_json()));
        }
        if over_budget {
            failures.push(format!(
                "criterion {}: exceeded runtime target {:?} (took {:?})",
                index + 1,
                criterion.budget.unwrap(),
                elapsed
            ));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
