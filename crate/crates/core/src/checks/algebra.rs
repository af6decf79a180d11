//! Exact algebraic checks: cyclotomic identities, the metabelian witness
//! group, curve-order certificates, and twist verification.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::qn;
use crate::report::{CheckReport, ReportBuilder};
use crate::ring::{chi_value, cyclotomic_polynomial, IntPolynomial, RingContext};
use crate::surface::{qn_witness, scc_word, scc_specs, SccSpec};
use crate::twist::{self, Endomorphism, TwistSpec, TwistWitness};
use crate::surface::SurfacePresentation;
use crate::CheckError;

/// Divisor-product identity, vanishing of the geometric sums, and the
/// order of the root of unity, over the stated ranges.
pub fn cyclotomic(product_max: u64, chi_max: u64, order_max: u64) -> Result<CheckReport, CheckError> {
    let mut builder = ReportBuilder::new("cyclotomic", 0)
        .param("product_max", product_max)
        .param("chi_max", chi_max)
        .param("order_max", order_max);

    let product_violation = |n: u64| -> Option<u64> {
        let mut prod = IntPolynomial::one();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                prod = prod.mul(&cyclotomic_polynomial(d).ok()?);
            }
        }
        (prod != IntPolynomial::x_pow_minus_one(n as usize)).then_some(n)
    };
    #[cfg(feature = "parallel")]
    let product_violations: Vec<u64> =
        (1..=product_max).into_par_iter().filter_map(product_violation).collect();
    #[cfg(not(feature = "parallel"))]
    let product_violations: Vec<u64> =
        (1..=product_max).filter_map(product_violation).collect();
    builder.item(
        "divisor products equal X^n - 1 (violations)",
        0,
        product_violations.len(),
    );
    if let Some(n) = product_violations.first() {
        builder.counterexample(format!("n = {n}"));
    }

    let mut chi_violations = 0u64;
    for n in 2..=chi_max {
        let ctx = RingContext::new(n)?;
        for k in 0..n {
            if !chi_value(&ctx, k).is_zero() {
                chi_violations += 1;
                builder.counterexample(format!("chi(n={n}, k={k}) != 0"));
            }
        }
    }
    builder.item("geometric sums vanish (violations)", 0, chi_violations);

    let mut order_violations = 0u64;
    for n in 3..=order_max {
        let order = RingContext::new(n)?.xi_order();
        if order != n {
            order_violations += 1;
            builder.counterexample(format!("xi_order({n}) = {order}"));
        }
    }
    builder.item("xi has full order for 3 <= n (violations)", 0, order_violations);
    builder.item("xi order at n = 2", 1, RingContext::new(2)?.xi_order());
    Ok(builder.finish())
}

/// Structural claims of the witness group, sampled.
pub fn metabelian(n: u64, trials: u64, seed: u64) -> Result<CheckReport, CheckError> {
    Ok(qn::verify_metabelian_periodic(n, trials, seed)?)
}

/// Order certificate for the standard curve: the witness image has order
/// exactly n, and no smaller positive power is trivial.
pub fn scc_order(genus: usize, n: u64, spec: SccSpec) -> Result<CheckReport, CheckError> {
    let ctx = RingContext::new(n)?;
    let witness = qn_witness(genus, &ctx)?;
    let gamma = scc_word(genus, spec)?;
    let image = witness.apply(&gamma)?;
    let mut builder = ReportBuilder::new("scc-order", 0)
        .param("genus", genus)
        .param("n", n)
        .param("spec", spec);
    builder.item("witness image order", n, image.order()?);
    let early = (1..n).filter(|&k| image.pow(k).is_identity()).count();
    builder.item("trivial powers below n", 0, early);
    Ok(builder.finish())
}

/// The twist maps the relator to a free-group conjugate of itself and is
/// invertible on homology.
pub fn twist_validity(genus: usize, spec: TwistSpec) -> Result<CheckReport, CheckError> {
    let p = SurfacePresentation::standard(genus)?;
    let t = Endomorphism::twist(genus, spec)?;
    let mut report = twist::validity_report(&p, &t);
    report.params.insert("spec".to_string(), spec.to_string());
    Ok(report)
}

pub fn twist_power(
    genus: usize,
    n: u64,
    spec: TwistSpec,
    witness: TwistWitness,
) -> Result<CheckReport, CheckError> {
    Ok(twist::verify_twist_power_trivial(genus, n, spec, witness)?)
}

pub fn commuting_twists(
    genus: usize,
    n: u64,
    j1: usize,
    j2: usize,
) -> Result<CheckReport, CheckError> {
    Ok(twist::verify_commuting_twists(genus, n, j1, j2)?)
}

/// The low-genus cells of the algebra acceptance matrix.
pub fn algebra_cells() -> Vec<super::SuiteCell> {
    let mut cells: Vec<super::SuiteCell> = Vec::new();
    let p = |k: &str, v: String| (k.to_string(), v);
    cells.push(("cyclotomic".into(), Vec::new()));
    for n in 3..=12u64 {
        cells.push(("metabelian".into(), vec![p("n", n.to_string())]));
    }
    for genus in 2..=4usize {
        for n in 3..=12u64 {
            for spec in scc_specs(genus) {
                cells.push((
                    "scc-order".into(),
                    vec![
                        p("genus", genus.to_string()),
                        p("n", n.to_string()),
                        p("spec", spec.to_string()),
                    ],
                ));
            }
        }
    }
    for genus in 2..=3usize {
        for spec in twist::twist_specs(genus) {
            cells.push((
                "twist-validity".into(),
                vec![p("genus", genus.to_string()), p("spec", spec.to_string())],
            ));
            for n in 3..=10u64 {
                for witness in ["qn", "h1"] {
                    cells.push((
                        "twist-power".into(),
                        vec![
                            p("genus", genus.to_string()),
                            p("n", n.to_string()),
                            p("spec", spec.to_string()),
                            p("witness", witness.to_string()),
                        ],
                    ));
                }
            }
        }
        for j1 in 1..=genus {
            for j2 in j1 + 1..=genus {
                cells.push((
                    "commuting-twists".into(),
                    vec![
                        p("genus", genus.to_string()),
                        p("n", "6".to_string()),
                        p("spec", TwistSpec::AlongA(j1).to_string()),
                        p("spec2", TwistSpec::AlongA(j2).to_string()),
                    ],
                ));
            }
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small_ranges() {
        let r = cyclotomic(40, 10, 12).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn scc_order_cells() {
        let r = scc_order(2, 5, SccSpec::NonSeparating).unwrap();
        assert!(r.passed());
        let r = scc_order(3, 7, SccSpec::Separating(2)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn twist_validity_cells() {
        let r = twist_validity(2, TwistSpec::AlongA(1)).unwrap();
        assert!(r.passed());
        let r = twist_validity(3, TwistSpec::SeparatingCut(2)).unwrap();
        assert!(r.passed());
    }
}
