//! An explicit cocompact genus-2 group: side pairings of the regular
//! hyperbolic octagon with vertex angle pi/8 * 2.
//!
//! The octagon is centred at i with vertices at directions
//! (2k+1) pi/8 and circumradius arccosh(cot^2(pi/8)). Sides are labelled
//! so that consecutive sides carry the pattern
//! x1 x2 x1^-1 x2^-1 x3 x4 x3^-1 x4^-1; the pairing map of a generator
//! sends its inverse-labelled side onto its own side with reversed
//! orientation. The eight returned matrices are the images of the
//! relator letters in order, so their product is +-identity and each is
//! loxodromic with the same translation length.

use std::f64::consts::PI;

use super::halfplane::HPoint;
use super::isometry::{mapping_segment, Isometry, IsometryClass};

/// The point at distance `d` from i in direction `alpha` (up is zero).
fn point_at(d: f64, alpha: f64) -> HPoint {
    Isometry::rotation_about_i(alpha).apply(HPoint { re: 0.0, im: d.exp() })
}

/// The eight relator letters x1 x2 x1^-1 x2^-1 x3 x4 x3^-1 x4^-1 of the
/// octagon group, in relator order.
pub fn genus2_fuchsian() -> [Isometry; 8] {
    // right triangle (centre, vertex, side midpoint) with angles
    // pi/8, pi/8, pi/2: cosh of the circumradius is cot^2(pi/8)
    let cot = 1.0 / (PI / 8.0).tan();
    let circumradius = (cot * cot).acosh();
    let vertex =
        |k: usize| point_at(circumradius, (2.0 * k as f64 + 1.0) * PI / 8.0);
    // pairing of the side pair (i, j): directed side j onto reversed side i
    let pairing = |i: usize, j: usize| {
        mapping_segment(vertex(j), vertex(j + 1), vertex((i + 1) % 8), vertex(i))
            .expect("octagon vertices are distinct")
    };
    let x1 = pairing(0, 2);
    let x2 = pairing(1, 3).inverse();
    let x3 = pairing(4, 6);
    let x4 = pairing(5, 7).inverse();
    [
        x1,
        x2,
        x1.inverse(),
        x2.inverse(),
        x3,
        x4,
        x3.inverse(),
        x4.inverse(),
    ]
}

/// Product of the eight matrices in relator order; the construction
/// certificate is that this lands on +-identity.
pub fn relator_product(gens: &[Isometry; 8]) -> Isometry {
    gens.iter().fold(Isometry::identity(), |acc, g| acc.compose(g))
}

/// Minimum stable translation length over all loxodromic products of at
/// most `max_len` factors from `gens`. `None` when no product in range is
/// loxodromic.
pub fn injectivity_radius_estimate(gens: &[Isometry], max_len: usize) -> Option<f64> {
    let mut best: Option<f64> = None;
    // products of exact length l, reusing the previous layer
    let mut layer: Vec<Isometry> = vec![Isometry::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for m in &layer {
            for g in gens {
                let prod = m.compose(g);
                if prod.projective_distance_to_identity() < 1e-9 {
                    continue;
                }
                if prod.classify() == IsometryClass::Loxodromic {
                    let l = prod.stable_translation_length();
                    best = Some(best.map_or(l, |b: f64| b.min(l)));
                }
                next.push(prod);
            }
        }
        layer = next;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn relator_lands_on_projective_identity() {
        let gens = genus2_fuchsian();
        let rel = relator_product(&gens);
        assert!(
            rel.projective_distance_to_identity() < 1e-12,
            "relator error {}",
            rel.projective_distance_to_identity()
        );
    }

    #[test]
    fn generators_share_translation_length() {
        let gens = genus2_fuchsian();
        let lengths: Vec<f64> =
            gens.iter().map(|g| g.stable_translation_length()).collect();
        for g in &gens {
            assert_eq!(g.classify(), IsometryClass::Loxodromic);
        }
        for l in &lengths {
            assert_relative_eq!(*l, lengths[0], epsilon = 1e-12);
        }
        // regular-octagon commutator pairing: |trace| = 2 + sqrt 2
        let expected = 2.0 * ((2.0 + 2.0f64.sqrt()) / 2.0).acosh();
        assert_relative_eq!(lengths[0], expected, epsilon = 1e-12);
    }

    #[test]
    fn short_products_stay_loxodromic() {
        let gens = genus2_fuchsian();
        let inj = injectivity_radius_estimate(&gens, 3).unwrap();
        assert!(inj > 0.0);
        // the generators themselves realise the minimum at this depth
        assert_relative_eq!(inj, gens[0].stable_translation_length(), epsilon = 1e-9);
    }

    #[test]
    fn powers_of_one_generator() {
        let gens = genus2_fuchsian();
        let single = [gens[0]];
        let inj = injectivity_radius_estimate(&single, 3).unwrap();
        assert_relative_eq!(inj, gens[0].stable_translation_length(), epsilon = 1e-12);
    }

    #[test]
    fn elliptic_only_input_has_no_estimate() {
        let r = Isometry::rotation_about_i(0.7);
        assert_eq!(injectivity_radius_estimate(&[r], 2), None);
    }
}
