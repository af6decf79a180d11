//! The finite witness group of upper-triangular matrices over the
//! cyclotomic residue ring.
//!
//! An element is a pair (k, z) standing for the matrix
//! [[xi^k, z], [0, 1]] with z in R = (Z/nZ)[X]/(Phi_n). The product law
//! (k, z)(k', z') = (k + k', xi^k z' + z) is forced by matrix
//! multiplication; the group is generated by A = (1, 0) and B = (0, 1).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::report::{CheckReport, ReportBuilder};
use crate::ring::{RingContext, RingCtx, RingElement, RingError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QnError {
    #[error("the construction requires n > 2, got n = {0}")]
    ModulusTooSmall(u64),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("no power up to n = {0} gives the identity")]
    OrderNotFound(u64),
}

/// Group element (k, z) = [[xi^k, z], [0, 1]].
///
/// Equality is semantic: exponents compare modulo the order of xi in R,
/// so the representation stays correct even in degenerate rings where
/// ord(xi) < n.
#[derive(Debug, Clone)]
pub struct QnElement {
    ctx: RingCtx,
    k: u64,
    z: RingElement,
}

impl PartialEq for QnElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.k % self.ctx.xi_order() == other.k % self.ctx.xi_order()
            && self.z == other.z
    }
}
impl Eq for QnElement {}

impl QnElement {
    pub fn identity(ctx: &RingCtx) -> QnElement {
        QnElement { ctx: ctx.clone(), k: 0, z: RingElement::zero(ctx) }
    }

    /// The generator pair (A, B) = ((1, 0), (0, 1)). Rejects n <= 2,
    /// where the ring degenerates and the commutator entry xi - 1 is 0.
    pub fn generators(ctx: &RingCtx) -> Result<(QnElement, QnElement), QnError> {
        if ctx.n() <= 2 {
            return Err(QnError::ModulusTooSmall(ctx.n()));
        }
        let a = QnElement { ctx: ctx.clone(), k: 1, z: RingElement::zero(ctx) };
        let b = QnElement { ctx: ctx.clone(), k: 0, z: RingElement::one(ctx) };
        Ok((a, b))
    }

    pub fn context(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn k_exp(&self) -> u64 {
        self.k
    }

    pub fn upper(&self) -> &RingElement {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self == &QnElement::identity(&self.ctx)
    }

    /// Diagonal part is 1, i.e. the element lies in the derived subgroup's
    /// ambient unitriangular group.
    pub fn is_unitriangular(&self) -> bool {
        self.k.is_multiple_of(self.ctx.xi_order())
    }

    fn check_ctx(&self, other: &QnElement) -> Result<(), QnError> {
        if self.ctx != other.ctx {
            return Err(RingError::ContextMismatch(self.ctx.n(), other.ctx.n()).into());
        }
        Ok(())
    }

    pub fn mul(&self, other: &QnElement) -> Result<QnElement, QnError> {
        self.check_ctx(other)?;
        let xi_k = RingElement::xi(&self.ctx).pow(self.k);
        Ok(QnElement {
            ctx: self.ctx.clone(),
            k: (self.k + other.k) % self.ctx.n(),
            z: xi_k.mul(&other.z)?.add(&self.z)?,
        })
    }

    pub fn inverse(&self) -> QnElement {
        let n = self.ctx.n();
        let k_inv = (n - self.k % n) % n;
        let xi_minus_k = RingElement::xi(&self.ctx).pow(k_inv);
        QnElement {
            ctx: self.ctx.clone(),
            k: k_inv,
            z: xi_minus_k.mul(&self.z.neg()).expect("same context"),
        }
    }

    pub fn commutator(&self, other: &QnElement) -> Result<QnElement, QnError> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// Power by iterated multiplication.
    pub fn pow(&self, m: u64) -> QnElement {
        let mut acc = QnElement::identity(&self.ctx);
        for _ in 0..m {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Closed form (k, z)^m = (mk, (1 + xi^k + ... + xi^((m-1)k)) z);
    /// kept as an independent cross-check of `pow`.
    pub fn pow_closed_form(&self, m: u64) -> QnElement {
        let xi_k = RingElement::xi(&self.ctx).pow(self.k);
        let mut sum = RingElement::zero(&self.ctx);
        let mut term = RingElement::one(&self.ctx);
        for _ in 0..m {
            sum = sum.add(&term).expect("same context");
            term = term.mul(&xi_k).expect("same context");
        }
        QnElement {
            ctx: self.ctx.clone(),
            k: (self.k % self.ctx.n()) * m % self.ctx.n(),
            z: sum.mul(&self.z).expect("same context"),
        }
    }

    /// Least m >= 1 with self^m = identity, searched up to n. The bound is
    /// justified once n-periodicity is verified; exceeding it would
    /// falsify that and is reported as an error.
    pub fn order(&self) -> Result<u64, QnError> {
        let mut acc = self.clone();
        for m in 1..=self.ctx.n() {
            if acc.is_identity() {
                return Ok(m);
            }
            acc = acc.mul(self).expect("same context");
        }
        Err(QnError::OrderNotFound(self.ctx.n()))
    }
}

/// `{"k": .., "z": [coeffs], "n": ..}`.
impl Serialize for QnElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QnElement", 3)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("z", self.z.coeffs())?;
        s.serialize_field("n", &self.ctx.n())?;
        s.end()
    }
}

/// Random product of the generators and their inverses, length 1..=max_len.
pub fn random_element(
    ctx: &RingCtx,
    rng: &mut impl Rng,
    max_len: usize,
) -> Result<QnElement, QnError> {
    let (a, b) = QnElement::generators(ctx)?;
    let factors = [a.clone(), a.inverse(), b.clone(), b.inverse()];
    let len = rng.gen_range(1..=max_len);
    let mut out = QnElement::identity(ctx);
    for _ in 0..len {
        out = out.mul(&factors[rng.gen_range(0..4)])?;
    }
    Ok(out)
}

/// Sampled verification of the four structural claims: commutators are
/// unitriangular, any two of them commute, every element's n-th power is
/// the identity, and A and [A, B] have order exactly n.
pub fn verify_metabelian_periodic(n: u64, trials: u64, seed: u64) -> Result<CheckReport, QnError> {
    let ctx = RingContext::new(n).map_err(QnError::from)?;
    let (a, b) = QnElement::generators(&ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = ReportBuilder::new("metabelian", seed)
        .param("n", n)
        .param("trials", trials);

    let mut unitriangular_violations = 0u64;
    let mut commuting_violations = 0u64;
    let mut periodic_violations = 0u64;
    for _ in 0..trials {
        let x = random_element(&ctx, &mut rng, 20)?;
        let y = random_element(&ctx, &mut rng, 20)?;
        let c1 = x.commutator(&y)?;
        if !c1.is_unitriangular() {
            unitriangular_violations += 1;
            builder.counterexample(serde_json::to_string(&c1).unwrap());
        }
        let u = random_element(&ctx, &mut rng, 20)?;
        let v = random_element(&ctx, &mut rng, 20)?;
        let c2 = u.commutator(&v)?;
        if c1.mul(&c2)? != c2.mul(&c1)? {
            commuting_violations += 1;
            builder.counterexample(serde_json::to_string(&c2).unwrap());
        }
        if !x.pow(n).is_identity() {
            periodic_violations += 1;
            builder.counterexample(serde_json::to_string(&x).unwrap());
        }
    }
    builder.item("commutators unitriangular (violations)", 0, unitriangular_violations);
    builder.item("commutators pairwise commute (violations)", 0, commuting_violations);
    builder.item("n-th powers trivial (violations)", 0, periodic_violations);
    builder.item("order of A", n, a.order()?);
    builder.item("order of [A,B]", n, a.commutator(&b)?.order()?);
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u64) -> RingCtx {
        RingContext::new(n).unwrap()
    }

    #[test]
    fn generator_shape() {
        let c = ctx(3);
        let (a, b) = QnElement::generators(&c).unwrap();
        assert_eq!(a.k_exp(), 1);
        assert!(a.upper().is_zero());
        assert_eq!(b.k_exp(), 0);
        assert!(b.upper().is_one());
        let c5 = ctx(5);
        assert!(QnElement::generators(&c5).is_ok());
        assert_eq!(QnElement::generators(&ctx(2)).unwrap_err(), QnError::ModulusTooSmall(2));
    }

    #[test]
    fn product_law() {
        let c = ctx(3);
        let (a, b) = QnElement::generators(&c).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.k_exp(), 1);
        assert_eq!(ab.upper(), &RingElement::xi(&c));
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn commutator_entry_is_xi_minus_one() {
        let c = ctx(5);
        let (a, b) = QnElement::generators(&c).unwrap();
        let comm = a.commutator(&b).unwrap();
        assert!(comm.is_unitriangular());
        let expect = RingElement::xi(&c).sub(&RingElement::one(&c)).unwrap();
        assert_eq!(comm.upper(), &expect);
    }

    #[test]
    fn orders_of_generators() {
        for n in [3u64, 5, 7] {
            let c = ctx(n);
            let (a, b) = QnElement::generators(&c).unwrap();
            assert_eq!(a.order().unwrap(), n, "ord(A), n={n}");
            assert_eq!(a.commutator(&b).unwrap().order().unwrap(), n, "ord([A,B]), n={n}");
        }
        let c = ctx(4);
        assert_eq!(QnElement::identity(&c).order().unwrap(), 1);
    }

    #[test]
    fn closed_form_matches_iterated_power() {
        let c = ctx(6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = random_element(&c, &mut rng, 12).unwrap();
            for m in 0..=6 {
                assert_eq!(x.pow(m), x.pow_closed_form(m));
            }
        }
    }

    #[test]
    fn equality_consistent_with_multiplication() {
        let c = ctx(5);
        let (a, b) = QnElement::generators(&c).unwrap();
        // same element along two routes
        let x = a.pow(6); // = a since a^5 = 1
        assert_eq!(x, a);
        assert_eq!(x.mul(&b).unwrap(), a.mul(&b).unwrap());
    }

    #[test]
    fn report_passes_for_small_n() {
        let r = verify_metabelian_periodic(3, 200, 1).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        let r7 = verify_metabelian_periodic(7, 200, 1).unwrap();
        assert!(r7.passed());
    }

    #[test]
    fn json_shape() {
        let c = ctx(3);
        let (a, _) = QnElement::generators(&c).unwrap();
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, serde_json::json!({"k": 1, "z": [0, 0], "n": 3}));
    }
}
