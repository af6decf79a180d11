//! Exact arithmetic in the finite ring (Z/nZ)[X]/(Phi_n(X)).
//!
//! Cyclotomic polynomials are built over the integers by exact division
//! of X^n - 1 by the product of the lower-order factors, then reduced
//! mod n when a [`RingContext`] is created. Coefficients of `Phi_n` can
//! exceed +-1 (the first instance is n = 105), so the integer stage uses
//! arbitrary precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("cyclotomic polynomial undefined for n = 0")]
    ZeroIndex,
    #[error("ring modulus must satisfy n >= 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("context mismatch: R(n={0}) vs R(n={1})")]
    ContextMismatch(u64, u64),
    #[error("coefficient vector has length {got}, context degree is {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
}

/// Integer polynomial, constant term first, no trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    /// X^n - 1.
    pub fn x_pow_minus_one(n: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    /// Exact division by a monic divisor; errors if a remainder is left.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, RingError> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        if rem.len() <= d {
            return if self.is_zero() {
                Ok(IntPolynomial::zero())
            } else {
                Err(RingError::InexactDivision)
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[k + d]);
            for (j, c) in divisor.coeffs.iter().enumerate().take(d) {
                rem[k + j] -= &lead * c;
            }
            quot[k] = lead;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(RingError::InexactDivision);
        }
        Ok(IntPolynomial::from_coeffs(quot))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", term(c, i, true))?;
                first = false;
            } else {
                write!(f, " {}", term(c, i, false))?;
            }
        }
        Ok(())
    }
}

fn term(c: &BigInt, i: usize, leading: bool) -> String {
    let sign = if c.is_negative() {
        "- "
    } else if leading {
        ""
    } else {
        "+ "
    };
    let mag = c.abs();
    match i {
        0 => format!("{sign}{mag}"),
        1 if mag.is_one() => format!("{sign}X"),
        1 => format!("{sign}{mag}X"),
        _ if mag.is_one() => format!("{sign}X^{i}"),
        _ => format!("{sign}{mag}X^{i}"),
    }
}

/// The n-th cyclotomic polynomial over the integers, by the divisor
/// recursion: X^n - 1 divided by the product of Phi_d over proper
/// divisors d of n.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPolynomial, RingError> {
    if n == 0 {
        return Err(RingError::ZeroIndex);
    }
    if n == 1 {
        return Ok(IntPolynomial::from_i64(&[-1, 1]));
    }
    let mut denom = IntPolynomial::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            denom = denom.mul(&cyclotomic_polynomial(d)?);
        }
    }
    IntPolynomial::x_pow_minus_one(n as usize).div_exact(&denom)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The ring R = (Z/nZ)[X]/(Phi_n mod n). Immutable once created; elements
/// hold an `Arc` to it.
#[derive(Debug)]
pub struct RingContext {
    n: u64,
    degree: usize,
    /// Monic modulus, length degree + 1, coefficients reduced mod n.
    modulus: Vec<u64>,
    xi_order: u64,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}
impl Eq for RingContext {}

pub type RingCtx = Arc<RingContext>;

impl RingContext {
    pub fn new(n: u64) -> Result<RingCtx, RingError> {
        if n < 2 {
            return Err(RingError::ModulusTooSmall(n));
        }
        let phi = cyclotomic_polynomial(n)?;
        let degree = phi.degree();
        debug_assert_eq!(degree as u64, euler_phi(n));
        let n_big = BigInt::from(n);
        let modulus: Vec<u64> = phi
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &n_big) + &n_big) % &n_big;
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        let mut ctx = RingContext { n, degree, modulus, xi_order: 0 };
        ctx.xi_order = ctx.compute_xi_order();
        Ok(Arc::new(ctx))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Least k in [1, n] with xi^k = 1. The bound is forced: X^n is 1
    /// modulo (n, Phi_n) since Phi_n divides X^n - 1 over the integers.
    pub fn xi_order(&self) -> u64 {
        self.xi_order
    }

    fn compute_xi_order(&self) -> u64 {
        let xi = self.xi_coeffs();
        let mut acc = xi.clone();
        for k in 1..=self.n {
            if self.is_one_coeffs(&acc) {
                return k;
            }
            acc = self.mul_coeffs(&acc, &xi);
        }
        unreachable!("xi^n = 1 in R(n={})", self.n)
    }

    fn xi_coeffs(&self) -> Vec<u64> {
        let mut c = vec![0; self.degree];
        if self.degree == 1 {
            // degree-1 modulus X + c0: the class of X is -c0
            c[0] = (self.n - self.modulus[0] % self.n) % self.n;
        } else {
            c[1] = 1;
        }
        c
    }

    fn is_one_coeffs(&self, c: &[u64]) -> bool {
        c[0] == 1 % self.n && c[1..].iter().all(|&x| x == 0)
    }

    /// Schoolbook product followed by reduction by the monic modulus.
    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.degree;
        let mut full = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                full[i + j] = (full[i + j] + x * y) % self.n;
            }
        }
        // reduce: X^(d+k) = -sum modulus[j] X^(j+k)
        for k in (d..full.len()).rev() {
            let lead = full[k];
            if lead == 0 {
                continue;
            }
            full[k] = 0;
            for j in 0..d {
                let sub = (lead * self.modulus[j]) % self.n;
                full[k - d + j] = (full[k - d + j] + self.n - sub) % self.n;
            }
        }
        full.truncate(d);
        full.resize(d, 0);
        full
    }
}

/// An element of R: exactly `degree` residues mod n, constant term first.
#[derive(Debug, Clone)]
pub struct RingElement {
    ctx: RingCtx,
    coeffs: Vec<u64>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}
impl Eq for RingElement {}

impl RingElement {
    pub fn zero(ctx: &RingCtx) -> RingElement {
        RingElement { ctx: ctx.clone(), coeffs: vec![0; ctx.degree()] }
    }

    pub fn one(ctx: &RingCtx) -> RingElement {
        let mut coeffs = vec![0; ctx.degree()];
        coeffs[0] = 1 % ctx.n();
        RingElement { ctx: ctx.clone(), coeffs }
    }

    /// The class of X.
    pub fn xi(ctx: &RingCtx) -> RingElement {
        RingElement { ctx: ctx.clone(), coeffs: ctx.xi_coeffs() }
    }

    pub fn from_coeffs(ctx: &RingCtx, coeffs: Vec<u64>) -> Result<RingElement, RingError> {
        if coeffs.len() != ctx.degree() {
            return Err(RingError::DegreeMismatch { got: coeffs.len(), want: ctx.degree() });
        }
        let coeffs = coeffs.into_iter().map(|c| c % ctx.n()).collect();
        Ok(RingElement { ctx: ctx.clone(), coeffs })
    }

    pub fn context(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.ctx.is_one_coeffs(&self.coeffs)
    }

    fn check_ctx(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ctx != other.ctx {
            return Err(RingError::ContextMismatch(self.ctx.n(), other.ctx.n()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_ctx(other)?;
        let n = self.ctx.n();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % n)
            .collect();
        Ok(RingElement { ctx: self.ctx.clone(), coeffs })
    }

    pub fn neg(&self) -> RingElement {
        let n = self.ctx.n();
        let coeffs = self.coeffs.iter().map(|&a| (n - a % n) % n).collect();
        RingElement { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_ctx(other)?;
        let coeffs = self.ctx.mul_coeffs(&self.coeffs, &other.coeffs);
        Ok(RingElement { ctx: self.ctx.clone(), coeffs })
    }

    /// Repeated squaring.
    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = RingElement::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            base = base.mul(&base).expect("same context");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(n={}) [", self.ctx.n())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Evaluates 1 + xi^k + xi^(2k) + ... + xi^((n-1)k) in R. Always the zero
/// element: the geometric sum is 0 or n in Z[xi], and both vanish mod n.
pub fn chi_value(ctx: &RingCtx, k: u64) -> RingElement {
    let step = RingElement::xi(ctx).pow(k);
    let mut term = RingElement::one(ctx);
    let mut acc = RingElement::zero(ctx);
    for _ in 0..ctx.n() {
        acc = acc.add(&term).expect("same context");
        term = term.mul(&step).expect("same context");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(n: u64) -> IntPolynomial {
        cyclotomic_polynomial(n).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(phi(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(phi(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(phi(3), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(phi(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(phi(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(0), Err(RingError::ZeroIndex));
    }

    #[test]
    fn phi_105_has_coefficient_two() {
        let p = phi(105);
        assert_eq!(p.degree() as u64, euler_phi(105));
        assert!(p.coeffs().iter().any(|c| c.abs() == BigInt::from(2)));
    }

    #[test]
    fn divisor_product_identity_spot() {
        for n in [1u64, 2, 6, 12, 36, 105] {
            let mut prod = IntPolynomial::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&phi(d));
                }
            }
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n={n}");
        }
    }

    #[test]
    fn context_shapes() {
        let c3 = RingContext::new(3).unwrap();
        assert_eq!((c3.degree(), c3.modulus()), (2, &[1, 1, 1][..]));
        let c4 = RingContext::new(4).unwrap();
        assert_eq!((c4.degree(), c4.modulus()), (2, &[1, 0, 1][..]));
        let c2 = RingContext::new(2).unwrap();
        assert_eq!((c2.degree(), c2.modulus()), (1, &[1, 1][..]));
        assert_eq!(RingContext::new(1).unwrap_err(), RingError::ModulusTooSmall(1));
    }

    #[test]
    fn mul_in_r4() {
        // (1+X)^2 = 1 + 2X + X^2 = 2X once X^2 = -1
        let ctx = RingContext::new(4).unwrap();
        let x = RingElement::from_coeffs(&ctx, vec![1, 1]).unwrap();
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coeffs(), &[0, 2]);
        let one = RingElement::one(&ctx);
        assert_eq!(x.mul(&one).unwrap(), x);
        assert!(x.mul(&RingElement::zero(&ctx)).unwrap().is_zero());
    }

    #[test]
    fn xi_orders() {
        assert_eq!(RingContext::new(2).unwrap().xi_order(), 1);
        assert_eq!(RingContext::new(3).unwrap().xi_order(), 3);
        assert_eq!(RingContext::new(4).unwrap().xi_order(), 4);
        // xi^2 = 2 + 2X != 1 in R(3)
        let ctx = RingContext::new(3).unwrap();
        let xi2 = RingElement::xi(&ctx).pow(2);
        assert_eq!(xi2.coeffs(), &[2, 2]);
    }

    #[test]
    fn chi_vanishes() {
        for (n, k) in [(3, 1), (4, 0), (6, 2), (6, 3)] {
            let ctx = RingContext::new(n).unwrap();
            assert!(chi_value(&ctx, k).is_zero(), "n={n} k={k}");
        }
    }

    #[test]
    fn xi_minus_one_degenerates_at_two() {
        // in R(2), xi = 1, so the commutator entry xi - 1 vanishes
        let ctx = RingContext::new(2).unwrap();
        let diff = RingElement::xi(&ctx).sub(&RingElement::one(&ctx)).unwrap();
        assert!(diff.is_zero());
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = RingElement::one(&RingContext::new(3).unwrap());
        let b = RingElement::one(&RingContext::new(4).unwrap());
        assert_eq!(a.mul(&b).unwrap_err(), RingError::ContextMismatch(3, 4));
    }

    #[test]
    fn display_tags_context() {
        let ctx = RingContext::new(6).unwrap();
        let x = RingElement::xi(&ctx);
        assert_eq!(x.to_string(), "R(n=6) [0,1]");
    }
}
