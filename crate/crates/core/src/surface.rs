//! Standard surface presentations, simple-closed-curve standard forms,
//! and the witness homomorphisms that certify curve orders in the
//! n-periodic quotients.
//!
//! The alphabet of a genus-g presentation is ordered a1, b1, ..., ag, bg;
//! generator a_i has index 2(i-1) and b_i has index 2(i-1)+1.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::qn::{QnElement, QnError};
use crate::ring::RingCtx;
use crate::words::{Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("separating index {index} must satisfy 1 <= index < genus {genus}")]
    BadSeparatingIndex { index: usize, genus: usize },
    #[error("homomorphism expects {want} generator images, got {got}")]
    ImageCount { want: usize, got: usize },
    #[error("word rank {got} does not match homomorphism domain rank {want}")]
    DomainMismatch { want: usize, got: usize },
    #[error("cannot parse scc spec `{0}`, expected `nonsep` or `sep:i`")]
    ParseSpec(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Qn(#[from] QnError),
}

/// One-relator presentation of a closed genus-g surface group, with
/// relator [a1,b1]...[ag,bg].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePresentation {
    genus: usize,
    relator: Word,
}

impl SurfacePresentation {
    pub fn standard(genus: usize) -> Result<SurfacePresentation, SurfaceError> {
        if genus < 2 {
            return Err(SurfaceError::GenusTooSmall(genus));
        }
        let rank = 2 * genus;
        let mut relator = Word::identity(rank);
        for i in 1..=genus {
            let a = Word::generator(rank, 2 * (i - 1))?;
            let b = Word::generator(rank, 2 * (i - 1) + 1)?;
            relator = relator.mul(&a.commutator(&b)?)?;
        }
        Ok(SurfacePresentation { genus, relator })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    /// Generator a_i, 1-based.
    pub fn a(&self, i: usize) -> Word {
        Word::generator(self.rank(), 2 * (i - 1)).expect("index in range")
    }

    /// Generator b_i, 1-based.
    pub fn b(&self, i: usize) -> Word {
        Word::generator(self.rank(), 2 * (i - 1) + 1).expect("index in range")
    }
}

/// Standard form of a simple closed curve: the nonseparating
/// representative a_1, or the separating representative
/// [a1,b1]...[ai,bi] with 1 <= i < g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SccSpec {
    NonSeparating,
    Separating(usize),
}

impl fmt::Display for SccSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SccSpec::NonSeparating => write!(f, "nonsep"),
            SccSpec::Separating(i) => write!(f, "sep:{i}"),
        }
    }
}

impl FromStr for SccSpec {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<SccSpec, SurfaceError> {
        if s == "nonsep" {
            return Ok(SccSpec::NonSeparating);
        }
        if let Some(i) = s.strip_prefix("sep:") {
            if let Ok(i) = i.parse::<usize>() {
                return Ok(SccSpec::Separating(i));
            }
        }
        Err(SurfaceError::ParseSpec(s.to_string()))
    }
}

/// All scc specs valid at the given genus.
pub fn scc_specs(genus: usize) -> Vec<SccSpec> {
    let mut specs = vec![SccSpec::NonSeparating];
    specs.extend((1..genus).map(SccSpec::Separating));
    specs
}

/// The standard word of the given curve type.
pub fn scc_word(genus: usize, spec: SccSpec) -> Result<Word, SurfaceError> {
    let p = SurfacePresentation::standard(genus)?;
    match spec {
        SccSpec::NonSeparating => Ok(p.a(1)),
        SccSpec::Separating(i) => {
            if i == 0 || i >= genus {
                return Err(SurfaceError::BadSeparatingIndex { index: i, genus });
            }
            let mut w = Word::identity(p.rank());
            for j in 1..=i {
                w = w.mul(&p.a(j).commutator(&p.b(j))?)?;
            }
            Ok(w)
        }
    }
}

/// Target group of a homomorphism from a free or surface group.
pub trait GroupTarget {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
}

/// Free group of the given rank; elements are reduced words.
#[derive(Debug, Clone)]
pub struct FreeTarget {
    pub rank: usize,
}

impl GroupTarget for FreeTarget {
    type Elem = Word;
    fn identity(&self) -> Word {
        Word::identity(self.rank)
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b).expect("target words share the rank")
    }
    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }
}

/// The witness group over a fixed ring context.
#[derive(Debug, Clone)]
pub struct QnTarget {
    pub ctx: RingCtx,
}

impl GroupTarget for QnTarget {
    type Elem = QnElement;
    fn identity(&self) -> QnElement {
        QnElement::identity(&self.ctx)
    }
    fn mul(&self, a: &QnElement, b: &QnElement) -> QnElement {
        a.mul(b).expect("target elements share the context")
    }
    fn inverse(&self, a: &QnElement) -> QnElement {
        a.inverse()
    }
}

/// Exponent-sum vector mod n: length 2g, entries in [0, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Vector(pub Vec<u64>);

impl fmt::Display for H1Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// First homology with Z/n coefficients.
#[derive(Debug, Clone)]
pub struct H1Target {
    pub rank: usize,
    pub modulus: u64,
}

impl GroupTarget for H1Target {
    type Elem = H1Vector;
    fn identity(&self) -> H1Vector {
        H1Vector(vec![0; self.rank])
    }
    fn mul(&self, a: &H1Vector, b: &H1Vector) -> H1Vector {
        H1Vector(
            a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % self.modulus).collect(),
        )
    }
    fn inverse(&self, a: &H1Vector) -> H1Vector {
        H1Vector(a.0.iter().map(|&x| (self.modulus - x % self.modulus) % self.modulus).collect())
    }
}

/// Generator-image map from a rank-`domain_rank` free group (or a surface
/// group with that many generators) into `T`.
#[derive(Debug, Clone)]
pub struct Homomorphism<T: GroupTarget> {
    domain_rank: usize,
    target: T,
    images: Vec<T::Elem>,
}

impl<T: GroupTarget> Homomorphism<T> {
    pub fn new(domain_rank: usize, target: T, images: Vec<T::Elem>) -> Result<Self, SurfaceError> {
        if images.len() != domain_rank {
            return Err(SurfaceError::ImageCount { want: domain_rank, got: images.len() });
        }
        Ok(Homomorphism { domain_rank, target, images })
    }

    pub fn domain_rank(&self) -> usize {
        self.domain_rank
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn images(&self) -> &[T::Elem] {
        &self.images
    }

    /// Substitute and fold with the target multiplication.
    pub fn apply(&self, w: &Word) -> Result<T::Elem, SurfaceError> {
        if w.rank() != self.domain_rank {
            return Err(SurfaceError::DomainMismatch { want: self.domain_rank, got: w.rank() });
        }
        let mut out = self.target.identity();
        for l in w.letters() {
            let img = &self.images[l.generator_index()];
            let factor =
                if l.is_inverse() { self.target.inverse(img) } else { img.clone() };
            out = self.target.mul(&out, &factor);
        }
        Ok(out)
    }

    /// True iff the relator maps to the target identity.
    pub fn validates(&self, p: &SurfacePresentation) -> Result<bool, SurfaceError> {
        Ok(self.apply(p.relator())? == self.target.identity())
    }

    /// Generator-image table, one `gen -> image` row per generator.
    pub fn image_table(&self, display: impl Fn(&T::Elem) -> String) -> String {
        let mut rows = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            let name = format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1);
            rows.push(format!("{name} -> {}", display(img)));
        }
        rows.join("\n")
    }
}

/// The splitting homomorphism onto the free group of rank 2:
/// a1, bg -> a; b1, ag -> b; everything in between dies.
pub fn f_hom(genus: usize) -> Result<Homomorphism<FreeTarget>, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall(genus));
    }
    let target = FreeTarget { rank: 2 };
    let a = Word::generator(2, 0)?;
    let b = Word::generator(2, 1)?;
    let mut images = vec![Word::identity(2); 2 * genus];
    images[0] = a.clone(); // a1
    images[1] = b.clone(); // b1
    images[2 * (genus - 1)] = b; // ag
    images[2 * (genus - 1) + 1] = a; // bg
    Homomorphism::new(2 * genus, target, images)
}

/// a -> A, b -> B on the rank-2 free group.
pub fn rho_hom(ctx: &RingCtx) -> Result<Homomorphism<QnTarget>, SurfaceError> {
    let (a, b) = QnElement::generators(ctx)?;
    Homomorphism::new(2, QnTarget { ctx: ctx.clone() }, vec![a, b])
}

/// The composite witness rho . f on the surface generators.
pub fn qn_witness(genus: usize, ctx: &RingCtx) -> Result<Homomorphism<QnTarget>, SurfaceError> {
    let f = f_hom(genus)?;
    let rho = rho_hom(ctx)?;
    let images = f
        .images()
        .iter()
        .map(|w| rho.apply(w))
        .collect::<Result<Vec<_>, _>>()?;
    Homomorphism::new(2 * genus, QnTarget { ctx: ctx.clone() }, images)
}

/// The abelianization witness: generator i maps to the i-th unit vector.
pub fn h1_hom(genus: usize, n: u64) -> Result<Homomorphism<H1Target>, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall(genus));
    }
    let rank = 2 * genus;
    let target = H1Target { rank, modulus: n };
    let images = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1 % n;
            H1Vector(v)
        })
        .collect();
    Homomorphism::new(rank, target, images)
}

/// Exponent-sum vector of `w` mod n.
pub fn h1_image(genus: usize, n: u64, w: &Word) -> Result<H1Vector, SurfaceError> {
    h1_hom(genus, n)?.apply(w)
}

/// Order of the witness image of the standard curve in the n-periodic
/// witness group; the certificate value is exactly n.
pub fn scc_witness_order(genus: usize, ctx: &RingCtx, spec: SccSpec) -> Result<u64, SurfaceError> {
    let witness = qn_witness(genus, ctx)?;
    let gamma = scc_word(genus, spec)?;
    witness.apply(&gamma)?.order().map_err(SurfaceError::Qn)
}
