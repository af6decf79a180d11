//! Twist endomorphisms of the standard surface presentation.
//!
//! Two explicit families are implemented, one per splitting type of the
//! underlying curve: twisting along the nonseparating curve a_j sends the
//! dual generator b_j to b_j a_j and fixes everything else; twisting
//! along the separating curve [a1,b1]...[ai,bi] fixes the generators on
//! one side of the cut and conjugates the others by the curve.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::qn::QnError;
use crate::report::{CheckReport, ReportBuilder};
use crate::ring::RingContext;
use crate::surface::{
    h1_hom, qn_witness, scc_word, SccSpec, SurfaceError, SurfacePresentation,
};
use crate::words::{Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwistError {
    #[error("twist index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("the two twist curves must be distinct, both are a{0}")]
    EqualTwistCurves(usize),
    #[error("endomorphism expects {want} images, got {got}")]
    ImageCount { want: usize, got: usize },
    #[error("cannot parse twist spec `{0}`, expected `twist:aJ` or `twist:sep:I`")]
    ParseSpec(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Which curve the twist runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistSpec {
    /// The nonseparating curve a_j, 1 <= j <= g; dual generator b_j.
    AlongA(usize),
    /// The separating curve [a1,b1]...[ai,bi], 1 <= i < g.
    SeparatingCut(usize),
}

impl fmt::Display for TwistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistSpec::AlongA(j) => write!(f, "twist:a{j}"),
            TwistSpec::SeparatingCut(i) => write!(f, "twist:sep:{i}"),
        }
    }
}

impl FromStr for TwistSpec {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<TwistSpec, TwistError> {
        let body = s.strip_prefix("twist:").ok_or_else(|| TwistError::ParseSpec(s.into()))?;
        if let Some(i) = body.strip_prefix("sep:") {
            if let Ok(i) = i.parse::<usize>() {
                return Ok(TwistSpec::SeparatingCut(i));
            }
        } else if let Some(j) = body.strip_prefix('a') {
            if let Ok(j) = j.parse::<usize>() {
                return Ok(TwistSpec::AlongA(j));
            }
        }
        Err(TwistError::ParseSpec(s.into()))
    }
}

/// All twist specs valid at the given genus.
pub fn twist_specs(genus: usize) -> Vec<TwistSpec> {
    let mut specs: Vec<TwistSpec> = (1..=genus).map(TwistSpec::AlongA).collect();
    specs.extend((1..genus).map(TwistSpec::SeparatingCut));
    specs
}

/// Generator-image endomorphism of the genus-g presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    genus: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(genus: usize, images: Vec<Word>) -> Result<Endomorphism, TwistError> {
        if images.len() != 2 * genus {
            return Err(TwistError::ImageCount { want: 2 * genus, got: images.len() });
        }
        for w in &images {
            if w.rank() != 2 * genus {
                return Err(WordError::AlphabetMismatch(2 * genus, w.rank()).into());
            }
        }
        Ok(Endomorphism { genus, images })
    }

    pub fn identity(genus: usize) -> Endomorphism {
        let rank = 2 * genus;
        let images = (0..rank).map(|i| Word::generator(rank, i).expect("in range")).collect();
        Endomorphism { genus, images }
    }

    /// The twist along the specified curve.
    pub fn twist(genus: usize, spec: TwistSpec) -> Result<Endomorphism, TwistError> {
        let p = SurfacePresentation::standard(genus)?;
        let mut e = Endomorphism::identity(genus);
        match spec {
            TwistSpec::AlongA(j) => {
                if j == 0 || j > genus {
                    return Err(TwistError::IndexOutOfRange { index: j, genus });
                }
                // b_j -> b_j a_j; the rest of the presentation sits on the
                // fixed side of the splitting
                e.images[2 * (j - 1) + 1] = p.b(j).mul(&p.a(j))?;
            }
            TwistSpec::SeparatingCut(i) => {
                if i == 0 || i >= genus {
                    return Err(TwistError::IndexOutOfRange { index: i, genus });
                }
                let gamma = scc_word(genus, SccSpec::Separating(i))?;
                for idx in 2 * i..2 * genus {
                    e.images[idx] = e.images[idx].conjugated_by(&gamma)?;
                }
            }
        }
        Ok(e)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitute generator images into `w` and reduce.
    pub fn apply(&self, w: &Word) -> Result<Word, TwistError> {
        if w.rank() != 2 * self.genus {
            return Err(WordError::AlphabetMismatch(2 * self.genus, w.rank()).into());
        }
        let mut out = Word::identity(2 * self.genus);
        for l in w.letters() {
            let img = &self.images[l.generator_index()];
            let factor = if l.is_inverse() { img.inverse() } else { img.clone() };
            out = out.mul(&factor)?;
        }
        Ok(out)
    }

    /// (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, TwistError> {
        if self.genus != other.genus {
            return Err(TwistError::GenusMismatch(self.genus, other.genus));
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Endomorphism { genus: self.genus, images })
    }

    /// Iterated composition; the zeroth power is the identity map.
    pub fn power(&self, m: u64) -> Endomorphism {
        let mut out = Endomorphism::identity(self.genus);
        for _ in 0..m {
            out = out.compose(self).expect("same genus");
        }
        out
    }

    /// Validity certificate: the relator maps to a free-group conjugate of
    /// itself or of its inverse. False when the genus does not match.
    pub fn validates(&self, p: &SurfacePresentation) -> bool {
        if p.genus() != self.genus {
            return false;
        }
        match self.apply(p.relator()) {
            Ok(image) => {
                image.conjugacy_equal(p.relator())
                    || image.conjugacy_equal(&p.relator().inverse())
            }
            Err(_) => false,
        }
    }

    /// Induced 2g x 2g integer matrix on the abelianization; column j is
    /// the exponent vector of the image of generator j.
    pub fn abelianization_matrix(&self) -> Vec<Vec<i64>> {
        let rank = 2 * self.genus;
        let mut m = vec![vec![0i64; rank]; rank];
        for (j, w) in self.images.iter().enumerate() {
            for l in w.letters() {
                m[l.generator_index()][j] += if l.is_inverse() { -1 } else { 1 };
            }
        }
        m
    }

    /// Generator-image table, one row per generator.
    pub fn image_table(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let name = format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1);
                format!("{name} -> {w}")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn integer_determinant(matrix: &[Vec<i64>]) -> i128 {
    let n = matrix.len();
    let mut m: Vec<Vec<i128>> =
        matrix.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Validity report for an arbitrary endomorphism: the relator must map
/// to a conjugate of itself or of its inverse, and the induced map on
/// homology must be invertible. A corrupted generator image fails here
/// with the full image table as the witness.
pub fn validity_report(p: &SurfacePresentation, e: &Endomorphism) -> CheckReport {
    let mut builder =
        ReportBuilder::new("twist-validity", 0).param("genus", e.genus());
    let valid = e.validates(p);
    builder.item("relator maps to a conjugate", true, valid);
    let det = integer_determinant(&e.abelianization_matrix());
    builder.item("homology determinant magnitude", 1, det.unsigned_abs() as u64);
    if !valid {
        builder.counterexample(e.image_table());
    }
    builder.finish()
}

/// Which n-periodic witness receives the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistWitness {
    /// rho . f into the matrix witness group (requires n > 2).
    QnViaF,
    /// Exponent sums mod n.
    H1Mod,
}

impl fmt::Display for TwistWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistWitness::QnViaF => write!(f, "qn"),
            TwistWitness::H1Mod => write!(f, "h1"),
        }
    }
}

impl FromStr for TwistWitness {
    type Err = TwistError;
    fn from_str(s: &str) -> Result<TwistWitness, TwistError> {
        match s {
            "qn" => Ok(TwistWitness::QnViaF),
            "h1" => Ok(TwistWitness::H1Mod),
            _ => Err(TwistError::ParseSpec(s.into())),
        }
    }
}

/// Checks that the n-th power of the twist acts trivially on the chosen
/// n-periodic witness: witness(T^n(x)) = witness(x) for every generator.
pub fn verify_twist_power_trivial(
    genus: usize,
    n: u64,
    spec: TwistSpec,
    witness: TwistWitness,
) -> Result<CheckReport, TwistError> {
    let twist = Endomorphism::twist(genus, spec)?;
    let tn = twist.power(n);
    let p = SurfacePresentation::standard(genus)?;
    let mut builder = ReportBuilder::new("twist-power", 0)
        .param("genus", genus)
        .param("n", n)
        .param("spec", spec)
        .param("witness", witness);

    match witness {
        TwistWitness::QnViaF => {
            let ctx = RingContext::new(n).map_err(QnError::from).map_err(SurfaceError::from)?;
            let w = qn_witness(genus, &ctx)?;
            for i in 0..2 * genus {
                let gen = Word::generator(2 * genus, i)?;
                let before = w.apply(&gen)?;
                let after = w.apply(&tn.apply(&gen)?)?;
                let name = format!("witness fixes {}", gen);
                builder.item(
                    &name,
                    serde_json::to_value(&before).unwrap(),
                    serde_json::to_value(&after).unwrap(),
                );
                if before != after {
                    builder.counterexample(format!("T^{n}({gen}) = {}", tn.apply(&gen)?));
                }
            }
        }
        TwistWitness::H1Mod => {
            let w = h1_hom(genus, n)?;
            for i in 0..2 * genus {
                let gen = Word::generator(2 * genus, i)?;
                let before = w.apply(&gen)?;
                let after = w.apply(&tn.apply(&gen)?)?;
                let name = format!("witness fixes {}", gen);
                builder.item(&name, before.to_string(), after.to_string());
                if before != after {
                    builder.counterexample(format!("T^{n}({gen}) = {}", tn.apply(&gen)?));
                }
            }
        }
    }
    // the twist itself must be a valid automorphism representative
    builder.item("twist validates", true, twist.validates(&p));
    Ok(builder.finish())
}

/// Checks that twists along the disjoint curves a_j and a_j' commute as
/// endomorphisms, and that the n-th power of their product splits as the
/// product of the n-th powers.
pub fn verify_commuting_twists(
    genus: usize,
    n: u64,
    j1: usize,
    j2: usize,
) -> Result<CheckReport, TwistError> {
    if j1 == j2 {
        return Err(TwistError::EqualTwistCurves(j1));
    }
    let t1 = Endomorphism::twist(genus, TwistSpec::AlongA(j1))?;
    let t2 = Endomorphism::twist(genus, TwistSpec::AlongA(j2))?;
    let mut builder = ReportBuilder::new("commuting-twists", 0)
        .param("genus", genus)
        .param("n", n)
        .param("j1", j1)
        .param("j2", j2);

    let t12 = t1.compose(&t2)?;
    let t21 = t2.compose(&t1)?;
    for i in 0..2 * genus {
        let gen = Word::generator(2 * genus, i)?;
        builder.item(
            &format!("T1 T2 = T2 T1 on {gen}"),
            t12.apply(&gen)?.to_string(),
            t21.apply(&gen)?.to_string(),
        );
    }
    let lhs = t12.power(n);
    let rhs = t1.power(n).compose(&t2.power(n))?;
    for i in 0..2 * genus {
        let gen = Word::generator(2 * genus, i)?;
        builder.item(
            &format!("(T1 T2)^n = T1^n T2^n on {gen}"),
            lhs.apply(&gen)?.to_string(),
            rhs.apply(&gen)?.to_string(),
        );
    }
    Ok(builder.finish())
}
