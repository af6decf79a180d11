//! Freely reduced words over an indexed alphabet.
//!
//! A word is a sequence of signed generator indices with no adjacent
//! cancelling pair. The empty word is the identity. Every constructor
//! reduces, so `Word` values are reduced by construction.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet mismatch: rank {0} vs rank {1}")]
    AlphabetMismatch(usize, usize),
    #[error("letter index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("cannot parse word token `{0}`")]
    Parse(String),
}

/// One signed letter: generator index plus a sign.
///
/// Encoded internally as a nonzero `i32`: `+(i+1)` is generator `i`,
/// `-(i+1)` is its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator_index: usize, inverse: bool) -> Letter {
        let code = (generator_index + 1) as i32;
        Letter(if inverse { -code } else { code })
    }

    pub fn generator(generator_index: usize) -> Letter {
        Letter::new(generator_index, false)
    }

    pub fn generator_index(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    fn cancels(self, other: Letter) -> bool {
        self.0 == -other.0
    }
}

/// A freely reduced word over an alphabet of `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn identity(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Single-generator word.
    pub fn generator(rank: usize, index: usize) -> Result<Word, WordError> {
        Word::from_letters(rank, [Letter::generator(index)])
    }

    /// Builds a word from raw letters, freely reducing.
    pub fn from_letters(
        rank: usize,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<Word, WordError> {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator_index() >= rank {
                return Err(WordError::LetterOutOfRange { index: l.generator_index(), rank });
            }
            if reduced.last().is_some_and(|last| last.cancels(l)) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        Ok(Word { rank, letters: reduced })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::AlphabetMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Freely reduced concatenation.
    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last().is_some_and(|last| last.cancels(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(Word { rank: self.rank, letters })
    }

    /// Reversed sequence with flipped signs.
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self other self^-1 other^-1`, reduced.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// `self^k` for any integer exponent.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base).expect("same rank");
        }
        out
    }

    /// Conjugate `g self g^-1`.
    pub fn conjugated_by(&self, g: &Word) -> Result<Word, WordError> {
        g.mul(self)?.mul(&g.inverse())
    }

    /// Strips matching first/last letters until the word is cyclically reduced.
    pub fn cyclic_reduction(&self) -> Word {
        let mut l = self.letters.as_slice();
        while l.len() >= 2 && l[0].cancels(*l.last().unwrap()) {
            l = &l[1..l.len() - 1];
        }
        Word { rank: self.rank, letters: l.to_vec() }
    }

    /// Free-group conjugacy test: cyclic reductions are rotations of one
    /// another. Quadratic in length; words over different alphabets are
    /// never conjugate.
    pub fn conjugacy_equal(&self, other: &Word) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let a = self.cyclic_reduction();
        let b = other.cyclic_reduction();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|shift| {
            (0..a.len()).all(|i| a.letters[(i + shift) % a.len()] == b.letters[i])
        })
    }
}

/// Letter names follow the interleaved scheme `a1 b1 a2 b2 ...`: even
/// indices are `a`-generators, odd indices `b`-generators. Capital means
/// inverse. The identity prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let idx = l.generator_index();
            let name = match (idx % 2 == 0, l.is_inverse()) {
                (true, false) => 'a',
                (true, true) => 'A',
                (false, false) => 'b',
                (false, true) => 'B',
            };
            write!(f, "{}{}", name, idx / 2 + 1)?;
        }
        Ok(())
    }
}

/// Parses the display syntax. The rank is taken as the smallest one
/// covering all parsed letters (even count), so `a1 b1` has rank 2.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        let mut max_index = 0usize;
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let mut chars = tok.chars();
            let head = chars.next().ok_or_else(|| WordError::Parse(tok.into()))?;
            let num: usize =
                chars.as_str().parse().map_err(|_| WordError::Parse(tok.into()))?;
            if num == 0 {
                return Err(WordError::Parse(tok.into()));
            }
            let (offset, inverse) = match head {
                'a' => (0, false),
                'A' => (0, true),
                'b' => (1, false),
                'B' => (1, true),
                _ => return Err(WordError::Parse(tok.into())),
            };
            let idx = (num - 1) * 2 + offset;
            max_index = max_index.max(idx);
            letters.push(Letter::new(idx, inverse));
        }
        let rank = (max_index + 2) & !1;
        let rank = rank.max(2);
        Word::from_letters(rank, letters)
    }
}
