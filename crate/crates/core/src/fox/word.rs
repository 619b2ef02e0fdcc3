//! Reduced words in a free group on `x1, ..., xn`.

use std::fmt;

use super::FoxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 0-based generator index.
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word. Text form is `x1X2x1` with capitals for inverses;
/// the identity prints as `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// Generator `x_i` with 1-based `i`.
    pub fn generator(rank: usize, i: usize) -> Result<Self, FoxError> {
        if i == 0 || i > rank {
            return Err(FoxError::IndexOutOfRange { index: i, rank });
        }
        Ok(FreeWord { rank, letters: vec![Letter { generator: i - 1, inverse: false }] })
    }

    /// Builds and freely reduces a word from letters.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l.generator < rank, "generator outside the free group");
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { rank, letters: out }
    }

    /// Signed 1-based generator indices, e.g. `[1, -2]` for `x1 X2`.
    pub fn from_signed(rank: usize, gens: &[i64]) -> Result<Self, FoxError> {
        let mut letters = Vec::new();
        for &g in gens {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i > rank {
                return Err(FoxError::IndexOutOfRange { index: i, rank });
            }
            letters.push(Letter { generator: i - 1, inverse: g < 0 });
        }
        Ok(Self::from_letters(rank, letters))
    }

    pub fn parse(rank: usize, text: &str) -> Result<Self, FoxError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Self::identity(rank));
        }
        let bytes = text.as_bytes();
        let mut letters = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let inverse = match bytes[pos] {
                b'x' => false,
                b'X' => true,
                _ => return Err(FoxError::Parse(format!("unexpected `{}` in word `{text}`", bytes[pos] as char))),
            };
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = text[start..pos]
                .parse()
                .map_err(|_| FoxError::Parse(format!("missing generator index in `{text}`")))?;
            if idx == 0 || idx > rank {
                return Err(FoxError::IndexOutOfRange { index: idx, rank });
            }
            letters.push(Letter { generator: idx - 1, inverse });
        }
        Ok(Self::from_letters(rank, letters))
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
        self.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, other.rank, "words from different free groups");
        FreeWord::from_letters(self.rank, self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `[u, v] = u v u^-1 v^-1`
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// `x_j^-1 w x_j` for 1-based `j`.
    pub fn conjugate_by_generator(&self, j: usize) -> FreeWord {
        let x = FreeWord::generator(self.rank, j).expect("generator in range");
        x.inverse().mul(self).mul(&x)
    }

    /// Image in `Z^rank`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for l in &self.letters {
            v[l.generator] += l.exponent();
        }
        v
    }

    /// Same word in a free group of larger rank.
    pub fn widen(&self, rank: usize) -> FreeWord {
        assert!(rank >= self.rank);
        FreeWord { rank, letters: self.letters.clone() }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.generator + 1)?;
        }
        Ok(())
    }
}
