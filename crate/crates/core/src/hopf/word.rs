use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite sequence of letters `1..=9`. The empty word is the unit `1`.
///
/// Ordering is lexicographic on the letter sequence, with a proper prefix
/// sorting first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    /// The empty word.
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    /// Contiguous word `(k, k+1, ..., end)`; empty when `end < k`.
    pub fn range(k: u8, end: u8) -> Self {
        if end < k {
            Word::unit()
        } else {
            Word((k..=end).collect())
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First `l` letters.
    pub fn prefix(&self, l: usize) -> Word {
        Word(self.0[..l].to_vec())
    }

    /// Letters from position `l` on.
    pub fn suffix(&self, l: usize) -> Word {
        Word(self.0[l..].to_vec())
    }

    /// `letters[a..b]`.
    pub fn subword(&self, a: usize, b: usize) -> Word {
        Word(self.0[a..b].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word without its last letter, and that letter.
    pub fn split_last(&self) -> Option<(Word, u8)> {
        self.0
            .split_last()
            .map(|(last, rest)| (Word(rest.to_vec()), *last))
    }

    /// All `2^{k-1}` ordered partitions into consecutive nonempty subwords.
    ///
    /// Partition `m` cuts after position `p` (1-based) iff bit `p-1` of `m`
    /// is set, so the unsplit word comes first and the all-letters split last.
    pub fn partitions(&self) -> Result<Vec<Vec<Word>>> {
        let k = self.len();
        if k == 0 {
            return Err(Error::Usage("the empty word has no partitions".into()));
        }
        let count = 1usize << (k - 1);
        Ok((0..count)
            .map(|mask| {
                let mut parts = Vec::new();
                let mut start = 0;
                for p in 1..k {
                    if mask & (1 << (p - 1)) != 0 {
                        parts.push(self.subword(start, p));
                        start = p;
                    }
                }
                parts.push(self.subword(start, k));
                parts
            })
            .collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "(")?;
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"1"`, `"()"`, `"(12)"` or a bare digit string `"12"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s == "()" || s == "𝟏" {
            return Ok(Word::unit());
        }
        let body = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let letters = body
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d >= 1 => Ok(d as u8),
                _ => Err(Error::Parse(format!("invalid letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse(format!("empty word literal {s:?}")));
        }
        Ok(Word(letters))
    }
}
