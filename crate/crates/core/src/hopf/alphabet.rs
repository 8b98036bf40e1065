use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::word::Word;
use crate::error::{Error, Result};

/// Longest word the truncated structures store.
pub const MAX_WORD_LEN: usize = 4;
/// Letters are rendered as single digits.
pub const MAX_LETTERS: usize = 9;

/// Exact homogeneity.
pub type Homogeneity = Rational64;

/// Letters `1..=n` with homogeneities in `(0,1)`, plus an optional noise
/// letter `Xi` of negative homogeneity.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    letters: Vec<Homogeneity>,
    noise: Option<Homogeneity>,
}

pub(crate) fn to_rational(x: f64) -> Result<Homogeneity> {
    Rational64::approximate_float(x)
        .ok_or_else(|| Error::Configuration(format!("homogeneity {x} is not representable")))
}

pub fn to_f64(h: Homogeneity) -> f64 {
    h.to_f64().expect("rational homogeneity fits in f64")
}

impl Alphabet {
    /// Homogeneities are converted to the nearest simple rational.
    pub fn new(homogeneities: &[f64]) -> Result<Self> {
        let letters = homogeneities
            .iter()
            .map(|&a| to_rational(a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rationals(letters)
    }

    pub fn from_rationals(letters: Vec<Homogeneity>) -> Result<Self> {
        if letters.is_empty() || letters.len() > MAX_LETTERS {
            return Err(Error::Configuration(format!(
                "alphabet needs 1..={MAX_LETTERS} letters, got {}",
                letters.len()
            )));
        }
        let one = Rational64::from_integer(1);
        if let Some(a) = letters
            .iter()
            .find(|a| **a <= Rational64::zero() || **a >= one)
        {
            return Err(Error::Configuration(format!(
                "letter homogeneity {a} is outside (0, 1)"
            )));
        }
        Ok(Alphabet {
            letters,
            noise: None,
        })
    }

    /// Adds the noise letter `Xi` with homogeneity `gamma < 0`.
    pub fn with_noise(mut self, gamma: f64) -> Result<Self> {
        let g = to_rational(gamma)?;
        if g >= Rational64::zero() {
            return Err(Error::Configuration(format!(
                "noise homogeneity {gamma} must be negative"
            )));
        }
        self.noise = Some(g);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter_homogeneity(&self, i: u8) -> Result<Homogeneity> {
        if i == 0 || i as usize > self.letters.len() {
            return Err(Error::Usage(format!(
                "letter {i} is not in the alphabet 1..={}",
                self.letters.len()
            )));
        }
        Ok(self.letters[i as usize - 1])
    }

    pub fn homogeneities_f64(&self) -> Vec<f64> {
        self.letters.iter().map(|h| to_f64(*h)).collect()
    }

    pub fn noise(&self) -> Option<Homogeneity> {
        self.noise
    }

    /// `|(i1...ik)| = alpha_{i1} + ... + alpha_{ik}`; zero for the unit.
    pub fn homogeneity(&self, w: &Word) -> Result<Homogeneity> {
        w.letters().iter().try_fold(Rational64::zero(), |acc, &l| {
            Ok(acc + self.letter_homogeneity(l)?)
        })
    }

    /// Checks that `w` is a stored word: valid letters, homogeneity below 1,
    /// length at most [`MAX_WORD_LEN`].
    pub fn check_word(&self, w: &Word) -> Result<()> {
        let h = self.homogeneity(w)?;
        if h >= Rational64::from_integer(1) {
            return Err(Error::OutOfStructure(format!(
                "word {w} has homogeneity {h} >= 1"
            )));
        }
        if w.len() > MAX_WORD_LEN {
            return Err(Error::OutOfStructure(format!(
                "word {w} is longer than {MAX_WORD_LEN}"
            )));
        }
        Ok(())
    }

    /// Every nonempty stored word of length at most `max_len`, ordered by
    /// length and then lexicographically.
    pub fn words(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier = vec![Word::unit()];
        for _ in 0..max_len.min(MAX_WORD_LEN) {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 1..=self.letters.len() as u8 {
                    let cand = w.concat(&Word::letter(l));
                    if self.check_word(&cand).is_ok() {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}
