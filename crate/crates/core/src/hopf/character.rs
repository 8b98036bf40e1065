use std::collections::BTreeMap;

use super::coproduct::coproduct;
use super::lincomb::{AlgebraElement, Monomial};
use super::word::Word;
use crate::error::{Error, Result};

/// Character on the word algebra, given by its values on a finite,
/// factor-closed set of words and extended multiplicatively.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCharacter {
    unit: f64,
    values: BTreeMap<Word, f64>,
}

impl PointCharacter {
    /// Values on nonempty words; an entry for the empty word sets the value
    /// on the unit (1 by default).
    pub fn new(values: impl IntoIterator<Item = (Word, f64)>) -> Self {
        let mut unit = 1.0;
        let mut map = BTreeMap::new();
        for (w, v) in values {
            if w.is_empty() {
                unit = v;
            } else {
                map.insert(w, v);
            }
        }
        PointCharacter { unit, values: map }
    }

    /// The counit `1*`: zero on every word of `domain`.
    pub fn counit(domain: impl IntoIterator<Item = Word>) -> Self {
        PointCharacter::new(domain.into_iter().map(|w| (w, 0.0)))
    }

    /// Value on a word; `None` outside the domain.
    pub fn get(&self, w: &Word) -> Option<f64> {
        if w.is_empty() {
            Some(self.unit)
        } else {
            self.values.get(w).copied()
        }
    }

    /// Nonempty words in the domain, in canonical order.
    pub fn domain(&self) -> impl Iterator<Item = &Word> {
        self.values.keys()
    }

    pub fn unit_value(&self) -> f64 {
        self.unit
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Option<f64> {
        m.factors()
            .iter()
            .try_fold(1.0, |acc, w| Some(acc * self.get(w)?))
    }

    pub fn eval(&self, e: &AlgebraElement) -> Option<f64> {
        e.iter()
            .try_fold(0.0, |acc, (m, c)| Some(acc + c * self.eval_monomial(m)?))
    }

    /// Largest absolute difference over the common domain.
    pub fn max_difference(&self, other: &PointCharacter) -> f64 {
        let mut worst = (self.unit - other.unit).abs();
        for (w, v) in &self.values {
            if let Some(u) = other.get(w) {
                worst = worst.max((v - u).abs());
            }
        }
        worst
    }
}

/// `(a * b)(tau) = (a (x) b) Delta tau = sum over splits a(suffix) b(prefix)`.
///
/// Defined on the words of `a`'s domain whose every split is known to both
/// characters.
pub fn char_product(a: &PointCharacter, b: &PointCharacter) -> PointCharacter {
    let values = a.values.keys().filter_map(|w| {
        let v = coproduct(w).iter().try_fold(0.0, |acc, ((l, r), c)| {
            Some(acc + c * a.get(l)? * b.eval_monomial(r)?)
        })?;
        Some((w.clone(), v))
    });
    let mut out = PointCharacter::new(values);
    out.unit = a.unit * b.unit;
    out
}

/// Group inverse by recursion in word length:
/// `a^{-1}(tau) = -sum_{l<k} a(i_{l+1}...i_k) a^{-1}(i_1...i_l)`.
pub fn char_inverse(a: &PointCharacter) -> Result<PointCharacter> {
    if a.unit != 1.0 {
        return Err(Error::NotACharacter(a.unit));
    }
    let mut words: Vec<&Word> = a.values.keys().collect();
    words.sort_by_key(|w| w.len());
    let mut inv: BTreeMap<Word, f64> = BTreeMap::new();
    for w in words {
        let mut acc = 0.0;
        let mut complete = true;
        for l in 0..w.len() {
            let prefix = w.prefix(l);
            let inv_prefix = if l == 0 {
                Some(1.0)
            } else {
                inv.get(&prefix).copied()
            };
            match (a.get(&w.suffix(l)), inv_prefix) {
                (Some(x), Some(y)) => acc += x * y,
                _ => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            inv.insert(w.clone(), -acc);
        }
    }
    Ok(PointCharacter {
        unit: 1.0,
        values: inv,
    })
}
