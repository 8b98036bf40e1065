use std::collections::BTreeMap;
use std::fmt;

use super::word::Word;

/// Commutative product of nonempty words; the empty product is the unit.
/// Factors are kept sorted so equal monomials compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Word>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        let mut v: Vec<Word> = words.into_iter().filter(|w| !w.is_empty()).collect();
        v.sort();
        Monomial(v)
    }

    pub fn factors(&self) -> &[Word] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of letters.
    pub fn degree(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_words(self.0.iter().chain(&other.0).cloned())
    }
}

impl From<Word> for Monomial {
    fn from(w: Word) -> Self {
        Monomial::from_words([w])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for w in &self.0 {
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Finite real linear combination over an ordered key set, with no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LinComb<K: Ord>(BTreeMap<K, f64>);

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: f64) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let entry = self.0.entry(key.clone()).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.0.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.0 {
            self.add_term(k.clone(), *c);
        }
    }

    pub fn sub(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: f64) -> LinComb<K> {
        let mut out = Self::zero();
        for (k, v) in &self.0 {
            out.add_term(k.clone(), c * v);
        }
        out
    }

    pub fn coefficient(&self, key: &K) -> f64 {
        self.0.get(key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, f64)> {
        self.0.iter().map(|(k, c)| (k, *c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Applies `f` to each key and sums the images.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_term(f(k), *c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, f64)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, f64)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

/// Element of the polynomial ring on words.
pub type AlgebraElement = LinComb<Monomial>;

/// Element of `L (x) W`: a left basis element against a right monomial.
pub type Tensor<L> = LinComb<(L, Monomial)>;

/// Element of `L (x) W (x) W`.
pub type Tensor3<L> = LinComb<(L, Monomial, Monomial)>;

impl AlgebraElement {
    pub fn unit() -> Self {
        LinComb::term(Monomial::unit(), 1.0)
    }

    pub fn word(w: Word) -> Self {
        LinComb::term(Monomial::from(w), 1.0)
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = LinComb::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

fn fmt_coeff(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    let sign = if c < 0.0 { '-' } else { '+' };
    let a = c.abs();
    if a.fract() == 0.0 && a < 1e15 {
        write!(f, "{sign}{}", a as i64)
    } else {
        write!(f, "{sign}{a}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            fmt_coeff(f, c)?;
            write!(f, "·{m}")?;
        }
        Ok(())
    }
}

impl<L: Ord + Clone + fmt::Display> fmt::Display for LinComb<(L, Monomial)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            fmt_coeff(f, c)?;
            write!(f, "·{l}⊗{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn monomials_are_canonical() {
        let a = Monomial::from_words([w("(2)"), w("(1)"), Word::unit()]);
        let b = Monomial::from_words([w("(1)"), w("(2)")]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1)(2)");
        assert_eq!(a.degree(), 2);
        assert!(Monomial::from(Word::unit()).is_unit());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut x = AlgebraElement::word(w("(1)"));
        x.add_term(Monomial::from(w("(1)")), -1.0);
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn products_and_rendering() {
        let x = AlgebraElement::word(w("(1)")).scale(3.0);
        let y = AlgebraElement::unit().sub(&AlgebraElement::word(w("(2)")));
        let p = x.mul(&y);
        assert_eq!(p.to_string(), "+3·(1) -3·(1)(2)");
        let t: Tensor<Word> = [
            ((w("(12)"), Monomial::unit()), 1.0),
            ((Word::unit(), Monomial::from(w("(12)"))), -2.5),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.to_string(), "-2.5·1⊗(12) +1·(12)⊗1");
    }
}
