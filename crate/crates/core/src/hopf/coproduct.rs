use std::fmt;

use num_rational::Rational64;

use super::alphabet::{Alphabet, Homogeneity};
use super::lincomb::{AlgebraElement, LinComb, Monomial, Tensor, Tensor3};
use super::word::Word;
use crate::error::{Error, Result};

/// Basis elements carrying a right coaction `x -> sum_sigma sigma (x) (x/sigma)`.
pub trait Coproduct: Ord + Clone + fmt::Display + fmt::Debug + Send + Sync {
    fn coproduct(&self) -> Tensor<Self>;

    /// Exact homogeneity in the given alphabet.
    fn homogeneity(&self, alphabet: &Alphabet) -> Result<Homogeneity>;

    /// Number of word letters carried by the element.
    fn length(&self) -> usize;

    /// Whether this is the unit of the algebra.
    fn is_unit(&self) -> bool {
        false
    }
}

/// Deconcatenation: `Delta(i1...ik) = sum_l (i_{l+1}...ik) (x) (i1...il)`,
/// suffix on the left and prefix on the right.
pub fn coproduct(w: &Word) -> Tensor<Word> {
    (0..=w.len())
        .map(|l| ((w.suffix(l), Monomial::from(w.prefix(l))), 1.0))
        .collect()
}

impl Coproduct for Word {
    fn coproduct(&self) -> Tensor<Word> {
        coproduct(self)
    }

    fn homogeneity(&self, alphabet: &Alphabet) -> Result<Homogeneity> {
        alphabet.homogeneity(self)
    }

    fn length(&self) -> usize {
        self.len()
    }

    fn is_unit(&self) -> bool {
        self.is_empty()
    }
}

/// Coproduct extended multiplicatively to products of words.
pub fn coproduct_monomial(m: &Monomial) -> LinComb<(Monomial, Monomial)> {
    let mut acc: LinComb<(Monomial, Monomial)> =
        LinComb::term((Monomial::unit(), Monomial::unit()), 1.0);
    for w in m.factors() {
        let mut next = LinComb::zero();
        for ((l, r), c) in acc.iter() {
            for ((wl, wr), d) in coproduct(w).iter() {
                next.add_term((l.mul(&Monomial::from(wl.clone())), r.mul(wr)), c * d);
            }
        }
        acc = next;
    }
    acc
}

/// Counit: the coefficient of the unit monomial.
pub fn counit(e: &AlgebraElement) -> f64 {
    e.coefficient(&Monomial::unit())
}

/// Basis element `(k...n)Xi` of the comodule; `k = n+1` encodes `Xi` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComoduleBasis {
    k: u8,
    n: u8,
}

impl ComoduleBasis {
    /// `Xi` over an alphabet of `n` letters.
    pub fn xi(n: u8) -> Self {
        ComoduleBasis { k: n + 1, n }
    }

    /// `(k...n)Xi` for `1 <= k <= n+1`.
    pub fn dressed(k: u8, n: u8) -> Result<Self> {
        if k == 0 || k > n + 1 {
            return Err(Error::Usage(format!(
                "({k}...{n})Xi is not a comodule basis element"
            )));
        }
        Ok(ComoduleBasis { k, n })
    }

    /// All basis elements `(1...n)Xi, ..., (n)Xi, Xi`.
    pub fn all(n: u8) -> Vec<ComoduleBasis> {
        (1..=n + 1).map(|k| ComoduleBasis { k, n }).collect()
    }

    pub fn is_xi(&self) -> bool {
        self.k == self.n + 1
    }

    pub fn start(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// The word part `(k...n)`.
    pub fn word(&self) -> Word {
        Word::range(self.k, self.n)
    }

    /// `tau Xi` for a word `tau = (k...n)`.
    pub fn from_word(w: &Word, n: u8) -> Result<Self> {
        if w.is_empty() {
            return Ok(Self::xi(n));
        }
        let k = w.letters()[0];
        if *w != Word::range(k, n) {
            return Err(Error::Usage(format!("{w} is not a tail word (k...{n})")));
        }
        Self::dressed(k, n)
    }
}

impl Coproduct for ComoduleBasis {
    /// `Delta Xi = Xi (x) 1` and
    /// `Delta (k...n)Xi = sum_{l=k-1}^{n} ((l+1)...n)Xi (x) (k...l)`.
    fn coproduct(&self) -> Tensor<ComoduleBasis> {
        let n = self.n;
        (self.k - 1..=n)
            .map(|l| {
                let left = ComoduleBasis { k: l + 1, n };
                ((left, Monomial::from(Word::range(self.k, l))), 1.0)
            })
            .collect()
    }

    fn homogeneity(&self, alphabet: &Alphabet) -> Result<Homogeneity> {
        if alphabet.len() != self.n as usize {
            return Err(Error::Usage(format!(
                "{self} needs an alphabet of {} letters, got {}",
                self.n,
                alphabet.len()
            )));
        }
        let gamma = alphabet
            .noise()
            .ok_or_else(|| Error::Usage("alphabet carries no noise homogeneity".into()))?;
        Ok(alphabet.homogeneity(&self.word())? + gamma)
    }

    fn length(&self) -> usize {
        self.word().len()
    }
}

impl fmt::Display for ComoduleBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_xi() {
            write!(f, "Ξ")
        } else {
            write!(f, "{}Ξ", self.word())
        }
    }
}

/// `tau / sigma`: the sum of right factors of `Delta tau` whose left factor is `sigma`.
pub fn quotient<B: Coproduct>(tau: &B, sigma: &B) -> AlgebraElement {
    tau.coproduct()
        .iter()
        .filter(|((l, _), _)| l == sigma)
        .map(|((_, r), c)| (r.clone(), c))
        .collect()
}

/// Both sides of `(Delta (x) Id) Delta x = (Id (x) Delta+) Delta x`.
///
/// For words this is coassociativity; for comodule elements it is the
/// comodule law. `coprod` is the coaction being checked on the left slot.
pub fn coaction_sides<B: Coproduct>(
    x: &B,
    coprod: &dyn Fn(&B) -> Tensor<B>,
) -> (Tensor3<B>, Tensor3<B>) {
    let mut left = Tensor3::zero();
    let mut right = Tensor3::zero();
    for ((l, r), c) in coprod(x).iter() {
        for ((ll, lr), d) in coprod(l).iter() {
            left.add_term((ll.clone(), lr.clone(), r.clone()), c * d);
        }
        for ((ra, rb), d) in coproduct_monomial(r).iter() {
            right.add_term((l.clone(), ra.clone(), rb.clone()), c * d);
        }
    }
    (left, right)
}

/// `(1* (x) Id) Delta w` as an algebra element.
pub fn left_counit_image(w: &Word, coprod: &dyn Fn(&Word) -> Tensor<Word>) -> AlgebraElement {
    coprod(w)
        .iter()
        .filter(|((l, _), _)| l.is_empty())
        .map(|((_, r), c)| (r.clone(), c))
        .collect()
}

/// `(Id (x) 1*) Delta x` as a combination of left factors.
pub fn right_counit_image<B: Coproduct>(x: &B, coprod: &dyn Fn(&B) -> Tensor<B>) -> LinComb<B> {
    coprod(x)
        .iter()
        .filter(|((_, r), _)| r.is_unit())
        .map(|((l, _), c)| (l.clone(), c))
        .collect()
}

/// Terms `sigma (x) tau/sigma` whose homogeneities do not add up to `|x|`.
pub fn grading_defects<B: Coproduct>(
    x: &B,
    alphabet: &Alphabet,
    coprod: &dyn Fn(&B) -> Tensor<B>,
) -> Result<Vec<(B, Monomial)>> {
    let total = x.homogeneity(alphabet)?;
    let mut bad = Vec::new();
    for ((l, r), _) in coprod(x).iter() {
        let hr = r
            .factors()
            .iter()
            .try_fold(Rational64::from_integer(0), |acc, w| {
                Ok::<_, Error>(acc + alphabet.homogeneity(w)?)
            })?;
        if l.homogeneity(alphabet)? + hr != total {
            bad.push((l.clone(), r.clone()));
        }
    }
    Ok(bad)
}

/// Whether `Delta w - w (x) 1 - 1 (x) w` only holds strictly shorter factors.
pub fn is_connected(w: &Word, coprod: &dyn Fn(&Word) -> Tensor<Word>) -> bool {
    let mut reduced = coprod(w);
    if !w.is_empty() {
        reduced.add_term((w.clone(), Monomial::unit()), -1.0);
        reduced.add_term((Word::unit(), Monomial::from(w.clone())), -1.0);
    }
    let ok = reduced
        .iter()
        .all(|((l, r), _)| w.is_empty() || (l.len() < w.len() && r.degree() < w.len()));
    ok
}
