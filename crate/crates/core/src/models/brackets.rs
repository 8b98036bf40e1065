use std::collections::BTreeMap;

use super::field::CharacterField;
use crate::error::{Error, Result};
use crate::hopf::{ComoduleBasis, Coproduct, Word};
use crate::paraproducts::{iterated_para, omega_seed, para, PrecTable, SeedFamily};
use crate::spectral::{GridFunction, PartitionOfUnity};

/// Paracontrolled remainders `[[tau]]` indexed by words or comodule elements.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketFamily<B: Ord> {
    values: BTreeMap<B, GridFunction>,
}

impl<B: Ord> Default for BracketFamily<B> {
    fn default() -> Self {
        BracketFamily {
            values: BTreeMap::new(),
        }
    }
}

impl<B: Coproduct> BracketFamily<B> {
    pub fn new(values: BTreeMap<B, GridFunction>) -> Self {
        BracketFamily { values }
    }

    pub fn get(&self, key: &B) -> Option<&GridFunction> {
        self.values.get(key)
    }

    pub fn insert(&mut self, key: B, value: GridFunction) {
        self.values.insert(key, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &GridFunction)> {
        self.values.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.values.keys()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest sup distance over shared keys, and infinity if the key sets differ.
    pub fn max_distance(&self, other: &BracketFamily<B>) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .map(|(k, v)| other.get(k).map_or(f64::INFINITY, |u| v.sup_distance(u)))
            .fold(0.0, f64::max)
    }
}

/// Realization `Pi` of the comodule elements `Xi` and `(k...n)Xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPi {
    values: BTreeMap<ComoduleBasis, GridFunction>,
}

impl ModelPi {
    pub fn new(values: BTreeMap<ComoduleBasis, GridFunction>) -> Self {
        ModelPi { values }
    }

    pub fn get(&self, key: &ComoduleBasis) -> Result<&GridFunction> {
        self.values
            .get(key)
            .ok_or_else(|| Error::Usage(format!("model has no realization of {key}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComoduleBasis, &GridFunction)> {
        self.values.iter()
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &ModelPi) -> Result<ModelPi> {
        let values = self
            .values
            .iter()
            .map(|(k, v)| Ok((*k, v - other.get(k)?)))
            .collect::<Result<_>>()?;
        Ok(ModelPi { values })
    }
}

fn by_length<B: Coproduct>(keys: impl Iterator<Item = B>) -> Vec<B> {
    let mut keys: Vec<B> = keys.collect();
    keys.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    keys
}

/// `sum_{sigma < tau} g(tau/sigma) ≺ [[sigma]]`, skipping the unit.
fn lower_terms<B: Coproduct>(
    tau: &B,
    brackets: &BracketFamily<B>,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let mut acc = GridFunction::zeros(field.grid());
    for ((sigma, right), c) in tau.coproduct().iter() {
        if sigma == tau || sigma.is_unit() {
            continue;
        }
        let b = brackets
            .get(sigma)
            .ok_or_else(|| Error::Usage(format!("bracket of {sigma} is needed for {tau}")))?;
        let coeff = field.eval(&crate::hopf::LinComb::term(right.clone(), c))?;
        acc.add_scaled(1.0, &para(&coeff, b, pou)?);
    }
    Ok(acc)
}

fn peel<B: Coproduct>(
    keys: impl Iterator<Item = B>,
    top: impl Fn(&B) -> Result<GridFunction>,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<BracketFamily<B>> {
    let mut out = BracketFamily::default();
    for tau in by_length(keys) {
        let lower = lower_terms(&tau, &out, field, pou)?;
        let value = &top(&tau)? - &lower;
        out.insert(tau, value);
    }
    Ok(out)
}

fn expand<B: Coproduct>(
    brackets: &BracketFamily<B>,
    keys: impl Iterator<Item = B>,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<BTreeMap<B, GridFunction>> {
    keys.map(|tau| {
        let own = brackets
            .get(&tau)
            .ok_or_else(|| Error::Usage(format!("bracket of {tau} is missing")))?;
        let value = &lower_terms(&tau, brackets, field, pou)? + own;
        Ok((tau, value))
    })
    .collect()
}

/// `[[tau]] = g(tau) - sum_{1 < nu < tau} g(tau/nu) ≺ [[nu]]` for every
/// stored word, by increasing length.
pub fn extract_brackets(
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<BracketFamily<Word>> {
    peel(field.words().cloned(), |w| field.get(w), field, pou)
}

/// Re-expands word brackets into `g(tau)` through the defining formula.
pub fn expand_brackets(
    brackets: &BracketFamily<Word>,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<BTreeMap<Word, GridFunction>> {
    expand(brackets, brackets.keys().cloned(), field, pou)
}

/// Brackets `[[sigma]]^Z` of a realization, peeled from `Xi` upward.
pub fn extract_model_brackets(
    pi: &ModelPi,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<BracketFamily<ComoduleBasis>> {
    peel(
        pi.iter().map(|(k, _)| *k),
        |b| pi.get(b).cloned(),
        field,
        pou,
    )
}

/// `Pi tau = sum_{sigma < tau} g(tau/sigma) ≺ [[sigma]] + [[tau]]` on `Xi` and
/// every `(k...n)Xi`. Brackets are accepted only on keys of negative
/// homogeneity.
pub fn brackets_to_model(
    field: &CharacterField,
    brackets: &BracketFamily<ComoduleBasis>,
    pou: &PartitionOfUnity,
) -> Result<ModelPi> {
    let alphabet = field.alphabet();
    let n = alphabet.len() as u8;
    for key in brackets.keys() {
        let h = key.homogeneity(alphabet)?;
        if h >= num_rational::Rational64::from_integer(0) {
            return Err(Error::OutOfScope(format!(
                "{key} has homogeneity {h}; brackets determine the model only on negative homogeneities"
            )));
        }
    }
    for key in ComoduleBasis::all(n) {
        if brackets.get(&key).is_none() {
            return Err(Error::Usage(format!("bracket of {key} is missing")));
        }
    }
    Ok(ModelPi::new(expand(
        brackets,
        ComoduleBasis::all(n).into_iter(),
        field,
        pou,
    )?))
}

/// `sum over partitions {tau_1..tau_m} of w` of `([[tau_1]], ..., [[tau_m]])^≺`.
pub fn atomic_decomposition(
    brackets: &BracketFamily<Word>,
    w: &Word,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let mut acc = GridFunction::zeros(pou.grid());
    for part in w.partitions()? {
        let fs = bracket_list(brackets, &part)?;
        acc.add_scaled(1.0, &iterated_para(&fs, pou)?);
    }
    Ok(acc)
}

fn bracket_list(brackets: &BracketFamily<Word>, part: &[Word]) -> Result<Vec<GridFunction>> {
    part.iter()
        .map(|t| {
            brackets
                .get(t)
                .cloned()
                .ok_or_else(|| Error::Usage(format!("bracket of {t} is missing")))
        })
        .collect()
}

/// `|omega^w_{yx}(F) - sum_Pi omega^≺_{yx}([[tau_1]], ..., [[tau_m]])|` for
/// each pair.
pub fn partition_formula_residuals(
    family: &SeedFamily<'_>,
    brackets: &BracketFamily<Word>,
    w: &Word,
    pairs: &[(usize, usize)],
    pou: &PartitionOfUnity,
) -> Result<Vec<f64>> {
    let tables = w
        .partitions()?
        .iter()
        .map(|part| PrecTable::new(&bracket_list(brackets, part)?, pou))
        .collect::<Result<Vec<_>>>()?;
    pairs
        .iter()
        .map(|&(x, y)| {
            let lhs = omega_seed(family, w, x, y)?;
            let rhs: f64 = tables.iter().map(|t| t.omega(x, y)).sum();
            Ok((lhs - rhs).abs())
        })
        .collect()
}

/// [`partition_formula_residuals`] for a single pair.
pub fn partition_formula_check(
    family: &SeedFamily<'_>,
    brackets: &BracketFamily<Word>,
    w: &Word,
    x: usize,
    y: usize,
    pou: &PartitionOfUnity,
) -> Result<f64> {
    Ok(partition_formula_residuals(family, brackets, w, &[(x, y)], pou)?[0])
}
