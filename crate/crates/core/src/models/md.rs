use std::collections::BTreeMap;

use super::field::{g_two_point_character, CharacterField};
use crate::error::{Error, Result};
use crate::hopf::{to_f64, Alphabet, ComoduleBasis, Coproduct, Word};
use crate::paraproducts::para;
use crate::spectral::{GridFunction, PartitionOfUnity};

/// A field of local expansions `f(x) = sum_tau f_tau(x) tau` of class `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelledDistribution<B: Ord> {
    gamma: f64,
    coefficients: BTreeMap<B, GridFunction>,
}

impl<B: Coproduct> ModelledDistribution<B> {
    /// Every key must have homogeneity below `gamma`.
    pub fn new(
        gamma: f64,
        coefficients: BTreeMap<B, GridFunction>,
        alphabet: &Alphabet,
    ) -> Result<Self> {
        for key in coefficients.keys() {
            let h = to_f64(key.homogeneity(alphabet)?);
            if h >= gamma {
                return Err(Error::Configuration(format!(
                    "coefficient at {key} of homogeneity {h} in a class-{gamma} distribution"
                )));
            }
        }
        Ok(ModelledDistribution {
            gamma,
            coefficients,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn coefficient(&self, key: &B) -> Option<&GridFunction> {
        self.coefficients.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &GridFunction)> {
        self.coefficients.iter()
    }
}

impl ModelledDistribution<Word> {
    /// `f Xi`: each word `tau` becomes `tau Xi`, the class shifts by the
    /// noise homogeneity.
    pub fn tensor_noise(&self, alphabet: &Alphabet) -> Result<ModelledDistribution<ComoduleBasis>> {
        let gamma_xi = alphabet
            .noise()
            .ok_or_else(|| Error::Usage("alphabet carries no noise homogeneity".into()))?;
        let n = alphabet.len() as u8;
        let coefficients = self
            .coefficients
            .iter()
            .map(|(w, f)| Ok((ComoduleBasis::from_word(w, n)?, f.clone())))
            .collect::<Result<_>>()?;
        ModelledDistribution::new(self.gamma + to_f64(gamma_xi), coefficients, alphabet)
    }
}

/// `g(x) = sum_{k=0}^n (g, f_1, ..., f_k)^≺(x) ((k+1)...n)` of class
/// `beta + alpha_1 + ... + alpha_n`.
pub fn canonical_md(
    g: &GridFunction,
    beta: f64,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<ModelledDistribution<Word>> {
    let alphabet = field.alphabet();
    let sum_alpha: f64 = alphabet.homogeneities_f64().iter().sum();
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Configuration(format!(
            "beta = {beta} must lie in (0, 1)"
        )));
    }
    if beta + sum_alpha >= 1.0 {
        return Err(Error::Configuration(format!(
            "beta + sum(alpha) = {} must be < 1",
            beta + sum_alpha
        )));
    }
    let n = alphabet.len() as u8;
    let mut coefficients = BTreeMap::new();
    let mut run = g.clone();
    coefficients.insert(Word::range(1, n), run.clone());
    for k in 1..=n {
        run = para(&run, field.value(&Word::letter(k))?, pou)?;
        coefficients.insert(Word::range(k + 1, n), run.clone());
    }
    ModelledDistribution::new(beta + sum_alpha, coefficients, alphabet)
}

/// Components of `f(y) - ghat_{yx} f(x)` with
/// `ghat_{yx} tau = sum_sigma sigma · g_{yx}(tau/sigma)`.
pub fn dgamma_components<B: Coproduct>(
    md: &ModelledDistribution<B>,
    field: &CharacterField,
    x: usize,
    y: usize,
) -> Result<BTreeMap<B, f64>> {
    let gyx = g_two_point_character(field, x, y)?;
    let mut out: BTreeMap<B, f64> = BTreeMap::new();
    for (key, f) in md.iter() {
        *out.entry(key.clone()).or_default() += f.at(y);
    }
    for (tau, f) in md.iter() {
        let fx = f.at(x);
        for ((sigma, right), c) in tau.coproduct().iter() {
            let v = gyx
                .eval_monomial(right)
                .ok_or_else(|| Error::Usage(format!("g_yx is not defined on {right}")))?;
            *out.entry(sigma.clone()).or_default() -= fx * c * v;
        }
    }
    Ok(out)
}

/// Empirical `max |(f(y) - ghat_{yx} f(x))_sigma| / |y-x|^{gamma - |sigma|}`
/// over the pairs with `x != y`; a lower bound of the true seminorm.
pub fn dgamma_seminorm<B: Coproduct>(
    md: &ModelledDistribution<B>,
    field: &CharacterField,
    pairs: &[(usize, usize)],
) -> Result<f64> {
    let grid = field.grid();
    let mut worst: f64 = 0.0;
    for &(x, y) in pairs {
        if x == y {
            continue;
        }
        let d = grid.distance(x, y);
        for (sigma, v) in dgamma_components(md, field, x, y)? {
            let h = to_f64(sigma.homogeneity(field.alphabet())?);
            worst = worst.max(v.abs() / d.powf(md.gamma() - h));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::canonical_model;
    use crate::paraproducts::{iterated_para, PrecTable};
    use crate::spectral::{build_partition, synth_holder, Grid};
    use crate::stats::fit_line;

    fn setup(
        l: u32,
        beta: f64,
        alphas: &[f64],
        seed: u64,
    ) -> (PartitionOfUnity, GridFunction, Vec<GridFunction>) {
        let pou = build_partition(Grid::line(l).unwrap(), 2).unwrap();
        let g = synth_holder(beta, seed * 16 + 15, &pou, 8).unwrap();
        let fs = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| synth_holder(a, seed * 16 + i as u64, &pou, 8).unwrap())
            .collect();
        (pou, g, fs)
    }

    #[test]
    fn canonical_coefficients() {
        let (pou, g, fs) = setup(9, 0.5, &[0.3, 0.1], 1);
        let field = canonical_model(&fs, &[0.3, 0.1], &pou).unwrap();
        let md = canonical_md(&g, 0.5, &field, &pou).unwrap();
        assert_eq!(md.coefficient(&"(12)".parse().unwrap()), Some(&g));
        let all = [g.clone(), fs[0].clone(), fs[1].clone()];
        let unit = md.coefficient(&Word::unit()).unwrap();
        assert!(unit.sup_distance(&iterated_para(&all, &pou).unwrap()) <= 1e-12);
        assert!((md.gamma() - 0.9).abs() < 1e-12);
        assert!(matches!(
            canonical_md(&g, 0.7, &field, &pou),
            Err(Error::Configuration(_))
        ));
        let with_xi = md
            .tensor_noise(&field.alphabet().clone().with_noise(-0.95).unwrap())
            .unwrap();
        assert!(with_xi.coefficient(&ComoduleBasis::xi(2)).is_some());
        assert!((with_xi.gamma() + 0.05).abs() < 1e-12);
    }

    #[test]
    fn components_are_prec_omegas() {
        let (pou, g, fs) = setup(10, 0.5, &[0.3, 0.1], 2);
        let field = canonical_model(&fs, &[0.3, 0.1], &pou).unwrap();
        let md = canonical_md(&g, 0.5, &field, &pou).unwrap();
        let all = [g.clone(), fs[0].clone(), fs[1].clone()];
        for (x, y) in [(3, 500), (100, 101), (7, 7)] {
            let comp = dgamma_components(&md, &field, x, y).unwrap();
            for l in 0..=2usize {
                let key = Word::range(l as u8 + 1, 2);
                let table = PrecTable::new(&all[..=l], &pou).unwrap();
                assert!((comp[&key] - table.omega(x, y)).abs() <= 1e-9, "l={l}");
            }
            if x == y {
                assert!(comp.values().all(|v| v.abs() <= 1e-15));
            }
        }
    }

    #[test]
    fn seminorm_has_no_growth_trend() {
        let mut slopes = Vec::new();
        for seed in 0..8 {
            let (pou, g, fs) = setup(14, 0.5, &[0.3, 0.1], seed);
            let field = canonical_model(&fs, &[0.3, 0.1], &pou).unwrap();
            let md = canonical_md(&g, 0.5, &field, &pou).unwrap();
            let n = pou.grid().len();
            let mut points = Vec::new();
            for m in 2..=11u32 {
                let step = n >> m;
                let pairs: Vec<_> = (0..16)
                    .map(|b| (b * 251 % n, (b * 251 + step) % n))
                    .collect();
                let r = dgamma_seminorm(&md, &field, &pairs).unwrap();
                points.push((-(m as f64), r.log2()));
            }
            slopes.push(fit_line(&points).unwrap().slope);
        }
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        assert!(mean.abs() <= 0.15, "log-ratio slope {mean}");
    }
}
