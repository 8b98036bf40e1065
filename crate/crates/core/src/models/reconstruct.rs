use super::brackets::{BracketFamily, ModelPi};
use super::field::CharacterField;
use super::md::ModelledDistribution;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hopf::{char_inverse, ComoduleBasis, Coproduct, PointCharacter};
use crate::paraproducts::para;
use crate::spectral::{GridFunction, PartitionOfUnity};

/// `(Pi_x tau)(z) = sum_sigma (Pi sigma)(z) g_x^{-1}(tau/sigma)`, with
/// `g_x^{-1}` supplied.
pub fn recentered_value(
    pi: &ModelPi,
    g_x_inv: &PointCharacter,
    tau: &ComoduleBasis,
    z: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    for ((sigma, right), c) in tau.coproduct().iter() {
        let v = g_x_inv
            .eval_monomial(right)
            .ok_or_else(|| Error::Usage(format!("g_x^-1 is not defined on {right}")))?;
        acc += c * v * pi.get(sigma)?.at(z);
    }
    Ok(acc)
}

/// `(Pi_x tau)(x)`.
pub fn recentered_at(
    pi: &ModelPi,
    field: &CharacterField,
    tau: &ComoduleBasis,
    x: usize,
) -> Result<f64> {
    recentered_value(pi, &char_inverse(&field.at(x))?, tau, x)
}

/// `R f(x) = (Pi_x f(x))(x)`, exact for realizations sampled on the grid.
pub fn pointwise_reconstruct(
    pi: &ModelPi,
    field: &CharacterField,
    md: &ModelledDistribution<ComoduleBasis>,
    exec: Exec,
) -> Result<GridFunction> {
    let grid = field.grid();
    let values = exec.map_range(grid.len(), |x| -> Result<f64> {
        let inv = char_inverse(&field.at(x))?;
        let mut acc = 0.0;
        for (tau, f) in md.iter() {
            acc += f.at(x) * recentered_value(pi, &inv, tau, x)?;
        }
        Ok(acc)
    });
    GridFunction::new(grid, values.into_iter().collect::<Result<Vec<_>>>()?)
}

/// `[[f]] = R - sum_tau f_tau ≺ [[tau]]`.
pub fn paracontrolled_remainder<B: Coproduct>(
    reconstruction: &GridFunction,
    md: &ModelledDistribution<B>,
    brackets: &BracketFamily<B>,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let mut out = reconstruction.clone();
    for (tau, f) in md.iter() {
        let b = brackets
            .get(tau)
            .ok_or_else(|| Error::Usage(format!("bracket of {tau} is missing")))?;
        out.add_scaled(-1.0, &para(f, b, pou)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::hopf::Alphabet;
    use crate::models::{brackets_to_model, canonical_model};
    use crate::spectral::{build_partition, synth_holder, Grid};

    #[test]
    fn single_noise_coefficient() {
        let pou = build_partition(Grid::line(9).unwrap(), 2).unwrap();
        let f = synth_holder(0.3, 1, &pou, 8).unwrap();
        let xi = synth_holder(-0.7, 2, &pou, 8).unwrap();
        let field = canonical_model(&[f], &[0.3], &pou)
            .unwrap()
            .with_noise(-0.7)
            .unwrap();
        let mut br = BracketFamily::default();
        br.insert(ComoduleBasis::xi(1), xi.clone());
        br.insert(
            ComoduleBasis::dressed(1, 1).unwrap(),
            GridFunction::zeros(pou.grid()),
        );
        let pi = brackets_to_model(&field, &br, &pou).unwrap();
        let one = GridFunction::constant(pou.grid(), 1.0);
        let alphabet: &Alphabet = field.alphabet();
        let md = ModelledDistribution::new(
            0.1,
            BTreeMap::from([(ComoduleBasis::xi(1), one.clone())]),
            alphabet,
        )
        .unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = pointwise_reconstruct(&pi, &field, &md, exec).unwrap();
            assert!(r.sup_distance(&xi) <= 1e-14);
        }
        let r = pointwise_reconstruct(&pi, &field, &md, Exec::default()).unwrap();
        let rem = paracontrolled_remainder(&r, &md, &br, &pou).unwrap();
        let expected = &xi - &para(&one, &xi, &pou).unwrap();
        assert!(rem.sup_distance(&expected) <= 1e-12);
    }
}
