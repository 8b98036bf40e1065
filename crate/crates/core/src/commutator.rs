//! The multicomponent commutator
//! `C(g, xi) = g⪰xi`,
//! `C(g, f_1, ..., f_n, xi) = C(g≺f_1, f_2, ..., f_n, xi) - g · C(f_1, ..., f_n, xi)`,
//! its unrolled form, the models `Z^0` and `Z^s` on the noise comodule, and
//! the reconstruction route to the extended commutator.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hopf::ComoduleBasis;
use crate::models::{
    brackets_to_model, canonical_md, canonical_model, paracontrolled_remainder,
    pointwise_reconstruct, recentered_at, BracketFamily, CharacterField, ModelPi,
};
use crate::paraproducts::{iterated_para, para, para_ge, resonant};
use crate::spectral::{check_grids, GridFunction, PartitionOfUnity};

/// Inputs `g in C^beta`, `f_i in C^{alpha_i}`, `xi in C^gamma` with their
/// declared regularities.
#[derive(Debug, Clone)]
pub struct CommutatorInstance {
    pub g: GridFunction,
    pub beta: f64,
    pub fs: Vec<GridFunction>,
    pub alphas: Vec<f64>,
    pub xi: GridFunction,
    pub gamma: f64,
}

impl CommutatorInstance {
    pub fn new(
        g: GridFunction,
        beta: f64,
        fs: Vec<GridFunction>,
        alphas: Vec<f64>,
        xi: GridFunction,
        gamma: f64,
    ) -> Result<Self> {
        if fs.len() != alphas.len() {
            return Err(Error::Usage(format!(
                "{} functions for {} regularities",
                fs.len(),
                alphas.len()
            )));
        }
        for f in fs.iter().chain([&xi]) {
            check_grids(g.grid(), f.grid())?;
        }
        Ok(CommutatorInstance {
            g,
            beta,
            fs,
            alphas,
            xi,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.fs.len()
    }

    pub fn sum_alpha(&self) -> f64 {
        self.alphas.iter().sum()
    }

    /// `beta + alpha_1 + ... + alpha_n + gamma`.
    pub fn gamma_class(&self) -> f64 {
        self.beta + self.sum_alpha() + self.gamma
    }

    /// Product of the input sup norms, the natural size of the output.
    pub fn scale(&self) -> f64 {
        self.fs
            .iter()
            .chain([&self.g, &self.xi])
            .map(GridFunction::sup_norm)
            .product()
    }

    /// Checks `beta, alpha_i in (0,1)`, `gamma < 0`, `beta + sum(alpha) < 1`
    /// and `sum(alpha) + gamma < 0 < beta + sum(alpha) + gamma`.
    pub fn check_invariants(&self) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        if !unit(self.beta) || !self.alphas.iter().all(|&a| unit(a)) {
            return Err(Error::Configuration(
                "beta and every alpha must lie in (0, 1)".into(),
            ));
        }
        if self.gamma >= 0.0 {
            return Err(Error::Configuration(format!(
                "gamma = {} must be negative",
                self.gamma
            )));
        }
        if self.beta + self.sum_alpha() >= 1.0 {
            return Err(Error::Configuration(format!(
                "violated beta + sum(alpha) < 1: {} + {} >= 1",
                self.beta,
                self.sum_alpha()
            )));
        }
        if self.sum_alpha() + self.gamma >= 0.0 {
            return Err(Error::Configuration(format!(
                "violated sum(alpha) + gamma < 0: {} + {} >= 0",
                self.sum_alpha(),
                self.gamma
            )));
        }
        if self.gamma_class() <= 0.0 {
            return Err(Error::Configuration(format!(
                "violated beta + sum(alpha) + gamma > 0: got {}",
                self.gamma_class()
            )));
        }
        Ok(())
    }
}

/// `C(g, f_1, ..., f_n, xi)` by its defining recursion.
pub fn commutator_of(
    g: &GridFunction,
    fs: &[GridFunction],
    xi: &GridFunction,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    match fs.split_first() {
        None => para_ge(g, xi, pou),
        Some((f1, rest)) => {
            let left = commutator_of(&para(g, f1, pou)?, rest, xi, pou)?;
            let right = commutator_of(f1, rest, xi, pou)?;
            Ok(&left - &(g * &right))
        }
    }
}

/// `C(g, f_1, ..., f_n, xi)` for an instance; the regularity constraints are
/// not required here.
pub fn commutator(inst: &CommutatorInstance, pou: &PartitionOfUnity) -> Result<GridFunction> {
    commutator_of(&inst.g, &inst.fs, &inst.xi, pou)
}

/// `C((g, f_1, ..., f_n)^≺, xi) - sum_{k<n} (g, f_1, ..., f_k)^≺ · C(f_{k+1}, ..., f_n, xi)`.
pub fn commutator_unrolled(
    inst: &CommutatorInstance,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let n = inst.n();
    let mut runs = Vec::with_capacity(n + 1);
    runs.push(inst.g.clone());
    for f in &inst.fs {
        let next = para(runs.last().expect("nonempty"), f, pou)?;
        runs.push(next);
    }
    let mut out = para_ge(&runs[n], &inst.xi, pou)?;
    for (k, run) in runs.iter().enumerate().take(n) {
        let tail = commutator_of(&inst.fs[k], &inst.fs[k + 1..], &inst.xi, pou)?;
        out = &out - &(run * &tail);
    }
    Ok(out)
}

/// The resonant-only commutator `(f≺g)∘h - f (g∘h)`, for comparison.
pub fn gip_commutator(
    f: &GridFunction,
    g: &GridFunction,
    h: &GridFunction,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let left = resonant(&para(f, g, pou)?, h, pou)?;
    Ok(&left - &(f * &resonant(g, h, pou)?))
}

/// The canonical model of the `f_i` over the alphabet extended by `Xi`.
pub fn instance_field(inst: &CommutatorInstance, pou: &PartitionOfUnity) -> Result<CharacterField> {
    canonical_model(&inst.fs, &inst.alphas, pou)?.with_noise(inst.gamma)
}

/// `Z^0`: brackets `[[Xi]] = xi` and `[[(k...n)Xi]] = 0`.
pub fn build_z0(
    inst: &CommutatorInstance,
    field: &CharacterField,
    pou: &PartitionOfUnity,
) -> Result<ModelPi> {
    let n = inst.n() as u8;
    let zero = GridFunction::zeros(inst.xi.grid());
    let mut brackets = BracketFamily::default();
    for b in ComoduleBasis::all(n) {
        brackets.insert(
            b,
            if b.is_xi() {
                inst.xi.clone()
            } else {
                zero.clone()
            },
        );
    }
    brackets_to_model(field, &brackets, pou)
}

/// `Z^s`: `Pi Xi = xi` and `Pi (k...n)Xi = (f_k, ..., f_n)^≺ · xi`.
pub fn build_zs(inst: &CommutatorInstance, pou: &PartitionOfUnity) -> Result<ModelPi> {
    let n = inst.n() as u8;
    let mut values = BTreeMap::new();
    for b in ComoduleBasis::all(n) {
        let v = if b.is_xi() {
            inst.xi.clone()
        } else {
            let k = b.start() as usize;
            &iterated_para(&inst.fs[k - 1..], pou)? * &inst.xi
        };
        values.insert(b, v);
    }
    Ok(ModelPi::new(values))
}

/// `|(Pi^s_x tau)(x) - expected|` per basis element, where the expected value
/// is `xi(x)` on `Xi` and 0 on `(k...n)Xi`.
pub fn smooth_model_check(
    inst: &CommutatorInstance,
    field: &CharacterField,
    zs: &ModelPi,
    x: usize,
) -> Result<BTreeMap<ComoduleBasis, f64>> {
    ComoduleBasis::all(inst.n() as u8)
        .into_iter()
        .map(|b| {
            let expected = if b.is_xi() { inst.xi.at(x) } else { 0.0 };
            Ok((b, (recentered_at(zs, field, &b, x)? - expected).abs()))
        })
        .collect()
}

/// `|(Pibar_x (k...n)Xi)(x) - C(f_k, ..., f_n, xi)(x)|` per `k`, and
/// `|(Pibar_x Xi)(x)|`, with `Pibar = Pi^s - Pi^0`.
pub fn difference_model_check(
    inst: &CommutatorInstance,
    field: &CharacterField,
    zbar: &ModelPi,
    tails: &BTreeMap<ComoduleBasis, GridFunction>,
    x: usize,
) -> Result<BTreeMap<ComoduleBasis, f64>> {
    ComoduleBasis::all(inst.n() as u8)
        .into_iter()
        .map(|b| {
            let expected = if b.is_xi() { 0.0 } else { tails[&b].at(x) };
            Ok((b, (recentered_at(zbar, field, &b, x)? - expected).abs()))
        })
        .collect()
}

/// `C(f_k, ..., f_n, xi)` for every `(k...n)Xi`.
pub fn commutator_tails(
    inst: &CommutatorInstance,
    pou: &PartitionOfUnity,
) -> Result<BTreeMap<ComoduleBasis, GridFunction>> {
    let n = inst.n() as u8;
    (1..=n)
        .map(|k| {
            let k0 = k as usize - 1;
            let c = commutator_of(&inst.fs[k0], &inst.fs[k0 + 1..], &inst.xi, pou)?;
            Ok((ComoduleBasis::dressed(k, n)?, c))
        })
        .collect()
}

/// `[[g Xi]]^{Z^0} = R^{Z^0}(g Xi) - (g, f_1, ..., f_n)^≺ ≺ xi`, computed by
/// pointwise reconstruction of the canonical modelled distribution.
pub fn tilde_commutator(
    inst: &CommutatorInstance,
    field: &CharacterField,
    pou: &PartitionOfUnity,
    exec: Exec,
) -> Result<GridFunction> {
    inst.check_invariants()?;
    let z0 = build_z0(inst, field, pou)?;
    let md = canonical_md(&inst.g, inst.beta, field, pou)?.tensor_noise(field.alphabet())?;
    let r = pointwise_reconstruct(&z0, field, &md, exec)?;
    let n = inst.n() as u8;
    let zero = GridFunction::zeros(inst.xi.grid());
    let mut brackets = BracketFamily::default();
    for b in ComoduleBasis::all(n) {
        brackets.insert(
            b,
            if b.is_xi() {
                inst.xi.clone()
            } else {
                zero.clone()
            },
        );
    }
    paracontrolled_remainder(&r, &md, &brackets, pou)
}
