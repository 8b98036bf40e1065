use super::{
    check_seeds, collect_seeds, format_alphas, letter_inputs, sample_points, slot_seed, ReportRow,
};
use super::{DEFAULT_MODES, G_SLOT, XI_SLOT};
use crate::commutator::{
    build_z0, build_zs, commutator, commutator_tails, commutator_unrolled, difference_model_check,
    instance_field, smooth_model_check, tilde_commutator, CommutatorInstance,
};
use crate::error::Result;
use crate::exec::Exec;
use crate::hopf::{Alphabet, MAX_WORD_LEN};
use crate::models::{
    atomic_decomposition, extract_brackets, partition_formula_residuals, seed_field,
};
use crate::paraproducts::{block_recursion_residuals, bony_decompose, SeedFamily};
use crate::spectral::{build_partition, synth_holder, Grid, GridFunction, PartitionOfUnity};
use crate::tolerances;

const EXPERIMENT: &str = "analysis";
const LETTERS: [f64; 3] = [0.2, 0.15, 0.1];
/// `(f, g)` regularities of the Bony test pairs.
const BONY_PAIRS: [(f64, f64); 2] = [(0.4, -0.6), (0.3, 0.5)];

/// `(beta, alphas, gamma)` of the commutator identity checks, one per `n`.
pub const COMMUTATOR_CASES: [(f64, &[f64], f64); 3] = [
    (0.55, &[0.35], -0.7),
    (0.6, &[0.2, 0.15], -0.5),
    (0.3, &[0.2, 0.2, 0.15], -0.7),
];

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub log2_size: u32,
    pub seeds: Vec<u64>,
    /// Random two-point pairs per seed for the recursion and partition checks.
    pub pairs: usize,
    /// Random points per seed for the recentered-model identities.
    pub points: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            log2_size: 12,
            seeds: (0..4).collect(),
            pairs: 8,
            points: 32,
        }
    }
}

/// Exact identities that hold on every grid: Bony splitting, the blockwise
/// recursion, atomic decomposition, the partition formula, the equivalent
/// forms of the commutator and the pointwise model identities.
pub fn analysis_suite(config: &AnalysisConfig, exec: Exec) -> Result<Vec<ReportRow>> {
    check_seeds(&config.seeds)?;
    let pou = build_partition(Grid::line(config.log2_size)?, 2)?;
    let params = format!("L={};letters={}", config.log2_size, format_alphas(&LETTERS));
    collect_seeds(exec.map(&config.seeds, |&seed| {
        analysis_seed(config, seed, &pou, &params)
    }))
}

fn analysis_seed(
    config: &AnalysisConfig,
    seed: u64,
    pou: &PartitionOfUnity,
    params: &str,
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let row = |metric: &str, measured: f64, tol: f64| {
        ReportRow::residual(EXPERIMENT, Some(seed), params, metric, measured, tol)
    };

    let mut bony = 0.0_f64;
    for (p, &(a, b)) in BONY_PAIRS.iter().enumerate() {
        let f = synth_holder(a, slot_seed(seed, 2 * p as u64), pou, DEFAULT_MODES)?;
        let g = synth_holder(b, slot_seed(seed, 2 * p as u64 + 1), pou, DEFAULT_MODES)?;
        let split = bony_decompose(&f, &g, pou)?.total();
        bony = bony.max((&f * &g).sup_distance(&split) / (f.sup_norm() * g.sup_norm()));
    }
    rows.push(row("bony_exactness", bony, tolerances::BONY));

    let alphabet = Alphabet::new(&LETTERS)?;
    let family = SeedFamily::new(alphabet.clone(), letter_inputs(&LETTERS, seed, pou)?, pou)?;
    let pts = sample_points(2 * config.pairs, seed, pou.grid().len());
    let pairs: Vec<(usize, usize)> = pts.chunks(2).map(|c| (c[0], c[1])).collect();
    let field = seed_field(&family)?;
    let brackets = extract_brackets(&field, pou)?;
    let (mut recursion, mut atomic, mut partition) = (0.0_f64, 0.0_f64, 0.0_f64);
    for w in alphabet.words(MAX_WORD_LEN) {
        let scale = family.scale(&w);
        for &(x, y) in &pairs {
            for (a, b) in block_recursion_residuals(&family, &w, x, y)? {
                recursion = recursion.max(a.max(b) / scale);
            }
        }
        let decomposed = atomic_decomposition(&brackets, &w, pou)?;
        atomic = atomic.max(decomposed.sup_distance(&*family.value(&w)?) / scale);
        for r in partition_formula_residuals(&family, &brackets, &w, &pairs, pou)? {
            partition = partition.max(r / scale);
        }
    }
    rows.push(row(
        "block_recursion",
        recursion,
        tolerances::BLOCK_RECURSION,
    ));
    rows.push(row(
        "atomic_decomposition",
        atomic,
        tolerances::DECOMPOSITION,
    ));
    rows.push(row(
        "partition_formula",
        partition,
        tolerances::DECOMPOSITION,
    ));

    let tol = tolerances::COMMUTATOR_IDENTITY;
    for (beta, alphas, gamma) in COMMUTATOR_CASES {
        let n = alphas.len();
        let inst = commutator_instance(beta, alphas, gamma, seed, pou)?;
        let scale = inst.scale();
        let field = instance_field(&inst, pou)?;
        let c = commutator(&inst, pou)?;
        let unrolled = commutator_unrolled(&inst, pou)?;
        let tilde = tilde_commutator(&inst, &field, pou, Exec::Sequential)?;
        rows.push(row(
            &format!("commutator_unrolled_n{n}"),
            c.sup_distance(&unrolled) / scale,
            tol,
        ));
        rows.push(row(
            &format!("commutator_reconstructed_n{n}"),
            c.sup_distance(&tilde) / scale,
            tol,
        ));

        let z0 = build_z0(&inst, &field, pou)?;
        let zs = build_zs(&inst, pou)?;
        let zbar = zs.sub(&z0)?;
        let tails = commutator_tails(&inst, pou)?;
        let (mut l46, mut l47) = (0.0_f64, 0.0_f64);
        for x in sample_points(config.points, seed, pou.grid().len()) {
            l46 = smooth_model_check(&inst, &field, &zs, x)?
                .values()
                .fold(l46, |m, &r| m.max(r));
            l47 = difference_model_check(&inst, &field, &zbar, &tails, x)?
                .values()
                .fold(l47, |m, &r| m.max(r));
        }
        rows.push(row(
            &format!("smooth_model_identity_n{n}"),
            l46 / scale,
            tol,
        ));
        rows.push(row(
            &format!("difference_model_identity_n{n}"),
            l47 / scale,
            tol,
        ));
    }
    Ok(rows)
}

/// The commutator inputs of one seed: `g` and `xi` on their own slots,
/// `f_i` on slot `i - 1`.
pub(crate) fn commutator_instance(
    beta: f64,
    alphas: &[f64],
    gamma: f64,
    seed: u64,
    pou: &PartitionOfUnity,
) -> Result<CommutatorInstance> {
    let g = synth_holder(beta, slot_seed(seed, G_SLOT), pou, DEFAULT_MODES)?;
    let xi: GridFunction = synth_holder(gamma, slot_seed(seed, XI_SLOT), pou, DEFAULT_MODES)?;
    CommutatorInstance::new(
        g,
        beta,
        letter_inputs(alphas, seed, pou)?,
        alphas.to_vec(),
        xi,
        gamma,
    )
}
