//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every tolerance, grid size, seed count and runtime budget is written out
//! here rather than imported, so that changing a library default cannot move
//! an acceptance threshold.

use std::time::{Duration, Instant};

use paracalc::experiments::{
    algebra_suite, analysis_suite, scaling_experiment, AlgebraFault, AnalysisConfig, Experiment,
    ReportRow, ScalingConfig,
};
use paracalc::paraproducts::bony_decompose;
use paracalc::spectral::{build_partition, synth_holder, Grid};
use paracalc::Exec;

const ALGEBRA_TOL: f64 = 1e-10;
const BONY_TOL: f64 = 1e-10;
const RECURSION_TOL: f64 = 1e-9;
const DECOMPOSITION_TOL: f64 = 1e-8;
const BRACKET_TOL: f64 = 1e-10;
const OMEGA_SLOPE_TOL: f64 = 0.12;
const COMMUTATOR_TOL: f64 = 1e-8;
const COMMUTATOR_FLOOR: f64 = 0.2 - 0.1;
const RESONANT_CEILING: f64 = -0.35 + 0.15;
const POINTWISE_TOL: f64 = 1e-8;

struct Outcome {
    label: &'static str,
    pass: bool,
    detail: String,
}

fn worst(rows: &[ReportRow], metric_prefix: &str) -> (f64, usize) {
    let picked: Vec<&ReportRow> = rows
        .iter()
        .filter(|r| r.metric.starts_with(metric_prefix))
        .collect();
    (
        picked.iter().map(|r| r.measured).fold(0.0, f64::max),
        picked.len(),
    )
}

fn residual_outcome(
    label: &'static str,
    rows: &[ReportRow],
    checks: &[(&str, f64)],
    budget: Option<(Duration, Duration)>,
) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(prefix, tol) in checks {
        let (w, count) = worst(rows, prefix);
        pass &= count > 0 && w <= tol;
        parts.push(format!(
            "{prefix} max {w:.3e} <= {tol:.0e} over {count} rows"
        ));
    }
    if let Some((took, limit)) = budget {
        pass &= took <= limit;
        parts.push(format!(
            "{:.1} s of {} s",
            took.as_secs_f64(),
            limit.as_secs()
        ));
    }
    Outcome {
        label,
        pass,
        detail: parts.join("; "),
    }
}

fn algebra_and_brackets() -> (Outcome, Outcome) {
    let start = Instant::now();
    let rows = algebra_suite(AlgebraFault::None).expect("algebra suite runs");
    let took = start.elapsed();
    let laws = [
        ("coassociativity", ALGEBRA_TOL),
        ("counit", ALGEBRA_TOL),
        ("comodule", ALGEBRA_TOL),
        ("grading", ALGEBRA_TOL),
        ("connectedness", ALGEBRA_TOL),
        ("character_associativity", ALGEBRA_TOL),
        ("character_inverse", ALGEBRA_TOL),
        ("chen_relation", ALGEBRA_TOL),
    ];
    let brackets = [
        ("bracket_vanishing", BRACKET_TOL),
        ("bracket_round_trip", BRACKET_TOL),
        ("model_round_trip", BRACKET_TOL),
    ];
    (
        residual_outcome(
            "1 algebra suite",
            &rows,
            &laws,
            Some((took, Duration::from_secs(5))),
        ),
        residual_outcome("4 canonical brackets", &rows, &brackets, None),
    )
}

fn bony() -> Outcome {
    let start = Instant::now();
    let pou = build_partition(Grid::line(12).unwrap(), 2).unwrap();
    let mut max = 0.0_f64;
    for seed in 0..8u64 {
        let f = synth_holder(0.4, 1000 + 2 * seed, &pou, 8).unwrap();
        let g = synth_holder(-0.6, 1001 + 2 * seed, &pou, 8).unwrap();
        let total = bony_decompose(&f, &g, &pou).unwrap().total();
        max = max.max((&f * &g).sup_distance(&total) / (f.sup_norm() * g.sup_norm()));
    }
    let took = start.elapsed();
    Outcome {
        label: "2 Bony exactness",
        pass: max <= BONY_TOL && took <= Duration::from_secs(5),
        detail: format!(
            "max {max:.3e} <= {BONY_TOL:.0e} over 8 pairs at L=12; {:.1} s of 5 s",
            took.as_secs_f64()
        ),
    }
}

fn analysis() -> (Outcome, Outcome, Outcome) {
    let config = AnalysisConfig {
        log2_size: 12,
        seeds: (0..4).collect(),
        pairs: 8,
        points: 32,
    };
    let start = Instant::now();
    let rows = analysis_suite(&config, Exec::default()).expect("analysis suite runs");
    let took = start.elapsed();
    let budget = Some((took, Duration::from_secs(60 + 180)));
    (
        residual_outcome(
            "3 recursion, atomic decomposition, partition formula",
            &rows,
            &[
                ("block_recursion", RECURSION_TOL),
                ("atomic_decomposition", DECOMPOSITION_TOL),
                ("partition_formula", DECOMPOSITION_TOL),
            ],
            budget,
        ),
        residual_outcome(
            "6 commutator identities",
            &rows,
            &[
                ("commutator_unrolled", COMMUTATOR_TOL),
                ("commutator_reconstructed", COMMUTATOR_TOL),
            ],
            None,
        ),
        residual_outcome(
            "8 pointwise model identities",
            &rows,
            &[
                ("smooth_model_identity", POINTWISE_TOL),
                ("difference_model_identity", POINTWISE_TOL),
            ],
            None,
        ),
    )
}

fn scaling(
    experiment: Experiment,
    beta: f64,
    alphas: &[f64],
    gamma: f64,
    l: u32,
    seeds: u64,
) -> (ReportRow, Vec<ReportRow>) {
    let config = ScalingConfig {
        experiment,
        beta,
        alphas: alphas.to_vec(),
        gamma,
        log2_size: l,
        seeds: (0..seeds).collect(),
    };
    let mut rows = scaling_experiment(&config, Exec::default()).expect("scaling experiment runs");
    let aggregate = rows.pop().expect("aggregate row");
    assert!(aggregate.seed.is_none());
    (aggregate, rows)
}

fn omega() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for alphas in [&[0.3, 0.4][..], &[0.3, 0.4, 0.2]] {
        let (mean, _) = scaling(Experiment::Omega, 0.0, alphas, 0.0, 12, 8);
        let target: f64 = alphas.iter().sum();
        let ok = (mean.measured - target).abs() <= OMEGA_SLOPE_TOL;
        pass &= ok;
        parts.push(format!(
            "alpha={alphas:?}: slope {:.3} vs {target:.2} +- {OMEGA_SLOPE_TOL}{}",
            mean.measured,
            if ok { "" } else { " (out of band)" }
        ));
    }
    let took = start.elapsed();
    pass &= took <= Duration::from_secs(120);
    parts.push(format!("{:.1} s of 120 s", took.as_secs_f64()));
    Outcome {
        label: "5 omega exponent",
        pass,
        detail: parts.join("; "),
    }
}

fn commutator_exponent() -> Outcome {
    let start = Instant::now();
    let (c, _) = scaling(Experiment::Commutator, 0.55, &[0.35], -0.7, 14, 8);
    let (r, _) = scaling(Experiment::ControlResonant, 0.55, &[0.35], -0.7, 14, 8);
    let took = start.elapsed();
    Outcome {
        label: "7 commutator exponent",
        pass: c.measured >= COMMUTATOR_FLOOR && r.measured <= RESONANT_CEILING && took <= Duration::from_secs(180),
        detail: format!(
            "C regularity {:.3} >= {COMMUTATOR_FLOOR:.2}; f1 resonant xi regularity {:.3} <= {RESONANT_CEILING:.2}; {:.1} s of 180 s",
            c.measured,
            r.measured,
            took.as_secs_f64()
        ),
    }
}

fn refinement() -> Outcome {
    let (mean, per_seed) = scaling(Experiment::Refinement, 0.55, &[0.35], -0.7, 14, 8);
    let monotone = per_seed.iter().all(|r| r.measured < 1.0) && mean.measured < 1.0;
    let worst = per_seed.iter().map(|r| r.measured).fold(0.0, f64::max);
    Outcome {
        label: "9 refinement stability",
        pass: monotone,
        detail: format!(
            "blocks j <= 8, sup difference ratio (L=12 vs 14) / (L=10 vs 12): mean {:.3}, worst seed {worst:.3}, required < 1",
            mean.measured
        ),
    }
}

fn main() {
    let (c1, c4) = algebra_and_brackets();
    let c2 = bony();
    let (c3, c6, c8) = analysis();
    let c5 = omega();
    let c7 = commutator_exponent();
    let c9 = refinement();
    let outcomes = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    for o in &outcomes {
        println!(
            "{} criterion {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.label,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {} of {} criteria pass",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
