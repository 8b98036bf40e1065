//! Library side of the `paracalc` command: config files, report output and
//! the command bodies. Argument parsing lives in the binary.

pub mod config;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use paracalc::experiments::{
    algebra_suite, analysis_suite, scaling_experiment, sort_rows, AlgebraFault, AnalysisConfig,
    ReportRow, ScalingConfig,
};
use paracalc::spectral::{build_partition, decompose, synth_holder, Grid, GridFunction};
use paracalc::tolerances::SYNTH_ROUND_TRIP;
use paracalc::Exec;

pub use config::{pick, ConfigFile};
pub use report::{format_float, write_report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] paracalc::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Csv(_) => 3,
            _ => 2,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Sorts, writes and summarizes a report; `true` when every row passes.
pub fn emit(mut rows: Vec<ReportRow>, out: Option<&Path>) -> Result<bool, CliError> {
    sort_rows(&mut rows);
    match out {
        Some(p) => write_report(create(p)?, &rows)?,
        None => write_report(io::stdout().lock(), &rows)?,
    }
    for r in rows.iter().filter(|r| !r.pass()) {
        eprintln!("{r}");
    }
    let passed = rows.iter().filter(|r| r.pass()).count();
    eprintln!("{passed} of {} checks pass", rows.len());
    Ok(passed == rows.len())
}

pub fn verify_algebra(fault: AlgebraFault, out: Option<&Path>) -> Result<bool, CliError> {
    emit(algebra_suite(fault)?, out)
}

pub fn verify_analysis(
    config: &AnalysisConfig,
    exec: Exec,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    emit(analysis_suite(config, exec)?, out)
}

pub fn scaling(config: &ScalingConfig, exec: Exec, out: Option<&Path>) -> Result<bool, CliError> {
    emit(scaling_experiment(config, exec)?, out)
}

/// Writes `x,value` samples of a synthetic `C^alpha` function on `2^L` points.
pub fn synth(
    alpha: f64,
    log2_size: u32,
    seed: u64,
    modes: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let pou = build_partition(Grid::line(log2_size)?, 2)?;
    let f = synth_holder(alpha, seed, &pou, modes)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["x", "value"])?;
    let n = f.grid().len();
    for (i, v) in f.samples().iter().enumerate() {
        w.write_record([(i as f64 / n as f64).to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `x,value` samples written by [`synth`].
pub fn read_samples(path: &Path) -> Result<GridFunction, CliError> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let v = rec
            .get(1)
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{}: malformed sample row {:?}",
                    path.display(),
                    rec
                ))
            })?;
        values.push(v);
    }
    let n = values.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "{}: {n} samples is not a power of two",
            path.display()
        )));
    }
    Ok(GridFunction::new(Grid::line(n.trailing_zeros())?, values)?)
}

/// Writes `j,sup` for every block of the samples in `input` and returns the
/// sup distance between the sum of the blocks and the input.
pub fn decompose_file(input: &Path, out: Option<&Path>) -> Result<f64, CliError> {
    let f = read_samples(input)?;
    let pou = build_partition(f.grid(), 2)?;
    let dec = decompose(&f, &pou)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["j", "sup"])?;
    for (j, s) in dec.block_sups() {
        w.write_record([j.to_string(), format_float(s)])?;
    }
    w.flush()?;
    let residual = dec.partial_sum(-1, dec.top()).sup_distance(&f);
    eprintln!("block sum differs from the input by {residual:e} (allowed {SYNTH_ROUND_TRIP:e})");
    Ok(residual)
}
