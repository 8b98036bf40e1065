use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use paracalc::experiments::{
    AlgebraFault, AnalysisConfig, Experiment, ScalingConfig, DEFAULT_MODES,
};
use paracalc::tolerances::SYNTH_ROUND_TRIP;
use paracalc::Exec;
use paracalc_cli::{
    decompose_file, pick, scaling, synth, verify_algebra, verify_analysis, CliError, ConfigFile,
};

/// Paraproduct and commutator calculus on the periodic grid.
#[derive(Parser)]
#[command(name = "paracalc", version)]
struct Cli {
    /// Flat `key = value` config file; command-line options override it.
    #[arg(long, env = "PARACALC_CONFIG", global = true)]
    config: Option<PathBuf>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf-algebra laws, character group, Chen relation and bracket round trips.
    VerifyAlgebra {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negative control: `corrupt-coproduct`.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Exact analytic identities on a grid.
    VerifyAnalysis {
        #[arg(long = "L")]
        l: Option<u32>,
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent regressions over seeds.
    Scaling {
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long = "L")]
        l: Option<u32>,
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Samples of a synthetic function of given regularity.
    Synth {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long = "L")]
        l: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        modes: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block sups of a sample file.
    Decompose {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn seeds(count: u64) -> Result<Vec<u64>, CliError> {
    if count == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    Ok((0..count).collect())
}

fn out_path(cli: Option<PathBuf>, file: &ConfigFile) -> Option<PathBuf> {
    cli.or_else(|| file.raw("out").map(PathBuf::from))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    if let Some(k0) = file.get::<u32>("K0")? {
        if k0 != 2 {
            return Err(CliError::Usage(format!(
                "K0 = {k0} is not supported; the partition uses K0 = 2"
            )));
        }
    }
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match cli.command {
        Command::VerifyAlgebra { out, inject_fault } => {
            let fault = match inject_fault.as_deref() {
                None => AlgebraFault::None,
                Some("corrupt-coproduct") => AlgebraFault::CorruptCoproduct,
                Some(other) => return Err(CliError::Usage(format!("unknown fault {other:?}"))),
            };
            verify_algebra(fault, out_path(out, &file).as_deref())
        }
        Command::VerifyAnalysis {
            l,
            seeds: count,
            out,
        } => {
            let defaults = AnalysisConfig::default();
            let config = AnalysisConfig {
                log2_size: pick(l, file.get("L")?, defaults.log2_size),
                seeds: seeds(pick(count, file.get("seeds")?, defaults.seeds.len() as u64))?,
                pairs: pick(None, file.get("pairs")?, defaults.pairs),
                points: pick(None, file.get("points")?, defaults.points),
            };
            verify_analysis(&config, exec, out_path(out, &file).as_deref())
        }
        Command::Scaling {
            experiment,
            beta,
            alpha,
            gamma,
            l,
            seeds: count,
            out,
        } => {
            let name = experiment
                .or_else(|| file.raw("experiment").map(str::to_string))
                .ok_or_else(|| CliError::Usage("--experiment is required".into()))?;
            let experiment: Experiment = name.parse()?;
            let config = ScalingConfig {
                experiment,
                beta: pick(beta, file.get("beta")?, 0.55),
                alphas: pick(alpha, file.list("alpha")?, vec![0.35]),
                gamma: pick(gamma, file.get("gamma")?, -0.7),
                log2_size: pick(l, file.get("L")?, 12),
                seeds: seeds(pick(count, file.get("seeds")?, 8))?,
            };
            scaling(&config, exec, out_path(out, &file).as_deref())
        }
        Command::Synth {
            alpha,
            l,
            seed,
            modes,
            out,
        } => {
            synth(
                pick(alpha, file.get("alpha")?, 0.5),
                pick(l, file.get("L")?, 10),
                pick(seed, file.get("seed")?, 0),
                pick(modes, file.get("modes")?, DEFAULT_MODES),
                out_path(out, &file).as_deref(),
            )?;
            Ok(true)
        }
        Command::Decompose { input, out } => {
            let input = input
                .or_else(|| file.raw("input").map(PathBuf::from))
                .ok_or_else(|| CliError::Usage("--input is required".into()))?;
            let residual = decompose_file(&input, out_path(out, &file).as_deref())?;
            Ok(residual <= SYNTH_ROUND_TRIP)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("paracalc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
