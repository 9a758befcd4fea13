use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fluidcell::cli::{cmd_compare, cmd_fluid, cmd_simulate, resolve_out_dir};
use fluidcell::error::Result;
use fluidcell::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "fluidcell",
    version,
    about = "Downlink SINR statistics for Poisson cellular networks with a fluid-model baseline"
)]
struct Cli {
    /// Worker threads for Monte Carlo runs (default: machine parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Monte Carlo campaigns for every (eta, sigma, association)
    /// combination and write CDF CSVs plus a summary JSON.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        /// Master seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (overrides FLUIDCELL_OUT_DIR and the scenario).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the analytic fluid baseline: CDF CSVs and throughputs.
    Fluid {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Horizontal shift between two CDF CSV files, reported as JSON on
    /// stdout.
    Compare {
        cdf_a: PathBuf,
        cdf_b: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        p_lo: f64,
        #[arg(long, default_value_t = 0.95)]
        p_hi: f64,
        /// Optional pass/fail threshold on the max shift, in dB.
        #[arg(long)]
        threshold_db: Option<f64>,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { scenario, seed, out } => {
            let mut scenario = Scenario::from_path(&scenario)?;
            if let Some(seed) = seed {
                scenario.network.seed = seed;
            }
            let out_dir = resolve_out_dir(out.as_deref(), &scenario);
            let summary = cmd_simulate(&scenario, &out_dir)?;
            eprintln!(
                "wrote {} CDF file(s) and summary.json to {}",
                summary.combos.len(),
                out_dir.display()
            );
            Ok(())
        }
        Command::Fluid { scenario, out } => {
            let scenario = Scenario::from_path(&scenario)?;
            let out_dir = resolve_out_dir(out.as_deref(), &scenario);
            let summary = cmd_fluid(&scenario, &out_dir)?;
            eprintln!(
                "wrote {} fluid baseline(s) to {}",
                summary.entries.len(),
                out_dir.display()
            );
            Ok(())
        }
        Command::Compare {
            cdf_a,
            cdf_b,
            p_lo,
            p_hi,
            threshold_db,
        } => {
            let report = cmd_compare(&cdf_a, &cdf_b, p_lo, p_hi, threshold_db)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("fluidcell: could not size worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fluidcell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
