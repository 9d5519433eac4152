use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use noma_esg::acceptance::{run_all, SuiteOptions};
use noma_esg::harness::{
    emit_csv, figure_preset, run_scenario_on, write_csv, EsgReport, ExperimentConfig, RunMode,
};
use noma_esg::Error;

#[derive(Parser)]
#[command(name = "noma-esg", version, about = "Ergodic sum-rate gain of uplink NOMA over OMA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of Monte Carlo trials per point.
    #[arg(long)]
    trials: Option<usize>,
    /// Output CSV (a directory for `figure`); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed forms for a config.
    Analytic {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run the Monte Carlo simulation for a config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Emit the CSV for a figure or table preset.
    Figure {
        preset: String,
        /// Skip the simulation columns.
        #[arg(long)]
        analytic_only: bool,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run the acceptance suite.
    Verify {
        #[command(flatten)]
        flags: RunFlags,
    },
}

fn apply(cfg: &mut ExperimentConfig, flags: &RunFlags) {
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if let Some(t) = flags.trials {
        cfg.trials = t;
    }
}

fn write_rows(report: &EsgReport, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => emit_csv(&report.rows, path),
        None => write_csv(&report.rows, std::io::stdout().lock()).map_err(|source| Error::Csv {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn run_config(path: &Path, flags: &RunFlags, mode: RunMode) -> Result<(), Error> {
    let mut cfg = ExperimentConfig::load(path)?;
    apply(&mut cfg, flags);
    cfg.validate()?;
    let report = run_scenario_on(&cfg, mode, flags.threads)?;
    let out = flags.out.clone().or(cfg.output.clone());
    write_rows(&report, out.as_deref())
}

fn run_figure(preset: &str, analytic_only: bool, flags: &RunFlags) -> Result<(), Error> {
    let mode = if analytic_only { RunMode::Analytic } else { RunMode::Simulate };
    let mut report = EsgReport::default();
    for mut cfg in figure_preset(preset)? {
        apply(&mut cfg, flags);
        cfg.validate()?;
        eprintln!("{preset}: {}", cfg.sweep_name());
        report.extend(run_scenario_on(&cfg, mode, flags.threads)?);
    }
    let out = flags.out.as_ref().map(|dir| dir.join(format!("{preset}.csv")));
    write_rows(&report, out.as_deref())
}

fn verify(flags: &RunFlags) -> Result<bool, Error> {
    let opts = SuiteOptions {
        seed: flags.seed.unwrap_or(1),
        trials: flags.trials,
    };
    let run = || run_all(&opts);
    let outcomes = match flags.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut stdout = std::io::stdout().lock();
    for o in &outcomes {
        let _ = writeln!(stdout, "{o}");
    }
    Ok(outcomes.iter().all(|o| o.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analytic { config, flags } => run_config(config, flags, RunMode::Analytic).map(|_| true),
        Command::Simulate { config, flags } => run_config(config, flags, RunMode::Simulate).map(|_| true),
        Command::Figure {
            preset,
            analytic_only,
            flags,
        } => run_figure(preset, *analytic_only, flags).map(|_| true),
        Command::Verify { flags } => verify(flags),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
