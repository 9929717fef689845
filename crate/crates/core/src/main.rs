use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use uplink_noma::experiment::{
    figure, parse_config, run_oracle, run_sweep, verify, write_csv, Overrides, SweepConfig, SweepRow,
};

#[derive(Debug, Parser)]
#[command(name = "noma-sim", about = "Cognitive-radio uplink NOMA outage/rate simulator", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Args)]
struct RunFlags {
    /// Trials per SNR point
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            trials: self.trials,
            seed: self.seed,
            workers: self.workers,
            out: self.out.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo SNR sweep from a key=value config file
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run a preset figure recipe (fig1..fig5)
    Figure {
        recipe: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Quadrature outage only, no simulation
    Oracle {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every Monte Carlo outage estimate against the quadrature oracle
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
}

fn load(path: &PathBuf, o: &Overrides) -> anyhow::Result<SweepConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cfg = parse_config(&text)?;
    cfg.apply(o)?;
    Ok(cfg)
}

fn emit(rows: &[SweepRow], out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_csv(rows, BufWriter::new(f))
        }
        None => write_csv(rows, io::stdout().lock()),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Command::Sweep { config, flags } => {
            let cfg = load(&config, &flags.overrides())?;
            emit(&run_sweep(&cfg)?, cfg.out.as_ref())?;
        }
        Command::Figure { recipe, flags } => {
            let o = flags.overrides();
            emit(&figure(&recipe, &o)?, o.out.as_ref())?;
        }
        Command::Oracle { config, out } => {
            let cfg = load(&config, &Overrides { out, ..Default::default() })?;
            emit(&run_oracle(&cfg)?, cfg.out.as_ref())?;
        }
        Command::Verify { config, flags } => {
            let cfg = load(&config, &flags.overrides())?;
            let report = verify(&cfg)?;
            let mut stdout = io::stdout().lock();
            for c in &report.checks {
                writeln!(
                    stdout,
                    "{} {:>6.1} dB {:<8} mc={:.6e} oracle={:.6e} |diff|/se={:.2}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.snr_db,
                    c.scheme.label(),
                    c.mc,
                    c.oracle,
                    (c.mc - c.oracle).abs() / c.std_err,
                )?;
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
