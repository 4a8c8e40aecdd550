use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use halfcav::oracle::oracle_check;
use halfcav::runner::{export_mirror, load_config, out_dir, run_store, sweep_bandwidth, threads_from_env};
use halfcav::scenario::ScenarioConfig;

#[derive(Parser)]
#[command(name = "halfcav", version, about = "Single-atom half-cavity quantum memory simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Store and retrieve one pulse; writes timeseries.csv and run.json.
    Store(Common),
    /// Efficiency against bandwidth; writes sweep.csv.
    Sweep(Common),
    /// Quadrature against RK4 cross-check; JSON report on stdout.
    Oracle(Common),
    /// Mirror trajectory of the scenario; writes mirror.csv and feasibility.json.
    Mirror(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario file (JSON). Defaults apply to missing fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Keep the raw level-shift phases on the drive and the output.
    #[arg(long)]
    no_phase_compensation: bool,
}

impl Common {
    fn scenario(&self) -> halfcav::Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => ScenarioConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.no_phase_compensation {
            cfg.phase_compensation = false;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> halfcav::Result<bool> {
    match cli.command {
        Command::Store(c) => {
            let record = run_store(&c.scenario()?, &out_dir(c.out))?;
            eprintln!(
                "eta_w = {:.6} eta_r = {:.6} eta = {:.6} F = {:.6}",
                record.eta_w, record.eta_r, record.eta, record.f
            );
        }
        Command::Sweep(c) => {
            let rows = sweep_bandwidth(&c.scenario()?, &out_dir(c.out), threads_from_env()?)?;
            eprintln!("{} sweep points written", rows.len());
        }
        Command::Oracle(c) => {
            let report = oracle_check(&c.scenario()?)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.pass {
                return Ok(false);
            }
        }
        Command::Mirror(c) => {
            let report = export_mirror(&c.scenario()?, &out_dir(c.out))?;
            if report.mechanically_demanding {
                eprintln!("warning: mirror speed {:.3} lambda*gamma0 is mechanically demanding", report.v_max_lambda_gamma0);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
