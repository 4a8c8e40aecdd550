//! File-producing commands behind the `halfcav` binary.
//!
//! CSV floats are written with 17 significant digits; the same config always
//! yields byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mirror::{feasibility_report, FeasibilityReport};
use crate::scenario::{run_scenario, ScenarioConfig, ScenarioRun};

pub const TIMESERIES_FILE: &str = "timeseries.csv";
pub const RUN_FILE: &str = "run.json";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const MIRROR_FILE: &str = "mirror.csv";
pub const FEASIBILITY_FILE: &str = "feasibility.json";

/// Environment variable capping sweep worker threads.
pub const THREADS_ENV: &str = "HALFCAV_THREADS";

pub const TIMESERIES_HEADER: &str = "t,xi_in_re,xi_in_im,xi_out_re,xi_out_im,gamma_z_w,gamma_z_r,l_over_lambda,P";
pub const SWEEP_HEADER: &str = "sigma_over_gamma0,eta_w,eta_r,eta,F";
pub const MIRROR_HEADER: &str = "t,gamma_z,l_over_lambda,velocity";

/// Scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_row(out: &mut String, values: &[f64]) {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&fmt_float(*v));
    }
    out.push('\n');
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct RunFiles {
    pub timeseries: String,
    pub run: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub config: ScenarioConfig,
    pub eta_w: f64,
    pub eta_r: f64,
    pub eta: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub capped_w: bool,
    pub capped_r: bool,
    pub hold_ok: bool,
    pub dt: f64,
    pub tau: f64,
    pub carrier_phase: f64,
    pub write_evaluations: usize,
    pub read_evaluations: usize,
    pub files: RunFiles,
}

impl RunRecord {
    pub fn from_run(run: &ScenarioRun) -> Self {
        RunRecord {
            config: run.config.clone(),
            eta_w: run.write.eta_w,
            eta_r: run.read.eta_r,
            eta: run.eta,
            f: run.fidelity,
            capped_w: run.write.capped,
            capped_r: run.read.capped,
            hold_ok: run.hold_ok,
            dt: run.composite.grid.dt(),
            tau: run.memory.tau,
            carrier_phase: run.read.carrier_phase,
            write_evaluations: run.write.iterations,
            read_evaluations: run.read.iterations,
            files: RunFiles {
                timeseries: TIMESERIES_FILE.into(),
                run: RUN_FILE.into(),
            },
        }
    }
}

pub fn timeseries_csv(run: &ScenarioRun) -> String {
    let c = &run.composite;
    let mut out = String::with_capacity(c.grid.len() * 220);
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for k in 0..c.grid.len() {
        csv_row(
            &mut out,
            &[
                c.grid.time(k),
                c.xi_in[k].re,
                c.xi_in[k].im,
                c.xi_out[k].re,
                c.xi_out[k].im,
                c.rate_z_w[k],
                c.rate_z_r[k],
                c.trajectory.l_over_lambda()[k],
                c.probability[k],
            ],
        );
    }
    out
}

pub fn mirror_csv(run: &ScenarioRun) -> String {
    let c = &run.composite;
    let traj = &c.trajectory;
    let mut out = String::with_capacity(c.grid.len() * 100);
    out.push_str(MIRROR_HEADER);
    out.push('\n');
    for k in 0..c.grid.len() {
        csv_row(
            &mut out,
            &[c.grid.time(k), c.profile.rate_z()[k], traj.l_over_lambda()[k], traj.velocity()[k]],
        );
    }
    out
}

/// Store and retrieve once; writes `timeseries.csv` and `run.json` into `out`.
pub fn run_store(cfg: &ScenarioConfig, out: &Path) -> Result<RunRecord> {
    let run = run_scenario(cfg)?;
    fs::create_dir_all(out)?;
    fs::write(out.join(TIMESERIES_FILE), timeseries_csv(&run))?;
    let record = RunRecord::from_run(&run);
    write_json(&out.join(RUN_FILE), &record)?;
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub sigma_over_gamma0: f64,
    pub eta_w: f64,
    pub eta_r: f64,
    pub eta: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

/// Thread cap from `HALFCAV_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidConfig {
                field: THREADS_ENV,
                reason: format!("must be a positive integer, got {v:?}"),
            }),
        },
    }
}

/// Full pipeline at every σ of the sweep block, in input order.
pub fn sweep_rows(cfg: &ScenarioConfig, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let sweep = cfg.sweep.as_ref().ok_or(Error::InvalidConfig {
        field: "sweep",
        reason: "sweep block missing from config".into(),
    })?;
    let sigmas = sweep.sigmas();
    let eval = |&sigma: &f64| -> Result<SweepRow> {
        let run = run_scenario(&cfg.with_sigma(sigma))?;
        Ok(SweepRow {
            sigma_over_gamma0: sigma / cfg.memory.gamma0,
            eta_w: run.write.eta_w,
            eta_r: run.read.eta_r,
            eta: run.eta,
            f: run.fidelity,
        })
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidConfig {
        field: THREADS_ENV,
        reason: e.to_string(),
    })?;
    pool.install(|| sigmas.par_iter().map(eval).collect())
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{SWEEP_HEADER}").expect("write to string");
    for r in rows {
        csv_row(&mut out, &[r.sigma_over_gamma0, r.eta_w, r.eta_r, r.eta, r.f]);
    }
    out
}

/// Bandwidth sweep; writes `sweep.csv` into `out`.
pub fn sweep_bandwidth(cfg: &ScenarioConfig, out: &Path, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(cfg, threads)?;
    fs::create_dir_all(out)?;
    fs::write(out.join(SWEEP_FILE), sweep_csv(&rows))?;
    Ok(rows)
}

/// Mirror program of the whole scenario; writes `mirror.csv` and
/// `feasibility.json` into `out`.
pub fn export_mirror(cfg: &ScenarioConfig, out: &Path) -> Result<FeasibilityReport> {
    let run = run_scenario(cfg)?;
    let report = feasibility_report(&run.composite.trajectory, &run.memory, cfg.si_scale);
    fs::create_dir_all(out)?;
    fs::write(out.join(MIRROR_FILE), mirror_csv(&run))?;
    write_json(&out.join(FEASIBILITY_FILE), &report)?;
    Ok(report)
}

/// Reads a scenario file; command-line overrides are applied by the caller.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    ScenarioConfig::from_json(&fs::read_to_string(path)?)
}

pub fn out_dir(path: Option<PathBuf>) -> PathBuf {
    path.unwrap_or_else(|| PathBuf::from("."))
}
