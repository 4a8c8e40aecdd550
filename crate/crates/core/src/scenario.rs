//! End-to-end store and retrieve scenarios: write, hold at a node, read.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{MemoryConfig, DEFAULT_MARKOV_LIMIT};
use crate::dynamics::{hold, DecayProfile};
use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::mirror::{trajectory_from_decay, MirrorTrajectory, SiScale};
use crate::pulses::{make_time_bin, TimeBinSpec};
use crate::read_shaper::{read_population, read_profile_for_target, total_efficiency, ReadOptions, ReadResult};
use crate::write_optimizer::{optimal_write_profile, WriteOptions, WriteResult};

/// Samples below this fraction of the peak intensity are trimmed from the
/// write window.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Fewest samples per `min(1/γ₀, 1/σ)` a scenario accepts.
pub const MIN_POINTS_PER_UNIT: f64 = 50.0;

/// Read window reaches at least this many `1/min(σ, γ₀)` past its start.
pub const READ_WINDOW_UNITS: f64 = 12.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MemorySection {
    pub gamma0: f64,
    pub gamma_prime: f64,
    pub omega_a: f64,
    pub tau: f64,
    pub markov_limit: f64,
    /// Observation delay `D/c`; defaults to `τ/2` (detector at the mirror).
    pub observation_delay: Option<f64>,
}

impl Default for MemorySection {
    fn default() -> Self {
        MemorySection {
            gamma0: 1.0,
            gamma_prime: 0.0,
            omega_a: 500.0,
            tau: 0.01,
            markov_limit: DEFAULT_MARKOV_LIMIT,
            observation_delay: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PulseSection {
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub t1: f64,
    pub t2: f64,
    pub sigma: f64,
}

impl Default for PulseSection {
    fn default() -> Self {
        PulseSection {
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            beta: std::f64::consts::FRAC_1_SQRT_2,
            phi: 0.0,
            t1: 0.0,
            t2: 20.0,
            sigma: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    /// Samples per `min(1/γ₀, 1/σ)`.
    pub points_per_unit: f64,
    /// Window padding around the bins, in units of `1/σ`.
    pub padding: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            points_per_unit: 100.0,
            padding: 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub n_points: usize,
    #[serde(default)]
    pub log_spacing: bool,
}

impl SweepSection {
    pub fn sigmas(&self) -> Vec<f64> {
        let n = self.n_points;
        if n == 1 {
            return vec![self.sigma_min];
        }
        (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64;
                if k == n - 1 {
                    self.sigma_max
                } else if self.log_spacing {
                    self.sigma_min * (self.sigma_max / self.sigma_min).powf(f)
                } else {
                    self.sigma_min + (self.sigma_max - self.sigma_min) * f
                }
            })
            .collect()
    }
}

/// Scenario file contents. Every field has a default, so `{}` is the
/// σ = 0.2γ₀ time-bin run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub memory: MemorySection,
    pub pulse: PulseSection,
    /// Gap between the end of writing and the start of reading.
    #[serde(rename = "storage_T")]
    pub storage_t: f64,
    pub grid: GridSection,
    pub phase_compensation: bool,
    pub sweep: Option<SweepSection>,
    /// Seed for the randomized oracle suite.
    pub seed: u64,
    /// Wavelength and `γ₀` in SI for the mirror feasibility report.
    pub si_scale: Option<SiScale>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            memory: MemorySection::default(),
            pulse: PulseSection::default(),
            storage_t: 30.0,
            grid: GridSection::default(),
            phase_compensation: true,
            sweep: None,
            seed: 0,
            si_scale: None,
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_sigma(&self, sigma: f64) -> Self {
        let mut cfg = self.clone();
        cfg.pulse.sigma = sigma;
        cfg
    }

    pub fn memory_config(&self) -> Result<MemoryConfig<f64>> {
        let m = &self.memory;
        MemoryConfig::with_markov_limit(m.gamma0, m.gamma_prime, m.omega_a, m.tau, m.markov_limit)
    }

    pub fn time_bin(&self) -> Result<TimeBinSpec<f64>> {
        let p = &self.pulse;
        TimeBinSpec::new(p.alpha, p.beta, p.phi, p.t1, p.t2, p.sigma)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, reason: String| Err(Error::InvalidConfig { field, reason });
        self.memory_config()?;
        self.time_bin()?;
        if !(self.storage_t.is_finite() && self.storage_t >= 0.0) {
            return bad("storage_T", format!("must be finite and non-negative, got {}", self.storage_t));
        }
        if !(self.grid.points_per_unit >= MIN_POINTS_PER_UNIT && self.grid.points_per_unit.is_finite()) {
            return bad(
                "grid.points_per_unit",
                format!(
                    "must be at least {MIN_POINTS_PER_UNIT} so that dt resolves 1/gamma0 and 1/sigma, got {}",
                    self.grid.points_per_unit
                ),
            );
        }
        if !(self.grid.padding >= 6.0 && self.grid.padding.is_finite()) {
            return bad("grid.padding", format!("must be at least 6 (units of 1/sigma), got {}", self.grid.padding));
        }
        if let Some(m) = self.memory.observation_delay {
            if !m.is_finite() {
                return bad("memory.observation_delay", "must be finite".into());
            }
        }
        if let Some(si) = &self.si_scale {
            if !(si.lambda_m > 0.0 && si.gamma0_per_s > 0.0 && si.lambda_m.is_finite() && si.gamma0_per_s.is_finite()) {
                return bad("si_scale", "lambda_m and gamma0_per_s must be positive".into());
            }
        }
        if let Some(s) = &self.sweep {
            if !(s.sigma_min > 0.0 && s.sigma_max >= s.sigma_min && s.sigma_max.is_finite()) {
                return bad(
                    "sweep.sigma_min",
                    format!("need 0 < sigma_min <= sigma_max, got [{}, {}]", s.sigma_min, s.sigma_max),
                );
            }
            if s.n_points == 0 {
                return bad("sweep.n_points", "must be at least 1".into());
            }
        }
        Ok(())
    }

    /// Step `min(1/γ₀, 1/σ) / points_per_unit`.
    pub fn dt(&self) -> f64 {
        (1.0 / self.memory.gamma0).min(1.0 / self.pulse.sigma) / self.grid.points_per_unit
    }
}

/// Normalized input pulse on its trimmed write window, sampled with step `dt`.
pub fn write_window_input(cfg: &ScenarioConfig, dt: f64) -> Result<ComplexEnvelope<f64>> {
    let spec = cfg.time_bin()?;
    let pad = cfg.grid.padding / spec.sigma;
    let (lo, hi) = (spec.t1 - pad, spec.t2 + pad);
    let n = ((hi - lo) / dt).round() as usize + 1;
    let full = make_time_bin(&spec, TimeGrid::with_step(lo, dt, n)?)?;
    let (start, end) = full.support(SUPPORT_THRESHOLD).ok_or(Error::ZeroNorm)?;
    full.slice(start, end.max(start + 2).min(n))?.normalized()
}

/// Series over the whole write, hold, read program on one grid whose origin
/// is the storage midpoint.
#[derive(Debug, Clone)]
pub struct CompositeSeries {
    pub grid: TimeGrid<f64>,
    pub xi_in: Vec<Complex64>,
    pub xi_out: Vec<Complex64>,
    pub rate_z_w: Vec<f64>,
    pub rate_z_r: Vec<f64>,
    pub probability: Vec<f64>,
    pub profile: DecayProfile<f64>,
    pub trajectory: MirrorTrajectory<f64>,
    /// Composite index of the write end `t_w⁰`.
    pub write_end: usize,
    /// Composite index of the read start `t_r⁰`.
    pub read_start: usize,
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub config: ScenarioConfig,
    pub memory: MemoryConfig<f64>,
    pub xi_in: ComplexEnvelope<f64>,
    pub write: WriteResult<f64>,
    pub target: ComplexEnvelope<f64>,
    pub read: ReadResult<f64>,
    pub eta: f64,
    pub fidelity: f64,
    /// Atom stayed on a node for the whole storage interval.
    pub hold_ok: bool,
    pub storage_steps: usize,
    pub composite: CompositeSeries,
}

/// Runs write, storage and read for `cfg`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioRun> {
    cfg.validate()?;
    let memory = cfg.memory_config()?;
    let dt = cfg.dt();
    let xi_in = write_window_input(cfg, dt)?;
    let write = optimal_write_profile(
        &xi_in,
        &memory,
        &WriteOptions {
            phase_compensation: cfg.phase_compensation,
        },
    )?;

    let n_w = xi_in.grid().len();
    // A zero gap still needs one step so write end and read start are distinct samples.
    let storage_steps = ((cfg.storage_t / dt).round() as usize).max(1);
    let slowest = cfg.pulse.sigma.min(cfg.memory.gamma0);
    let n_r = n_w.max((READ_WINDOW_UNITS / slowest / dt).ceil() as usize + 1);
    let write_end = n_w - 1;
    let read_start = write_end + storage_steps;
    let total = read_start + n_r;

    // Target is the input delayed by t_r⁰ - t_w, a whole number of steps.
    let read_grid = TimeGrid::with_step(0.0, dt, n_r)?;
    let mut target = vec![Complex64::new(0.0, 0.0); n_r];
    target[..n_w].copy_from_slice(xi_in.samples());
    let target = ComplexEnvelope::new(read_grid, target)?;
    let read = read_profile_for_target(
        &target,
        write.eta_w,
        &memory,
        &ReadOptions {
            phase_compensation: cfg.phase_compensation,
            observation_delay: cfg.memory.observation_delay,
        },
    )?;
    let eta = total_efficiency(&write, &read)?;

    let midpoint = (write_end + read_start) as f64 * 0.5;
    let grid = TimeGrid::with_step(-midpoint * dt, dt, total)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut xi_in_c = vec![zero; total];
    xi_in_c[..n_w].copy_from_slice(xi_in.samples());
    let mut xi_out_c = vec![zero; total];
    xi_out_c[read_start..].copy_from_slice(read.xi_out.samples());
    let mut rate_z_w = vec![0.0; total];
    rate_z_w[..n_w].copy_from_slice(write.profile.rate_z());
    let mut rate_z_r = vec![0.0; total];
    rate_z_r[read_start..].copy_from_slice(read.profile.rate_z());
    let rate_z: Vec<f64> = rate_z_w.iter().zip(&rate_z_r).map(|(w, r)| w + r).collect();
    let mut probability = vec![write.eta_w; total];
    probability[..n_w].copy_from_slice(write.trace.probability());
    probability[read_start..].copy_from_slice(&read_population(&read.profile, write.eta_w));

    let profile = DecayProfile::from_rate_z(grid, rate_z, &memory)?;
    let trajectory = trajectory_from_decay(&profile, &memory)?;
    let hold_ok = storage_steps < 2 || hold(&profile, grid.time(write_end + 1), grid.time(read_start - 1));

    Ok(ScenarioRun {
        config: cfg.clone(),
        memory,
        fidelity: read.fidelity_vs_target,
        xi_in,
        write,
        target,
        read,
        eta,
        hold_ok,
        storage_steps,
        composite: CompositeSeries {
            grid,
            xi_in: xi_in_c,
            xi_out: xi_out_c,
            rate_z_w,
            rate_z_r,
            probability,
            profile,
            trajectory,
            write_end,
            read_start,
        },
    })
}
