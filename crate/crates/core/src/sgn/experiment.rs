use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::diagnostics::{diagnostics, phase_portrait, Diagnostics};
use super::field::SgnField;
use super::solver::{Solver, SolverConfig};
use super::wavetrain::{init_wavetrain, WaveTrainConfig};
use crate::error::{Error, Result};
use crate::output::write_table_file;
use crate::traveling_wave::CnoidalWave;

/// Runs with more cell updates than this are flagged as long-running.
pub const LONG_RUNNING_CELL_STEPS: f64 = 1e9;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub train: WaveTrainConfig,
    pub solver: SolverConfig,
    pub t_end: f64,
    /// Checkpoint times in `(0, t_end]`; `t = 0` and `t_end` are always recorded.
    pub output_times: Vec<f64>,
    /// Record diagnostics every this many steps.
    pub diagnostics_every: usize,
}

impl ExperimentConfig {
    pub fn new(train: WaveTrainConfig, t_end: f64) -> Self {
        Self {
            train,
            solver: SolverConfig::default(),
            t_end,
            output_times: Vec::new(),
            diagnostics_every: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.train.validate()?;
        self.solver.validate()?;
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_end must be positive (got {})",
                self.t_end
            )));
        }
        if let Some(t) = self
            .output_times
            .iter()
            .find(|t| !(t.is_finite() && **t >= 0.0 && **t <= self.t_end))
        {
            return Err(Error::InvalidParameter(format!(
                "checkpoint time {t} outside [0, {}]",
                self.t_end
            )));
        }
        if self.diagnostics_every == 0 {
            return Err(Error::InvalidParameter(
                "diagnostics interval must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn checkpoint_times(&self) -> Vec<f64> {
        let mut times = self.output_times.clone();
        times.push(0.0);
        times.push(self.t_end);
        times.sort_by(f64::total_cmp);
        times.dedup();
        times
    }

    /// Estimated cell updates from the initial CFL step.
    pub fn estimated_cell_steps(&self, initial: &SgnField) -> f64 {
        let dt = self.solver.cfl * initial.dx / initial.max_wave_speed();
        initial.n_cells() as f64 * (self.t_end / dt).ceil()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub t: f64,
    pub field: SgnField,
    pub portrait: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub diagnostics: Diagnostics,
    pub h_min: f64,
    pub h_max: f64,
}

impl SeriesRow {
    fn of(field: &SgnField) -> Self {
        let (h_min, h_max) = field
            .h
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Self {
            t: field.t,
            diagnostics: diagnostics(field),
            h_min,
            h_max,
        }
    }

    fn as_row(&self) -> [f64; 6] {
        let d = &self.diagnostics;
        [self.t, d.mass, d.momentum, d.energy, self.h_min, self.h_max]
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub wave: CnoidalWave,
    pub checkpoints: Vec<Checkpoint>,
    pub series: Vec<SeriesRow>,
    /// Running extremes of `h` over every step.
    pub h_min: f64,
    pub h_max: f64,
    pub steps: u64,
    pub long_running: bool,
}

#[derive(Serialize)]
struct Manifest {
    status: String,
    code_version: &'static str,
    started_unix: u64,
    finished_unix: u64,
    roots: [f64; 3],
    g: f64,
    sign: i32,
    n_waves: usize,
    amplitude: f64,
    cells_per_wavelength: usize,
    n_cells: usize,
    dx: f64,
    wavelength: f64,
    phase_speed: f64,
    cfl: f64,
    limiter: String,
    t_end: f64,
    steps: u64,
    long_running: bool,
    estimated_cell_steps: f64,
    error: Option<String>,
    checkpoints: Vec<ManifestCheckpoint>,
}

#[derive(Serialize)]
struct ManifestCheckpoint {
    index: usize,
    t: f64,
    field: String,
    portrait: String,
}

impl Manifest {
    fn new(config: &ExperimentConfig, field: &SgnField, wave: &CnoidalWave, started: u64) -> Self {
        let estimated = config.estimated_cell_steps(field);
        Self {
            status: "running".into(),
            code_version: env!("CARGO_PKG_VERSION"),
            started_unix: started,
            finished_unix: started,
            roots: config.train.roots.as_array(),
            g: config.train.g,
            sign: config.train.sign.value() as i32,
            n_waves: config.train.n_waves,
            amplitude: config.train.amplitude,
            cells_per_wavelength: config.train.cells_per_wavelength,
            n_cells: field.n_cells(),
            dx: field.dx,
            wavelength: wave.wavelength,
            phase_speed: wave.phase_speed,
            cfl: config.solver.cfl,
            limiter: config.solver.limiter.to_string(),
            t_end: config.t_end,
            steps: 0,
            long_running: estimated > LONG_RUNNING_CELL_STEPS,
            estimated_cell_steps: estimated,
            error: None,
            checkpoints: Vec::new(),
        }
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

struct Sink<'a> {
    dir: Option<&'a Path>,
}

impl Sink<'_> {
    fn path(&self, name: &str) -> Option<PathBuf> {
        self.dir.map(|d| d.join(name))
    }

    fn checkpoint(&self, index: usize, cp: &Checkpoint) -> Result<Option<ManifestCheckpoint>> {
        let (Some(fp), Some(pp)) = (
            self.path(&format!("field_{index:03}.csv")),
            self.path(&format!("portrait_{index:03}.csv")),
        ) else {
            return Ok(None);
        };
        let x = cp.field.cell_centers();
        let u = cp.field.velocity();
        write_table_file(
            &fp,
            &["x", "h", "u"],
            (0..x.len()).map(|i| [x[i], cp.field.h[i], u[i]]),
        )?;
        write_table_file(
            &pp,
            &["h", "h_hdot"],
            cp.portrait.iter().map(|&(a, b)| [a, b]),
        )?;
        Ok(Some(ManifestCheckpoint {
            index,
            t: cp.t,
            field: file_name(&fp),
            portrait: file_name(&pp),
        }))
    }

    fn series(&self, series: &[SeriesRow]) -> Result<()> {
        if let Some(p) = self.path("diagnostics.csv") {
            write_table_file(
                &p,
                &["t", "mass", "momentum", "energy", "h_min", "h_max"],
                series.iter().map(SeriesRow::as_row),
            )?;
        }
        Ok(())
    }

    fn manifest(&self, manifest: &Manifest) -> Result<()> {
        if let Some(p) = self.path("manifest.toml") {
            let text =
                toml::to_string(manifest).map_err(|e| Error::io(&p, std::io::Error::other(e)))?;
            fs::write(&p, text).map_err(|e| Error::io(&p, e))?;
        }
        Ok(())
    }
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Integrate a wave train, recording checkpoints and a diagnostics series.
///
/// With `out_dir` set, each checkpoint is written as soon as it is reached;
/// on failure the series and a manifest with the error are still written.
pub fn run_experiment(
    config: &ExperimentConfig,
    out_dir: Option<&Path>,
) -> Result<ExperimentResult> {
    config.validate()?;
    let started = unix_now();
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
    }
    let sink = Sink { dir: out_dir };
    let (field, wave) = init_wavetrain(&config.train)?;
    let mut manifest = Manifest::new(config, &field, &wave, started);
    let long_running = manifest.long_running;

    let mut solver = Solver::new(field, config.solver)?;
    let mut result = ExperimentResult {
        wave,
        checkpoints: Vec::new(),
        series: vec![SeriesRow::of(solver.field())],
        h_min: f64::INFINITY,
        h_max: f64::NEG_INFINITY,
        steps: 0,
        long_running,
    };

    let outcome = integrate(config, &mut solver, &mut result, &sink, &mut manifest);
    result.steps = solver.steps();
    manifest.steps = solver.steps();
    manifest.finished_unix = unix_now();
    if result.series.last().map(|r| r.t) != Some(solver.time()) {
        result.series.push(SeriesRow::of(solver.field()));
    }
    sink.series(&result.series)?;
    match outcome {
        Ok(()) => {
            manifest.status = "completed".into();
            sink.manifest(&manifest)?;
            Ok(result)
        }
        Err(e) => {
            manifest.status = "failed".into();
            manifest.error = Some(e.to_string());
            sink.manifest(&manifest)?;
            Err(e)
        }
    }
}

/// Validated run without time stepping.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub wave: CnoidalWave,
    pub n_cells: usize,
    pub estimated_cell_steps: f64,
    pub long_running: bool,
}

/// Validate a run and write its manifest with status `planned`.
pub fn plan_experiment(
    config: &ExperimentConfig,
    out_dir: Option<&Path>,
) -> Result<ExperimentPlan> {
    config.validate()?;
    let (field, wave) = init_wavetrain(&config.train)?;
    let mut manifest = Manifest::new(config, &field, &wave, unix_now());
    manifest.status = "planned".into();
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
        Sink { dir: out_dir }.manifest(&manifest)?;
    }
    Ok(ExperimentPlan {
        wave,
        n_cells: field.n_cells(),
        estimated_cell_steps: manifest.estimated_cell_steps,
        long_running: manifest.long_running,
    })
}

fn integrate(
    config: &ExperimentConfig,
    solver: &mut Solver,
    result: &mut ExperimentResult,
    sink: &Sink<'_>,
    manifest: &mut Manifest,
) -> Result<()> {
    let track = |r: &mut ExperimentResult, f: &SgnField| {
        for &v in &f.h {
            r.h_min = r.h_min.min(v);
            r.h_max = r.h_max.max(v);
        }
    };
    track(result, solver.field());
    for (index, &target) in config.checkpoint_times().iter().enumerate() {
        while solver.time() < target {
            solver.step_towards(target)?;
            track(result, solver.field());
            if solver.steps() % config.diagnostics_every as u64 == 0 {
                result.series.push(SeriesRow::of(solver.field()));
            }
        }
        let cp = Checkpoint {
            t: solver.time(),
            field: solver.field().clone(),
            portrait: phase_portrait(solver.field()),
        };
        if let Some(entry) = sink.checkpoint(index, &cp)? {
            manifest.checkpoints.push(entry);
        }
        result.checkpoints.push(cp);
    }
    Ok(())
}
