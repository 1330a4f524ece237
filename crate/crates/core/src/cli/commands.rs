use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::SimulateFile;
use super::plot;
use super::{EigenArgs, ScanArgs, SimulateArgs, WaveArgs, WaveSpec};
use crate::error::{Error, Result};
use crate::modulation::{
    assemble_ab, characteristic_eigenvalues, scan_region, ModulationState, ScanWindow,
};
use crate::output::write_table_file;
use crate::sgn::{
    plan_experiment, portrait_residual, run_experiment, ExperimentConfig, Limiter, SolverConfig,
    WaveTrainConfig,
};
use crate::traveling_wave::{CnoidalWave, MassFluxSign, RootTriple};

pub const MIN_SAMPLES: usize = 16;
/// `scan` fails when more than this fraction of points could not be classified.
const SCAN_FAILURE_FRACTION: f64 = 0.01;

fn write_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(write_err)?
    };
}

fn roots_from(values: &[f64]) -> Result<RootTriple> {
    match values {
        [h0, h1, h2] => RootTriple::new(*h0, *h1, *h2),
        _ => Err(Error::InvalidRoots(format!(
            "expected three roots h0,h1,h2 (got {})",
            values.len()
        ))),
    }
}

impl WaveSpec {
    fn parts(&self) -> Result<(RootTriple, f64, MassFluxSign)> {
        Ok((
            roots_from(&self.roots)?,
            self.g,
            MassFluxSign::from_i32(self.sign)?,
        ))
    }
}

pub fn wave(args: &WaveArgs, out: &mut dyn Write) -> Result<()> {
    let (roots, g, sign) = args.wave.parts()?;
    if args.samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "samples must be at least {MIN_SAMPLES} (got {})",
            args.samples
        )));
    }
    let wave = match args.phase_speed {
        Some(d) => CnoidalWave::with_phase_speed(roots, g, sign, d)?,
        None => CnoidalWave::at_rest(roots, g, sign)?,
    };
    let n = args.samples;
    let rows = (0..n).map(|j| {
        let xi = wave.wavelength * j as f64 / (n - 1) as f64;
        let h = wave.profile(xi);
        [xi, h, wave.velocity(h)]
    });
    write_table_file(&args.out, &["xi", "h", "u"], rows)?;

    let c = &wave.constants;
    say!(out, "L = {}", wave.wavelength);
    say!(out, "D = {}", wave.phase_speed);
    say!(out, "U = {}", wave.mean_velocity());
    say!(out, "m = {}", c.m);
    say!(out, "i = {}", c.i);
    say!(out, "epsilon = {}", c.epsilon);
    say!(out, "h_mean = {}", wave.averages.h_mean);
    say!(out, "h_inv_mean = {}", wave.averages.h_inv_mean);
    say!(out, "k = {}", wave.k());
    say!(out, "n = {}", wave.n());
    say!(out, "profile written to {}", args.out.display());
    Ok(())
}

pub fn eigen(args: &EigenArgs, out: &mut dyn Write) -> Result<()> {
    let (roots, g, sign) = args.wave.parts()?;
    let state = match (args.phase_speed, args.galilean_u) {
        (Some(d), _) => ModulationState::new(d, roots, g, sign)?,
        (None, u) => ModulationState::with_mean_velocity(u.unwrap_or(0.0), roots, g, sign)?,
    };
    let eig = characteristic_eigenvalues(&assemble_ab(&state)?)?;
    say!(out, "D = {}", state.phase_speed);
    say!(out, "U = {}", state.mean_velocity());
    for (j, z) in eig.roots.iter().enumerate() {
        if z.im == 0.0 {
            say!(out, "lambda{} = {}", j + 1, z.re);
        } else {
            say!(out, "lambda{} = {} {:+}i", j + 1, z.re, z.im);
        }
    }
    say!(out, "positive = {}", eig.n_positive);
    say!(out, "negative = {}", eig.n_negative);
    say!(out, "resultant = {}", eig.resultant);
    say!(out, "all real: {}", yes_no(eig.all_real));
    say!(out, "distinct: {}", yes_no(eig.distinct));
    say!(
        out,
        "strictly hyperbolic: {}",
        yes_no(eig.strictly_hyperbolic())
    );
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn with_extension(p: &Path, ext: &str) -> PathBuf {
    let mut q = p.to_path_buf();
    q.set_extension(ext);
    q
}

pub fn scan(args: &ScanArgs, out: &mut dyn Write) -> Result<()> {
    let sign = MassFluxSign::from_i32(args.sign)?;
    let window = ScanWindow {
        margin: args.margin,
        ..ScanWindow::new(
            args.s_min,
            args.s_max,
            args.tau_min,
            args.tau_max,
            args.grid,
        )
    };
    if args.threads == Some(0) {
        return Err(Error::InvalidParameter("threads must be at least 1".into()));
    }
    let report = scan_region(&window, args.g, sign, args.threads)?;

    let file = std::fs::File::create(&args.out).map_err(|e| Error::io(&args.out, e))?;
    report.write_csv(std::io::BufWriter::new(file))?;
    let plot_path = args
        .plot
        .clone()
        .unwrap_or_else(|| with_extension(&args.out, "gp"));
    std::fs::write(&plot_path, plot::scan_script(&args.out))
        .map_err(|e| Error::io(&plot_path, e))?;

    let total = report.points.len();
    let failures = report.failures();
    let transitions = report.transitions_per_row();
    let patterns: Vec<String> = report
        .sign_patterns()
        .iter()
        .map(ToString::to_string)
        .collect();
    say!(out, "points = {total}");
    say!(out, "strictly hyperbolic = {}", report.hyperbolic_count());
    say!(out, "failures = {failures}");
    say!(
        out,
        "resultant sign constant: {}",
        yes_no(report.resultant_sign_constant())
    );
    say!(out, "sign patterns = {}", patterns.join(" "));
    say!(
        out,
        "transitions per row = {}..{}",
        transitions.iter().min().unwrap_or(&0),
        transitions.iter().max().unwrap_or(&0)
    );
    for p in report
        .points
        .iter()
        .filter_map(|p| p.outcome.as_ref().err().map(|e| (p, e)))
    {
        say!(out, "failed at s = {}, tau = {}: {}", p.0.s, p.0.tau, p.1);
    }
    say!(out, "data written to {}", args.out.display());
    say!(out, "plot script written to {}", plot_path.display());
    if failures as f64 > SCAN_FAILURE_FRACTION * total as f64 {
        return Err(Error::SingularConfiguration(format!(
            "{failures} of {total} scan points could not be classified"
        )));
    }
    Ok(())
}

/// Merge the config file (if any) with flags; flags win.
pub(crate) fn resolve_simulation(args: &SimulateArgs) -> Result<(ExperimentConfig, PathBuf)> {
    let file = match &args.config {
        Some(p) => SimulateFile::load(p)?,
        None => SimulateFile::default(),
    };
    let roots = roots_from(
        args.roots
            .as_deref()
            .or(file.roots.as_deref())
            .unwrap_or(&[1.0, 1.5, 2.0]),
    )?;
    let g = args.g.or(file.g).unwrap_or(10.0);
    let sign = MassFluxSign::from_i32(args.sign.or(file.sign).unwrap_or(-1))?;
    let train = WaveTrainConfig {
        roots,
        g,
        sign,
        n_waves: args.n_waves.or(file.n_waves).unwrap_or(5),
        amplitude: args.amplitude.or(file.amplitude).unwrap_or(1e-3),
        cells_per_wavelength: args
            .cells_per_wavelength
            .or(file.cells_per_wavelength)
            .unwrap_or(400),
    };
    let wave = train.wave()?;
    let period = wave.wavelength / wave.phase_speed.abs();
    let t_end = match (args.t_end, args.periods, file.t_end, file.periods) {
        (Some(t), _, _, _) => t,
        (None, Some(p), _, _) => p * period,
        (None, None, Some(t), _) => t,
        (None, None, None, Some(p)) => p * period,
        (None, None, None, None) => 5.0 * period,
    };
    let limiter = match args.limiter.as_ref().or(file.limiter.as_ref()) {
        Some(s) => s.parse::<Limiter>()?,
        None => Limiter::default(),
    };
    let config = ExperimentConfig {
        train,
        solver: SolverConfig {
            cfl: args.cfl.or(file.cfl).unwrap_or(crate::sgn::DEFAULT_CFL),
            limiter,
        },
        t_end,
        output_times: args
            .checkpoints
            .clone()
            .or(file.checkpoints)
            .unwrap_or_default(),
        diagnostics_every: args
            .diagnostics_every
            .or(file.diagnostics_every)
            .unwrap_or(10),
    };
    config.validate()?;
    let out_dir = args
        .out_dir
        .clone()
        .or(file.out_dir)
        .unwrap_or_else(|| PathBuf::from("sgn_run"));
    Ok((config, out_dir))
}

pub fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let (config, out_dir) = resolve_simulation(args)?;
    if args.dry_run {
        let plan = plan_experiment(&config, Some(&out_dir))?;
        say!(out, "cells = {}", plan.n_cells);
        say!(out, "t_end = {}", config.t_end);
        say!(
            out,
            "estimated cell steps = {:e}",
            plan.estimated_cell_steps
        );
        say!(out, "long-running: {}", yes_no(plan.long_running));
        say!(
            out,
            "manifest written to {}",
            out_dir.join("manifest.toml").display()
        );
        return Ok(());
    }
    let result = run_experiment(&config, Some(&out_dir))?;

    let fields: Vec<String> = (0..result.checkpoints.len())
        .map(|i| format!("field_{i:03}.csv"))
        .collect();
    let portraits: Vec<String> = (0..result.checkpoints.len())
        .map(|i| format!("portrait_{i:03}.csv"))
        .collect();
    let roots = config.train.roots;
    let script = plot::simulate_script(
        &fields,
        &portraits,
        &result.wave.constants,
        roots.h1(),
        roots.h2(),
    );
    let plot_path = out_dir.join("simulate.gp");
    std::fs::write(&plot_path, script).map_err(|e| Error::io(&plot_path, e))?;

    let first = result.series.first().map(|r| r.diagnostics);
    let last = result.series.last().map(|r| r.diagnostics);
    let last_cp = result.checkpoints.last();
    say!(out, "cells = {}", config.train.n_cells());
    say!(out, "t_end = {}", config.t_end);
    say!(out, "steps = {}", result.steps);
    say!(out, "long-running: {}", yes_no(result.long_running));
    if let (Some(a), Some(b)) = (first, last) {
        say!(out, "mass drift = {:e}", (b.mass - a.mass) / a.mass);
        say!(out, "energy drift = {:e}", (b.energy - a.energy) / a.energy);
        say!(out, "momentum change = {:e}", b.momentum - a.momentum);
    }
    say!(out, "h range = [{}, {}]", result.h_min, result.h_max);
    if let Some(cp) = last_cp {
        say!(
            out,
            "final portrait residual = {:e}",
            portrait_residual(&cp.portrait, &result.wave.constants, roots.h1(), roots.h2())
        );
    }
    say!(out, "artifacts written to {}", out_dir.display());
    Ok(())
}
