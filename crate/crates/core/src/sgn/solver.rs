use super::dispersive::dispersive_rhs;
use super::field::SgnField;
use super::hydrostatic::{hydrostatic_rhs, Limiter};
use crate::error::{Error, Result};

pub const DEFAULT_CFL: f64 = 0.45;
pub const MAX_CFL: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub cfl: f64,
    pub limiter: Limiter,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            cfl: DEFAULT_CFL,
            limiter: Limiter::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= MAX_CFL) {
            return Err(Error::InvalidParameter(format!(
                "cfl must lie in (0, {MAX_CFL}] (got {})",
                self.cfl
            )));
        }
        Ok(())
    }
}

/// Strang splitting `H(Δt/2) D(Δt) H(Δt/2)`, each substep SSP-RK2.
#[derive(Debug, Clone)]
pub struct Solver {
    field: SgnField,
    config: SolverConfig,
    steps: u64,
}

impl Solver {
    pub fn new(field: SgnField, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            field,
            config,
            steps: 0,
        })
    }

    pub fn field(&self) -> &SgnField {
        &self.field
    }

    pub fn into_field(self) -> SgnField {
        self.field
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.field.t
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// `Δt = cfl · dx / max(|u| + √(gh))`.
    pub fn stable_dt(&self) -> f64 {
        self.config.cfl * self.field.dx / self.field.max_wave_speed()
    }

    /// One step of the CFL-limited size; returns `Δt`.
    pub fn step(&mut self) -> Result<f64> {
        let dt = self.stable_dt();
        self.step_by(dt)?;
        Ok(dt)
    }

    /// Step to exactly `t_target`, shortening the last step.
    pub fn advance_to(&mut self, t_target: f64) -> Result<()> {
        while self.field.t < t_target {
            self.step_towards(t_target)?;
        }
        Ok(())
    }

    /// One step, shortened so as not to pass `t_target`.
    pub fn step_towards(&mut self, t_target: f64) -> Result<()> {
        let dt = self.stable_dt().min(t_target - self.field.t);
        self.step_by(dt)?;
        if t_target - self.field.t <= 1e-12 * t_target.abs().max(1.0) {
            self.field.t = t_target;
        }
        Ok(())
    }

    /// One split step of size `dt`, which may be below the CFL limit.
    pub fn step_by(&mut self, dt: f64) -> Result<()> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive (got {dt})"
            )));
        }
        self.hydrostatic(0.5 * dt)?;
        self.dispersive(dt)?;
        self.hydrostatic(0.5 * dt)?;
        self.field.t += dt;
        self.steps += 1;
        self.check_positive()
    }

    fn hydrostatic(&mut self, dt: f64) -> Result<()> {
        let f = &mut self.field;
        let n = f.n_cells();
        let (mut dh, mut dq) = (vec![0.0; n], vec![0.0; n]);
        hydrostatic_rhs(&f.h, &f.q, f.dx, f.g, self.config.limiter, &mut dh, &mut dq);
        let h1: Vec<f64> = (0..n).map(|i| f.h[i] + dt * dh[i]).collect();
        let q1: Vec<f64> = (0..n).map(|i| f.q[i] + dt * dq[i]).collect();
        if let Some(i) = h1.iter().position(|v| v.is_nan() || *v <= 0.0) {
            return Err(Error::PositivityFailure {
                cell: i,
                depth: h1[i],
                time: f.t,
            });
        }
        hydrostatic_rhs(&h1, &q1, f.dx, f.g, self.config.limiter, &mut dh, &mut dq);
        for i in 0..n {
            f.h[i] = 0.5 * (f.h[i] + h1[i] + dt * dh[i]);
            f.q[i] = 0.5 * (f.q[i] + q1[i] + dt * dq[i]);
        }
        Ok(())
    }

    fn dispersive(&mut self, dt: f64) -> Result<()> {
        let f = &mut self.field;
        let n = f.n_cells();
        let mut dq = vec![0.0; n];
        dispersive_rhs(&f.h, &f.q, f.dx, f.g, &mut dq)?;
        let q1: Vec<f64> = (0..n).map(|i| f.q[i] + dt * dq[i]).collect();
        dispersive_rhs(&f.h, &q1, f.dx, f.g, &mut dq)?;
        for i in 0..n {
            f.q[i] = 0.5 * (f.q[i] + q1[i] + dt * dq[i]);
        }
        Ok(())
    }

    fn check_positive(&self) -> Result<()> {
        let f = &self.field;
        match f.h.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            Some(i) => Err(Error::PositivityFailure {
                cell: i,
                depth: f.h[i],
                time: f.t,
            }),
            None => Ok(()),
        }
    }
}

/// One CFL-limited step with the default limiter.
pub fn step(field: &SgnField, cfl: f64) -> Result<SgnField> {
    let mut solver = Solver::new(
        field.clone(),
        SolverConfig {
            cfl,
            ..SolverConfig::default()
        },
    )?;
    solver.step()?;
    Ok(solver.into_field())
}
