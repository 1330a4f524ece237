use std::f64::consts::PI;

use super::field::SgnField;
use crate::error::{Error, Result};
use crate::traveling_wave::{CnoidalWave, MassFluxSign, RootTriple};

pub const MIN_CELLS_PER_WAVELENGTH: usize = 16;

/// `N` copies of the cnoidal wave at rest (`U = 0`) with a long-wave depth perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveTrainConfig {
    pub roots: RootTriple,
    pub g: f64,
    pub sign: MassFluxSign,
    pub n_waves: usize,
    /// Relative amplitude `a` of the perturbation `h (1 + a cos(2πx/L₁))`.
    pub amplitude: f64,
    pub cells_per_wavelength: usize,
}

impl WaveTrainConfig {
    /// Five wavelengths, 400 cells each.
    pub fn desk(roots: RootTriple, g: f64, sign: MassFluxSign, amplitude: f64) -> Self {
        Self {
            roots,
            g,
            sign,
            n_waves: 5,
            amplitude,
            cells_per_wavelength: 400,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_waves < 1 {
            return Err(Error::InvalidParameter(
                "number of wavelengths must be at least 1".into(),
            ));
        }
        if !(self.amplitude >= 0.0 && self.amplitude < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "perturbation amplitude must satisfy 0 <= a < 1 (got {})",
                self.amplitude
            )));
        }
        if self.cells_per_wavelength < MIN_CELLS_PER_WAVELENGTH {
            return Err(Error::InvalidParameter(format!(
                "cells per wavelength must be at least {MIN_CELLS_PER_WAVELENGTH} (got {})",
                self.cells_per_wavelength
            )));
        }
        Ok(())
    }

    pub fn wave(&self) -> Result<CnoidalWave> {
        CnoidalWave::at_rest(self.roots, self.g, self.sign)
    }

    pub fn n_cells(&self) -> usize {
        self.n_waves * self.cells_per_wavelength
    }
}

/// Sample the perturbed train at cell centers; `q = h̃ (m/h̃ + D)`.
pub fn init_wavetrain(config: &WaveTrainConfig) -> Result<(SgnField, CnoidalWave)> {
    config.validate()?;
    let wave = config.wave()?;
    let dx = wave.wavelength / config.cells_per_wavelength as f64;
    let n = config.n_cells();
    let domain = n as f64 * dx;
    let (m, d) = (wave.constants.m, wave.phase_speed);
    let mut h = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for i in 0..n {
        let x = (i as f64 + 0.5) * dx;
        let hi = wave.profile(x) * (1.0 + config.amplitude * (2.0 * PI * x / domain).cos());
        h.push(hi);
        q.push(hi * (m / hi + d));
    }
    Ok((SgnField::new(h, q, dx, config.g)?, wave))
}
