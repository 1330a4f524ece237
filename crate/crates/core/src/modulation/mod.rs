//! Whitham modulation equations for periodic SGN wave trains.
//!
//! The unknowns are `(D, h0, h1, h2)`. The conservative system averages the
//! mass, momentum and energy laws over one period and adds conservation of
//! waves `(1/L)_T + (D/L)_X = 0`; its quasilinear form `A U_T + B U_X = 0`
//! gives the characteristic speeds as roots of `det(B − λA)`.

mod coefficients;
mod conservative;
mod quasilinear;
mod scan;

pub use coefficients::{differential_coefficients, DifferentialCoefficients};
pub use conservative::{conserved_vector, ConservedVector};
pub use quasilinear::{
    assemble_ab, characteristic_eigenvalues, resultant_quartic, EigenClassification,
    QuasilinearSystem, DISTINCT_TOL, LEADING_COEFF_TOL, REAL_TOL,
};
pub use scan::{scan_region, ScanPoint, ScanReport, ScanWindow, SignPattern, DEFAULT_MARGIN};

use crate::error::Result;
use crate::traveling_wave::{ClosedFormAverages, MassFluxSign, RootTriple, WaveConstants};

/// A point of the modulation phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationState {
    /// Phase speed `D`.
    pub phase_speed: f64,
    pub roots: RootTriple,
    pub g: f64,
    pub sign: MassFluxSign,
}

impl ModulationState {
    pub fn new(phase_speed: f64, roots: RootTriple, g: f64, sign: MassFluxSign) -> Result<Self> {
        crate::traveling_wave::check_gravity(g)?;
        if !phase_speed.is_finite() {
            return Err(crate::error::Error::InvalidParameter(
                "phase speed must be finite".into(),
            ));
        }
        Ok(Self {
            phase_speed,
            roots,
            g,
            sign,
        })
    }

    /// The state with prescribed mean velocity `U = m/h̄ + D`.
    pub fn with_mean_velocity(
        mean_velocity: f64,
        roots: RootTriple,
        g: f64,
        sign: MassFluxSign,
    ) -> Result<Self> {
        let m = WaveConstants::from_roots(&roots, g, sign)?.m;
        let h_mean = ClosedFormAverages::new(&roots).h_mean;
        Self::new(mean_velocity - m / h_mean, roots, g, sign)
    }

    /// `U = 0`, i.e. `D = −m/h̄`.
    pub fn at_rest(roots: RootTriple, g: f64, sign: MassFluxSign) -> Result<Self> {
        Self::with_mean_velocity(0.0, roots, g, sign)
    }

    pub fn constants(&self) -> WaveConstants {
        WaveConstants::from_roots(&self.roots, self.g, self.sign)
            .expect("gravity validated at construction")
    }

    pub fn mean_velocity(&self) -> f64 {
        let h_mean = ClosedFormAverages::new(&self.roots).h_mean;
        self.constants().m / h_mean + self.phase_speed
    }

    /// Same roots and sign, phase speed shifted by `dc`.
    pub fn shifted(&self, dc: f64) -> Self {
        Self {
            phase_speed: self.phase_speed + dc,
            ..*self
        }
    }
}
