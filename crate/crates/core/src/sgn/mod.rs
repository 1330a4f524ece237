//! Periodic 1D solver for the SGN equations
//!
//! ```text
//!   h_t + (hu)_x = 0
//!   (hu)_t + (hu² + g h²/2 + (h²/3) D²h/Dt²)_x = 0
//! ```
//!
//! Hyperbolic–elliptic splitting: an explicit MUSCL/HLL shallow-water step
//! alternates with a non-hydrostatic correction that solves a periodic
//! tridiagonal system for the dispersive pressure.

mod diagnostics;
mod dispersive;
mod experiment;
mod field;
mod hydrostatic;
mod solver;
mod wavetrain;

pub use diagnostics::{diagnostics, phase_portrait, portrait_residual, Diagnostics};
pub use dispersive::cyclic_pcr;
pub use experiment::{
    plan_experiment, run_experiment, Checkpoint, ExperimentConfig, ExperimentPlan,
    ExperimentResult, SeriesRow, LONG_RUNNING_CELL_STEPS,
};
pub use field::SgnField;
pub use hydrostatic::Limiter;
pub use solver::{step, Solver, SolverConfig, DEFAULT_CFL, MAX_CFL};
pub use wavetrain::{init_wavetrain, WaveTrainConfig, MIN_CELLS_PER_WAVELENGTH};
