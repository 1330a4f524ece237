//! Cnoidal waves, Whitham modulation analysis and a 1D solver for the
//! Serre–Green–Naghdi (SGN) equations
//!
//! ```text
//!   h_t + (hu)_x = 0
//!   (hu)_t + (hu² + p)_x = 0,   p = g h²/2 + (h²/3) D²h/Dt²
//! ```

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod jacobi;
pub mod modulation;
pub mod output;
pub mod poly;
pub mod quadrature;
pub mod sgn;
pub mod traveling_wave;

pub use error::{Error, Result};
