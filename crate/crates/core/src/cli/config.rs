use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Flat TOML schema of `simulate --config`. Every key is optional.
///
/// ```toml
/// roots = [1.0, 1.5, 2.0]
/// g = 10.0
/// sign = -1
/// n_waves = 5
/// amplitude = 1e-3
/// cells_per_wavelength = 400
/// periods = 5.0          # or t_end = 11.7
/// checkpoints = [2.34, 4.68]
/// cfl = 0.45
/// limiter = "mc"
/// diagnostics_every = 10
/// out_dir = "run"
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFile {
    pub roots: Option<Vec<f64>>,
    pub g: Option<f64>,
    pub sign: Option<i32>,
    pub n_waves: Option<usize>,
    pub amplitude: Option<f64>,
    pub cells_per_wavelength: Option<usize>,
    pub t_end: Option<f64>,
    pub periods: Option<f64>,
    pub checkpoints: Option<Vec<f64>>,
    pub cfl: Option<f64>,
    pub limiter: Option<String>,
    pub diagnostics_every: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl SimulateFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: format!("cannot read config file: {e}"),
        })?;
        Self::parse(&text).map_err(|message| Error::Config {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}
