use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure mode of the library.
///
/// The CLI maps these onto process exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid roots: {0}")]
    InvalidRoots(String),

    #[error("degenerate roots: {0}")]
    DegenerateRoots(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("quadrature did not reach relative tolerance {tol:e} after {panels} panels")]
    QuadratureFailure { tol: f64, panels: usize },

    #[error("degenerate pencil: leading coefficient {leading:e} is negligible against {scale:e}")]
    DegeneratePencil { leading: f64, scale: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-positive depth {depth:e} in cell {cell} at t = {time}")]
    PositivityFailure { cell: usize, depth: f64, time: f64 },

    #[error("elliptic solver did not converge after {levels} reduction levels (coupling ratio {ratio:e})")]
    EllipticNonConvergence { levels: usize, ratio: f64 },

    #[error("config error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 validation, 3 numerical degeneracy, 4 solver failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::InvalidRoots(_)
            | Error::InvalidParameter(_)
            | Error::Config { .. } => 2,
            Error::DegenerateRoots(_)
            | Error::SingularConfiguration(_)
            | Error::QuadratureFailure { .. }
            | Error::DegeneratePencil { .. } => 3,
            Error::PositivityFailure { .. }
            | Error::EllipticNonConvergence { .. }
            | Error::Io { .. } => 4,
        }
    }
}
