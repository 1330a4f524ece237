use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use super::quasilinear::{assemble_ab, characteristic_eigenvalues, EigenClassification};
use super::ModulationState;
use crate::error::{Error, Result};
use crate::traveling_wave::{check_gravity, MassFluxSign, RootTriple};

/// Inset applied to both ends of each axis so the grid avoids `s = 1`, `τ = 0`.
pub const DEFAULT_MARGIN: f64 = 1e-3;

/// Rectangle in the `(s, τ)` plane with `h0 = 1`, `h1 = s`, `h2 = s + τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanWindow {
    pub s_min: f64,
    pub s_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub grid_n: usize,
    pub margin: f64,
}

impl Default for ScanWindow {
    fn default() -> Self {
        Self {
            s_min: 1.0,
            s_max: 100.0,
            tau_min: 0.0,
            tau_max: 100.0,
            grid_n: 50,
            margin: DEFAULT_MARGIN,
        }
    }
}

impl ScanWindow {
    pub fn new(s_min: f64, s_max: f64, tau_min: f64, tau_max: f64, grid_n: usize) -> Self {
        Self {
            s_min,
            s_max,
            tau_min,
            tau_max,
            grid_n,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [
            self.s_min,
            self.s_max,
            self.tau_min,
            self.tau_max,
            self.margin,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("scan window must be finite".into()));
        }
        if self.grid_n < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid size must be at least 2 (got {})",
                self.grid_n
            )));
        }
        if self.margin < 0.0 {
            return Err(Error::InvalidParameter(
                "margin must be non-negative".into(),
            ));
        }
        let (s0, s1) = self.s_range();
        let (t0, t1) = self.tau_range();
        if !(s0 > 1.0 && s1 >= s0) {
            return Err(Error::InvalidParameter(format!(
                "need 1 < s_min + margin <= s_max - margin (got [{s0}, {s1}])"
            )));
        }
        if !(t0 > 0.0 && t1 >= t0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < tau_min + margin <= tau_max - margin (got [{t0}, {t1}])"
            )));
        }
        Ok(())
    }

    fn s_range(&self) -> (f64, f64) {
        (self.s_min + self.margin, self.s_max - self.margin)
    }

    fn tau_range(&self) -> (f64, f64) {
        (self.tau_min + self.margin, self.tau_max - self.margin)
    }

    pub fn s_values(&self) -> Vec<f64> {
        let (a, b) = self.s_range();
        linspace(a, b, self.grid_n)
    }

    pub fn tau_values(&self) -> Vec<f64> {
        let (a, b) = self.tau_range();
        linspace(a, b, self.grid_n)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

/// Counts of positive and negative characteristic speeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    pub positive: usize,
    pub negative: usize,
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+/{}-", self.positive, self.negative)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub s: f64,
    pub tau: f64,
    pub outcome: std::result::Result<EigenClassification, String>,
}

impl ScanPoint {
    pub fn pattern(&self) -> Option<SignPattern> {
        self.outcome.as_ref().ok().map(|e| SignPattern {
            positive: e.n_positive,
            negative: e.n_negative,
        })
    }

    pub fn strictly_hyperbolic(&self) -> bool {
        self.outcome
            .as_ref()
            .map(EigenClassification::strictly_hyperbolic)
            .unwrap_or(false)
    }
}

/// Scan results in row-major order: `s` is the row index, `τ` varies along a row.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub window: ScanWindow,
    pub g: f64,
    pub sign: MassFluxSign,
    pub points: Vec<ScanPoint>,
}

impl ScanReport {
    pub fn rows(&self) -> impl Iterator<Item = &[ScanPoint]> {
        self.points.chunks(self.window.grid_n)
    }

    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| p.outcome.is_err()).count()
    }

    pub fn hyperbolic_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.strictly_hyperbolic())
            .count()
    }

    pub fn all_strictly_hyperbolic(&self) -> bool {
        self.hyperbolic_count() == self.points.len()
    }

    /// True when every point succeeded and all resultants share one strict sign.
    pub fn resultant_sign_constant(&self) -> bool {
        let mut signs = self.points.iter().map(|p| match &p.outcome {
            Ok(e) if e.resultant > 0.0 => Some(1),
            Ok(e) if e.resultant < 0.0 => Some(-1),
            _ => None,
        });
        let first = match signs.next() {
            Some(Some(s)) => s,
            _ => return false,
        };
        signs.all(|s| s == Some(first))
    }

    /// Distinct sign patterns, sorted.
    pub fn sign_patterns(&self) -> Vec<SignPattern> {
        let mut pats: Vec<SignPattern> =
            self.points.iter().filter_map(ScanPoint::pattern).collect();
        pats.sort();
        pats.dedup();
        pats
    }

    /// Number of pattern changes along each row (fixed `s`, increasing `τ`).
    pub fn transitions_per_row(&self) -> Vec<usize> {
        self.rows()
            .map(|row| {
                let pats: Vec<_> = row.iter().map(ScanPoint::pattern).collect();
                pats.windows(2).filter(|w| w[0] != w[1]).count()
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let csv_err = |e: csv::Error| Error::io("<scan csv>", std::io::Error::other(e));
        w.write_record([
            "s",
            "tau",
            "lambda1",
            "lambda2",
            "lambda3",
            "lambda4",
            "max_imag",
            "resultant",
            "n_positive",
            "n_negative",
            "all_real",
            "distinct",
        ])
        .map_err(csv_err)?;
        for p in &self.points {
            let mut rec = vec![p.s.to_string(), p.tau.to_string()];
            match &p.outcome {
                Ok(e) => {
                    rec.extend(e.real_parts().iter().map(f64::to_string));
                    rec.push(e.max_imag().to_string());
                    rec.push(e.resultant.to_string());
                    rec.push(e.n_positive.to_string());
                    rec.push(e.n_negative.to_string());
                    rec.push(e.all_real.to_string());
                    rec.push(e.distinct.to_string());
                }
                Err(_) => {
                    rec.extend(std::iter::repeat("NaN".to_string()).take(6));
                    rec.extend(["0", "0", "false", "false"].map(String::from));
                }
            }
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::io("<scan csv>", e))?;
        Ok(())
    }
}

/// Classify every grid point; per-point failures are kept in the report.
///
/// With `threads = None` the global rayon pool is used. Output order never
/// depends on scheduling.
pub fn scan_region(
    window: &ScanWindow,
    g: f64,
    sign: MassFluxSign,
    threads: Option<usize>,
) -> Result<ScanReport> {
    window.validate()?;
    check_gravity(g)?;
    let s_vals = window.s_values();
    let tau_vals = window.tau_values();
    let n = window.grid_n;

    let run = || -> Vec<ScanPoint> {
        (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (s, tau) = (s_vals[idx / n], tau_vals[idx % n]);
                ScanPoint {
                    s,
                    tau,
                    outcome: classify(s, tau, g, sign).map_err(|e| e.to_string()),
                }
            })
            .collect()
    };

    let points = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    Ok(ScanReport {
        window: *window,
        g,
        sign,
        points,
    })
}

fn classify(s: f64, tau: f64, g: f64, sign: MassFluxSign) -> Result<EigenClassification> {
    let roots = RootTriple::from_s_tau(s, tau)?;
    let state = ModulationState::at_rest(roots, g, sign)?;
    characteristic_eigenvalues(&assemble_ab(&state)?)
}
