use crate::error::{Error, Result};

/// Cell averages of depth and momentum on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SgnField {
    pub dx: f64,
    pub g: f64,
    pub h: Vec<f64>,
    /// Momentum `hu`.
    pub q: Vec<f64>,
    pub t: f64,
}

impl SgnField {
    pub fn new(h: Vec<f64>, q: Vec<f64>, dx: f64, g: f64) -> Result<Self> {
        crate::traveling_wave::check_gravity(g)?;
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cell width must be positive (got {dx})"
            )));
        }
        if h.len() != q.len() {
            return Err(Error::InvalidParameter(format!(
                "depth and momentum lengths differ ({} vs {})",
                h.len(),
                q.len()
            )));
        }
        if h.len() < 4 {
            return Err(Error::InvalidParameter(format!(
                "need at least 4 cells (got {})",
                h.len()
            )));
        }
        if let Some(i) = h.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::PositivityFailure {
                cell: i,
                depth: h[i],
                time: 0.0,
            });
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("momentum must be finite".into()));
        }
        Ok(Self {
            dx,
            g,
            h,
            q,
            t: 0.0,
        })
    }

    /// Uniform depth `depth` at rest.
    pub fn still_water(n_cells: usize, dx: f64, depth: f64, g: f64) -> Result<Self> {
        Self::new(vec![depth; n_cells], vec![0.0; n_cells], dx, g)
    }

    pub fn n_cells(&self) -> usize {
        self.h.len()
    }

    pub fn domain_length(&self) -> f64 {
        self.dx * self.n_cells() as f64
    }

    /// `x_i = (i + 1/2) dx`.
    pub fn cell_centers(&self) -> Vec<f64> {
        (0..self.n_cells())
            .map(|i| (i as f64 + 0.5) * self.dx)
            .collect()
    }

    pub fn velocity(&self) -> Vec<f64> {
        self.h.iter().zip(&self.q).map(|(h, q)| q / h).collect()
    }

    /// Largest `|u| + √(gh)`.
    pub fn max_wave_speed(&self) -> f64 {
        self.h
            .iter()
            .zip(&self.q)
            .map(|(h, q)| (q / h).abs() + (self.g * h).sqrt())
            .fold(0.0, f64::max)
    }

    /// Rotate the cells by `shift` to the right.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut out = self.clone();
        out.h.rotate_right(shift % self.n_cells());
        out.q.rotate_right(shift % self.n_cells());
        out
    }

    /// `x → −x`, `u → −u`.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        out.h.reverse();
        out.q.reverse();
        out.q.iter_mut().for_each(|v| *v = -*v);
        out
    }
}
