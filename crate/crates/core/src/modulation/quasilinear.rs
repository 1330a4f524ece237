use nalgebra::Matrix4;
use num_complex::Complex64;

use super::coefficients::differential_coefficients_with;
use super::ModulationState;
use crate::error::{Error, Result};
use crate::poly::{self, DoubleDouble};
use crate::traveling_wave::ClosedFormAverages;

/// Relative tolerance on imaginary parts for a root to count as real.
pub const REAL_TOL: f64 = 1e-9;
/// Relative separation below which two roots count as coincident.
pub const DISTINCT_TOL: f64 = 1e-8;
/// Leading coefficient threshold relative to the coefficient norm.
pub const LEADING_COEFF_TOL: f64 = 1e-12;

/// The pencil `A U_T + B U_X = 0` with `U = (D, h0, h1, h2)`.
///
/// The first row is the wavelength equation `L_T − L D_X + D L_X = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasilinearSystem {
    pub a: Matrix4<f64>,
    pub b: Matrix4<f64>,
    /// Coefficients `c0..c4` of `det(B − λA)`, lowest degree first.
    pub charpoly: [f64; 5],
    charpoly_dd: [DoubleDouble; 5],
}

impl QuasilinearSystem {
    pub fn from_matrices(a: Matrix4<f64>, b: Matrix4<f64>) -> Self {
        let charpoly_dd = poly::pencil_charpoly_dd(&a, &b);
        Self {
            a,
            b,
            charpoly: charpoly_dd.map(DoubleDouble::to_f64),
            charpoly_dd,
        }
    }

    /// `det(B − λA)` evaluated directly.
    pub fn pencil_det(&self, lambda: f64) -> f64 {
        poly::pencil_det(&self.a, &self.b, lambda)
    }
}

pub fn assemble_ab(state: &ModulationState) -> Result<QuasilinearSystem> {
    let roots = &state.roots;
    let c = state.constants();
    let av = ClosedFormAverages::new(roots);
    let dc = differential_coefficients_with(roots, &av);
    let (d, m, g, i1) = (state.phase_speed, c.m, state.g, c.i1);
    let (hb, hi, l) = (av.h_mean, av.h_inv_mean, av.wavelength);
    let h = roots.as_array();
    let (phi, psi, lam) = (dc.phi, dc.psi, dc.lambda);

    let mut a = Matrix4::<f64>::zeros();
    let mut b = Matrix4::<f64>::zeros();

    a[(2, 0)] = hb;
    a[(3, 0)] = hb * d + m;
    b[(0, 0)] = -l;
    b[(1, 0)] = hb;
    b[(2, 0)] = 2.0 * hb * d + 2.0 * m;
    b[(3, 0)] = 1.5 * hb * d * d + 0.5 * g * i1 * hb + m * m * hi + 3.0 * m * d;

    for j in 0..3 {
        let col = j + 1;
        // The two roots other than h_j.
        let (p, q) = match j {
            0 => (h[1], h[2]),
            1 => (h[0], h[2]),
            _ => (h[0], h[1]),
        };
        let hj = h[j];
        let half_m_hj = m / (2.0 * hj);

        a[(0, col)] = lam[j];
        a[(1, col)] = phi[j];
        a[(2, col)] = d * phi[j] + half_m_hj;
        a[(3, col)] = 0.5 * (d * d + g * i1) * phi[j]
            + m * m * psi[j]
            + 0.5 * g * (hb - p - q)
            + g * p * q * hi
            + half_m_hj * d;

        b[(0, col)] = d * lam[j];
        b[(1, col)] = d * phi[j] + half_m_hj;
        b[(2, col)] = d * d * phi[j] + 0.5 * g * (p + q) + m / hj * d;
        b[(3, col)] = 0.5 * (d * d + g * i1) * d * phi[j]
            + m * m * d * psi[j]
            + 0.5 * g * hb * d
            + g * p * q * hi * d
            + 0.75 * m / hj * d * d
            + 0.25 * g * m * i1 / hj
            + 0.5 * g * m;
    }

    let sys = QuasilinearSystem::from_matrices(a, b);
    if sys
        .charpoly
        .iter()
        .chain(a.iter())
        .chain(b.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::DegenerateRoots(
            "non-finite entry in the quasilinear system".into(),
        ));
    }
    Ok(sys)
}

/// Roots of `det(B − λA)` with hyperbolicity flags.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenClassification {
    /// Sorted by real part.
    pub roots: [Complex64; 4],
    pub all_real: bool,
    pub distinct: bool,
    pub n_positive: usize,
    pub n_negative: usize,
    /// `Res(p, p′)` of the monic characteristic polynomial.
    pub resultant: f64,
}

impl EigenClassification {
    pub fn strictly_hyperbolic(&self) -> bool {
        self.all_real && self.distinct
    }

    pub fn real_parts(&self) -> [f64; 4] {
        self.roots.map(|z| z.re)
    }

    pub fn max_imag(&self) -> f64 {
        self.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

pub fn characteristic_eigenvalues(sys: &QuasilinearSystem) -> Result<EigenClassification> {
    let c = &sys.charpoly;
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lead = c[4].abs();
    if lead.is_nan() || lead <= LEADING_COEFF_TOL * norm {
        return Err(Error::DegeneratePencil {
            leading: c[4],
            scale: norm,
        });
    }

    let mut roots = poly::quartic_roots(c);
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));

    let all_real = roots
        .iter()
        .all(|z| z.im.abs() <= REAL_TOL * z.re.abs().max(1.0));
    let scale = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            min_gap = min_gap.min((roots[i] - roots[j]).norm());
        }
    }
    let distinct = min_gap > DISTINCT_TOL * scale;
    let n_positive = roots.iter().filter(|z| z.re > 0.0).count();
    let n_negative = roots.iter().filter(|z| z.re < 0.0).count();

    Ok(EigenClassification {
        roots,
        all_real,
        distinct,
        n_positive,
        n_negative,
        resultant: poly::resultant_quartic_dd(&sys.charpoly_dd),
    })
}

/// `Res(p, p′)` of a quartic given lowest degree first, normalised to monic.
pub fn resultant_quartic(charpoly: &[f64; 5]) -> f64 {
    poly::resultant_quartic(charpoly)
}
