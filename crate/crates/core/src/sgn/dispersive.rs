//! Non-hydrostatic correction with the depth frozen.
//!
//! Writing `ψ = u_t + u u_x + g h_x` for the acceleration left after the
//! shallow-water update, the non-hydrostatic pressure is
//!
//! ```text
//!   P = (h³/3) (2 u_x² + g h_xx − ψ_x)
//! ```
//!
//! and `h ψ = −P_x` becomes the periodic elliptic problem
//!
//! ```text
//!   h ψ − ((h³/3) ψ_x)_x = −S_x,    S = (h³/3)(2 u_x² + g h_xx)
//! ```
//!
//! Face quantities live between cells `i` and `i+1`. The momentum update is
//! the difference of face pressures, so total momentum is conserved.

use crate::error::{Error, Result};

/// Off-diagonal to diagonal ratio at which reduction stops.
const PCR_TOL: f64 = 1e-17;
const PCR_MAX_LEVELS: usize = 60;

/// `q_t` from the non-hydrostatic pressure with `h` frozen.
pub(crate) fn dispersive_rhs(h: &[f64], q: &[f64], dx: f64, g: f64, dq: &mut [f64]) -> Result<()> {
    let n = h.len();
    let at = |i: isize| ((i % n as isize) + n as isize) as usize % n;
    let u: Vec<f64> = h.iter().zip(q).map(|(h, q)| q / h).collect();
    let inv_dx2 = 1.0 / (dx * dx);

    let mut hf3 = vec![0.0; n];
    let mut s = vec![0.0; n];
    for i in 0..n {
        let ii = i as isize;
        let (hm, h0, h1, h2) = (h[at(ii - 1)], h[i], h[at(ii + 1)], h[at(ii + 2)]);
        let hf = 0.5 * (h0 + h1);
        hf3[i] = hf * hf * hf;
        let ux = (u[at(ii + 1)] - u[i]) / dx;
        let hxx = (h2 - h1 - h0 + hm) * 0.5 * inv_dx2;
        s[i] = hf3[i] / 3.0 * (2.0 * ux * ux + g * hxx);
    }

    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    for i in 0..n {
        let im = at(i as isize - 1);
        let cp = hf3[i] * inv_dx2 / 3.0;
        let cm = hf3[im] * inv_dx2 / 3.0;
        a[i] = -cm;
        c[i] = -cp;
        b[i] = h[i] + cp + cm;
        d[i] = -(s[i] - s[im]) / dx;
    }
    let psi = cyclic_pcr(a, b, c, d)?;

    let p: Vec<f64> = (0..n)
        .map(|i| s[i] - hf3[i] / 3.0 * (psi[at(i as isize + 1)] - psi[i]) / dx)
        .collect();
    for i in 0..n {
        dq[i] = -(p[i] - p[at(i as isize - 1)]) / dx;
    }
    Ok(())
}

/// Parallel cyclic reduction for `a_i x_{i−1} + b_i x_i + c_i x_{i+1} = d_i`
/// with periodic indexing.
///
/// Every row is reduced by the same arithmetic, so the solution is exactly
/// equivariant under rotation of the input. Requires diagonal dominance.
pub fn cyclic_pcr(
    mut a: Vec<f64>,
    mut b: Vec<f64>,
    mut c: Vec<f64>,
    mut d: Vec<f64>,
) -> Result<Vec<f64>> {
    let n = b.len();
    let mut stride = 1usize;
    let mut ratio = f64::INFINITY;
    for _ in 0..PCR_MAX_LEVELS {
        if stride % n == 0 {
            return Ok((0..n).map(|i| d[i] / (a[i] + b[i] + c[i])).collect());
        }
        ratio = (0..n)
            .map(|i| (a[i].abs() + c[i].abs()) / b[i].abs())
            .fold(0.0, f64::max);
        if !ratio.is_finite() {
            break;
        }
        if ratio <= PCR_TOL {
            return Ok(d.iter().zip(&b).map(|(d, b)| d / b).collect());
        }
        let s = stride % n;
        let mut na = vec![0.0; n];
        let mut nb = vec![0.0; n];
        let mut nc = vec![0.0; n];
        let mut nd = vec![0.0; n];
        for i in 0..n {
            let im = (i + n - s) % n;
            let ip = (i + s) % n;
            let k1 = a[i] / b[im];
            let k2 = c[i] / b[ip];
            na[i] = -a[im] * k1;
            nc[i] = -c[ip] * k2;
            nb[i] = b[i] - c[im] * k1 - a[ip] * k2;
            nd[i] = d[i] - d[im] * k1 - d[ip] * k2;
        }
        a = na;
        b = nb;
        c = nc;
        d = nd;
        stride *= 2;
    }
    Err(Error::EllipticNonConvergence {
        levels: PCR_MAX_LEVELS,
        ratio,
    })
}
