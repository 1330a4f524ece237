//! Complete elliptic integrals of the first, second and third kind.
//!
//! All functions here depend on the elliptic **modulus** `k`, not on the
//! parameter `m = k²` used by Abramowitz & Stegun and by Mathematica's
//! `EllipticK[m]`. Do not confuse that `m` with the mass flux of a wave.
//!
//! ```text
//!            π/2
//!           ⌠          dθ
//!   K(k) =  │  ─────────────────
//!           ⌡   √(1 − k² sin²θ)
//!          0
//!
//!            π/2
//!           ⌠
//!   E(k) =  │  √(1 − k² sin²θ) dθ
//!           ⌡
//!          0
//!
//!              π/2
//!             ⌠                 dθ
//!   Π(n,k) =  │  ──────────────────────────────────
//!             ⌡   (1 − n sin²θ) √(1 − k² sin²θ)
//!            0
//! ```
//!
//! Evaluation goes through Carlson's symmetric forms `R_F`, `R_D`, `R_J`
//! with the duplication algorithm (Carlson 1995, as arranged in Numerical
//! Recipes 3rd ed.). The error thresholds below give full double precision.

use crate::error::{Error, Result};

/// Relative tolerance on `|n − k²|` below which the derivatives of `Π` are refused.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-12;

/// Modulus and characteristic of a cnoidal wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    /// Elliptic modulus, `0 ≤ k < 1`.
    pub k: f64,
    /// Characteristic, `0 ≤ n < 1`.
    pub n: f64,
    /// Complementary parameter `1 − k²`, kept separately to avoid cancellation near `k → 1`.
    pub kc2: f64,
}

impl EllipticModulus {
    pub fn new(k: f64, n: f64) -> Result<Self> {
        check_modulus(k)?;
        check_characteristic(n)?;
        Ok(Self {
            k,
            n,
            kc2: (1.0 - k) * (1.0 + k),
        })
    }

    /// Builds the modulus from `k² = (h2−h1)/(h2−h0)` and `n = (h2−h1)/h2`
    /// without forming `1 − k²` by subtraction.
    pub fn from_roots(h0: f64, h1: f64, h2: f64) -> Self {
        let span = h2 - h0;
        Self {
            k: ((h2 - h1) / span).sqrt(),
            n: (h2 - h1) / h2,
            kc2: (h1 - h0) / span,
        }
    }
}

/// The three complete integrals at one `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompleteIntegrals {
    pub k: f64,
    pub e: f64,
    pub pi: f64,
}

impl CompleteIntegrals {
    pub fn at(modulus: &EllipticModulus) -> Self {
        let rf = carlson_rf(0.0, modulus.kc2, 1.0);
        let k2 = modulus.k * modulus.k;
        let e = rf - k2 * carlson_rd(0.0, modulus.kc2, 1.0) / 3.0;
        let pi = if modulus.n == 0.0 {
            rf
        } else {
            rf + modulus.n * carlson_rj(0.0, modulus.kc2, 1.0, 1.0 - modulus.n) / 3.0
        };
        Self { k: rf, e, pi }
    }
}

/// Closed-form partial derivatives of the complete integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticDerivatives {
    pub dk_dk: f64,
    pub de_dk: f64,
    pub dpi_dn: f64,
    pub dpi_dk: f64,
}

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!(
            "modulus k = {k} must satisfy 0 ≤ k < 1"
        )));
    }
    Ok(())
}

fn check_characteristic(n: f64) -> Result<()> {
    if !(0.0..1.0).contains(&n) {
        return Err(Error::Domain(format!(
            "characteristic n = {n} must satisfy 0 ≤ n < 1"
        )));
    }
    Ok(())
}

/// Complete integral of the first kind `K(k)`; diverges logarithmically as `k → 1`.
pub fn ellip_k(k: f64) -> Result<f64> {
    check_modulus(k)?;
    Ok(carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0))
}

/// Complete integral of the second kind `E(k)`, defined on the closed interval `[0, 1]`.
pub fn ellip_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!(
            "modulus k = {k} must satisfy 0 ≤ k ≤ 1"
        )));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let kc2 = (1.0 - k) * (1.0 + k);
    Ok(carlson_rf(0.0, kc2, 1.0) - k * k * carlson_rd(0.0, kc2, 1.0) / 3.0)
}

/// Complete integral of the third kind `Π(n, k)`.
///
/// `n = 0` takes the same code path as [`ellip_k`], so `Π(0, k) = K(k)` bit for bit.
pub fn ellip_pi(n: f64, k: f64) -> Result<f64> {
    check_modulus(k)?;
    check_characteristic(n)?;
    let kc2 = (1.0 - k) * (1.0 + k);
    let rf = carlson_rf(0.0, kc2, 1.0);
    if n == 0.0 {
        return Ok(rf);
    }
    Ok(rf + n * carlson_rj(0.0, kc2, 1.0, 1.0 - n) / 3.0)
}

/// `(dK/dk, dE/dk, ∂Π/∂n, ∂Π/∂k)` with the default singular tolerance.
pub fn ellip_derivatives(n: f64, k: f64) -> Result<EllipticDerivatives> {
    ellip_derivatives_with_tol(n, k, DEFAULT_SINGULAR_TOL)
}

/// As [`ellip_derivatives`], refusing `|n − k²| ≤ tol · max(n, k²)`.
///
/// The `Π` derivatives divide by `k² − n`; callers that need that regime
/// must difference a quadrature of the integral instead.
pub fn ellip_derivatives_with_tol(n: f64, k: f64, tol: f64) -> Result<EllipticDerivatives> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Domain(format!(
            "modulus k = {k} must satisfy 0 < k < 1"
        )));
    }
    if !(n > 0.0 && n < 1.0) {
        return Err(Error::Domain(format!(
            "characteristic n = {n} must satisfy 0 < n < 1"
        )));
    }
    let k2 = k * k;
    if (n - k2).abs() <= tol * n.max(k2) {
        return Err(Error::SingularConfiguration(format!(
            "n = {n} and k² = {k2} coincide within relative tolerance {tol:e}"
        )));
    }
    let modulus = EllipticModulus::new(k, n)?;
    let CompleteIntegrals { k: kk, e, pi } = CompleteIntegrals::at(&modulus);
    let kc2 = modulus.kc2;
    let d = k2 - n;
    Ok(EllipticDerivatives {
        dk_dk: e / (k * kc2) - kk / k,
        de_dk: (e - kk) / k,
        dpi_dn: -e / (2.0 * (1.0 - n) * d) - kk / (2.0 * n * (1.0 - n))
            + (k2 - n * n) * pi / (2.0 * n * d * (1.0 - n)),
        dpi_dk: k * e / (d * kc2) - k * pi / d,
    })
}

pub(crate) fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0025;
    const C1: f64 = 1.0 / 24.0;
    const C2: f64 = 0.1;
    const C3: f64 = 3.0 / 44.0;
    const C4: f64 = 1.0 / 14.0;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let (mut ave, mut delx, mut dely, mut delz);
    loop {
        let (sx, sy, sz) = (xt.sqrt(), yt.sqrt(), zt.sqrt());
        let alamb = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        ave = (xt + yt + zt) / 3.0;
        delx = (ave - xt) / ave;
        dely = (ave - yt) / ave;
        delz = (ave - zt) / ave;
        if delx.abs().max(dely.abs()).max(delz.abs()) <= ERRTOL {
            break;
        }
    }
    let e2 = delx * dely - delz * delz;
    let e3 = delx * dely * delz;
    (1.0 + (C1 * e2 - C2 - C3 * e3) * e2 + C4 * e3) / ave.sqrt()
}

pub(crate) fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 6.0;
    const C3: f64 = 9.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.25 * C3;
    const C6: f64 = 1.5 * C4;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let (mut ave, mut delx, mut dely, mut delz);
    loop {
        let (sx, sy, sz) = (xt.sqrt(), yt.sqrt(), zt.sqrt());
        let alamb = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + alamb));
        fac *= 0.25;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        ave = 0.2 * (xt + yt + 3.0 * zt);
        delx = (ave - xt) / ave;
        dely = (ave - yt) / ave;
        delz = (ave - zt) / ave;
        if delx.abs().max(dely.abs()).max(delz.abs()) <= ERRTOL {
            break;
        }
    }
    let ea = delx * dely;
    let eb = delz * delz;
    let ec = ea - eb;
    let ed = ea - 6.0 * eb;
    let ee = ed + ec + ec;
    3.0 * sum
        + fac
            * (1.0
                + ed * (-C1 + C5 * ed - C6 * delz * ee)
                + delz * (C2 * ee + delz * (-C3 * ec + delz * C4 * ea)))
            / (ave * ave.sqrt())
}

/// `R_J(x, y, z, p)` for `p > 0`.
pub(crate) fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 3.0;
    const C3: f64 = 3.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.75 * C3;
    const C6: f64 = 1.5 * C4;
    const C7: f64 = 0.5 * C2;
    const C8: f64 = C3 + C3;
    let (mut xt, mut yt, mut zt, mut pt) = (x, y, z, p);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let (mut ave, mut delx, mut dely, mut delz, mut delp);
    loop {
        let (sx, sy, sz) = (xt.sqrt(), yt.sqrt(), zt.sqrt());
        let alamb = sx * (sy + sz) + sy * sz;
        let alpha = (pt * (sx + sy + sz) + sx * sy * sz).powi(2);
        let beta = pt * (pt + alamb).powi(2);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        pt = 0.25 * (pt + alamb);
        ave = 0.2 * (xt + yt + zt + pt + pt);
        delx = (ave - xt) / ave;
        dely = (ave - yt) / ave;
        delz = (ave - zt) / ave;
        delp = (ave - pt) / ave;
        if delx.abs().max(dely.abs()).max(delz.abs()).max(delp.abs()) <= ERRTOL {
            break;
        }
    }
    let ea = delx * (dely + delz) + dely * delz;
    let eb = delx * dely * delz;
    let ec = delp * delp;
    let ed = ea - 3.0 * ec;
    let ee = eb + 2.0 * delp * (ea - ec);
    3.0 * sum
        + fac
            * (1.0
                + ed * (-C1 + C5 * ed - C6 * ee)
                + eb * (C7 + delp * (-C8 + delp * C4))
                + delp * ea * (C2 - delp * C3)
                - C2 * delp * ec)
            / (ave * ave.sqrt())
}

/// `R_C(x, y)` for `y > 0`.
fn carlson_rc(x: f64, y: f64) -> f64 {
    const ERRTOL: f64 = 0.0012;
    const C1: f64 = 0.3;
    const C2: f64 = 1.0 / 7.0;
    const C3: f64 = 0.375;
    const C4: f64 = 9.0 / 22.0;
    let (mut xt, mut yt) = (x, y);
    let (mut ave, mut s);
    loop {
        let alamb = 2.0 * xt.sqrt() * yt.sqrt() + yt;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        ave = (xt + yt + yt) / 3.0;
        s = (yt - ave) / ave;
        if s.abs() <= ERRTOL {
            break;
        }
    }
    (1.0 + s * s * (C1 + s * (C2 + s * (C3 + s * C4)))) / ave.sqrt()
}
