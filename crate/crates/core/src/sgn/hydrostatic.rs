use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Slope limiter for the piecewise-linear reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Limiter {
    Minmod,
    /// Monotonized central.
    #[default]
    MonotonizedCentral,
    VanLeer,
}

impl Limiter {
    #[inline]
    pub fn slope(self, a: f64, b: f64) -> f64 {
        if a * b <= 0.0 {
            return 0.0;
        }
        match self {
            Limiter::Minmod => a.signum() * a.abs().min(b.abs()),
            Limiter::MonotonizedCentral => {
                a.signum() * (2.0 * a.abs()).min(2.0 * b.abs()).min(0.5 * (a + b).abs())
            }
            Limiter::VanLeer => 2.0 * a * b / (a + b),
        }
    }
}

impl fmt::Display for Limiter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limiter::Minmod => "minmod",
            Limiter::MonotonizedCentral => "mc",
            Limiter::VanLeer => "vanleer",
        })
    }
}

impl FromStr for Limiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "minmod" => Ok(Limiter::Minmod),
            "mc" | "monotonized-central" => Ok(Limiter::MonotonizedCentral),
            "vanleer" | "van-leer" => Ok(Limiter::VanLeer),
            other => Err(Error::InvalidParameter(format!(
                "unknown limiter '{other}' (expected minmod, mc or vanleer)"
            ))),
        }
    }
}

/// Time derivative of `(h, q)` for the shallow-water part.
///
/// MUSCL reconstruction of `h` and `u`, HLL flux with Davis wave-speed
/// estimates. `F[i]` is the flux through the face between cells `i` and `i+1`.
pub(crate) fn hydrostatic_rhs(
    h: &[f64],
    q: &[f64],
    dx: f64,
    g: f64,
    limiter: Limiter,
    dh: &mut [f64],
    dq: &mut [f64],
) {
    let n = h.len();
    let u: Vec<f64> = h.iter().zip(q).map(|(h, q)| q / h).collect();
    let slope = |v: &[f64], i: usize| {
        let vm = v[(i + n - 1) % n];
        let vp = v[(i + 1) % n];
        limiter.slope(v[i] - vm, vp - v[i])
    };
    let sh: Vec<f64> = (0..n).map(|i| slope(h, i)).collect();
    let su: Vec<f64> = (0..n).map(|i| slope(&u, i)).collect();

    let mut fh = vec![0.0; n];
    let mut fq = vec![0.0; n];
    for i in 0..n {
        let j = (i + 1) % n;
        let hl = h[i] + 0.5 * sh[i];
        let ul = u[i] + 0.5 * su[i];
        let hr = h[j] - 0.5 * sh[j];
        let ur = u[j] - 0.5 * su[j];
        let (f0, f1) = hll(hl, ul, hr, ur, g);
        fh[i] = f0;
        fq[i] = f1;
    }
    for i in 0..n {
        let im = (i + n - 1) % n;
        dh[i] = -(fh[i] - fh[im]) / dx;
        dq[i] = -(fq[i] - fq[im]) / dx;
    }
}

#[inline]
fn hll(hl: f64, ul: f64, hr: f64, ur: f64, g: f64) -> (f64, f64) {
    let cl = (g * hl).sqrt();
    let cr = (g * hr).sqrt();
    let sl = (ul - cl).min(ur - cr);
    let sr = (ul + cl).max(ur + cr);
    let (ql, qr) = (hl * ul, hr * ur);
    let fl = (ql, ql * ul + 0.5 * g * hl * hl);
    let fr = (qr, qr * ur + 0.5 * g * hr * hr);
    if sl >= 0.0 {
        fl
    } else if sr <= 0.0 {
        fr
    } else {
        let inv = 1.0 / (sr - sl);
        (
            (sr * fl.0 - sl * fr.0 + sl * sr * (hr - hl)) * inv,
            (sr * fl.1 - sl * fr.1 + sl * sr * (qr - ql)) * inv,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limiters_vanish_at_extrema() {
        for l in [
            Limiter::Minmod,
            Limiter::MonotonizedCentral,
            Limiter::VanLeer,
        ] {
            assert_eq!(l.slope(1.0, -1.0), 0.0);
            assert_eq!(l.slope(0.0, 2.0), 0.0);
            assert!((l.slope(1.0, 1.0) - 1.0).abs() < 1e-15);
        }
        assert_eq!(Limiter::MonotonizedCentral.slope(1.0, 3.0), 2.0);
        assert_eq!(Limiter::Minmod.slope(1.0, 3.0), 1.0);
    }

    #[test]
    fn hll_is_consistent() {
        let (f0, f1) = hll(1.3, 0.4, 1.3, 0.4, 9.81);
        assert!((f0 - 1.3 * 0.4).abs() < 1e-15);
        assert!((f1 - (1.3 * 0.16 + 0.5 * 9.81 * 1.69)).abs() < 1e-13);
    }

    #[test]
    fn limiter_parsing() {
        assert_eq!(
            "MC".parse::<Limiter>().unwrap(),
            Limiter::MonotonizedCentral
        );
        assert!("superbee".parse::<Limiter>().is_err());
    }
}
