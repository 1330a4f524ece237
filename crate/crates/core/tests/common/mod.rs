//! Oracles shared by the integration tests. Apart from `fd`, nothing here
//! calls the library's own quadrature or elliptic code.

#![allow(dead_code)]

pub mod fd;

use std::f64::consts::FRAC_PI_2;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integration by recursive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        // Below a few ulps of the panel value the estimate is pure roundoff.
        if err <= tol.max(8.0 * f64::EPSILON * v.abs()) || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&f, a, b, tol, 40)
}

pub fn k_oracle(k: f64) -> f64 {
    integrate(
        |t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

pub fn e_oracle(k: f64) -> f64 {
    integrate(
        |t| (1.0 - k * k * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

pub fn pi_oracle(n: f64, k: f64) -> f64 {
    integrate(
        |t| {
            let s2 = t.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - k * k * s2).sqrt())
        },
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

/// Period average of `f(h)` along the wave with roots `h0 < h1 < h2`,
/// computed from `dξ = dh / √F₃(h)` with the substitution
/// `h = h2 − (h2 − h1) sin²θ`, which removes both endpoint singularities.
pub fn wave_average_oracle<F: Fn(f64) -> f64>(f: F, h0: f64, h1: f64, h2: f64) -> f64 {
    let i3 = h0 * h1 * h2;
    // dξ = √(I3/3) · 2 dθ / √(h − h0)
    let w = |t: f64| {
        let h = h2 - (h2 - h1) * t.sin().powi(2);
        (h, 2.0 * (i3 / 3.0).sqrt() / (h - h0).sqrt())
    };
    let half_period = integrate(|t| w(t).1, 0.0, FRAC_PI_2, 1e-14);
    let weighted = integrate(
        |t| {
            let (h, wt) = w(t);
            f(h) * wt
        },
        0.0,
        FRAC_PI_2,
        1e-14,
    );
    weighted / half_period
}

/// Wavelength from the same substitution: `L = 2 ∫ dξ` over a half period.
pub fn wavelength_oracle(h0: f64, h1: f64, h2: f64) -> f64 {
    let i3 = h0 * h1 * h2;
    2.0 * integrate(
        |t| {
            let h = h2 - (h2 - h1) * t.sin().powi(2);
            2.0 * (i3 / 3.0).sqrt() / (h - h0).sqrt()
        },
        0.0,
        FRAC_PI_2,
        1e-14,
    )
}

/// Central difference `(f(x+h) − f(x−h)) / 2h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Five-point central difference, error `O(h⁴)`.
pub fn central_diff5<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `(s, τ)` points of an `n × n` grid inside `1 < s < s_max`, `0 < τ < tau_max`.
pub fn subgrid(n: usize, s_max: f64, tau_max: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = 1.0 + (s_max - 1.0) * (i as f64 + 0.5) / n as f64;
            let tau = tau_max * (j as f64 + 0.5) / n as f64;
            pts.push((s, tau));
        }
    }
    pts
}
