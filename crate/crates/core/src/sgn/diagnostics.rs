use super::field::SgnField;
use crate::traveling_wave::WaveConstants;

/// Domain integrals of `h`, `hu` and `h e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

/// `u_x` by periodic central differences.
fn velocity_gradient(field: &SgnField) -> Vec<f64> {
    let u = field.velocity();
    let n = u.len();
    (0..n)
        .map(|i| (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * field.dx))
        .collect()
}

/// Energy density `h e = q²/(2h) + g h²/2 + h ḣ²/6` with `ḣ = −h u_x`.
pub fn diagnostics(field: &SgnField) -> Diagnostics {
    let ux = velocity_gradient(field);
    let (mut mass, mut momentum, mut energy) = (0.0, 0.0, 0.0);
    for ((h, q), ux) in field.h.iter().zip(&field.q).zip(&ux) {
        let hdot = -h * ux;
        mass += h;
        momentum += q;
        energy += q * q / (2.0 * h) + 0.5 * field.g * h * h + h * hdot * hdot / 6.0;
    }
    Diagnostics {
        mass: mass * field.dx,
        momentum: momentum * field.dx,
        energy: energy * field.dx,
    }
}

/// Pairs `(h, h ḣ)` per cell with `ḣ = −h u_x`.
pub fn phase_portrait(field: &SgnField) -> Vec<(f64, f64)> {
    velocity_gradient(field)
        .iter()
        .zip(&field.h)
        .map(|(ux, h)| (*h, -h * h * ux))
        .collect()
}

/// Largest `|(hḣ)² − m² F₃(h)|` over the portrait, relative to `max m² F₃` on `[h1, h2]`.
pub fn portrait_residual(
    portrait: &[(f64, f64)],
    constants: &WaveConstants,
    h1: f64,
    h2: f64,
) -> f64 {
    let m2 = constants.m * constants.m;
    let peak = (0..=2000)
        .map(|j| m2 * constants.oscillation_rhs(h1 + (h2 - h1) * j as f64 / 2000.0))
        .fold(0.0, f64::max);
    portrait
        .iter()
        .map(|(h, hhd)| (hhd * hhd - m2 * constants.oscillation_rhs(*h)).abs())
        .fold(0.0, f64::max)
        / peak
}
