//! Finite-difference Jacobians of the library's conservative form.

use nalgebra::Matrix4;
use sgn_whitham::modulation::{conserved_vector, ModulationState};
use sgn_whitham::traveling_wave::{wavelength, RootTriple};

use super::central_diff5;

/// Densities and fluxes as functions of `U = (D, h0, h1, h2)`, with the first
/// pair rescaled by `−L²` to match the printed wavelength row.
pub fn jacobian_oracle(state: &ModulationState) -> (Matrix4<f64>, Matrix4<f64>) {
    let eval = |u: [f64; 4]| {
        let roots = RootTriple::new(u[1], u[2], u[3]).unwrap();
        let st = ModulationState::new(u[0], roots, state.g, state.sign).unwrap();
        conserved_vector(&st)
    };
    let u0 = [
        state.phase_speed,
        state.roots.h0(),
        state.roots.h1(),
        state.roots.h2(),
    ];
    let l2 = wavelength(&state.roots).powi(2);
    let mut a = Matrix4::zeros();
    let mut b = Matrix4::zeros();
    for col in 0..4 {
        let gap = u0[1].min(u0[2] - u0[1]).min(u0[3] - u0[2]);
        let step = 1e-3 * if col == 0 { u0[0].abs().max(1.0) } else { gap };
        for row in 0..4 {
            let f = |x: f64, dens: bool| {
                let mut u = u0;
                u[col] = x;
                let cv = eval(u);
                if dens {
                    cv.densities[row]
                } else {
                    cv.fluxes[row]
                }
            };
            let scale = if row == 0 { -l2 } else { 1.0 };
            a[(row, col)] = scale * central_diff5(|x| f(x, true), u0[col], step);
            b[(row, col)] = scale * central_diff5(|x| f(x, false), u0[col], step);
        }
    }
    (a, b)
}
