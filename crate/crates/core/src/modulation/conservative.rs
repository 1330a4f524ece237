use super::ModulationState;
use crate::traveling_wave::ClosedFormAverages;

/// Conserved densities and fluxes of the four modulation equations.
///
/// Order: waves `(1/L, D/L)`, mass, momentum, energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedVector {
    pub densities: [f64; 4],
    pub fluxes: [f64; 4],
}

pub fn conserved_vector(state: &ModulationState) -> ConservedVector {
    let c = state.constants();
    let av = ClosedFormAverages::new(&state.roots);
    let (d, m, g) = (state.phase_speed, c.m, state.g);
    let (hb, hi, l) = (av.h_mean, av.h_inv_mean, av.wavelength);
    let (i1, i2, i3) = (c.i1, c.i2, c.i3);

    let mass_flux = m + hb * d;
    let densities = [
        1.0 / l,
        hb,
        mass_flux,
        0.5 * hb * d * d + 0.5 * g * i1 * hb - 0.5 * g * i2 + g * i3 * hi + m * d,
    ];
    let fluxes = [
        d / l,
        mass_flux,
        hb * d * d + 0.5 * g * i2 + 2.0 * m * d,
        0.5 * hb * d * d * d
            + 0.5 * g * i1 * hb * d
            + g * i3 * hi * d
            + 1.5 * m * d * d
            + 0.5 * m * g * i1,
    ];
    ConservedVector { densities, fluxes }
}
