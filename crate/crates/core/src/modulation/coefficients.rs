use crate::traveling_wave::{ClosedFormAverages, RootTriple};

/// Partial derivatives of `h̄`, `mean(1/h)` and `L` with respect to `(h0, h1, h2)`.
///
/// `phi[j] = ∂h̄/∂h_j`, `psi[j] = ∂mean(1/h)/∂h_j`, `lambda[j] = ∂L/∂h_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferentialCoefficients {
    pub phi: [f64; 3],
    pub psi: [f64; 3],
    pub lambda: [f64; 3],
}

/// Closed forms in terms of the ratios `E/K` and `Π/K`.
pub fn differential_coefficients(roots: &RootTriple) -> DifferentialCoefficients {
    let av = ClosedFormAverages::new(roots);
    differential_coefficients_with(roots, &av)
}

pub(crate) fn differential_coefficients_with(
    roots: &RootTriple,
    av: &ClosedFormAverages,
) -> DifferentialCoefficients {
    let [h0, h1, h2] = roots.as_array();
    let ek = av.integrals.e / av.integrals.k;
    let pk = av.integrals.pi / av.integrals.k;
    let (kk, ee) = (av.integrals.k, av.integrals.e);

    let d20 = h2 - h0;
    let d21 = h2 - h1;
    let d10 = h1 - h0;

    let phi = [
        0.5 - d20 / (2.0 * d10) * ek * ek,
        d20 / (2.0 * d21) - d20 / d21 * ek + d20 * d20 / (2.0 * d21 * d10) * ek * ek,
        -d10 / (2.0 * d21) + d20 / d21 * ek - d20 / (2.0 * d21) * ek * ek,
    ];

    let psi = [
        ek / (2.0 * h0 * d10) - pk / (2.0 * h0 * h2) - pk * ek / (2.0 * h2 * d10),
        1.0 / (2.0 * h1 * d21) - d20 / (2.0 * h1 * d21 * d10) * ek - pk / (2.0 * h1 * d21)
            + d20 / (2.0 * h2 * d21 * d10) * pk * ek,
        -1.0 / (2.0 * h2 * d21) + ek / (2.0 * h2 * d21) + h1 / (2.0 * h2 * h2 * d21) * pk
            - pk * ek / (2.0 * h2 * d21),
    ];

    let root_i3 = roots.i3().sqrt();
    let root_d20 = d20.sqrt();
    let scale = 2.0 / 3f64.sqrt();
    let lambda = [
        scale * (root_i3 / (d10 * root_d20) * ee + h1 * h2 / (root_d20 * root_i3) * kk),
        scale
            * (-root_d20 * root_i3 / (d21 * d10) * ee
                + h0 * h2 * h2 / (d21 * root_d20 * root_i3) * kk),
        scale * (root_i3 / (d21 * root_d20) * ee - h0 * h1 * h1 / (d21 * root_d20 * root_i3) * kk),
    ];

    DifferentialCoefficients { phi, psi, lambda }
}
