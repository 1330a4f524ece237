//! Exact periodic (cnoidal) traveling waves of the SGN equations.
//!
//! In the moving frame `ξ = x − D t` a periodic wave satisfies
//!
//! ```text
//!   h(u − D) = m,     (h')² = F₃(h) = 3 − (6i/m²) h + 6ε h² − (3g/m²) h³
//! ```
//!
//! and `F₃(h) = (3/I₃)(h − h0)(h − h1)(h2 − h)`, so the wave is fixed by the
//! root triple `h0 < h1 < h2`, gravity and the sign of the mass flux `m`.
//! The depth oscillates between `h1` and `h2`:
//!
//! ```text
//!   h(ξ) = h1 + (h2 − h1) cn²(αξ; k),   α² = (3/4)(h2 − h0)/(h0 h1 h2),   k² = (h2 − h1)/(h2 − h0)
//! ```

use std::fmt;
use std::str::FromStr;

use crate::elliptic::{CompleteIntegrals, EllipticModulus};
use crate::error::{Error, Result};
use crate::jacobi::sn_cn_dn;
use crate::quadrature;

/// Roots closer than this fraction of `h2` are treated as coincident.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Relative tolerance of the singularity-aware averaging quadrature.
pub const AVERAGE_TOL: f64 = 1e-12;

/// The three real roots `0 < h0 < h1 < h2` of the oscillation cubic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    h0: f64,
    h1: f64,
    h2: f64,
}

impl RootTriple {
    pub fn new(h0: f64, h1: f64, h2: f64) -> Result<Self> {
        if !(h0.is_finite() && h1.is_finite() && h2.is_finite()) {
            return Err(Error::InvalidRoots("roots must be finite".into()));
        }
        if h0 <= 0.0 {
            return Err(Error::InvalidRoots(format!(
                "roots must be positive (h0 = {h0})"
            )));
        }
        if !(h0 < h1 && h1 < h2) {
            return Err(Error::InvalidRoots(format!(
                "roots must satisfy h0 < h1 < h2 (got {h0}, {h1}, {h2})"
            )));
        }
        let floor = DEGENERACY_TOL * h2;
        if h1 - h0 <= floor {
            return Err(Error::DegenerateRoots(format!(
                "h1 − h0 = {:e} is below {floor:e} (solitary-wave limit)",
                h1 - h0
            )));
        }
        if h2 - h1 <= floor {
            return Err(Error::DegenerateRoots(format!(
                "h2 − h1 = {:e} is below {floor:e} (zero-amplitude limit)",
                h2 - h1
            )));
        }
        Ok(Self { h0, h1, h2 })
    }

    /// `h0 = 1, h1 = s, h2 = s + τ`.
    pub fn from_s_tau(s: f64, tau: f64) -> Result<Self> {
        Self::new(1.0, s, s + tau)
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn h2(&self) -> f64 {
        self.h2
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.h0, self.h1, self.h2]
    }

    /// Multiplies every root by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.h0 * factor, self.h1 * factor, self.h2 * factor)
    }

    pub fn i1(&self) -> f64 {
        self.h0 + self.h1 + self.h2
    }

    pub fn i2(&self) -> f64 {
        self.h0 * self.h1 + self.h1 * self.h2 + self.h0 * self.h2
    }

    pub fn i3(&self) -> f64 {
        self.h0 * self.h1 * self.h2
    }

    pub fn modulus(&self) -> EllipticModulus {
        EllipticModulus::from_roots(self.h0, self.h1, self.h2)
    }

    /// `P₃(h) = (h − h0)(h − h1)(h2 − h)`.
    pub fn p3(&self, h: f64) -> f64 {
        (h - self.h0) * (h - self.h1) * (self.h2 - h)
    }
}

/// Sign of the mass flux `m`; negative `m` is a right-facing wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MassFluxSign {
    Negative,
    Positive,
}

impl MassFluxSign {
    pub fn value(self) -> f64 {
        match self {
            MassFluxSign::Negative => -1.0,
            MassFluxSign::Positive => 1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            MassFluxSign::Negative => MassFluxSign::Positive,
            MassFluxSign::Positive => MassFluxSign::Negative,
        }
    }

    pub fn from_i32(v: i32) -> Result<Self> {
        match v {
            -1 => Ok(MassFluxSign::Negative),
            1 => Ok(MassFluxSign::Positive),
            _ => Err(Error::InvalidParameter(format!(
                "sign of m must be -1 or 1, got {v}"
            ))),
        }
    }
}

impl fmt::Display for MassFluxSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value() as i32)
    }
}

impl FromStr for MassFluxSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-1" | "-" | "negative" => Ok(MassFluxSign::Negative),
            "1" | "+1" | "+" | "positive" => Ok(MassFluxSign::Positive),
            other => Err(Error::InvalidParameter(format!(
                "sign of m must be -1 or 1, got '{other}'"
            ))),
        }
    }
}

/// Integration constants of the traveling-wave ODE and the Vieta invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveConstants {
    pub g: f64,
    /// Mass flux `h(u − D)`, signed.
    pub m: f64,
    /// Momentum constant: `p = i − m²/h`.
    pub i: f64,
    pub epsilon: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub sign: MassFluxSign,
}

impl WaveConstants {
    /// `m² = g I₃`, `i = g I₂ / 2`, `ε = I₁ / (2 I₃)`.
    pub fn from_roots(roots: &RootTriple, g: f64, sign: MassFluxSign) -> Result<Self> {
        check_gravity(g)?;
        let (i1, i2, i3) = (roots.i1(), roots.i2(), roots.i3());
        Ok(Self {
            g,
            m: sign.value() * (g * i3).sqrt(),
            i: 0.5 * g * i2,
            epsilon: 0.5 * i1 / i3,
            i1,
            i2,
            i3,
            sign,
        })
    }

    /// `F₃(h) = 3 − (6i/m²) h + 6ε h² − (3g/m²) h³`.
    pub fn oscillation_rhs(&self, h: f64) -> f64 {
        let m2 = self.m * self.m;
        3.0 - 6.0 * self.i / m2 * h + 6.0 * self.epsilon * h * h - 3.0 * self.g / m2 * h * h * h
    }

    /// `dF₃/dh`.
    pub fn oscillation_rhs_derivative(&self, h: f64) -> f64 {
        let m2 = self.m * self.m;
        -6.0 * self.i / m2 + 12.0 * self.epsilon * h - 9.0 * self.g / m2 * h * h
    }

    /// Depth-averaged velocity on the wave: `u = m/h + D`.
    pub fn velocity(&self, h: f64, phase_speed: f64) -> f64 {
        self.m / h + phase_speed
    }
}

pub(crate) fn check_gravity(g: f64) -> Result<()> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gravity must be positive, got {g}"
        )));
    }
    Ok(())
}

/// `F₃(h)`, see [`WaveConstants::oscillation_rhs`].
pub fn oscillation_rhs(h: f64, constants: &WaveConstants) -> f64 {
    constants.oscillation_rhs(h)
}

/// `u = m/h + D`.
pub fn velocity_from_depth(h: f64, constants: &WaveConstants, phase_speed: f64) -> f64 {
    constants.velocity(h, phase_speed)
}

/// Closed-form period averages and wavelength of the wave with these roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormAverages {
    pub modulus: EllipticModulus,
    pub integrals: CompleteIntegrals,
    /// `h̄ = h0 + (h2 − h0) E/K`.
    pub h_mean: f64,
    /// `mean(1/h) = Π(n,k) / (h2 K)`.
    pub h_inv_mean: f64,
    /// `L = 4 √(I₃/3) K / √(h2 − h0)`.
    pub wavelength: f64,
}

impl ClosedFormAverages {
    pub fn new(roots: &RootTriple) -> Self {
        let modulus = roots.modulus();
        let integrals = CompleteIntegrals::at(&modulus);
        let (h0, h2) = (roots.h0, roots.h2);
        Self {
            modulus,
            integrals,
            h_mean: h0 + (h2 - h0) * integrals.e / integrals.k,
            h_inv_mean: integrals.pi / (h2 * integrals.k),
            wavelength: 4.0 * (roots.i3() / 3.0).sqrt() * integrals.k / (h2 - h0).sqrt(),
        }
    }
}

pub fn wavelength(roots: &RootTriple) -> f64 {
    ClosedFormAverages::new(roots).wavelength
}

pub fn averaged_h(roots: &RootTriple) -> f64 {
    ClosedFormAverages::new(roots).h_mean
}

pub fn averaged_hinv(roots: &RootTriple) -> f64 {
    ClosedFormAverages::new(roots).h_inv_mean
}

/// Period average of `f(h)` over the wave with these roots, by quadrature.
///
/// ```text
///   mean f = ∫ f / √P₃ dh  /  ∫ 1 / √P₃ dh      over [h1, h2]
/// ```
///
/// With `h = h1 + (h2 − h1) sin²φ` the weight `dh/√P₃` becomes
/// `2 dφ / √(h − h0)`, which is smooth on `[0, π/2]`.
pub fn average<F: Fn(f64) -> f64>(f: F, roots: &RootTriple) -> Result<f64> {
    let (h0, h1, span) = (roots.h0, roots.h1, roots.h2 - roots.h1);
    let depth = |phi: f64| h1 + span * phi.sin().powi(2);
    let den = quadrature::integrate(
        |phi| 1.0 / (depth(phi) - h0).sqrt(),
        0.0,
        std::f64::consts::FRAC_PI_2,
        AVERAGE_TOL,
    )?;
    let num = quadrature::integrate(
        |phi| {
            let h = depth(phi);
            f(h) / (h - h0).sqrt()
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        AVERAGE_TOL,
    )?;
    Ok(num / den)
}

/// `2 ∫ dh / √F₃(h)` over `[h1, h2]` by the same substitution as [`average`].
pub fn wavelength_by_quadrature(roots: &RootTriple) -> Result<f64> {
    let (h0, h1, span) = (roots.h0, roots.h1, roots.h2 - roots.h1);
    let half = quadrature::integrate(
        |phi| 2.0 / (h1 + span * phi.sin().powi(2) - h0).sqrt(),
        0.0,
        std::f64::consts::FRAC_PI_2,
        AVERAGE_TOL,
    )?;
    Ok(2.0 * (roots.i3() / 3.0).sqrt() * half)
}

/// A fully specified cnoidal wave: roots, constants and phase speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnoidalWave {
    pub roots: RootTriple,
    pub constants: WaveConstants,
    pub averages: ClosedFormAverages,
    /// Spatial rate `α` in `cn(αξ; k)`.
    pub alpha: f64,
    pub wavelength: f64,
    /// Phase speed `D`.
    pub phase_speed: f64,
}

impl CnoidalWave {
    /// The wave whose mass-weighted mean velocity vanishes: `D = −m/h̄`.
    pub fn at_rest(roots: RootTriple, g: f64, sign: MassFluxSign) -> Result<Self> {
        let constants = WaveConstants::from_roots(&roots, g, sign)?;
        let averages = ClosedFormAverages::new(&roots);
        let d = -constants.m / averages.h_mean;
        Ok(Self::assemble(roots, constants, averages, d))
    }

    pub fn with_phase_speed(
        roots: RootTriple,
        g: f64,
        sign: MassFluxSign,
        phase_speed: f64,
    ) -> Result<Self> {
        if !phase_speed.is_finite() {
            return Err(Error::InvalidParameter("phase speed must be finite".into()));
        }
        let constants = WaveConstants::from_roots(&roots, g, sign)?;
        let averages = ClosedFormAverages::new(&roots);
        Ok(Self::assemble(roots, constants, averages, phase_speed))
    }

    fn assemble(
        roots: RootTriple,
        constants: WaveConstants,
        averages: ClosedFormAverages,
        phase_speed: f64,
    ) -> Self {
        let alpha = (0.75 * (roots.h2 - roots.h0) / roots.i3()).sqrt();
        Self {
            roots,
            constants,
            averages,
            alpha,
            wavelength: averages.wavelength,
            phase_speed,
        }
    }

    pub fn k(&self) -> f64 {
        self.averages.modulus.k
    }

    pub fn n(&self) -> f64 {
        self.averages.modulus.n
    }

    /// Mass-weighted mean velocity `U = m/h̄ + D`.
    pub fn mean_velocity(&self) -> f64 {
        self.constants.m / self.averages.h_mean + self.phase_speed
    }

    /// Depth at moving coordinate `ξ`, crest at `ξ = 0`.
    pub fn profile(&self, xi: f64) -> f64 {
        // cn² has period 2K in its argument, i.e. L in ξ.
        let reduced = xi - self.wavelength * (xi / self.wavelength).floor();
        let (_, cn, _) = sn_cn_dn(self.alpha * reduced, self.averages.modulus.kc2);
        let (h1, h2) = (self.roots.h1, self.roots.h2);
        (h1 + (h2 - h1) * cn * cn).clamp(h1, h2)
    }

    /// `dh/dξ` from the closed form, `−2α(h2 − h1) sn cn dn`.
    pub fn profile_slope(&self, xi: f64) -> f64 {
        let reduced = xi - self.wavelength * (xi / self.wavelength).floor();
        let (sn, cn, dn) = sn_cn_dn(self.alpha * reduced, self.averages.modulus.kc2);
        -2.0 * self.alpha * (self.roots.h2 - self.roots.h1) * sn * cn * dn
    }

    pub fn velocity(&self, h: f64) -> f64 {
        self.constants.velocity(h, self.phase_speed)
    }

    /// Pointwise densities and fluxes of the SGN conservation laws on the wave,
    /// written as functions of the local depth.
    pub fn local_quantities(&self, h: f64) -> LocalQuantities {
        let c = &self.constants;
        let u = self.velocity(h);
        let slope2 = c.oscillation_rhs(h).max(0.0);
        let curvature = 0.5 * c.oscillation_rhs_derivative(h);
        // D²h/Dt² = (m²/h)(h'/h)' and Dh/Dt = m h'/h.
        let accel = c.m * c.m / h * (curvature / h - slope2 / (h * h));
        let p = 0.5 * c.g * h * h + h * h * accel / 3.0;
        let material2 = c.m * c.m * slope2 / (h * h);
        let e = 0.5 * u * u + 0.5 * c.g * h + material2 / 6.0;
        LocalQuantities {
            h,
            u,
            pressure: p,
            energy: e,
            mass_flux: h * u,
            momentum_flux: h * u * u + p,
            energy_density: h * e,
            energy_flux: h * u * e + p * u,
        }
    }
}

/// Values of `u, p, e` and the conservation-law densities at one depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalQuantities {
    pub h: f64,
    pub u: f64,
    pub pressure: f64,
    pub energy: f64,
    pub mass_flux: f64,
    pub momentum_flux: f64,
    pub energy_density: f64,
    pub energy_flux: f64,
}
