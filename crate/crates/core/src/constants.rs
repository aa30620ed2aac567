//! Physical constants (SI, CODATA 2018) and the neutron's magnetic parameters.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permeability, N/A².
pub const MU_0: f64 = 1.256_637_062_12e-6;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Neutron mass, kg.
pub const NEUTRON_MASS: f64 = 1.674_927_498_04e-27;
/// Newtonian constant of gravitation, m³/(kg·s²).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
/// Standard acceleration of gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.806_65;

/// Neutron g-factor used throughout (two-significant-digit value).
pub const NEUTRON_G_FACTOR: f64 = -3.8;

/// Version tag written into output headers.
pub const CONSTANT_SET: &str = "CODATA 2018";

/// The constant set every calculation draws from.
///
/// Immutable once built; pass a modified copy to inject alternative values in tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mu0: f64,
    pub eps0: f64,
    pub c: f64,
    pub e: f64,
    pub m_e: f64,
    pub m_n: f64,
    #[serde(rename = "G")]
    pub big_g: f64,
    pub g_earth: f64,
    /// Bohr radius, m. Derived from the other constants so that
    /// `a_bohr = 4π ε₀ ħ² / (m_e e²)` holds to rounding; it agrees with the
    /// tabulated CODATA value 5.29177210903e-11 m to about 1e-9.
    pub a_bohr: f64,
}

impl PhysicalConstants {
    pub fn codata2018() -> Self {
        Self::new(
            HBAR,
            MU_0,
            EPSILON_0,
            SPEED_OF_LIGHT,
            ELEMENTARY_CHARGE,
            ELECTRON_MASS,
            NEUTRON_MASS,
            GRAVITATIONAL_CONSTANT,
            STANDARD_GRAVITY,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn new(hbar: f64, mu0: f64, eps0: f64, c: f64, e: f64, m_e: f64, m_n: f64, big_g: f64, g_earth: f64) -> Self {
        Self {
            hbar,
            mu0,
            eps0,
            c,
            e,
            m_e,
            m_n,
            big_g,
            g_earth,
            a_bohr: 4.0 * PI * eps0 * hbar * hbar / (m_e * e * e),
        }
    }

    /// Fine-structure constant α = e²/(4π c ε₀ ħ).
    pub fn fine_structure(&self) -> f64 {
        self.e * self.e / (4.0 * PI * self.c * self.eps0 * self.hbar)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Magnetic two-level system parameters: g-factor and mass of the particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeutronSpec {
    pub g_factor: f64,
    /// kg
    pub mass: f64,
}

impl NeutronSpec {
    pub fn new(g_factor: f64, mass: f64) -> Result<Self> {
        let spec = Self { g_factor, mass };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(invalid(
                "mass",
                format!("must be positive and finite, got {}", self.mass),
            ));
        }
        if !self.g_factor.is_finite() {
            return Err(invalid("g_factor", "must be finite"));
        }
        Ok(())
    }

    /// Gyromagnetic ratio γₙ = gₙ e / (2 mₙ), rad/(s·T). Negative for the neutron.
    pub fn gamma_n(&self, constants: &PhysicalConstants) -> Result<f64> {
        self.validate()?;
        Ok(self.g_factor * constants.e / (2.0 * self.mass))
    }
}

impl Default for NeutronSpec {
    fn default() -> Self {
        Self {
            g_factor: NEUTRON_G_FACTOR,
            mass: NEUTRON_MASS,
        }
    }
}

/// γₙ with the CODATA constant set.
pub fn gamma_n(spec: &NeutronSpec) -> Result<f64> {
    spec.gamma_n(&PhysicalConstants::codata2018())
}
