//! Gravitational reference potentials for a neutron above a plate.
//!
//! Earth: `mₙ g z`, zero at contact. Plate: the magnitude of the Newtonian
//! potential of an equivalent sphere, `G M mₙ / (r + z)`, zero at infinity.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{NeutronSpec, PhysicalConstants};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereSpec {
    /// kg/m³
    pub density: f64,
    /// m
    pub radius: f64,
}

impl SphereSpec {
    pub fn new(density: f64, radius: f64) -> Result<Self> {
        let s = Self { density, radius };
        s.validate()?;
        Ok(s)
    }

    /// Silicon sphere, 2330 kg/m³, radius 11.3 mm.
    pub fn silicon() -> Self {
        Self {
            density: 2330.0,
            radius: 11.3e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.density > 0.0) || !self.density.is_finite() {
            return Err(invalid("density", "must be positive and finite"));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(invalid("radius", "must be positive and finite"));
        }
        Ok(())
    }

    /// kg
    pub fn mass(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius.powi(3) * self.density
    }
}

impl Default for SphereSpec {
    fn default() -> Self {
        Self::silicon()
    }
}

fn check_height(z: f64) -> Result<()> {
    if z >= 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(invalid("z", format!("must be non-negative and finite, got {z}")))
    }
}

/// mₙ g z, J.
pub fn earth_potential(z: f64, spec: &NeutronSpec) -> Result<f64> {
    earth_potential_with(z, spec, &PhysicalConstants::codata2018())
}

pub fn earth_potential_with(z: f64, spec: &NeutronSpec, constants: &PhysicalConstants) -> Result<f64> {
    check_height(z)?;
    spec.validate()?;
    Ok(spec.mass * constants.g_earth * z)
}

/// |−G M mₙ / (r + z)|, J.
pub fn sphere_potential(z: f64, sphere: &SphereSpec, spec: &NeutronSpec) -> Result<f64> {
    sphere_potential_with(z, sphere, spec, &PhysicalConstants::codata2018())
}

pub fn sphere_potential_with(
    z: f64,
    sphere: &SphereSpec,
    spec: &NeutronSpec,
    constants: &PhysicalConstants,
) -> Result<f64> {
    check_height(z)?;
    sphere.validate()?;
    spec.validate()?;
    Ok(constants.big_g * sphere.mass() * spec.mass / (sphere.radius + z))
}
