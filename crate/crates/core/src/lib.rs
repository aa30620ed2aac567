//! Magnetic Casimir–Polder potential of a neutron above a planar half-space.
//!
//! The reflection, Green-tensor and quadrature layers are generic over the
//! scalar type ([`scalar::Real`], implemented for `f32` and `f64`). Potentials
//! carry `ħ²` factors near `1e-68` that underflow `f32`, so [`potential`],
//! [`gravity`] and [`sweep`] work in `f64`; the aliases below fix the generic
//! layers to that precision.

// `!(x > 0.0)` style checks deliberately reject NaN alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod gravity;
pub mod green;
pub mod materials;
pub mod potential;
pub mod quadrature;
pub mod scalar;
pub mod sweep;

pub use constants::{NeutronSpec, PhysicalConstants};
pub use error::{Error, Result};
pub use gravity::SphereSpec;
pub use potential::{FieldConfig, Orientation, PotentialBreakdown, PotentialSolver};
pub use scalar::Real;
pub use sweep::{run_sweep, run_table1, EnergyUnit, OutputColumn, Scale, SweepRequest, SweepTable, Table1};

pub type Material = materials::Material<f64>;
pub type MagneticGreenDiag = green::MagneticGreenDiag<f64>;
pub type MagneticGreenDiagReal = green::MagneticGreenDiag<f64, num_complex::Complex64>;
pub type ReflectionPair = green::ReflectionPair<f64>;
pub type GreenOptions = green::GreenOptions<f64>;
pub type QuadratureConfig = quadrature::QuadratureConfig<f64>;
pub type QuadratureResult = quadrature::QuadratureResult<f64>;
