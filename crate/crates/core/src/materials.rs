//! Dielectric response of the half-space.
//!
//! All models are written for real angular frequency ω and continued to the
//! imaginary axis ω = iξ:
//!
//! | model          | ε(ω)                    | ε(iξ)                   |
//! |----------------|-------------------------|-------------------------|
//! | plasma         | 1 − ωₚ²/ω²              | 1 + ωₚ²/ξ²              |
//! | Drude          | 1 − ωₚ²/[ω(ω + iγ)]     | 1 + ωₚ²/[ξ(ξ + γ)]      |
//! | Drude–Lorentz  | 1 + ωₚ²/(ω_T² − ω²)     | 1 + ωₚ²/(ξ² + ω_T²)     |
//!
//! A perfect conductor has no finite permittivity and is handled by its
//! reflection coefficients in [`crate::green`].

use num_complex::Complex;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Material<T> {
    PerfectConductor,
    Plasma { omega_p: T },
    Drude { omega_p: T, gamma: T },
    DrudeLorentz { omega_p: T, omega_t: T },
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

impl<T: Real> Material<T> {
    pub fn plasma(omega_p: T) -> Result<Self> {
        let m = Material::Plasma { omega_p };
        m.validate()?;
        Ok(m)
    }

    pub fn drude(omega_p: T, gamma: T) -> Result<Self> {
        let m = Material::Drude { omega_p, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn drude_lorentz(omega_p: T, omega_t: T) -> Result<Self> {
        let m = Material::DrudeLorentz { omega_p, omega_t };
        m.validate()?;
        Ok(m)
    }

    /// Gold in the plasma model, ωₚ = 1.37e16 rad/s.
    pub fn gold_plasma() -> Self {
        Material::Plasma {
            omega_p: T::lit(1.37e16),
        }
    }

    /// Gold in the Drude model, ωₚ = 1.37e16 rad/s, γ = 4.10e12 rad/s.
    pub fn gold_drude() -> Self {
        Material::Drude {
            omega_p: T::lit(1.37e16),
            gamma: T::lit(4.10e12),
        }
    }

    /// Silicon as a single-resonance Drude–Lorentz medium, ωₚ = 2.3e16 rad/s, ω_T = 7.1e16 rad/s.
    pub fn silicon_drude_lorentz() -> Self {
        Material::DrudeLorentz {
            omega_p: T::lit(2.3e16),
            omega_t: T::lit(7.1e16),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Material::PerfectConductor => Ok(()),
            Material::Plasma { omega_p } => positive("omega_p", omega_p),
            Material::Drude { omega_p, gamma } => {
                positive("omega_p", omega_p)?;
                positive("gamma", gamma)
            }
            Material::DrudeLorentz { omega_p, omega_t } => {
                positive("omega_p", omega_p)?;
                positive("omega_t", omega_t)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Material::PerfectConductor => "pc",
            Material::Plasma { .. } => "plasma",
            Material::Drude { .. } => "drude",
            Material::DrudeLorentz { .. } => "drude-lorentz",
        }
    }

    pub fn is_perfect_conductor(&self) -> bool {
        matches!(self, Material::PerfectConductor)
    }

    /// ε(iξ) for ξ > 0.
    pub fn permittivity_imag(&self, xi: T) -> Result<T> {
        if !(xi > T::zero()) {
            return Err(Error::Domain {
                quantity: "xi",
                value: xi.as_f64(),
                reason: "imaginary frequency must be positive",
            });
        }
        match self {
            Material::PerfectConductor => Err(Error::UnsupportedModel),
            _ => Ok(T::one() + self.susceptibility_weight(xi) / (xi * xi)),
        }
    }

    /// ξ²·[ε(iξ) − 1], rad²/s².
    ///
    /// Finite at ξ = 0, where it gives the static limit: ωₚ² for the plasma
    /// model and zero for the Drude and Drude–Lorentz models. Zero for a
    /// perfect conductor, which never reaches this code path.
    pub fn susceptibility_weight(&self, xi: T) -> T {
        match *self {
            Material::PerfectConductor => T::zero(),
            Material::Plasma { omega_p } => omega_p * omega_p,
            Material::Drude { omega_p, gamma } => xi * omega_p * omega_p / (xi + gamma),
            Material::DrudeLorentz { omega_p, omega_t } => {
                let xi2 = xi * xi;
                xi2 * omega_p * omega_p / (xi2 + omega_t * omega_t)
            }
        }
    }

    /// 1/ε(iξ), finite for ξ ≥ 0 (zero in the static limit of a conductor).
    pub fn inverse_permittivity_imag(&self, xi: T) -> T {
        match *self {
            Material::PerfectConductor => T::zero(),
            Material::Plasma { omega_p } => {
                let xi2 = xi * xi;
                xi2 / (xi2 + omega_p * omega_p)
            }
            Material::Drude { omega_p, gamma } => {
                let d = xi * (xi + gamma);
                d / (d + omega_p * omega_p)
            }
            Material::DrudeLorentz { omega_p, omega_t } => {
                let d = xi * xi + omega_t * omega_t;
                d / (d + omega_p * omega_p)
            }
        }
    }

    /// ε(ω) on the real axis, ω > 0.
    ///
    /// The Drude permittivity diverges as −ωₚ²/(iγω) for ω → 0⁺; only ω > 0 is accepted.
    pub fn permittivity_real(&self, omega: T) -> Result<Complex<T>> {
        if !(omega > T::zero()) {
            return Err(Error::Domain {
                quantity: "omega",
                value: omega.as_f64(),
                reason: "real frequency must be positive",
            });
        }
        let one = Complex::new(T::one(), T::zero());
        match *self {
            Material::PerfectConductor => Err(Error::UnsupportedModel),
            Material::Plasma { omega_p } => Ok(Complex::new(T::one() - (omega_p / omega).powi(2), T::zero())),
            Material::Drude { omega_p, gamma } => {
                let denom = Complex::new(omega, T::zero()) * Complex::new(omega, gamma);
                Ok(one - Complex::new(omega_p * omega_p, T::zero()) / denom)
            }
            Material::DrudeLorentz { omega_p, omega_t } => {
                let denom = omega_t * omega_t - omega * omega;
                if denom == T::zero() {
                    return Err(Error::Singularity { omega: omega.as_f64() });
                }
                Ok(Complex::new(T::one() + omega_p * omega_p / denom, T::zero()))
            }
        }
    }
}

/// Longitudinal frequency ω_L = sqrt(ω_T² + ωₚ²/2) of a Drude–Lorentz medium.
pub fn longitudinal_frequency<T: Real>(omega_t: T, omega_p: T) -> Result<T> {
    if !(omega_t >= T::zero()) {
        return Err(invalid("omega_t", "must be non-negative"));
    }
    if !(omega_p >= T::zero()) {
        return Err(invalid("omega_p", "must be non-negative"));
    }
    Ok((omega_t * omega_t + T::lit(0.5) * omega_p * omega_p).sqrt())
}
