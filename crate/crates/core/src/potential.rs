//! Casimir–Polder potential of the neutron spin doublet above a half-space.
//!
//! With `m₀ = ħ|γₙ|/2`, `ω = |γₙ| B` and the diagonal magnetic Green tensor
//! `(h_xx, h_xx, h_zz)` from [`crate::green`], the components are
//!
//! ```text
//! U↓↓ = U↑↑ = (μ₀/2) m₀² [sin²ϑ h_xx(0) + cos²ϑ h_zz(0)]
//! U↓↑       = (μ₀/π) m₀² ∫₀^∞ dξ ω/(ξ² + ω²) [(1 + cos²ϑ) h_xx(iξ) + sin²ϑ h_zz(iξ)]
//! U↑↓       = −U↓↑ + μ₀ m₀² [(1 + cos²ϑ) Re h_xx(ω) + sin²ϑ Re h_zz(ω)]
//! ```
//!
//! The spin-down state is the ground state: `U↓ = U↓↓ + U↓↑`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{NeutronSpec, PhysicalConstants};
use crate::error::{invalid, Error, Result};
use crate::green::{contracted_green_imag, magnetic_green_diag_real_with, GreenOptions, ImaginaryResponse};
use crate::materials::{longitudinal_frequency, Material};
use crate::quadrature::{integrate, integrate_semi_infinite, QuadratureConfig};

/// Direction of the external field relative to the surface normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Tilt angle ϑ ∈ [0, π], rad.
    Angle(f64),
    /// Uniform average over all field directions on the sphere.
    Average,
}

/// `cos²ϑ` and `sin²ϑ`, or their sphere averages 1/3 and 2/3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularWeights {
    pub cos2: f64,
    pub sin2: f64,
}

impl AngularWeights {
    /// cos 2ϑ
    pub fn cos_double(&self) -> f64 {
        self.cos2 - self.sin2
    }
}

impl Orientation {
    pub fn weights(&self) -> AngularWeights {
        match *self {
            Orientation::Angle(theta) => {
                let c = theta.cos();
                let s = theta.sin();
                AngularWeights {
                    cos2: c * c,
                    sin2: s * s,
                }
            }
            Orientation::Average => AngularWeights {
                cos2: 1.0 / 3.0,
                sin2: 2.0 / 3.0,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldConfig {
    /// T
    pub b_ext: f64,
    pub orientation: Orientation,
}

impl FieldConfig {
    pub fn new(b_ext: f64, theta: f64) -> Result<Self> {
        let f = Self {
            b_ext,
            orientation: Orientation::Angle(theta),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn averaged(b_ext: f64) -> Result<Self> {
        let f = Self {
            b_ext,
            orientation: Orientation::Average,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b_ext >= 0.0) || !self.b_ext.is_finite() {
            return Err(invalid(
                "b_ext",
                format!("must be non-negative and finite, got {}", self.b_ext),
            ));
        }
        if let Orientation::Angle(theta) = self.orientation {
            if !(0.0..=PI).contains(&theta) {
                return Err(invalid("theta", format!("must lie in [0, π], got {theta}")));
            }
        }
        Ok(())
    }

    /// Transition frequency ω↑↓ = |γₙ| B, rad/s.
    pub fn transition_frequency(&self, spec: &NeutronSpec, constants: &PhysicalConstants) -> Result<f64> {
        Ok(spec.gamma_n(constants)?.abs() * self.b_ext)
    }
}

/// Spin matrix elements of the magnetic moment, A·m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleMatrixElements {
    /// ⟨↑|m|↑⟩ = −⟨↓|m|↓⟩
    pub m_uu: [f64; 3],
    /// ⟨↑|m|↓⟩ = ⟨↓|m|↑⟩*
    pub m_ud: [Complex64; 3],
}

impl DipoleMatrixElements {
    pub fn m_dd(&self) -> [f64; 3] {
        self.m_uu.map(|c| -c)
    }

    pub fn m_du(&self) -> [Complex64; 3] {
        self.m_ud.map(|c| c.conj())
    }
}

pub fn dipole_elements(spec: &NeutronSpec, theta: f64, constants: &PhysicalConstants) -> Result<DipoleMatrixElements> {
    let m0 = constants.hbar * spec.gamma_n(constants)? / 2.0;
    let (s, c) = theta.sin_cos();
    Ok(DipoleMatrixElements {
        m_uu: [m0 * s, 0.0, m0 * c],
        m_ud: [
            Complex64::new(m0 * c, 0.0),
            Complex64::new(0.0, -m0),
            Complex64::new(-m0 * s, 0.0),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialBreakdown {
    /// m
    pub z: f64,
    /// U↓↓ = U↑↑, J
    pub u_dd: f64,
    /// U↓↑, J
    pub u_du: f64,
    /// Resonant part of U↑↓, J
    pub u_resonant: f64,
    /// U↓ = U↓↓ + U↓↑, J
    pub u_ground: f64,
    /// U↑ = U↑↑ − U↓↑ + resonant, J
    pub u_excited: f64,
}

/// Evaluates potentials for one material and one neutron at configurable accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSolver {
    pub constants: PhysicalConstants,
    pub neutron: NeutronSpec,
    pub material: Material<f64>,
    /// Relative tolerance of the frequency integral.
    pub rel_tol: f64,
    pub green: GreenOptions<f64>,
    pub max_evaluations: usize,
}

impl PotentialSolver {
    pub fn new(material: Material<f64>) -> Self {
        Self {
            constants: PhysicalConstants::codata2018(),
            neutron: NeutronSpec::default(),
            material,
            rel_tol: 1e-9,
            green: GreenOptions::default(),
            max_evaluations: 1_000_000,
        }
    }

    pub fn with_neutron(mut self, neutron: NeutronSpec) -> Self {
        self.neutron = neutron;
        self
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.green.rel_tol = (rel_tol * 1e-3).clamp(1e-13, 1e-10);
        self
    }

    fn check(&self, z: f64, field: &FieldConfig) -> Result<()> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::Domain {
                quantity: "z",
                value: z,
                reason: "distance must be positive and finite",
            });
        }
        field.validate()?;
        self.material.validate()?;
        self.neutron.validate()
    }

    /// m₀² = (ħγₙ/2)², A²·m⁴.
    fn moment_sq(&self) -> Result<f64> {
        let m0 = self.constants.hbar * self.neutron.gamma_n(&self.constants)? / 2.0;
        Ok(m0 * m0)
    }

    /// ħ²γₙ²μ₀, the prefactor shared by all closed forms.
    pub fn prefactor(&self) -> Result<f64> {
        Ok(4.0 * self.moment_sq()? * self.constants.mu0)
    }

    pub fn transition_frequency(&self, field: &FieldConfig) -> Result<f64> {
        field.transition_frequency(&self.neutron, &self.constants)
    }

    fn static_contraction(&self, z: f64, w_xx: f64, w_zz: f64) -> Result<f64> {
        let resp = ImaginaryResponse::new(&self.material, 0.0);
        Ok(contracted_green_imag(&resp, z, 0.0, w_xx, w_zz, &self.green)?.0)
    }

    pub fn u_dd(&self, z: f64, field: &FieldConfig) -> Result<f64> {
        self.check(z, field)?;
        let w = field.orientation.weights();
        let h = self.static_contraction(z, w.sin2, w.cos2)?;
        Ok(0.5 * self.constants.mu0 * self.moment_sq()? * h)
    }

    pub fn u_du(&self, z: f64, field: &FieldConfig) -> Result<f64> {
        self.check(z, field)?;
        let w = field.orientation.weights();
        let (w_xx, w_zz) = (1.0 + w.cos2, w.sin2);
        let omega = self.transition_frequency(field)?;
        let scale = self.constants.mu0 * self.moment_sq()?;

        // ω → 0: the Lorentzian tends to (π/2)·δ(ξ) on the half line.
        if omega == 0.0 {
            return Ok(0.5 * scale * self.static_contraction(z, w_xx, w_zz)?);
        }

        let mut failure: Option<Error> = None;
        let green = self.green;
        let material = self.material;
        let integrand = |xi: f64| {
            if failure.is_some() {
                return 0.0;
            }
            let resp = ImaginaryResponse::new(&material, xi);
            match contracted_green_imag(&resp, z, xi, w_xx, w_zz, &green) {
                Ok((h, _)) => omega / (xi * xi + omega * omega) * h,
                Err(e) => {
                    failure = Some(e);
                    f64::NAN
                }
            }
        };
        let first = omega.min(self.constants.c / (2.0 * z)) / 16.0;
        let cfg = QuadratureConfig {
            rel_tol: self.rel_tol,
            abs_tol: 0.0,
            max_evaluations: self.max_evaluations,
            decay_scale: first,
        };
        let result = integrate_semi_infinite(integrand, &cfg);
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(scale / PI * result.into_result()?)
    }

    /// Resonant part of U↑↓, from the real-frequency tensor at ω↑↓.
    ///
    /// At B = 0 the static tensor is used (the ω → 0 limit).
    pub fn u_resonant(&self, z: f64, field: &FieldConfig) -> Result<f64> {
        self.check(z, field)?;
        let w = field.orientation.weights();
        let (w_xx, w_zz) = (1.0 + w.cos2, w.sin2);
        let omega = self.transition_frequency(field)?;
        let scale = self.constants.mu0 * self.moment_sq()?;
        if omega == 0.0 {
            return Ok(scale * self.static_contraction(z, w_xx, w_zz)?);
        }
        let h = magnetic_green_diag_real_with(&self.material, z, omega, &self.green)?;
        Ok(scale * (w_xx * h.h_xx.re + w_zz * h.h_zz.re))
    }

    /// U↓ = U↓↓ + U↓↑ without the excited-state resonant term.
    pub fn u_ground(&self, z: f64, field: &FieldConfig) -> Result<f64> {
        Ok(self.u_dd(z, field)? + self.u_du(z, field)?)
    }

    pub fn ground_state_potential(&self, z: f64, field: &FieldConfig) -> Result<PotentialBreakdown> {
        let u_dd = self.u_dd(z, field)?;
        let u_du = self.u_du(z, field)?;
        let u_resonant = self.u_resonant(z, field)?;
        Ok(PotentialBreakdown {
            z,
            u_dd,
            u_du,
            u_resonant,
            u_ground: u_dd + u_du,
            u_excited: u_dd - u_du + u_resonant,
        })
    }

    /// Leading non-retarded ground-state potential for small fields.
    ///
    /// The Drude–Lorentz form is the orientation average; the Drude form keeps
    /// its (2 + sin²ϑ) dependence. The Drude expansion needs |γₙ|B/γ < 1.
    pub fn nonretarded_leading(&self, z: f64, field: &FieldConfig) -> Result<f64> {
        self.check(z, field)?;
        let p = self.prefactor()?;
        let c2 = self.constants.c * self.constants.c;
        let omega = self.transition_frequency(field)?;
        Ok(match self.material {
            Material::PerfectConductor => p / (64.0 * PI * z.powi(3)),
            Material::Plasma { omega_p } => p * omega_p * omega_p / (128.0 * PI * c2 * z),
            Material::Drude { omega_p, gamma } => {
                let x = omega / gamma;
                if x >= 1.0 {
                    return Err(Error::Domain {
                        quantity: "|gamma_n| B / gamma",
                        value: x,
                        reason: "leading-order Drude expansion needs a ratio below 1",
                    });
                }
                if x == 0.0 {
                    return Ok(0.0);
                }
                let sin2 = field.orientation.weights().sin2;
                -p * omega_p * omega_p * (2.0 + sin2) / (256.0 * PI * PI * c2 * z) * x * x.ln()
            }
            Material::DrudeLorentz { omega_p, omega_t } => {
                let omega_l = longitudinal_frequency(omega_t, omega_p)?;
                p * omega_p * omega_p / (192.0 * PI * c2) * (omega_t + omega_l) / (omega_t * omega_l) * omega / z
            }
        })
    }

    /// Non-retarded critical distance c/ω↑↓, m (+∞ at zero field).
    pub fn critical_distance(&self, field: &FieldConfig) -> Result<f64> {
        let omega = self.transition_frequency(field)?;
        Ok(if omega == 0.0 {
            f64::INFINITY
        } else {
            self.constants.c / omega
        })
    }
}

pub fn u_dd(z: f64, field: &FieldConfig, material: &Material<f64>, spec: &NeutronSpec) -> Result<f64> {
    PotentialSolver::new(*material).with_neutron(*spec).u_dd(z, field)
}

pub fn u_du(z: f64, field: &FieldConfig, material: &Material<f64>, spec: &NeutronSpec) -> Result<f64> {
    PotentialSolver::new(*material).with_neutron(*spec).u_du(z, field)
}

pub fn u_resonant(z: f64, field: &FieldConfig, material: &Material<f64>, spec: &NeutronSpec) -> Result<f64> {
    PotentialSolver::new(*material).with_neutron(*spec).u_resonant(z, field)
}

pub fn ground_state_potential(
    z: f64,
    field: &FieldConfig,
    material: &Material<f64>,
    spec: &NeutronSpec,
) -> Result<PotentialBreakdown> {
    PotentialSolver::new(*material)
        .with_neutron(*spec)
        .ground_state_potential(z, field)
}

pub fn nonretarded_leading(material: &Material<f64>, field: &FieldConfig, spec: &NeutronSpec, z: f64) -> Result<f64> {
    PotentialSolver::new(*material)
        .with_neutron(*spec)
        .nonretarded_leading(z, field)
}

pub fn critical_distance(field: &FieldConfig, spec: &NeutronSpec) -> Result<f64> {
    PotentialSolver::new(Material::PerfectConductor)
        .with_neutron(*spec)
        .critical_distance(field)
}

/// Average of `f(ϑ)` over field directions uniformly distributed on the sphere.
pub fn orientation_average<F: FnMut(f64) -> f64>(mut f: F) -> f64 {
    let cfg = QuadratureConfig::default().with_rel_tol(1e-12);
    0.5 * integrate(|t: f64| f(t) * t.sin(), 0.0, PI, &cfg).value
}

/// Atomic van der Waals coefficient C₃ᴬ = ⟨d²⟩/(48π ε₀), J·m³.
pub fn atomic_c3(d_squared: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(d_squared > 0.0) {
        return Err(invalid("d_squared", "must be positive"));
    }
    Ok(d_squared / (48.0 * PI * constants.eps0))
}

/// Neutron coefficient C₃ᴺ = ħ²γₙ²μ₀/(64π), J·m³.
pub fn neutron_c3(spec: &NeutronSpec, constants: &PhysicalConstants) -> Result<f64> {
    let g = spec.gamma_n(constants)?;
    Ok(constants.hbar.powi(2) * g * g * constants.mu0 / (64.0 * PI))
}

/// C₃ᴺ/C₃ᴬ = (3/16) gₙ² (mₑ/mₙ)² α² for ⟨d²⟩ = e² a_B².
pub fn c3_ratio(spec: &NeutronSpec, constants: &PhysicalConstants) -> Result<f64> {
    spec.validate()?;
    let alpha = constants.fine_structure();
    let mass_ratio = constants.m_e / spec.mass;
    Ok(3.0 / 16.0 * spec.g_factor.powi(2) * mass_ratio.powi(2) * alpha.powi(2))
}

/// Local exponent d ln|u| / d ln z by a centred difference with log-step 1e-3.
pub fn local_power_law<F>(z: f64, mut u: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(z > 0.0) {
        return Err(invalid("z", "must be positive"));
    }
    let h: f64 = 1e-3;
    let centre = u(z)?;
    if centre == 0.0 {
        return Err(Error::Undefined(format!("potential vanishes at z = {z:e}")));
    }
    let up = u(z * h.exp())?;
    let down = u(z * (-h).exp())?;
    if up == 0.0 || down == 0.0 {
        return Err(Error::Undefined(format!("potential vanishes near z = {z:e}")));
    }
    Ok((up.abs().ln() - down.abs().ln()) / (2.0 * h))
}

/// Closed forms for a perfectly reflecting plate (`r_s = −1`, `r_p = +1`).
pub mod perfect_conductor {
    use super::*;

    /// f(x) = 5 + 10x + 12x²
    pub fn f(x: f64) -> f64 {
        5.0 + 10.0 * x + 12.0 * x * x
    }

    /// g(x) = −1 − 2x + 4x²
    pub fn g(x: f64) -> f64 {
        -1.0 - 2.0 * x + 4.0 * x * x
    }

    pub fn u_dd(solver: &PotentialSolver, z: f64, field: &FieldConfig) -> Result<f64> {
        let w = field.orientation.weights();
        Ok(solver.prefactor()? * (1.0 + w.cos2) / (256.0 * PI * z.powi(3)))
    }

    /// U↓↑ as a single frequency integral over the polynomials `f` and `g`.
    pub fn u_du(solver: &PotentialSolver, z: f64, field: &FieldConfig) -> Result<f64> {
        let c2t = field.orientation.weights().cos_double();
        let omega = solver.transition_frequency(field)?;
        let p = solver.prefactor()?;
        if omega == 0.0 {
            return u_du_nonretarded(solver, z, field);
        }
        let c = solver.constants.c;
        // ξ = (c/z)·x
        let y = omega * z / c;
        let integrand = |x: f64| y / (x * x + y * y) * (f(x) + c2t * g(x)) * (-2.0 * x).exp();
        let cfg = QuadratureConfig::default()
            .with_rel_tol(1e-12)
            .with_decay_scale(y.min(0.5) / 16.0);
        let v = integrate_semi_infinite(integrand, &cfg).into_result()?;
        Ok(p / (256.0 * PI * PI * z.powi(3)) * v)
    }

    /// Non-retarded asymptote of U↓↑, valid for ω↑↓z/c ≪ 1.
    pub fn u_du_nonretarded(solver: &PotentialSolver, z: f64, field: &FieldConfig) -> Result<f64> {
        let c2t = field.orientation.weights().cos_double();
        Ok(solver.prefactor()? * (5.0 - c2t) / (512.0 * PI * z.powi(3)))
    }

    /// Retarded asymptote of U↓↑, valid for ω↑↓z/c ≫ 1.
    pub fn u_du_retarded(solver: &PotentialSolver, z: f64, field: &FieldConfig) -> Result<f64> {
        let omega = solver.transition_frequency(field)?;
        if omega == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(solver.prefactor()? * solver.constants.c / (32.0 * PI * PI * omega * z.powi(4)))
    }
}
