//! Fresnel coefficients and the magnetic scattering Green tensor of a half-space.
//!
//! The neutron couples to the field through `H = ∇ × G⁽¹⁾(r, r, ω) × ∇′`
//! evaluated at its own position. Above a planar interface `H` is diagonal with
//! `H_xx = H_yy`, so only `h_xx` and `h_zz` are computed. On the imaginary axis
//! ω = iξ, with `a = ξ/c`, `κ = sqrt(a² + k∥²)` and the Fresnel coefficients
//! of the interface,
//!
//! ```text
//! h_xx = 1/(8π) ∫_a^∞ dκ e^{-2κz} [ a² r_p − κ² r_s ]
//! h_zz = −1/(4π) ∫_a^∞ dκ e^{-2κz} (κ² − a²) r_s
//! ```
//!
//! The sign is fixed so that a perfect conductor (`r_s = −1`, `r_p = +1`)
//! gives positive components, i.e. a magnetic dipole is repelled by an
//! electric mirror. The real-frequency tensor is the analytic continuation
//! ξ → −iω of the same integrals, split into a propagating segment
//! (κ = −is, 0 ≤ s ≤ ω/c) and an evanescent one (κ > 0).

use std::f64::consts::PI;

use num_complex::Complex;
use serde::Serialize;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{invalid, Error, Result};
use crate::materials::Material;
use crate::quadrature::{integrate, integrate_finite_oscillatory, integrate_semi_infinite, QuadratureConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionPair<V> {
    pub r_s: V,
    pub r_p: V,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "axis", content = "value", rename_all = "lowercase")]
pub enum Frequency<T> {
    /// ξ on the imaginary axis, rad/s.
    Imaginary(T),
    /// ω on the real axis, rad/s.
    Real(T),
}

/// Diagonal of `∇ × G⁽¹⁾ × ∇′` at coincident points, 1/m³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticGreenDiag<T, V = T> {
    /// Equal to `h_yy`.
    pub h_xx: V,
    pub h_zz: V,
    pub frequency: Frequency<T>,
    pub z: T,
    /// Combined quadrature error estimate of the two components.
    pub abs_error: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenOptions<T> {
    pub rel_tol: T,
    pub max_evaluations: usize,
}

impl<T: Real> Default for GreenOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-12),
            max_evaluations: 200_000,
        }
    }
}

fn light_speed<T: Real>() -> T {
    T::lit(SPEED_OF_LIGHT)
}

/// Response of the half-space on the imaginary axis at fixed ξ, reduced to
/// what the reflection coefficients need: `q² = ξ²(ε − 1)/c²` and `1/ε`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ImaginaryResponse<T> {
    perfect: bool,
    q2: T,
    inv_eps: T,
    /// (ε − 1)/ε
    chi_inv_eps: T,
    /// ξ²/c²
    a2: T,
}

impl<T: Real> ImaginaryResponse<T> {
    pub(crate) fn new(m: &Material<T>, xi: T) -> Self {
        let c = light_speed::<T>();
        let weight = m.susceptibility_weight(xi);
        let inv_eps = m.inverse_permittivity_imag(xi);
        let chi_inv_eps = if xi > T::zero() {
            weight / (xi * xi) * inv_eps
        } else {
            T::one() - inv_eps
        };
        Self {
            perfect: m.is_perfect_conductor(),
            q2: weight / (c * c),
            inv_eps,
            chi_inv_eps,
            a2: (xi / c) * (xi / c),
        }
    }

    #[cfg(test)]
    pub(crate) fn vacuum() -> Self {
        Self {
            perfect: false,
            q2: T::zero(),
            inv_eps: T::one(),
            chi_inv_eps: T::zero(),
            a2: T::zero(),
        }
    }

    /// r_s at normal wavenumber κ, written without cancellation: −q²/(κ + κ_med)².
    #[inline]
    fn r_s(&self, kappa: T) -> T {
        if self.perfect {
            return -T::one();
        }
        if self.q2 == T::zero() {
            return T::zero();
        }
        let km = (kappa * kappa + self.q2).sqrt();
        -self.q2 / ((kappa + km) * (kappa + km))
    }

    /// r_p at normal wavenumber κ, with the numerator κ − κ_med/ε rationalised:
    /// ((ε − 1)/ε)·[(1 + 1/ε)κ² − a²/ε] / (κ + κ_med/ε)².
    #[inline]
    fn r_p(&self, kappa: T) -> T {
        if self.perfect {
            return T::one();
        }
        let km = (kappa * kappa + self.q2).sqrt() * self.inv_eps;
        let d = kappa + km;
        self.chi_inv_eps * ((T::one() + self.inv_eps) * kappa * kappa - self.inv_eps * self.a2) / (d * d)
    }
}

/// Fresnel coefficients at imaginary frequency ξ and in-plane wavenumber k∥.
pub fn fresnel_imag<T: Real>(m: &Material<T>, xi: T, k_par: T) -> Result<ReflectionPair<T>> {
    if !(xi >= T::zero()) || !(k_par >= T::zero()) {
        return Err(invalid("xi/k_par", "must be non-negative"));
    }
    if xi == T::zero() && k_par == T::zero() {
        return Err(invalid("xi/k_par", "must not both vanish"));
    }
    let c = light_speed::<T>();
    let a = xi / c;
    let kappa = (a * a + k_par * k_par).sqrt();
    let resp = ImaginaryResponse::new(m, xi);
    Ok(ReflectionPair {
        r_s: resp.r_s(kappa),
        r_p: resp.r_p(kappa),
    })
}

/// Square root on the branch with non-negative imaginary part.
fn sqrt_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = z.sqrt();
    if r.im < T::zero() || (r.im == T::zero() && r.re < T::zero()) {
        -r
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy)]
struct RealResponse<T> {
    perfect: bool,
    eps: Complex<T>,
    k0: T,
}

impl<T: Real> RealResponse<T> {
    fn new(m: &Material<T>, omega: T) -> Result<Self> {
        let perfect = m.is_perfect_conductor();
        let eps = if perfect {
            Complex::new(T::one(), T::zero())
        } else {
            m.permittivity_real(omega)?
        };
        Ok(Self {
            perfect,
            eps,
            k0: omega / light_speed::<T>(),
        })
    }

    /// Reflection pair at complex normal wavenumber κ (κ² = k∥² − ω²/c²).
    fn at(&self, kappa: Complex<T>) -> ReflectionPair<Complex<T>> {
        if self.perfect {
            return ReflectionPair {
                r_s: Complex::new(-T::one(), T::zero()),
                r_p: Complex::new(T::one(), T::zero()),
            };
        }
        let k0sq = self.k0 * self.k0;
        let kpar2 = kappa * kappa + k0sq;
        let kz_med = sqrt_upper(self.eps * k0sq - kpar2);
        let kappa_med = Complex::new(T::zero(), -T::one()) * kz_med;
        // κ² − κ_med² = (ε − 1)k0² removes the cancellation in r_s. The same
        // rationalisation of r_p would square the surface-mode pole, so it is
        // kept for weak contrast only.
        let chi = self.eps - T::one();
        let ds = kappa + kappa_med;
        let ek = self.eps * kappa;
        let dp = ek + kappa_med;
        let r_p = if chi.norm() < T::lit(0.5) {
            chi * ((self.eps + T::one()) * kappa * kappa + k0sq) / (dp * dp)
        } else {
            (ek - kappa_med) / dp
        };
        ReflectionPair {
            r_s: chi * k0sq / (ds * ds),
            r_p,
        }
    }

    /// Real pole κ_p = k0/√(−1 − ε) of r_p for a lossless medium with ε < −1
    /// (the surface plasmon), and the residue of r_p there.
    fn surface_pole(&self) -> Option<(T, T)> {
        if self.perfect || self.eps.im != T::zero() || !(self.eps.re < -T::one()) {
            return None;
        }
        let e = self.eps.re;
        let kp = self.k0 / (-(T::one() + e)).sqrt();
        // r_p = (εκ − κ_med)/(εκ + κ_med); at the pole κ_med = −εκ_p
        let residue = T::lit(2.0) * e * kp / (e - T::one() / e);
        Some((kp, residue))
    }
}

/// Fresnel coefficients at real frequency ω > 0 and in-plane wavenumber k∥ ≥ 0.
pub fn fresnel_real<T: Real>(m: &Material<T>, omega: T, k_par: T) -> Result<ReflectionPair<Complex<T>>> {
    if !(k_par >= T::zero()) {
        return Err(invalid("k_par", "must be non-negative"));
    }
    let resp = RealResponse::new(m, omega)?;
    let kz2 = resp.k0 * resp.k0 - k_par * k_par;
    let kappa = if kz2 > T::zero() {
        Complex::new(T::zero(), -kz2.sqrt())
    } else {
        Complex::new((-kz2).sqrt(), T::zero())
    };
    Ok(resp.at(kappa))
}

fn check_distance<T: Real>(z: T) -> Result<()> {
    if z > T::zero() && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "z",
            value: z.as_f64(),
            reason: "distance must be positive and finite",
        })
    }
}

/// `w_xx·h_xx + w_zz·h_zz` at imaginary frequency ξ ≥ 0, as one quadrature.
///
/// ξ = 0 gives the static limit ξ → 0⁺ exactly, through the finite static
/// values of `ξ²(ε − 1)` and `1/ε`.
pub(crate) fn contracted_green_imag<T: Real>(
    resp: &ImaginaryResponse<T>,
    z: T,
    xi: T,
    w_xx: T,
    w_zz: T,
    opts: &GreenOptions<T>,
) -> Result<(T, T)> {
    let a = xi / light_speed::<T>();
    let two = T::lit(2.0);
    let cx = w_xx / T::lit(8.0 * PI);
    let cz = w_zz / T::lit(4.0 * PI);
    let with_rp = a > T::zero() && w_xx != T::zero();
    let integrand = |u: T| {
        let kappa = a + u;
        let rs = resp.r_s(kappa);
        let mut xx = -kappa * kappa * rs;
        if with_rp {
            xx = xx + a * a * resp.r_p(kappa);
        }
        let zz = -u * (u + two * a) * rs;
        (-two * u * z).exp() * (cx * xx + cz * zz)
    };
    let cfg = QuadratureConfig {
        rel_tol: opts.rel_tol,
        abs_tol: T::zero(),
        max_evaluations: opts.max_evaluations,
        decay_scale: T::lit(0.125) / z,
    };
    let r = integrate_semi_infinite(integrand, &cfg);
    let damping = (-two * a * z).exp();
    let value = r.into_result()?;
    Ok((value * damping, r.abs_error * damping))
}

/// Diagonal of the magnetic Green tensor at imaginary frequency ξ ≥ 0.
pub fn magnetic_green_diag_imag<T: Real>(m: &Material<T>, z: T, xi: T) -> Result<MagneticGreenDiag<T>> {
    magnetic_green_diag_imag_with(m, z, xi, &GreenOptions::default())
}

pub fn magnetic_green_diag_imag_with<T: Real>(
    m: &Material<T>,
    z: T,
    xi: T,
    opts: &GreenOptions<T>,
) -> Result<MagneticGreenDiag<T>> {
    check_distance(z)?;
    if !(xi >= T::zero()) {
        return Err(invalid("xi", "must be non-negative"));
    }
    let resp = ImaginaryResponse::new(m, xi);
    let (h_xx, ex) = contracted_green_imag(&resp, z, xi, T::one(), T::zero(), opts)?;
    let (h_zz, ez) = contracted_green_imag(&resp, z, xi, T::zero(), T::one(), opts)?;
    Ok(MagneticGreenDiag {
        h_xx,
        h_zz,
        frequency: Frequency::Imaginary(xi),
        z,
        abs_error: ex + ez,
    })
}

/// Diagonal of the magnetic Green tensor at real frequency ω > 0 (complex-valued).
pub fn magnetic_green_diag_real<T: Real>(m: &Material<T>, z: T, omega: T) -> Result<MagneticGreenDiag<T, Complex<T>>> {
    magnetic_green_diag_real_with(m, z, omega, &GreenOptions::default())
}

pub fn magnetic_green_diag_real_with<T: Real>(
    m: &Material<T>,
    z: T,
    omega: T,
    opts: &GreenOptions<T>,
) -> Result<MagneticGreenDiag<T, Complex<T>>> {
    check_distance(z)?;
    if !(omega > T::zero()) {
        return Err(Error::Domain {
            quantity: "omega",
            value: omega.as_f64(),
            reason: "real frequency must be positive",
        });
    }
    let resp = RealResponse::new(m, omega)?;
    let (h_xx, ex) = contracted_green_real(&resp, z, T::one(), T::zero(), opts)?;
    let (h_zz, ez) = contracted_green_real(&resp, z, T::zero(), T::one(), opts)?;
    Ok(MagneticGreenDiag {
        h_xx,
        h_zz,
        frequency: Frequency::Real(omega),
        z,
        abs_error: ex + ez,
    })
}

/// `w_xx·h_xx + w_zz·h_zz` at real frequency.
fn contracted_green_real<T: Real>(
    resp: &RealResponse<T>,
    z: T,
    w_xx: T,
    w_zz: T,
    opts: &GreenOptions<T>,
) -> Result<(Complex<T>, T)> {
    let k0 = resp.k0;
    let k0sq = k0 * k0;
    let two = T::lit(2.0);
    let cx = w_xx / T::lit(8.0 * PI);
    let cz = w_zz / T::lit(4.0 * PI);
    let weight = move |kappa: Complex<T>| {
        let r = resp.at(kappa);
        let xx = -(r.r_p * k0sq) - kappa * kappa * r.r_s;
        let zz = -(kappa * kappa + k0sq) * r.r_s;
        xx * cx + zz * cz
    };

    // Evanescent waves, κ real.
    let evanescent = |kappa: T| {
        let k = Complex::new(kappa, T::zero());
        weight(k) * (-two * kappa * z).exp()
    };
    // r_p varies on the scale k0/√|ε| near grazing incidence
    let grazing = k0 / resp.eps.norm().sqrt().max(T::one());
    let scale = (T::lit(0.125) / z).min(grazing);
    let cfg = QuadratureConfig {
        rel_tol: opts.rel_tol,
        abs_tol: T::zero(),
        max_evaluations: opts.max_evaluations,
        decay_scale: scale,
    };
    let (ev_value, ev_error) = match resp.surface_pole() {
        None => {
            let ev = integrate_semi_infinite(evanescent, &cfg);
            (ev.into_result()?, ev.abs_error)
        }
        Some((kp, residue)) => {
            // ε + i0⁺ puts the pole just above the axis: principal value over
            // [0, 2κ_p] by folding about κ_p, plus iπ times the residue.
            let folded = integrate(|t: T| evanescent(kp - t) + evanescent(kp + t), T::zero(), kp, &cfg);
            let tail = integrate_semi_infinite(
                |u: T| evanescent(kp + kp + u),
                &QuadratureConfig {
                    decay_scale: scale.max(kp),
                    ..cfg
                },
            );
            let res = -cx * k0sq * residue * (-two * kp * z).exp();
            let pole = Complex::new(T::zero(), T::lit(PI) * res);
            (
                folded.into_result()? + tail.into_result()? + pole,
                folded.abs_error + tail.abs_error,
            )
        }
    };

    // Propagating waves, κ = −is with 0 ≤ s ≤ ω/c; dκ = −i ds reverses the limits.
    let i = Complex::new(T::zero(), T::one());
    let propagating = |s: T| {
        let k = Complex::new(T::zero(), -s);
        i * weight(k) * Complex::new(T::zero(), two * s * z).exp()
    };
    let pcfg = QuadratureConfig {
        abs_tol: opts.rel_tol * ev_value.norm() * T::lit(0.1),
        ..cfg
    };
    // geometric segments resolve the grazing feature at s → 0
    let mut propagating = propagating;
    let mut pr_value = Complex::new(T::zero(), T::zero());
    let mut pr_error = T::zero();
    let mut lo = T::zero();
    let mut hi = grazing.min(k0);
    while lo < k0 {
        let pr = integrate_finite_oscillatory(&mut propagating, lo, hi, two * z, &pcfg);
        pr_error = pr_error + pr.abs_error;
        pr_value = pr_value + pr.into_result()?;
        lo = hi;
        hi = (hi + hi).min(k0);
    }

    Ok((ev_value + pr_value, ev_error + pr_error))
}
