//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite ranges.
//!
//! Every integral in the crate goes through this module. The building block
//! is the 21-point Kronrod extension of the 10-point Gauss rule, with the
//! QUADPACK error heuristic; intervals are bisected globally (worst error
//! first) until the requested tolerance is met. Semi-infinite integrals are
//! split into panels `[0, s], [s, 2s], [2s, 4s], …` that keep doubling until
//! the integrand has decayed below tolerance, so features living at very
//! different scales each land in a panel of their own size.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], …, XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const EVALS_PER_RULE: usize = 21;

/// Values an integrand may return: real scalars or complex numbers.
pub trait Integrand<T: Real>: Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> {
    fn modulus(self) -> T;
    fn is_finite_value(self) -> bool;
}

impl<T: Real> Integrand<T> for T {
    #[inline]
    fn modulus(self) -> T {
        self.abs()
    }
    #[inline]
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> Integrand<T> for Complex<T> {
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_evaluations: usize,
    /// Width of the first panel for semi-infinite integrals, in domain units.
    pub decay_scale: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-9),
            abs_tol: T::zero(),
            max_evaluations: 1_000_000,
            decay_scale: T::one(),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_decay_scale(mut self, decay_scale: T) -> Self {
        self.decay_scale = decay_scale;
        self
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    fn tolerance(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T, V = T> {
    pub value: V,
    pub abs_error: T,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real, V: Integrand<T>> QuadratureResult<T, V> {
    /// Converts a non-converged result into [`crate::Error::IntegrationFailure`].
    pub fn into_result(self) -> crate::Result<V> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::Error::IntegrationFailure {
                value: self.value.modulus().as_f64(),
                abs_error: self.abs_error.as_f64(),
                evaluations: self.evaluations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
}

impl<T: Real, V> PartialEq for Segment<T, V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: Real, V> Eq for Segment<T, V> {}

impl<T: Real, V> PartialOrd for Segment<T, V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real, V> Ord for Segment<T, V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// One application of the 21-point Kronrod rule with the QUADPACK error estimate.
fn kronrod21<T, V, F>(f: &mut F, a: T, b: T) -> Segment<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let mut fv1 = [V::zero(); 10];
    let mut fv2 = [V::zero(); 10];
    let fc = f(center);
    let mut res_gauss = V::zero();
    let mut res_kronrod = fc * T::lit(WGK[10]);
    let mut res_abs = fc.modulus() * T::lit(WGK[10]);

    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_kronrod = res_kronrod + (f1 + f2) * w;
        res_abs = res_abs + (f1.modulus() + f2.modulus()) * w;
        if j % 2 == 1 {
            res_gauss = res_gauss + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }

    let mean = res_kronrod * half;
    let mut res_asc = (fc - mean).modulus() * T::lit(WGK[10]);
    for j in 0..10 {
        res_asc = res_asc + ((fv1[j] - mean).modulus() + (fv2[j] - mean).modulus()) * T::lit(WGK[j]);
    }

    let value = res_kronrod * half_len;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut error = ((res_kronrod - res_gauss) * half_len).modulus();

    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * scale.min(T::one());
    }
    let round_off = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        error = error.max(round_off);
    }
    if !value.is_finite_value() {
        error = T::infinity();
    }

    Segment { a, b, value, error }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
pub fn integrate<T, V, F>(mut f: F, a: T, b: T, cfg: &QuadratureConfig<T>) -> QuadratureResult<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    integrate_adaptive(&mut f, a, b, cfg, cfg.max_evaluations)
}

fn integrate_adaptive<T, V, F>(
    f: &mut F,
    a: T,
    b: T,
    cfg: &QuadratureConfig<T>,
    budget: usize,
) -> QuadratureResult<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    if a == b {
        return QuadratureResult {
            value: V::zero(),
            abs_error: T::zero(),
            evaluations: 0,
            converged: true,
        };
    }

    let first = kronrod21(f, a, b);
    let mut evaluations = EVALS_PER_RULE;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut converged = error <= cfg.tolerance(value.modulus());
    let mut exhausted = false;

    while !converged {
        if evaluations + 2 * EVALS_PER_RULE > budget {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        // Bisection no longer separates the endpoints in floating point.
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            heap.push(worst);
            exhausted = true;
            break;
        }
        let left = kronrod21(f, worst.a, mid);
        let right = kronrod21(f, mid, worst.b);
        evaluations += 2 * EVALS_PER_RULE;

        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);

        // Re-sum periodically to keep the running totals from drifting.
        if heap.len() % 64 == 0 {
            value = heap.iter().fold(V::zero(), |acc, s| acc + s.value);
            error = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
        }
        converged = error <= cfg.tolerance(value.modulus());
    }

    value = heap.iter().fold(V::zero(), |acc, s| acc + s.value);
    error = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
    if !exhausted {
        converged = error <= cfg.tolerance(value.modulus());
    } else {
        converged = false;
    }
    if !value.is_finite_value() {
        converged = false;
    }

    QuadratureResult {
        value,
        abs_error: error,
        evaluations,
        converged,
    }
}

/// Integrates `f` over `(0, ∞)`.
///
/// Panels start with width `cfg.decay_scale` and double in size; the sweep
/// stops once two consecutive panels contribute less than the tolerance and
/// the second is smaller than the first. The last panel's magnitude is added
/// to the error estimate as a bound on the discarded tail.
pub fn integrate_semi_infinite<T, V, F>(mut f: F, cfg: &QuadratureConfig<T>) -> QuadratureResult<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    let mut total = V::zero();
    let mut error = T::zero();
    let mut evaluations = 0usize;
    let mut converged = true;
    let mut quiet_panels = 0;
    let mut previous = T::infinity();

    if !(cfg.decay_scale > T::zero()) || !cfg.decay_scale.is_finite() {
        return QuadratureResult {
            value: V::zero(),
            abs_error: T::infinity(),
            evaluations: 0,
            converged: false,
        };
    }

    let mut lo = T::zero();
    let mut hi = cfg.decay_scale;
    loop {
        let running = total.modulus();
        let panel_cfg = QuadratureConfig {
            abs_tol: cfg.abs_tol.max(T::lit(0.1) * cfg.rel_tol * running),
            ..*cfg
        };
        let budget = cfg.max_evaluations.saturating_sub(evaluations);
        let panel = integrate_adaptive(&mut f, lo, hi, &panel_cfg, budget);
        evaluations += panel.evaluations;
        total = total + panel.value;
        error = error + panel.abs_error;
        if !panel.converged {
            converged = false;
            break;
        }

        let contribution = panel.value.modulus();
        if contribution + panel.abs_error <= cfg.tolerance(total.modulus()) && contribution <= previous {
            quiet_panels += 1;
        } else {
            quiet_panels = 0;
        }
        previous = contribution;
        if quiet_panels >= 2 {
            error = error + contribution;
            break;
        }

        lo = hi;
        hi = hi + hi;
        if !hi.is_finite() || evaluations >= cfg.max_evaluations {
            converged = false;
            break;
        }
    }

    if converged {
        converged = error <= cfg.tolerance(total.modulus()).max(T::lit(2.0) * cfg.abs_tol);
    }

    QuadratureResult {
        value: total,
        abs_error: error,
        evaluations,
        converged,
    }
}

/// Integrates an oscillatory complex integrand over `[a, b]`.
///
/// `phase_scale` is the largest rate of phase change (rad per unit of the
/// integration variable); the interval is cut into panels that each cover at
/// most one period before adaptive refinement.
pub fn integrate_finite_oscillatory<T, F>(
    mut f: F,
    a: T,
    b: T,
    phase_scale: T,
    cfg: &QuadratureConfig<T>,
) -> QuadratureResult<T, Complex<T>>
where
    T: Real,
    F: FnMut(T) -> Complex<T>,
{
    let span = b - a;
    let period = T::TAU() / phase_scale.abs();
    let panels = if phase_scale == T::zero() || !period.is_finite() {
        1
    } else {
        (span / period).ceil().to_usize().unwrap_or(1).max(1)
    };
    let width = span / T::from_usize(panels).unwrap_or_else(T::one);

    let mut total = Complex::zero();
    let mut error = T::zero();
    let mut evaluations = 0;
    let mut converged = true;
    // Each panel is held to the absolute tolerance its magnitude implies.
    let panel_cfg = QuadratureConfig {
        abs_tol: cfg.abs_tol / T::from_usize(panels).unwrap_or_else(T::one),
        ..*cfg
    };
    for k in 0..panels {
        let lo = a + width * T::from_usize(k).unwrap_or_else(T::zero);
        let hi = if k + 1 == panels { b } else { lo + width };
        let budget = cfg.max_evaluations.saturating_sub(evaluations);
        let panel = integrate_adaptive(&mut f, lo, hi, &panel_cfg, budget);
        evaluations += panel.evaluations;
        total = total + panel.value;
        error = error + panel.abs_error;
        converged &= panel.converged;
    }

    QuadratureResult {
        value: total,
        abs_error: error,
        evaluations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t: f64| (-t).exp(), &cfg());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn first_moment() {
        let r = integrate_semi_infinite(|t: f64| t * (-2.0 * t).exp(), &cfg());
        assert!((r.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn perfect_conductor_polynomial_moment() {
        // Γ-integrals term by term: 5/2 + 10/4 + 12·2/8 = 8
        let f = |x: f64| (5.0 + 10.0 * x + 12.0 * x * x) * (-2.0 * x).exp();
        let r = integrate_semi_infinite(f, &cfg());
        assert!((r.value - 8.0).abs() < 1e-11);
    }

    #[test]
    fn oscillatory_examples() {
        let c = cfg();
        let r = integrate_finite_oscillatory(|t: f64| Complex::new(t.sin(), 0.0), 0.0, PI, 1.0, &c);
        assert!((r.value.re - 2.0).abs() < 1e-12);
        let r = integrate_finite_oscillatory(|t: f64| Complex::new(0.0, t).exp(), 0.0, 2.0 * PI, 1.0, &c);
        assert!(r.value.norm() < 1e-12);
        let r = integrate_finite_oscillatory(|t: f64| Complex::new((50.0 * t).cos(), 0.0), 0.0, 1.0, 50.0, &c);
        assert!((r.value.re - 50f64.sin() / 50.0).abs() < 1e-12);
        assert!((r.value.re + 0.005_247).abs() < 1e-6);
    }

    #[test]
    fn empty_interval() {
        let r = integrate(|t: f64| t, 1.0, 1.0, &cfg());
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let fwd = integrate(|t: f64| t * t, 0.0, 2.0, &cfg());
        let rev = integrate(|t: f64| t * t, 2.0, 0.0, &cfg());
        assert!((fwd.value + rev.value).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c = cfg().with_max_evaluations(50);
        let r = integrate(|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, &c);
        assert!(!r.converged);
        assert!(r.into_result().is_err());
    }

    #[test]
    fn vanishing_integrand_converges_to_zero() {
        let r = integrate_semi_infinite(|_t: f64| 0.0, &cfg());
        assert!(r.converged);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn single_precision() {
        let c = QuadratureConfig::<f32>::default().with_rel_tol(1e-5);
        let r = integrate_semi_infinite(|t: f32| (-t).exp(), &c);
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-5);
    }

    #[test]
    fn multiscale_semi_infinite() {
        // Lorentzian of width 1e-6 times a decay on scale 1: both features must be resolved.
        let w = 1e-6;
        let f = |x: f64| w / (x * x + w * w) * (-x).exp();
        let c = cfg().with_decay_scale(w / 16.0);
        let r = integrate_semi_infinite(f, &c);
        // ∫ w e^{-x}/(x²+w²) = Ci(w) sin w − (Si(w) − π/2) cos w ≈ π/2 − w(1 − γ_E − ln w)
        let euler = 0.577_215_664_901_532_9;
        let expected = PI / 2.0 + w * (w.ln() + euler - 1.0);
        assert!(r.converged);
        assert!((r.value - expected).abs() < 1e-9, "{} vs {}", r.value, expected);
    }
}
