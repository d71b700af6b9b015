//! Floating-point checks of the analytic side: closed-form Schrodinger
//! evolution of Gaussian times monomial data, space-time `L^6` integrals,
//! the quadratic form on separable data, and the kernel identity.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Datum `g(x) = b x^r exp(-a x^2)` with `Re a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianWaveSpec {
    pub r: u32,
    pub a: Complex64,
    pub b: Complex64,
}

impl GaussianWaveSpec {
    pub fn new(r: u32, a: Complex64, b: Complex64) -> Result<Self> {
        if r > 1 {
            return Err(Error::InvalidParameter(format!("parity exponent r = {r} must be 0 or 1")));
        }
        if a.re.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("width a = {a} needs a positive real part")));
        }
        Ok(Self { r, a, b })
    }

    pub fn real(r: u32, a: f64) -> Result<Self> {
        Self::new(r, Complex64::new(a, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn initial(&self, y: f64) -> Complex64 {
        self.b * y.powi(self.r as i32) * (-self.a * y * y).exp()
    }

    /// `||g||_2^2`, in closed form.
    pub fn norm_sq(&self) -> f64 {
        let c = 2.0 * self.a.re;
        let base = (PI / c).sqrt();
        let moment = if self.r == 0 { base } else { base / (2.0 * c) };
        self.b.norm_sqr() * moment
    }
}

/// Solution of `u_t = i u_yy` with `u(., 0) = g`:
/// `u = b y^r s^(-1/2-r) exp(-a y^2 / s)`, `s = 1 + 4 i a t`, principal
/// branch. `s` never meets the negative real axis when `Re a > 0`.
pub fn evolve_gaussian(spec: &GaussianWaveSpec, y: f64, t: f64) -> Complex64 {
    let s = Complex64::new(1.0, 0.0) + Complex64::new(0.0, 4.0 * t) * spec.a;
    let power = s.powf(-0.5 - spec.r as f64);
    spec.b * y.powi(spec.r as i32) * power * (-spec.a * y * y / s).exp()
}

fn s_norm_sq(a: Complex64, t: f64) -> f64 {
    let re = 1.0 - 4.0 * a.im * t;
    let im = 4.0 * a.re * t;
    re * re + im * im
}

/// `|u(y, t)|^2 = |b|^2 y^(2r) |s|^(-1-2r) exp(-2 Re(a) y^2 / |s|^2)`,
/// using `Re(a/s) = Re(a)/|s|^2`. Stays accurate for large `t`, where
/// forming `a y^2 / s` loses the real part to cancellation.
pub fn evolve_modulus_sq(spec: &GaussianWaveSpec, y: f64, t: f64) -> f64 {
    let s2 = s_norm_sq(spec.a, t);
    spec.b.norm_sqr() * y.powi(2 * spec.r as i32) * s2.powf(-0.5 - spec.r as f64)
        * (-2.0 * spec.a.re * y * y / s2).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Half-width of the spatial window in the scaled variable
    /// `eta = y * sqrt(Re(a/s))`.
    pub spatial_extent: f64,
    /// Absolute error target handed to each one-dimensional rule.
    pub inner_tolerance: f64,
    /// Relative error the whole run must reach to count as converged.
    pub target_tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            spatial_extent: 6.0,
            inner_tolerance: 1e-13,
            target_tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

impl QuadratureResult {
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.value.abs().max(f64::MIN_POSITIVE)
    }
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadratureResult {
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    QuadratureResult {
        value: out.integral,
        error_estimate: out.error_estimate,
        evaluations: out.num_function_evaluations as u64,
    }
}

/// Sum over equal pieces of `[a, b]`.
fn integrate_pieces(f: impl Fn(f64) -> f64, a: f64, b: f64, pieces: usize, tol: f64) -> QuadratureResult {
    let h = (b - a) / pieces as f64;
    let mut acc = QuadratureResult { value: 0.0, error_estimate: 0.0, evaluations: 0 };
    for k in 0..pieces {
        let lo = a + h * k as f64;
        let part = integrate(&f, lo, lo + h, tol / pieces as f64);
        acc.value += part.value;
        acc.error_estimate += part.error_estimate;
        acc.evaluations += part.evaluations;
    }
    acc
}

fn check(result: QuadratureResult, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if !result.value.is_finite() || result.relative_error() > cfg.target_tolerance {
        return Err(Error::NotConverged {
            estimate: result.error_estimate,
            tolerance: cfg.target_tolerance * result.value.abs(),
        });
    }
    Ok(result)
}

/// `int int prod_j |u_j(y, t)|^(2 p_j) dy dt` for data sharing one width
/// `a`. Time runs over the whole line through `t = tan(theta)`; each
/// spatial slice is rescaled by `sqrt(Re(a/s))` so its Gaussian envelope has
/// unit width.
fn spacetime_integral(factors: &[(GaussianWaveSpec, u32)], cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let a = factors[0].0.a;
    let inner_err = std::cell::Cell::new(0.0f64);
    let inner_evals = std::cell::Cell::new(0u64);
    let slice = |theta: f64| {
        let t = theta.tan();
        let scale = (s_norm_sq(a, t) / a.re).sqrt();
        let jac = 1.0 / theta.cos().powi(2);
        let density = |eta: f64| {
            let y = eta * scale;
            factors
                .iter()
                .map(|(spec, p)| evolve_modulus_sq(spec, y, t).powi(*p as i32))
                .product::<f64>()
        };
        // Normalizing by the value at eta = 1 makes the slice O(1), so the
        // absolute tolerance acts as a relative one.
        let unit = density(1.0);
        let r = integrate(|eta| density(eta) / unit, 0.0, cfg.spatial_extent, cfg.inner_tolerance);
        let weight = 2.0 * unit * scale * jac;
        inner_err.set(inner_err.get().max(r.error_estimate * weight));
        inner_evals.set(inner_evals.get() + r.evaluations);
        r.value * weight
    };
    let half = PI / 2.0;
    let mut out = integrate_pieces(slice, -half, half, 8, cfg.inner_tolerance);
    out.error_estimate += inner_err.get() * PI;
    out.evaluations += inner_evals.get();
    check(out, cfg)
}

/// `int int |u(y, t)|^6 dy dt` with an error estimate.
pub fn strichartz_l6(spec: &GaussianWaveSpec, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    spacetime_integral(&[(*spec, 3)], cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QFormResult {
    pub kappa: usize,
    pub ratio: f64,
    pub integral: QuadratureResult,
}

/// `Q(f) / ||f||^2` for `f(x) = x_1 .. x_kappa exp(-a |x|^2)` on `R^3`,
/// using `sqrt(12) int int |u_1|^(2 kappa) |u_0|^(2(3-kappa))`.
pub fn q_form_numeric(kappa: usize, a: Complex64, cfg: &QuadratureConfig) -> Result<QFormResult> {
    if kappa > 3 {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} must be in 0..=3")));
    }
    let one = Complex64::new(1.0, 0.0);
    let odd = GaussianWaveSpec::new(1, a, one)?;
    let even = GaussianWaveSpec::new(0, a, one)?;
    let mut factors = Vec::new();
    if kappa > 0 {
        factors.push((odd, kappa as u32));
    }
    if kappa < 3 {
        factors.push((even, 3 - kappa as u32));
    }
    let integral = spacetime_integral(&factors, cfg)?;
    let norm = odd.norm_sq().powi(kappa as i32) * even.norm_sq().powi(3 - kappa as i32);
    Ok(QFormResult {
        kappa,
        ratio: 12f64.sqrt() * integral.value / norm,
        integral,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FoschiReport {
    pub even_ratio: f64,
    pub even_target: f64,
    pub odd_ratio: f64,
    pub odd_target: f64,
    pub quotient: f64,
    pub quotient_target: f64,
    pub max_deviation: f64,
}

/// `||u||_{L^6} / ||g||_2` for even and odd Gaussians of width `pi`.
pub fn foschi_constant_check(cfg: &QuadratureConfig) -> Result<FoschiReport> {
    let ratio = |r: u32| -> Result<f64> {
        let spec = GaussianWaveSpec::real(r, PI)?;
        let l6 = strichartz_l6(&spec, cfg)?;
        Ok(l6.value.powf(1.0 / 6.0) / spec.norm_sq().sqrt())
    };
    let even_ratio = ratio(0)?;
    let odd_ratio = ratio(1)?;
    let even_target = 12f64.powf(-1.0 / 12.0);
    let quotient_target = (5.0f64 / 9.0).powf(1.0 / 6.0);
    let odd_target = even_target * quotient_target;
    let quotient = odd_ratio / even_ratio;
    let max_deviation = [
        (even_ratio - even_target).abs(),
        (odd_ratio - odd_target).abs(),
        (quotient - quotient_target).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(FoschiReport {
        even_ratio,
        even_target,
        odd_ratio,
        odd_target,
        quotient,
        quotient_target,
        max_deviation,
    })
}

/// `int |u(y, t)|^2 dy`.
pub fn mass(spec: &GaussianWaveSpec, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let scale = (s_norm_sq(spec.a, t) / spec.a.re).sqrt();
    let f = |eta: f64| evolve_modulus_sq(spec, eta * scale, t);
    let mut r = integrate(f, 0.0, cfg.spatial_extent * 2.0, cfg.inner_tolerance);
    r.value *= 2.0 * scale;
    r.error_estimate *= 2.0 * scale;
    check(r, cfg)
}

/// `|u_t - i u_yy|` at one point from fourth-order central differences.
pub fn pde_residual(spec: &GaussianWaveSpec, y: f64, t: f64) -> f64 {
    let ht = 1e-3;
    let hy = 1e-3;
    let u = |y: f64, t: f64| evolve_gaussian(spec, y, t);
    let ut = (u(y, t - 2.0 * ht) - u(y, t - ht) * 8.0 + u(y, t + ht) * 8.0 - u(y, t + 2.0 * ht)) / (12.0 * ht);
    let uyy = (-u(y - 2.0 * hy, t) + u(y - hy, t) * 16.0 - u(y, t) * 30.0 + u(y + hy, t) * 16.0 - u(y + 2.0 * hy, t))
        / (12.0 * hy * hy);
    (ut - Complex64::new(0.0, 1.0) * uyy).norm()
}

/// `sinh(z)/z` for `z = c sqrt(w)`, continued to `w < 0` as `sin/z`.
fn sinhc(c: f64, w: f64) -> f64 {
    let z2 = c * c * w;
    if z2.abs() < 1e-8 {
        return 1.0 + z2 / 6.0;
    }
    if w > 0.0 {
        let z = c * w.sqrt();
        z.sinh() / z
    } else {
        let z = c * (-w).sqrt();
        z.sin() / z
    }
}

fn cosh_sqrt(c: f64, w: f64) -> f64 {
    if w >= 0.0 {
        (c * w.sqrt()).cosh()
    } else {
        (c * (-w).sqrt()).cos()
    }
}

/// Kernel of the map `Q_n^eps -> w^n Q_n^eps` on functions of parity `eps`.
pub fn kernel_p(eps: i32, x: f64, y: f64, w: f64) -> f64 {
    let envelope = (-PI * (1.0 + w) / (1.0 - w) * (x * x + y * y) / 2.0).exp() / (1.0 - w).sqrt();
    let c = 2.0 * PI * x * y / (1.0 - w);
    if eps > 0 {
        envelope * cosh_sqrt(c, w)
    } else {
        envelope * c * sinhc(c, w)
    }
}

/// Generating series `sum_n Q_n^eps(x) t^n`.
pub fn generating_q(eps: i32, x: f64, t: f64) -> f64 {
    let r = if eps > 0 { 0 } else { 1 };
    x.powi(r) / (1.0 - t).powf(r as f64 + 0.5) * (-PI / 2.0 * (1.0 + t) / (1.0 - t) * x * x).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSample {
    pub x: f64,
    pub w: f64,
    pub t: f64,
    pub integral: f64,
    pub closed: f64,
    pub deviation: f64,
    pub error_estimate: f64,
}

/// Integrates `int P^eps(x, y; w) Q^eps(y; t) dy` at each `(x, w, t)` and
/// compares with `Q^eps(x; w t)`.
pub fn kernel_reproduce_check(eps: i32, samples: &[(f64, f64, f64)]) -> Result<Vec<KernelSample>> {
    samples
        .iter()
        .map(|&(x, w, t)| {
            if !(w.abs() < 1.0 && t.abs() < 1.0) {
                return Err(Error::InvalidParameter(format!("need |w|, |t| < 1, got w={w}, t={t}")));
            }
            let decay = PI / 2.0 * ((1.0 + w) / (1.0 - w) + (1.0 + t) / (1.0 - t));
            let width = ((1.0 - w) * (1.0 - t) / (PI * (1.0 - w * t))).sqrt().min(1.0 / decay.sqrt());
            let shift = if w > 0.0 { (x * (1.0 - t) * w.sqrt() / (1.0 - w * t)).abs() } else { 0.0 };
            let reach = shift + 12.0 * width.max(1.0 / decay.sqrt());
            let pieces = ((2.0 * reach / width).ceil() as usize).clamp(4, 64);
            let r = integrate_pieces(|y| kernel_p(eps, x, y, w) * generating_q(eps, y, t), -reach, reach, pieces, 1e-14);
            let closed = generating_q(eps, x, w * t);
            let sample = KernelSample {
                x,
                w,
                t,
                integral: r.value,
                closed,
                deviation: (r.value - closed).abs(),
                error_estimate: r.error_estimate,
            };
            if !r.value.is_finite() || r.error_estimate > 1e-11 {
                return Err(Error::NotConverged { estimate: r.error_estimate, tolerance: 1e-11 });
            }
            Ok(sample)
        })
        .collect()
}
