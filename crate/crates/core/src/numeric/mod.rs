//! Double-precision companion to the exact layer: θ[ε;ε′](z,τ) and its
//! z-derivatives, contour residues, and evaluation of exact series at a point.

mod checks;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::BigRat;
use crate::qseries::FracSeries;
use crate::theta::ThetaChar;

pub use checks::{
    check_bridge, check_finite_difference, check_log_derivative_square, check_three_term, check_quasi_periodicity, check_residues,
    check_zero_location, numeric_catalog, run_numeric, run_numeric_all, NumericCheck, NumericReport, ThreeTermRelation,
    ResidueSet,
};

/// A point (z, τ) with τ in the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    pub z: Complex64,
    pub tau: Complex64,
}

impl ComplexPoint {
    pub fn new(z: Complex64, tau: Complex64) -> Result<Self> {
        check_tau(tau)?;
        Ok(ComplexPoint { z, tau })
    }

    /// The theta-constant point z = 0.
    pub fn at_origin(tau: Complex64) -> Result<Self> {
        Self::new(Complex64::new(0.0, 0.0), tau)
    }
}

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDomain(format!("tau = {tau} needs Im(tau) > 0")))
    }
}

/// Bounds on the τ rectangle random samples are drawn from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRegion {
    pub re_tau: (f64, f64),
    pub im_tau: (f64, f64),
}

impl Default for SampleRegion {
    fn default() -> Self {
        SampleRegion { re_tau: (-0.5, 0.5), im_tau: (0.8, 2.0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    /// Absolute bound on the dropped tail of every theta sum.
    pub tail_tolerance: f64,
    pub contour_samples: usize,
    pub rng_seed: u64,
    pub sample_region: SampleRegion,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            tail_tolerance: 1e-16,
            contour_samples: 128,
            rng_seed: 20_240_505,
            sample_region: SampleRegion::default(),
        }
    }
}

impl NumericConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let SampleRegion { re_tau, im_tau } = self.sample_region;
        if !(self.tail_tolerance > 0.0) {
            return Err(Error::InvalidArgument("tail tolerance must be positive".into()));
        }
        if self.contour_samples < 64 {
            return Err(Error::InvalidArgument("at least 64 contour samples are required".into()));
        }
        if !(re_tau.0 <= re_tau.1 && im_tau.0 > 0.0 && im_tau.0 <= im_tau.1) {
            return Err(Error::InvalidArgument("sample region must be a nonempty box with Im(tau) > 0".into()));
        }
        Ok(())
    }

    /// Generator for sample `index`: independent of how samples are scheduled.
    pub fn sample_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(index as u64);
        rng
    }

    pub fn random_tau(&self, rng: &mut impl Rng) -> Complex64 {
        let SampleRegion { re_tau, im_tau } = self.sample_region;
        Complex64::new(rng.random_range(re_tau.0..=re_tau.1), rng.random_range(im_tau.0..=im_tau.1))
    }
}

/// e(x) = exp(2πix) for complex x.
pub fn e(x: Complex64) -> Complex64 {
    (Complex64::i() * TAU * x).exp()
}

/// Magnitude bound of the n-th summand: |2π a|^m · exp(−π a² Im τ − 2π a Im z), a = n + ε/2.
fn term_bound(a: f64, m: u32, p: &ComplexPoint) -> f64 {
    (TAU * a).abs().powi(m as i32) * (-PI * a * a * p.tau.im - TAU * a * p.z.im).exp()
}

/// The m-th z-derivative of θ[ε;ε′](z,τ),
/// Σ (2πi a)^m e(½a²τ + a(z + ε′/2)), a = n + ε/2.
///
/// Summation runs outward from the dominant index in both directions and
/// stops once the summands are Gaussian-decreasing and the geometric bound
/// on everything beyond is under `tail_tolerance / 2` per side.
pub fn theta_num(p: &ComplexPoint, ch: &ThetaChar, m: u32, cfg: &NumericConfig) -> Result<Complex64> {
    check_tau(p.tau)?;
    let eps = ch.eps_f64();
    let eps_p = ch.eps_prime_f64();
    let term = |n: i64| {
        let a = n as f64 + eps / 2.0;
        let arg = 0.5 * a * a * p.tau + a * (p.z + eps_p / 2.0);
        (Complex64::i() * TAU * a).powu(m) * e(arg)
    };
    let peak = (-p.z.im / p.tau.im - eps / 2.0).round() as i64;
    let mut acc = term(peak);
    for dir in [1i64, -1] {
        let mut n = peak;
        loop {
            n += dir;
            acc += term(n);
            let a = n as f64 + eps / 2.0;
            let here = term_bound(a, m, p);
            let next = term_bound(a + dir as f64, m, p);
            if here > 0.0 && next < here {
                let ratio = next / here;
                if next / (1.0 - ratio) < cfg.tail_tolerance / 2.0 {
                    break;
                }
            } else if here == 0.0 && next == 0.0 {
                break;
            }
        }
    }
    if !acc.is_finite() {
        return Err(Error::NonFinite(format!("theta{ch} at {p:?}")));
    }
    Ok(acc)
}

/// d²/dz² log θ[ε;ε′](z,τ) from the triple product,
/// (2πi)² Σ_{n≥1} [w_n/(1+w_n)² + v_n/(1+v_n)²] with
/// w_n = e(ε′/2 + z)·q^{n−1/2+ε/2}, v_n = e(−ε′/2 − z)·q^{n−1/2−ε/2}.
pub fn log_theta_second_derivative(p: &ComplexPoint, ch: &ThetaChar, cfg: &NumericConfig) -> Result<Complex64> {
    check_tau(p.tau)?;
    let eps = ch.eps_f64();
    let eps_p = ch.eps_prime_f64();
    let x = eps_p / 2.0 + p.z;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1.. {
        let w = e(x + (n as f64 - 0.5 + eps / 2.0) * p.tau);
        let v = e(-x + (n as f64 - 0.5 - eps / 2.0) * p.tau);
        let t = w / ((1.0 + w) * (1.0 + w)) + v / ((1.0 + v) * (1.0 + v));
        acc += t;
        if n > 2 && w.norm() + v.norm() < cfg.tail_tolerance {
            break;
        }
    }
    let out = -(TAU * TAU) * acc;
    if !out.is_finite() {
        return Err(Error::NonFinite(format!("log-derivative of theta{ch} at {p:?}")));
    }
    Ok(out)
}

/// η(τ) = q^{1/24} Π (1 − qⁿ).
pub fn eta_num(tau: Complex64, cfg: &NumericConfig) -> Result<Complex64> {
    check_tau(tau)?;
    let q = e(tau);
    let mut acc = e(tau / 24.0);
    let mut qn = q;
    while qn.norm() > cfg.tail_tolerance {
        acc *= 1.0 - qn;
        qn *= q;
    }
    Ok(acc)
}

/// (1/2πi)∮ f over the circle |z − center| = radius, trapezoidal rule.
pub fn residue_num<F>(f: F, center: Complex64, radius: f64, cfg: &NumericConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("contour radius must be positive".into()));
    }
    let n = cfg.contour_samples.max(1);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let offset = Complex64::from_polar(radius, TAU * k as f64 / n as f64);
        let v = f(center + offset)?;
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("integrand at z = {}", center + offset)));
        }
        acc += v * offset;
    }
    Ok(acc / n as f64)
}

/// Contour radius that stays clear of the other lattice zeros.
pub fn contour_radius(tau: Complex64) -> f64 {
    0.1 * tau.im.min(1.0)
}

/// Evaluates an exact series at τ, with (2πi)^cpow and every phase substituted.
pub fn series_eval_num(f: &FracSeries, tau: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    let to_f64 = |r: &BigRat| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
    let base = to_f64(f.qpow());
    let step = 1.0 / f.scale() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in f.terms() {
        acc += c.embed() * e(tau * (base + k as f64 * step));
    }
    let pre = e(Complex64::new(to_f64(f.phase().exponent()), 0.0)) * (Complex64::i() * TAU).powi(f.cpow());
    Ok(acc * pre)
}
