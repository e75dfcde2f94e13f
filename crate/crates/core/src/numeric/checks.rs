//! Seeded numeric checks of the z-dependent statements.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    contour_radius, e, log_theta_second_derivative, residue_num, series_eval_num, theta_num, ComplexPoint,
    NumericConfig,
};
use crate::error::{Error, Result};
use crate::exact::{int, CycloQ5};
use crate::parallel;
use crate::theta::{catalog_chars, odd_char, theta_const, ThetaChar};

/// The two three-term relations among theta functions with ε = 1 and ε′ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeTermRelation {
    /// Characteristics [1; k/5].
    First,
    /// Characteristics [k/5; 1], with ζ-twisted coefficients.
    Second,
}

fn zeta(k: i64) -> Complex64 {
    CycloQ5::zeta_pow(k).embed()
}

fn random_z(rng: &mut impl Rng, tau: Complex64) -> Complex64 {
    let h = 0.5 * tau.im;
    Complex64::new(rng.random_range(0.0..1.0), rng.random_range(-h..h))
}

fn max_norm(xs: &[Complex64]) -> f64 {
    xs.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// |Σ terms| relative to the largest term.
fn relative_sum(terms: &[Complex64]) -> f64 {
    let scale = max_norm(terms);
    let sum: Complex64 = terms.iter().sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn three_term_parts(which: ThreeTermRelation, z: Complex64, tau: Complex64, cfg: &NumericConfig) -> Result<[Complex64; 3]> {
    let at0 = ComplexPoint::at_origin(tau)?;
    let at = ComplexPoint::new(z, tau)?;
    let c = |ch: ThetaChar| theta_num(&at0, &ch, 0, cfg);
    let f = |ch: ThetaChar| theta_num(&at, &ch, 0, cfg);
    let odd = f(odd_char())?;
    Ok(match which {
        ThreeTermRelation::First => {
            let (r, t) = (ThetaChar::fifths(5, 1), ThetaChar::fifths(5, 3));
            [
                c(t.clone())?.powu(2) * f(r.clone())? * f(ThetaChar::fifths(5, 9))?,
                -c(r.clone())?.powu(2) * f(t.clone())? * f(ThetaChar::fifths(5, 7))?,
                c(r)? * c(t)? * odd * odd,
            ]
        }
        ThreeTermRelation::Second => {
            let (r, t) = (ThetaChar::fifths(1, 5), ThetaChar::fifths(3, 5));
            [
                -zeta(2) * c(t.clone())?.powu(2) * f(r.clone())? * f(ThetaChar::fifths(9, 5))?,
                zeta(3) * c(r.clone())?.powu(2) * f(t.clone())? * f(ThetaChar::fifths(7, 5))?,
                c(r)? * c(t)? * odd * odd,
            ]
        }
    })
}

/// Largest normalized residual of a three-term relation over `samples` seeded (z, τ).
pub fn check_three_term(which: ThreeTermRelation, samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        let z = random_z(&mut rng, tau);
        Ok(relative_sum(&three_term_parts(which, z, tau, cfg)?))
    }))
}

/// (θ′/θ)² − θ″/θ + (log θ)″ at one point, relative to the largest term; the
/// last term comes from the product expansion, the others from the sum.
pub fn log_derivative_residual(p: &ComplexPoint, ch: &ThetaChar, cfg: &NumericConfig) -> Result<f64> {
    let t0 = theta_num(p, ch, 0, cfg)?;
    let t1 = theta_num(p, ch, 1, cfg)?;
    let t2 = theta_num(p, ch, 2, cfg)?;
    let log2 = log_theta_second_derivative(p, ch, cfg)?;
    let terms = [(t1 / t0).powu(2), -t2 / t0, log2];
    if terms.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite(format!("theta{ch} vanishes at {p:?}")));
    }
    Ok(relative_sum(&terms))
}

pub fn check_log_derivative_square(samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    let chars = catalog_chars();
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        let z = random_z(&mut rng, tau);
        let ch = &chars[rng.random_range(0..chars.len())];
        log_derivative_residual(&ComplexPoint::new(z, tau)?, ch, cfg)
    }))
}

/// θ²[a](z)·θ[b](z)/θ³[1;1](z), an elliptic function with its only pole at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSet {
    pub label: String,
    pub square: ThetaChar,
    pub single: ThetaChar,
}

impl ResidueSet {
    fn new(square: (i64, i64), single: (i64, i64)) -> Self {
        let square = ThetaChar::fifths(square.0, square.1);
        let single = ThetaChar::fifths(single.0, single.1);
        ResidueSet { label: format!("theta^2{square} theta{single} / theta^3[1;1]"), square, single }
    }

    pub fn eval(&self, p: &ComplexPoint, cfg: &NumericConfig) -> Result<Complex64> {
        let a = theta_num(p, &self.square, 0, cfg)?;
        let b = theta_num(p, &self.single, 0, cfg)?;
        let d = theta_num(p, &odd_char(), 0, cfg)?;
        Ok(a * a * b / (d * d * d))
    }

    /// The φ/ψ pairs whose residues at the origin must vanish.
    pub fn all() -> Vec<ResidueSet> {
        [
            ((5, 1), (5, 3)),
            ((5, 3), (5, -1)),
            ((1, 5), (3, 5)),
            ((3, 5), (-1, 5)),
            ((1, 1), (3, 3)),
            ((3, 3), (-1, -1)),
            ((1, 3), (3, 9)),
            ((3, 9), (-1, -3)),
            ((1, 7), (3, 1)),
            ((3, 1), (-1, 3)),
            ((1, 9), (3, -3)),
            ((3, 7), (-1, 1)),
        ]
        .into_iter()
        .map(|(a, b)| ResidueSet::new(a, b))
        .collect()
    }
}

/// Largest |Res_{z=0}| over every residue set and `samples` seeded τ.
pub fn check_residues(samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    let sets = ResidueSet::all();
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        let origin = Complex64::new(0.0, 0.0);
        max_of(sets.iter().map(|s| {
            let r = residue_num(|z| s.eval(&ComplexPoint::new(z, tau)?, cfg), origin, contour_radius(tau), cfg)?;
            Ok(r.norm())
        }))
    }))
}

/// θ(z + τ) against e(−ε′/2 − z − τ/2)·θ(z), relative.
pub fn check_quasi_periodicity(samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    let chars = catalog_chars();
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        let z = random_z(&mut rng, tau);
        let ch = &chars[rng.random_range(0..chars.len())];
        let lhs = theta_num(&ComplexPoint::new(z + tau, tau)?, ch, 0, cfg)?;
        let rhs = e(-ch.eps_prime_f64() / 2.0 - z - tau / 2.0) * theta_num(&ComplexPoint::new(z, tau)?, ch, 0, cfg)?;
        let scale = lhs.norm().max(rhs.norm());
        Ok(if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale })
    }))
}

/// |θ[ε;ε′](z₀)| at z₀ = (1−ε)/2·τ + (1−ε′)/2, for every catalog characteristic.
pub fn check_zero_location(samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    let chars = catalog_chars();
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        max_of(chars.iter().map(|ch| {
            let z0 = (1.0 - ch.eps_f64()) / 2.0 * tau + (1.0 - ch.eps_prime_f64()) / 2.0;
            Ok(theta_num(&ComplexPoint::new(z0, tau)?, ch, 0, cfg)?.norm())
        }))
    }))
}

/// Analytic θ′ against a central difference with step 1e−5, relative.
pub fn check_finite_difference(samples: usize, cfg: &NumericConfig, par: bool) -> Result<f64> {
    let chars = catalog_chars();
    let h = 1e-5;
    max_of(parallel::map_range(samples, par, |i| {
        let mut rng = cfg.sample_rng(i);
        let tau = cfg.random_tau(&mut rng);
        let z = random_z(&mut rng, tau);
        let ch = &chars[rng.random_range(0..chars.len())];
        let at = |w: Complex64, m| theta_num(&ComplexPoint::new(w, tau)?, ch, m, cfg);
        let analytic = at(z, 1)?;
        let diff = (at(z + h, 0)? - at(z - h, 0)?) / (2.0 * h);
        Ok((analytic - diff).norm() / analytic.norm().max(at(z, 0)?.norm()))
    }))
}

/// Exact theta constants evaluated at τ against direct summation, relative.
/// Covers every catalog characteristic and θ′[1;1].
pub fn check_bridge(tau: Complex64, cfg: &NumericConfig) -> Result<f64> {
    let order = int(20);
    let at0 = ComplexPoint::at_origin(tau)?;
    let mut cases: Vec<(ThetaChar, u32)> = catalog_chars().into_iter().map(|c| (c, 0)).collect();
    cases.push((odd_char(), 1));
    max_of(cases.into_iter().map(|(ch, m)| {
        let exact = series_eval_num(&theta_const(&ch, m, &order)?, tau)?;
        let direct = theta_num(&at0, &ch, m, cfg)?;
        Ok((exact - direct).norm() / direct.norm())
    }))
}

/// The numeric checks run by `numeric-check` and the acceptance suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericCheck {
    ThreeTermFirst,
    ThreeTermSecond,
    LogDerivativeSquare,
    Residues,
    QuasiPeriodicity,
    ZeroLocation,
    FiniteDifference,
    Bridge,
}

impl NumericCheck {
    pub const ALL: [NumericCheck; 8] = [
        NumericCheck::ThreeTermFirst,
        NumericCheck::ThreeTermSecond,
        NumericCheck::LogDerivativeSquare,
        NumericCheck::Residues,
        NumericCheck::QuasiPeriodicity,
        NumericCheck::ZeroLocation,
        NumericCheck::FiniteDifference,
        NumericCheck::Bridge,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NumericCheck::ThreeTermFirst => "N1a",
            NumericCheck::ThreeTermSecond => "N1b",
            NumericCheck::LogDerivativeSquare => "N2",
            NumericCheck::Residues => "N3",
            NumericCheck::QuasiPeriodicity => "N4",
            NumericCheck::ZeroLocation => "N5",
            NumericCheck::FiniteDifference => "N6",
            NumericCheck::Bridge => "N7",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            NumericCheck::ThreeTermFirst => "three-term relation, characteristics [1;k/5]",
            NumericCheck::ThreeTermSecond => "three-term relation, characteristics [k/5;1]",
            NumericCheck::LogDerivativeSquare => "(theta'/theta)^2 = theta''/theta - (log theta)''",
            NumericCheck::Residues => "residues at 0 of the phi/psi elliptic functions",
            NumericCheck::QuasiPeriodicity => "theta(z+tau) = e(-e'/2 - z - tau/2) theta(z)",
            NumericCheck::ZeroLocation => "theta vanishes at (1-e)/2 tau + (1-e')/2",
            NumericCheck::FiniteDifference => "analytic theta' against a central difference",
            NumericCheck::Bridge => "exact theta constants evaluated at tau = 0.2 + 1.4i",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            NumericCheck::ThreeTermFirst | NumericCheck::ThreeTermSecond | NumericCheck::LogDerivativeSquare => 1e-8,
            NumericCheck::Residues => 1e-8,
            NumericCheck::QuasiPeriodicity | NumericCheck::ZeroLocation | NumericCheck::Bridge => 1e-9,
            NumericCheck::FiniteDifference => 1e-6,
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            NumericCheck::Residues => 5,
            NumericCheck::QuasiPeriodicity => 50,
            NumericCheck::FiniteDifference => 3,
            NumericCheck::Bridge => 1,
            _ => 20,
        }
    }
}

impl fmt::Display for NumericCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NumericCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NumericCheck::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

pub fn numeric_catalog() -> &'static [NumericCheck] {
    &NumericCheck::ALL
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl NumericReport {
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let residual = self.residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
        let mut line = format!(
            "{status} {:<6} residual {residual} (tol {:.0e}, {} samples, seed {}) {}",
            self.id, self.tolerance, self.samples, self.seed, self.title
        );
        if let Some(e) = &self.error {
            line.push_str(&format!("; error: {e}"));
        }
        line
    }
}

/// Runs one check; `samples = None` uses the check's default and `tolerance`
/// overrides the pinned one.
pub fn run_numeric(
    check: NumericCheck,
    samples: Option<usize>,
    tolerance: Option<f64>,
    cfg: &NumericConfig,
    par: bool,
) -> NumericReport {
    let start = Instant::now();
    let n = samples.unwrap_or_else(|| check.default_samples());
    let outcome = cfg.validate().and_then(|()| match check {
        NumericCheck::ThreeTermFirst => check_three_term(ThreeTermRelation::First, n, cfg, par),
        NumericCheck::ThreeTermSecond => check_three_term(ThreeTermRelation::Second, n, cfg, par),
        NumericCheck::LogDerivativeSquare => check_log_derivative_square(n, cfg, par),
        NumericCheck::Residues => check_residues(n, cfg, par),
        NumericCheck::QuasiPeriodicity => check_quasi_periodicity(n, cfg, par),
        NumericCheck::ZeroLocation => check_zero_location(n, cfg, par),
        NumericCheck::FiniteDifference => check_finite_difference(n, cfg, par),
        NumericCheck::Bridge => check_bridge(Complex64::new(0.2, 1.4), cfg),
    });
    let tol = tolerance.unwrap_or_else(|| check.tolerance());
    let (residual, error) = match outcome {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    NumericReport {
        id: check.id().to_string(),
        title: check.title().to_string(),
        passed: residual.is_some_and(|r| r < tol),
        residual,
        tolerance: tol,
        samples: if check == NumericCheck::Bridge { 1 } else { n },
        seed: cfg.rng_seed,
        error,
        elapsed: start.elapsed(),
    }
}

pub fn run_numeric_all(cfg: &NumericConfig, par: bool) -> Vec<NumericReport> {
    NumericCheck::ALL.iter().map(|&c| run_numeric(c, None, None, cfg, par)).collect()
}
