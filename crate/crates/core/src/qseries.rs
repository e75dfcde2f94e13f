//! Truncated formal series in fractional powers of q = e^{2πiτ}.
//!
//! A [`FracSeries`] represents
//!
//! ```text
//! (2πi)^cpow · e^{2πi·a} · q^qpow · Σ_k c_k q^{k/D}
//! ```
//!
//! with coefficients `c_k ∈ Q(ζ₅)`, known exactly for every relative exponent
//! `k/D < order`. Coefficients are stored densely over the exact range; a
//! coefficient slot holding zero is simply absent from [`FracSeries::terms`].
//!
//! After every operation the series is normalized: the lowest nonzero term
//! sits at `k = 0` (its exponent moves into the prefactor) and `D` is reduced
//! by the gcd of the occupied slots. With that normalization the product of two
//! series exact below relative orders `A` and `B` is exact below `min(A, B)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, fmt_rat_strict, int, zz_mul_acc, BigRat, CycloQ5, Phase};
use crate::parallel;

/// Convolutions shorter than this stay on the calling thread.
const PAR_CONVOLUTION_MIN: usize = 96;

/// Number of slots `k ≥ 0` with `k/scale < order`.
fn slots(order: &BigRat, scale: u64) -> usize {
    if !order.is_positive() {
        return 0;
    }
    (order * int(scale as i64)).ceil().to_integer().to_usize().expect("series length fits in memory")
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[derive(Clone, PartialEq, Eq)]
pub struct FracSeries {
    scale: u64,
    phase: Phase,
    qpow: BigRat,
    cpow: i32,
    coeffs: Vec<CycloQ5>,
    order: BigRat,
}

impl FracSeries {
    /// The zero series, known to vanish below absolute exponent `order`.
    pub fn zero(order: BigRat) -> Self {
        let order = if order.is_negative() { BigRat::zero() } else { order };
        FracSeries {
            scale: 1,
            phase: Phase::one(),
            qpow: BigRat::zero(),
            cpow: 0,
            coeffs: vec![CycloQ5::zero(); slots(&order, 1)],
            order,
        }
    }

    pub fn constant(c: CycloQ5, order: BigRat) -> Self {
        Self::from_terms(1, Phase::one(), BigRat::zero(), 0, [(0, c)], order)
    }

    pub fn one(order: BigRat) -> Self {
        Self::constant(CycloQ5::one(), order)
    }

    /// Builds `(2πi)^cpow · phase · q^qpow · Σ c_k q^{k/scale}`, exact below
    /// relative exponent `order`. Terms at or beyond `order` are dropped and
    /// repeated keys are summed.
    pub fn from_terms<I>(scale: u64, phase: Phase, qpow: BigRat, cpow: i32, terms: I, order: BigRat) -> Self
    where
        I: IntoIterator<Item = (u64, CycloQ5)>,
    {
        assert!(scale > 0, "scale must be positive");
        let mut coeffs = vec![CycloQ5::zero(); slots(&order, scale)];
        for (k, c) in terms {
            if let Some(slot) = coeffs.get_mut(k as usize) {
                *slot += &c;
            }
        }
        FracSeries { scale, phase, qpow, cpow, coeffs, order }.normalized()
    }

    /// Dense constructor; `coeffs` is padded or truncated to the exact range.
    pub(crate) fn from_dense(
        scale: u64,
        phase: Phase,
        qpow: BigRat,
        cpow: i32,
        mut coeffs: Vec<CycloQ5>,
        order: BigRat,
    ) -> Self {
        coeffs.resize(slots(&order, scale), CycloQ5::zero());
        FracSeries { scale, phase, qpow, cpow, coeffs, order }.normalized()
    }

    /// A polynomial in q with rational integer coefficients `Σ c_n qⁿ`.
    pub fn from_int_coeffs(coeffs: &[i64], order: BigRat) -> Self {
        Self::from_terms(
            1,
            Phase::one(),
            BigRat::zero(),
            0,
            coeffs.iter().enumerate().map(|(k, &c)| (k as u64, CycloQ5::from_int(c))),
            order,
        )
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn phase(&self) -> &Phase {
        &self.phase
    }

    pub fn qpow(&self) -> &BigRat {
        &self.qpow
    }

    pub fn cpow(&self) -> i32 {
        self.cpow
    }

    /// Exactness bound relative to the prefactor.
    pub fn order(&self) -> &BigRat {
        &self.order
    }

    /// Exactness bound as an absolute q-exponent.
    pub fn abs_order(&self) -> BigRat {
        &self.qpow + &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloQ5::is_zero)
    }

    /// Nonzero tail terms `(k, c_k)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &CycloQ5)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u64, c))
    }

    /// Tail coefficient at the absolute exponent `e`, zero off the grid.
    /// Returns `None` when `e` is not below the exactness bound.
    pub fn coeff_at(&self, e: &BigRat) -> Option<CycloQ5> {
        if *e >= self.abs_order() {
            return None;
        }
        let k = (e - &self.qpow) * int(self.scale as i64);
        if k.is_negative() || !k.is_integer() {
            return Some(CycloQ5::zero());
        }
        let k = k.to_integer().to_usize()?;
        Some(self.coeffs.get(k).cloned().unwrap_or_else(CycloQ5::zero))
    }

    fn normalized(mut self) -> Self {
        let Some(k0) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            let cpow = self.cpow;
            let mut z = FracSeries::zero(self.abs_order());
            z.cpow = cpow;
            return z;
        };
        if k0 > 0 {
            self.coeffs.drain(..k0);
            let shift = BigRat::new(BigInt::from(k0), BigInt::from(self.scale));
            self.qpow += &shift;
            self.order -= &shift;
        }
        let g = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(self.scale, |g, (k, _)| g.gcd(&(k as u64)));
        if g > 1 {
            let scale = self.scale / g;
            let n = slots(&self.order, scale);
            let mut coeffs = vec![CycloQ5::zero(); n];
            for (k, c) in self.coeffs.into_iter().enumerate() {
                if k as u64 % g == 0 && (k as u64 / g) < n as u64 {
                    coeffs[k / g as usize] = c;
                }
            }
            self.scale = scale;
            self.coeffs = coeffs;
        }
        self
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -std::mem::replace(c, CycloQ5::zero());
        }
        out
    }

    pub fn mul_scalar(&self, s: &CycloQ5) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = &*c * s;
            }
        }
        out.normalized()
    }

    pub fn mul_rational(&self, r: &BigRat) -> Self {
        self.mul_scalar(&CycloQ5::from_rational(r.clone()))
    }

    pub fn mul_phase(&self, p: &Phase) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.phase = out.phase.mul(p);
        }
        out
    }

    /// Multiplies by (2πi)^k.
    pub fn mul_const_power(&self, k: i32) -> Self {
        let mut out = self.clone();
        out.cpow += k;
        out
    }

    /// Multiplies by the monomial q^r.
    pub fn shift_q(&self, r: &BigRat) -> Self {
        let mut out = self.clone();
        if out.is_zero() {
            out.order += r;
            return out.normalized();
        }
        out.qpow += r;
        out
    }

    /// The substitution q → q^m (τ → mτ), exact and total.
    pub fn substitute_q_power(&self, m: u64) -> Self {
        assert!(m > 0, "substitution power must be positive");
        let mr = int(m as i64);
        if self.is_zero() {
            let mut z = FracSeries::zero(self.abs_order() * &mr);
            z.cpow = self.cpow;
            return z;
        }
        let order = &self.order * &mr;
        let mut coeffs = vec![CycloQ5::zero(); slots(&order, self.scale)];
        for (k, c) in self.terms() {
            if let Some(slot) = coeffs.get_mut((k * m) as usize) {
                *slot = c.clone();
            }
        }
        FracSeries {
            scale: self.scale,
            phase: self.phase.clone(),
            qpow: &self.qpow * &mr,
            cpow: self.cpow,
            coeffs,
            order,
        }
        .normalized()
    }

    /// Renders the canonical text form.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            cpow: self.cpow,
            phase: format!("e({})", fmt_rat_strict(self.phase.exponent())),
            qpow: fmt_rat_strict(&self.qpow),
            order: fmt_rat_strict(&self.abs_order()),
            terms: self
                .terms()
                .map(|(k, c)| TermDoc {
                    exponent: fmt_rat_strict(&(&self.qpow + BigRat::new(BigInt::from(k), BigInt::from(self.scale)))),
                    coeff: cyclo_doc(c),
                })
                .collect(),
        }
    }
}

pub(crate) fn cyclo_doc(c: &CycloQ5) -> [String; 4] {
    c.coeffs().clone().map(|x| fmt_rat_strict(&x))
}

/// Machine-readable form of a series: absolute exponents, coefficients as
/// 4-arrays of `num/den` strings in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub cpow: i32,
    pub phase: String,
    pub qpow: String,
    pub order: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: String,
    pub coeff: [String; 4],
}

/// Two series on a common prefactor and scale.
struct Aligned {
    scale: u64,
    phase: Phase,
    qpow: BigRat,
    cpow: i32,
    lhs: Vec<CycloQ5>,
    rhs: Vec<CycloQ5>,
    lhs_order: BigRat,
    rhs_order: BigRat,
}

fn align(f: &FracSeries, g: &FracSeries) -> Result<Aligned> {
    let (fz, gz) = (f.is_zero(), g.is_zero());
    if !fz && !gz && f.cpow != g.cpow {
        return Err(Error::ConstantPowerMismatch { lhs: f.cpow, rhs: g.cpow });
    }
    let (phase, qpow, cpow) = match (fz, gz) {
        (false, false) => (f.phase.clone(), (&f.qpow).min(&g.qpow).clone(), f.cpow),
        (false, true) => (f.phase.clone(), f.qpow.clone(), f.cpow),
        (true, false) => (g.phase.clone(), g.qpow.clone(), g.cpow),
        (true, true) => (Phase::one(), BigRat::zero(), f.cpow),
    };
    let scale = lcm(f.scale, g.scale);
    let spread = |s: &FracSeries| -> Result<(Vec<CycloQ5>, BigRat)> {
        let rel_order = s.abs_order() - &qpow;
        let n = slots(&rel_order, scale);
        let mut out = vec![CycloQ5::zero(); n];
        if s.is_zero() {
            return Ok((out, rel_order));
        }
        let ratio = s.phase.mul(&phase.inv());
        let factor = ratio.to_cyclo().map_err(|_| {
            Error::UnabsorbablePrefactor(format!("phase ratio {} is outside Q(zeta_5)", ratio))
        })?;
        let offset = (&s.qpow - &qpow) * int(scale as i64);
        if !offset.is_integer() {
            return Err(Error::UnabsorbablePrefactor(format!(
                "q-power difference {} is not a multiple of 1/{}",
                fmt_rat(&(&s.qpow - &qpow)),
                scale
            )));
        }
        let offset = offset.to_integer().to_usize().expect("nonnegative offset");
        let step = (scale / s.scale) as usize;
        for (k, c) in s.terms() {
            let idx = offset + k as usize * step;
            if idx < n {
                out[idx] = if factor.is_one() { c.clone() } else { c * &factor };
            }
        }
        Ok((out, rel_order))
    };
    let (lhs, lhs_order) = spread(f)?;
    let (rhs, rhs_order) = spread(g)?;
    Ok(Aligned { scale, phase, qpow, cpow, lhs, rhs, lhs_order, rhs_order })
}

/// Sum of two series. The result carries the prefactor phase of `f` and the
/// smaller of the two q-powers; the other operand's phase ratio must lie in
/// Q(ζ₅) and its q-power offset must be a multiple of `1/lcm(D_f, D_g)`.
pub fn series_add(f: &FracSeries, g: &FracSeries) -> Result<FracSeries> {
    let a = align(f, g)?;
    let order = (&a.lhs_order).min(&a.rhs_order).clone();
    let n = slots(&order, a.scale);
    let coeffs: Vec<CycloQ5> = a.lhs.into_iter().zip(a.rhs).take(n).map(|(x, y)| x + y).collect();
    Ok(FracSeries::from_dense(a.scale, a.phase, a.qpow, a.cpow, coeffs, order))
}

pub fn series_sub(f: &FracSeries, g: &FracSeries) -> Result<FracSeries> {
    series_add(f, &g.neg())
}

/// Sums a nonempty list of series.
pub fn series_sum<'a, I>(items: I) -> Result<FracSeries>
where
    I: IntoIterator<Item = &'a FracSeries>,
{
    let mut it = items.into_iter();
    let first = it.next().ok_or_else(|| Error::InvalidArgument("empty sum".into()))?.clone();
    it.try_fold(first, |acc, s| series_add(&acc, s))
}

type ZzCoeff = [BigInt; 4];

/// Integer image of a series tail: `c_k = Z_k / den` with `Z_k ∈ ℤ[ζ₅]`.
fn integral_tail(s: &FracSeries, step: usize, n: usize) -> (Vec<Option<ZzCoeff>>, BigInt) {
    let den = s.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let mut out: Vec<Option<ZzCoeff>> = vec![None; n];
    for (k, c) in s.terms() {
        let idx = k as usize * step;
        if idx >= n {
            break;
        }
        let z = c.coeffs().clone().map(|x| (x * BigRat::from_integer(den.clone())).to_integer());
        out[idx] = Some(z);
    }
    (out, den)
}

/// Product of two series; prefactors multiply and the tails convolve over the
/// common refinement of their scales.
pub fn series_mul(f: &FracSeries, g: &FracSeries) -> FracSeries {
    let qpow = &f.qpow + &g.qpow;
    let cpow = f.cpow + g.cpow;
    if f.is_zero() || g.is_zero() {
        let bound = match (f.is_zero(), g.is_zero()) {
            (true, true) => f.abs_order() + g.abs_order(),
            (true, false) => f.abs_order() + &g.qpow,
            _ => g.abs_order() + &f.qpow,
        };
        let mut z = FracSeries::zero(bound);
        z.cpow = cpow;
        return z;
    }
    let scale = lcm(f.scale, g.scale);
    let order = (&f.order).min(&g.order).clone();
    let n = slots(&order, scale);
    let (a, da) = integral_tail(f, (scale / f.scale) as usize, n);
    let (b, db) = integral_tail(g, (scale / g.scale) as usize, n);
    let a_nz: Vec<usize> = (0..n).filter(|&i| a[i].is_some()).collect();
    let cell = |k: usize| -> ZzCoeff {
        let mut acc: ZzCoeff = std::array::from_fn(|_| BigInt::zero());
        for &i in a_nz.iter().take_while(|&&i| i <= k) {
            if let (Some(x), Some(y)) = (&a[i], &b[k - i]) {
                zz_mul_acc(&mut acc, x, y);
            }
        }
        acc
    };
    let raw = parallel::map_range(n, n >= PAR_CONVOLUTION_MIN, cell);
    let den = BigRat::from_integer(da * db);
    let coeffs = raw
        .into_iter()
        .map(|z| CycloQ5::from(z.map(|x| BigRat::from_integer(x) / &den)))
        .collect();
    FracSeries::from_dense(scale, f.phase.mul(&g.phase), qpow, cpow, coeffs, order)
}

/// `f^n` by repeated squaring; `f^0 = 1` at the order of `f`.
pub fn series_pow(f: &FracSeries, mut n: u32) -> FracSeries {
    let mut acc: Option<FracSeries> = None;
    let mut base = f.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => series_mul(&a, &base),
            });
        }
        n >>= 1;
        if n > 0 {
            base = series_mul(&base, &base);
        }
    }
    acc.unwrap_or_else(|| FracSeries::one(f.order.clone()))
}

/// Multiplicative inverse; the prefactor inverts monomially.
pub fn series_inv(f: &FracSeries) -> Result<FracSeries> {
    if f.is_zero() {
        return Err(Error::NotInvertible("zero tail".into()));
    }
    let a = &f.coeffs;
    let c0 = a[0].inv().map_err(|_| Error::NotInvertible("constant term vanishes".into()))?;
    let n = a.len();
    let mut b: Vec<CycloQ5> = Vec::with_capacity(n);
    b.push(c0.clone());
    let neg_c0 = -&c0;
    for k in 1..n {
        let mut acc = CycloQ5::zero();
        for j in 1..=k {
            if !a[j].is_zero() && !b[k - j].is_zero() {
                acc += &(&a[j] * &b[k - j]);
            }
        }
        b.push(if acc.is_zero() { acc } else { &acc * &neg_c0 });
    }
    Ok(FracSeries::from_dense(f.scale, f.phase.inv(), -&f.qpow, -f.cpow, b, f.order.clone()))
}

/// d/dτ = (2πi)·Θ with Θ(q^r) = r·q^r.
pub fn tau_derivative(f: &FracSeries) -> FracSeries {
    let mut out = f.clone();
    out.cpow += 1;
    let d = int(f.scale as i64);
    for (k, c) in out.coeffs.iter_mut().enumerate() {
        if !c.is_zero() {
            let e = &f.qpow + BigRat::new(BigInt::from(k), d.numer().clone());
            *c = c.scale(&e);
        }
    }
    out.normalized()
}

/// A coefficient disagreement found by [`series_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Absolute q-exponent of the first differing coefficient.
    pub exponent: BigRat,
    /// Coefficients relative to the common prefactor `(2πi)^p e(a)`.
    pub lhs: CycloQ5,
    pub rhs: CycloQ5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityOutcome {
    pub passed: bool,
    /// Absolute q-exponent below which both sides were compared.
    pub order_checked: Option<BigRat>,
    pub mismatch: Option<Mismatch>,
    /// Structural failure (unabsorbable prefactor, constant-power mismatch).
    pub failure: Option<String>,
}

/// Compares two series coefficient-wise below the smaller exactness bound.
pub fn series_equal(f: &FracSeries, g: &FracSeries) -> EqualityOutcome {
    let a = match align(f, g) {
        Ok(a) => a,
        Err(e) => {
            return EqualityOutcome { passed: false, order_checked: None, mismatch: None, failure: Some(e.to_string()) }
        }
    };
    let order = (&a.lhs_order).min(&a.rhs_order).clone();
    let n = slots(&order, a.scale);
    let checked = Some(&a.qpow + &order);
    for k in 0..n {
        if a.lhs[k] != a.rhs[k] {
            return EqualityOutcome {
                passed: false,
                order_checked: checked,
                mismatch: Some(Mismatch {
                    exponent: &a.qpow + BigRat::new(BigInt::from(k), BigInt::from(a.scale)),
                    lhs: a.lhs[k].clone(),
                    rhs: a.rhs[k].clone(),
                }),
                failure: None,
            };
        }
    }
    EqualityOutcome { passed: true, order_checked: checked, mismatch: None, failure: None }
}

/// Both sides of an identity, built at the same requested order.
#[derive(Clone, Debug)]
pub struct SeriesPair {
    pub lhs: FracSeries,
    pub rhs: FracSeries,
}

impl SeriesPair {
    pub fn new(lhs: FracSeries, rhs: FracSeries) -> Self {
        SeriesPair { lhs, rhs }
    }

    pub fn compare(&self) -> EqualityOutcome {
        series_equal(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for FracSeries {
    /// `(2*pi*i)^p * e(a) * q^(r) * [c_0 + c_1*q^(k1/D) + ... + O(q^(N))]`,
    /// exponents inside the bracket relative to the prefactor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2*pi*i)^{} * {} * q^({}) * [", self.cpow, self.phase, fmt_rat(&self.qpow))?;
        let mut first = true;
        for (k, c) in self.terms() {
            let e = BigRat::new(BigInt::from(k), BigInt::from(self.scale));
            let mono = (k > 0).then(|| format!("q^({})", fmt_rat(&e)));
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let mag = r.abs();
                    let body = match (&mono, mag.is_one()) {
                        (Some(m), true) => m.clone(),
                        (Some(m), false) => format!("{}*{}", fmt_rat(&mag), m),
                        (None, _) => fmt_rat(&mag),
                    };
                    (r.is_negative(), body)
                }
                None => {
                    let body = match &mono {
                        Some(m) => format!("{}*{}", c, m),
                        None => c.to_string(),
                    };
                    (false, body)
                }
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))]", fmt_rat(&self.order))
    }
}

impl fmt::Debug for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FracSeries(D={}) {}", self.scale, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64], order: i64) -> FracSeries {
        FracSeries::from_int_coeffs(c, int(order))
    }

    #[test]
    fn multiplicative_identity() {
        let f = poly(&[1, -3, 0, 5], 10);
        assert_eq!(series_mul(&f, &FracSeries::one(int(10))), f);
    }

    #[test]
    fn difference_of_squares_with_prefactor() {
        let a = poly(&[1, -1], 10).shift_q(&rat(1, 8));
        let b = poly(&[1, 1], 10).shift_q(&rat(1, 8));
        let p = series_mul(&a, &b);
        assert_eq!(p, poly(&[1, 0, -1], 10).shift_q(&rat(1, 4)));
        assert_eq!(p.qpow(), &rat(1, 4));
    }

    #[test]
    fn binomial_fifth_power() {
        let f = series_pow(&poly(&[1, -1], 12), 5);
        assert_eq!(f, poly(&[1, -5, 10, -10, 5, -1], 12));
        assert_eq!(series_pow(&f, 0), FracSeries::one(int(12)));
        assert_eq!(series_pow(&f, 1), f);
    }

    #[test]
    fn geometric_inverse() {
        let inv = series_inv(&poly(&[1, -1], 8)).unwrap();
        assert_eq!(inv, poly(&[1; 8], 8));
        assert_eq!(series_inv(&FracSeries::one(int(5))).unwrap(), FracSeries::one(int(5)));
        assert!(matches!(series_inv(&FracSeries::zero(int(5))), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn add_absorbs_compatible_prefactors() {
        let s1 = FracSeries::from_terms(10, Phase::one(), rat(1, 20), 0, [(0, CycloQ5::one()), (3, CycloQ5::one())], int(5));
        let s2 = FracSeries::from_terms(10, Phase::from_ratio(1, 5), rat(1, 4), 0, [(0, CycloQ5::one())], int(5));
        let s = series_add(&s1, &s2).unwrap();
        assert_eq!(s.qpow(), &rat(1, 20));
        // q^{1/4} sits 2/10 above q^{1/20}, carrying ζ.
        assert_eq!(s.coeff_at(&rat(1, 4)).unwrap(), CycloQ5::zeta());
        assert_eq!(s.coeff_at(&rat(7, 20)).unwrap(), CycloQ5::one());
    }

    #[test]
    fn add_rejects_mismatches() {
        let a = poly(&[1, 1], 5).mul_const_power(1);
        let b = poly(&[1, 1], 5).mul_const_power(2);
        assert_eq!(series_add(&a, &b), Err(Error::ConstantPowerMismatch { lhs: 1, rhs: 2 }));
        let c = poly(&[1], 5).mul_phase(&Phase::from_ratio(1, 4));
        assert!(matches!(series_add(&poly(&[1], 5), &c), Err(Error::UnabsorbablePrefactor(_))));
        let d = poly(&[1], 5).shift_q(&rat(1, 3));
        assert!(matches!(series_add(&poly(&[1], 5), &d), Err(Error::UnabsorbablePrefactor(_))));
        let f = poly(&[2, 7], 5);
        assert_eq!(series_add(&f, &FracSeries::zero(int(5))).unwrap(), f);
    }

    #[test]
    fn equality_respects_truncation() {
        let mut long = vec![0i64; 51];
        long[0] = 1;
        long[1] = -1;
        long[50] = 1;
        let a = poly(&[1, -1], 30);
        let b = poly(&long, 60);
        let out = series_equal(&a, &b);
        assert!(out.passed);
        assert_eq!(out.order_checked, Some(int(30)));
        let c = poly(&[1, -1, 0, 2], 30);
        let out = series_equal(&a, &c);
        assert!(!out.passed);
        let m = out.mismatch.unwrap();
        assert_eq!(m.exponent, int(3));
        assert_eq!((m.lhs, m.rhs), (CycloQ5::zero(), CycloQ5::from_int(2)));
    }

    #[test]
    fn tau_derivative_of_monomials() {
        assert!(tau_derivative(&FracSeries::one(int(5))).is_zero());
        let q3 = poly(&[0, 0, 0, 1], 10);
        let d = tau_derivative(&q3);
        assert_eq!(d, poly(&[0, 0, 0, 3], 10).mul_const_power(1));
        let frac = FracSeries::one(int(4)).shift_q(&rat(1, 24));
        let d = tau_derivative(&frac);
        assert_eq!(d.coeff_at(&rat(1, 24)).unwrap(), CycloQ5::from_rational(rat(1, 24)));
    }

    #[test]
    fn substitution_rescales_exponents() {
        let f = poly(&[1, -1, 2], 3).shift_q(&rat(1, 24));
        let g = f.substitute_q_power(5);
        assert_eq!(g.qpow(), &rat(5, 24));
        assert_eq!(g.abs_order(), rat(5, 24) + int(15));
        assert_eq!(g.coeff_at(&(rat(5, 24) + int(10))).unwrap(), CycloQ5::from_int(2));
        assert_eq!(g.coeff_at(&(rat(5, 24) + int(1))).unwrap(), CycloQ5::zero());
    }

    #[test]
    fn rendering() {
        let f = poly(&[1, -5, 5, 10], 4).shift_q(&rat(1, 24));
        assert_eq!(f.render(), "(2*pi*i)^0 * e(0) * q^(1/24) * [1 - 5*q^(1) + 5*q^(2) + 10*q^(3) + O(q^(4))]");
        let g = FracSeries::from_terms(2, Phase::from_ratio(1, 4), int(0), 1, [(1, CycloQ5::zeta())], int(2));
        assert_eq!(g.render(), "(2*pi*i)^1 * e(1/4) * q^(1/2) * [(z) + O(q^(3/2))]");
        assert_eq!(FracSeries::zero(int(3)).render(), "(2*pi*i)^0 * e(0) * q^(0) * [0 + O(q^(3))]");
    }

    #[test]
    fn normalization_reduces_scale() {
        let f = FracSeries::from_terms(10, Phase::one(), int(0), 0, [(0, CycloQ5::one()), (10, CycloQ5::one())], int(3));
        assert_eq!(f.scale(), 1);
        assert_eq!(f.order(), &int(3));
        let g = FracSeries::from_terms(10, Phase::one(), int(0), 0, [(4, CycloQ5::one()), (6, CycloQ5::one())], int(3));
        assert_eq!(g.qpow(), &rat(2, 5));
        assert_eq!(g.scale(), 5);
        assert_eq!(g.abs_order(), int(3));
    }
}
