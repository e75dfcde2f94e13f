//! Theta constants with rational characteristics, Dedekind eta and eta
//! quotients as exact [`FracSeries`].
//!
//! With x = q^{1/2} the theta function with characteristic `[ε; ε′]` is
//!
//! ```text
//! θ[ε;ε′](ζ,τ) = Σ_n exp(2πi[½(n+ε/2)²τ + (n+ε/2)(ζ+ε′/2)])
//! ```
//!
//! and its m-th ζ-derivative at ζ = 0 is the same sum weighted by
//! `(2πi(n+ε/2))^m`. The constant `e(εε′/4)` is pulled into the prefactor,
//! leaving `e(nε′/2)` in the tail; for ε′ ∈ (1/5)ℤ this is a power of ζ₁₀.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, frac, int, parse_rat, rat, BigRat, CycloQ5, Phase};
use crate::qseries::{series_inv, series_mul, series_pow, FracSeries};

/// A characteristic `[ε; ε′]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ThetaChar {
    pub eps: BigRat,
    pub eps_prime: BigRat,
}

impl ThetaChar {
    pub fn new(eps: BigRat, eps_prime: BigRat) -> Self {
        ThetaChar { eps, eps_prime }
    }

    /// `[a/5; b/5]`.
    pub fn fifths(a: i64, b: i64) -> Self {
        ThetaChar::new(rat(a, 5), rat(b, 5))
    }

    pub fn negated(&self) -> Self {
        ThetaChar::new(-&self.eps, -&self.eps_prime)
    }

    pub fn eps_f64(&self) -> f64 {
        self.eps.to_f64().unwrap_or(f64::NAN)
    }

    pub fn eps_prime_f64(&self) -> f64 {
        self.eps_prime.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ThetaChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", fmt_rat(&self.eps), fmt_rat(&self.eps_prime))
    }
}

impl FromStr for ThetaChar {
    type Err = Error;

    /// Accepts `e,e'` or `[e;e']`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t
            .split_once([',', ';'])
            .ok_or_else(|| Error::Parse(format!("characteristic `{s}` must look like `1/5,3/5`")))?;
        Ok(ThetaChar::new(parse_rat(a)?, parse_rat(b)?))
    }
}

/// The twelve level-five characteristics appearing in the identity catalog.
pub fn catalog_chars() -> Vec<ThetaChar> {
    [(5, 1), (5, 3), (1, 5), (3, 5), (1, 1), (3, 3), (1, 3), (3, 9), (1, 7), (3, 1), (1, 9), (3, 7)]
        .into_iter()
        .map(|(a, b)| ThetaChar::fifths(a, b))
        .collect()
}

/// `[1; 1]`, the odd characteristic.
pub fn odd_char() -> ThetaChar {
    ThetaChar::new(int(1), int(1))
}

/// e(r) as an element of Q(ζ₅), or an error when it lies outside.
fn phase_coeff(r: BigRat) -> Result<CycloQ5> {
    Phase::new(r).to_cyclo()
}

/// m-th ζ-derivative of θ[ε;ε′] at ζ = 0, by direct summation over n.
///
/// The result carries `cpow = m`; tail coefficients are `(n+ε/2)^m e(nε′/2)`.
pub fn theta_const(ch: &ThetaChar, m: u32, order: &BigRat) -> Result<FracSeries> {
    if m > 3 {
        return Err(Error::InvalidArgument(format!("derivative order {m} > 3")));
    }
    if !order.is_positive() {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let half_eps = &ch.eps / int(2);
    let expo = |n: &BigInt| -> BigRat {
        let a = BigRat::from_integer(n.clone()) + &half_eps;
        &a * &a / int(2)
    };
    let n0: BigInt = (-&half_eps).round().to_integer();
    let base = expo(&n0);
    // Exponents ½(n+ε/2)² − base have denominator dividing 2·den(ε).
    let scale = (ch.eps.denom() * BigInt::from(2u8)).to_u64().expect("small denominator");
    let dscale = int(scale as i64);
    let mut terms: Vec<(u64, CycloQ5)> = Vec::new();
    let mut push = |n: &BigInt| -> Result<bool> {
        let rel = expo(n) - &base;
        if rel >= *order {
            return Ok(false);
        }
        let a = BigRat::from_integer(n.clone()) + &half_eps;
        let weight = CycloQ5::from_rational(num_traits::pow(a, m as usize));
        if !weight.is_zero() {
            let ph = phase_coeff(BigRat::from_integer(n.clone()) * &ch.eps_prime / int(2))?;
            let k = (rel * &dscale).to_integer().to_u64().expect("integral slot");
            terms.push((k, &weight * &ph));
        }
        Ok(true)
    };
    let mut n = n0.clone();
    while push(&n)? {
        n += 1;
    }
    let mut n = &n0 - 1;
    while push(&n)? {
        n -= 1;
    }
    let prefactor = Phase::new(&ch.eps * &ch.eps_prime / int(4));
    Ok(FracSeries::from_terms(scale, prefactor, base, m as i32, terms, order.clone()))
}

/// Rewrites θ[ε;ε′](0) as `phase · θ[ε₀;ε′₀](0)` with ε₀ ∈ [0, 1], using the
/// 2-shift rule and the negation symmetry of theta constants.
pub fn reduce_for_product(ch: &ThetaChar) -> (Phase, ThetaChar) {
    let two = int(2);
    // ε = ε₁ + 2m with ε₁ ∈ [0, 2).
    let m = (&ch.eps / &two).floor();
    let (p1, c1) = char_shift_phase(ch, &(-&m).to_integer(), &BigInt::zero());
    if c1.eps <= BigRat::one() {
        return (p1, c1);
    }
    // ε₁ ∈ (1, 2): θ[ε₁;ε′] = θ[−ε₁;−ε′] and −ε₁ + 2 ∈ (0, 1).
    let neg = c1.negated();
    let (p2, c2) = char_shift_phase(&neg, &BigInt::one(), &BigInt::zero());
    (p1.mul(&p2), c2)
}

/// θ[ε;ε′](0) from the Jacobi triple product
///
/// ```text
/// e(εε′/4) x^{ε²/4} Π (1 − x^{2n})(1 + e(ε′/2) x^{2n−1+ε})(1 + e(−ε′/2) x^{2n−1−ε}),  x = q^{1/2}
/// ```
pub fn theta_const_product(ch: &ThetaChar, order: &BigRat) -> Result<FracSeries> {
    if !order.is_positive() {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let (outer, red) = reduce_for_product(ch);
    let eps = &red.eps;
    let scale = (eps.denom() * BigInt::from(2u8)).to_u64().expect("small denominator");
    let d = int(scale as i64);
    let len = (order * &d).ceil().to_integer().to_usize().expect("length");
    let mut v = vec![CycloQ5::zero(); len];
    if len == 0 {
        return Ok(FracSeries::zero(order.clone()));
    }
    v[0] = CycloQ5::one();
    let up = phase_coeff(&red.eps_prime / int(2))?;
    let down = phase_coeff(-&red.eps_prime / int(2))?;
    let slot = |e: BigRat| -> usize { (e * &d).to_integer().to_usize().expect("nonnegative slot") };
    let mut n: i64 = 1;
    loop {
        let e_full = int(n);
        let e_up = (int(2 * n - 1) + eps) / int(2);
        let e_down = (int(2 * n - 1) - eps) / int(2);
        if e_full >= *order && e_up >= *order && e_down >= *order {
            break;
        }
        mul_binomial(&mut v, slot(e_full), &-CycloQ5::one());
        mul_binomial(&mut v, slot(e_up), &up);
        mul_binomial(&mut v, slot(e_down), &down);
        n += 1;
    }
    let prefactor = Phase::new(eps * &red.eps_prime / int(4)).mul(&outer);
    Ok(FracSeries::from_dense(scale, prefactor, eps * eps / int(8), 0, v, order.clone()))
}

/// In-place `v ← v · (1 + c·q^{j/D})`, truncated to `v.len()`.
pub(crate) fn mul_binomial(v: &mut [CycloQ5], j: usize, c: &CycloQ5) {
    if j == 0 {
        let f = CycloQ5::one() + c;
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &f;
            }
        }
        return;
    }
    for k in (j..v.len()).rev() {
        if !v[k - j].is_zero() {
            let t = &v[k - j] * c;
            v[k] += &t;
        }
    }
}

/// In-place `v ← v / (1 + c·q^{j/D})` for `j > 0`, truncated to `v.len()`.
pub(crate) fn div_binomial(v: &mut [CycloQ5], j: usize, c: &CycloQ5) {
    assert!(j > 0, "division needs a unit constant term");
    for k in j..v.len() {
        if !v[k - j].is_zero() {
            let t = &v[k - j] * c;
            v[k] = &v[k] - &t;
        }
    }
}

/// Π_{n≥1} (1 − q^{mult·n}), truncated below `order`.
pub fn euler_product(mult: &BigRat, order: &BigRat) -> Result<FracSeries> {
    if !mult.is_positive() {
        return Err(Error::InvalidArgument("eta multiplier must be positive".into()));
    }
    let scale = mult.denom().to_u64().expect("small denominator");
    let step = mult.numer().to_usize().expect("small numerator");
    let len = (order * int(scale as i64)).ceil().to_integer().to_usize().unwrap_or(0);
    let mut v = vec![CycloQ5::zero(); len];
    if len > 0 {
        v[0] = CycloQ5::one();
    }
    let minus_one = -CycloQ5::one();
    let mut j = step;
    while j < len {
        mul_binomial(&mut v, j, &minus_one);
        j += step;
    }
    Ok(FracSeries::from_dense(scale, Phase::one(), BigRat::zero(), 0, v, order.clone()))
}

/// η(mult·τ) = q^{mult/24} Π (1 − q^{mult·n}); `order` bounds the product, before the q^{mult/24} shift.
pub fn eta_q(mult: &BigRat, order: &BigRat) -> Result<FracSeries> {
    Ok(euler_product(mult, order)?.shift_q(&(mult / int(24))))
}

/// Π η(mᵢτ)^{eᵢ}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(String, i32)>,
}

impl EtaQuotientSpec {
    pub fn new(factors: &[(BigRat, i32)]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("eta quotient needs at least one factor".into()));
        }
        for (i, (m, _)) in factors.iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::InvalidArgument(format!("multiplier {} is not positive", fmt_rat(m))));
            }
            if factors[..i].iter().any(|(o, _)| o == m) {
                return Err(Error::InvalidArgument(format!("multiplier {} repeated", fmt_rat(m))));
            }
        }
        Ok(EtaQuotientSpec { factors: factors.iter().map(|(m, e)| (fmt_rat(m), *e)).collect() })
    }

    pub fn factors(&self) -> Vec<(BigRat, i32)> {
        self.factors.iter().map(|(m, e)| (parse_rat(m).expect("validated"), *e)).collect()
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = Error;

    /// `mult:exp/mult:exp/...`, e.g. `5:5/1:-1` for η⁵(5τ)/η(τ);
    /// factors may also be separated by commas.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let s = s.replace(',', " ");
        for part in s.split_whitespace().flat_map(split_factors) {
            let (m, e) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("eta factor `{part}` must be mult:exp")))?;
            let e: i32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?;
            out.push((parse_rat(m)?, e));
        }
        EtaQuotientSpec::new(&out)
    }
}

// `5:5/1:-1` → ["5:5", "1:-1"]; `1/5:1/1:-1` → ["1/5:1", "1:-1"].
fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut seen_colon = false;
    let mut in_exp_digits = false;
    for ch in s.chars() {
        if ch == ':' {
            seen_colon = true;
            in_exp_digits = false;
            cur.push(ch);
        } else if ch == '/' && seen_colon && in_exp_digits {
            out.push(std::mem::take(&mut cur));
            seen_colon = false;
            in_exp_digits = false;
        } else {
            if seen_colon && (ch.is_ascii_digit() || ch == '-') {
                in_exp_digits = true;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Π η(mᵢτ)^{eᵢ}.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: &BigRat) -> Result<FracSeries> {
    let mut acc = FracSeries::one(order.clone());
    for (m, e) in spec.factors() {
        let base = eta_q(&m, order)?;
        let p = series_pow(&base, e.unsigned_abs());
        let p = if e < 0 { series_inv(&p)? } else { p };
        acc = series_mul(&acc, &p);
    }
    Ok(acc)
}

/// Shifts `ch = [ε; ε′]` to `[ε+2m; ε′+2n]` and returns the multiplier
/// `e^{πiεn}` with `θ[ε+2m; ε′+2n] = e^{πiεn}·θ[ε; ε′]`.
pub fn char_shift_phase(ch: &ThetaChar, m: &BigInt, n: &BigInt) -> (Phase, ThetaChar) {
    let mr = BigRat::from_integer(m.clone());
    let nr = BigRat::from_integer(n.clone());
    let phase = Phase::new(&ch.eps * &nr / int(2));
    let shifted = ThetaChar::new(&ch.eps + &mr * int(2), &ch.eps_prime + &nr * int(2));
    (phase, shifted)
}

/// Negation rule at ζ = 0: θ^{(m)}[−ε;−ε′] = (−1)^m θ^{(m)}[ε;ε′].
pub fn negation_sign(m: u32) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Phase of the prefactor `e(εε′/4)` (exposed for diagnostics).
pub fn prefactor_phase(ch: &ThetaChar) -> Phase {
    Phase::new(frac(&(&ch.eps * &ch.eps_prime / int(4))))
}
