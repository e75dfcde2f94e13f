//! Small vocabulary shared by the catalog builders.

use num_traits::Zero;

use crate::arithfn::{divisor_table, DivisorKernel};
use crate::error::{Error, Result};
use crate::exact::{int, rat, BigRat, CycloQ5, Phase};
use crate::qseries::{series_add, series_mul, series_pow, series_inv, tau_derivative, FracSeries, SeriesPair};
use crate::theta::{div_binomial, eta_q, mul_binomial, theta_const, ThetaChar};

/// One side-by-side comparison inside an identity.
pub struct Leg {
    pub label: &'static str,
    pub pair: SeriesPair,
}

impl Leg {
    pub fn new(label: &'static str, lhs: FracSeries, rhs: FracSeries) -> Self {
        Leg { label, pair: SeriesPair::new(lhs, rhs) }
    }
}

pub fn z(k: i64) -> CycloQ5 {
    CycloQ5::zeta_pow(k)
}

pub fn n(v: i64) -> CycloQ5 {
    CycloQ5::from_int(v)
}

pub fn q(num: i64, den: i64) -> CycloQ5 {
    CycloQ5::from_rational(rat(num, den))
}

pub fn s5() -> CycloQ5 {
    CycloQ5::sqrt5()
}

pub fn ch(a: i64, b: i64) -> ThetaChar {
    ThetaChar::fifths(a, b)
}

/// Builder context: every elementary object is expanded to the same order.
pub struct Ctx {
    pub order: BigRat,
}

impl Ctx {
    pub fn new(order: &BigRat) -> Self {
        Ctx { order: order.clone() }
    }

    pub fn th(&self, c: &ThetaChar, m: u32) -> Result<FracSeries> {
        theta_const(c, m, &self.order)
    }

    /// θ′[1;1].
    pub fn p(&self) -> Result<FracSeries> {
        self.th(&ch(5, 5), 1)
    }

    /// θ[ε;ε′](0, 5τ), built at a fifth of the order and rescaled.
    pub fn th_5tau(&self, c: &ThetaChar) -> Result<FracSeries> {
        let fifth = (&self.order / int(5)).ceil();
        Ok(theta_const(c, 0, &fifth)?.substitute_q_power(5))
    }

    /// Π η(mᵢτ)^{eᵢ} for multipliers given as (num, den).
    pub fn eta_quot(&self, factors: &[((i64, i64), i32)]) -> Result<FracSeries> {
        let mut acc = FracSeries::one(self.order.clone());
        for &((a, b), e) in factors {
            let base = eta_q(&rat(a, b), &self.order)?;
            let p = series_pow(&base, e.unsigned_abs());
            let p = if e < 0 { series_inv(&p)? } else { p };
            acc = series_mul(&acc, &p);
        }
        Ok(acc)
    }

    /// η⁵(τ)/η(5τ)
    pub fn z_quot(&self) -> Result<FracSeries> {
        self.eta_quot(&[((1, 1), 5), ((5, 1), -1)])
    }

    /// η⁵(5τ)/η(τ)
    pub fn w_quot(&self) -> Result<FracSeries> {
        self.eta_quot(&[((5, 1), 5), ((1, 1), -1)])
    }

    /// Σ_{n≥0} c(n) q^{n/scale}, each coefficient optionally twisted by `twist^n`.
    pub fn q_sum<F>(&self, scale: u64, twist: Option<&CycloQ5>, f: F) -> FracSeries
    where
        F: Fn(u64) -> CycloQ5,
    {
        let len = slots(&self.order, scale);
        let mut tw = CycloQ5::one();
        let mut terms = Vec::with_capacity(len);
        for k in 0..len as u64 {
            let c = f(k);
            terms.push((k, match twist {
                Some(_) => &c * &tw,
                None => c,
            }));
            if let Some(t) = twist {
                tw = &tw * t;
            }
        }
        FracSeries::from_terms(scale, Phase::one(), BigRat::zero(), 0, terms, self.order.clone())
    }

    /// `c₀ + c·Σ_{n≥1} kernel(n) q^{n/scale}`
    pub fn divisor_series(&self, scale: u64, c0: CycloQ5, c: CycloQ5, kernel: DivisorKernel, twist: Option<&CycloQ5>) -> FracSeries {
        let table = divisor_table(kernel, slots(&self.order, scale) as u64);
        self.q_sum(scale, twist, |k| {
            if k == 0 {
                c0.clone()
            } else {
                c.scale(&table[k as usize - 1])
            }
        })
    }

    /// Power series Π_{m≥1} Π (1 + c·q^j)^e over the factors `(j, c, e)`
    /// returned by `factors(m)`; every degree j must be at least m.
    pub fn q_product<F>(&self, factors: F) -> FracSeries
    where
        F: Fn(usize) -> Vec<(usize, CycloQ5, i32)>,
    {
        let len = slots(&self.order, 1);
        let mut v = vec![CycloQ5::zero(); len];
        if let Some(first) = v.first_mut() {
            *first = CycloQ5::one();
        }
        for m in 1..len {
            for (j, c, e) in factors(m) {
                if j >= len {
                    continue;
                }
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        mul_binomial(&mut v, j, &c);
                    } else {
                        div_binomial(&mut v, j, &c);
                    }
                }
            }
        }
        let terms = v.into_iter().enumerate().map(|(k, c)| (k as u64, c));
        FracSeries::from_terms(1, Phase::one(), BigRat::zero(), 0, terms, self.order.clone())
    }
}

fn slots(order: &BigRat, scale: u64) -> usize {
    use num_traits::ToPrimitive;
    (order * int(scale as i64)).ceil().to_integer().to_usize().unwrap_or(0)
}

pub fn mul(items: &[&FracSeries]) -> FracSeries {
    let (first, rest) = items.split_first().expect("nonempty product");
    rest.iter().fold((*first).clone(), |acc, s| series_mul(&acc, s))
}

pub fn pow(f: &FracSeries, e: u32) -> FracSeries {
    series_pow(f, e)
}

/// Σ cᵢ·fᵢ
pub fn lin(terms: &[(CycloQ5, &FracSeries)]) -> Result<FracSeries> {
    let mut acc: Option<FracSeries> = None;
    for (c, f) in terms {
        let t = f.mul_scalar(c);
        acc = Some(match acc {
            None => t,
            Some(a) => series_add(&a, &t)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))
}

pub fn d_tau(f: &FracSeries) -> FracSeries {
    tau_derivative(f)
}

/// Builders cross-multiply instead of dividing; a vanishing factor would make
/// the cross-multiplied form vacuous.
pub fn nonvanishing(f: FracSeries, what: &str) -> Result<FracSeries> {
    if f.is_zero() {
        return Err(Error::NotInvertible(format!("{what} vanishes to the requested order")));
    }
    Ok(f)
}

/// `a·X² + b·XY + c·Y²`
pub fn quadratic(x: &FracSeries, y: &FracSeries, a: CycloQ5, b: CycloQ5, c: CycloQ5) -> Result<FracSeries> {
    let xx = series_mul(x, x);
    let xy = series_mul(x, y);
    let yy = series_mul(y, y);
    lin(&[(a, &xx), (b, &xy), (c, &yy)])
}

pub fn two_pi_i(f: &FracSeries, k: i32) -> FracSeries {
    f.mul_const_power(k)
}
