//! Exact arithmetic: rationals, the cyclotomic field Q(ζ₅) in its power basis,
//! and rational roots of unity carried as phases.
//!
//! Every element of Q(ζ₅) is stored as `c0 + c1·ζ + c2·ζ² + c3·ζ³` with
//! ζ = e^{2πi/5}. Products are reduced with ζ⁴ = −1 − ζ − ζ² − ζ³, so two
//! elements are equal iff their coefficient vectors are equal.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type BigRat = BigRational;

/// `n/d` as a [`BigRat`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Renders a rational as `num` or `num/den`.
pub fn fmt_rat(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational as `num/den` unconditionally (used by machine-readable output).
pub fn fmt_rat_strict(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num`, `num/den` (optionally signed).
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRat::new(n, d))
        }
        None => Ok(BigRat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &BigRat) -> BigRat {
    r - r.floor()
}

fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// An element of Q(ζ₅) in the power basis `(1, ζ, ζ², ζ³)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloQ5 {
    c: [BigRat; 4],
}

impl CycloQ5 {
    pub fn new(c0: BigRat, c1: BigRat, c2: BigRat, c3: BigRat) -> Self {
        CycloQ5 { c: [c0, c1, c2, c3] }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        CycloQ5 { c: c.map(int) }
    }

    pub fn zero() -> Self {
        CycloQ5 { c: [BigRat::zero(), BigRat::zero(), BigRat::zero(), BigRat::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRat::one())
    }

    pub fn from_rational(r: BigRat) -> Self {
        CycloQ5 { c: [r, BigRat::zero(), BigRat::zero(), BigRat::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// ζ₅ = e^{2πi/5}.
    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// ζ₅^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(5) {
            0 => Self::one(),
            1 => Self::from_ints([0, 1, 0, 0]),
            2 => Self::from_ints([0, 0, 1, 0]),
            3 => Self::from_ints([0, 0, 0, 1]),
            _ => Self::from_ints([-1, -1, -1, -1]),
        }
    }

    /// √5 = ζ − ζ² − ζ³ + ζ⁴ (the quadratic Gauss sum), i.e. `(−1, 0, −2, −2)`.
    pub fn sqrt5() -> Self {
        Self::from_ints([-1, 0, -2, -2])
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden() -> Self {
        (Self::one() + Self::sqrt5()).scale(&rat(1, 2))
    }

    pub fn coeffs(&self) -> &[BigRat; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRat> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        CycloQ5 { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    pub fn inv(&self) -> Result<Self> {
        cyclo_inv(self)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Double-precision embedding with ζ ↦ e^{2πi/5}.
    pub fn embed(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU / 5.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.c {
            acc += p * rat_to_f64(c);
            p *= z;
        }
        acc
    }

    /// Least common multiple of the four coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Product in Q(ζ₅), reduced to the power basis.
pub fn cyclo_mul(x: &CycloQ5, y: &CycloQ5) -> CycloQ5 {
    let mut p: [BigRat; 7] = std::array::from_fn(|_| BigRat::zero());
    for (i, a) in x.c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.c.iter().enumerate() {
            if !b.is_zero() {
                p[i + j] += a * b;
            }
        }
    }
    CycloQ5 { c: reduce7(p) }
}

// ζ⁵ = 1, ζ⁶ = ζ, ζ⁴ = −1 − ζ − ζ² − ζ³.
fn reduce7<T>(p: [T; 7]) -> [T; 4]
where
    T: Clone + for<'a> AddAssign<&'a T> + for<'a> std::ops::SubAssign<&'a T>,
{
    let [mut c0, mut c1, mut c2, mut c3, p4, p5, p6] = p;
    c0 += &p5;
    c1 += &p6;
    c0 -= &p4;
    c1 -= &p4;
    c2 -= &p4;
    c3 -= &p4;
    [c0, c1, c2, c3]
}

impl From<[BigRat; 4]> for CycloQ5 {
    fn from(c: [BigRat; 4]) -> Self {
        CycloQ5 { c }
    }
}

/// Integer-coefficient multiplication in ℤ[ζ₅], used by the series convolution.
pub(crate) fn zz_mul_acc(acc: &mut [BigInt; 4], x: &[BigInt; 4], y: &[BigInt; 4]) {
    let mut p: [BigInt; 7] = std::array::from_fn(|_| BigInt::zero());
    let mut any = false;
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                p[i + j] += a * b;
                any = true;
            }
        }
    }
    if !any {
        return;
    }
    let r = reduce7(p);
    for (a, v) in acc.iter_mut().zip(r.iter()) {
        *a += v;
    }
}

/// Inverse via an exact 4×4 linear solve of `x · y = 1` in the power basis.
pub fn cyclo_inv(x: &CycloQ5) -> Result<CycloQ5> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // Column j of the multiplication matrix is x·ζ^j.
    let cols: Vec<CycloQ5> = (0..4).map(|j| cyclo_mul(x, &CycloQ5::zeta_pow(j))).collect();
    let mut m: Vec<Vec<BigRat>> = (0..4)
        .map(|i| {
            let mut row: Vec<BigRat> = (0..4).map(|j| cols[j].c[i].clone()).collect();
            row.push(if i == 0 { BigRat::one() } else { BigRat::zero() });
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..5 {
                    let t = &m[col][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
    }
    Ok(CycloQ5::new(m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()))
}

/// √5 as an element of Q(ζ₅).
pub fn sqrt5() -> CycloQ5 {
    CycloQ5::sqrt5()
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloQ5> for &'a CycloQ5 {
            type Output = CycloQ5;
            fn $method(self, rhs: &'a CycloQ5) -> CycloQ5 {
                let f: fn(&CycloQ5, &CycloQ5) -> CycloQ5 = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloQ5> for CycloQ5 {
            type Output = CycloQ5;
            fn $method(self, rhs: CycloQ5) -> CycloQ5 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloQ5> for CycloQ5 {
            type Output = CycloQ5;
            fn $method(self, rhs: &'a CycloQ5) -> CycloQ5 {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| CycloQ5 {
    c: std::array::from_fn(|i| &a.c[i] + &b.c[i])
});
forward_binop!(Sub, sub, |a, b| CycloQ5 {
    c: std::array::from_fn(|i| &a.c[i] - &b.c[i])
});
forward_binop!(Mul, mul, cyclo_mul);

impl Neg for CycloQ5 {
    type Output = CycloQ5;
    fn neg(self) -> CycloQ5 {
        CycloQ5 { c: self.c.map(|x| -x) }
    }
}

impl Neg for &CycloQ5 {
    type Output = CycloQ5;
    fn neg(self) -> CycloQ5 {
        -(self.clone())
    }
}

impl AddAssign<&CycloQ5> for CycloQ5 {
    fn add_assign(&mut self, rhs: &CycloQ5) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl fmt::Display for CycloQ5 {
    /// `r` for rational elements, otherwise `(c0 + c1*z + c2*z^2 + c3*z^3)`
    /// listing nonzero terms only, with `z` standing for ζ₅.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rat(r));
        }
        let mut out = String::from("(");
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => fmt_rat(&mag),
                (_, true) => basis,
                _ => format!("{}*{}", fmt_rat(&mag), basis),
            };
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out.push(')');
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloQ5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloQ5{}", self)
    }
}

/// A root of unity e^{2πi·a} with rational `a`, reduced mod 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Phase {
    a: BigRat,
}

impl Phase {
    pub fn new(a: BigRat) -> Self {
        Phase { a: frac(&a) }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(rat(n, d))
    }

    pub fn one() -> Self {
        Phase { a: BigRat::zero() }
    }

    pub fn exponent(&self) -> &BigRat {
        &self.a
    }

    pub fn is_one(&self) -> bool {
        self.a.is_zero()
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        Phase::new(&self.a + &other.a)
    }

    pub fn inv(&self) -> Phase {
        Phase::new(-&self.a)
    }

    pub fn pow(&self, n: i64) -> Phase {
        Phase::new(&self.a * int(n))
    }

    /// Whether the phase lies in Q(ζ₅), i.e. its reduced denominator divides 10.
    pub fn is_representable(&self) -> bool {
        (BigInt::from(10) % self.a.denom()).is_zero()
    }

    pub fn to_cyclo(&self) -> Result<CycloQ5> {
        phase_to_cyclo(self)
    }

    pub fn embed(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * rat_to_f64(&self.a))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", fmt_rat(&self.a))
    }
}

/// Converts e^{2πi·a} to Q(ζ₅) using ζ₁₀ = −ζ₅³.
pub fn phase_to_cyclo(p: &Phase) -> Result<CycloQ5> {
    if !p.is_representable() {
        return Err(Error::NotRepresentable(fmt_rat(&p.a)));
    }
    let k = (&p.a * int(10)).to_integer().to_i64().expect("k < 10");
    let z = CycloQ5::zeta_pow(3 * k);
    Ok(if k % 2 == 1 { -z } else { z })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn zeta_times_zeta4_is_one() {
        let z4 = CycloQ5::zeta_pow(4);
        assert_eq!(z4, CycloQ5::from_ints([-1, -1, -1, -1]));
        assert!(cyclo_mul(&CycloQ5::zeta(), &z4).is_one());
    }

    #[test]
    fn sqrt5_embeds_and_squares_to_five() {
        let s = sqrt5();
        assert_eq!(s, CycloQ5::from_ints([-1, 0, -2, -2]));
        assert!(close(s.embed(), Complex64::new(5f64.sqrt(), 0.0), 1e-12));
        assert_eq!(&s * &s, CycloQ5::from_int(5));
        let g = CycloQ5::golden();
        assert_eq!(&g * &g, &g + &CycloQ5::one());
    }

    #[test]
    fn inverse_of_zeta_and_one_plus_zeta() {
        assert_eq!(CycloQ5::one().inv().unwrap(), CycloQ5::one());
        assert_eq!(CycloQ5::zeta().inv().unwrap(), CycloQ5::zeta_pow(4));
        let x = CycloQ5::from_ints([1, 1, 0, 0]);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        // (1+ζ)^{-1} = −ζ − ζ³ (since (1+ζ)(−ζ−ζ³) = −ζ−ζ²−ζ³−ζ⁴ = 1).
        assert_eq!(y, CycloQ5::from_ints([0, -1, 0, -1]));
        assert_eq!(CycloQ5::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn phases_to_cyclo() {
        assert_eq!(Phase::from_ratio(1, 5).to_cyclo().unwrap(), CycloQ5::zeta());
        let t = Phase::from_ratio(1, 10).to_cyclo().unwrap();
        assert_eq!(t, -CycloQ5::zeta_pow(3));
        assert!(close(t.embed(), Complex64::new(0.809_016_994_374_947_4, 0.587_785_252_292_473_1), 1e-12));
        assert!(matches!(Phase::from_ratio(1, 4).to_cyclo(), Err(Error::NotRepresentable(_))));
        assert_eq!(Phase::from_ratio(-3, 10), Phase::from_ratio(7, 10));
        for k in 0..10 {
            let p = Phase::from_ratio(k, 10);
            assert!(close(p.to_cyclo().unwrap().embed(), p.embed(), 1e-12), "k = {k}");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloQ5::from_int(-5).to_string(), "-5");
        assert_eq!(sqrt5().to_string(), "(-1 - 2*z^2 - 2*z^3)");
        assert_eq!(CycloQ5::zeta().to_string(), "(z)");
        assert_eq!(Phase::from_ratio(-1, 4).to_string(), "e(3/4)");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
