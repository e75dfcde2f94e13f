//! Arithmetic functions used as independent coefficient oracles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, BigRat};

/// Legendre symbol (m/5).
pub fn legendre5(m: u64) -> i64 {
    match m % 5 {
        1 | 4 => 1,
        2 | 3 => -1,
        _ => 0,
    }
}

/// Divisors of `n ≥ 1` in increasing order, by trial division up to √n.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// σ(n), with σ(x) = 0 for non-integral or nonpositive arguments.
pub fn sigma(n: u64) -> i64 {
    if n == 0 {
        return 0;
    }
    divisors(n).iter().map(|&d| d as i64).sum()
}

/// Divisor-sum kernels appearing in the level-five product-series identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKernel {
    /// Σ_{d|n} d·(d/5)
    A,
    /// Σ_{d|n} (n/d)·(d/5)
    B,
    /// Σ_{d|n, 5∤d} d
    C,
    /// Σ_{d|n} (d/5)(25n/d − 11d)
    D25,
    /// Σ_{d|n} (d/5)(11n/d − 5d)
    E11,
    /// σ(n) − 5σ(n/5)
    S,
}

impl DivisorKernel {
    pub const ALL: [DivisorKernel; 6] =
        [DivisorKernel::A, DivisorKernel::B, DivisorKernel::C, DivisorKernel::D25, DivisorKernel::E11, DivisorKernel::S];

    pub fn name(self) -> &'static str {
        match self {
            DivisorKernel::A => "A",
            DivisorKernel::B => "B",
            DivisorKernel::C => "C",
            DivisorKernel::D25 => "D25",
            DivisorKernel::E11 => "E11",
            DivisorKernel::S => "S",
        }
    }
}

impl fmt::Display for DivisorKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisorKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DivisorKernel::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown kernel `{s}` (expected A|B|C|D25|E11|S)")))
    }
}

fn kernel_int(kernel: DivisorKernel, n: u64) -> i64 {
    let ds = divisors(n);
    let leg = |d: u64| legendre5(d);
    match kernel {
        DivisorKernel::A => ds.iter().map(|&d| d as i64 * leg(d)).sum(),
        DivisorKernel::B => ds.iter().map(|&d| (n / d) as i64 * leg(d)).sum(),
        DivisorKernel::C => ds.iter().filter(|&&d| d % 5 != 0).map(|&d| d as i64).sum(),
        DivisorKernel::D25 => ds.iter().map(|&d| leg(d) * (25 * (n / d) as i64 - 11 * d as i64)).sum(),
        DivisorKernel::E11 => ds.iter().map(|&d| leg(d) * (11 * (n / d) as i64 - 5 * d as i64)).sum(),
        DivisorKernel::S => sigma(n) - if n % 5 == 0 { 5 * sigma(n / 5) } else { 0 },
    }
}

/// Exact divisor sum for `n ≥ 1`.
pub fn divisor_sum(kernel: DivisorKernel, n: u64) -> Result<BigRat> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisor sums are defined for n >= 1".into()));
    }
    Ok(int(kernel_int(kernel, n)))
}

/// `[f(1), …, f(upto)]`.
pub fn divisor_table(kernel: DivisorKernel, upto: u64) -> Vec<BigRat> {
    (1..=upto).map(|n| int(kernel_int(kernel, n))).collect()
}

/// p(0), …, p(upto) by Euler's pentagonal-number recurrence
/// p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)].
pub fn partitions_upto(upto: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(upto + 1);
    p.push(BigInt::from(1));
    for n in 1..=upto {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign_pos = k % 2 == 1;
            let mut term = p[n - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if sign_pos {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

pub fn partition_p(n: usize) -> BigInt {
    partitions_upto(n).pop().expect("nonempty table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        assert_eq!(legendre5(1), 1);
        assert_eq!(legendre5(7), -1);
        assert_eq!(legendre5(10), 0);
        assert_eq!(legendre5(4), 1);
        assert_eq!(legendre5(0), 0);
    }

    #[test]
    fn legendre_is_multiplicative_on_units() {
        for a in 1..60u64 {
            for b in 1..60u64 {
                if (a * b) % 5 != 0 {
                    assert_eq!(legendre5(a * b), legendre5(a) * legendre5(b));
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(divisor_sum(DivisorKernel::A, 2).unwrap(), int(-1));
        assert_eq!(divisor_sum(DivisorKernel::B, 4).unwrap(), int(3));
        assert_eq!(divisor_sum(DivisorKernel::S, 1).unwrap(), int(1));
        assert_eq!(divisor_sum(DivisorKernel::S, 5).unwrap(), int(1));
        assert_eq!(divisor_sum(DivisorKernel::C, 10).unwrap(), int(3));
        assert!(divisor_sum(DivisorKernel::A, 0).is_err());
    }

    #[test]
    fn kernel_cross_relations() {
        for n in 1..=200 {
            let a = kernel_int(DivisorKernel::A, n);
            let b = kernel_int(DivisorKernel::B, n);
            assert_eq!(kernel_int(DivisorKernel::D25, n), 25 * b - 11 * a, "n = {n}");
            assert_eq!(kernel_int(DivisorKernel::E11, n), 11 * b - 5 * a, "n = {n}");
        }
    }

    #[test]
    fn partition_values_and_congruence() {
        assert_eq!(partition_p(0), BigInt::from(1));
        assert_eq!(partition_p(4), BigInt::from(5));
        assert_eq!(partition_p(9), BigInt::from(30));
        assert_eq!(partition_p(14), BigInt::from(135));
        assert_eq!(partition_p(100), "190569292".parse::<BigInt>().unwrap());
        let p = partitions_upto(5 * 40 + 4);
        for n in 0..=40 {
            assert!((&p[5 * n + 4] % 5u32).is_zero(), "p({})", 5 * n + 4);
        }
    }

    #[test]
    fn kernel_names_roundtrip() {
        for k in DivisorKernel::ALL {
            assert_eq!(k.name().parse::<DivisorKernel>().unwrap(), k);
        }
        assert!("Q".parse::<DivisorKernel>().is_err());
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(25), vec![1, 5, 25]);
    }
}
