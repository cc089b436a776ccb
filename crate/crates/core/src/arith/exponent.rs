use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{ipow, Valuation};
use crate::error::{Error, Result};

/// An element `n / p^k` of `Z[1/p]`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    num: i64,
    den_pow: u32,
    p: u32,
}

impl RationalExponent {
    pub fn new(num: i64, den_pow: u32, p: u64) -> Self {
        let p32 = u32::try_from(p).expect("prime too large");
        let (mut num, mut den_pow) = (num, den_pow);
        while den_pow > 0 && num % p as i64 == 0 {
            num /= p as i64;
            den_pow -= 1;
        }
        if num == 0 {
            den_pow = 0;
        }
        RationalExponent {
            num,
            den_pow,
            p: p32,
        }
    }

    pub fn integer(n: i64, p: u64) -> Self {
        RationalExponent::new(n, 0, p)
    }

    pub fn zero(p: u64) -> Self {
        RationalExponent::integer(0, p)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    /// `k` such that the denominator is `p^k`.
    pub fn den_pow(&self) -> u32 {
        self.den_pow
    }

    pub fn denominator(&self) -> i64 {
        ipow(self.p as u64, self.den_pow)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn is_integral(&self) -> bool {
        self.den_pow == 0
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    /// `self * p^depth` when that is an integer.
    pub fn scaled_numerator(&self, depth: u32) -> Option<i64> {
        if self.den_pow > depth {
            return None;
        }
        Some(self.num * ipow(self.p as u64, depth - self.den_pow))
    }

    pub fn valuation(&self) -> Valuation {
        match super::p_valuation_i64(self.num, self.p as u64) {
            Valuation::Finite(v) => Valuation::Finite(v - self.den_pow as i64),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    fn common(&self, other: &Self) -> (i128, i128, u32) {
        assert_eq!(self.p, other.p, "exponents over different primes");
        let k = self.den_pow.max(other.den_pow);
        let p = self.p as i128;
        let a = self.num as i128 * p.pow(k - self.den_pow);
        let b = other.num as i128 * p.pow(k - other.den_pow);
        (a, b, k)
    }

    fn from_i128(num: i128, den_pow: u32, p: u32) -> Self {
        RationalExponent::new(
            i64::try_from(num).expect("exponent overflow"),
            den_pow,
            p as u64,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, k) = self.common(other);
        Self::from_i128(a + b, k, self.p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, k) = self.common(other);
        Self::from_i128(a - b, k, self.p)
    }

    pub fn neg(&self) -> Self {
        RationalExponent {
            num: -self.num,
            ..*self
        }
    }

    pub fn mul_int(&self, m: i64) -> Self {
        RationalExponent::new(self.num * m, self.den_pow, self.p as u64)
    }

    /// Multiplication by `p`.
    pub fn mul_p(&self) -> Self {
        if self.den_pow > 0 {
            RationalExponent {
                den_pow: self.den_pow - 1,
                ..*self
            }
        } else {
            RationalExponent {
                num: self.num * self.p as i64,
                ..*self
            }
        }
    }

    /// Division by `p`.
    pub fn div_p(&self) -> Self {
        RationalExponent::new(self.num, self.den_pow + 1, self.p as u64)
    }

    /// Parses `"n"` or `"n/p^k"` written as `"n/d"`.
    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad exponent {s:?}"));
        match s.split_once('/') {
            None => Ok(RationalExponent::integer(s.parse().map_err(|_| bad())?, p)),
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let mut d: i64 = d.trim().parse().map_err(|_| bad())?;
                let mut k = 0;
                while d > 1 && d % p as i64 == 0 {
                    d /= p as i64;
                    k += 1;
                }
                if d != 1 {
                    return Err(Error::Parse(format!(
                        "denominator of {s:?} is not a power of {p}"
                    )));
                }
                Ok(RationalExponent::new(n, k, p))
            }
        }
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.common(other);
        a.cmp(&b)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

impl Serialize for RationalExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_order() {
        let a = RationalExponent::new(6, 1, 3);
        assert_eq!(a, RationalExponent::integer(2, 3));
        let b = RationalExponent::new(1, 2, 3);
        assert_eq!(b.to_string(), "1/9");
        assert_eq!(b.valuation(), Valuation::Finite(-2));
        assert!(b < a);
        assert_eq!(b.mul_p().to_string(), "1/3");
        assert_eq!(
            RationalExponent::parse("2/9", 3).unwrap(),
            RationalExponent::new(2, 2, 3)
        );
        assert!(RationalExponent::parse("1/6", 3).is_err());
        assert_eq!(b.scaled_numerator(2), Some(1));
        assert_eq!(b.scaled_numerator(1), None);
        assert_eq!(RationalExponent::zero(5).valuation(), Valuation::Infinite);
    }
}
