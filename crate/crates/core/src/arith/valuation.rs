use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// A p-adic valuation; zero has valuation `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Largest `k` with `p^k | x`.
pub fn p_valuation(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(k);
        }
        x = q;
        k += 1;
    }
}

pub fn p_valuation_i64(x: i64, p: u64) -> Valuation {
    if x == 0 {
        return Valuation::Infinite;
    }
    let p = p as i64;
    let mut x = x;
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    Valuation::Finite(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&BigInt::from(12), 2), Valuation::Finite(2));
        assert_eq!(p_valuation(&BigInt::from(-81), 3), Valuation::Finite(4));
        assert_eq!(p_valuation(&BigInt::from(0), 5), Valuation::Infinite);
        assert_eq!(p_valuation_i64(7, 2), Valuation::Finite(0));
        assert!(Valuation::Finite(100) < Valuation::Infinite);
    }
}
