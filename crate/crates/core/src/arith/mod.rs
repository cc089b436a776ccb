//! Exact arithmetic: integers, exponents in `Z[1/p]`, Laurent polynomials over
//! the integers, q-analogs and polynomials over `F_p`.

mod exponent;
mod fp_poly;
mod laurent;
mod qanalog;
mod valuation;

pub use exponent::RationalExponent;
pub(crate) use fp_poly::inv_mod as fp_inv;
pub use fp_poly::FpPoly;
pub use laurent::{laurent_exact_div, laurent_mul, LaurentElement};
pub(crate) use qanalog::q_integer;
pub use qanalog::{eps_power_minus_one, q_analog, q_power};
pub use valuation::{p_valuation, p_valuation_i64, Valuation};

use num_bigint::BigInt;

/// `p^k` as an `i64`, panicking on overflow (all exponents in this crate are small).
pub fn ipow(p: u64, k: u32) -> i64 {
    i64::try_from(p)
        .ok()
        .and_then(|p| p.checked_pow(k))
        .expect("p^k overflows i64")
}

/// Whether `p` is prime (trial division; only small primes are ever used).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
