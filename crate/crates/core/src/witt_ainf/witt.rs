use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ipow, RationalExponent};
use crate::error::{Error, Result};

/// An element of the perfection `F_p[x^{1/p^inf}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfectionElement {
    p: u64,
    terms: BTreeMap<RationalExponent, u64>,
}

impl PerfectionElement {
    pub fn zero(p: u64) -> Self {
        PerfectionElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::from_terms(p, [(RationalExponent::zero(p), c)])
    }

    pub fn monomial(p: u64, e: RationalExponent, c: i64) -> Self {
        Self::from_terms(p, [(e, c)])
    }

    /// Collects terms, reducing coefficients mod `p`. Panics on negative exponents.
    pub fn from_terms(p: u64, terms: impl IntoIterator<Item = (RationalExponent, i64)>) -> Self {
        let mut out = Self::zero(p);
        for (e, c) in terms {
            assert!(!e.is_negative(), "perfection exponents are nonnegative");
            out.add_term(e, c.rem_euclid(p as i64) as u64);
        }
        out
    }

    fn add_term(&mut self, e: RationalExponent, c: u64) {
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalExponent, u64)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(*e, c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.p);
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a.add(b), x * y % self.p);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.p, 1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `a -> a^p`: exponents scale by `p`, coefficients are fixed.
    pub fn frobenius(&self) -> Self {
        self.map_exponents(|e| e.mul_p())
    }

    /// `a -> a^{1/p}`; raises the denominator depth by one.
    pub fn frobenius_inverse(&self) -> Self {
        self.map_exponents(|e| e.div_p())
    }

    fn map_exponents(&self, f: impl Fn(&RationalExponent) -> RationalExponent) -> Self {
        PerfectionElement {
            p: self.p,
            terms: self.terms.iter().map(|(e, c)| (f(e), *c)).collect(),
        }
    }

    /// The lift with coefficients in `0..p`, at precision `m`.
    pub fn naive_lift(&self, m: u32) -> TruncatedWittElement {
        TruncatedWittElement::from_terms(self.p, m, self.terms().map(|(e, c)| (*e, c as i64)))
    }

    pub fn to_json(&self) -> PerfectionJson {
        PerfectionJson {
            p: self.p,
            terms: self
                .terms()
                .map(|(e, c)| (e.to_string(), c as i64))
                .collect(),
        }
    }
}

impl fmt::Display for PerfectionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(e, c)| (e, *c)))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a RationalExponent, u64)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if e.is_zero() {
            write!(f, "{c}")?;
        } else {
            write!(f, "{c}*x^({e})")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `W_m(F_p[x^{1/p^inf}]) = (Z/p^m)[x^{1/p^inf}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedWittElement {
    p: u64,
    precision: u32,
    terms: BTreeMap<RationalExponent, u64>,
}

impl TruncatedWittElement {
    pub fn zero(p: u64, precision: u32) -> Self {
        assert!(precision >= 1, "precision must be at least 1");
        TruncatedWittElement {
            p,
            precision,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, precision: u32, c: i64) -> Self {
        Self::from_terms(p, precision, [(RationalExponent::zero(p), c)])
    }

    pub fn from_terms(
        p: u64,
        precision: u32,
        terms: impl IntoIterator<Item = (RationalExponent, i64)>,
    ) -> Self {
        let mut out = Self::zero(p, precision);
        let m = out.modulus() as i64;
        for (e, c) in terms {
            assert!(!e.is_negative(), "Witt exponents are nonnegative");
            out.add_term(e, c.rem_euclid(m) as u64);
        }
        out
    }

    fn add_term(&mut self, e: RationalExponent, c: u64) {
        let m = self.modulus();
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c) % m;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^m`.
    pub fn modulus(&self) -> u64 {
        ipow(self.p, self.precision) as u64
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalExponent, u64)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) {
        assert!(
            self.p == o.p && self.precision == o.precision,
            "Witt elements of different shapes"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        TruncatedWittElement {
            terms: self.terms.iter().map(|(e, c)| (*e, m - c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let m = self.modulus();
        let mut out = Self::zero(self.p, self.precision);
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a.add(b), x * y % m);
            }
        }
        out
    }

    pub fn scale(&self, s: u64) -> Self {
        let m = self.modulus();
        let mut out = Self::zero(self.p, self.precision);
        for (e, c) in self.terms() {
            out.add_term(*e, c * (s % m) % m);
        }
        out
    }

    /// `x^p` by repeated multiplication.
    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::constant(self.p, self.precision, 1);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Witt vector Frobenius: `x^a -> x^{pa}`.
    pub fn frobenius(&self) -> Self {
        TruncatedWittElement {
            terms: self.terms.iter().map(|(e, c)| (e.mul_p(), *c)).collect(),
            ..self.clone()
        }
    }

    /// Reduction to the residue ring `W_1 = F_p[x^{1/p^inf}]`.
    pub fn reduce(&self) -> PerfectionElement {
        PerfectionElement::from_terms(self.p, self.terms().map(|(e, c)| (*e, c as i64)))
    }

    /// The same element at a smaller precision.
    pub fn truncate(&self, precision: u32) -> Self {
        assert!(precision >= 1 && precision <= self.precision);
        Self::from_terms(self.p, precision, self.terms().map(|(e, c)| (*e, c as i64)))
    }

    /// Division by `p` of an element divisible by `p`, landing at precision `m - 1`.
    pub fn divide_by_p(&self) -> Option<Self> {
        if self.precision < 2 {
            return None;
        }
        let p = self.p;
        if self.terms().any(|(_, c)| c % p != 0) {
            return None;
        }
        Some(Self::from_terms(
            p,
            self.precision - 1,
            self.terms().map(|(e, c)| (*e, (c / p) as i64)),
        ))
    }

    /// `p^k * x`, read at precision `m`.
    fn times_p_power(&self, k: u32, precision: u32) -> Self {
        let s = ipow(self.p, k);
        Self::from_terms(
            self.p,
            precision,
            self.terms().map(|(e, c)| (*e, c as i64 * s)),
        )
    }

    pub fn to_json(&self) -> WittJson {
        WittJson {
            p: self.p,
            precision: self.precision,
            terms: self
                .terms()
                .map(|(e, c)| (e.to_string(), c as i64))
                .collect(),
        }
    }

    pub fn from_json(json: &WittJson) -> Result<Self> {
        if !crate::arith::is_prime(json.p) {
            return Err(Error::InvalidArgument(format!("{} is not prime", json.p)));
        }
        if json.precision == 0 {
            return Err(Error::InvalidArgument(
                "precision must be at least 1".into(),
            ));
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for (e, c) in &json.terms {
            let e = RationalExponent::parse(e, json.p)?;
            if e.is_negative() {
                return Err(Error::InvalidArgument(format!("negative exponent {e}")));
            }
            terms.push((e, *c));
        }
        Ok(Self::from_terms(json.p, json.precision, terms))
    }
}

impl fmt::Display for TruncatedWittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(e, c)| (e, *c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WittJson {
    pub p: u64,
    pub precision: u32,
    /// `[exponent, coefficient]` with exponents written `"n"` or `"n/p^k"`.
    pub terms: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectionJson {
    pub p: u64,
    pub terms: Vec<(String, i64)>,
}

/// `[a]` at precision `m`: `b^{p^{m-1}}` for the naive lift `b` of `a^{1/p^{m-1}}`.
pub fn teichmuller_lift(a: &PerfectionElement, m: u32) -> TruncatedWittElement {
    let mut root = a.clone();
    for _ in 1..m {
        root = root.frobenius_inverse();
    }
    let mut w = root.naive_lift(m);
    for _ in 1..m {
        w = w.pow(a.p());
    }
    w
}

/// Teichmuller digits `(a_0, ..., a_{m-1})` with `w = sum [a_i] p^i`:
/// reduce, subtract the lift, divide by `p`, repeat.
pub fn teichmuller_digits(w: &TruncatedWittElement) -> Vec<PerfectionElement> {
    let mut digits = Vec::with_capacity(w.precision() as usize);
    let mut cur = w.clone();
    loop {
        let a = cur.reduce();
        let rest = cur.sub(&teichmuller_lift(&a, cur.precision()));
        digits.push(a);
        match rest.divide_by_p() {
            Some(next) => cur = next,
            None => break,
        }
    }
    digits
}

/// `sum [a_i] p^i` at precision `m`.
pub fn digits_to_witt(digits: &[PerfectionElement], m: u32) -> TruncatedWittElement {
    let p = digits.first().map(|d| d.p()).expect("at least one digit");
    let mut out = TruncatedWittElement::zero(p, m);
    for (i, a) in digits.iter().enumerate().take(m as usize) {
        let i = i as u32;
        let lift = teichmuller_lift(a, m - i);
        out = out.add(&lift.times_p_power(i, m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: u64, num: i64, den_pow: u32) -> PerfectionElement {
        PerfectionElement::monomial(p, RationalExponent::new(num, den_pow, p), 1)
    }

    #[test]
    fn constant_lifts() {
        // 2 -> 2^3 -> 2^9 stabilizes at 8 mod 9
        let two = PerfectionElement::constant(3, 2);
        assert_eq!(
            teichmuller_lift(&two, 2),
            TruncatedWittElement::constant(3, 2, 8)
        );
        let w = TruncatedWittElement::constant(3, 2, 8);
        assert_eq!(
            teichmuller_digits(&w),
            vec![two, PerfectionElement::zero(3)]
        );
        let p = TruncatedWittElement::constant(5, 2, 5);
        assert_eq!(
            teichmuller_digits(&p),
            vec![
                PerfectionElement::zero(5),
                PerfectionElement::constant(5, 1)
            ]
        );
        assert_eq!(
            teichmuller_lift(&PerfectionElement::constant(7, 1), 3),
            TruncatedWittElement::constant(7, 3, 1)
        );
    }

    #[test]
    fn monomials_are_teichmuller() {
        let a = x(3, 1, 0);
        let w = a.naive_lift(3);
        assert_eq!(teichmuller_lift(&a, 3), w);
        assert_eq!(
            teichmuller_digits(&w),
            vec![a, PerfectionElement::zero(3), PerfectionElement::zero(3)]
        );
        let prod = teichmuller_lift(&x(2, 1, 1), 3).mul(&teichmuller_lift(&x(2, 1, 1), 3));
        assert_eq!(prod, teichmuller_lift(&x(2, 1, 0), 3));
    }

    #[test]
    fn all_constants_round_trip() {
        for p in [2u64, 3] {
            for c in 0..ipow(p, 3) {
                let w = TruncatedWittElement::constant(p, 3, c);
                let d = teichmuller_digits(&w);
                assert_eq!(digits_to_witt(&d, 3), w);
            }
        }
    }

    #[test]
    fn lift_is_multiplicative_and_frobenius_equivariant() {
        let p = 3;
        let a = x(p, 1, 1).add(&PerfectionElement::constant(p, 1));
        let b = x(p, 2, 0).add(&PerfectionElement::constant(p, 2));
        for m in 1..=3 {
            let ab = teichmuller_lift(&a.mul(&b), m);
            assert_eq!(ab, teichmuller_lift(&a, m).mul(&teichmuller_lift(&b, m)));
            assert_eq!(
                teichmuller_lift(&a, m).frobenius(),
                teichmuller_lift(&a.pow(p as u32), m)
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let w = TruncatedWittElement::from_terms(3, 2, [(RationalExponent::new(1, 1, 3), 4)]);
        let back = TruncatedWittElement::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        let s = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(s, r#"{"p":3,"precision":2,"terms":[["1/3",4]]}"#);
    }
}
