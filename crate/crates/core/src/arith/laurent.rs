use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[u, u^-1]` at a fixed depth `n`, where `q = u^(p^n)`.
///
/// Terms are stored sparsely with zero coefficients elided, so structural
/// equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentElement {
    depth: u32,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentElement {
    pub fn zero(depth: u32) -> Self {
        LaurentElement {
            depth,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(depth: u32) -> Self {
        Self::constant(depth, BigInt::one())
    }

    pub fn constant(depth: u32, c: impl Into<BigInt>) -> Self {
        Self::monomial(depth, 0, c)
    }

    pub fn monomial(depth: u32, exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentElement { depth, terms }
    }

    /// `u^exp - 1`.
    pub fn monomial_minus_one(depth: u32, exp: i64) -> Self {
        Self::from_terms(depth, [(exp, BigInt::one()), (0, -BigInt::one())])
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I, C>(depth: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentElement::zero(depth);
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of `Z[u^{+-1}]` are exactly `+-u^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Reinterprets the same coefficient map at another depth.
    pub fn with_depth(&self, depth: u32) -> Self {
        LaurentElement {
            depth,
            terms: self.terms.clone(),
        }
    }

    fn check_depth(&self, other: &Self) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_depth(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_depth(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_depth(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        self.add_unchecked(&other.neg())
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.depth, other.depth);
        let mut out = LaurentElement::zero(self.depth);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentElement {
            depth: self.depth,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentElement::zero(self.depth);
        }
        LaurentElement {
            depth: self.depth,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentElement {
            depth: self.depth,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `u -> u^k` (k nonzero).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        LaurentElement {
            depth: self.depth,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentElement::one(self.depth);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Value at `u = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / b` in `Z[u^{+-1}]`, or `None` when `b` does not divide.
    ///
    /// Both sides are shifted to polynomials with nonzero constant term and the
    /// division is carried out as long division over `Q[u]`; every quotient
    /// coefficient must be integral, so a fractional step means the quotient
    /// is not in `Z[u]` and the division is rejected.
    pub fn exact_div(&self, b: &Self) -> Result<Option<Self>> {
        self.check_depth(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.exact_div_unchecked(b))
    }

    pub(crate) fn exact_div_unchecked(&self, b: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(LaurentElement::zero(self.depth));
        }
        // Normalize b to a polynomial with nonzero constant term; the quotient's
        // lowest exponent is then forced to equal the dividend's.
        let b_min = b.min_exp().unwrap();
        let b = b.shift(-b_min);
        let db = b.max_exp().unwrap();
        let lead = b.leading_coeff().unwrap().clone();
        let floor = self.min_exp().unwrap();
        let mut r = self.clone();
        let mut q = LaurentElement::zero(self.depth);
        while let Some((&e, c)) = r.terms.iter().next_back() {
            let qe = e - db;
            if qe < floor {
                return None;
            }
            let (qc, rem) = c.div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (be, bc) in &b.terms {
                r.add_term(qe + be, -(&qc * bc));
            }
            q.add_term(qe, qc);
        }
        Some(q.shift(-b_min))
    }

    /// Remainder on division by `g` whose lowest and highest coefficients are
    /// `+-1`. Then `u` is a unit modulo `g`, and the result is the canonical
    /// representative in `Z[u]` of degree `< deg g` (with `g` shifted to have
    /// lowest exponent 0).
    pub fn rem_monic(&self, g: &Self) -> Self {
        let g = g.shift(-g.min_exp().expect("modulus must be nonzero"));
        let deg = g.max_exp().unwrap();
        let lead = g.leading_coeff().unwrap().clone();
        let c0 = g.coeff(0);
        assert!(
            lead.abs().is_one() && c0.abs().is_one(),
            "modulus must have unit end coefficients"
        );
        if deg == 0 {
            return LaurentElement::zero(self.depth);
        }
        let lift = self.min_exp().map_or(0, |m| (-m).max(0));
        let reduced = self.shift(lift).rem_poly_unit_lead(&g, &lead);
        if lift == 0 {
            return reduced;
        }
        // u^{-1} = -c0 * (g - c0)/u  (mod g)
        let inv_u = LaurentElement::from_terms(
            self.depth,
            g.terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, -(c * &c0))),
        );
        let mut acc = reduced;
        let mut base = inv_u;
        let mut k = lift;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem_poly_unit_lead(&g, &lead);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base).rem_poly_unit_lead(&g, &lead);
            }
        }
        acc
    }

    /// Top-down reduction of a polynomial (no negative exponents) by `g`.
    fn rem_poly_unit_lead(&self, g: &Self, lead: &BigInt) -> Self {
        let deg = g.max_exp().unwrap();
        let mut r = self.clone();
        while let Some((&e, c)) = r.terms.iter().next_back() {
            if e < deg {
                break;
            }
            let c = c * lead;
            for (ge, gc) in &g.terms {
                r.add_term(e - deg + ge, -(&c * gc));
            }
        }
        r
    }

    /// Canonical associate up to the units `+-u^k`: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn normalize_unit(&self) -> Self {
        match self.min_exp() {
            None => self.clone(),
            Some(m) => {
                let s = self.shift(-m);
                if s.leading_coeff().unwrap().is_negative() {
                    s.neg()
                } else {
                    s
                }
            }
        }
    }

    /// Content (gcd of coefficients, nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

/// Exact product; rejects mixed depths.
pub fn laurent_mul(a: &LaurentElement, b: &LaurentElement) -> Result<LaurentElement> {
    a.mul(b)
}

/// Exact quotient in `Z[u^{+-1}]`; `Ok(None)` is the not-divisible signal.
pub fn laurent_exact_div(a: &LaurentElement, b: &LaurentElement) -> Result<Option<LaurentElement>> {
    a.exact_div(b)
}

impl fmt::Display for LaurentElement {
    /// Text form used in complex JSON entries: `"3*u^2 + -1*u^-1 + 5*u^0"`, `"0"` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}*u^{e}")?;
        }
        Ok(())
    }
}

impl LaurentElement {
    /// Parses the [`Display`](fmt::Display) form at the given depth.
    pub fn parse(s: &str, depth: u32) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Laurent term in {s:?}"));
        let mut out = LaurentElement::zero(depth);
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let term = term.trim();
            let (c, e) = match term.split_once("*u^") {
                Some((c, e)) => (
                    BigInt::from_str(c.trim()).map_err(|_| bad())?,
                    e.trim().parse().map_err(|_| bad())?,
                ),
                None => (BigInt::from_str(term).map_err(|_| bad())?, 0),
            };
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    depth: u32,
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentWire {
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = LaurentWire::deserialize(d)?;
        let mut out = LaurentElement::zero(wire.depth);
        for (e, c) in wire.terms {
            let c = BigInt::from_str(&c).map_err(serde::de::Error::custom)?;
            if c.is_zero() {
                return Err(serde::de::Error::custom(
                    "zero coefficient in canonical form",
                ));
            }
            if out.terms.insert(e, c).is_some() {
                return Err(serde::de::Error::custom("repeated exponent"));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(depth: u32, terms: &[(i64, i64)]) -> LaurentElement {
        LaurentElement::from_terms(depth, terms.iter().map(|&(e, c)| (e, c)))
    }

    /// Naive convolution oracle on dense coefficient vectors.
    fn convolve(a: &[(i64, i64)], b: &[(i64, i64)]) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                *out.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn products() {
        assert_eq!(
            el(0, &[(1, 1), (0, -1)])
                .mul(&el(0, &[(1, 1), (0, 1)]))
                .unwrap(),
            el(0, &[(2, 1), (0, -1)])
        );
        // q*q at depth 1, p = 2: u^2 * u^2
        assert_eq!(
            el(1, &[(2, 1)]).mul(&el(1, &[(2, 1)])).unwrap(),
            el(1, &[(4, 1)])
        );
        let lhs = [(0, 1), (1, 1), (2, 1)];
        let rhs = [(1, 1), (0, -1)];
        let oracle = convolve(&lhs, &rhs);
        assert_eq!(oracle, BTreeMap::from([(3, 1), (0, -1)]));
        let prod = el(0, &lhs).mul(&el(0, &rhs)).unwrap();
        assert_eq!(prod, el(0, &[(3, 1), (0, -1)]));
    }

    #[test]
    fn depth_mismatch_rejected() {
        let err = el(1, &[(0, 1)]).mul(&el(2, &[(0, 1)])).unwrap_err();
        assert!(matches!(err, Error::DepthMismatch(1, 2)));
    }

    #[test]
    fn divisions() {
        let q2m1 = el(0, &[(2, 1), (0, -1)]);
        let qm1 = el(0, &[(1, 1), (0, -1)]);
        assert_eq!(
            q2m1.exact_div(&qm1).unwrap(),
            Some(el(0, &[(1, 1), (0, 1)]))
        );
        // p = 3, depth 1: (u^3 - 1) / (u - 1) = 1 + u + u^2
        assert_eq!(
            el(1, &[(3, 1), (0, -1)])
                .exact_div(&el(1, &[(1, 1), (0, -1)]))
                .unwrap(),
            Some(el(1, &[(0, 1), (1, 1), (2, 1)]))
        );
        assert_eq!(qm1.exact_div(&el(0, &[(1, 1), (0, 1)])).unwrap(), None);
        assert!(matches!(
            qm1.exact_div(&LaurentElement::zero(0)),
            Err(Error::DivisionByZero)
        ));
        // 2u / 4 is not integral
        assert_eq!(el(0, &[(1, 2)]).exact_div(&el(0, &[(0, 4)])).unwrap(), None);
        assert_eq!(
            el(0, &[(-3, 6)]).exact_div(&el(0, &[(-1, 3)])).unwrap(),
            Some(el(0, &[(-2, 2)]))
        );
    }

    #[test]
    fn remainder_modulo_cyclotomic() {
        // Phi_4 = u^2 + 1
        let g = el(0, &[(2, 1), (0, 1)]);
        assert_eq!(el(0, &[(4, 1)]).rem_monic(&g), el(0, &[(0, 1)]));
        assert_eq!(el(0, &[(-1, 1)]).rem_monic(&g), el(0, &[(1, -1)]));
        assert_eq!(
            el(0, &[(3, 1), (-2, 1)]).rem_monic(&g),
            el(0, &[(1, -1), (0, -1)])
        );
    }

    #[test]
    fn text_and_json_forms() {
        let x = el(2, &[(-1, -3), (0, 5), (7, 1)]);
        assert_eq!(LaurentElement::parse(&x.to_string(), 2).unwrap(), x);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"depth":2,"terms":[[-1,"-3"],[0,"5"],[7,"1"]]}"#);
        let back: LaurentElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentElement> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6)
            .prop_map(|t| LaurentElement::from_terms(0, t))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            if !b.is_zero() {
                prop_assert_eq!(a.mul(&b).unwrap().exact_div(&b).unwrap(), Some(a.clone()));
            }
        }

        #[test]
        fn json_round_trip(a in arb_laurent()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: LaurentElement = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
            prop_assert_eq!(back, a);
        }
    }
}
