use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{FpPoly, LaurentElement};
use crate::error::{Error, Result};

/// A commutative ring given as a context object acting on plain element values.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    /// Short tag used in JSON and reports.
    fn tag(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let one = if n < 0 {
            self.neg(&self.one())
        } else {
            self.one()
        };
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        acc
    }
}

/// Rings with a decidable divisibility relation.
pub trait Divisibility: Ring {
    /// Some `c` with `b c = a`, when it exists in the carrier.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `b` divides `a`. Defaults to exact division; rings modelling a
    /// completion override this with the coarser relation.
    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        self.is_zero(a) || (!self.is_zero(b) && self.div_exact(a, b).is_some())
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.divides(a, &self.one())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn tag(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
}

impl Divisibility for Integers {
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return a.is_zero().then(BigInt::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
}

/// `Z/m` with canonical representatives `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: BigInt,
}

impl IntegersMod {
    pub fn new(modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        assert!(modulus.is_positive(), "modulus must be positive");
        IntegersMod { modulus }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl Ring for IntegersMod {
    type Elem = BigInt;

    fn tag(&self) -> String {
        format!("Z/{}", self.modulus)
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(&BigInt::one())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a).is_zero()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        Ok(self.reduce(&Integers.parse(s)?))
    }
    fn from_int(&self, n: i64) -> BigInt {
        self.reduce(&BigInt::from(n))
    }
}

/// The carrier `Z[u^{+-1}]` of the depth-`n` model, with exact divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub p: u64,
    pub depth: u32,
}

impl Ring for LaurentRing {
    type Elem = LaurentElement;

    fn tag(&self) -> String {
        format!("A(p={},n={})", self.p, self.depth)
    }
    fn zero(&self) -> LaurentElement {
        LaurentElement::zero(self.depth)
    }
    fn one(&self) -> LaurentElement {
        LaurentElement::one(self.depth)
    }
    fn add(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        a.add_unchecked(b)
    }
    fn neg(&self, a: &LaurentElement) -> LaurentElement {
        a.neg()
    }
    fn mul(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        a.mul_unchecked(b)
    }
    fn is_zero(&self, a: &LaurentElement) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &LaurentElement) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<LaurentElement> {
        LaurentElement::parse(s, self.depth)
    }
    fn from_int(&self, n: i64) -> LaurentElement {
        LaurentElement::constant(self.depth, n)
    }
}

impl Divisibility for LaurentRing {
    fn div_exact(&self, a: &LaurentElement, b: &LaurentElement) -> Option<LaurentElement> {
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        a.exact_div_unchecked(b)
    }
    fn is_unit(&self, a: &LaurentElement) -> bool {
        a.is_unit()
    }
}

/// `F_p[u]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpPolyRing {
    pub p: u64,
}

impl Ring for FpPolyRing {
    type Elem = FpPoly;

    fn tag(&self) -> String {
        format!("F{}[u]", self.p)
    }
    fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }
    fn one(&self) -> FpPoly {
        FpPoly::constant(self.p, 1)
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &FpPoly) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<FpPoly> {
        let l = LaurentElement::parse(s, 0)?;
        if l.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Parse(format!("negative exponent in {s:?}")));
        }
        let deg = l.max_exp().unwrap_or(0) as usize;
        let p = BigInt::from(self.p);
        let coeffs = (0..=deg)
            .map(|e| {
                let c = l.coeff(e as i64).mod_floor(&p);
                u64::try_from(c).unwrap()
            })
            .collect();
        Ok(FpPoly::new(self.p, coeffs))
    }
}

impl Divisibility for FpPolyRing {
    fn div_exact(&self, a: &FpPoly, b: &FpPoly) -> Option<FpPoly> {
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        let (q, r) = a.divrem(b);
        r.is_zero().then_some(q)
    }
    fn is_unit(&self, a: &FpPoly) -> bool {
        a.degree() == Some(0)
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpRing {
    pub p: u64,
}

impl FpRing {
    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| crate::arith::fp_inv(a, self.p))
    }
}

impl Ring for FpRing {
    type Elem = u64;

    fn tag(&self) -> String {
        format!("F{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        num_integer::Integer::is_multiple_of(a, &self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        Ok(n.rem_euclid(self.p as i64) as u64)
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Divisibility for FpRing {
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        match self.inv(*b) {
            Some(bi) => Some(self.mul(a, &bi)),
            None => self.is_zero(a).then_some(0),
        }
    }
}
