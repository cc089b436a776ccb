use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ipow, LaurentElement};
use crate::complexes::lattice::solve;
use crate::complexes::{Divisibility, Matrix, Ring};
use crate::error::Result;

/// `Phi_{p^k}(u)` at the given depth; `Phi_1 = u - 1`.
pub fn cyclotomic_poly(p: u64, k: u32, depth: u32) -> LaurentElement {
    if k == 0 {
        return LaurentElement::from_terms(depth, [(1, 1), (0, -1)]);
    }
    let step = ipow(p, k - 1);
    LaurentElement::from_terms(depth, (0..p as i64).map(|i| (i * step, 1)))
}

/// `Z[u^{+-1}]/(g)` for a modulus `g` with unit end coefficients, so that `u`
/// is invertible and residues of degree `< deg g` form a `Z`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    depth: u32,
    modulus: LaurentElement,
    degree: usize,
    /// Some `N` with `u^N = 1` in the quotient.
    order: Option<i64>,
    /// Set when the modulus is `Phi_N`, enabling norm-based division.
    conductor: Option<i64>,
    label: String,
}

impl QuotientRing {
    pub fn new(modulus: LaurentElement, order: Option<i64>, label: impl Into<String>) -> Self {
        let modulus = modulus.shift(-modulus.min_exp().expect("modulus must be nonzero"));
        let degree = modulus.max_exp().unwrap() as usize;
        QuotientRing {
            depth: modulus.depth(),
            modulus,
            degree,
            order,
            conductor: None,
            label: label.into(),
        }
    }

    /// The model `Z[zeta_{p^n}] = Z[u]/Phi_{p^n}(u)` of `O_C`.
    pub fn oc_model(p: u64, level: u32) -> Self {
        let n = ipow(p, level);
        let mut r = QuotientRing::new(
            cyclotomic_poly(p, level, level),
            Some(n),
            format!("OC(p={p},n={level})"),
        );
        r.conductor = Some(n);
        r
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn modulus(&self) -> &LaurentElement {
        &self.modulus
    }

    /// Rank of the quotient as a free `Z`-module.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonical residue of `x` (read at this ring's depth).
    pub fn reduce(&self, x: &LaurentElement) -> LaurentElement {
        let x = x.with_depth(self.depth);
        let folded = match self.order {
            Some(n) => LaurentElement::from_terms(
                self.depth,
                x.terms().map(|(e, c)| (e.rem_euclid(n), c.clone())),
            ),
            None => x,
        };
        folded.rem_monic(&self.modulus)
    }

    pub fn coords(&self, x: &LaurentElement) -> Vec<BigInt> {
        let r = self.reduce(x);
        (0..self.degree as i64).map(|e| r.coeff(e)).collect()
    }

    pub fn from_coords(&self, c: &[BigInt]) -> LaurentElement {
        LaurentElement::from_terms(
            self.depth,
            c.iter().enumerate().map(|(e, x)| (e as i64, x.clone())),
        )
    }

    /// Matrix of multiplication by `b` on the power basis.
    pub fn multiplication_matrix(&self, b: &LaurentElement) -> Matrix<BigInt> {
        let cols: Vec<Vec<BigInt>> = (0..self.degree as i64)
            .map(|j| self.coords(&b.shift(j)))
            .collect();
        Matrix::from_fn(self.degree, self.degree, |i, j| cols[j][i].clone())
    }

    /// Product of the nontrivial Galois conjugates of `b`, so that
    /// `b * conj = N(b)` is an integer. Only for cyclotomic moduli.
    pub fn conjugate_product(&self, b: &LaurentElement) -> Option<LaurentElement> {
        let n = self.conductor?;
        let mut acc = LaurentElement::one(self.depth);
        for j in 2..n.max(2) {
            if j.gcd(&n) == 1 {
                acc =
                    self.reduce(&acc.mul_unchecked(&b.with_depth(self.depth).substitute_power(j)));
            }
        }
        Some(acc)
    }

    /// Field norm of `b`, for cyclotomic moduli.
    pub fn norm(&self, b: &LaurentElement) -> Option<BigInt> {
        let conj = self.conjugate_product(b)?;
        let prod = self.reduce(&conj.mul_unchecked(&b.with_depth(self.depth)));
        debug_assert!(prod.terms().all(|(e, _)| e == 0), "norm must be a constant");
        Some(prod.coeff(0))
    }
}

impl Ring for QuotientRing {
    type Elem = LaurentElement;

    fn tag(&self) -> String {
        self.label.clone()
    }
    fn zero(&self) -> LaurentElement {
        LaurentElement::zero(self.depth)
    }
    fn one(&self) -> LaurentElement {
        self.reduce(&LaurentElement::one(self.depth))
    }
    fn add(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        a.add_unchecked(b)
    }
    fn neg(&self, a: &LaurentElement) -> LaurentElement {
        a.neg()
    }
    fn mul(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        self.reduce(&a.mul_unchecked(b))
    }
    fn is_zero(&self, a: &LaurentElement) -> bool {
        self.reduce(a).is_zero()
    }
    fn format(&self, a: &LaurentElement) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<LaurentElement> {
        Ok(self.reduce(&LaurentElement::parse(s, self.depth)?))
    }
    fn from_int(&self, n: i64) -> LaurentElement {
        self.reduce(&LaurentElement::constant(self.depth, n))
    }
}

impl Divisibility for QuotientRing {
    fn div_exact(&self, a: &LaurentElement, b: &LaurentElement) -> Option<LaurentElement> {
        let a = self.reduce(a);
        let b = self.reduce(b);
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        if let Some(conj) = self.conjugate_product(&b) {
            // a / b = a * conj / N(b), integral iff every coefficient is divisible.
            let nb = self.reduce(&conj.mul_unchecked(&b)).coeff(0);
            let num = self.reduce(&a.mul_unchecked(&conj));
            let mut out = Vec::with_capacity(num.num_terms());
            for (e, c) in num.terms() {
                let (q, r) = c.div_rem(&nb);
                if !r.is_zero() {
                    return None;
                }
                out.push((e, q));
            }
            return Some(LaurentElement::from_terms(self.depth, out));
        }
        let m = self.multiplication_matrix(&b);
        solve(&m, &self.coords(&a)).map(|c| self.from_coords(&c))
    }

    fn is_unit(&self, a: &LaurentElement) -> bool {
        if self.is_zero(a) {
            return false;
        }
        match self.norm(a) {
            Some(n) => n.abs().is_one(),
            None => self.div_exact(&self.one(), a).is_some(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_pow_minus_one(r: &QuotientRing, a: i64) -> LaurentElement {
        r.reduce(&LaurentElement::monomial_minus_one(r.depth(), a))
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(
            cyclotomic_poly(2, 2, 2),
            LaurentElement::from_terms(2, [(0, 1), (2, 1)])
        );
        assert_eq!(
            cyclotomic_poly(3, 1, 1),
            LaurentElement::from_terms(1, [(0, 1), (1, 1), (2, 1)])
        );
    }

    #[test]
    fn reduction_handles_negative_exponents() {
        let r = QuotientRing::oc_model(3, 1);
        // zeta^{-1} = zeta^2 = -1 - zeta
        assert_eq!(
            r.reduce(&LaurentElement::monomial(1, -1, 1)),
            LaurentElement::from_terms(1, [(0, -1), (1, -1)])
        );
        let generic = QuotientRing::new(cyclotomic_poly(3, 1, 1), None, "g");
        assert_eq!(
            generic.reduce(&LaurentElement::monomial(1, -1, 1)),
            r.reduce(&LaurentElement::monomial(1, -1, 1))
        );
    }

    #[test]
    fn norms_and_units() {
        let r = QuotientRing::oc_model(5, 1);
        assert_eq!(r.norm(&zeta_pow_minus_one(&r, 1)), Some(BigInt::from(5)));
        // (zeta^2 - 1)/(zeta - 1) = 1 + zeta is a cyclotomic unit
        let w = r
            .div_exact(&zeta_pow_minus_one(&r, 2), &zeta_pow_minus_one(&r, 1))
            .unwrap();
        assert_eq!(w, LaurentElement::from_terms(1, [(0, 1), (1, 1)]));
        assert!(r.is_unit(&w));
        assert!(!r.is_unit(&zeta_pow_minus_one(&r, 1)));
        assert!(r.div_exact(&r.from_int(1), &r.from_int(5)).is_none());
    }

    #[test]
    fn norm_division_matches_lattice_division() {
        let oc = QuotientRing::oc_model(3, 2);
        let plain = QuotientRing::new(cyclotomic_poly(3, 2, 2), Some(9), "plain");
        for a in 1..9 {
            for b in 1..9 {
                let x = zeta_pow_minus_one(&oc, a);
                let y = zeta_pow_minus_one(&oc, b);
                assert_eq!(oc.div_exact(&x, &y), plain.div_exact(&x, &y), "a={a} b={b}");
            }
        }
    }
}
