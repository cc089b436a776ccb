use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::cyclotomic::{cyclotomic_poly, QuotientRing};
use crate::arith::{ipow, is_prime, LaurentElement};
use crate::complexes::{Divisibility, LaurentRing, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 12;

/// The depth-`n` model of `A_inf`: the ring `Z[u^{+-1}]` with `q = u^(p^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AinfModel {
    p: u64,
    depth: u32,
    max_depth: u32,
}

impl AinfModel {
    pub fn new(p: u64, depth: u32) -> Result<Self> {
        Self::with_max_depth(p, depth, DEFAULT_MAX_DEPTH)
    }

    pub fn with_max_depth(p: u64, depth: u32, max_depth: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if depth == 0 {
            return Err(Error::InvalidArgument("depth must be at least 1".into()));
        }
        if (p as f64).powi(max_depth as i32 + 1) >= i64::MAX as f64 {
            return Err(Error::InvalidArgument(format!(
                "maximum depth {max_depth} overflows exponents for p={p}"
            )));
        }
        if depth > max_depth {
            return Err(Error::DepthOverflow {
                requested: depth,
                max: max_depth,
            });
        }
        Ok(AinfModel {
            p,
            depth,
            max_depth,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// The same model at another depth.
    pub fn at_depth(&self, depth: u32) -> Result<Self> {
        if depth > self.max_depth {
            return Err(Error::DepthOverflow {
                requested: depth,
                max: self.max_depth,
            });
        }
        Self::with_max_depth(self.p, depth, self.max_depth)
    }

    pub fn laurent_ring(&self) -> LaurentRing {
        LaurentRing {
            p: self.p,
            depth: self.depth,
        }
    }

    /// `p^n`, the exponent of `u` in `q`.
    pub fn q_exponent(&self) -> i64 {
        ipow(self.p, self.depth)
    }

    pub fn q(&self) -> LaurentElement {
        LaurentElement::monomial(self.depth, self.q_exponent(), 1)
    }

    pub fn mu(&self) -> LaurentElement {
        LaurentElement::monomial_minus_one(self.depth, self.q_exponent())
    }

    /// `phi^{-1}(mu) = q^{1/p} - 1`.
    pub fn phi_inverse_mu(&self) -> LaurentElement {
        LaurentElement::monomial_minus_one(self.depth, ipow(self.p, self.depth - 1))
    }

    /// `xi = mu / phi^{-1}(mu) = Phi_{p^n}(u)`.
    pub fn xi(&self) -> LaurentElement {
        cyclotomic_poly(self.p, self.depth, self.depth)
    }

    /// `xi~ = phi(xi) = [p]_q = Phi_{p^{n+1}}(u)`.
    pub fn xi_tilde(&self) -> LaurentElement {
        cyclotomic_poly(self.p, self.depth + 1, self.depth)
    }

    /// Frobenius `u -> u^p`.
    pub fn phi(&self, x: &LaurentElement) -> LaurentElement {
        phi(self.p, x)
    }

    /// Inverse Frobenius: the same coefficient map read at depth `n + 1`.
    pub fn phi_inverse(&self, x: &LaurentElement) -> Result<LaurentElement> {
        let d = x.depth() + 1;
        if d > self.max_depth {
            return Err(Error::DepthOverflow {
                requested: d,
                max: self.max_depth,
            });
        }
        Ok(x.with_depth(d))
    }

    /// The image of `x` in a deeper model (`u_d = u_{target}^{p^{target-d}}`).
    pub fn raise_depth(&self, x: &LaurentElement, target: u32) -> Result<LaurentElement> {
        if target < x.depth() {
            return Err(Error::InvalidArgument(format!(
                "cannot raise depth {} to {target}",
                x.depth()
            )));
        }
        if target > self.max_depth {
            return Err(Error::DepthOverflow {
                requested: target,
                max: self.max_depth,
            });
        }
        Ok(x.substitute_power(ipow(self.p, target - x.depth()))
            .with_depth(target))
    }

    /// Rewrites `x` at the smallest depth `>= floor` where its exponents are integral.
    pub fn normalize_depth(&self, x: &LaurentElement, floor: u32) -> LaurentElement {
        let p = self.p as i64;
        let mut cur = x.clone();
        while cur.depth() > floor && cur.terms().all(|(e, _)| e % p == 0) {
            cur = LaurentElement::from_terms(
                cur.depth() - 1,
                cur.terms().map(|(e, c)| (e / p, c.clone())),
            );
        }
        cur
    }

    /// `theta`: reduction modulo `xi`, i.e. `u -> zeta_{p^d}` for an element of depth `d`.
    pub fn theta(&self, x: &LaurentElement) -> LaurentElement {
        QuotientRing::oc_model(self.p, x.depth()).reduce(x)
    }

    /// `theta~ = theta o phi^{-1}`, landing in the level `d + 1` model.
    pub fn theta_tilde(&self, x: &LaurentElement) -> Result<LaurentElement> {
        Ok(self.theta(&self.phi_inverse(x)?))
    }

    /// `theta(x)` computed after first reducing modulo `xi~` (independent route).
    pub fn theta_tilde_via_xi_tilde(&self, x: &LaurentElement) -> Result<LaurentElement> {
        let m = self.at_depth(x.depth())?;
        let r = x.rem_monic(&m.xi_tilde());
        self.theta_tilde(&r)
    }

    /// The OC model ring `Z[zeta_{p^n}]`.
    pub fn oc_ring(&self) -> QuotientRing {
        QuotientRing::oc_model(self.p, self.depth)
    }

    /// Multiplicities of the factors `Phi_{p^j}(u)` in `x`, and the cofactor.
    pub fn cyclotomic_profile(&self, x: &LaurentElement) -> (BTreeMap<u32, u32>, LaurentElement) {
        let mut mult = BTreeMap::new();
        if x.is_zero() {
            return (mult, x.clone());
        }
        let mut cur = x.normalize_unit();
        let mut j = 0;
        loop {
            let phi_j = cyclotomic_poly(self.p, j, x.depth());
            let deg = phi_j.max_exp().unwrap();
            if deg > cur.max_exp().unwrap() - cur.min_exp().unwrap() {
                break;
            }
            let mut m = 0;
            while let Some(q) = cur.exact_div_unchecked(&phi_j) {
                cur = q;
                m += 1;
            }
            if m > 0 {
                mult.insert(j, m);
            }
            j += 1;
        }
        (mult, cur)
    }

    /// Units of `A_inf` among the model's elements: `x(1)` prime to `p`.
    pub fn is_completed_unit(&self, x: &LaurentElement) -> bool {
        !x.eval_at_one().is_multiple_of(&BigInt::from(self.p))
    }

    /// Divisibility `a | b` in `A_inf`. Exact when the cofactor of `a` after
    /// removing `p`-power cyclotomic factors is a unit; otherwise falls back to
    /// exact division in `Z[u^{+-1}]`.
    pub fn completed_divides(&self, a: &LaurentElement, b: &LaurentElement) -> bool {
        if b.is_zero() {
            return true;
        }
        if a.is_zero() {
            return false;
        }
        if b.exact_div_unchecked(a).is_some() {
            return true;
        }
        let (ma, ra) = self.cyclotomic_profile(a);
        if !self.is_completed_unit(&ra) {
            return false;
        }
        let (mb, _) = self.cyclotomic_profile(b);
        ma.iter()
            .all(|(j, m)| mb.get(j).copied().unwrap_or(0) >= *m)
    }
}

/// Frobenius `u -> u^p` on the carrier.
pub fn phi(p: u64, x: &LaurentElement) -> LaurentElement {
    x.substitute_power(p as i64)
}

impl Ring for AinfModel {
    type Elem = LaurentElement;

    fn tag(&self) -> String {
        self.laurent_ring().tag()
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

impl Divisibility for AinfModel {
    fn div_exact(&self, a: &LaurentElement, b: &LaurentElement) -> Option<LaurentElement> {
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        a.exact_div_unchecked(b)
    }
    fn divides(&self, b: &LaurentElement, a: &LaurentElement) -> bool {
        self.completed_divides(b, a)
    }
    fn is_unit(&self, a: &LaurentElement) -> bool {
        !a.is_zero() && self.is_completed_unit(a)
    }
}

impl AinfModel {
    /// Whether `x` reduces to zero modulo `p`.
    pub fn vanishes_mod_p(&self, x: &LaurentElement) -> bool {
        let p = BigInt::from(self.p);
        x.terms().all(|(_, c)| (c % &p).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinguished_elements() {
        let m = AinfModel::new(3, 1).unwrap();
        assert_eq!(
            m.xi(),
            LaurentElement::from_terms(1, [(0, 1), (1, 1), (2, 1)])
        );
        assert_eq!(m.xi().mul(&m.phi_inverse_mu()).unwrap(), m.mu());
        assert_eq!(m.phi(&m.xi()), m.xi_tilde());
        assert_eq!(m.phi(&m.mu()), m.xi_tilde().mul(&m.mu()).unwrap());
        let u = LaurentElement::monomial(1, 1, 1);
        assert_eq!(m.phi(&u), LaurentElement::monomial(1, 3, 1));
    }

    #[test]
    fn theta_examples() {
        let m = AinfModel::new(3, 2).unwrap();
        assert!(m.theta(&m.xi()).is_zero());
        assert!(m.theta(&m.q()).is_one());
        assert!(m.theta_tilde(&m.xi_tilde()).unwrap().is_zero());
        assert!(m.theta(&m.mu()).is_zero());
    }

    #[test]
    fn phi_inverse_depth() {
        let m = AinfModel::new(2, 1).unwrap();
        let x = m.phi_inverse(&m.mu()).unwrap();
        assert_eq!(x.depth(), 2);
        // q^{1/2} - 1 at depth 2 is u^2 - 1
        assert_eq!(x, LaurentElement::monomial_minus_one(2, 2));
        let back = m.normalize_depth(&m.phi(&x), 1);
        assert_eq!(back, m.mu());
        let shallow = AinfModel::with_max_depth(2, 1, 1).unwrap();
        assert!(matches!(
            shallow.phi_inverse(&shallow.mu()),
            Err(Error::DepthOverflow { .. })
        ));
    }

    #[test]
    fn completed_divisibility() {
        let m = AinfModel::new(5, 1).unwrap();
        let g = |a: i64| LaurentElement::monomial_minus_one(1, a);
        // q^2 - 1 and q^3 - 1 differ by a unit in A_inf
        assert!(m.completed_divides(&g(10), &g(15)));
        assert!(m.completed_divides(&g(15), &g(10)));
        assert!(g(15).exact_div(&g(10)).unwrap().is_none());
        // q^{1/5} - 1 divides q - 1 but not conversely
        assert!(m.completed_divides(&g(1), &g(5)));
        assert!(!m.completed_divides(&g(5), &g(1)));
        assert!(m.is_completed_unit(&LaurentElement::from_terms(1, [(0, 1), (5, 1)])));
        assert!(!m.is_completed_unit(&m.xi()));
    }
}
