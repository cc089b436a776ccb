use crate::arith::{fp_inv, ipow, is_prime, FpPoly};
use crate::error::{Error, Result};

/// `F_{p^m} = F_p[x]/(f)` for the lexicographically first monic irreducible `f` of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    m: u32,
    modulus: FpPoly,
}

/// Field elements are coefficient vectors of length `m` in the power basis.
pub type Gf = Vec<u64>;

impl GaloisField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if m == 0 || (p as f64).powi(m as i32) > 1e6 {
            return Err(Error::InvalidArgument(format!(
                "unsupported field F_{p}^{m}"
            )));
        }
        let modulus = (0..ipow(p, m) as u64)
            .map(|i| {
                let mut c = digits(i, p, m as usize);
                c.push(1);
                FpPoly::new(p, c)
            })
            .find(is_irreducible)
            .expect("irreducible polynomials exist in every degree");
        Ok(GaloisField { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        ipow(self.p, self.m) as u64
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn zero(&self) -> Gf {
        vec![0; self.m as usize]
    }

    pub fn one(&self) -> Gf {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Gf {
        let mut v = self.zero();
        v[0] = c.rem_euclid(self.p as i64) as u64;
        v
    }

    /// The class of `x`.
    pub fn generator(&self) -> Gf {
        self.from_poly(&FpPoly::x_pow(self.p, 1))
    }

    pub fn from_poly(&self, f: &FpPoly) -> Gf {
        let r = f.rem(&self.modulus);
        let mut v = r.coeffs().to_vec();
        v.resize(self.m as usize, 0);
        v
    }

    pub fn to_poly(&self, a: &[u64]) -> FpPoly {
        FpPoly::new(self.p, a.to_vec())
    }

    /// Element with base-`p` digits of `index` as coordinates.
    pub fn element(&self, index: u64) -> Gf {
        digits(index, self.p, self.m as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Gf {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Gf {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Gf {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Gf {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Gf {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Option<Gf> {
        if self.is_zero(a) {
            return None;
        }
        if self.m == 1 {
            return Some(vec![fp_inv(a[0], self.p)]);
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// `sigma(a) = a^p`.
    pub fn frobenius(&self, a: &[u64]) -> Gf {
        self.pow(a, self.p)
    }

    pub fn format(&self, a: &[u64]) -> String {
        self.to_poly(a).to_string()
    }
}

fn digits(mut i: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(i % p);
        i /= p;
    }
    out
}

/// No monic factor of degree `1..=deg/2`.
fn is_irreducible(f: &FpPoly) -> bool {
    let p = f.p();
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for i in 0..ipow(p, k as u32) as u64 {
            let mut c = digits(i, p, k);
            c.push(1);
            if f.rem(&FpPoly::new(p, c)).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for (p, m) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
            let k = GaloisField::new(p, m).unwrap();
            let nonzero: Vec<Gf> = k.elements().filter(|a| !k.is_zero(a)).collect();
            assert_eq!(nonzero.len() as u64, k.order() - 1);
            for a in &nonzero {
                assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
                assert_eq!(k.pow(a, k.order()), *a);
            }
        }
    }

    #[test]
    fn f4_modulus() {
        let k = GaloisField::new(2, 2).unwrap();
        assert_eq!(k.modulus(), &FpPoly::new(2, vec![1, 1, 1]));
        let a = k.generator();
        assert_eq!(k.mul(&a, &a), k.add(&a, &k.one()));
    }
}
