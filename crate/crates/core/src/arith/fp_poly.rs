use std::fmt;

/// A polynomial over `F_p` with coefficients in `0..p`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// `x^k`.
    pub fn x_pow(p: u64, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        FpPoly { p, coeffs: c }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| (acc * x + c) % self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn neg(&self) -> Self {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|c| (self.p - c) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|c| c * (s % self.p) % self.p)
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(FpPoly::constant(self.p, 1), |acc, _| acc.mul(self))
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.coeffs[dd], self.p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] * inv % self.p;
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - c * dj % self.p) % self.p;
            }
        }
        r.truncate(dd);
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Multiplicity of `(x - a)` as a factor.
    pub fn root_multiplicity(&self, a: u64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = FpPoly::new(self.p, vec![(self.p - a % self.p) % self.p, 1]);
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            cur = q;
            k += 1;
        }
    }
}

/// Inverse modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| format!("{c}*u^{i}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_multiplicity() {
        let p = 3;
        let x_minus_1 = FpPoly::from_i64(p, &[-1, 1]);
        let f = x_minus_1.pow(4).mul(&FpPoly::from_i64(p, &[1, 0, 1]));
        assert_eq!(f.root_multiplicity(1), 4);
        let (q, r) = f.divrem(&x_minus_1.pow(2));
        assert!(r.is_zero());
        assert_eq!(q.mul(&x_minus_1.pow(2)), f);
        assert_eq!(FpPoly::from_i64(5, &[2, 3]).eval(4), (2 + 12) % 5);
    }
}
