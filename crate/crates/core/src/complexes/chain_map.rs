use num_bigint::BigInt;

use super::complex::{ChainComplex, IntComplex};
use super::matrix::Matrix;
use super::ring::{Integers, Ring};

/// A degreewise family of matrices `u^i : K^i -> L^i` for `i` in `lo..lo+len`;
/// zero outside that range.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub lo: i32,
    pub maps: Vec<Matrix<BigInt>>,
}

impl ChainMap {
    pub fn new(lo: i32, maps: Vec<Matrix<BigInt>>) -> Self {
        ChainMap { lo, maps }
    }

    /// `u^i` as a `rank L^i x rank K^i` matrix.
    pub fn at(&self, i: i32, k: &IntComplex, l: &IntComplex) -> Matrix<BigInt> {
        let idx = i - self.lo;
        if idx >= 0 && (idx as usize) < self.maps.len() {
            let m = &self.maps[idx as usize];
            if m.rows() == l.rank(i) && m.cols() == k.rank(i) {
                return m.clone();
            }
        }
        Matrix::zero(&Integers, l.rank(i), k.rank(i))
    }

    /// The family given on every degree of `k`.
    pub fn on_source(&self, k: &IntComplex, l: &IntComplex) -> Vec<Matrix<BigInt>> {
        k.degrees().map(|i| self.at(i, k, l)).collect()
    }

    /// Multiplication by `c` on `k`.
    pub fn scalar(k: &IntComplex, c: &BigInt) -> Self {
        let maps = k
            .degrees()
            .map(|i| Matrix::identity(&Integers, k.rank(i)).scale(&Integers, c))
            .collect();
        ChainMap { lo: k.lo(), maps }
    }

    /// Checks shapes and `d_L u = u d_K` in every degree.
    pub fn is_chain_map(&self, k: &IntComplex, l: &IntComplex) -> bool {
        for (idx, m) in self.maps.iter().enumerate() {
            let i = self.lo + idx as i32;
            if m.rows() != l.rank(i) || m.cols() != k.rank(i) {
                return false;
            }
        }
        let lo = k.lo().min(l.lo()) - 1;
        let hi = k.hi().max(l.hi()) + 1;
        (lo..hi).all(|i| {
            let a = l.diff(i).mul(&Integers, &self.at(i, k, l));
            let b = self.at(i + 1, k, l).mul(&Integers, &k.diff(i));
            a.eq_in(&Integers, &b)
        })
    }

    /// `v o u` for `u : K -> L`, `v : L -> M`.
    pub fn compose(
        &self,
        v: &ChainMap,
        k: &IntComplex,
        l: &IntComplex,
        m: &IntComplex,
    ) -> ChainMap {
        let maps = k
            .degrees()
            .map(|i| v.at(i, l, m).mul(&Integers, &self.at(i, k, l)))
            .collect();
        ChainMap { lo: k.lo(), maps }
    }
}

impl<R: Ring> ChainComplex<R> {
    /// The identity family on this complex.
    pub fn identity_map(&self) -> Vec<Matrix<R::Elem>> {
        self.degrees()
            .map(|i| Matrix::identity(&self.ring().clone(), self.rank(i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_is_a_chain_map() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[4]]).unwrap();
        let u = ChainMap::scalar(&k, &BigInt::from(3));
        assert!(u.is_chain_map(&k, &k));
        let bad = ChainMap::new(
            0,
            vec![Matrix::from_i64(1, 1, &[1]), Matrix::from_i64(1, 1, &[2])],
        );
        assert!(!bad.is_chain_map(&k, &k));
    }
}
