use serde::Serialize;

use super::complex::ChainComplex;
use super::matrix::Matrix;
use super::ring::Ring;
use crate::arith::RationalExponent;

/// Subsets of `{0..d}` of size `k` in lexicographic order, as bitmasks.
pub fn subsets(d: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << d)
        .filter(|s| s.count_ones() as usize == k)
        .collect();
    out.sort_by_key(|s| (0..d).filter(|i| s & (1 << i) != 0).collect::<Vec<_>>());
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The Koszul cochain complex `K(R; g_1..g_d)` in degrees `0..=d`, basis `e_S`
/// in lexicographic order, `d(e_S) = sum_{j not in S} (-1)^{#{s in S: s < j}} g_j e_{S+j}`.
pub fn koszul<R: Ring>(ring: &R, g: &[R::Elem]) -> ChainComplex<R> {
    let d = g.len();
    let levels: Vec<Vec<u32>> = (0..=d).map(|k| subsets(d, k)).collect();
    let ranks = levels.iter().map(Vec::len).collect();
    let diffs = (0..d)
        .map(|k| {
            let (src, dst) = (&levels[k], &levels[k + 1]);
            let mut m = Matrix::zero(ring, dst.len(), src.len());
            for (c, &s) in src.iter().enumerate() {
                for j in (0..d).filter(|j| s & (1 << j) == 0) {
                    let before = (s & ((1 << j) - 1)).count_ones();
                    let t = s | (1 << j);
                    let r = dst.iter().position(|&x| x == t).unwrap();
                    let v = if before % 2 == 0 {
                        g[j].clone()
                    } else {
                        ring.neg(&g[j])
                    };
                    m.set(r, c, v);
                }
            }
            m
        })
        .collect();
    ChainComplex::new_unchecked(ring.clone(), 0, ranks, diffs)
}

/// Tensor product with `d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`. The basis
/// in each total degree lists pairs `(i, a, b)` ordered by `i` (the degree of the
/// left factor), then `a`, then `b`.
pub fn tensor<R: Ring>(k: &ChainComplex<R>, l: &ChainComplex<R>) -> ChainComplex<R> {
    let ring = k.ring().clone();
    if k.ranks().is_empty() || l.ranks().is_empty() {
        return ChainComplex::zero(ring);
    }
    let lo = k.lo() + l.lo();
    let hi = k.hi() + l.hi() - 1;
    let bases = tensor_basis(k, l);
    let ranks = bases.iter().map(Vec::len).collect();
    let diffs = (lo..hi - 1)
        .map(|n| {
            let (src, dst) = (&bases[(n - lo) as usize], &bases[(n - lo + 1) as usize]);
            let mut m = Matrix::zero(&ring, dst.len(), src.len());
            for (c, &(i, a, b)) in src.iter().enumerate() {
                let j = n - i;
                let dk = k.diff(i);
                for a2 in 0..dk.rows() {
                    let v = dk.get(a2, a);
                    if !ring.is_zero(v) {
                        let r = dst.iter().position(|&x| x == (i + 1, a2, b)).unwrap();
                        m.set(r, c, ring.add(m.get(r, c), v));
                    }
                }
                let dl = l.diff(j);
                for b2 in 0..dl.rows() {
                    let v = dl.get(b2, b);
                    if !ring.is_zero(v) {
                        let v = if i % 2 == 0 { v.clone() } else { ring.neg(v) };
                        let r = dst.iter().position(|&x| x == (i, a, b2)).unwrap();
                        m.set(r, c, ring.add(m.get(r, c), &v));
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex::new_unchecked(ring, lo, ranks, diffs)
}

/// Basis labels `(i, a, b)` of each total degree of [`tensor`].
pub fn tensor_basis<R: Ring>(
    k: &ChainComplex<R>,
    l: &ChainComplex<R>,
) -> Vec<Vec<(i32, usize, usize)>> {
    if k.ranks().is_empty() || l.ranks().is_empty() {
        return Vec::new();
    }
    (k.lo() + l.lo()..k.hi() + l.hi() - 1)
        .map(|n| {
            let mut out = Vec::new();
            for i in k.degrees() {
                for a in 0..k.rank(i) {
                    for b in 0..l.rank(n - i) {
                        out.push((i, a, b));
                    }
                }
            }
            out
        })
        .collect()
}

/// A Koszul complex tagged by its grading and a twist bookkeeping integer.
#[derive(Clone, Debug)]
pub struct KoszulSummand<R: Ring> {
    pub ring: R,
    pub elements: Vec<R::Elem>,
    pub grading: Vec<RationalExponent>,
    pub twist: i64,
}

impl<R: Ring> KoszulSummand<R> {
    pub fn new(
        ring: R,
        elements: Vec<R::Elem>,
        grading: Vec<RationalExponent>,
        twist: i64,
    ) -> Self {
        assert_eq!(
            elements.len(),
            grading.len(),
            "elements and grading must have the same length"
        );
        KoszulSummand {
            ring,
            elements,
            grading,
            twist,
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn complex(&self) -> ChainComplex<R> {
        koszul(&self.ring, &self.elements)
    }

    pub fn describe(&self) -> SummandJson {
        SummandJson {
            ring: self.ring.tag(),
            grading: self.grading.iter().map(ToString::to_string).collect(),
            elements: self.elements.iter().map(|e| self.ring.format(e)).collect(),
            twist: self.twist,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SummandJson {
    pub ring: String,
    pub grading: Vec<String>,
    pub elements: Vec<String>,
    pub twist: i64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::complex::homology_snf;
    use crate::complexes::ring::Integers;
    use num_bigint::BigInt;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn koszul_two_elements() {
        let k = koszul(&Integers, &ints(&[2, 3]));
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.diffs()[0], Matrix::from_i64(2, 1, &[2, 3]));
        // the sign rule gives e_1 -> -3 e_12 and e_2 -> 2 e_12
        assert_eq!(k.diffs()[1], Matrix::from_i64(1, 2, &[-3, 2]));
        assert!(k.check_d_squared());
        let empty = koszul(&Integers, &[]);
        assert_eq!(empty.ranks(), &[1]);
    }

    #[test]
    fn koszul_homology_two_four() {
        let h = homology_snf(&koszul(&Integers, &ints(&[2, 4])));
        assert!(h.get(0).is_zero());
        assert_eq!(h.get(2).torsion, ints(&[2]));
        assert_eq!(h.get(1).torsion, ints(&[2]));
    }

    #[test]
    fn kunneth_is_structural() {
        for g in [vec![2, 3], vec![2, 3, 5], vec![0, 4, -1]] {
            let g = ints(&g);
            let mut t = koszul(&Integers, &g[..1]);
            let mut labels: Vec<Vec<u32>> = vec![vec![0], vec![1]];
            for (j, x) in g.iter().enumerate().skip(1) {
                let right = koszul(&Integers, std::slice::from_ref(x));
                let basis = tensor_basis(&t, &right);
                labels = basis
                    .iter()
                    .enumerate()
                    .map(|(n, b)| {
                        b.iter()
                            .map(|&(i, a, _)| {
                                labels[i as usize][a] | if n as i32 - i == 1 { 1 << j } else { 0 }
                            })
                            .collect()
                    })
                    .collect();
                t = tensor(&t, &right);
            }
            let k = koszul(&Integers, &g);
            let d = g.len();
            // position of each tensor basis vector in the lexicographic subset basis
            let pos: Vec<Vec<usize>> = (0..=d)
                .map(|n| {
                    labels[n]
                        .iter()
                        .map(|s| subsets(d, n).iter().position(|x| x == s).unwrap())
                        .collect()
                })
                .collect();
            for n in 0..d {
                let (a, b) = (&t.diffs()[n], &k.diffs()[n]);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        assert_eq!(a.get(r, c), b.get(pos[n + 1][r], pos[n][c]));
                    }
                }
            }
        }
    }
}
