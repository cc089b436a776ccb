use serde::Serialize;

use super::finite_field::{GaloisField, Gf};
use crate::error::{Error, Result};

/// `M = F_{p^m}^r` with `phi_M(v) = A sigma(v)`.
#[derive(Clone, Debug)]
pub struct SemilinearModule {
    field: GaloisField,
    rank: usize,
    matrix: Vec<Vec<Gf>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixedPointStatus {
    /// `dim_{F_p} L = r` and `L` spans `M`.
    Complete,
    /// The fixed points are defined only over an extension of `F_{p^m}`.
    RequiresExtension,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPoints {
    /// `dim_{F_p}` of `L = ker(phi_M - 1)`.
    pub dimension: usize,
    pub basis: Vec<Vec<Gf>>,
    /// Rank of the `F_{p^m}`-span of `L` inside `M`.
    pub span_rank: usize,
    pub rank: usize,
    pub status: FixedPointStatus,
    /// `L (x) F_{p^m} -> M` is injective.
    pub injective: bool,
}

impl SemilinearModule {
    pub fn new(field: GaloisField, matrix: Vec<Vec<Gf>>) -> Result<Self> {
        let rank = matrix.len();
        if matrix.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidArgument(
                "frobenius matrix must be square".into(),
            ));
        }
        if rank_over_field(&field, &matrix) != rank {
            return Err(Error::SingularMatrix);
        }
        Ok(SemilinearModule {
            field,
            rank,
            matrix,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn apply(&self, v: &[Gf]) -> Vec<Gf> {
        let k = &self.field;
        let sv: Vec<Gf> = v.iter().map(|x| k.frobenius(x)).collect();
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sv)
                    .fold(k.zero(), |acc, (a, x)| k.add(&acc, &k.mul(a, x)))
            })
            .collect()
    }

    /// Fixed points of `phi_M`, solving the `F_p`-linear system on `F_p^{mr}`.
    pub fn frobenius_fixed_points(&self) -> FixedPoints {
        let k = &self.field;
        let (m, r) = (k.degree() as usize, self.rank);
        let n = m * r;
        let p = k.p();
        // column (j, t) of phi_M - 1 applied to x^t e_j, flattened
        let mut cols = Vec::with_capacity(n);
        for j in 0..r {
            for t in 0..m {
                let mut v = vec![k.zero(); r];
                v[j][t] = 1;
                let w = self.apply(&v);
                let diff: Vec<u64> = w.iter().zip(&v).flat_map(|(a, b)| k.sub(a, b)).collect();
                cols.push(diff);
            }
        }
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        let kernel = kernel_mod_p(&rows, n, p);
        let basis: Vec<Vec<Gf>> = kernel
            .iter()
            .map(|x| x.chunks(m).map(|c| c.to_vec()).collect())
            .collect();
        let span_rank = rank_over_field(k, &basis);
        let dimension = basis.len();
        let status = if dimension == r && span_rank == r {
            FixedPointStatus::Complete
        } else {
            FixedPointStatus::RequiresExtension
        };
        FixedPoints {
            dimension,
            basis,
            span_rank,
            rank: r,
            status,
            injective: span_rank == dimension,
        }
    }

    /// Number of fixed vectors by enumeration of all of `M`.
    pub fn count_fixed_points_exhaustive(&self) -> u64 {
        let k = &self.field;
        let q = k.order();
        let total = q.pow(self.rank as u32);
        (0..total)
            .filter(|&idx| {
                let mut i = idx;
                let v: Vec<Gf> = (0..self.rank)
                    .map(|_| {
                        let e = k.element(i % q);
                        i /= q;
                        e
                    })
                    .collect();
                self.apply(&v) == v
            })
            .count() as u64
    }
}

/// Rank of a list of row vectors over `F_{p^m}`.
pub fn rank_over_field(k: &GaloisField, rows: &[Vec<Gf>]) -> usize {
    let mut rows: Vec<Vec<Gf>> = rows.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| !k.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = k.inv(&rows[rank][col]).unwrap();
        let pivot_row: Vec<Gf> = rows[rank].iter().map(|x| k.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !k.is_zero(&row[col]) {
                let c = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(&c, y));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Basis of `{x in F_p^n : rows * x = 0}`.
pub fn kernel_mod_p(rows: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = crate::arith::fp_inv(a[r][col], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p * p - c * y) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; n];
            x[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - a[i][f]) % p;
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(k: &GaloisField, a: Gf) -> SemilinearModule {
        SemilinearModule::new(k.clone(), vec![vec![a]]).unwrap()
    }

    #[test]
    fn plain_frobenius_on_f4() {
        let k = GaloisField::new(2, 2).unwrap();
        let fp = scalar(&k, k.one()).frobenius_fixed_points();
        assert_eq!((fp.dimension, fp.status), (1, FixedPointStatus::Complete));
        let id = SemilinearModule::new(
            k.clone(),
            vec![vec![k.one(), k.zero()], vec![k.zero(), k.one()]],
        )
        .unwrap();
        assert_eq!(id.frobenius_fixed_points().dimension, 2);
    }

    #[test]
    fn nonrational_scalar() {
        let k = GaloisField::new(2, 2).unwrap();
        let m = scalar(&k, k.generator());
        let fp = m.frobenius_fixed_points();
        assert_eq!(fp.dimension, 1);
        assert_eq!(m.count_fixed_points_exhaustive(), 2);
        // over F_9 a nonsquare scalar has no nonzero fixed vector
        let k9 = GaloisField::new(3, 2).unwrap();
        let nonsquare = k9
            .elements()
            .find(|a| !k9.is_zero(a) && k9.pow(a, 4) != k9.one())
            .unwrap();
        let fp = scalar(&k9, nonsquare).frobenius_fixed_points();
        assert_eq!(
            (fp.dimension, fp.status),
            (0, FixedPointStatus::RequiresExtension)
        );
    }

    #[test]
    fn singular_matrix_rejected() {
        let k = GaloisField::new(3, 2).unwrap();
        let z = k.zero();
        assert!(matches!(
            SemilinearModule::new(k.clone(), vec![vec![z]]),
            Err(Error::SingularMatrix)
        ));
    }
}
