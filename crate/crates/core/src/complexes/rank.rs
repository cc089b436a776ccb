use super::complex::ChainComplex;
use super::matrix::Matrix;
use super::ring::Divisibility;

/// Rank over the fraction field of a domain by fraction-free (Bareiss) elimination.
pub fn rank_fraction_free<R: Divisibility>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = ring.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = ring.sub(&ring.mul(&a[r][c], &a[i][j]), &ring.mul(&a[i][c], &a[r][j]));
                a[i][j] = ring
                    .div_exact(&t, &prev)
                    .expect("Bareiss step is exact over a domain");
            }
            a[i][c] = ring.zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Dimensions of the homology after base change to the fraction field.
pub fn homology_dims_over_fraction_field<R: Divisibility>(k: &ChainComplex<R>) -> Vec<usize> {
    let ring = k.ring();
    k.degrees()
        .map(|i| {
            k.rank(i)
                - rank_fraction_free(ring, &k.diff(i))
                - rank_fraction_free(ring, &k.diff(i - 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FpPoly, LaurentElement};
    use crate::complexes::ring::{FpPolyRing, Integers, LaurentRing};

    #[test]
    fn integer_rank() {
        let m = Matrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert_eq!(rank_fraction_free(&Integers, &m), 2);
        let z = Matrix::from_i64(2, 2, &[0, 0, 0, 0]);
        assert_eq!(rank_fraction_free(&Integers, &z), 0);
    }

    #[test]
    fn laurent_rank() {
        let r = LaurentRing { p: 2, depth: 1 };
        let a = LaurentElement::monomial_minus_one(1, 2);
        let b = LaurentElement::monomial_minus_one(1, 1);
        let m = Matrix::from_rows(
            vec![
                vec![a.clone(), b.clone()],
                vec![a.mul(&b).unwrap(), b.mul(&b).unwrap()],
            ],
            2,
        );
        assert_eq!(rank_fraction_free(&r, &m), 1);
    }

    #[test]
    fn fp_poly_rank() {
        let r = FpPolyRing { p: 3 };
        let u = FpPoly::x_pow(3, 1);
        let m = Matrix::from_rows(
            vec![
                vec![u.clone(), FpPoly::constant(3, 1)],
                vec![u.mul(&u), u.clone()],
            ],
            2,
        );
        assert_eq!(rank_fraction_free(&r, &m), 1);
    }
}
