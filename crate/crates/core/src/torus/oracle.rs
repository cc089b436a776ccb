use num_bigint::BigInt;
use num_traits::Zero;

use super::grading::{weight, GradingBox};
use crate::arith::{ipow, LaurentElement};
use crate::complexes::{
    binomial, homology_snf, koszul, ChainComplex, HomologyPresentation, IntComplex, Integers,
    Matrix, ModuleStructure,
};
use crate::decalage::eta_subcomplex_by;
use crate::error::Result;
use crate::witt_ainf::QuotientRing;

fn expand(oc: &QuotientRing, m: &Matrix<LaurentElement>) -> Matrix<BigInt> {
    let n = oc.degree();
    let blocks: Vec<Vec<Matrix<BigInt>>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|e| oc.multiplication_matrix(e)).collect())
        .collect();
    Matrix::from_fn(m.rows() * n, m.cols() * n, |i, j| {
        blocks[i / n][j / n].get(i % n, j % n).clone()
    })
}

fn block_diagonal(b: &Matrix<BigInt>, copies: usize) -> Matrix<BigInt> {
    let n = b.rows();
    Matrix::from_fn(n * copies, n * copies, |i, j| {
        if i / n == j / n {
            b.get(i % n, j % n).clone()
        } else {
            BigInt::zero()
        }
    })
}

/// A complex over `Z[zeta]` viewed as a complex of free `Z`-modules.
pub fn restrict_scalars(k: &ChainComplex<QuotientRing>) -> IntComplex {
    let oc = k.ring();
    let n = oc.degree();
    let ranks = k.ranks().iter().map(|r| r * n).collect();
    let diffs = k.diffs().iter().map(|m| expand(oc, m)).collect();
    IntComplex::new(Integers, k.lo(), ranks, diffs).expect("restriction of scalars is a complex")
}

/// `L eta_{zeta_p - 1}` of the `O_C`-model summand at the given numerators,
/// computed on `Z`-lattices with no use of the divisibility rule.
pub fn tilde_cell_lattice_homology(
    b: &GradingBox,
    numerators: &[i64],
) -> Result<HomologyPresentation<ModuleStructure>> {
    let oc = QuotientRing::oc_model(b.p(), b.depth());
    let g: Vec<LaurentElement> = numerators
        .iter()
        .map(|&a| oc.reduce(&weight(b.depth(), a)))
        .collect();
    let k = koszul(&oc, &g);
    let f = oc.reduce(&LaurentElement::monomial_minus_one(
        b.depth(),
        ipow(b.p(), b.depth().saturating_sub(1)),
    ));
    let mf = oc.multiplication_matrix(&f);
    let ops: Vec<Matrix<BigInt>> = k.ranks().iter().map(|&r| block_diagonal(&mf, r)).collect();
    let eta = eta_subcomplex_by(&restrict_scalars(&k), &ops)?;
    Ok(homology_snf(&eta))
}

/// Expected lattice homology: free of rank `phi(p^n) binomial(d, i)` for
/// integral gradings, zero otherwise.
pub fn tilde_cell_expected(b: &GradingBox, numerators: &[i64]) -> Vec<ModuleStructure> {
    let d = numerators.len();
    let integral = numerators.iter().all(|a| a % b.scale() == 0);
    let n = QuotientRing::oc_model(b.p(), b.depth()).degree();
    (0..=d)
        .map(|i| {
            if integral {
                ModuleStructure::free(n * binomial(d, i))
            } else {
                ModuleStructure::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_oracle_matches_rule() {
        let b = GradingBox::new(3, 2, 1, 1).unwrap();
        for nums in [[0, 0], [1, 0], [3, -3], [2, 3], [-1, -2]] {
            let h = tilde_cell_lattice_homology(&b, &nums).unwrap();
            let got: Vec<ModuleStructure> = (0..=2).map(|i| h.get(i)).collect();
            assert_eq!(got, tilde_cell_expected(&b, &nums), "{nums:?}");
        }
    }
}
