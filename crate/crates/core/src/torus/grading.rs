use crate::arith::{ipow, is_prime, LaurentElement, RationalExponent};
use crate::complexes::{Divisibility, KoszulSummand, Ring};
use crate::error::{Error, Result};
use crate::witt_ainf::{AinfModel, QuotientRing};

/// Gradings `a` in `(p^{-n} Z cap [-B, B])^d`, stored by numerators `a p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradingBox {
    p: u64,
    dim: usize,
    depth: u32,
    bound: u32,
}

impl GradingBox {
    pub fn new(p: u64, dim: usize, depth: u32, bound: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
        }
        if depth > crate::witt_ainf::DEFAULT_MAX_DEPTH {
            return Err(Error::DepthOverflow {
                requested: depth,
                max: crate::witt_ainf::DEFAULT_MAX_DEPTH,
            });
        }
        Ok(GradingBox {
            p,
            dim,
            depth,
            bound,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `p^n`, the common denominator.
    pub fn scale(&self) -> i64 {
        ipow(self.p, self.depth)
    }

    /// Admissible numerators of one coordinate, increasing.
    pub fn numerators(&self) -> Vec<i64> {
        let m = self.bound as i64 * self.scale();
        (-m..=m).collect()
    }

    /// Number of gradings.
    pub fn len(&self) -> u64 {
        (self.numerators().len() as u64).pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponent(&self, numerator: i64) -> RationalExponent {
        RationalExponent::new(numerator, self.depth, self.p)
    }

    pub fn grading(&self, numerators: &[i64]) -> Vec<RationalExponent> {
        numerators.iter().map(|&a| self.exponent(a)).collect()
    }

    /// Calls `f` with the coordinate indices (into `numerators()`) of every
    /// grading, in lexicographic order.
    pub fn for_each_cell(&self, mut f: impl FnMut(&[usize])) {
        let n = self.numerators().len();
        let mut idx = vec![0usize; self.dim];
        loop {
            f(&idx);
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// The integral gradings `a in [-B, B]^d`, lexicographic.
    pub fn integral_gradings(&self) -> Vec<Vec<i64>> {
        let b = self.bound as i64;
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (-b..=b).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// The truncated graded sum of Koszul complexes `K(g_1, ..., g_d)` with
/// `g_j = q^{a_j} - 1` (or its image in a quotient ring). Summands are built on demand.
#[derive(Clone, Debug)]
pub struct GradedKoszulSum<R: Ring> {
    pub ring: R,
    pub grading_box: GradingBox,
    /// `q^a - 1` for each admissible numerator, in the order of `numerators()`.
    pub weights: Vec<R::Elem>,
}

impl<R: Divisibility> GradedKoszulSum<R> {
    pub fn summand(&self, idx: &[usize]) -> KoszulSummand<R> {
        let nums = self.grading_box.numerators();
        let grading = idx
            .iter()
            .map(|&i| self.grading_box.exponent(nums[i]))
            .collect();
        let elements = idx.iter().map(|&i| self.weights[i].clone()).collect();
        KoszulSummand::new(self.ring.clone(), elements, grading, 0)
    }

    pub fn summand_at(&self, numerators: &[i64]) -> Option<KoszulSummand<R>> {
        let nums = self.grading_box.numerators();
        let idx: Option<Vec<usize>> = numerators
            .iter()
            .map(|a| nums.iter().position(|b| b == a))
            .collect();
        idx.map(|i| self.summand(&i))
    }
}

pub(crate) fn weight(depth: u32, numerator: i64) -> LaurentElement {
    if numerator == 0 {
        LaurentElement::zero(depth)
    } else {
        LaurentElement::monomial_minus_one(depth, numerator)
    }
}

/// The graded model over `A_inf`: one summand per grading with `g_j = q^{a_j} - 1`.
pub fn build_torus_cohomology(
    model: &AinfModel,
    grading_box: GradingBox,
) -> Result<GradedKoszulSum<AinfModel>> {
    check_model(model.p(), model.depth(), &grading_box)?;
    let weights = grading_box
        .numerators()
        .into_iter()
        .map(|a| weight(model.depth(), a))
        .collect();
    Ok(GradedKoszulSum {
        ring: *model,
        grading_box,
        weights,
    })
}

/// The graded model over `O_C = Z[zeta_{p^n}]`: the images `theta(q^{a_j} - 1)`.
pub fn build_oc_torus_cohomology(grading_box: GradingBox) -> GradedKoszulSum<QuotientRing> {
    let oc = QuotientRing::oc_model(grading_box.p(), grading_box.depth());
    let weights = grading_box
        .numerators()
        .into_iter()
        .map(|a| oc.reduce(&weight(grading_box.depth(), a)))
        .collect();
    GradedKoszulSum {
        ring: oc,
        grading_box,
        weights,
    }
}

fn check_model(p: u64, depth: u32, b: &GradingBox) -> Result<()> {
    if p != b.p() {
        return Err(Error::InvalidArgument(format!(
            "model p={p} but box p={}",
            b.p()
        )));
    }
    if depth != b.depth() {
        return Err(Error::DepthMismatch(depth, b.depth()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_p3_box() {
        let b = GradingBox::new(3, 1, 1, 1).unwrap();
        let g: Vec<String> = b
            .numerators()
            .iter()
            .map(|&a| b.exponent(a).to_string())
            .collect();
        assert_eq!(g, ["-1", "-2/3", "-1/3", "0", "1/3", "2/3", "1"]);
        let m = AinfModel::new(3, 1).unwrap();
        let sum = build_torus_cohomology(&m, b).unwrap();
        let s = sum.summand_at(&[1]).unwrap();
        assert_eq!(s.elements[0], LaurentElement::monomial_minus_one(1, 1));
    }

    #[test]
    fn zero_dim_box_has_one_cell() {
        let b = GradingBox::new(2, 0, 1, 2).unwrap();
        assert_eq!(b.len(), 1);
        let mut n = 0;
        b.for_each_cell(|idx| {
            assert!(idx.is_empty());
            n += 1;
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn cells_are_lexicographic() {
        let b = GradingBox::new(2, 2, 1, 1).unwrap();
        let nums = b.numerators();
        let mut seen = Vec::new();
        b.for_each_cell(|idx| seen.push((nums[idx[0]], nums[idx[1]])));
        assert_eq!(seen.len() as u64, b.len());
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.integral_gradings().len(), 9);
    }
}
