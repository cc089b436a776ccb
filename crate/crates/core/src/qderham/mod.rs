//! The q-de Rham complex of the torus built from the q-derivatives
//! `nabla_{q,j}`, and its comparison with the Koszul pipeline.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::arith::{ipow, LaurentElement};
use crate::complexes::{
    binomial, homology_diagonal, koszul, koszul_to_diagonal, ChainComplex, IntComplex, Integers,
    LaurentRing, Matrix, Ring, SymbolicModuleJson,
};
use crate::error::{Error, Result};
use crate::torus::{ainf_omega_torus, de_rham_complex, GradingBox};
use crate::witt_ainf::AinfModel;

/// A finite sum `sum_m c_m t^m` with `c_m` in the depth-`n` carrier, `q = u^{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLaurentFunction {
    p: u64,
    depth: u32,
    dim: usize,
    coeffs: BTreeMap<Vec<i64>, LaurentElement>,
}

impl QLaurentFunction {
    pub fn zero(p: u64, depth: u32, dim: usize) -> Self {
        QLaurentFunction {
            p,
            depth,
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u64, depth: u32, m: Vec<i64>, c: LaurentElement) -> Self {
        let dim = m.len();
        let mut f = Self::zero(p, depth, dim);
        f.add_term(m, c);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentElement)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &[i64]) -> LaurentElement {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| LaurentElement::zero(self.depth))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, m: Vec<i64>, c: LaurentElement) {
        assert_eq!(m.len(), self.dim, "monomial of the wrong dimension");
        let c = c.with_depth(self.depth);
        let s = match self.coeffs.remove(&m) {
            Some(old) => old.add_unchecked(&c),
            None => c,
        };
        if !s.is_zero() {
            self.coeffs.insert(m, s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.coeffs {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.p, self.depth, self.dim);
        for (m, c) in &self.coeffs {
            for (n, e) in &o.coeffs {
                let mn = m.iter().zip(n).map(|(a, b)| a + b).collect();
                out.add_term(mn, c.mul_unchecked(e));
            }
        }
        out
    }

    fn q(&self) -> i64 {
        ipow(self.p, self.depth)
    }

    /// `f(t_1, .., q t_j, .., t_d)`.
    pub fn q_shift(&self, j: usize) -> Self {
        let mut out = Self::zero(self.p, self.depth, self.dim);
        for (m, c) in &self.coeffs {
            out.add_term(m.clone(), c.shift(m[j] * self.q()));
        }
        out
    }

    /// Multiplication by `t_j`.
    pub fn times_t(&self, j: usize) -> Self {
        let mut out = Self::zero(self.p, self.depth, self.dim);
        for (m, c) in &self.coeffs {
            let mut n = m.clone();
            n[j] += 1;
            out.add_term(n, c.clone());
        }
        out
    }

    /// Coefficient of `dt_j` in `nabla_q f = (f(q t_j) - f) / (q t_j - t_j) dt_j`,
    /// computed by exact division.
    pub fn nabla_q(&self, j: usize) -> Self {
        let num = self.q_shift(j).sub(self);
        let qm1 = LaurentElement::monomial_minus_one(self.depth, self.q());
        let mut out = Self::zero(self.p, self.depth, self.dim);
        for (m, c) in &num.coeffs {
            let mut n = m.clone();
            n[j] -= 1;
            let c = c
                .exact_div(&qm1)
                .ok()
                .flatten()
                .expect("q - 1 divides f(qt) - f(t) coefficientwise");
            out.add_term(n, c);
        }
        out
    }

    pub fn random(rng: &mut impl Rng, p: u64, depth: u32, dim: usize, bound: i64) -> Self {
        let mut f = Self::zero(p, depth, dim);
        for _ in 0..rng.gen_range(0..=3) {
            let m: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
            let c = LaurentElement::from_terms(
                depth,
                (0..rng.gen_range(1..=2)).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-3..=3))),
            );
            f.add_term(m, c);
        }
        f
    }
}

/// Increasing index tuples of size `k` from `0..d`, lexicographic.
fn forms(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                let start = v.last().map_or(0, |&x| x + 1);
                (start..d).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

fn wedge_sign(j: usize, s: &[usize]) -> Option<(i64, Vec<usize>)> {
    if s.contains(&j) {
        return None;
    }
    let before = s.iter().filter(|&&x| x < j).count();
    let mut w = s.to_vec();
    w.insert(before, j);
    Some((if before % 2 == 0 { 1 } else { -1 }, w))
}

/// The q-de Rham complex restricted to the monomial box `[-B, B]^d`, one block
/// per monomial `m` in the basis `t^m dlog t_S`.
#[derive(Clone, Debug)]
pub struct QDeRhamComplex {
    pub ring: LaurentRing,
    pub dim: usize,
    pub blocks: Vec<(Vec<i64>, ChainComplex<LaurentRing>)>,
}

impl QDeRhamComplex {
    pub fn block(&self, m: &[i64]) -> Option<&ChainComplex<LaurentRing>> {
        self.blocks.iter().find(|(n, _)| n == m).map(|(_, k)| k)
    }
}

/// The block at monomial `m`: `d(f dlog t_S) = sum_j t_j nabla_{q,j}(f) dlog t_j ^ dlog t_S`.
pub fn q_de_rham_block(p: u64, depth: u32, m: &[i64]) -> ChainComplex<LaurentRing> {
    let d = m.len();
    let ring = LaurentRing { p, depth };
    let f = QLaurentFunction::monomial(p, depth, m.to_vec(), LaurentElement::one(depth));
    // t_j nabla_{q,j} t^m = c_j t^m
    let c: Vec<LaurentElement> = (0..d).map(|j| f.nabla_q(j).times_t(j).coeff(m)).collect();
    let ranks = (0..=d).map(|k| binomial(d, k)).collect();
    let diffs = (0..d)
        .map(|k| {
            let (src, dst) = (forms(d, k), forms(d, k + 1));
            let mut mat = Matrix::zero(&ring, dst.len(), src.len());
            for (col, s) in src.iter().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if let Some((sign, w)) = wedge_sign(j, s) {
                        let r = dst.iter().position(|x| *x == w).unwrap();
                        let v = if sign > 0 { cj.clone() } else { cj.neg() };
                        mat.set(r, col, ring.add(mat.get(r, col), &v));
                    }
                }
            }
            mat
        })
        .collect();
    ChainComplex::new(ring, 0, ranks, diffs).expect("the nabla_{q,j} commute")
}

pub fn q_de_rham_complex(p: u64, depth: u32, dim: usize, bound: u32) -> Result<QDeRhamComplex> {
    let b = GradingBox::new(p, dim, depth, bound)?;
    let blocks = b
        .integral_gradings()
        .into_iter()
        .map(|m| {
            let k = q_de_rham_block(p, depth, &m);
            (m, k)
        })
        .collect();
    Ok(QDeRhamComplex {
        ring: LaurentRing { p, depth },
        dim,
        blocks,
    })
}

/// Specialization `u = 1`, hence `q = 1` and `[m]_q = m`.
pub fn q_to_one(k: &ChainComplex<LaurentRing>) -> IntComplex {
    k.map_ring(Integers, |x| x.eval_at_one())
}

/// Per-monomial check that `q_to_one` gives the classical de Rham complex of `t^m`.
pub fn check_q_to_one(c: &QDeRhamComplex) -> Vec<Vec<i64>> {
    c.blocks
        .iter()
        .filter(|(m, k)| q_to_one(k) != de_rham_complex(m))
        .map(|(m, _)| m.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BlockMismatch {
    pub monomial: Vec<i64>,
    pub degree: usize,
    pub q_de_rham: Vec<Vec<String>>,
    pub koszul: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComparisonReport {
    pub p: u64,
    pub depth: u32,
    pub dim: usize,
    pub bound: u32,
    pub blocks: usize,
    pub mismatches: Vec<BlockMismatch>,
    pub passed: bool,
}

fn strings(m: &Matrix<LaurentElement>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

/// Compares each q-de Rham block with the `A Omega` summand of the same
/// integral grading, matrix by matrix.
pub fn compare_with_torus_pipeline(
    p: u64,
    depth: u32,
    dim: usize,
    bound: u32,
) -> Result<ComparisonReport> {
    let qdr = q_de_rham_complex(p, depth, dim, bound)?;
    let b = GradingBox::new(p, dim, depth, bound)?;
    let a = ainf_omega_torus(&b)?;
    if !a.passed {
        return Err(Error::Precondition(
            "the A Omega pipeline reported anomalies".into(),
        ));
    }
    let mut mismatches = Vec::new();
    let mut blocks = 0;
    for s in &a.survivors {
        let Some(block) = qdr.block(&s.grading) else {
            continue;
        };
        blocks += 1;
        let k = koszul(&qdr.ring, &s.elements);
        for deg in 0..dim {
            let (x, y) = (block.diff(deg as i32), k.diff(deg as i32));
            if !x.eq_in(&qdr.ring, &y) {
                mismatches.push(BlockMismatch {
                    monomial: s.grading.clone(),
                    degree: deg,
                    q_de_rham: strings(&x),
                    koszul: strings(&y),
                });
            }
        }
    }
    let passed = mismatches.is_empty() && blocks == qdr.blocks.len();
    Ok(ComparisonReport {
        p,
        depth,
        dim,
        bound,
        blocks,
        mismatches,
        passed,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QDeRhamTableRow {
    pub monomial: Vec<i64>,
    pub homology: Vec<SymbolicModuleJson>,
}

/// Homology of each block over `A_inf`, as free ranks and divisors.
pub fn q_de_rham_table(p: u64, depth: u32, dim: usize, bound: u32) -> Result<Vec<QDeRhamTableRow>> {
    let model = AinfModel::new(p, depth)?;
    let qdr = q_de_rham_complex(p, depth, dim, bound)?;
    qdr.blocks
        .iter()
        .map(|(m, k)| {
            // d^0 sends t^m to sum_j [m_j]_q t^m dlog t_j
            let diag: Vec<LaurentElement> = (0..dim).map(|j| k.diff(0).get(j, 0).clone()).collect();
            let dc = koszul_to_diagonal(&model, &diag).ok_or_else(|| {
                Error::Precondition(format!("block {m:?} is not divisibility ordered"))
            })?;
            let h = homology_diagonal(&model, &dc);
            Ok(QDeRhamTableRow {
                monomial: m.clone(),
                homology: (0..=dim as i32).map(|i| h.get(i).to_json(&model)).collect(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NablaChecks {
    pub leibniz_pairs: usize,
    pub leibniz_failures: usize,
    pub commutation_cases: usize,
    pub commutation_failures: usize,
}

/// The q-Leibniz rule `nabla(fg) = f(qt) nabla(g) + nabla(f) g` on random pairs,
/// and pairwise commutation of the `t_j nabla_{q,j}`.
pub fn check_nabla(
    rng: &mut impl Rng,
    p: u64,
    depth: u32,
    dim: usize,
    pairs: usize,
) -> NablaChecks {
    let mut out = NablaChecks {
        leibniz_pairs: 0,
        leibniz_failures: 0,
        commutation_cases: 0,
        commutation_failures: 0,
    };
    for _ in 0..pairs {
        let f = QLaurentFunction::random(rng, p, depth, dim, 3);
        let g = QLaurentFunction::random(rng, p, depth, dim, 3);
        let j = rng.gen_range(0..dim);
        let lhs = f.mul(&g).nabla_q(j);
        let rhs = f.q_shift(j).mul(&g.nabla_q(j)).add(&f.nabla_q(j).mul(&g));
        out.leibniz_pairs += 1;
        if lhs != rhs {
            out.leibniz_failures += 1;
        }
        for i in 0..dim {
            for k in i + 1..dim {
                let a = f.nabla_q(k).times_t(k).nabla_q(i).times_t(i);
                let b = f.nabla_q(i).times_t(i).nabla_q(k).times_t(k);
                out.commutation_cases += 1;
                if a != b {
                    out.commutation_failures += 1;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn t(m: &[i64]) -> QLaurentFunction {
        QLaurentFunction::monomial(3, 1, m.to_vec(), LaurentElement::one(1))
    }

    #[test]
    fn nabla_of_monomials() {
        // q = u^3; nabla(t^2) = (1 + q) t dt
        let n = t(&[2]).nabla_q(0);
        assert_eq!(
            n.coeff(&[1]),
            LaurentElement::from_terms(1, [(0, 1), (3, 1)])
        );
        assert!(t(&[0]).nabla_q(0).is_zero());
        let n = t(&[-1]).nabla_q(0);
        assert_eq!(n.coeff(&[-2]), LaurentElement::monomial(1, -3, -1));
    }

    #[test]
    fn blocks() {
        let k = q_de_rham_block(3, 1, &[3]);
        assert_eq!(
            k.diff(0).get(0, 0),
            &LaurentElement::from_terms(1, [(0, 1), (3, 1), (6, 1)])
        );
        let k = q_de_rham_block(3, 1, &[0]);
        assert!(k.diff(0).get(0, 0).is_zero());
        let k = q_de_rham_block(2, 1, &[1, 2]);
        assert_eq!(k.diff(0).get(0, 0), &LaurentElement::one(1));
        assert_eq!(
            k.diff(0).get(1, 0),
            &LaurentElement::from_terms(1, [(0, 1), (2, 1)])
        );
    }

    #[test]
    fn q_to_one_is_de_rham() {
        let c = q_de_rham_complex(2, 1, 2, 2).unwrap();
        assert!(check_q_to_one(&c).is_empty());
        let k = q_to_one(&q_de_rham_block(3, 1, &[3]));
        assert_eq!(k.diff(0).get(0, 0), &BigInt::from(3));
    }

    #[test]
    fn comparison_passes() {
        assert!(compare_with_torus_pipeline(3, 1, 1, 3).unwrap().passed);
        assert!(compare_with_torus_pipeline(2, 1, 2, 2).unwrap().passed);
        assert!(compare_with_torus_pipeline(2, 1, 0, 2).unwrap().passed);
    }

    #[test]
    fn h1_at_p_is_xi_tilde() {
        let table = q_de_rham_table(3, 1, 1, 3).unwrap();
        let row = table.iter().find(|r| r.monomial == [3]).unwrap();
        let model = AinfModel::new(3, 1).unwrap();
        assert_eq!(
            row.homology[1].quotients,
            vec![model.xi_tilde().to_string()]
        );
        let zero = table.iter().find(|r| r.monomial == [0]).unwrap();
        assert_eq!(zero.homology[1].free_rank, 1);
    }

    #[test]
    fn nabla_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let c = check_nabla(&mut rng, 2, 1, 3, 50);
        assert_eq!(c.leibniz_failures, 0);
        assert_eq!(c.commutation_failures, 0);
    }
}
