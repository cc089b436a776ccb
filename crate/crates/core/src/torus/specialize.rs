use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::grading::GradingBox;
use super::pipeline::{
    fmt, twist_tags, CellOutcome, CellReport, TildeModel, TorusCohomologyResult,
};
use crate::arith::{ipow, LaurentElement};
use crate::complexes::{
    binomial, homology_dims_over_fraction_field, homology_snf, koszul, Divisibility, IntComplex,
    Matrix, Ring, SymbolicModuleJson,
};
use crate::error::{Error, Result};
use crate::witt_ainf::{AinfModel, QuotientRing};

fn grading_box(a: &TorusCohomologyResult) -> Result<GradingBox> {
    if a.stage != "ainf" {
        return Err(Error::Precondition(format!(
            "expected the ainf stage, got {}",
            a.stage
        )));
    }
    GradingBox::new(a.p, a.dim, a.depth, a.bound)
}

fn grading_strings(b: &GradingBox, a: &[i64]) -> Vec<String> {
    fmt(&b.grading(&a.iter().map(|x| x * b.scale()).collect::<Vec<_>>()))
}

fn exterior_json(d: usize) -> Vec<SymbolicModuleJson> {
    (0..=d)
        .map(|i| SymbolicModuleJson {
            free_rank: binomial(d, i),
            quotients: Vec::new(),
        })
        .collect()
}

fn zero_json(d: usize) -> Vec<SymbolicModuleJson> {
    (0..=d)
        .map(|_| SymbolicModuleJson {
            free_rank: 0,
            quotients: Vec::new(),
        })
        .collect()
}

/// Whether a Koszul complex with these entries is exterior (all zero) or
/// acyclic (some unit); `None` when neither criterion applies.
fn koszul_shape<R: Divisibility>(ring: &R, g: &[R::Elem]) -> Option<bool> {
    if g.iter().all(|x| ring.is_zero(x)) {
        Some(true)
    } else if g.iter().any(|x| !ring.is_zero(x) && ring.is_unit(x)) {
        Some(false)
    } else {
        None
    }
}

/// `A Omega / xi~` cell by cell against `Omega~` at level `n + 1`: the summand
/// at integral `a` is compared with the `Omega~` summand at grading `a / p`.
pub fn specialize_hodge_tate(a: &TorusCohomologyResult) -> Result<TorusCohomologyResult> {
    let b = grading_box(a)?;
    let model = AinfModel::new(b.p(), b.depth())?;
    let level = b.depth() + 1;
    let oc = QuotientRing::oc_model(b.p(), level);
    let d = b.dim();
    // a / p has numerator a p^n at level n + 1
    let tilde = TildeModel::for_numerators(
        b.p(),
        level,
        (-(b.bound() as i64)..=b.bound() as i64)
            .map(|x| x * b.scale())
            .collect(),
    )?;
    let mut theta: BTreeMap<i64, LaurentElement> = BTreeMap::new();
    for s in &a.survivors {
        for (x, e) in s.grading.iter().zip(&s.elements) {
            if !theta.contains_key(x) {
                theta.insert(*x, oc.reduce(&model.theta_tilde(e)?));
            }
        }
    }
    let mut res = TorusCohomologyResult::new("ht", oc.tag(), &b);
    res.total_cells = a.survivors.len() as u64;
    for s in &a.survivors {
        let g: Vec<LaurentElement> = s.grading.iter().map(|x| theta[x].clone()).collect();
        let reduced = koszul_shape(&oc, &g);
        let facts: Option<Vec<_>> = s
            .grading
            .iter()
            .map(|x| tilde.fact_of(x * b.scale()))
            .collect();
        let twisted = facts.map(|f| tilde.outcome(&f));
        let twisted_shape = match &twisted {
            Some(CellOutcome::Summand(q)) => koszul_shape(&oc, q),
            Some(CellOutcome::Killed) => Some(false),
            _ => None,
        };
        let passed = reduced.is_some() && reduced == twisted_shape;
        let homology = match reduced {
            Some(true) => exterior_json(d),
            _ => zero_json(d),
        };
        if reduced == Some(false) {
            res.killed_cells += 1;
        }
        res.push_cell(CellReport {
            grading: grading_strings(&b, &s.grading),
            elements: g.iter().map(ToString::to_string).collect(),
            homology,
            twists: twist_tags(d),
            passed,
        });
    }
    Ok(res)
}

/// Increasing index tuples of size `k` from `0..d`, lexicographic.
fn forms(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `s`, or `None` on a repeated index.
fn sort_sign(s: &[usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] == s[j] {
                return None;
            }
            if s[i] > s[j] {
                sign = -sign;
            }
        }
    }
    Some(sign)
}

/// Matrix of `d(t^a w) = sum_j a_j t^a dlog t_j ^ w` from `k`-forms to `(k+1)`-forms,
/// in the basis `dlog t_S`.
pub fn de_rham_matrix(a: &[i64], k: usize) -> Matrix<BigInt> {
    let d = a.len();
    let src = forms(d, k);
    let dst = forms(d, k + 1);
    let mut m = Matrix::filled(dst.len(), src.len(), BigInt::from(0));
    for (c, s) in src.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            let mut w = vec![j];
            w.extend(s);
            let Some(sign) = sort_sign(&w) else { continue };
            w.sort_unstable();
            let r = dst.iter().position(|t| *t == w).unwrap();
            let v = m.get(r, c) + BigInt::from(sign * aj);
            m.set(r, c, v);
        }
    }
    m
}

/// The classical de Rham complex of `t^a` over `Z`.
pub fn de_rham_complex(a: &[i64]) -> IntComplex {
    let d = a.len();
    let ranks = (0..=d).map(|k| binomial(d, k)).collect();
    let diffs = (0..d).map(|k| de_rham_matrix(a, k)).collect();
    IntComplex::new(crate::complexes::Integers, 0, ranks, diffs).expect("d^2 = 0")
}

/// Image under `theta` of `e / xi` where `e = [a]_q xi` is a first-stage quotient.
pub fn beta_xi_entry(model: &AinfModel, e: &LaurentElement) -> Option<LaurentElement> {
    let r = model.div_exact(e, &model.xi())?;
    Some(model.theta(&r))
}

/// `beta_xi` on the `d = 1` summand at integral `a`.
pub fn beta_xi_d1(model: &AinfModel, a: i64) -> Option<LaurentElement> {
    let g = if a == 0 {
        LaurentElement::zero(model.depth())
    } else {
        LaurentElement::monomial_minus_one(model.depth(), a * model.q_exponent())
    };
    let e = model.div_exact(&g, &model.phi_inverse_mu())?;
    beta_xi_entry(model, &e)
}

/// The Bockstein differential of `A Omega / xi`, compared with the classical
/// de Rham differential of `t^a` matrix by matrix.
pub fn specialize_de_rham(a: &TorusCohomologyResult) -> Result<TorusCohomologyResult> {
    let b = grading_box(a)?;
    let model = AinfModel::new(b.p(), b.depth())?;
    let oc = model.oc_ring();
    let d = b.dim();
    let mut beta: BTreeMap<i64, Option<LaurentElement>> = BTreeMap::new();
    for s in &a.survivors {
        for (x, e) in s.grading.iter().zip(&s.first_quotients) {
            beta.entry(*x).or_insert_with(|| beta_xi_entry(&model, e));
        }
    }
    let mut res = TorusCohomologyResult::new("dr", oc.tag(), &b);
    res.total_cells = a.survivors.len() as u64;
    for s in &a.survivors {
        let entries: Option<Vec<LaurentElement>> =
            s.grading.iter().map(|x| beta[x].clone()).collect();
        let Some(entries) = entries else {
            let g = grading_strings(&b, &s.grading);
            res.anomaly(|| format!("{g:?}: xi does not divide a first-stage quotient"));
            continue;
        };
        let bockstein = koszul(&oc, &entries);
        let classical = de_rham_complex(&s.grading);
        let matrices_agree = (0..d as i32).all(|k| {
            let beta_k = bockstein.diff(k);
            let dr_k = classical
                .diff(k)
                .map(|c| oc.reduce(&LaurentElement::constant(b.depth(), c.clone())));
            beta_k.eq_in(&oc, &dr_k)
        });
        let h = homology_snf(&classical);
        let homology: Vec<SymbolicModuleJson> = (0..=d as i32)
            .map(|i| {
                let m = h.get(i);
                SymbolicModuleJson {
                    free_rank: m.free_rank,
                    quotients: m.torsion.iter().map(ToString::to_string).collect(),
                }
            })
            .collect();
        res.push_cell(CellReport {
            grading: grading_strings(&b, &s.grading),
            elements: entries.iter().map(ToString::to_string).collect(),
            homology,
            twists: twist_tags(d),
            passed: matrices_agree,
        });
    }
    Ok(res)
}

/// Ranks of the homology of each surviving summand over `Q(u)`.
pub fn etale_rank_torus(a: &TorusCohomologyResult) -> Result<TorusCohomologyResult> {
    let b = grading_box(a)?;
    let ring = AinfModel::new(b.p(), b.depth())?.laurent_ring();
    let d = b.dim();
    let mut res = TorusCohomologyResult::new(
        "etale",
        format!("Q(u), q = u^{}", ipow(b.p(), b.depth())),
        &b,
    );
    res.total_cells = a.survivors.len() as u64;
    for s in &a.survivors {
        let ranks = homology_dims_over_fraction_field(&koszul(&ring, &s.elements));
        let expected: Vec<usize> = if s.grading.iter().all(|&x| x == 0) {
            (0..=d).map(|i| binomial(d, i)).collect()
        } else {
            vec![0; d + 1]
        };
        if ranks.iter().all(|&r| r == 0) {
            res.killed_cells += 1;
        }
        res.push_cell(CellReport {
            grading: grading_strings(&b, &s.grading),
            elements: s.elements.iter().map(ToString::to_string).collect(),
            homology: ranks
                .iter()
                .map(|&r| SymbolicModuleJson {
                    free_rank: r,
                    quotients: Vec::new(),
                })
                .collect(),
            twists: twist_tags(d),
            passed: ranks == expected,
        });
    }
    let total: Vec<usize> = (0..=d).map(|i| binomial(d, i)).collect();
    if res.free_rank_table != total {
        let t = res.free_rank_table.clone();
        res.anomaly(|| format!("etale ranks {t:?} differ from {total:?}"));
    }
    Ok(res)
}

/// Cells with nonzero homology kept, acyclic ones dropped.
pub fn prune_acyclic(r: &mut TorusCohomologyResult) {
    r.cells.retain(|c| {
        c.homology
            .iter()
            .any(|h| h.free_rank > 0 || !h.quotients.is_empty())
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::ainf_omega_torus;

    #[test]
    fn de_rham_d2_a11() {
        let m = de_rham_matrix(&[1, 1], 0);
        assert_eq!(m, Matrix::from_i64(2, 1, &[1, 1]));
        let m1 = de_rham_matrix(&[1, 1], 1);
        assert_eq!(m1, Matrix::from_i64(1, 2, &[-1, 1]));
    }

    #[test]
    fn beta_is_multiplication_by_a() {
        let model = AinfModel::new(3, 2).unwrap();
        for a in -4..=4 {
            let b = beta_xi_d1(&model, a).unwrap();
            assert_eq!(b, LaurentElement::constant(2, a));
        }
    }

    #[test]
    fn specializations_pass_small_box() {
        let b = GradingBox::new(2, 2, 1, 2).unwrap();
        let a = ainf_omega_torus(&b).unwrap();
        let ht = specialize_hodge_tate(&a).unwrap();
        assert!(ht.passed, "{:?}", ht.anomalies);
        let dr = specialize_de_rham(&a).unwrap();
        assert!(dr.passed, "{:?}", dr.anomalies);
        let et = etale_rank_torus(&a).unwrap();
        assert!(et.passed, "{:?}", et.anomalies);
        assert_eq!(et.free_rank_table, vec![1, 2, 1]);
        let zero = ht.cell(&["0", "0"]).unwrap();
        assert_eq!(zero.homology[1].free_rank, 2);
        // a = (2, 0): p | a, so the Hodge-Tate summand is exterior
        assert_eq!(ht.cell(&["2", "0"]).unwrap().homology[0].free_rank, 1);
        assert_eq!(ht.cell(&["1", "0"]).unwrap().homology[0].free_rank, 0);
    }
}
