use serde::Serialize;

use super::grading::{build_torus_cohomology, weight, GradingBox};
use crate::arith::{q_integer, LaurentElement};
use crate::complexes::{
    binomial, homology_diagonal, koszul_to_diagonal, Divisibility, Ring, SymbolicModule,
    SymbolicModuleJson,
};
use crate::decalage::{element_fact, leta_rule, ElementFact, LetaRule};
use crate::error::{Error, Result};
use crate::witt_ainf::{AinfModel, QuotientRing};

const MAX_LISTED_ANOMALIES: usize = 16;

/// One surviving grading of a torus computation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CellReport {
    pub grading: Vec<String>,
    pub elements: Vec<String>,
    pub homology: Vec<SymbolicModuleJson>,
    /// Integer twist tag per degree.
    pub twists: Vec<i64>,
    pub passed: bool,
}

/// Data of a surviving `A_inf` summand kept for the specializations.
#[derive(Clone, Debug, PartialEq)]
pub struct Survivor {
    /// The integral grading `a`.
    pub grading: Vec<i64>,
    /// `(q^{a_j} - 1) / (q^{1/p} - 1)`, the elements after the first decalage.
    pub first_quotients: Vec<LaurentElement>,
    /// `[a_j]_q`, the elements after both decalages.
    pub elements: Vec<LaurentElement>,
}

/// Rank and divisor table of one stage over a grading box.
#[derive(Clone, Debug, Serialize)]
pub struct TorusCohomologyResult {
    pub stage: String,
    pub ring: String,
    pub p: u64,
    pub depth: u32,
    pub dim: usize,
    pub bound: u32,
    pub total_cells: u64,
    pub killed_cells: u64,
    pub cells: Vec<CellReport>,
    /// Sum over stored cells of the free rank in each degree.
    pub free_rank_table: Vec<usize>,
    /// Number of torsion quotients in each degree.
    pub torsion_table: Vec<usize>,
    pub anomaly_count: u64,
    pub anomalies: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub survivors: Vec<Survivor>,
}

impl TorusCohomologyResult {
    pub(crate) fn new(stage: &str, ring: String, b: &GradingBox) -> Self {
        TorusCohomologyResult {
            stage: stage.to_string(),
            ring,
            p: b.p(),
            depth: b.depth(),
            dim: b.dim(),
            bound: b.bound(),
            total_cells: b.len(),
            killed_cells: 0,
            cells: Vec::new(),
            free_rank_table: vec![0; b.dim() + 1],
            torsion_table: vec![0; b.dim() + 1],
            anomaly_count: 0,
            anomalies: Vec::new(),
            passed: true,
            survivors: Vec::new(),
        }
    }

    pub(crate) fn anomaly(&mut self, msg: impl FnOnce() -> String) {
        self.anomaly_count += 1;
        self.passed = false;
        if self.anomalies.len() < MAX_LISTED_ANOMALIES {
            self.anomalies.push(msg());
        }
    }

    pub(crate) fn push_cell(&mut self, cell: CellReport) {
        for (i, h) in cell.homology.iter().enumerate() {
            self.free_rank_table[i] += h.free_rank;
            self.torsion_table[i] += h.quotients.len();
        }
        if !cell.passed {
            let g = cell.grading.join(",");
            self.anomaly(|| format!("cell ({g}) failed"));
        }
        self.cells.push(cell);
    }

    pub fn cell(&self, grading: &[&str]) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.grading == grading)
    }
}

/// Twist tag `{-i}` carried by degree `i`.
pub fn twist_tags(dim: usize) -> Vec<i64> {
    (0..=dim as i64).map(|i| -i).collect()
}

/// Tags add under the wedge product of degrees `i` and `j`.
pub fn twists_additive(tags: &[i64]) -> bool {
    let d = tags.len();
    (0..d).all(|i| (0..d - i).all(|j| tags[i] + tags[j] == tags[i + j]))
}

/// Symbolic homology of `K(g_1..g_d)` padded to degrees `0..=d`.
pub(crate) fn symbolic_homology<R: Divisibility>(
    ring: &R,
    elements: &[R::Elem],
) -> Option<Vec<SymbolicModule<R::Elem>>> {
    let dc = koszul_to_diagonal(ring, elements)?;
    let h = homology_diagonal(ring, &dc);
    Some((0..=elements.len() as i32).map(|i| h.get(i)).collect())
}

pub(crate) fn homology_json<R: Divisibility>(
    ring: &R,
    h: &[SymbolicModule<R::Elem>],
) -> Vec<SymbolicModuleJson> {
    h.iter().map(|m| m.to_json(ring)).collect()
}

/// The exterior algebra pattern: free rank `binomial(d, i)`, no torsion.
pub(crate) fn is_exterior<E>(h: &[SymbolicModule<E>]) -> bool {
    let d = h.len() - 1;
    h.iter()
        .enumerate()
        .all(|(i, m)| m.free_rank == binomial(d, i) && m.quotients.is_empty())
}

/// Outcome of the symbolic rule on one cell.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum CellOutcome<E> {
    Summand(Vec<E>),
    Killed,
    NotStructured,
}

/// `L eta_{zeta_p - 1}` on the `O_C` model of level `n`, cached per numerator.
pub(crate) struct TildeModel {
    pub oc: QuotientRing,
    pub facts: Vec<ElementFact<LaurentElement>>,
    pub numerators: Vec<i64>,
}

impl TildeModel {
    pub fn new(b: &GradingBox) -> Result<Self> {
        Self::for_numerators(b.p(), b.depth(), b.numerators())
    }

    /// Facts only for the given numerators (sorted on return).
    pub fn for_numerators(p: u64, level: u32, mut numerators: Vec<i64>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument(
                "the tilde model needs depth >= 1".into(),
            ));
        }
        numerators.sort_unstable();
        numerators.dedup();
        let oc = QuotientRing::oc_model(p, level);
        let f = oc.reduce(&LaurentElement::monomial_minus_one(
            level,
            crate::arith::ipow(p, level - 1),
        ));
        let facts = numerators
            .iter()
            .map(|&a| element_fact(&oc, &oc.reduce(&weight(level, a)), &f))
            .collect();
        Ok(TildeModel {
            oc,
            facts,
            numerators,
        })
    }

    pub fn fact_of(&self, numerator: i64) -> Option<&ElementFact<LaurentElement>> {
        let i = self.numerators.binary_search(&numerator).ok()?;
        Some(&self.facts[i])
    }

    pub fn outcome(&self, facts: &[&ElementFact<LaurentElement>]) -> CellOutcome<LaurentElement> {
        match leta_rule(facts) {
            LetaRule::Divide => {
                CellOutcome::Summand(facts.iter().map(|x| x.quotient.clone().unwrap()).collect())
            }
            LetaRule::DivideAcyclic | LetaRule::Zero => CellOutcome::Killed,
            LetaRule::NotStructured => CellOutcome::NotStructured,
        }
    }
}

/// `L eta_{zeta_p - 1}` of the `O_C`-model graded Koszul sum.
pub fn tilde_omega_torus(b: &GradingBox) -> Result<TorusCohomologyResult> {
    let model = TildeModel::new(b)?;
    let mut res = TorusCohomologyResult::new("tilde", model.oc.tag(), b);
    let nums = b.numerators();
    let scale = b.scale();
    let d = b.dim();
    let mut refs = Vec::with_capacity(d);
    b.for_each_cell(|idx| {
        refs.clear();
        refs.extend(idx.iter().map(|&i| &model.facts[i]));
        let integral = idx.iter().all(|&i| nums[i] % scale == 0);
        let grading = || b.grading(&idx.iter().map(|&i| nums[i]).collect::<Vec<_>>());
        match model.outcome(&refs) {
            CellOutcome::Summand(q) => {
                let Some(h) = symbolic_homology(&model.oc, &q) else {
                    res.anomaly(|| format!("{:?}: quotients not ordered", fmt(&grading())));
                    return;
                };
                let cell = CellReport {
                    grading: fmt(&grading()),
                    elements: q.iter().map(ToString::to_string).collect(),
                    homology: homology_json(&model.oc, &h),
                    twists: twist_tags(d),
                    passed: integral && is_exterior(&h),
                };
                res.push_cell(cell);
            }
            CellOutcome::Killed => {
                res.killed_cells += 1;
                if integral {
                    res.anomaly(|| format!("{:?}: integral grading killed", fmt(&grading())));
                }
            }
            CellOutcome::NotStructured => {
                res.anomaly(|| format!("{:?}: no decalage rule applies", fmt(&grading())));
            }
        }
    });
    if !twists_additive(&twist_tags(d)) {
        res.anomaly(|| "twist tags not additive".into());
    }
    Ok(res)
}

pub(crate) fn fmt(g: &[crate::arith::RationalExponent]) -> Vec<String> {
    g.iter().map(ToString::to_string).collect()
}

/// `L eta_xi o L eta_{phi^{-1} mu}` of the graded Koszul sum over `A_inf`,
/// cross-checked against `L eta_mu` applied directly.
pub fn ainf_omega_torus(b: &GradingBox) -> Result<TorusCohomologyResult> {
    if b.depth() == 0 {
        return Err(Error::InvalidArgument(
            "the A_inf model needs depth >= 1".into(),
        ));
    }
    let model = AinfModel::new(b.p(), b.depth())?;
    let sum = build_torus_cohomology(&model, *b)?;
    let (f1, xi, mu) = (model.phi_inverse_mu(), model.xi(), model.mu());
    let first: Vec<_> = sum
        .weights
        .iter()
        .map(|g| element_fact(&model, g, &f1))
        .collect();
    let second: Vec<Option<_>> = first
        .iter()
        .map(|x| x.quotient.as_ref().map(|e| element_fact(&model, e, &xi)))
        .collect();
    let direct: Vec<_> = sum
        .weights
        .iter()
        .map(|g| element_fact(&model, g, &mu))
        .collect();
    // Per coordinate: does the two-step quotient equal the direct one?
    let agree: Vec<bool> = second
        .iter()
        .zip(&direct)
        .map(|(s, m)| s.as_ref().and_then(|s| s.quotient.as_ref()) == m.quotient.as_ref())
        .collect();

    let mut res = TorusCohomologyResult::new("ainf", model.laurent_ring().tag(), b);
    let nums = b.numerators();
    let scale = b.scale();
    let d = b.dim();
    let mut refs = Vec::with_capacity(d);
    let mut survivors = Vec::new();
    b.for_each_cell(|idx| {
        let grading = || fmt(&b.grading(&idx.iter().map(|&i| nums[i]).collect::<Vec<_>>()));
        refs.clear();
        refs.extend(idx.iter().map(|&i| &first[i]));
        let two_step = match leta_rule(&refs) {
            LetaRule::Divide | LetaRule::DivideAcyclic => {
                refs.clear();
                refs.extend(idx.iter().map(|&i| second[i].as_ref().unwrap()));
                match leta_rule(&refs) {
                    LetaRule::Divide | LetaRule::DivideAcyclic => Some(true),
                    LetaRule::Zero => Some(false),
                    LetaRule::NotStructured => None,
                }
            }
            LetaRule::Zero => Some(false),
            LetaRule::NotStructured => None,
        };
        refs.clear();
        refs.extend(idx.iter().map(|&i| &direct[i]));
        let one_step = match leta_rule(&refs) {
            LetaRule::Divide | LetaRule::DivideAcyclic => Some(true),
            LetaRule::Zero => Some(false),
            LetaRule::NotStructured => None,
        };
        let integral = idx.iter().all(|&i| nums[i] % scale == 0);
        match (two_step, one_step) {
            (Some(true), Some(true)) => {
                if !idx.iter().all(|&i| agree[i]) {
                    res.anomaly(|| format!("{:?}: L eta_mu differs from the composite", grading()));
                }
                if !integral {
                    res.anomaly(|| format!("{:?}: nonintegral grading survives", grading()));
                    return;
                }
                survivors.push(idx.to_vec());
            }
            (Some(false), Some(false)) => {
                res.killed_cells += 1;
                if integral {
                    res.anomaly(|| format!("{:?}: integral grading killed", grading()));
                }
            }
            (Some(_), Some(_)) => {
                res.anomaly(|| format!("{:?}: L eta_mu differs from the composite", grading()));
            }
            _ => res.anomaly(|| format!("{:?}: no decalage rule applies", grading())),
        }
    });

    for idx in survivors {
        let a: Vec<i64> = idx.iter().map(|&i| nums[i] / scale).collect();
        let first_quotients: Vec<LaurentElement> = idx
            .iter()
            .map(|&i| first[i].quotient.clone().unwrap())
            .collect();
        let elements: Vec<LaurentElement> = idx
            .iter()
            .map(|&i| second[i].as_ref().unwrap().quotient.clone().unwrap())
            .collect();
        let expected = a
            .iter()
            .zip(&elements)
            .all(|(&x, e)| *e == q_integer(x, b.p(), b.depth()));
        let grading = fmt(&b.grading(&idx.iter().map(|&i| nums[i]).collect::<Vec<_>>()));
        let h = symbolic_homology(&model, &elements);
        let cell = CellReport {
            grading,
            elements: elements.iter().map(ToString::to_string).collect(),
            homology: h
                .as_ref()
                .map(|h| homology_json(&model, h))
                .unwrap_or_default(),
            twists: twist_tags(d),
            passed: expected && h.is_some(),
        };
        res.push_cell(cell);
        res.survivors.push(Survivor {
            grading: a,
            first_quotients,
            elements,
        });
    }
    let integral_count = (2 * b.bound() as u64 + 1).pow(d as u32);
    if res.survivors.len() as u64 != integral_count {
        res.anomaly(|| "survivors are not exactly the integral gradings".into());
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_d1() {
        let b = GradingBox::new(3, 1, 1, 1).unwrap();
        let r = tilde_omega_torus(&b).unwrap();
        assert!(r.passed, "{:?}", r.anomalies);
        assert_eq!(r.cells.len(), 3);
        assert_eq!(r.killed_cells, 4);
        assert_eq!(r.free_rank_table, vec![3, 3]);
    }

    #[test]
    fn tilde_d3_ranks() {
        let b = GradingBox::new(2, 3, 2, 1).unwrap();
        let r = tilde_omega_torus(&b).unwrap();
        assert!(r.passed, "{:?}", r.anomalies);
        let c = r.cell(&["0", "1", "-1"]).unwrap();
        let ranks: Vec<usize> = c.homology.iter().map(|h| h.free_rank).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
    }

    #[test]
    fn tilde_d0() {
        let b = GradingBox::new(5, 0, 1, 2).unwrap();
        let r = tilde_omega_torus(&b).unwrap();
        assert!(r.passed);
        assert_eq!(r.free_rank_table, vec![1]);
    }

    #[test]
    fn ainf_d1() {
        let b = GradingBox::new(3, 1, 1, 3).unwrap();
        let r = ainf_omega_torus(&b).unwrap();
        assert!(r.passed, "{:?}", r.anomalies);
        assert_eq!(r.survivors.len(), 7);
        assert!(r.cell(&["1/3"]).is_none());
        let zero = r.cell(&["0"]).unwrap();
        assert_eq!(zero.homology[0].free_rank, 1);
        assert_eq!(zero.homology[1].free_rank, 1);
        // [3]_q is not a unit, [2]_q is
        assert_eq!(r.cell(&["3"]).unwrap().homology[1].quotients.len(), 1);
        assert!(r.cell(&["2"]).unwrap().homology[1].quotients.is_empty());
    }

    #[test]
    fn ainf_d2_zero_is_exterior() {
        let b = GradingBox::new(2, 2, 1, 2).unwrap();
        let r = ainf_omega_torus(&b).unwrap();
        assert!(r.passed, "{:?}", r.anomalies);
        let ranks: Vec<usize> = r
            .cell(&["0", "0"])
            .unwrap()
            .homology
            .iter()
            .map(|h| h.free_rank)
            .collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }

    #[test]
    fn twist_tags_add() {
        assert!(twists_additive(&twist_tags(3)));
        assert!(!twists_additive(&[0, -1, -3]));
    }
}
