//! Session configuration and the named verification suites.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{eps_power_minus_one, ipow, is_prime, LaurentElement};
use crate::complexes::{binomial, homology_diagonal, koszul_to_diagonal, IntComplex};
use crate::decalage::{
    check_composition, check_exactness_criterion, check_homology_formula, check_koszul_agreement,
    check_leta_mod_f_is_bockstein, check_mod_g_commutation, check_truncation, element_fact,
    eta_subcomplex, leta_inverse_maps, leta_koszul, leta_rule, random_complex, CheckReport,
    LetaKoszul, LetaRule, RandomComplexParams, TrianglePair,
};
use crate::error::{Error, Result};
use crate::qderham::{
    check_nabla, check_q_to_one, compare_with_torus_pipeline, q_de_rham_complex, q_de_rham_table,
};
use crate::torus::{
    ainf_omega_torus, beta_xi_d1, build_torus_cohomology, etale_rank_torus, random_fp_poly_complex,
    semicontinuity_demo, specialize_de_rham, specialize_hodge_tate, tilde_cell_expected,
    tilde_cell_lattice_homology, tilde_omega_torus, torsion_jump_model, torus_semicontinuity,
    GradingBox, TorusCohomologyResult, Verdict,
};
use crate::witt_ainf::{
    check_fixed_points, check_notation_identities, check_witt_layer, AinfModel, IdentityCheck,
};

pub const SUITES: [&str; 8] = [
    "s2-notation",
    "s5-leta",
    "s4-torus-decomp",
    "s6-tilde-omega",
    "s7-specializations",
    "s7-qderham",
    "s8-semicontinuity",
    "witt",
];

pub const MAX_P: u64 = 13;
pub const MAX_DEPTH: u32 = 3;
pub const MAX_DIM: usize = 4;
pub const MAX_BOUND: u32 = 8;
pub const MAX_PRECISION: u32 = 4;
/// Largest grading box a torus suite will sweep.
pub const MAX_BOX_CELLS: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub p: u64,
    pub depth: u32,
    pub dim: usize,
    pub bound: u32,
    pub precision: u32,
    pub seed: u64,
    pub instances: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            p: 3,
            depth: 1,
            dim: 2,
            bound: 2,
            precision: 3,
            seed: 0,
            instances: 100,
        }
    }
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !is_prime(self.p) || self.p > MAX_P {
            return bad(format!("p = {} must be a prime <= {MAX_P}", self.p));
        }
        if self.depth == 0 || self.depth > MAX_DEPTH {
            return bad(format!("depth = {} must be in 1..={MAX_DEPTH}", self.depth));
        }
        if self.dim > MAX_DIM {
            return bad(format!("dim = {} must be <= {MAX_DIM}", self.dim));
        }
        if self.bound > MAX_BOUND {
            return bad(format!("bound = {} must be <= {MAX_BOUND}", self.bound));
        }
        if self.precision == 0 || self.precision > MAX_PRECISION {
            return bad(format!(
                "precision = {} must be in 1..={MAX_PRECISION}",
                self.precision
            ));
        }
        Ok(())
    }

    /// The grading box, refusing boxes beyond `MAX_BOX_CELLS`.
    pub fn grading_box(&self) -> Result<GradingBox> {
        self.validate()?;
        let b = GradingBox::new(self.p, self.dim, self.depth, self.bound)?;
        let side = 2 * self.bound as u64 * ipow(self.p, self.depth) as u64 + 1;
        let cells = side.checked_pow(self.dim as u32);
        if cells.is_none_or(|c| c > MAX_BOX_CELLS) {
            return Err(Error::InvalidArgument(format!(
                "box ({side})^{} exceeds {MAX_BOX_CELLS} cells",
                self.dim
            )));
        }
        Ok(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub counterexamples: Vec<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub config: SessionConfig,
    pub instances: usize,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const MAX_COUNTEREXAMPLES: usize = 8;

struct Acc {
    name: String,
    cases: usize,
    counterexamples: Vec<String>,
    failures: usize,
    details: Vec<String>,
}

impl Acc {
    fn new(name: &str) -> Self {
        Acc {
            name: name.into(),
            cases: 0,
            counterexamples: Vec::new(),
            failures: 0,
            details: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(what());
            }
        }
    }

    fn report(&mut self, r: Result<CheckReport>, ctx: impl Fn() -> String) {
        match r {
            Ok(r) => self.record(r.passed, || {
                format!(
                    "{}: {}",
                    ctx(),
                    serde_json::to_string(&r).unwrap_or_default()
                )
            }),
            Err(e) => self.record(false, || format!("{}: {e}", ctx())),
        }
    }

    fn done(self) -> SuiteCheck {
        SuiteCheck {
            name: self.name,
            passed: self.failures == 0,
            cases: self.cases,
            counterexamples: self.counterexamples,
            details: self.details,
        }
    }
}

fn from_identity(c: IdentityCheck) -> SuiteCheck {
    SuiteCheck {
        name: c.identity,
        passed: c.passed,
        cases: c.cases,
        counterexamples: if c.passed {
            Vec::new()
        } else {
            c.witnesses.clone()
        },
        details: if c.passed { c.witnesses } else { Vec::new() },
    }
}

fn from_torus(name: &str, r: &TorusCohomologyResult) -> SuiteCheck {
    SuiteCheck {
        name: name.into(),
        passed: r.passed,
        cases: r.total_cells as usize,
        counterexamples: r.anomalies.clone(),
        details: vec![format!(
            "stored {} cells, killed {}, free ranks {:?}, torsion {:?}",
            r.cells.len(),
            r.killed_cells,
            r.free_rank_table,
            r.torsion_table
        )],
    }
}

fn error_check(name: &str, e: Error) -> SuiteCheck {
    SuiteCheck {
        name: name.into(),
        passed: false,
        cases: 1,
        counterexamples: vec![e.to_string()],
        details: Vec::new(),
    }
}

/// Runs a named suite. Errors only on an unknown suite or an invalid config.
pub fn run_suite(name: &str, config: &SessionConfig) -> Result<VerificationReport> {
    config.validate()?;
    let checks = match name {
        "s2-notation" => suite_notation(config)?,
        "s5-leta" => suite_leta(config),
        "s4-torus-decomp" => suite_torus_decomp(config)?,
        "s6-tilde-omega" => suite_tilde(config)?,
        "s7-specializations" => suite_specializations(config)?,
        "s7-qderham" => suite_qderham(config)?,
        "s8-semicontinuity" => suite_semicontinuity(config)?,
        "witt" => suite_witt(config),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        suite: name.into(),
        seed: config.seed,
        config: config.clone(),
        instances: config.instances,
        checks,
        passed,
    })
}

fn suite_notation(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let model = AinfModel::new(c.p, c.depth)?;
    let r = check_notation_identities(&model, c.instances, c.seed);
    Ok(r.checks.into_iter().map(from_identity).collect())
}

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `L eta_p` on `Z/p` and `Z/p^2`: zero, then `Z/p` in degree 1.
pub fn warning_pair(p: u64) -> Result<(bool, bool)> {
    let p = p as i64;
    let zp = IntComplex::from_i64(0, vec![1, 1], &[&[p]])?;
    let zp2 = IntComplex::from_i64(0, vec![1, 1], &[&[p * p]])?;
    let h1 = eta_subcomplex(&zp, &b(p))?.homology();
    let h2 = eta_subcomplex(&zp2, &b(p))?.homology();
    let first = h1.is_zero();
    let second = h2.get(0).is_zero() && h2.get(1).free_rank == 0 && h2.get(1).torsion == vec![b(p)];
    Ok((first, second))
}

fn suite_leta(c: &SessionConfig) -> Vec<SuiteCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let fs = [2i64, 3, 4];
    let mut formula = Acc::new("homology formula");
    let mut bock = Acc::new("L eta_f K / f = Bockstein complex");
    let mut comp = Acc::new("L eta_fg = L eta_f L eta_g");
    let mut modg = Acc::new("L eta_f commutes with mod g");
    let mut trunc = Acc::new("L eta_f commutes with canonical truncation");
    let mut exact = Acc::new("exactness criterion certificate");
    let mut inverse = Acc::new("inverse maps compose to f^d");
    let mut kosz = Acc::new("symbolic Koszul rule matches lattices");
    let mut warning = Acc::new("non-exactness pair Z/p, Z/p^2");
    match warning_pair(c.p) {
        Ok((a, bb)) => {
            warning.record(a, || "L eta_p Z/p is not zero".into());
            warning.record(bb, || "H^1 L eta_p Z/p^2 is not Z/p".into());
        }
        Err(e) => warning.record(false, || e.to_string()),
    }
    let mut not_applicable = 0;
    for i in 0..c.instances {
        let k = random_complex(&mut rng, RandomComplexParams::default());
        let f = *fs.choose(&mut rng).unwrap();
        let g = *fs.choose(&mut rng).unwrap();
        let ctx = || {
            format!(
                "instance {i} f={f} g={g} K={}",
                serde_json::to_string(&k.to_json()).unwrap_or_default()
            )
        };
        formula.report(check_homology_formula(&k, &b(f)), ctx);
        bock.report(check_leta_mod_f_is_bockstein(&k, &b(f)), ctx);
        comp.report(check_composition(&k, &b(f), &b(g)), ctx);
        match check_mod_g_commutation(&k, &b(f), &b(g)) {
            Ok(r) if !r.applicable => not_applicable += 1,
            r => modg.report(r, ctx),
        }
        let j = rng.gen_range(k.lo() - 1..=k.hi());
        trunc.report(check_truncation(&k, &b(f), j), ctx);
        let coprime = [2i64, 3, 5, 7]
            .into_iter()
            .find(|x| f % x != 0 && x % f != 0)
            .unwrap();
        match TrianglePair::multiplication(k.clone(), &b(coprime))
            .and_then(|t| check_exactness_criterion(&t, &b(f)))
        {
            Ok(r) => exact.record(r.hypothesis_holds && r.passed, || {
                format!("{}: {r:?}", ctx())
            }),
            Err(e) => exact.record(false, || format!("{}: {e}", ctx())),
        }
        let ks = k.shift(k.lo());
        let d = (ks.hi() - 1).max(0);
        match leta_inverse_maps(&ks, &b(f), d) {
            Ok(r) => inverse.record(r.check.passed, ctx),
            Err(e) => inverse.record(false, || format!("{}: {e}", ctx())),
        }
        let len = rng.gen_range(1..=3);
        let gs: Vec<BigInt> = (0..len).map(|_| b(rng.gen_range(-12..=12))).collect();
        kosz.report(check_koszul_agreement(&gs, &b(f)), || {
            format!("g={gs:?} f={f}")
        });
    }
    modg.details.push(format!(
        "{not_applicable} instances skipped: H(K/f) has g-torsion"
    ));
    vec![
        warning.done(),
        formula.done(),
        bock.done(),
        comp.done(),
        modg.done(),
        trunc.done(),
        exact.done(),
        inverse.done(),
        kosz.done(),
    ]
}

/// Up to `n` cells of the box chosen by the seed, always including `0`.
fn sample_cells(gb: &GradingBox, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let nums = gb.numerators();
    let mut out = vec![vec![0; gb.dim()]];
    if gb.len() <= n as u64 {
        out.clear();
        gb.for_each_cell(|idx| out.push(idx.iter().map(|&i| nums[i]).collect()));
        return out;
    }
    while out.len() < n {
        out.push((0..gb.dim()).map(|_| *nums.choose(rng).unwrap()).collect());
    }
    out
}

fn suite_torus_decomp(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let gb = c.grading_box()?;
    let model = AinfModel::new(c.p, c.depth)?;
    let sum = build_torus_cohomology(&model, gb)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let cells = sample_cells(&gb, c.instances, &mut rng);
    let mut shape = Acc::new("box is finite, lexicographic and contains 0");
    let side = gb.numerators().len() as u64;
    shape.record(gb.len() == side.pow(c.dim as u32), || "cell count".into());
    shape.record(gb.numerators().contains(&0), || "0 missing".into());
    let mut weights = Acc::new("summand elements are q^{a_j} - 1");
    let mut free = Acc::new("grading 0 free exterior, other integral gradings killed by mu");
    let mut killed = Acc::new("nonintegral gradings: homology killed by q^{1/p} - 1");
    let mut rule = Acc::new("symbolic L eta rule agrees with element facts");
    let f = model.phi_inverse_mu();
    for nums in &cells {
        let s = sum.summand_at(nums).expect("sampled cell lies in the box");
        let label = || {
            format!(
                "{:?}",
                s.grading
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            )
        };
        let expected: Result<Vec<LaurentElement>> = s
            .grading
            .iter()
            .map(|a| eps_power_minus_one(a, &model))
            .collect();
        weights.record(expected.is_ok_and(|e| e == s.elements), label);
        let dc = koszul_to_diagonal(&model, &s.elements);
        let integral = nums.iter().all(|a| a % gb.scale() == 0);
        match dc {
            Some(dc) => {
                let h = homology_diagonal(&model, &dc);
                let killed_by = |g: &LaurentElement| {
                    (0..=c.dim).all(|i| {
                        let m = h.get(i as i32);
                        m.free_rank == 0
                            && m.quotients.iter().all(|x| model.completed_divides(x, g))
                    })
                };
                if nums.iter().all(|&a| a == 0) {
                    let ok = (0..=c.dim).all(|i| {
                        let m = h.get(i as i32);
                        m.free_rank == binomial(c.dim, i) && m.quotients.is_empty()
                    });
                    free.record(ok, label);
                } else if integral {
                    free.record(killed_by(&model.mu()), label);
                } else {
                    killed.record(killed_by(&f), label);
                }
            }
            None => (if integral { &mut free } else { &mut killed }).record(false, || {
                format!("{}: elements not ordered by divisibility", label())
            }),
        }
        let facts: Vec<_> = s
            .elements
            .iter()
            .map(|g| element_fact(&model, g, &f))
            .collect();
        let refs: Vec<_> = facts.iter().collect();
        let symbolic = leta_koszul(&s, &f);
        let agree = matches!(
            (leta_rule(&refs), &symbolic),
            (
                LetaRule::Divide | LetaRule::DivideAcyclic,
                LetaKoszul::Koszul(_)
            ) | (LetaRule::Zero, LetaKoszul::Zero)
                | (LetaRule::NotStructured, LetaKoszul::NotStructured)
        );
        rule.record(agree && symbolic.label() != "not-structured", label);
    }
    Ok(vec![
        shape.done(),
        weights.done(),
        free.done(),
        killed.done(),
        rule.done(),
    ])
}

fn suite_tilde(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let gb = c.grading_box()?;
    let r = match tilde_omega_torus(&gb) {
        Ok(r) => r,
        Err(e) => return Ok(vec![error_check("tilde ranks", e)]),
    };
    let mut out = vec![from_torus(
        "free rank binomial(d,i) per integral grading, 0 elsewhere",
        &r,
    )];
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut cells = sample_cells(&gb, c.instances.min(12), &mut rng);
    if c.dim > 0 {
        let mut nonintegral = vec![0; c.dim];
        nonintegral[0] = ipow(c.p, c.depth - 1);
        cells.push(nonintegral);
    }
    let mut oracle = Acc::new("lattice oracle on sampled cells");
    for nums in &cells {
        let ok = tilde_cell_lattice_homology(&gb, nums).map(|h| {
            (0..=c.dim as i32).map(|i| h.get(i)).collect::<Vec<_>>()
                == tilde_cell_expected(&gb, nums)
        });
        oracle.record(ok.unwrap_or(false), || format!("{nums:?}"));
    }
    out.push(oracle.done());
    Ok(out)
}

type StageFn = fn(&TorusCohomologyResult) -> Result<TorusCohomologyResult>;

fn suite_specializations(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let gb = c.grading_box()?;
    let a = match ainf_omega_torus(&gb) {
        Ok(a) => a,
        Err(e) => return Ok(vec![error_check("A Omega", e)]),
    };
    let mut out = vec![from_torus(
        "A Omega: L eta_mu = L eta_xi L eta_{phi^-1 mu}",
        &a,
    )];
    let stages: [(&str, StageFn); 3] = [
        (
            "Hodge-Tate: A Omega / xi~ = twisted Omega~",
            specialize_hodge_tate,
        ),
        (
            "de Rham: Bockstein matrices = classical de Rham",
            specialize_de_rham,
        ),
        ("etale: ranks over Q(u)", etale_rank_torus),
    ];
    let mut results = Vec::new();
    for (name, stage) in stages {
        match stage(&a) {
            Ok(r) => {
                out.push(from_torus(name, &r));
                results.push(Some(r));
            }
            Err(e) => {
                out.push(error_check(name, e));
                results.push(None);
            }
        }
    }
    let model = AinfModel::new(c.p, c.depth)?;
    let mut beta = Acc::new("beta_xi on the d=1 piece is multiplication by a");
    for x in -4..=4 {
        let got = beta_xi_d1(&model, x);
        beta.record(got == Some(LaurentElement::constant(c.depth, x)), || {
            format!("a = {x}: {got:?}")
        });
    }
    out.push(beta.done());
    let mut cmp = Acc::new("etale ranks = de Rham dimensions at grading 0");
    if let (Some(dr), Some(et)) = (&results[1], &results[2]) {
        let zero: Vec<String> = vec!["0".into(); c.dim];
        let dr0: Option<Vec<usize>> = dr
            .cell(&zero.iter().map(String::as_str).collect::<Vec<_>>())
            .map(|cell| cell.homology.iter().map(|h| h.free_rank).collect());
        cmp.record(dr0.as_ref() == Some(&et.free_rank_table), || {
            format!("{dr0:?} vs {:?}", et.free_rank_table)
        });
        cmp.details.push(format!("{:?}", et.free_rank_table));
    } else {
        cmp.record(false, || "a stage failed".into());
    }
    out.push(cmp.done());
    Ok(out)
}

fn suite_qderham(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let mut out = Vec::new();
    let mut cmp = Acc::new("q-de Rham blocks equal the A Omega summands");
    match compare_with_torus_pipeline(c.p, c.depth, c.dim, c.bound) {
        Ok(r) => {
            cmp.cases = r.blocks;
            if !r.passed {
                cmp.failures += 1;
                cmp.counterexamples = r
                    .mismatches
                    .iter()
                    .take(MAX_COUNTEREXAMPLES)
                    .map(|m| serde_json::to_string(m).unwrap_or_default())
                    .collect();
                if r.mismatches.is_empty() {
                    cmp.counterexamples.push("block count differs".into());
                }
            }
        }
        Err(e) => cmp.record(false, || e.to_string()),
    }
    out.push(cmp.done());
    let mut one = Acc::new("q = 1 gives the classical de Rham complex");
    let qdr = q_de_rham_complex(c.p, c.depth, c.dim, c.bound)?;
    let bad = check_q_to_one(&qdr);
    one.cases = qdr.blocks.len();
    if !bad.is_empty() {
        one.failures = bad.len();
        one.counterexamples = bad
            .iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|m| format!("{m:?}"))
            .collect();
    }
    out.push(one.done());
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let n = check_nabla(&mut rng, c.p, c.depth, c.dim.max(1), c.instances);
    out.push(SuiteCheck {
        name: "q-Leibniz rule".into(),
        passed: n.leibniz_failures == 0,
        cases: n.leibniz_pairs,
        counterexamples: Vec::new(),
        details: Vec::new(),
    });
    out.push(SuiteCheck {
        name: "nabla_{q,i} commute".into(),
        passed: n.commutation_failures == 0,
        cases: n.commutation_cases,
        counterexamples: Vec::new(),
        details: Vec::new(),
    });
    let mut xi = Acc::new("H^1 at m = p is A/xi~");
    let model = AinfModel::new(c.p, c.depth)?;
    let table = q_de_rham_table(c.p, c.depth, 1, c.p as u32)?;
    let row = table.iter().find(|r| r.monomial == [c.p as i64]);
    let got = row.map(|r| r.homology[1].quotients.clone());
    xi.record(got == Some(vec![model.xi_tilde().to_string()]), || {
        format!("{got:?}")
    });
    out.push(xi.done());
    Ok(out)
}

fn suite_semicontinuity(c: &SessionConfig) -> Result<Vec<SuiteCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut random = Acc::new("generic rank <= special dimension on random complexes");
    let (mut eq, mut strict) = (0, 0);
    for i in 0..c.instances {
        let k = random_fp_poly_complex(&mut rng, c.p);
        let r = semicontinuity_demo(&k);
        match r.verdict {
            Verdict::Equality => eq += 1,
            Verdict::Strict => strict += 1,
            Verdict::Violated => {}
        }
        random.record(r.holds(), || format!("instance {i}: {r:?}"));
    }
    random
        .details
        .push(format!("{eq} equalities, {strict} strict"));
    let mut jump = Acc::new("F_p[u] --u--> F_p[u] is strict");
    let r = semicontinuity_demo(&torsion_jump_model(c.p));
    jump.record(r.verdict == Verdict::Strict, || format!("{r:?}"));
    jump.details.push(format!(
        "generic {:?} special {:?}",
        r.generic_ranks, r.special_dims
    ));
    let mut torus = Acc::new("torus A Omega / p is an equality");
    let a = ainf_omega_torus(&c.grading_box()?)?;
    let r = torus_semicontinuity(&a);
    let expected: Vec<usize> = (0..=c.dim).map(|i| binomial(c.dim, i)).collect();
    torus.record(
        r.verdict == Verdict::Equality && r.generic_ranks == expected,
        || format!("{r:?}"),
    );
    torus.details.push(format!(
        "generic {:?} special {:?} {:?}",
        r.generic_ranks, r.special_dims, r.verdict
    ));
    Ok(vec![random.done(), jump.done(), torus.done()])
}

fn suite_witt(c: &SessionConfig) -> Vec<SuiteCheck> {
    let mut out: Vec<SuiteCheck> = check_witt_layer(c.p, c.precision, c.instances, c.seed)
        .into_iter()
        .map(from_identity)
        .collect();
    out.push(from_identity(check_fixed_points(
        c.instances.min(30),
        c.seed,
    )));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        let mut c = SessionConfig::default();
        assert!(c.validate().is_ok());
        c.p = 17;
        assert!(c.validate().is_err());
        c.p = 4;
        assert!(c.validate().is_err());
        let c = SessionConfig {
            p: 13,
            depth: 3,
            dim: 4,
            bound: 8,
            ..SessionConfig::default()
        };
        assert!(c.validate().is_ok());
        assert!(c.grading_box().is_err());
    }

    #[test]
    fn warning() {
        assert_eq!(warning_pair(2).unwrap(), (true, true));
        assert_eq!(warning_pair(5).unwrap(), (true, true));
    }

    #[test]
    fn every_suite_passes_on_defaults() {
        let c = SessionConfig {
            instances: 10,
            ..SessionConfig::default()
        };
        for s in SUITES {
            let r = run_suite(s, &c).unwrap();
            assert!(r.passed, "{}", r.to_json());
            assert_eq!(r, run_suite(s, &c).unwrap());
        }
        assert!(run_suite("nope", &c).is_err());
    }
}
