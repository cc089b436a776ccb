//! Acceptance criteria; prints one line per criterion and fails if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use aomega::arith::LaurentElement;
use aomega::complexes::binomial;
use aomega::qderham::{
    check_nabla, check_q_to_one, compare_with_torus_pipeline, q_de_rham_complex,
};
use aomega::suite::{run_suite, warning_pair, SessionConfig};
use aomega::torus::{
    ainf_omega_torus, beta_xi_d1, random_fp_poly_complex, semicontinuity_demo, specialize_de_rham,
    specialize_hodge_tate, tilde_omega_torus, torsion_jump_model, torus_semicontinuity, GradingBox,
    Verdict,
};
use aomega::witt_ainf::{
    check_fixed_points, check_notation_identities, check_witt_layer, AinfModel,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The boxes of the torus criteria: d <= 3, p in {2, 3, 5}, 1 <= n <= 2, B <= 4.
fn torus_boxes() -> Vec<GradingBox> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for n in 1..=2 {
            for d in 0..=3 {
                for b in 0..=4 {
                    out.push(GradingBox::new(p, d, n, b).expect("valid box"));
                }
            }
        }
    }
    out
}

fn c1() -> Outcome {
    for p in [2, 3, 5, 7, 11, 13] {
        let (zero, zp) = warning_pair(p).map_err(|e| e.to_string())?;
        ensure(zero, || format!("L eta_{p} Z/{p} is not acyclic"))?;
        ensure(zp, || format!("H^1 L eta_{p} Z/{p}^2 is not Z/{p}"))?;
    }
    Ok("Z/p gives 0, Z/p^2 gives H^1 = Z/p, p <= 13".into())
}

fn c2() -> Outcome {
    let config = SessionConfig {
        seed: 2,
        instances: 200,
        ..SessionConfig::default()
    };
    let r = run_suite("s5-leta", &config).map_err(|e| e.to_string())?;
    for c in &r.checks {
        ensure(c.passed, || format!("{}: {:?}", c.name, c.counterexamples))?;
    }
    Ok(format!("{} checks on 200 complexes", r.checks.len()))
}

fn c3() -> Outcome {
    let mut total = 0;
    for p in [2, 3, 5, 7, 11, 13] {
        for n in 1..=3 {
            let model = AinfModel::new(p, n).map_err(|e| e.to_string())?;
            let r = check_notation_identities(&model, 50, 3);
            for c in &r.checks {
                ensure(c.passed, || {
                    format!("p={p} n={n} {}: {:?}", c.identity, c.witnesses)
                })?;
                total += c.cases;
            }
        }
    }
    Ok(format!("18 configurations, {total} cases"))
}

fn c4() -> Outcome {
    let mut cells = 0;
    for b in torus_boxes() {
        let r = tilde_omega_torus(&b).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{b:?}: {:?}", r.anomalies))?;
        let expected: Vec<usize> = (0..=b.dim())
            .map(|i| binomial(b.dim(), i) * (2 * b.bound() as usize + 1).pow(b.dim() as u32))
            .collect();
        ensure(r.free_rank_table == expected, || {
            format!(
                "{b:?}: free ranks {:?}, expected {expected:?}",
                r.free_rank_table
            )
        })?;
        cells += r.total_cells;
    }
    Ok(format!("{cells} cells"))
}

fn c5() -> Outcome {
    let mut cells = 0;
    for b in torus_boxes() {
        let a = ainf_omega_torus(&b).map_err(|e| e.to_string())?;
        ensure(a.passed, || format!("A Omega {b:?}: {:?}", a.anomalies))?;
        let dr = specialize_de_rham(&a).map_err(|e| e.to_string())?;
        ensure(dr.passed, || format!("de Rham {b:?}: {:?}", dr.anomalies))?;
        cells += dr.total_cells;
    }
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)] {
        let model = AinfModel::new(p, n).map_err(|e| e.to_string())?;
        for x in -4..=4 {
            let got = beta_xi_d1(&model, x);
            ensure(got == Some(LaurentElement::constant(n, x)), || {
                format!("p={p} n={n} a={x}: beta = {got:?}")
            })?;
        }
    }
    Ok(format!("{cells} cells, beta on |a| <= 4"))
}

fn c6() -> Outcome {
    let mut cells = 0;
    for b in torus_boxes() {
        let a = ainf_omega_torus(&b).map_err(|e| e.to_string())?;
        let ht = specialize_hodge_tate(&a).map_err(|e| e.to_string())?;
        ensure(ht.passed, || format!("{b:?}: {:?}", ht.anomalies))?;
        cells += ht.total_cells;
    }
    Ok(format!("{cells} cells"))
}

fn c7() -> Outcome {
    let mut blocks = 0;
    for p in [2, 3] {
        for n in 1..=2 {
            for d in 0..=2 {
                for b in 0..=3 {
                    let r = compare_with_torus_pipeline(p, n, d, b).map_err(|e| e.to_string())?;
                    ensure(r.passed, || {
                        format!("p={p} n={n} d={d} B={b}: {:?}", r.mismatches)
                    })?;
                    let q = q_de_rham_complex(p, n, d, b).map_err(|e| e.to_string())?;
                    let bad = check_q_to_one(&q);
                    ensure(bad.is_empty(), || {
                        format!("q -> 1 p={p} n={n} d={d} B={b}: {bad:?}")
                    })?;
                    blocks += r.blocks;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    for p in [2, 3] {
        let r = check_nabla(&mut rng, p, 1, 2, 100);
        ensure(
            r.leibniz_failures == 0 && r.commutation_failures == 0,
            || format!("{r:?}"),
        )?;
        pairs += r.leibniz_pairs;
    }
    Ok(format!("{blocks} blocks, {pairs} Leibniz pairs"))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut eq, mut strict) = (0, 0);
    for i in 0..100 {
        let p = [2, 3, 5][i % 3];
        let r = semicontinuity_demo(&random_fp_poly_complex(&mut rng, p));
        ensure(r.holds(), || format!("instance {i}: {r:?}"))?;
        match r.verdict {
            Verdict::Strict => strict += 1,
            _ => eq += 1,
        }
    }
    for p in [2, 3, 5] {
        let r = semicontinuity_demo(&torsion_jump_model(p));
        ensure(r.verdict == Verdict::Strict, || {
            format!("torsion model p={p}: {r:?}")
        })?;
    }
    for p in [2, 3] {
        for d in 0..=3 {
            let b = GradingBox::new(p, d, 1, 2).expect("valid box");
            let a = ainf_omega_torus(&b).map_err(|e| e.to_string())?;
            let r = torus_semicontinuity(&a);
            let expected: Vec<usize> = (0..=d).map(|i| binomial(d, i)).collect();
            ensure(
                r.verdict == Verdict::Equality
                    && r.generic_ranks == expected
                    && r.special_dims == expected,
                || format!("torus p={p} d={d}: {r:?}"),
            )?;
        }
    }
    Ok(format!(
        "random: {eq} equal, {strict} strict; torsion strict; torus equal"
    ))
}

fn c9() -> Outcome {
    let mut cases = 0;
    for p in [2, 3] {
        for m in 1..=4 {
            for c in check_witt_layer(p, m, 100, 9) {
                ensure(c.passed, || {
                    format!("p={p} m={m} {}: {:?}", c.identity, c.witnesses)
                })?;
                cases += c.cases;
            }
        }
    }
    let f = check_fixed_points(30, 9);
    ensure(f.passed, || format!("{:?}", f.witnesses))?;
    Ok(format!("{cases} Witt cases, {} fixed-point cases", f.cases))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 non-exactness pair Z/p, Z/p^2", c1, Some(1)),
        ("2 decalage property suite", c2, Some(30)),
        ("3 A_inf notation identities", c3, Some(10)),
        ("4 tilde Omega of the torus", c4, Some(20)),
        ("5 de Rham specialization", c5, None),
        ("6 Hodge-Tate specialization", c6, None),
        ("7 q-de Rham comparison", c7, None),
        ("8 semicontinuity", c8, None),
        ("9 Witt layer", c9, Some(10)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("took {elapsed:.2?}, limit {s} s"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
