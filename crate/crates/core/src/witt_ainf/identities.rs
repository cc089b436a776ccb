use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cyclotomic::{cyclotomic_poly, QuotientRing};
use super::AinfModel;
use crate::arith::{ipow, p_valuation_i64, q_integer, LaurentElement};
use crate::complexes::Ring;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub passed: bool,
    pub cases: usize,
    /// Failing cases, or certificates worth echoing.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NotationReport {
    pub p: u64,
    pub depth: u32,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

struct Recorder {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder {
            name,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> IdentityCheck {
        let passed = self.failures.is_empty();
        let mut witnesses = self.failures;
        witnesses.extend(self.notes);
        IdentityCheck {
            identity: self.name.into(),
            passed,
            cases: self.cases,
            witnesses,
        }
    }
}

/// Verifies the basic identities relating `mu`, `xi`, `xi~`, `phi`, `theta` in the model.
/// `samples` controls the number of random divisibility pairs and random elements.
pub fn check_notation_identities(model: &AinfModel, samples: usize, seed: u64) -> NotationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (model.p() << 8) ^ model.depth() as u64);
    let checks = vec![
        check_kernels(model, samples, &mut rng),
        check_divisibility(model, samples, &mut rng),
        check_congruences(model, samples, &mut rng),
        check_product_formula(model),
        check_regularity(model),
        check_mutual_regularity(model),
        check_topologies(model),
    ];
    let passed = checks.iter().all(|c| c.passed);
    NotationReport {
        p: model.p(),
        depth: model.depth(),
        seed,
        checks,
        passed,
    }
}

fn random_element(depth: u32, span: i64, rng: &mut ChaCha8Rng) -> LaurentElement {
    let n = rng.gen_range(1..=5);
    LaurentElement::from_terms(
        depth,
        (0..n).map(|_| (rng.gen_range(-span..=span), rng.gen_range(-9i64..=9))),
    )
}

/// (1) `xi` and `xi~` generate the kernels of `theta` and `theta~`.
fn check_kernels(m: &AinfModel, samples: usize, rng: &mut ChaCha8Rng) -> IdentityCheck {
    let mut r = Recorder::new("kernels of theta and theta~");
    let n = m.depth();
    r.check(m.xi() == cyclotomic_poly(m.p(), n, n), || {
        "xi is not the p^n-th cyclotomic polynomial".into()
    });
    r.check(m.xi().mul_unchecked(&m.phi_inverse_mu()) == m.mu(), || {
        "xi * phi^-1(mu) != mu".into()
    });
    r.check(m.phi(&m.xi()) == m.xi_tilde(), || "phi(xi) != xi~".into());
    r.check(m.theta(&m.xi()).is_zero(), || "theta(xi) != 0".into());
    r.check(
        m.theta_tilde(&m.xi_tilde()).is_ok_and(|x| x.is_zero()),
        || "theta~(xi~) != 0".into(),
    );
    // The kernel of theta is generated by xi: the quotient Z[u]/xi is a domain
    // (xi is a cyclotomic polynomial), so x in ker(theta) iff xi | x exactly.
    let span = 3 * m.q_exponent();
    for _ in 0..samples {
        let x = random_element(n, span, rng);
        let in_kernel = m.theta(&x).is_zero();
        let divisible = x.exact_div_unchecked(&m.xi()).is_some();
        r.check(in_kernel == divisible, || {
            format!("theta kernel mismatch at {x}")
        });
        let y = x.mul_unchecked(&m.xi());
        r.check(m.theta(&y).is_zero(), || format!("theta(xi * {x}) != 0"));
        let via_phi = m.theta_tilde(&x);
        let via_rem = m.theta_tilde_via_xi_tilde(&x);
        r.check(via_phi.is_ok() && via_phi.ok() == via_rem.ok(), || {
            format!("theta~ routes disagree at {x}")
        });
    }
    r.finish()
}

/// (2) `q^a - 1` divides `q^b - 1` when `v_p(a) <= v_p(b)`.
fn check_divisibility(m: &AinfModel, samples: usize, rng: &mut ChaCha8Rng) -> IdentityCheck {
    let mut r = Recorder::new("divisibility of q^b - 1 by q^a - 1");
    let n = m.depth();
    let p = m.p() as i64;
    let scale = m.q_exponent();
    let (mut exact, mut certified) = (0, 0);
    for _ in 0..samples {
        // numerators of a, b in p^{-n} Z, as exponents of u
        let a = nonzero(rng, 2 * scale);
        let v = p_valuation_i64(a, m.p()).finite().unwrap() as u32;
        let b = ipow(m.p(), v) * nonzero(rng, (3 * scale / ipow(m.p(), v)).max(2));
        let qa = LaurentElement::monomial_minus_one(n, a);
        let qb = LaurentElement::monomial_minus_one(n, b);
        if qb.exact_div_unchecked(&qa).is_some() {
            exact += 1;
            r.check(m.completed_divides(&qa, &qb), || {
                format!("completed divisibility misses a={a} b={b}")
            });
            continue;
        }
        // Certificate in the completion: q^a - 1 = (u^{p^v} - 1) w with w(1) = a/p^v
        // prime to p, hence w a unit; and u^{p^v} - 1 divides q^b - 1 exactly.
        let base = LaurentElement::monomial_minus_one(n, ipow(m.p(), v));
        let w = qa.exact_div_unchecked(&base);
        let ok = w.as_ref().is_some_and(|w| m.is_completed_unit(w))
            && qb.exact_div_unchecked(&base).is_some()
            && m.completed_divides(&qa, &qb);
        certified += 1;
        r.check(ok, || {
            format!("no certificate for a={a}/{scale} b={b}/{scale}")
        });
        let _ = p;
    }
    r.notes.push(format!("{exact} pairs divide exactly in Z[u^+-1], {certified} via a unit cofactor in the completion"));
    r.finish()
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

/// (3) `[a]_q = a mod mu`, in particular `xi~ = p mod mu`.
fn check_congruences(m: &AinfModel, samples: usize, rng: &mut ChaCha8Rng) -> IdentityCheck {
    let mut r = Recorder::new("[a]_q = a mod mu and xi~ = p mod mu");
    let n = m.depth();
    let a_mod_mu = QuotientRing::new(m.mu(), Some(m.q_exponent()), "A/mu");
    let mut values: Vec<i64> = (-10..=10).collect();
    values.extend((0..samples).map(|_| rng.gen_range(-200..=200)));
    for a in values {
        let qa = q_integer(a, m.p(), n);
        let red = a_mod_mu.reduce(&qa);
        r.check(red == LaurentElement::constant(n, a), || {
            format!("[{a}]_q mod mu = {red}")
        });
    }
    let red = a_mod_mu.reduce(&m.xi_tilde());
    r.check(red == LaurentElement::constant(n, m.p() as i64), || {
        format!("xi~ mod mu = {red}")
    });
    r.check(
        m.xi_tilde()
            .sub_unchecked(&LaurentElement::constant(n, m.p() as i64))
            .exact_div_unchecked(&m.mu())
            .is_some(),
        || "mu does not divide xi~ - p".into(),
    );
    r.finish()
}

/// (4) `mu = (prod_{i<k} phi^{-i}(xi)) phi^{-k}(mu)` for `1 <= k <= n`, at depth `n + k`.
fn check_product_formula(m: &AinfModel) -> IdentityCheck {
    let mut r = Recorder::new("product formula for mu");
    let n = m.depth();
    for k in 1..=n {
        let target = n + k;
        let run = || -> crate::error::Result<bool> {
            let mut prod = LaurentElement::one(target);
            let mut xi_i = m.xi();
            for _ in 0..k {
                prod = prod.mul_unchecked(&m.raise_depth(&xi_i, target)?);
                xi_i = m.phi_inverse(&xi_i)?;
            }
            let mut mu_k = m.mu();
            for _ in 0..k {
                mu_k = m.phi_inverse(&mu_k)?;
            }
            prod = prod.mul_unchecked(&m.raise_depth(&mu_k, target)?);
            Ok(prod == m.raise_depth(&m.mu(), target)?)
        };
        r.check(run().unwrap_or(false), || {
            format!("product formula fails for k={k}")
        });
    }
    r.finish()
}

fn has_unit_ends(x: &LaurentElement) -> bool {
    let lo = x.coeff(x.min_exp().unwrap());
    x.leading_coeff()
        .is_some_and(|c| num_traits::Signed::abs(c).is_one())
        && num_traits::Signed::abs(&lo).is_one()
}

/// (5) `p` is regular modulo `mu`, `xi`, `xi~` and vice versa.
fn check_regularity(m: &AinfModel) -> IdentityCheck {
    let mut r = Recorder::new("p and mu, xi, xi~ are mutually regular");
    for (name, g) in [("mu", m.mu()), ("xi", m.xi()), ("xi~", m.xi_tilde())] {
        // unit end coefficients: A/(g) is a free Z-module, so p is regular on it
        r.check(has_unit_ends(&g), || {
            format!("A/{name} is not visibly Z-free")
        });
        // A/p = F_p[u^+-1] is a domain, so g is regular mod p iff g is nonzero mod p
        r.check(!m.vanishes_mod_p(&g), || format!("{name} vanishes mod p"));
    }
    r.finish()
}

/// (6) `xi~` is regular modulo `mu` and vice versa.
fn check_mutual_regularity(m: &AinfModel) -> IdentityCheck {
    let mut r = Recorder::new("xi~ and mu are mutually regular");
    // xi~ acts on the torsion-free A/mu as multiplication by p
    let a_mod_mu = QuotientRing::new(m.mu(), Some(m.q_exponent()), "A/mu");
    r.check(
        a_mod_mu.reduce(&m.xi_tilde()) == LaurentElement::constant(m.depth(), m.p() as i64)
            && has_unit_ends(&m.mu()),
        || "xi~ is not p on the free module A/mu".into(),
    );
    // A/xi~ = Z[zeta_{p^{n+1}}] is a domain and mu is nonzero there
    let level = QuotientRing::oc_model(m.p(), m.depth() + 1);
    let mu = m.mu().with_depth(m.depth() + 1);
    r.check(!level.is_zero(&mu), || "mu vanishes mod xi~".into());
    r.check(
        m.xi_tilde() == cyclotomic_poly(m.p(), m.depth() + 1, m.depth()),
        || "xi~ is not cyclotomic".into(),
    );
    r.finish()
}

/// `x mod p` as a sparse element with coefficients in `0..p`.
fn reduce_mod_p(x: &LaurentElement, p: u64) -> LaurentElement {
    let p = BigInt::from(p);
    LaurentElement::from_terms(x.depth(), x.terms().map(|(e, c)| (e, c.mod_floor(&p))))
}

/// `(u - 1)^e` over `F_p`, via `(u - 1)^{p^k} = u^{p^k} - 1`.
fn u_minus_one_power_mod_p(e: i64, p: u64, depth: u32) -> LaurentElement {
    let mut acc = LaurentElement::one(depth);
    let mut rest = e;
    let mut k = 0;
    while rest > 0 {
        let digit = rest % p as i64;
        let frob = LaurentElement::monomial_minus_one(depth, ipow(p, k));
        for _ in 0..digit {
            acc = reduce_mod_p(&acc.mul_unchecked(&frob), p);
        }
        rest /= p as i64;
        k += 1;
    }
    acc
}

/// (7) `(p, xi)`, `(p, xi~)`, `(p, mu)`, `(xi~, mu)` all have the radical of `(p, u - 1)`.
fn check_topologies(m: &AinfModel) -> IdentityCheck {
    let mut r = Recorder::new("the ideals (p,xi), (p,xi~), (p,mu), (xi~,mu) define one topology");
    let p = m.p();
    for (name, g) in [("xi", m.xi()), ("xi~", m.xi_tilde()), ("mu", m.mu())] {
        // g = c (u - 1)^e mod p with e >= 1, so sqrt(p, g) = sqrt(p, u - 1)
        let g0 = reduce_mod_p(&g.normalize_unit(), p);
        let e = g0.max_exp().unwrap();
        let target = u_minus_one_power_mod_p(e, p, g.depth());
        let lead = g0.leading_coeff().cloned().unwrap_or_default();
        let scaled = reduce_mod_p(&target.scale(&lead), p);
        r.check(e >= 1 && scaled == g0, || {
            format!("{name} mod p is not a unit times a power of u - 1")
        });
    }
    // p lies in (xi~, mu), reducing the last ideal to (p, mu)
    r.check(
        m.xi_tilde()
            .sub_unchecked(&LaurentElement::constant(m.depth(), p as i64))
            .exact_div_unchecked(&m.mu())
            .is_some(),
        || "p is not in (xi~, mu)".into(),
    );
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_models_pass() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let m = AinfModel::new(p, n).unwrap();
            let rep = check_notation_identities(&m, 20, 7);
            assert!(
                rep.passed,
                "{}",
                serde_json::to_string_pretty(&rep).unwrap()
            );
        }
    }

    #[test]
    fn xi_tilde_is_p_mod_mu() {
        let m = AinfModel::new(3, 1).unwrap();
        let r = QuotientRing::new(m.mu(), Some(3), "A/mu");
        assert_eq!(r.reduce(&m.xi_tilde()), LaurentElement::constant(1, 3));
        let five = q_integer(5, 3, 1);
        assert_eq!(r.reduce(&five), LaurentElement::constant(1, 5));
    }
}
