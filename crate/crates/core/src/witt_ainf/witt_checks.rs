use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite_field::{GaloisField, Gf};
use super::identities::IdentityCheck;
use super::semilinear::SemilinearModule;
use super::witt::{
    digits_to_witt, teichmuller_digits, teichmuller_lift, PerfectionElement, TruncatedWittElement,
};
use crate::arith::{ipow, RationalExponent};

struct Tally {
    name: &'static str,
    cases: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witnesses.len() < 8 {
            self.witnesses.push(what());
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            identity: self.name.into(),
            passed: self.witnesses.is_empty(),
            cases: self.cases,
            witnesses: self.witnesses,
        }
    }
}

/// A random element of `F_p[x^{1/p^infty}]` with at most `max_terms` terms.
pub fn random_perfection_element(
    rng: &mut impl Rng,
    p: u64,
    max_terms: usize,
) -> PerfectionElement {
    let n = rng.gen_range(1..=max_terms);
    PerfectionElement::from_terms(
        p,
        (0..n).map(|_| {
            let den = rng.gen_range(0..=2);
            let e = RationalExponent::new(rng.gen_range(0..=ipow(p, den) * 2), den, p);
            (e, rng.gen_range(0..p as i64))
        }),
    )
}

fn random_witt(rng: &mut impl Rng, p: u64, m: u32) -> TruncatedWittElement {
    if m >= 4 {
        // digit lifts of arbitrary elements grow quickly; sample through digits
        let digits: Vec<PerfectionElement> = (0..m)
            .map(|_| random_perfection_element(rng, p, 1))
            .collect();
        return digits_to_witt(&digits, m);
    }
    let n = rng.gen_range(1..=2);
    TruncatedWittElement::from_terms(
        p,
        m,
        (0..n).map(|_| {
            let den = rng.gen_range(0..=1);
            let e = RationalExponent::new(rng.gen_range(0..=ipow(p, den)), den, p);
            (e, rng.gen_range(0..ipow(p, m)))
        }),
    )
}

/// Teichmuller digits, lifts and Frobenius on `W_m` of `F_p[x^{1/p^infty}]`.
pub fn check_witt_layer(p: u64, m: u32, samples: usize, seed: u64) -> Vec<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 16) ^ m as u64);
    let mut constants = Tally::new("digits round-trip on all constants of W_m(F_p)");
    for c in 0..ipow(p, m) {
        let w = TruncatedWittElement::constant(p, m, c);
        let digits = teichmuller_digits(&w);
        constants.check(digits_to_witt(&digits, m) == w, || format!("constant {c}"));
    }
    let mut round_trip = Tally::new("digits round-trip on random elements");
    let mut frobenius = Tally::new("phi([a]) = [a^p]");
    let mut multiplicative = Tally::new("[ab] = [a][b]");
    for _ in 0..samples {
        let a = random_perfection_element(&mut rng, p, 2);
        let b = random_perfection_element(&mut rng, p, 2);
        let la = teichmuller_lift(&a, m);
        frobenius.check(
            la.frobenius() == teichmuller_lift(&a.pow(p as u32), m),
            || a.to_string(),
        );
        multiplicative.check(
            teichmuller_lift(&a.mul(&b), m) == la.mul(&teichmuller_lift(&b, m)),
            || format!("{a} * {b}"),
        );
        let w = random_witt(&mut rng, p, m);
        let digits = teichmuller_digits(&w);
        round_trip.check(digits_to_witt(&digits, m) == w, || {
            serde_json::to_string(&w.to_json()).unwrap_or_default()
        });
    }
    vec![
        constants.finish(),
        round_trip.finish(),
        frobenius.finish(),
        multiplicative.finish(),
    ]
}

fn random_invertible(rng: &mut impl Rng, k: &GaloisField, r: usize) -> SemilinearModule {
    loop {
        let a: Vec<Vec<Gf>> = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| k.element(rng.gen_range(0..k.order())))
                    .collect()
            })
            .collect();
        if let Ok(m) = SemilinearModule::new(k.clone(), a) {
            return m;
        }
    }
}

/// `dim_{F_p}` of the Frobenius fixed points against exhaustive enumeration
/// over `F_4`, `F_8` and `F_9`.
pub fn check_fixed_points(samples: usize, seed: u64) -> IdentityCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("fixed-point dimension equals exhaustive count");
    for (p, m) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let k = GaloisField::new(p, m).expect("small field");
        for i in 0..samples {
            let r = 1 + i % 2;
            let module = random_invertible(&mut rng, &k, r);
            let fp = module.frobenius_fixed_points();
            let count = module.count_fixed_points_exhaustive();
            t.check(
                p.pow(fp.dimension as u32) == count && fp.dimension <= r,
                || {
                    format!(
                        "F_{}^{r}: dim {} but {count} fixed vectors",
                        k.order(),
                        fp.dimension
                    )
                },
            );
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_layer_small() {
        for c in check_witt_layer(2, 3, 10, 1) {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn fixed_points() {
        assert!(check_fixed_points(10, 3).passed);
    }
}
