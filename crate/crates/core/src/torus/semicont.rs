use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::pipeline::TorusCohomologyResult;
use crate::arith::{FpPoly, LaurentElement};
use crate::complexes::{
    homology_dims_over_fraction_field, koszul, tensor, ChainComplex, FpPolyRing, FpRing, Matrix,
};

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Generic rank equals special dimension in every degree.
    Equality,
    /// `generic <= special` everywhere, strictly somewhere.
    Strict,
    /// Some degree has `generic > special`.
    Violated,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemicontinuityReport {
    pub generic_ranks: Vec<usize>,
    pub special_dims: Vec<usize>,
    pub verdict: Verdict,
}

impl SemicontinuityReport {
    fn from_dims(generic_ranks: Vec<usize>, special_dims: Vec<usize>) -> Self {
        let verdict = if generic_ranks.iter().zip(&special_dims).any(|(g, s)| g > s) {
            Verdict::Violated
        } else if generic_ranks == special_dims {
            Verdict::Equality
        } else {
            Verdict::Strict
        };
        SemicontinuityReport {
            generic_ranks,
            special_dims,
            verdict,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Violated
    }
}

/// Homology dimensions of `K` over `F_p(u)` and of `K (x) F_p[u]/u` over `F_p`.
pub fn semicontinuity_demo(k: &ChainComplex<FpPolyRing>) -> SemicontinuityReport {
    let generic = homology_dims_over_fraction_field(k);
    let fp = FpRing { p: k.ring().p };
    let special = homology_dims_over_fraction_field(&k.map_ring(fp, |x| x.eval(0)));
    SemicontinuityReport::from_dims(generic, special)
}

/// `F_p[u] --u--> F_p[u]`.
pub fn torsion_jump_model(p: u64) -> ChainComplex<FpPolyRing> {
    koszul(&FpPolyRing { p }, &[FpPoly::x_pow(p, 1)])
}

/// Reduction mod `p` of a Laurent element times the unit `u^{-min}`.
fn to_fp_poly(p: u64, x: &LaurentElement) -> FpPoly {
    let Some(lo) = x.min_exp() else {
        return FpPoly::zero(p);
    };
    let deg = (x.max_exp().unwrap() - lo) as usize;
    let mut c = vec![0u64; deg + 1];
    let pb = BigInt::from(p);
    for (e, v) in x.terms() {
        c[(e - lo) as usize] = u64::try_from(v.mod_floor(&pb)).unwrap();
    }
    FpPoly::new(p, c)
}

/// Semicontinuity on `A Omega / p` over the box: the surviving summands
/// `K([a_1]_q, ..., [a_d]_q)` reduced mod `p`, with fibre dimensions summed.
pub fn torus_semicontinuity(a: &TorusCohomologyResult) -> SemicontinuityReport {
    let ring = FpPolyRing { p: a.p };
    let mut generic = vec![0; a.dim + 1];
    let mut special = vec![0; a.dim + 1];
    for s in &a.survivors {
        let g: Vec<FpPoly> = s.elements.iter().map(|x| to_fp_poly(a.p, x)).collect();
        let r = semicontinuity_demo(&koszul(&ring, &g));
        for i in 0..=a.dim {
            generic[i] += r.generic_ranks[i];
            special[i] += r.special_dims[i];
        }
    }
    SemicontinuityReport::from_dims(generic, special)
}

fn random_poly(rng: &mut impl rand::Rng, p: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    FpPoly::new(p, (0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

/// A random perfect `F_p[u]`-complex: a two-term complex, a Koszul complex or a
/// tensor product of two two-term complexes.
pub fn random_fp_poly_complex(rng: &mut impl rand::Rng, p: u64) -> ChainComplex<FpPolyRing> {
    let ring = FpPolyRing { p };
    let two_term = |rng: &mut _| {
        let (r, c) = (rng_range(rng, 1, 3), rng_range(rng, 1, 3));
        let m = Matrix::from_fn(r, c, |_, _| random_poly(rng, p, 2));
        ChainComplex::new(ring, 0, vec![c, r], vec![m]).expect("two-term complex")
    };
    match rng.gen_range(0..3) {
        0 => two_term(rng),
        1 => {
            let d = rng.gen_range(1..=3);
            let g: Vec<FpPoly> = (0..d).map(|_| random_poly(rng, p, 2)).collect();
            koszul(&ring, &g)
        }
        _ => {
            let x = two_term(rng);
            let y = two_term(rng);
            tensor(&x, &y)
        }
    }
}

fn rng_range(rng: &mut impl rand::Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{ainf_omega_torus, GradingBox};
    use rand::SeedableRng;

    #[test]
    fn torsion_model_is_strict() {
        let r = semicontinuity_demo(&torsion_jump_model(3));
        assert_eq!(r.generic_ranks, vec![0, 0]);
        assert_eq!(r.special_dims, vec![1, 1]);
        assert_eq!(r.verdict, Verdict::Strict);
    }

    #[test]
    fn zero_differentials_give_equality() {
        let ring = FpPolyRing { p: 2 };
        let k = koszul(&ring, &[FpPoly::zero(2), FpPoly::zero(2)]);
        assert_eq!(semicontinuity_demo(&k).verdict, Verdict::Equality);
    }

    #[test]
    fn torus_d2_is_equality() {
        let b = GradingBox::new(3, 2, 1, 2).unwrap();
        let r = torus_semicontinuity(&ainf_omega_torus(&b).unwrap());
        assert_eq!(r.generic_ranks, vec![1, 2, 1]);
        assert_eq!(r.special_dims, vec![1, 2, 1]);
        assert_eq!(r.verdict, Verdict::Equality);
    }

    #[test]
    fn random_complexes_hold() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let k = random_fp_poly_complex(&mut rng, 3);
            assert!(k.check_d_squared());
            assert!(semicontinuity_demo(&k).holds());
        }
    }
}
