use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::complexes::{IntComplex, Integers, Matrix};

/// Bounds for random complexes over `Z`.
#[derive(Clone, Copy, Debug)]
pub struct RandomComplexParams {
    pub max_terms: usize,
    pub max_rank: usize,
    pub max_entry: i64,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            max_terms: 4,
            max_rank: 4,
            max_entry: 9,
        }
    }
}

/// A random bounded complex of free `Z`-modules: a direct sum of shifted `Z`
/// and `[Z --c--> Z]` pieces, conjugated by random elementary basis changes
/// that keep every entry within bounds.
pub fn random_complex<G: Rng>(rng: &mut G, params: RandomComplexParams) -> IntComplex {
    let terms = rng.gen_range(1..=params.max_terms);
    let lo = rng.gen_range(-1..=1);
    let mut ranks = vec![0usize; terms];
    let mut pieces: Vec<(usize, Option<i64>)> = Vec::new();
    let mut attempts = 0;
    while attempts < 3 * terms + 2 {
        attempts += 1;
        let at = rng.gen_range(0..terms);
        let two_term = at + 1 < terms && rng.gen_bool(0.6);
        if two_term {
            if ranks[at] < params.max_rank && ranks[at + 1] < params.max_rank {
                let c = rng.gen_range(-params.max_entry..=params.max_entry);
                ranks[at] += 1;
                ranks[at + 1] += 1;
                pieces.push((at, Some(c)));
            }
        } else if ranks[at] < params.max_rank {
            ranks[at] += 1;
            pieces.push((at, None));
        }
    }
    pieces.shuffle(rng);
    // assemble the block-diagonal differentials
    let mut next = vec![0usize; terms];
    let mut diffs: Vec<Matrix<BigInt>> = (0..terms.saturating_sub(1))
        .map(|k| Matrix::zero(&Integers, ranks[k + 1], ranks[k]))
        .collect();
    for (at, kind) in &pieces {
        match kind {
            None => next[*at] += 1,
            Some(c) => {
                let (col, row) = (next[*at], next[at + 1]);
                diffs[*at].set(row, col, BigInt::from(*c));
                next[*at] += 1;
                next[at + 1] += 1;
            }
        }
    }
    // elementary basis changes: e_b -> e_b + t e_a in degree k
    for _ in 0..rng.gen_range(0..=12) {
        let k = rng.gen_range(0..terms);
        if ranks[k] < 2 {
            continue;
        }
        let a = rng.gen_range(0..ranks[k]);
        let b = rng.gen_range(0..ranks[k]);
        if a == b {
            continue;
        }
        let t = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let mut trial = diffs.clone();
        if k + 1 < terms {
            // d^k: column b += t column a
            let m = &mut trial[k];
            for r in 0..m.rows() {
                let v = m.get(r, b) + m.get(r, a) * t;
                m.set(r, b, v);
            }
        }
        if k > 0 {
            // d^{k-1}: row a -= t row b
            let m = &mut trial[k - 1];
            for c in 0..m.cols() {
                let v = m.get(a, c) - m.get(b, c) * t;
                m.set(a, c, v);
            }
        }
        if trial.iter().all(|m| {
            m.entries()
                .iter()
                .all(|x| x.abs() <= BigInt::from(params.max_entry))
        }) {
            diffs = trial;
        }
    }
    IntComplex::new(Integers, lo, ranks, diffs).expect("conjugated direct sum is a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bounds_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let k = random_complex(&mut rng, RandomComplexParams::default());
            assert!(k.ranks().len() <= 4 && k.ranks().iter().all(|&r| r <= 4));
            assert!(k
                .diffs()
                .iter()
                .all(|m| m.entries().iter().all(|x| x.abs() <= BigInt::from(9))));
        }
    }
}
