use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::lattice::{smith, Lattice, ModuleStructure};
use super::matrix::Matrix;
use super::ring::{Integers, IntegersMod, Ring};
use crate::error::{Error, Result};

/// A bounded cochain complex of finite free modules in degrees `lo..lo+len`.
/// `diffs[k]` is the matrix of `d^{lo+k}`, of shape `ranks[k+1] x ranks[k]`.
#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
    /// Builds a complex, checking shapes and `d o d = 0`.
    pub fn new(ring: R, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix<R::Elem>>) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidArgument(format!(
                "{} differentials for {} terms",
                diffs.len(),
                ranks.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::InvalidArgument(format!(
                    "d^{} has shape {}x{}, expected {}x{}",
                    lo + k as i32,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&ring, &diffs[k - 1]).is_zero(&ring) {
                return Err(Error::Precondition(format!(
                    "d^{} o d^{} != 0",
                    lo + k as i32,
                    lo + k as i32 - 1
                )));
            }
        }
        Ok(ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
        })
    }

    pub(crate) fn new_unchecked(
        ring: R,
        lo: i32,
        ranks: Vec<usize>,
        diffs: Vec<Matrix<R::Elem>>,
    ) -> Self {
        debug_assert!(Self::new(ring.clone(), lo, ranks.clone(), diffs.clone()).is_ok());
        ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
        }
    }

    pub fn zero(ring: R) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.lo..self.hi()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: i32) -> usize {
        if i < self.lo || i >= self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// The differential `d^i : K^i -> K^{i+1}` (zero matrices outside the range).
    pub fn diff(&self, i: i32) -> Matrix<R::Elem> {
        if i >= self.lo && i + 1 < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            Matrix::zero(&self.ring, self.rank(i + 1), self.rank(i))
        }
    }

    pub fn diffs(&self) -> &[Matrix<R::Elem>] {
        &self.diffs
    }

    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> ChainComplex<S> {
        ChainComplex {
            ring,
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.map(&f)).collect(),
        }
    }

    /// Shift `K[s]` with `K[s]^i = K^{i+s}` and differential `(-1)^s d`.
    pub fn shift(&self, s: i32) -> Self {
        let sign = if s % 2 == 0 {
            self.ring.one()
        } else {
            self.ring.neg(&self.ring.one())
        };
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo - s,
            ranks: self.ranks.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| d.scale(&self.ring, &sign))
                .collect(),
        }
    }

    /// Drops terms above degree `j` (stupid truncation; equals the canonical
    /// truncation on homology in degrees `< j`).
    pub fn truncate_above(&self, j: i32) -> Self {
        let keep = ((j + 1 - self.lo).max(0) as usize).min(self.ranks.len());
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            ranks: self.ranks[..keep].to_vec(),
            diffs: self.diffs[..keep.saturating_sub(1)].to_vec(),
        }
    }

    pub fn check_d_squared(&self) -> bool {
        (1..self.diffs.len()).all(|k| {
            self.diffs[k]
                .mul(&self.ring, &self.diffs[k - 1])
                .is_zero(&self.ring)
        })
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ring: self.ring.tag(),
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| d.entries().iter().map(|x| self.ring.format(x)).collect())
                .collect(),
        }
    }

    pub fn from_json(ring: R, json: &ComplexJson) -> Result<Self> {
        if json.ring != ring.tag() {
            return Err(Error::InvalidArgument(format!(
                "ring tag {:?} does not match {:?}",
                json.ring,
                ring.tag()
            )));
        }
        if json.diffs.len() + 1 != json.ranks.len().max(1) {
            return Err(Error::InvalidArgument(
                "wrong number of differentials".into(),
            ));
        }
        let mut diffs = Vec::new();
        for (k, entries) in json.diffs.iter().enumerate() {
            let (r, c) = (json.ranks[k + 1], json.ranks[k]);
            if entries.len() != r * c {
                return Err(Error::InvalidArgument(format!(
                    "d^{} needs {} entries",
                    json.lo + k as i32,
                    r * c
                )));
            }
            let parsed = entries
                .iter()
                .map(|s| ring.parse(s))
                .collect::<Result<Vec<_>>>()?;
            let mut it = parsed.into_iter();
            diffs.push(Matrix::from_fn(r, c, |_, _| it.next().unwrap()));
        }
        ChainComplex::new(ring, json.lo, json.ranks.clone(), diffs)
    }
}

impl<R: Ring> PartialEq for ChainComplex<R> {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo
            && self.ranks == other.ranks
            && self
                .diffs
                .iter()
                .zip(&other.diffs)
                .all(|(a, b)| a.eq_in(&self.ring, b))
    }
}

/// Wire format `{"ring", "lo", "ranks", "diffs"}` with row-major string entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ring: String,
    pub lo: i32,
    pub ranks: Vec<usize>,
    pub diffs: Vec<Vec<String>>,
}

/// Homology per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyPresentation<M> {
    pub lo: i32,
    pub degrees: Vec<M>,
}

impl<M: Clone + Default> HomologyPresentation<M> {
    pub fn get(&self, i: i32) -> M {
        if i < self.lo || i >= self.lo + self.degrees.len() as i32 {
            M::default()
        } else {
            self.degrees[(i - self.lo) as usize].clone()
        }
    }
}

impl HomologyPresentation<ModuleStructure> {
    /// Structural comparison ignoring zero padding at the ends.
    pub fn same_as(&self, other: &Self) -> bool {
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.degrees.len() as i32).max(other.lo + other.degrees.len() as i32);
        (lo..hi).all(|i| self.get(i) == other.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(ModuleStructure::is_zero)
    }
}

pub type IntComplex = ChainComplex<Integers>;

impl IntComplex {
    pub fn from_i64(lo: i32, ranks: Vec<usize>, diffs: &[&[i64]]) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1)
            || diffs
                .iter()
                .enumerate()
                .any(|(k, e)| e.len() != ranks[k] * ranks[k + 1])
        {
            return Err(Error::InvalidArgument(
                "differential shapes do not match ranks".into(),
            ));
        }
        let ms = diffs
            .iter()
            .enumerate()
            .map(|(k, e)| Matrix::from_i64(ranks[k + 1], ranks[k], e))
            .collect();
        ChainComplex::new(Integers, lo, ranks, ms)
    }

    /// Cycles of `K/f` lifted to `Z^{n_i}`: `{x : d x in f Z^{n_{i+1}}}`.
    pub fn cycles_mod(&self, i: i32, f: &BigInt) -> Lattice {
        Lattice::scaled_full(self.rank(i + 1), f).preimage(&self.diff(i))
    }

    /// Boundaries of `K/f` lifted: `f Z^{n_i} + im d^{i-1}`.
    pub fn boundaries_mod(&self, i: i32, f: &BigInt) -> Lattice {
        Lattice::scaled_full(self.rank(i), f).sum(&Lattice::image(&self.diff(i - 1)))
    }

    pub fn cycles(&self, i: i32) -> Lattice {
        Lattice::zero(self.rank(i + 1)).preimage(&self.diff(i))
    }

    pub fn boundaries(&self, i: i32) -> Lattice {
        Lattice::image(&self.diff(i - 1))
    }

    /// Canonical truncation `tau^{<=j}`: `K^j` replaced by `ker d^j`, nothing above.
    pub fn truncate_canonical(&self, j: i32) -> Self {
        if j + 1 >= self.hi() {
            return self.clone();
        }
        if j < self.lo() {
            return ChainComplex::zero(Integers);
        }
        let z = self.cycles(j);
        let mut t = self.truncate_above(j);
        let top = (j - self.lo()) as usize;
        t.ranks[top] = z.rank();
        if top > 0 {
            let d = self.diff(j - 1);
            let cols: Vec<Vec<BigInt>> = (0..d.cols())
                .map(|c| z.coords(&d.column(c)).expect("boundaries are cycles"))
                .collect();
            t.diffs[top - 1] = Matrix::from_fn(z.rank(), d.cols(), |r, c| cols[c][r].clone());
        }
        t
    }

    /// `K/f` as a complex over `Z/f`.
    pub fn mod_f(&self, f: &BigInt) -> ChainComplex<IntegersMod> {
        let ring = IntegersMod::new(f.clone());
        self.map_ring(ring.clone(), |x| ring.reduce(x))
    }

    /// Mapping cone of multiplication by `g`, a free model of `K (x)^L Z/g`.
    pub fn cone_of_multiplication(&self, g: &BigInt) -> Self {
        let id = |n: usize| {
            Matrix::from_fn(
                n,
                n,
                |i, j| if i == j { g.clone() } else { BigInt::from(0) },
            )
        };
        let maps: Vec<Matrix<BigInt>> = self.degrees().map(|i| id(self.rank(i))).collect();
        cone(self, self, &maps)
    }
}

/// Mapping cone of a chain map `u : K -> L` given degreewise on `K`'s range:
/// `M^i = K^{i+1} + L^i`, `d(k, l) = (-dk, u(k) + dl)`.
pub fn cone(k: &IntComplex, l: &IntComplex, u: &[Matrix<BigInt>]) -> IntComplex {
    let z = Integers;
    let lo = (k.lo() - 1).min(l.lo());
    let hi = (k.hi() - 1).max(l.hi());
    let map_at = |i: i32| -> Matrix<BigInt> {
        if i >= k.lo() && i < k.hi() {
            u[(i - k.lo()) as usize].clone()
        } else {
            Matrix::zero(&z, l.rank(i), k.rank(i))
        }
    };
    let ranks: Vec<usize> = (lo..hi).map(|i| k.rank(i + 1) + l.rank(i)).collect();
    let diffs = (lo..hi - 1)
        .map(|i| {
            let dk = k.diff(i + 1).scale(&z, &BigInt::from(-1));
            let zero = Matrix::zero(&z, k.rank(i + 2), l.rank(i));
            Matrix::block(&dk, &zero, &map_at(i + 1), &l.diff(i))
        })
        .collect();
    ChainComplex::new_unchecked(z, lo, ranks, diffs)
}

/// Exact homology over `Z` via Smith normal form.
pub fn homology_snf(k: &IntComplex) -> HomologyPresentation<ModuleStructure> {
    let rank_and_divisors = |i: i32| -> (usize, Vec<BigInt>) {
        let d = smith(&k.diff(i)).diagonal;
        (d.len(), d)
    };
    let degrees = k
        .degrees()
        .map(|i| {
            let (r_out, _) = rank_and_divisors(i);
            let (r_in, divisors) = rank_and_divisors(i - 1);
            let free = k.rank(i) - r_out - r_in;
            let mut m = ModuleStructure::from_cyclic_orders(divisors);
            m.free_rank = free;
            m
        })
        .collect();
    HomologyPresentation {
        lo: k.lo(),
        degrees,
    }
}

/// Homology of `K/f` computed on `Z`-lattices (cycles and boundaries lifted).
pub fn homology_mod(k: &IntComplex, f: &BigInt) -> HomologyPresentation<ModuleStructure> {
    let degrees = k
        .degrees()
        .map(|i| {
            k.cycles_mod(i, f)
                .quotient(&k.boundaries_mod(i, f))
                .structure()
        })
        .collect();
    HomologyPresentation {
        lo: k.lo(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn rejects_nonzero_square() {
        assert!(IntComplex::from_i64(0, vec![1, 1, 1], &[&[1], &[1]]).is_err());
        assert!(IntComplex::from_i64(0, vec![1, 1], &[&[2, 3]]).is_err());
    }

    #[test]
    fn homology_of_multiplication() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[9]]).unwrap();
        let h = homology_snf(&k);
        assert!(h.get(0).is_zero());
        assert_eq!(
            h.get(1),
            ModuleStructure {
                free_rank: 0,
                torsion: vec![b(9)]
            }
        );
        assert!(homology_snf(&ChainComplex::zero(Integers)).is_zero());
    }

    #[test]
    fn mod_f_homology_agrees_with_reduction() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[4]]).unwrap();
        let h = homology_mod(&k, &b(2));
        assert_eq!(
            h.get(0),
            ModuleStructure {
                free_rank: 0,
                torsion: vec![b(2)]
            }
        );
        assert_eq!(
            h.get(1),
            ModuleStructure {
                free_rank: 0,
                torsion: vec![b(2)]
            }
        );
        let red = k.mod_f(&b(2));
        assert!(red.diffs()[0].is_zero(red.ring()));
    }

    #[test]
    fn cone_of_multiplication_models_reduction() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[6]]).unwrap();
        let c = k.cone_of_multiplication(&b(2));
        assert!(homology_snf(&c).same_as(&homology_mod(&k, &b(2))));
    }

    #[test]
    fn json_round_trip() {
        let k = IntComplex::from_i64(-1, vec![2, 1], &[&[3, -4]]).unwrap();
        let j = k.to_json();
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"ring":"Z","lo":-1,"ranks":[2,1],"diffs":[["3","-4"]]}"#
        );
        let back = IntComplex::from_json(Integers, &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, k);
    }
}
