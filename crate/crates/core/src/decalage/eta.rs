use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::lattice::solve;
use crate::complexes::{
    homology_snf, ChainComplex, ComplexJson, Divisibility, HomologyPresentation, IntComplex,
    Integers, KoszulSummand, Lattice, Matrix, ModuleStructure, Ring,
};
use crate::error::{Error, Result};

/// `eta_f K` for a complex of free `Z`-modules.
///
/// Stored through `Z_f^i = {x in K^i : dx in f K^{i+1}}`: the term
/// `eta_f(K)^i` is `f^i Z_f^i`, and `x -> f^i x` identifies the two, turning the
/// differential into `d/f`. `complex` is written in the echelon bases of the `Z_f^i`.
#[derive(Clone, Debug)]
pub struct EtaComplex {
    pub f: BigInt,
    pub lattices: Vec<Lattice>,
    pub complex: IntComplex,
}

impl EtaComplex {
    pub fn lo(&self) -> i32 {
        self.complex.lo()
    }

    pub fn lattice(&self, i: i32) -> &Lattice {
        &self.lattices[(i - self.lo()) as usize]
    }

    /// Basis of `Z_f^i` as the columns of a matrix in `K^i`-coordinates.
    pub fn basis_matrix(&self, i: i32) -> Matrix<BigInt> {
        self.lattice(i).basis_matrix()
    }

    /// The inclusion `eta_f(K)^i -> K^i`, `x -> f^i x`; defined for `i >= 0`.
    pub fn inclusion(&self, i: i32) -> Option<Matrix<BigInt>> {
        let e = u32::try_from(i).ok()?;
        Some(
            self.basis_matrix(i)
                .scale(&Integers, &num_traits::pow::pow(self.f.clone(), e as usize)),
        )
    }

    pub fn homology(&self) -> HomologyPresentation<ModuleStructure> {
        homology_snf(&self.complex)
    }

    pub fn to_json(&self) -> EtaJson {
        EtaJson {
            f: self.f.to_string(),
            complex: self.complex.to_json(),
            bases: self
                .lattices
                .iter()
                .map(|l| {
                    l.basis()
                        .iter()
                        .map(|v| v.iter().map(ToString::to_string).collect())
                        .collect()
                })
                .collect(),
            homology: self.homology().degrees,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaJson {
    pub f: String,
    /// The complex in the bases of `Z_f^i`, differential `d/f`.
    pub complex: ComplexJson,
    /// Basis vectors of `Z_f^i` in the coordinates of `K^i`.
    pub bases: Vec<Vec<Vec<String>>>,
    pub homology: Vec<ModuleStructure>,
}

/// `eta_f(K)^i = {a in f^i K^i : da in f^{i+1} K^{i+1}}` with its differential.
pub fn eta_subcomplex(k: &IntComplex, f: &BigInt) -> Result<EtaComplex> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("f must be nonzero".into()));
    }
    let lattices: Vec<Lattice> = k.degrees().map(|i| k.cycles_mod(i, f)).collect();
    let lo = k.lo();
    let mut diffs = Vec::new();
    for i in lo..k.hi() - 1 {
        let (src, dst) = (
            &lattices[(i - lo) as usize],
            &lattices[(i + 1 - lo) as usize],
        );
        let d = k.diff(i);
        let cols: Vec<Vec<BigInt>> = src
            .basis()
            .iter()
            .map(|b| {
                let y: Vec<BigInt> = d.apply(&Integers, b).iter().map(|x| x / f).collect();
                dst.coords(&y).expect("d(x)/f lies in Z_f")
            })
            .collect();
        diffs.push(Matrix::from_fn(dst.rank(), src.rank(), |r, c| {
            cols[c][r].clone()
        }));
    }
    let ranks = lattices.iter().map(Lattice::rank).collect();
    let complex = ChainComplex::new(Integers, lo, ranks, diffs)?;
    Ok(EtaComplex {
        f: f.clone(),
        lattices,
        complex,
    })
}

/// `eta_f K` for `f` acting through injective operators `F^i` on `K^i` that
/// commute with `d`: `Z^i = {x : dx in F K^{i+1}}` with differential `F^{-1} d`.
/// Models restriction of scalars, e.g. `f in Z[zeta]` on complexes over `Z[zeta]`.
pub fn eta_subcomplex_by(k: &IntComplex, f: &[Matrix<BigInt>]) -> Result<IntComplex> {
    let lo = k.lo();
    if f.len() != k.ranks().len() {
        return Err(Error::InvalidArgument(format!(
            "{} operators for {} terms",
            f.len(),
            k.ranks().len()
        )));
    }
    for i in k.degrees() {
        let fi = &f[(i - lo) as usize];
        if fi.rows() != k.rank(i) || fi.cols() != k.rank(i) {
            return Err(Error::InvalidArgument(format!("F^{i} has the wrong shape")));
        }
        if Lattice::image(fi).rank() != k.rank(i) {
            return Err(Error::Precondition(format!("F^{i} is not injective")));
        }
        if i + 1 < k.hi() {
            let f1 = &f[(i + 1 - lo) as usize];
            let d = k.diff(i);
            if d.mul(&Integers, fi) != f1.mul(&Integers, &d) {
                return Err(Error::Precondition(format!(
                    "F does not commute with d^{i}"
                )));
            }
        }
    }
    let lattices: Vec<Lattice> = k
        .degrees()
        .map(|i| {
            let target = if i + 1 < k.hi() {
                Lattice::image(&f[(i + 1 - lo) as usize])
            } else {
                Lattice::zero(0)
            };
            target.preimage(&k.diff(i))
        })
        .collect();
    let mut diffs = Vec::new();
    for i in lo..k.hi() - 1 {
        let (src, dst) = (
            &lattices[(i - lo) as usize],
            &lattices[(i + 1 - lo) as usize],
        );
        let d = k.diff(i);
        let fi = &f[(i + 1 - lo) as usize];
        let cols: Vec<Vec<BigInt>> = src
            .basis()
            .iter()
            .map(|b| {
                let y = solve(fi, &d.apply(&Integers, b)).expect("dx lies in F K");
                dst.coords(&y).expect("F^{-1} dx lies in Z")
            })
            .collect();
        diffs.push(Matrix::from_fn(dst.rank(), src.rank(), |r, c| {
            cols[c][r].clone()
        }));
    }
    let ranks = lattices.iter().map(Lattice::rank).collect();
    ChainComplex::new(Integers, lo, ranks, diffs)
}

/// `H^i(K) / H^i(K)[f]`: each cyclic order `e` becomes `e / gcd(e, f)`.
pub fn leta_homology_formula(
    h: &HomologyPresentation<ModuleStructure>,
    f: &BigInt,
) -> HomologyPresentation<ModuleStructure> {
    let f = f.abs();
    let degrees = h
        .degrees
        .iter()
        .map(|m| {
            let mut orders: Vec<BigInt> = m.torsion.iter().map(|e| e / e.gcd(&f)).collect();
            orders.extend(std::iter::repeat_n(BigInt::zero(), m.free_rank));
            ModuleStructure::from_cyclic_orders(orders)
        })
        .collect();
    HomologyPresentation { lo: h.lo, degrees }
}

/// Outcome of the symbolic rule for `L eta_f` on a Koszul complex.
#[derive(Clone, Debug)]
pub enum LetaKoszul<R: Ring> {
    /// `f` divides every element: `K(g_1/f, ..., g_d/f)`.
    Koszul(KoszulSummand<R>),
    /// Some element divides `f`: `L eta_f K = 0`.
    Zero,
    /// Neither rule applies.
    NotStructured,
}

impl<R: Ring> LetaKoszul<R> {
    pub fn label(&self) -> &'static str {
        match self {
            LetaKoszul::Koszul(_) => "koszul",
            LetaKoszul::Zero => "zero",
            LetaKoszul::NotStructured => "not-structured",
        }
    }
}

/// What the symbolic rule needs to know about one Koszul element `g` and `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementFact<E> {
    /// `g / f` when `f | g` exactly.
    pub quotient: Option<E>,
    /// `g / f` is a unit.
    pub quotient_is_unit: bool,
    /// `g != 0` and `g | f`.
    pub divides_f: bool,
}

pub fn element_fact<R: Divisibility>(ring: &R, g: &R::Elem, f: &R::Elem) -> ElementFact<R::Elem> {
    let quotient = ring.div_exact(g, f);
    let quotient_is_unit = quotient
        .as_ref()
        .is_some_and(|q| !ring.is_zero(q) && ring.is_unit(q));
    let divides_f = !ring.is_zero(g) && ring.divides(g, f);
    ElementFact {
        quotient,
        quotient_is_unit,
        divides_f,
    }
}

/// Outcome of the rule on a list of element facts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetaRule {
    /// `f` divides every element and no quotient is a unit.
    Divide,
    /// `f` divides every element and some quotient is a unit: acyclic.
    DivideAcyclic,
    /// Some element divides `f`.
    Zero,
    NotStructured,
}

pub fn leta_rule<E>(facts: &[&ElementFact<E>]) -> LetaRule {
    if facts.iter().all(|x| x.quotient.is_some()) {
        if facts.iter().any(|x| x.quotient_is_unit) {
            LetaRule::DivideAcyclic
        } else {
            LetaRule::Divide
        }
    } else if facts.iter().any(|x| x.divides_f) {
        LetaRule::Zero
    } else {
        LetaRule::NotStructured
    }
}

/// Symbolic `L eta_f` of `K(g_1, ..., g_d)`. The twist tag counts applications.
pub fn leta_koszul<R: Divisibility>(k: &KoszulSummand<R>, f: &R::Elem) -> LetaKoszul<R> {
    let ring = &k.ring;
    if ring.is_zero(f) {
        return LetaKoszul::NotStructured;
    }
    let facts: Vec<ElementFact<R::Elem>> = k
        .elements
        .iter()
        .map(|g| element_fact(ring, g, f))
        .collect();
    let refs: Vec<&ElementFact<R::Elem>> = facts.iter().collect();
    match leta_rule(&refs) {
        LetaRule::Divide | LetaRule::DivideAcyclic => {
            let q = facts.into_iter().map(|x| x.quotient.unwrap()).collect();
            LetaKoszul::Koszul(KoszulSummand::new(
                ring.clone(),
                q,
                k.grading.clone(),
                k.twist + 1,
            ))
        }
        LetaRule::Zero => LetaKoszul::Zero,
        LetaRule::NotStructured => LetaKoszul::NotStructured,
    }
}

/// Whether a Koszul complex is acyclic because one of its elements is a unit.
pub fn koszul_is_acyclic<R: Divisibility>(k: &KoszulSummand<R>) -> bool {
    k.elements.iter().any(|g| ring_unit(&k.ring, g))
}

fn ring_unit<R: Divisibility>(ring: &R, g: &R::Elem) -> bool {
    !ring.is_zero(g) && ring.is_unit(g)
}

/// `f^e`.
pub(crate) fn int_pow(f: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= f;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalExponent;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn warning_examples() {
        let z_mod_p = IntComplex::from_i64(0, vec![1, 1], &[&[3]]).unwrap();
        assert!(eta_subcomplex(&z_mod_p, &b(3))
            .unwrap()
            .homology()
            .is_zero());
        let z_mod_p2 = IntComplex::from_i64(0, vec![1, 1], &[&[9]]).unwrap();
        let h = eta_subcomplex(&z_mod_p2, &b(3)).unwrap().homology();
        assert!(h.get(0).is_zero());
        assert_eq!(h.get(1), ModuleStructure::from_cyclic_orders([b(3)]));
    }

    #[test]
    fn zero_differential() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[0]]).unwrap();
        let e = eta_subcomplex(&k, &b(2)).unwrap();
        assert_eq!(e.inclusion(1).unwrap(), Matrix::from_i64(1, 1, &[2]));
        assert_eq!(e.homology().get(0), ModuleStructure::free(1));
        assert_eq!(e.homology().get(1), ModuleStructure::free(1));
        assert!(eta_subcomplex(&k, &b(0)).is_err());
    }

    #[test]
    fn formula_rule() {
        let h = HomologyPresentation {
            lo: 0,
            degrees: vec![ModuleStructure::from_cyclic_orders([b(0), b(12), b(5)])],
        };
        let g = leta_homology_formula(&h, &b(2));
        assert_eq!(
            g.get(0),
            ModuleStructure::from_cyclic_orders([b(0), b(6), b(5)])
        );
    }

    #[test]
    fn symbolic_koszul() {
        let grading = vec![RationalExponent::zero(2); 2];
        let k = KoszulSummand::new(Integers, vec![b(4), b(6)], grading.clone(), 0);
        match leta_koszul(&k, &b(2)) {
            LetaKoszul::Koszul(s) => assert_eq!(s.elements, vec![b(2), b(3)]),
            other => panic!("unexpected {}", other.label()),
        }
        let k = KoszulSummand::new(Integers, vec![b(2), b(3)], grading.clone(), 0);
        assert_eq!(leta_koszul(&k, &b(6)).label(), "zero");
        let k = KoszulSummand::new(Integers, vec![b(4), b(9)], grading, 0);
        assert_eq!(leta_koszul(&k, &b(6)).label(), "not-structured");
    }
}
