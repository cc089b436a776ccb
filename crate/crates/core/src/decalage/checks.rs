use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::bockstein::bockstein;
use super::eta::{eta_subcomplex, leta_homology_formula, leta_koszul, LetaKoszul};
use crate::complexes::{
    homology_mod, homology_snf, koszul, HomologyPresentation, IntComplex, Integers, KoszulSummand,
    Matrix, ModuleStructure,
};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: i32,
    pub lhs: ModuleStructure,
    pub rhs: ModuleStructure,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// `false` when a hypothesis fails and no comparison is made.
    pub applicable: bool,
    pub degrees: Vec<DegreeComparison>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn not_applicable(check: &str, note: String) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            applicable: false,
            degrees: Vec::new(),
            notes: vec![note],
        }
    }

    /// The first disagreeing degree, for messages.
    pub fn first_mismatch(&self) -> Option<&DegreeComparison> {
        self.degrees.iter().find(|d| !d.agree)
    }
}

/// Compares two homology presentations over the union of their degree ranges.
pub fn compare(
    check: &str,
    lhs: &HomologyPresentation<ModuleStructure>,
    rhs: &HomologyPresentation<ModuleStructure>,
) -> CheckReport {
    let lo = lhs.lo.min(rhs.lo);
    let hi = (lhs.lo + lhs.degrees.len() as i32).max(rhs.lo + rhs.degrees.len() as i32);
    let degrees: Vec<DegreeComparison> = (lo..hi)
        .map(|i| {
            let (a, b) = (lhs.get(i), rhs.get(i));
            let agree = a == b;
            DegreeComparison {
                degree: i,
                lhs: a,
                rhs: b,
                agree,
            }
        })
        .collect();
    let passed = degrees.iter().all(|d| d.agree);
    CheckReport {
        check: check.into(),
        passed,
        applicable: true,
        degrees,
        notes: Vec::new(),
    }
}

/// `H^i(L eta_f K) = H^i(K) / H^i(K)[f]`.
pub fn check_homology_formula(k: &IntComplex, f: &BigInt) -> Result<CheckReport> {
    let lhs = eta_subcomplex(k, f)?.homology();
    let rhs = leta_homology_formula(&homology_snf(k), f);
    Ok(compare("homology of L eta_f", &lhs, &rhs))
}

/// `L eta_f(K) (x)^L Z/f` against the homology of the Bockstein complex.
pub fn check_leta_mod_f_is_bockstein(k: &IntComplex, f: &BigInt) -> Result<CheckReport> {
    let eta = eta_subcomplex(k, f)?;
    let lhs = homology_mod(&eta.complex, f);
    let bc = bockstein(k, f)?;
    let rhs = bc.homology();
    let mut r = compare("L eta_f K mod f vs Bockstein complex", &lhs, &rhs);
    if !bc.check_beta_squared() {
        r.passed = false;
        r.notes.push("beta o beta != 0".into());
    }
    Ok(r)
}

/// `L eta_f L eta_g K = L eta_{fg} K` on homology.
pub fn check_composition(k: &IntComplex, f: &BigInt, g: &BigInt) -> Result<CheckReport> {
    let inner = eta_subcomplex(k, g)?;
    let lhs = eta_subcomplex(&inner.complex, f)?.homology();
    let rhs = eta_subcomplex(k, &(f * g))?.homology();
    Ok(compare("L eta_f L eta_g = L eta_fg", &lhs, &rhs))
}

/// `L eta_f(K) (x)^L Z/g = L eta_f(K (x)^L Z/g)` when `H^*(K/f)` has no `g`-torsion.
pub fn check_mod_g_commutation(k: &IntComplex, f: &BigInt, g: &BigInt) -> Result<CheckReport> {
    let name = "L eta_f commutes with (x)^L Z/g";
    let hk = homology_mod(k, f);
    let g_torsion = hk
        .degrees
        .iter()
        .any(|m| m.torsion.iter().any(|e| !e.gcd(g).is_one()));
    if g_torsion {
        return Ok(CheckReport::not_applicable(
            name,
            format!("H^*(K/{f}) has {g}-torsion"),
        ));
    }
    let lhs = homology_mod(&eta_subcomplex(k, f)?.complex, g);
    let rhs = eta_subcomplex(&k.cone_of_multiplication(g), f)?.homology();
    Ok(compare(name, &lhs, &rhs))
}

/// `H^i(L eta_f tau^{<=j} K) = H^i(L eta_f K)` for `i <= j`.
pub fn check_truncation(k: &IntComplex, f: &BigInt, j: i32) -> Result<CheckReport> {
    let lhs = eta_subcomplex(&k.truncate_canonical(j), f)?.homology();
    let full = eta_subcomplex(k, f)?.homology();
    let rhs = HomologyPresentation {
        lo: full.lo,
        degrees: full
            .degrees
            .iter()
            .enumerate()
            .map(|(o, m)| {
                if full.lo + o as i32 <= j {
                    m.clone()
                } else {
                    ModuleStructure::zero()
                }
            })
            .collect(),
    };
    Ok(compare("L eta_f commutes with tau^{<=j}", &lhs, &rhs))
}

/// For a `Z`-complex with a commuting endomorphism `x` (a module over `Z[x]`),
/// `eta_f` computed over `Z` is stable under `x` and `x` commutes with `d/f`.
pub fn check_restriction_of_scalars(
    k: &IntComplex,
    x: &[Matrix<BigInt>],
    f: &BigInt,
) -> Result<CheckReport> {
    let name = "L eta_f commutes with restriction of scalars";
    let eta = eta_subcomplex(k, f)?;
    let mut notes = Vec::new();
    let mut passed = true;
    for i in k.degrees() {
        let xi = &x[(i - k.lo()) as usize];
        let z = eta.lattice(i);
        if !z
            .basis()
            .iter()
            .all(|v| z.contains(&xi.apply(&Integers, v)))
        {
            passed = false;
            notes.push(format!(
                "degree {i}: Z_f is not stable under the scalar action"
            ));
        }
    }
    let r = CheckReport {
        check: name.into(),
        passed,
        applicable: true,
        degrees: Vec::new(),
        notes,
    };
    Ok(r)
}

/// Symbolic Koszul rule against the lattice computation, over `Z`.
pub fn check_koszul_agreement(g: &[BigInt], f: &BigInt) -> Result<CheckReport> {
    let name = "symbolic L eta_f on Koszul complexes";
    let summand = KoszulSummand::new(
        Integers,
        g.to_vec(),
        vec![crate::arith::RationalExponent::zero(2); g.len()],
        0,
    );
    let lattice = eta_subcomplex(&koszul(&Integers, g), f)?.homology();
    let symbolic = match leta_koszul(&summand, f) {
        LetaKoszul::Koszul(s) => homology_snf(&s.complex()),
        LetaKoszul::Zero => HomologyPresentation {
            lo: 0,
            degrees: Vec::new(),
        },
        LetaKoszul::NotStructured => {
            return Ok(CheckReport::not_applicable(
                name,
                "neither divisibility rule applies".into(),
            ));
        }
    };
    Ok(compare(name, &lattice, &symbolic))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn spec_instances() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[9]]).unwrap();
        assert!(check_homology_formula(&k, &b(3)).unwrap().passed);
        assert!(check_leta_mod_f_is_bockstein(&k, &b(3)).unwrap().passed);
        let k24 = koszul(&Integers, &[b(2), b(4)]);
        assert!(check_leta_mod_f_is_bockstein(&k24, &b(2)).unwrap().passed);
        let k8 = IntComplex::from_i64(0, vec![1, 1], &[&[8]]).unwrap();
        let r = check_composition(&k8, &b(2), &b(2)).unwrap();
        assert!(r.passed);
        assert_eq!(
            r.degrees[1].lhs,
            ModuleStructure::from_cyclic_orders([b(2)])
        );
        assert!(check_composition(&k8, &b(1), &b(2)).unwrap().passed);
    }

    #[test]
    fn mod_g_instances() {
        let k6 = koszul(&Integers, &[b(6)]);
        let r = check_mod_g_commutation(&k6, &b(2), &b(3)).unwrap();
        assert!(r.applicable && r.passed, "{r:?}");
        let r = check_mod_g_commutation(&k6, &b(3), &b(2)).unwrap();
        assert!(r.applicable && r.passed);
    }

    #[test]
    fn truncation_and_koszul() {
        let k = koszul(&Integers, &[b(4), b(6), b(0)]);
        for j in 0..3 {
            assert!(check_truncation(&k, &b(2), j).unwrap().passed);
        }
        assert!(check_koszul_agreement(&[b(4), b(6)], &b(2)).unwrap().passed);
        assert!(check_koszul_agreement(&[b(2), b(3)], &b(6)).unwrap().passed);
        assert!(
            !check_koszul_agreement(&[b(4), b(9)], &b(6))
                .unwrap()
                .applicable
        );
    }
}
