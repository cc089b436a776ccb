use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::complexes::{
    HomologyPresentation, IntComplex, Integers, Lattice, Matrix, ModuleStructure, Subquotient,
};
use crate::error::{Error, Result};

/// `(H^*(K/f), beta_f)`: the homology of `K/f` with the boundary maps of
/// `K/f --f--> K/f^2 --> K/f`.
#[derive(Clone, Debug)]
pub struct BocksteinComplex {
    pub f: BigInt,
    pub lo: i32,
    /// `H^i(K/f)` as a quotient of lifted cycles by lifted boundaries.
    pub modules: Vec<Subquotient>,
    /// `beta^i` from the generators of `H^i` to the cyclic coordinates of `H^{i+1}`.
    pub differentials: Vec<Matrix<BigInt>>,
    source: IntComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct BocksteinJson {
    pub f: String,
    pub lo: i32,
    pub modules: Vec<ModuleStructure>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

/// Lift a cycle of `K/f`, apply `d`, divide by `f`, reduce.
pub fn bockstein(k: &IntComplex, f: &BigInt) -> Result<BocksteinComplex> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("f must be nonzero".into()));
    }
    let modules: Vec<Subquotient> = k
        .degrees()
        .map(|i| k.cycles_mod(i, f).quotient(&k.boundaries_mod(i, f)))
        .collect();
    let lo = k.lo();
    let mut differentials = Vec::new();
    for i in lo..k.hi() - 1 {
        let (src, dst) = (&modules[(i - lo) as usize], &modules[(i + 1 - lo) as usize]);
        let d = k.diff(i);
        let cols: Vec<Vec<BigInt>> = src
            .generators()
            .iter()
            .map(|x| {
                let y: Vec<BigInt> = d.apply(&Integers, x).iter().map(|c| c / f).collect();
                dst.coords(&y).expect("d(x)/f is a cycle mod f")
            })
            .collect();
        let rows = dst.generator_orders().len();
        differentials.push(Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone()));
    }
    Ok(BocksteinComplex {
        f: f.clone(),
        lo,
        modules,
        differentials,
        source: k.clone(),
    })
}

impl BocksteinComplex {
    pub fn module(&self, i: i32) -> Option<&Subquotient> {
        usize::try_from(i - self.lo)
            .ok()
            .and_then(|j| self.modules.get(j))
    }

    pub fn beta(&self, i: i32) -> Option<&Matrix<BigInt>> {
        usize::try_from(i - self.lo)
            .ok()
            .and_then(|j| self.differentials.get(j))
    }

    /// `beta^{i+1} o beta^i = 0`, checked on generators.
    pub fn check_beta_squared(&self) -> bool {
        (1..self.differentials.len()).all(|j| {
            let (b0, b1) = (&self.differentials[j - 1], &self.differentials[j]);
            let orders = self.modules[j + 1].generator_orders();
            let prod = b1.mul(&Integers, b0);
            (0..prod.rows()).all(|r| {
                (0..prod.cols()).all(|c| {
                    let x = prod.get(r, c);
                    if orders[r].is_zero() {
                        x.is_zero()
                    } else {
                        x.mod_floor(&orders[r]).is_zero()
                    }
                })
            })
        })
    }

    /// Homology of `(H^*(K/f), beta)`, computed on lifted lattices:
    /// `ker beta^i = {x in Z_f : dx/f in fK + im d}`, `im beta^{i-1} + B_f`.
    pub fn homology(&self) -> HomologyPresentation<ModuleStructure> {
        let k = &self.source;
        let f = &self.f;
        let degrees = k
            .degrees()
            .map(|i| {
                let z = k.cycles_mod(i, f);
                let target = k.boundaries_mod(i + 1, f).scale(f);
                let ker = z.intersect(&target.preimage(&k.diff(i)));
                let prev = k.cycles_mod(i - 1, f);
                let d = k.diff(i - 1);
                let im = Lattice::from_generators(
                    k.rank(i),
                    prev.basis()
                        .iter()
                        .map(|x| d.apply(&Integers, x).iter().map(|c| c / f).collect()),
                );
                ker.quotient(&im.sum(&k.boundaries_mod(i, f))).structure()
            })
            .collect();
        HomologyPresentation {
            lo: k.lo(),
            degrees,
        }
    }

    pub fn to_json(&self) -> BocksteinJson {
        BocksteinJson {
            f: self.f.to_string(),
            lo: self.lo,
            modules: self.modules.iter().map(Subquotient::structure).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn two_term_examples() {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[9]]).unwrap();
        let bc = bockstein(&k, &b(3)).unwrap();
        assert!(bc.beta(0).unwrap().get(0, 0).mod_floor(&b(3)).is_zero());
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[3]]).unwrap();
        let bc = bockstein(&k, &b(3)).unwrap();
        assert_eq!(bc.beta(0).unwrap().get(0, 0).mod_floor(&b(3)), b(1));
        assert!(bc.homology().is_zero());
        assert!(bc.check_beta_squared());
    }

    #[test]
    fn zero_differentials() {
        let k = IntComplex::from_i64(0, vec![2, 1], &[&[0, 0]]).unwrap();
        let bc = bockstein(&k, &b(2)).unwrap();
        assert!(bc.beta(0).unwrap().is_zero(&Integers));
        assert_eq!(
            bc.homology().get(0),
            ModuleStructure::from_cyclic_orders([b(2), b(2)])
        );
    }
}
