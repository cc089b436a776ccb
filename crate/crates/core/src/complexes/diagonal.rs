use serde::Serialize;

use super::complex::HomologyPresentation;
use super::koszul::binomial;
use super::ring::{Divisibility, Ring};

#[derive(Clone, Debug, PartialEq)]
pub enum PieceKind<E> {
    Rank1Free,
    /// The two-term complex `A --g--> A` in degrees `shift, shift + 1`.
    TwoTerm(E),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPiece<E> {
    pub shift: i32,
    pub kind: PieceKind<E>,
}

/// A finite direct sum of shifted copies of `A` and of `A --g--> A`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalComplex<E> {
    pub pieces: Vec<DiagonalPiece<E>>,
}

/// A module `A^r + sum A/(g_i)` over a ring without a normal form for ideals.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicModule<E> {
    pub free_rank: usize,
    pub quotients: Vec<E>,
}

impl<E> Default for SymbolicModule<E> {
    fn default() -> Self {
        SymbolicModule {
            free_rank: 0,
            quotients: Vec::new(),
        }
    }
}

impl<E> SymbolicModule<E> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.quotients.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymbolicModuleJson {
    pub free_rank: usize,
    pub quotients: Vec<String>,
}

impl<E> SymbolicModule<E> {
    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> SymbolicModuleJson {
        SymbolicModuleJson {
            free_rank: self.free_rank,
            quotients: self.quotients.iter().map(|g| ring.format(g)).collect(),
        }
    }
}

/// Rewrites a Koszul complex as a diagonal complex when its elements are
/// linearly ordered by divisibility from a minimal one, or all vanish.
pub fn koszul_to_diagonal<R: Divisibility>(
    ring: &R,
    g: &[R::Elem],
) -> Option<DiagonalComplex<R::Elem>> {
    let d = g.len();
    if g.iter().all(|x| ring.is_zero(x)) {
        let pieces = (0..=d)
            .flat_map(|k| {
                (0..binomial(d, k)).map(move |_| DiagonalPiece {
                    shift: k as i32,
                    kind: PieceKind::Rank1Free,
                })
            })
            .collect();
        return Some(DiagonalComplex { pieces });
    }
    let min = g
        .iter()
        .find(|x| !ring.is_zero(x) && g.iter().all(|y| ring.divides(x, y)))?;
    // K(g_min, 0, ..., 0) after column operations: K(g_min) tensor the exterior algebra on d-1 generators.
    let pieces = (0..d)
        .flat_map(|k| {
            (0..binomial(d - 1, k)).map(move |_| DiagonalPiece {
                shift: k as i32,
                kind: PieceKind::TwoTerm(min.clone()),
            })
        })
        .collect();
    Some(DiagonalComplex { pieces })
}

/// Homology of a diagonal complex over a domain: `TwoTerm(g)` at shift `s`
/// contributes `A/(g)` to degree `s + 1`; unit quotients are dropped.
pub fn homology_diagonal<R: Divisibility>(
    ring: &R,
    dc: &DiagonalComplex<R::Elem>,
) -> HomologyPresentation<SymbolicModule<R::Elem>> {
    let top = dc.pieces.iter().map(|p| p.shift + 1).max().unwrap_or(0);
    let mut degrees: Vec<SymbolicModule<R::Elem>> =
        (0..=top).map(|_| SymbolicModule::default()).collect();
    for p in &dc.pieces {
        match &p.kind {
            PieceKind::Rank1Free => degrees[p.shift as usize].free_rank += 1,
            PieceKind::TwoTerm(g) => {
                assert!(!ring.is_zero(g), "TwoTerm pieces carry nonzero elements");
                if !ring.is_unit(g) {
                    degrees[p.shift as usize + 1].quotients.push(g.clone());
                }
            }
        }
    }
    while degrees.last().is_some_and(SymbolicModule::is_zero) && degrees.len() > 1 {
        degrees.pop();
    }
    HomologyPresentation { lo: 0, degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentElement;
    use crate::complexes::ring::{Integers, LaurentRing};
    use num_bigint::BigInt;

    #[test]
    fn minimal_element_pieces() {
        // q^{1/3} - 1 divides q^{2/3} - 1 at depth 1 (u - 1 | u^2 - 1)
        let r = LaurentRing { p: 3, depth: 1 };
        let g = [
            LaurentElement::monomial_minus_one(1, 1),
            LaurentElement::monomial_minus_one(1, 2),
        ];
        let dc = koszul_to_diagonal(&r, &g).unwrap();
        assert_eq!(dc.pieces.len(), 2);
        assert_eq!(dc.pieces[0].shift, 0);
        assert_eq!(dc.pieces[1].shift, 1);
        let h = homology_diagonal(&r, &dc);
        assert_eq!(h.get(1).quotients, vec![g[0].clone()]);
        assert_eq!(h.get(2).quotients, vec![g[0].clone()]);
    }

    #[test]
    fn zero_elements_give_exterior_algebra() {
        let dc = koszul_to_diagonal(&Integers, &[BigInt::from(0), BigInt::from(0)]).unwrap();
        let h = homology_diagonal(&Integers, &dc);
        let ranks: Vec<usize> = h.degrees.iter().map(|m| m.free_rank).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }

    #[test]
    fn not_structured_and_units() {
        assert!(koszul_to_diagonal(&Integers, &[BigInt::from(2), BigInt::from(3)]).is_none());
        let dc = DiagonalComplex {
            pieces: vec![DiagonalPiece {
                shift: 0,
                kind: PieceKind::TwoTerm(BigInt::from(1)),
            }],
        };
        assert!(homology_diagonal(&Integers, &dc)
            .degrees
            .iter()
            .all(SymbolicModule::is_zero));
    }
}
