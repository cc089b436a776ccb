//! Bounded cochain complexes of finite free modules, Koszul complexes, exact
//! homology over `Z` and symbolic homology of divisibility-structured complexes.

mod chain_map;
mod complex;
mod diagonal;
mod koszul;
pub mod lattice;
mod matrix;
mod rank;
mod ring;

pub use chain_map::ChainMap;
pub use complex::{
    cone, homology_mod, homology_snf, ChainComplex, ComplexJson, HomologyPresentation, IntComplex,
};
pub use diagonal::{
    homology_diagonal, koszul_to_diagonal, DiagonalComplex, DiagonalPiece, PieceKind,
    SymbolicModule, SymbolicModuleJson,
};
pub use koszul::{binomial, koszul, subsets, tensor, tensor_basis, KoszulSummand, SummandJson};
pub use lattice::{Lattice, ModuleStructure, Subquotient};
pub use matrix::Matrix;
pub use rank::{homology_dims_over_fraction_field, rank_fraction_free};
pub use ring::{Divisibility, FpPolyRing, FpRing, Integers, IntegersMod, LaurentRing, Ring};
