//! The decalage functor `L eta_f` over `Z`, its symbolic rule on Koszul
//! complexes, Bockstein complexes and checkers for its basic properties.

mod bockstein;
mod checks;
mod eta;
mod inverse;
mod random;
mod triangle;

pub use bockstein::{bockstein, BocksteinComplex, BocksteinJson};
pub use checks::{
    check_composition, check_homology_formula, check_koszul_agreement,
    check_leta_mod_f_is_bockstein, check_mod_g_commutation, check_restriction_of_scalars,
    check_truncation, compare, CheckReport, DegreeComparison,
};
pub use eta::{
    element_fact, eta_subcomplex, eta_subcomplex_by, koszul_is_acyclic, leta_homology_formula,
    leta_koszul, leta_rule, ElementFact, EtaComplex, EtaJson, LetaKoszul, LetaRule,
};
pub use inverse::{
    factor_through_leta, leta_inverse_maps, Factorization, InverseCheck, LetaInverse,
};
pub use random::{random_complex, RandomComplexParams};
pub use triangle::{check_exactness_criterion, ExactnessReport, TrianglePair};
