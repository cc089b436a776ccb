//! The graded Koszul model of the cohomology of the perfectoid torus, the
//! complexes `Omega~` and `A Omega`, their specializations and semicontinuity.

mod grading;
mod oracle;
mod pipeline;
mod semicont;
mod specialize;

pub use grading::{build_oc_torus_cohomology, build_torus_cohomology, GradedKoszulSum, GradingBox};
pub use oracle::{restrict_scalars, tilde_cell_expected, tilde_cell_lattice_homology};
pub use pipeline::{
    ainf_omega_torus, tilde_omega_torus, twist_tags, twists_additive, CellReport, Survivor,
    TorusCohomologyResult,
};
pub use semicont::{
    random_fp_poly_complex, semicontinuity_demo, torsion_jump_model, torus_semicontinuity,
    SemicontinuityReport, Verdict,
};
pub use specialize::{
    beta_xi_d1, beta_xi_entry, de_rham_complex, de_rham_matrix, etale_rank_torus, prune_acyclic,
    specialize_de_rham, specialize_hodge_tate,
};
