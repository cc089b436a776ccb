//! The depth-`n` cyclotomic model of `A_inf`, Witt vectors of perfections and
//! semilinear Frobenius fixed points.

mod cyclotomic;
mod finite_field;
mod identities;
mod model;
mod semilinear;
mod witt;
mod witt_checks;

pub use cyclotomic::{cyclotomic_poly, QuotientRing};
pub use finite_field::{GaloisField, Gf};
pub use identities::{check_notation_identities, IdentityCheck, NotationReport};
pub use model::{phi, AinfModel, DEFAULT_MAX_DEPTH};
pub use semilinear::{
    kernel_mod_p, rank_over_field, FixedPointStatus, FixedPoints, SemilinearModule,
};
pub use witt::{
    digits_to_witt, teichmuller_digits, teichmuller_lift, PerfectionElement, PerfectionJson,
    TruncatedWittElement, WittJson,
};
pub use witt_checks::{check_fixed_points, check_witt_layer, random_perfection_element};
