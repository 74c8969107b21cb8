//! Seifert data over an abstract base and its global invariants.

mod base;
mod class_group;
mod cone;
mod data;
mod invariants;

pub use base::{BaseVariety, Divisor, MarkedPoint};
pub use class_group::{canonical_class_y, class_group_y, ClassGroupY};
pub use cone::{contraction_type, singularity_predicates, ContractionType, SingularityPredicates, Verdict};
pub use data::{Coefficient, QClass, SeifertData};
pub use invariants::{
    chern_class, edge_class, global_order, is_principal, multiplicity_at, quotient_by_mu, validate,
    validate_with_bound, PairCheck, PointCheck, ValidationReport,
};
