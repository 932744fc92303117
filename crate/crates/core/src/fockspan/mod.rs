//! Truncated Fock spaces: monomial bases, mode actions, vertex subalgebra
//! spans and Zhu's C2 quotient.

mod fock;
mod modes;
mod subalgebra;
mod zhu;


pub use fock::{apply_generator, character, enumerate_basis, fock_text, vacuum, Caps, Creator, FockMonomial, FockVector, GradedBasis};
pub use modes::{apply_field, field_of_state, mode_action, ope_fock_crosscheck, state_of, CrosscheckFailure, CrosscheckReport};
pub use subalgebra::{subalgebra_graded_dims, GradedSubspace, WeightDim};
pub use zhu::{c2_presentation, c2_span, canonical_monomial, C2Presentation, DegreeKernel, PresGenerator, Relation, SuperPoly};

