//! Differential polynomial superalgebras, arc-space quotients and jet invariants.

mod certificate;
mod diffalg;
mod invariants;

pub use certificate::{
    certify_classical_freeness, compare_tables, Attempt, CertifyOptions, FreenessCertificate, Params, Verdict, IMAGE_ALGEBRA_LABEL,
};
pub use diffalg::{derivative, free_diff_dims, quotient_dims, DiffGenerator, DiffPresentation, HilbertTable, JetMonomial, JetPoly, JetVar};
pub use invariants::jet_invariant_dims;
