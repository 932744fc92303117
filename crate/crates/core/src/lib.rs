//! Exact symbolic engine for free-field vertex superalgebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact rational dense and sparse linear algebra.
//! * [`liesuper`]: matrix models of `gl`, `sl`, `so`, `sp`, `sl(r|m)` and
//!   `osp(m|2n)` with structure constants and normalized invariant forms.
//! * [`freefield`]: normally ordered polynomials in beta-gamma / b-c fields and
//!   their operator product expansions via Wick contraction.
//! * [`affine`]: affine current realizations, Sugawara vectors, coset and
//!   conformal embedding checks.
//! * [`fockspan`]: truncated Fock spaces, mode actions, subalgebra graded
//!   dimensions and Zhu's C2 quotient with a polynomial presentation.
//! * [`arcjet`]: differential polynomial superalgebras, arc-space Hilbert
//!   series, jet invariants and classical-freeness certificates.

pub mod affine;
pub mod arcjet;
pub mod error;
pub mod fockspan;
pub mod freefield;
pub mod grading;
pub mod liesuper;
pub mod linalg;
pub mod rational;

pub use error::{Error, Result};
pub use grading::{Parity, Weight};
pub use rational::Q;

/// Tool version embedded in every emitted report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Schema tag for JSON artifacts.
pub const SCHEMA: &str = "vsa-report/1";
