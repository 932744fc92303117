//! Free-field vertex superalgebra `S(n_bg) (x) E(n_bc)`.
//!
//! Fields are stored as linear combinations of normally ordered monomials in
//! derivatives of the generators `beta^i, gamma^i` (even) and `b^i, c^i`
//! (odd), all of conformal weight 1/2. A monomial `:x_1 x_2 ... x_k:` means the
//! right-nested product `x_1_(-1) (x_2_(-1) ( ... x_k))`; for free fields these
//! products are supercommutative, so every monomial has a canonical factor
//! order (kind, index, derivative order) up to a Koszul sign.
//!
//! OPEs are computed with the multi-contraction Wick theorem; see [`ope`].

mod generator;
mod ope;
mod poly;
mod virasoro;

pub use generator::{contraction, FreeFieldContext, GeneratorSymbol, Kind};
pub use ope::{nth_product, normal_order, ope, products, OpeResult};
pub use poly::{Factor, FieldPoly, FieldTerm, FieldWeight, Monomial};
pub use virasoro::{central_charge, is_primary, virasoro_e, virasoro_s, weight};
