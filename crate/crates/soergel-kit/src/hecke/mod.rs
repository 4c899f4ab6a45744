//! The decategorified layer: symmetric group combinatorics, the Hecke algebra
//! H_n in Soergel's conventions (q = v⁻²), basis conversions, partial traces
//! and the Jones-Ocneanu trace / HOMFLY-PT evaluation.

mod algebra;
mod braid;
mod laurent;
mod perm;
mod trace;

pub use algebra::{dual_anti, epsilon, negative_basis_matrix, pairing, to_negative_basis, HeckeElt};
pub use braid::{ft, ht, jm, BraidWord};
pub use laurent::{LaurentPoly, LaurentRat};
pub use perm::Perm;
pub use trace::{
    homfly, homfly_normalized, jones_ocneanu_trace, partial_trace, pi_pm, trace_of_one, APoly,
    HeckeAElt,
};
