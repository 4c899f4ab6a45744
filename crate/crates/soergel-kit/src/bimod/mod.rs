//! The graded polynomial ring R = k[x_1..x_n] (deg x_i = 2) and Bott-Samelson
//! bimodules as free left R-modules with explicit commuting right-action
//! matrices, together with bimodule maps and the Frobenius structure of the
//! elementary bimodules.

mod bimodule;
mod matrix;
mod maps;
mod poly;

pub use bimodule::BSBimodule;
pub use maps::{
    coev_elementary, coev_word, comult, counit, dual_map, ev_elementary, ev_word, frobenius_maps,
    mult, split_square, unit, BimMap,
};
pub use matrix::{eval_poly_at, PolyMat};
pub use poly::{dim_r, monomials, PolyR};
