//! Bounded complexes of Bott-Samelson bimodules: the braid-to-complex
//! compiler, Gaussian-elimination simplification, distinguished chain maps
//! (ψ_i, ψ_w, the splitting map) and on-disk caching.

mod chainmap;
mod complex;
mod serial;
mod simplify;

pub use chainmap::{cone, ev_complex, psi_generator, psi_w, splitting_map, ChainMap};
pub use complex::{braid_to_complex, braid_to_complex_reduced, rouquier_generator, SBComplex};
pub use serial::{load_complex, save_complex};
pub use simplify::gaussian_eliminate;
