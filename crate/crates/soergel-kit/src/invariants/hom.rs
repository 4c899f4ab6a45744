use super::hh::hh0_complex;
use super::slice::SliceRequest;
use super::table::GradedTable;
use crate::hecke::BraidWord;
use crate::rouquier::{braid_to_complex_reduced, gaussian_eliminate};
use crate::{Error, Result};

/// Graded homology table of the Hom complex Hom(F(a), F(b)), computed as
/// HH⁰(F(b) ⊗ F(a)⁻¹) through Hom(A,B) ≅ Hom(R, B⊗A^∨) and F(β)^∨ ≃ F(β⁻¹).
pub fn hom_homology(a: &BraidWord, b: &BraidWord, req: &SliceRequest) -> Result<GradedTable> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch(a.n(), b.n()));
    }
    let word = b.concat(&a.inverse())?;
    let complex = braid_to_complex_reduced(&word)?;
    let complex = gaussian_eliminate(&complex)?;
    hh0_complex(&complex, req)
}
