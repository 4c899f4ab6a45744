use std::collections::BTreeMap;

use super::scalar::Field;
use super::sparse::SparseMatrix;
use crate::{Error, Result};

/// A finite-dimensional cochain complex over a fixed exact field: spaces
/// indexed by homological degree on a finite window, differentials d_k going
/// up by one.
#[derive(Clone, Debug)]
pub struct FiniteComplex<F: Field> {
    /// Homological degree of `dims[0]`.
    pub offset: i64,
    pub dims: Vec<usize>,
    /// `maps[k]`: C^{offset+k} → C^{offset+k+1}, shape dims[k+1] × dims[k].
    pub maps: Vec<SparseMatrix<F>>,
}

impl<F: Field> FiniteComplex<F> {
    pub fn new(offset: i64, dims: Vec<usize>, maps: Vec<SparseMatrix<F>>) -> Result<Self> {
        if !dims.is_empty() {
            assert_eq!(maps.len() + 1, dims.len(), "need one map between consecutive spaces");
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows != dims[k + 1] || m.cols != dims[k] {
                return Err(Error::ShapeMismatch(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    offset + k as i64,
                    m.rows,
                    m.cols,
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(FiniteComplex { offset, dims, maps })
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for k in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[k + 1].mul(&self.maps[k]).is_zero() {
                return Err(Error::ChainConditionViolated(self.offset + k as i64));
            }
        }
        Ok(())
    }

    /// dim H^k = dim C^k − rank d_k − rank d_{k−1}, for every k in the window.
    pub fn homology_dims(&self) -> Result<BTreeMap<i64, usize>> {
        self.check_d_squared()?;
        let ranks: Vec<usize> = self.maps.iter().map(SparseMatrix::rank).collect();
        let mut out = BTreeMap::new();
        for (k, &dim) in self.dims.iter().enumerate() {
            let out_rank = if k < ranks.len() { ranks[k] } else { 0 };
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            let h = dim - out_rank - in_rank;
            if dim > 0 {
                out.insert(self.offset + k as i64, h);
            }
        }
        Ok(out)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let t = self.offset + k as i64;
                if t.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }
}
