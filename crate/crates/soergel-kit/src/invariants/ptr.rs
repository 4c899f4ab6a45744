use std::collections::BTreeMap;

use rayon::prelude::*;

use super::slice::{complex_min_degree, validate_cutoff, SliceEngine, SliceField, SliceRequest};
use super::table::GradedTable;
use crate::exactla::{FieldMode, FiniteComplex, Fp, Rat, SparseMatrix};
use crate::rouquier::SBComplex;
use crate::Result;

/// Partial-trace functor on complexes: per internal degree the kernel
/// (sign −) or cokernel (sign +) of x_n − X'_n on each chain group with the
/// induced differentials, then homology. Reported as a graded table over the
/// remaining strands (residual module structure is not tracked).
pub fn ptr_complex(c: &SBComplex, plus: bool, req: &SliceRequest) -> Result<GradedTable> {
    match req.field {
        FieldMode::Q => ptr_generic::<Rat>(c, plus, req),
        FieldMode::Fp(_) => ptr_generic::<Fp>(c, plus, req),
    }
}

fn ptr_generic<F: SliceField>(c: &SBComplex, plus: bool, req: &SliceRequest) -> Result<GradedTable> {
    validate_cutoff(c, req.cutoff)?;
    c.check_d_squared()?;
    let engine: SliceEngine<F> = SliceEngine::new(c.n(), req.field);
    let dmin = complex_min_degree(c).unwrap_or(0);
    let degrees: Vec<i64> = (dmin..=req.cutoff).collect();
    let rows: Result<Vec<BTreeMap<i64, usize>>> =
        degrees.par_iter().map(|&d| ptr_homology_at(&engine, c, plus, d)).collect();
    let mut out = GradedTable::new(req.cutoff);
    for (d, row) in degrees.iter().zip(rows?) {
        for (t, dim) in row {
            out.insert(t, *d, dim);
        }
    }
    Ok(out)
}

fn ptr_homology_at<F: SliceField>(
    engine: &SliceEngine<F>,
    c: &SBComplex,
    plus: bool,
    d: i64,
) -> Result<BTreeMap<i64, usize>> {
    let ts: Vec<i64> = c.degrees().collect();
    if ts.is_empty() {
        return Ok(BTreeMap::new());
    }
    let mut spaces: BTreeMap<i64, Vec<std::sync::Arc<super::slice::ColumnData<F>>>> =
        BTreeMap::new();
    for &t in &ts {
        let mut v = Vec::new();
        for m in c.summands_at(t) {
            v.push(engine.ptr_column(m, plus, d)?);
        }
        spaces.insert(t, v);
    }
    let dim_at = |t: i64| -> usize {
        spaces.get(&t).map(|v| v.iter().map(|x| x.sq.dim()).sum()).unwrap_or(0)
    };
    let offsets_at = |t: i64| -> Vec<usize> {
        let mut acc = 0;
        spaces
            .get(&t)
            .map(|v| {
                v.iter()
                    .map(|x| {
                        let o = acc;
                        acc += x.sq.dim();
                        o
                    })
                    .collect()
            })
            .unwrap_or_default()
    };
    let t0 = ts[0];
    let t1 = ts[ts.len() - 1];
    let mut dims = Vec::new();
    let mut maps = Vec::new();
    for t in t0..=t1 {
        dims.push(dim_at(t));
    }
    for t in t0..t1 {
        let rows = dim_at(t + 1);
        let cols = dim_at(t);
        let mut mat = SparseMatrix::zero(rows, cols);
        if rows > 0 && cols > 0 {
            let src_off = offsets_at(t);
            let tgt_off = offsets_at(t + 1);
            if let Some(blocks) = c.blocks_at(t) {
                for (&(tgt, src), m) in blocks {
                    let src_data = &spaces[&t][src];
                    let tgt_data = &spaces[&(t + 1)][tgt];
                    if src_data.sq.dim() == 0 || tgt_data.sq.dim() == 0 {
                        continue;
                    }
                    let ambient = engine.map_slice(
                        m,
                        &c.summands_at(t)[src],
                        &c.summands_at(t + 1)[tgt],
                        d,
                    )?;
                    let reps = src_data.sq.representatives();
                    let image = ambient.mul(&reps);
                    let induced = tgt_data.sq.project(&image);
                    for r in 0..induced.rows {
                        for (cc, v) in induced.row(r) {
                            mat.set(tgt_off[tgt] + r, src_off[src] + cc, v.clone());
                        }
                    }
                }
            }
        }
        maps.push(mat);
    }
    let complex = FiniteComplex::new(t0, dims, maps)?;
    let h = complex.homology_dims()?;
    Ok(h.into_iter().filter(|&(_, dim)| dim > 0).collect())
}
