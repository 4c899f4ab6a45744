use std::collections::BTreeMap;

use rayon::prelude::*;

use super::slice::{
    block_diag_apply, complex_min_degree, validate_cutoff, SliceEngine, SliceField, SliceRequest,
};
use super::table::{GradedTable, PoincareTable};
use crate::bimod::BSBimodule;
use crate::exactla::{FieldMode, FiniteComplex, Fp, Rat, SparseMatrix};
use crate::rouquier::SBComplex;
use crate::Result;

/// The Koszul slice complex of a single bimodule in one internal degree:
/// column l is slice(M, d+2l) ⊗ Λ^l, so the l = 0 column carries degree d and
/// the homology of column l is H̃H^l(M) in internal degree d + 2l.
pub fn koszul_slice(m: &BSBimodule, d: i64, req: &SliceRequest) -> Result<FiniteComplex<Rat>> {
    let engine: SliceEngine<Rat> = SliceEngine::new(m.n(), FieldMode::Q);
    let _ = req;
    engine.koszul_slice_complex(m, d)
}

impl<F: SliceField> SliceEngine<F> {
    pub fn koszul_slice_complex(&self, m: &BSBimodule, d: i64) -> Result<FiniteComplex<F>> {
        let n = self.n;
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        for l in 0..=n {
            dims.push(m.slice_dim(d + 2 * l as i64) * super::slice::binomial(n, l));
        }
        for l in 0..n {
            maps.push(self.koszul_up_matrix_public(m, l, d + 2 * l as i64)?);
        }
        FiniteComplex::new(0, dims, maps)
    }
}

/// H̃H^l column of a complex: for each homological degree and internal degree
/// ≤ cutoff, the dimension of the homology of the induced complex of
/// Hochschild-column subquotients.
pub fn hh_column(c: &SBComplex, l: usize, req: &SliceRequest) -> Result<GradedTable> {
    match req.field {
        FieldMode::Q => hh_column_generic::<Rat>(c, l, req),
        FieldMode::Fp(_) => hh_column_generic::<Fp>(c, l, req),
    }
}

fn hh_column_generic<F: SliceField>(
    c: &SBComplex,
    l: usize,
    req: &SliceRequest,
) -> Result<GradedTable> {
    validate_cutoff(c, req.cutoff)?;
    let engine: SliceEngine<F> = SliceEngine::new(c.n(), req.field);
    let dmin = complex_min_degree(c).unwrap_or(0);
    let degrees: Vec<i64> = (dmin..=req.cutoff).collect();
    let rows: Result<Vec<BTreeMap<i64, usize>>> = degrees
        .par_iter()
        .map(|&d| column_homology_at(&engine, c, l, d))
        .collect();
    let mut out = GradedTable::new(req.cutoff);
    for (d, row) in degrees.iter().zip(rows?) {
        for (t, dim) in row {
            out.insert(t, *d, dim);
        }
    }
    Ok(out)
}

/// H̃H^0 column (the invariants subcomplex).
pub fn hh0_complex(c: &SBComplex, req: &SliceRequest) -> Result<GradedTable> {
    hh_column(c, 0, req)
}

/// HH_0 column = raw column n (the HH^n(−2n) normalization is built into the
/// module-degree bookkeeping).
pub fn hh_top_complex(c: &SBComplex, req: &SliceRequest) -> Result<GradedTable> {
    hh_column(c, c.n(), req)
}

/// Full triply graded table. Column a = l carries H̃H^l = HH^l(−2l); the
/// unnormalized convention shifts column l by +2l.
pub fn hhh(c: &SBComplex, req: &SliceRequest) -> Result<PoincareTable> {
    let n = c.n();
    let mut table = PoincareTable::new(n, req.cutoff);
    let columns: Vec<usize> = match req.hochschild {
        Some(l) => vec![l],
        None => (0..=n).collect(),
    };
    for l in columns {
        let col = hh_column(c, l, req)?;
        for (&(t, d), &dim) in &col.entries {
            let dd = if req.tilde { d } else { d + 2 * l as i64 };
            table.insert(l as i64, t, dd, dim);
        }
    }
    Ok(table)
}

fn column_homology_at<F: SliceField>(
    engine: &SliceEngine<F>,
    c: &SBComplex,
    l: usize,
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
            v.push(engine.koszul_up(m, l, d)?);
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
                    let image = block_diag_apply(&ambient, src_data.copies, &reps);
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

/// Plain slice homology of the complex of bimodules (no Hochschild functor):
/// per internal degree the homology of the slice complex.
pub fn plain_homology(c: &SBComplex, req: &SliceRequest) -> Result<GradedTable> {
    match req.field {
        FieldMode::Q => plain_homology_generic::<Rat>(c, req),
        FieldMode::Fp(_) => plain_homology_generic::<Fp>(c, req),
    }
}

fn plain_homology_generic<F: SliceField>(
    c: &SBComplex,
    req: &SliceRequest,
) -> Result<GradedTable> {
    validate_cutoff(c, req.cutoff)?;
    let engine: SliceEngine<F> = SliceEngine::new(c.n(), req.field);
    let dmin = complex_min_degree(c).unwrap_or(0);
    let degrees: Vec<i64> = (dmin..=req.cutoff).collect();
    let rows: Result<Vec<BTreeMap<i64, usize>>> = degrees
        .par_iter()
        .map(|&d| plain_homology_at(&engine, c, d))
        .collect();
    let mut out = GradedTable::new(req.cutoff);
    for (d, row) in degrees.iter().zip(rows?) {
        for (t, dim) in row {
            out.insert(t, *d, dim);
        }
    }
    Ok(out)
}

fn plain_homology_at<F: SliceField>(
    engine: &SliceEngine<F>,
    c: &SBComplex,
    d: i64,
) -> Result<BTreeMap<i64, usize>> {
    let ts: Vec<i64> = c.degrees().collect();
    if ts.is_empty() {
        return Ok(BTreeMap::new());
    }
    let t0 = ts[0];
    let t1 = ts[ts.len() - 1];
    let sdim = |t: i64| -> usize { c.summands_at(t).iter().map(|m| m.slice_dim(d)).sum() };
    let offs = |t: i64| -> Vec<usize> {
        let mut acc = 0;
        c.summands_at(t)
            .iter()
            .map(|m| {
                let o = acc;
                acc += m.slice_dim(d);
                o
            })
            .collect()
    };
    let mut dims = Vec::new();
    let mut maps = Vec::new();
    for t in t0..=t1 {
        dims.push(sdim(t));
    }
    for t in t0..t1 {
        let rows = sdim(t + 1);
        let cols = sdim(t);
        let mut mat = SparseMatrix::zero(rows, cols);
        if rows > 0 && cols > 0 {
            let so = offs(t);
            let to = offs(t + 1);
            if let Some(blocks) = c.blocks_at(t) {
                for (&(tgt, src), m) in blocks {
                    let sl = engine.map_slice(
                        m,
                        &c.summands_at(t)[src],
                        &c.summands_at(t + 1)[tgt],
                        d,
                    )?;
                    for r in 0..sl.rows {
                        for (cc, v) in sl.row(r) {
                            mat.set(to[tgt] + r, so[src] + cc, v.clone());
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

/// Hochschild homology column by the independent contraction (homological)
/// Koszul complex: official HH_k table, internal degree d = module degree + 2k.
pub fn hh_homological_column(c: &SBComplex, k: usize, req: &SliceRequest) -> Result<GradedTable> {
    match req.field {
        FieldMode::Q => hh_down_generic::<Rat>(c, k, req),
        FieldMode::Fp(_) => hh_down_generic::<Fp>(c, k, req),
    }
}

fn hh_down_generic<F: SliceField>(
    c: &SBComplex,
    k: usize,
    req: &SliceRequest,
) -> Result<GradedTable> {
    validate_cutoff(c, req.cutoff)?;
    let engine: SliceEngine<F> = SliceEngine::new(c.n(), req.field);
    let dmin = complex_min_degree(c).unwrap_or(0);
    let degrees: Vec<i64> = (dmin..=req.cutoff).collect();
    let rows: Result<Vec<BTreeMap<i64, usize>>> = degrees
        .par_iter()
        .map(|&d| down_homology_at(&engine, c, k, d))
        .collect();
    let mut out = GradedTable::new(req.cutoff + 2 * k as i64);
    for (d, row) in degrees.iter().zip(rows?) {
        for (t, dim) in row {
            // official internal degree of HH_k = module degree + 2k
            out.insert(t, *d + 2 * k as i64, dim);
        }
    }
    Ok(out)
}

fn down_homology_at<F: SliceField>(
    engine: &SliceEngine<F>,
    c: &SBComplex,
    k: usize,
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
            v.push(engine.koszul_down(m, k, d)?);
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
                    let image = block_diag_apply(&ambient, src_data.copies, &reps);
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
