use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bimod::BSBimodule;
use crate::exactla::{fp_from_rat, Field, FieldMode, Fp, Rat, SparseMatrix, Subquotient};
use crate::rouquier::SBComplex;
use crate::{Error, Result};

/// Field elements that can be produced from exact rationals under a runtime
/// field-mode (the prime is configuration, not a type parameter).
pub trait SliceField: Field {
    fn convert(mode: &FieldMode, r: &BigRational) -> Option<Self>;
}

impl SliceField for Rat {
    fn convert(_mode: &FieldMode, r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

impl SliceField for Fp {
    fn convert(mode: &FieldMode, r: &BigRational) -> Option<Self> {
        match mode {
            FieldMode::Fp(p) => fp_from_rat(r, *p),
            FieldMode::Q => None,
        }
    }
}

/// Cutoff, field and normalization options for slice computations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceRequest {
    /// Internal-degree cutoff D: tables are exact for degrees ≤ D.
    pub cutoff: i64,
    pub field: FieldMode,
    /// Restrict hhh to a single Hochschild degree.
    pub hochschild: Option<usize>,
    /// Report normalized tables H̃H^k = HH^k(−2k) (the default); when false
    /// the unnormalized HH^k grading is used, shifting column k by 2k.
    pub tilde: bool,
}

impl SliceRequest {
    pub fn exact(cutoff: i64) -> Self {
        SliceRequest { cutoff, field: FieldMode::Q, hochschild: None, tilde: true }
    }

    pub fn with_field(cutoff: i64, field: FieldMode) -> Self {
        SliceRequest { cutoff, field, hochschild: None, tilde: true }
    }
}

/// Kernel/image data of one summand's Koszul column in one internal degree,
/// with representatives for induced-map computations.
pub struct ColumnData<F: Field> {
    pub sq: Subquotient<F>,
    pub copies: usize,
    pub slice_dim: usize,
}

type ColumnKey = (Vec<usize>, usize, i64); // (word, column, shift-normalized degree)
type PtrKey = (Vec<usize>, bool, i64);

/// Shared per-computation caches for slice subquotients.
pub struct SliceEngine<F: SliceField> {
    pub n: usize,
    pub mode: FieldMode,
    koszul_up: Mutex<HashMap<ColumnKey, Arc<ColumnData<F>>>>,
    koszul_down: Mutex<HashMap<ColumnKey, Arc<ColumnData<F>>>>,
    ptr: Mutex<HashMap<PtrKey, Arc<ColumnData<F>>>>,
}

impl<F: SliceField> SliceEngine<F> {
    pub fn new(n: usize, mode: FieldMode) -> Self {
        SliceEngine {
            n,
            mode,
            koszul_up: Mutex::new(HashMap::new()),
            koszul_down: Mutex::new(HashMap::new()),
            ptr: Mutex::new(HashMap::new()),
        }
    }

    pub fn convert(&self, r: &BigRational) -> Result<F> {
        F::convert(&self.mode, r).ok_or(Error::BadPrime {
            prime: match self.mode {
                FieldMode::Fp(p) => p,
                FieldMode::Q => 0,
            },
            message: "denominator vanishes in the prime field".into(),
        })
    }

    /// Slice matrix of the commutator operator x_j − X'_j:
    /// slice(M, d) → slice(M, d+2).
    pub fn commutator_slice(&self, m: &BSBimodule, j: usize, d: i64) -> Result<SparseMatrix<F>> {
        let src = m.slice_basis(d);
        let tgt = m.slice_basis(d + 2);
        let index: HashMap<(usize, Vec<u8>), usize> =
            tgt.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let acts = m.right_actions();
        let mut triplets: Vec<(usize, usize, F)> = Vec::new();
        for (col, (b, mono)) in src.iter().enumerate() {
            // +x_j·(−)
            let mut bumped = mono.clone();
            bumped[j - 1] += 1;
            triplets.push((index[&(*b, bumped)], col, F::one()));
            // −X'_j
            for r in 0..m.rank() {
                let p = acts[j - 1].get(r, *b);
                if p.is_zero() {
                    continue;
                }
                for (exp, coeff) in p.terms() {
                    let prod: Vec<u8> = exp.iter().zip(mono).map(|(a, x)| a + x).collect();
                    let v = self.convert(coeff)?.neg();
                    triplets.push((index[&(r, prod)], col, v));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(tgt.len(), src.len(), &triplets))
    }

    /// Slice matrix of a degree-0 bimodule map between summands.
    pub fn map_slice(
        &self,
        mat: &crate::bimod::PolyMat,
        src: &BSBimodule,
        tgt: &BSBimodule,
        d: i64,
    ) -> Result<SparseMatrix<F>> {
        let src_basis = src.slice_basis(d);
        let tgt_basis = tgt.slice_basis(d);
        let index: HashMap<(usize, Vec<u8>), usize> =
            tgt_basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut triplets: Vec<(usize, usize, F)> = Vec::new();
        for (col, (b, mono)) in src_basis.iter().enumerate() {
            for r in 0..tgt.rank() {
                let p = mat.get(r, *b);
                if p.is_zero() {
                    continue;
                }
                for (exp, coeff) in p.terms() {
                    let prod: Vec<u8> = exp.iter().zip(mono).map(|(a, x)| a + x).collect();
                    let v = self.convert(coeff)?;
                    triplets.push((index[&(r, prod)], col, v));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(tgt_basis.len(), src_basis.len(), &triplets))
    }

    /// Cohomological Koszul column: homology of
    /// V_{l−1,d−2} → V_{l,d} → V_{l+1,d+2} with V_{l,·} = slice ⊗ Λ^l and
    /// differential v⊗θ_J ↦ Σ_{j∉J} ±(x_j − X'_j)v ⊗ θ_{J∪j}.
    /// H̃H^l(M) in internal degree d is exactly this homology.
    pub fn koszul_up(&self, m: &BSBimodule, l: usize, d: i64) -> Result<Arc<ColumnData<F>>> {
        let key = (m.word().to_vec(), l, d + m.shift());
        if let Some(hit) = self.koszul_up.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let n = self.n;
        let slice_dim = m.slice_dim(d);
        let copies = binomial(n, l);
        let data = if slice_dim == 0 {
            ColumnData {
                sq: Subquotient::from_subspace(SparseMatrix::zero(0, 0)),
                copies,
                slice_dim,
            }
        } else {
            let out = self.koszul_up_matrix(m, l, d)?;
            let z = out.kernel_basis();
            let b = if l == 0 {
                SparseMatrix::zero(z.rows, 0)
            } else {
                let into = self.koszul_up_matrix(m, l - 1, d - 2)?;
                into
            };
            ColumnData { sq: Subquotient::new(z, &b), copies, slice_dim }
        };
        let arc = Arc::new(data);
        self.koszul_up.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Matrix of the up differential V_{l,d} → V_{l+1,d+2}.
    pub(crate) fn koszul_up_matrix(&self, m: &BSBimodule, l: usize, d: i64) -> Result<SparseMatrix<F>> {
        let n = self.n;
        let src_subsets = subsets(n, l);
        let tgt_subsets = subsets(n, l + 1);
        let tgt_pos: HashMap<Vec<usize>, usize> =
            tgt_subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let sdim = m.slice_dim(d);
        let tdim = m.slice_dim(d + 2);
        let mut out = SparseMatrix::zero(tgt_subsets.len() * tdim, src_subsets.len() * sdim);
        if sdim == 0 || tdim == 0 {
            return Ok(out);
        }
        let mut comm: Vec<Option<SparseMatrix<F>>> = vec![None; n];
        for (si, subset) in src_subsets.iter().enumerate() {
            for j in 1..=n {
                if subset.contains(&j) {
                    continue;
                }
                let mut bigger = subset.clone();
                let pos = bigger.iter().position(|&x| x > j).unwrap_or(bigger.len());
                bigger.insert(pos, j);
                let sign = pos % 2 == 0;
                let ti = tgt_pos[&bigger];
                let cj = match &comm[j - 1] {
                    Some(c) => c.clone(),
                    None => {
                        let c = self.commutator_slice(m, j, d)?;
                        comm[j - 1] = Some(c.clone());
                        c
                    }
                };
                for r in 0..cj.rows {
                    for (c, v) in cj.row(r) {
                        let val = if sign { v.clone() } else { v.neg() };
                        let row = ti * tdim + r;
                        let col = si * sdim + c;
                        let cur = out.get(row, col).add(&val);
                        out.set(row, col, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Homological (contraction) Koszul column: homology of
    /// C_{k+1, d−2} → C_{k, d} → C_{k−1, d+2} with
    /// ∂(v⊗θ_J) = Σ_{j∈J} ±(x_j − X'_j)v ⊗ θ_{J∖j}. An independent route to
    /// Hochschild homology used to verify the self-duality relation.
    pub fn koszul_down(&self, m: &BSBimodule, k: usize, d: i64) -> Result<Arc<ColumnData<F>>> {
        let key = (m.word().to_vec(), k, d + m.shift());
        if let Some(hit) = self.koszul_down.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let n = self.n;
        let slice_dim = m.slice_dim(d);
        let copies = binomial(n, k);
        let data = if slice_dim == 0 {
            ColumnData {
                sq: Subquotient::from_subspace(SparseMatrix::zero(0, 0)),
                copies,
                slice_dim,
            }
        } else {
            let out = self.koszul_down_matrix(m, k, d)?;
            let z = out.kernel_basis();
            let b = if k == n {
                SparseMatrix::zero(z.rows, 0)
            } else {
                self.koszul_down_matrix(m, k + 1, d - 2)?
            };
            ColumnData { sq: Subquotient::new(z, &b), copies, slice_dim }
        };
        let arc = Arc::new(data);
        self.koszul_down.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn koszul_down_matrix(&self, m: &BSBimodule, k: usize, d: i64) -> Result<SparseMatrix<F>> {
        let n = self.n;
        if k == 0 {
            return Ok(SparseMatrix::zero(0, m.slice_dim(d)));
        }
        let src_subsets = subsets(n, k);
        let tgt_subsets = subsets(n, k - 1);
        let tgt_pos: HashMap<Vec<usize>, usize> =
            tgt_subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let sdim = m.slice_dim(d);
        let tdim = m.slice_dim(d + 2);
        let mut out = SparseMatrix::zero(tgt_subsets.len() * tdim, src_subsets.len() * sdim);
        if sdim == 0 || tdim == 0 {
            return Ok(out);
        }
        let mut comm: Vec<Option<SparseMatrix<F>>> = vec![None; n];
        for (si, subset) in src_subsets.iter().enumerate() {
            for (pos, &j) in subset.iter().enumerate() {
                let mut smaller = subset.clone();
                smaller.remove(pos);
                let sign = pos % 2 == 0;
                let ti = tgt_pos[&smaller];
                let cj = match &comm[j - 1] {
                    Some(c) => c.clone(),
                    None => {
                        let c = self.commutator_slice(m, j, d)?;
                        comm[j - 1] = Some(c.clone());
                        c
                    }
                };
                for r in 0..cj.rows {
                    for (c, v) in cj.row(r) {
                        let val = if sign { v.clone() } else { v.neg() };
                        let row = ti * tdim + r;
                        let col = si * sdim + c;
                        let cur = out.get(row, col).add(&val);
                        out.set(row, col, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Partial-trace subquotient at internal degree d: the kernel (minus) or
    /// cokernel (plus) of x_n − X'_n on the slice.
    pub fn ptr_column(&self, m: &BSBimodule, plus: bool, d: i64) -> Result<Arc<ColumnData<F>>> {
        let key = (m.word().to_vec(), plus, d + m.shift());
        if let Some(hit) = self.ptr.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let n = self.n;
        let slice_dim = m.slice_dim(d);
        let data = if slice_dim == 0 {
            ColumnData {
                sq: Subquotient::from_subspace(SparseMatrix::zero(0, 0)),
                copies: 1,
                slice_dim,
            }
        } else if plus {
            let image = self.commutator_slice(m, n, d - 2)?;
            let z = SparseMatrix::identity(slice_dim);
            ColumnData { sq: Subquotient::new(z, &image), copies: 1, slice_dim }
        } else {
            let out = self.commutator_slice(m, n, d)?;
            let z = out.kernel_basis();
            let b = SparseMatrix::zero(z.rows, 0);
            ColumnData { sq: Subquotient::new(z, &b), copies: 1, slice_dim }
        };
        let arc = Arc::new(data);
        self.ptr.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }
}

/// Minimal internal degree present in a complex.
pub fn complex_min_degree(c: &SBComplex) -> Option<i64> {
    c.degrees()
        .flat_map(|t| c.summands_at(t).iter().map(|m| m.min_degree()))
        .min()
}

pub fn validate_cutoff(c: &SBComplex, cutoff: i64) -> Result<()> {
    if let Some(min) = complex_min_degree(c) {
        if cutoff < min {
            return Err(Error::CutoffTooLow { cutoff, min_degree: min });
        }
    }
    Ok(())
}

/// Apply a map block-diagonally across `copies` theta-blocks to columns of
/// `vecs` (stacked copies × map.cols rows).
pub fn block_diag_apply<F: Field>(
    map: &SparseMatrix<F>,
    copies: usize,
    vecs: &SparseMatrix<F>,
) -> SparseMatrix<F> {
    assert_eq!(vecs.rows, copies * map.cols);
    let mut triplets: Vec<(usize, usize, F)> = Vec::new();
    for k in 0..copies {
        for r in 0..map.rows {
            for (s, v) in map.row(r) {
                for c in 0..vecs.cols {
                    let x = vecs.get(k * map.cols + s, c);
                    if !x.is_zero() {
                        triplets.push((k * map.rows + r, c, v.mul(&x)));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(copies * map.rows, vecs.cols, &triplets)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All k-subsets of {1..n} as sorted vectors, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for j in start..=n {
            current.push(j);
            rec(j + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(1, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn commutator_slice_of_unit_is_zero() {
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let r = BSBimodule::unit(2, 0);
        let c = engine.commutator_slice(&r, 1, 0).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn koszul_up_squares_to_zero() {
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let b = BSBimodule::elementary(1, 2).unwrap();
        for d in [-1, 1, 3] {
            let d0 = engine.koszul_up_matrix(&b, 0, d).unwrap();
            let d1 = engine.koszul_up_matrix(&b, 1, d + 2).unwrap();
            assert!(d1.mul(&d0).is_zero(), "κ²≠0 at degree {d}");
        }
    }

    #[test]
    fn koszul_down_squares_to_zero() {
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let b = BSBimodule::elementary(1, 2).unwrap();
        for d in [-1, 1, 3] {
            let d2 = engine.koszul_down_matrix(&b, 2, d).unwrap();
            let d1 = engine.koszul_down_matrix(&b, 1, d + 2).unwrap();
            assert!(d1.mul(&d2).is_zero(), "∂²≠0 at degree {d}");
        }
    }

    #[test]
    fn hh0_of_elementary_at_low_degrees() {
        // HH^0(B_1) at n=2 is R·z with z in degree 1: dims 0,1,0,2 at d=−1,1,3? —
        // dims at d: dim R_{d−1} = 1 at d=1, 1 at 3? For n=2: dim R_2 = 2... z·R:
        // degree d part = R_{d−1}: d=1: 1, d=3: dim R_2 = 2? No: z·R free rank 1:
        // dim (zR)_d = dim R_{d−1}: R has two variables: dim R_2 = 2? No —
        // dim R_{2m} = m+1: R_2 has dim 2: x1, x2. So (zR)_3 = 2.
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let b = BSBimodule::elementary(1, 2).unwrap();
        let expected = [(-1, 0), (1, 1), (3, 2), (5, 3)];
        for (d, dim) in expected {
            let col = engine.koszul_up(&b, 0, d).unwrap();
            assert_eq!(col.sq.dim(), dim, "HH^0(B_1) at degree {d}");
        }
    }

    #[test]
    fn hh_top_of_elementary_matches_lemma() {
        // Raw column n of B_1 at n=2 = HH_0(B_1): generator in degree −1.
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let b = BSBimodule::elementary(1, 2).unwrap();
        let expected = [(-1, 1), (1, 2), (3, 3)];
        for (d, dim) in expected {
            let col = engine.koszul_up(&b, 2, d).unwrap();
            assert_eq!(col.sq.dim(), dim, "raw column 2 of B_1 at degree {d}");
        }
        // And the independent homological route at k=0 agrees degreewise.
        for (d, dim) in expected {
            let col = engine.koszul_down(&b, 0, d).unwrap();
            assert_eq!(col.sq.dim(), dim, "down column 0 of B_1 at degree {d}");
        }
    }

    #[test]
    fn ptr_of_elementary() {
        // π⁻(B_{n−1}) has generator degree +1, π⁺ generator degree −1.
        let engine: SliceEngine<Rat> = SliceEngine::new(2, FieldMode::Q);
        let b = BSBimodule::elementary(1, 2).unwrap();
        let minus_expected = [(-1, 0), (1, 1), (3, 2)];
        for (d, dim) in minus_expected {
            let col = engine.ptr_column(&b, false, d).unwrap();
            assert_eq!(col.sq.dim(), dim, "π⁻(B_1) at degree {d}");
        }
        let plus_expected = [(-1, 1), (1, 2), (3, 3)];
        for (d, dim) in plus_expected {
            let col = engine.ptr_column(&b, true, d).unwrap();
            assert_eq!(col.sq.dim(), dim, "π⁺(B_1) at degree {d}");
        }
    }
}
