use std::collections::BTreeMap;

use super::scalar::Field;

/// Sparse matrix over an exact field, row-major, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i].push((i, F::one()));
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, F)]) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(*r < rows && *c < cols, "triplet out of bounds");
            if v.is_zero() {
                continue;
            }
            let entry = acc[*r].entry(*c).or_insert_with(F::zero);
            *entry = entry.add(v);
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |&(j, _)| j) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (c, v));
                }
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.data[r].binary_search_by_key(&c, |&(j, _)| j) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut out = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(F::zero);
                    *e = e.add(&a.mul(b));
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = self.data.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (j, v) in row {
                data[i].push((self.cols + j, v.clone()));
            }
        }
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let index: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(j, v)| index.get(j).map(|&nj| (nj, v.clone())))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: keep.len(), data }
    }

    /// Reduced row echelon form together with the pivot columns, computed by
    /// exact elimination with a Markowitz-style pivot heuristic (pick sparse
    /// columns first, then the sparsest row; deterministic tie-breaks).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows: Vec<Vec<(usize, F)>> = self.data.clone();
        let nrows = rows.len();
        let mut col_count: Vec<usize> = vec![0; self.cols];
        for row in &rows {
            for (j, _) in row {
                col_count[*j] += 1;
            }
        }
        let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut used_col: Vec<bool> = vec![false; self.cols];

        loop {
            // Pivot column: fewest active nonzeros among unused columns.
            let mut best_col: Option<(usize, usize)> = None;
            for j in 0..self.cols {
                if used_col[j] || col_count[j] == 0 {
                    continue;
                }
                if best_col.map_or(true, |(c, _)| col_count[j] < c) {
                    best_col = Some((col_count[j], j));
                }
            }
            let Some((_, pc)) = best_col else { break };
            // Pivot row: sparsest active row with a nonzero in that column.
            let mut best_row: Option<(usize, usize)> = None;
            for i in 0..nrows {
                if !active[i] {
                    continue;
                }
                if rows[i].binary_search_by_key(&pc, |&(j, _)| j).is_ok()
                    && best_row.map_or(true, |(len, _)| rows[i].len() < len)
                {
                    best_row = Some((rows[i].len(), i));
                }
            }
            let (_, pr) = best_row.expect("column count said a nonzero exists");
            // Normalize the pivot row.
            let pidx = rows[pr].binary_search_by_key(&pc, |&(j, _)| j).unwrap();
            let pval = rows[pr][pidx].1.clone();
            let pinv = pval.inv();
            for (_, v) in rows[pr].iter_mut() {
                *v = v.mul(&pinv);
            }
            // Eliminate the pivot column from every other active row.
            let pivot_row = rows[pr].clone();
            for i in 0..nrows {
                if i == pr || !active[i] {
                    continue;
                }
                if let Ok(pos) = rows[i].binary_search_by_key(&pc, |&(j, _)| j) {
                    let factor = rows[i][pos].1.clone();
                    for (j, _) in &rows[i] {
                        col_count[*j] -= 1;
                    }
                    rows[i] = row_sub_scaled(&rows[i], &pivot_row, &factor);
                    for (j, _) in &rows[i] {
                        col_count[*j] += 1;
                    }
                    if rows[i].is_empty() {
                        active[i] = false;
                    }
                }
            }
            active[pr] = false; // retire from pivot search, keep for output
            for (j, _) in &rows[pr] {
                col_count[*j] -= 1;
            }
            used_col[pc] = true;
            pivots.push((pr, pc));
        }

        // Back-substitute: clear pivot columns from earlier pivot rows.
        pivots.sort_by_key(|&(_, c)| c);
        for k in 0..pivots.len() {
            let (_, pc) = pivots[k];
            let reducer = rows[pivots[k].0].clone();
            for &(r2, _) in pivots.iter().take(k) {
                if let Ok(pos) = rows[r2].binary_search_by_key(&pc, |&(j, _)| j) {
                    let factor = rows[r2][pos].1.clone();
                    rows[r2] = row_sub_scaled(&rows[r2], &reducer, &factor);
                }
            }
        }

        let mut out = Vec::with_capacity(pivots.len());
        for &(r, _) in &pivots {
            out.push(std::mem::take(&mut rows[r]));
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        (SparseMatrix { rows: out.len(), cols: self.cols, data: out }, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the kernel; count = cols − rank.
    pub fn kernel_basis(&self) -> Self {
        let (rref, pivot_cols) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let free_cols: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut triplets: Vec<(usize, usize, F)> = Vec::new();
        for (k, &fc) in free_cols.iter().enumerate() {
            triplets.push((fc, k, F::one()));
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let v = rref.get(r, fc);
                if !v.is_zero() {
                    triplets.push((pc, k, v.neg()));
                }
            }
        }
        Self::from_triplets(self.cols, free_cols.len(), &triplets)
    }

    /// Solve `self · X = rhs` for all columns at once. Returns `None` when any
    /// column of `rhs` lies outside the column span of `self`. When `self` has
    /// full column rank the solution is unique.
    pub fn solve_batch(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        let aug = self.hcat(rhs);
        let (rref, pivot_cols) = aug.rref();
        // Any pivot beyond self.cols means an inconsistent column.
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        if pivot_cols.len() < self.cols {
            // Underdetermined: free columns of self get coordinate zero.
        }
        let mut triplets = Vec::new();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            for (j, v) in rref.row(r) {
                if *j >= self.cols {
                    triplets.push((pc, *j - self.cols, v.clone()));
                }
            }
        }
        Some(Self::from_triplets(self.cols, rhs.cols, &triplets))
    }
}

fn row_sub_scaled<F: Field>(
    row: &[(usize, F)],
    pivot: &[(usize, F)],
    factor: &F,
) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < pivot.len() {
        if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            let v = factor.mul(&pivot[j].1).neg();
            if !v.is_zero() {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = row[i].1.sub(&factor.mul(&pivot[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reusable exact solver for a fixed full-column-rank matrix.
pub struct ColumnSolver<F: Field> {
    matrix: SparseMatrix<F>,
}

impl<F: Field> ColumnSolver<F> {
    pub fn new(matrix: SparseMatrix<F>) -> Self {
        ColumnSolver { matrix }
    }
    pub fn matrix(&self) -> &SparseMatrix<F> {
        &self.matrix
    }
    pub fn solve(&self, rhs: &SparseMatrix<F>) -> Option<SparseMatrix<F>> {
        self.matrix.solve_batch(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Fp, Rat};

    fn q(v: i64) -> Rat {
        <Rat as Field>::from_i64(v)
    }

    #[test]
    fn rank_zero_matrix() {
        let m: SparseMatrix<Rat> = SparseMatrix::zero(3, 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn rank_identity() {
        let m: SparseMatrix<Rat> = SparseMatrix::identity(4);
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn rank_dependent_rows() {
        // [[1,2],[2,4]] has rank 1 by hand row-reduction.
        let m = SparseMatrix::from_triplets(
            2,
            2,
            &[(0, 0, q(1)), (0, 1, q(2)), (1, 0, q(2)), (1, 1, q(4))],
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_identity_empty() {
        let m: SparseMatrix<Rat> = SparseMatrix::identity(3);
        assert_eq!(m.kernel_basis().cols, 0);
    }

    #[test]
    fn kernel_zero_map() {
        let m: SparseMatrix<Rat> = SparseMatrix::zero(1, 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn kernel_row_vector() {
        // [[1,1]] -> kernel spanned by (1,−1) up to scale.
        let m = SparseMatrix::from_triplets(1, 2, &[(0, 0, q(1)), (0, 1, q(1))]);
        let k = m.kernel_basis();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
        let a = k.get(0, 0);
        let b = k.get(1, 0);
        assert_eq!(a, b.neg());
        assert!(!a.is_zero());
    }

    #[test]
    fn kernel_product_vanishes_and_rank_counts() {
        let m = SparseMatrix::from_triplets(
            3,
            4,
            &[
                (0, 0, q(1)),
                (0, 2, q(-1)),
                (1, 1, q(2)),
                (1, 3, q(4)),
                (2, 0, q(1)),
                (2, 1, q(2)),
                (2, 2, q(-1)),
                (2, 3, q(4)),
            ],
        );
        let k = m.kernel_basis();
        assert!(m.mul(&k).is_zero());
        assert_eq!(k.cols, m.cols - m.rank());
    }

    #[test]
    fn solve_batch_roundtrip() {
        let a = SparseMatrix::from_triplets(
            3,
            2,
            &[(0, 0, q(1)), (1, 0, q(2)), (1, 1, q(1)), (2, 1, q(3))],
        );
        let x = SparseMatrix::from_triplets(2, 2, &[(0, 0, q(5)), (1, 0, q(-1)), (1, 1, q(7))]);
        let b = a.mul(&x);
        let solved = a.solve_batch(&b).unwrap();
        assert_eq!(solved, x);
        // Inconsistent rhs is rejected.
        let bad = SparseMatrix::from_triplets(3, 1, &[(0, 0, q(1)), (2, 0, q(1)), (1, 0, q(100))]);
        let sol = a.solve_batch(&bad);
        if let Some(s) = sol {
            assert_ne!(a.mul(&s), bad);
        }
    }

    #[test]
    fn rank_agrees_over_fp() {
        let m = SparseMatrix::from_triplets(
            3,
            3,
            &[
                (0, 0, q(2)),
                (0, 1, q(4)),
                (1, 1, q(3)),
                (1, 2, q(6)),
                (2, 0, q(2)),
                (2, 1, q(7)),
                (2, 2, q(6)),
            ],
        );
        let p = 1_000_000_007u64;
        let triplets: Vec<(usize, usize, Fp)> = (0..3)
            .flat_map(|r| m.row(r).iter().map(move |(c, v)| (r, *c, super::super::scalar::fp_from_rat(v, p).unwrap())))
            .collect();
        let mp = SparseMatrix::from_triplets(3, 3, &triplets);
        assert_eq!(m.rank(), mp.rank());
    }
}
