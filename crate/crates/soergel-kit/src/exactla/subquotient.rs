use super::scalar::Field;
use super::sparse::SparseMatrix;

/// A subquotient Z/B of an ambient coordinate space, with explicit bases so
/// that maps induced on homology can be computed: Z is given by a spanning
/// matrix of independent columns, B by vectors known to lie inside Z.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    pub ambient: usize,
    /// Basis of Z as columns (ambient × zdim).
    z_basis: SparseMatrix<F>,
    /// Row-echelon reducers spanning B in Z-coordinates: (pivot index, row).
    reducers: Vec<(usize, Vec<(usize, F)>)>,
    /// Z-coordinate indices surviving to H-coordinates.
    free: Vec<usize>,
}

impl<F: Field> Subquotient<F> {
    /// Build from a kernel basis `z` and a matrix `b` of ambient vectors that
    /// lie in the span of `z` (b = boundaries). Panics if they do not.
    pub fn new(z: SparseMatrix<F>, b: &SparseMatrix<F>) -> Self {
        let ambient = z.rows;
        let zdim = z.cols;
        let b_in_z = if b.cols == 0 || b.is_zero() {
            SparseMatrix::zero(zdim, 0)
        } else {
            z.solve_batch(b).expect("boundaries must lie inside cycles")
        };
        // Row space of b_in_zᵀ = column space of b_in_z, in echelon form.
        let (rref, pivots) = b_in_z.transpose().rref();
        let mut reducers = Vec::with_capacity(pivots.len());
        for (r, &p) in pivots.iter().enumerate() {
            reducers.push((p, rref.row(r).to_vec()));
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..zdim).filter(|i| !pivot_set.contains(i)).collect();
        Subquotient { ambient, z_basis: z, reducers, free }
    }

    /// Subquotient with B = 0 (a plain subspace).
    pub fn from_subspace(z: SparseMatrix<F>) -> Self {
        let b = SparseMatrix::zero(z.rows, 0);
        Self::new(z, &b)
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn z_dim(&self) -> usize {
        self.z_basis.cols
    }

    /// Ambient representatives of the H-basis (one column per H generator).
    pub fn representatives(&self) -> SparseMatrix<F> {
        self.z_basis.select_columns(&self.free)
    }

    /// Express ambient vectors (columns) as H-coordinates. Panics if a vector
    /// is not a cycle (outside span Z).
    pub fn project(&self, vectors: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(vectors.rows, self.ambient);
        if self.dim() == 0 || vectors.cols == 0 {
            return SparseMatrix::zero(self.dim(), vectors.cols);
        }
        let coords = self
            .z_basis
            .solve_batch(vectors)
            .expect("vector expected to be a cycle");
        // Reduce modulo B, then restrict to free coordinates.
        let mut triplets = Vec::new();
        for c in 0..coords.cols {
            let mut col: Vec<(usize, F)> = (0..coords.rows)
                .filter_map(|r| {
                    let v = coords.get(r, c);
                    (!v.is_zero()).then_some((r, v))
                })
                .collect();
            for (p, red) in &self.reducers {
                if let Ok(pos) = col.binary_search_by_key(p, |&(j, _)| j) {
                    let factor = col[pos].1.clone();
                    col = sub_scaled(&col, red, &factor);
                }
            }
            for (j, v) in col {
                let hi = self.free.binary_search(&j).expect("reduced vector supported on free coords");
                triplets.push((hi, c, v));
            }
        }
        SparseMatrix::from_triplets(self.dim(), vectors.cols, &triplets)
    }

    /// Matrix of a map H_self → H_target induced by `ambient_map` (which must
    /// send Z into Z and B into B).
    pub fn induced_map(
        &self,
        target: &Subquotient<F>,
        ambient_map: &SparseMatrix<F>,
    ) -> SparseMatrix<F> {
        let reps = self.representatives();
        let image = ambient_map.mul(&reps);
        target.project(&image)
    }
}

fn sub_scaled<F: Field>(a: &[(usize, F)], b: &[(usize, F)], factor: &F) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = factor.mul(&b[j].1).neg();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub(&factor.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rat;

    fn q(v: i64) -> Rat {
        <Rat as Field>::from_i64(v)
    }

    #[test]
    fn quotient_of_plane_by_line() {
        // Z = ℚ² inside ℚ³ (first two coords), B = span{(1,1,0)}.
        let z = SparseMatrix::from_triplets(3, 2, &[(0, 0, q(1)), (1, 1, q(1))]);
        let b = SparseMatrix::from_triplets(3, 1, &[(0, 0, q(1)), (1, 0, q(1))]);
        let sq = Subquotient::new(z, &b);
        assert_eq!(sq.dim(), 1);
        // (1,0,0) and (0,−1,0) represent the same class up to sign.
        let v1 = SparseMatrix::from_triplets(3, 1, &[(0, 0, q(1))]);
        let v2 = SparseMatrix::from_triplets(3, 1, &[(1, 0, q(-1))]);
        assert_eq!(sq.project(&v1), sq.project(&v2));
    }

    #[test]
    fn induced_identity() {
        let z = SparseMatrix::from_triplets(2, 2, &[(0, 0, q(1)), (1, 1, q(1))]);
        let sq = Subquotient::from_subspace(z);
        let id = SparseMatrix::identity(2);
        let m = sq.induced_map(&sq, &id);
        assert_eq!(m, SparseMatrix::identity(2));
    }
}
