use num::rational::BigRational;
use num::Zero;

use super::poly::PolyR;

/// Dense matrix over the polynomial ring (ranks stay small: 2^k).
#[derive(Clone, PartialEq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    n: usize,
    entries: Vec<PolyR>,
}

impl std::fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMat {
    pub fn zero(rows: usize, cols: usize, n: usize) -> Self {
        PolyMat { rows, cols, n, entries: vec![PolyR::zero(n); rows * cols] }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        let mut m = Self::zero(size, size, n);
        for i in 0..size {
            m.set(i, i, PolyR::one(n));
        }
        m
    }

    pub fn scalar(size: usize, p: &PolyR) -> Self {
        let mut m = Self::zero(size, size, p.n());
        for i in 0..size {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &PolyR {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: PolyR) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PolyR::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        PolyMat { rows: self.rows, cols: self.cols, n: self.n, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            entries: self.entries.iter().map(PolyR::neg).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &PolyR) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul(p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "PolyMat shape mismatch");
        let mut out = Self::zero(self.rows, other.cols, self.n);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Constant part: entries with their non-constant monomials dropped.
    pub fn constant_part(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|p| PolyR::constant(self.n, p.constant_term()))
            .collect();
        PolyMat { rows: self.rows, cols: self.cols, n: self.n, entries }
    }

    /// Invert a square matrix whose constant part is invertible, by a finite
    /// Neumann series: f = f₀(I + f₀⁻¹N) with N of strictly positive degree,
    /// so (f₀⁻¹N)^j eventually vanishes in bounded degree.
    pub fn inverse_graded(&self) -> Option<PolyMat> {
        assert_eq!(self.rows, self.cols);
        let f0 = self.constant_part();
        let f0_inv = invert_scalar_matrix(&f0)?;
        let nmat = self.sub(&f0);
        if nmat.is_zero() {
            return Some(f0_inv);
        }
        let a = f0_inv.mul(&nmat); // strictly positive degree entries
        let mut acc = PolyMat::identity(self.rows, self.n);
        let mut power = a.clone();
        let mut sign = true; // next term is −power
        for _ in 0..64 {
            if power.is_zero() {
                break;
            }
            acc = if sign { acc.sub(&power) } else { acc.add(&power) };
            power = power.mul(&a);
            sign = !sign;
        }
        assert!(power.is_zero(), "graded Neumann series did not terminate");
        Some(acc.mul(&f0_inv))
    }
}

/// Invert a matrix of constants (entries constant polynomials).
fn invert_scalar_matrix(m: &PolyMat) -> Option<PolyMat> {
    let size = m.rows;
    let n = m.n();
    let mut a: Vec<Vec<BigRational>> =
        (0..size).map(|r| (0..size).map(|c| m.get(r, c).constant_term()).collect()).collect();
    let mut inv: Vec<Vec<BigRational>> = (0..size)
        .map(|r| (0..size).map(|c| if r == c { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        let pinv = p.recip();
        for c in 0..size {
            a[col][c] = &a[col][c] * &pinv;
            inv[col][c] = &inv[col][c] * &pinv;
        }
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..size {
                let t = &a[r][c] - &(&factor * &a[col][c]);
                a[r][c] = t;
                let t2 = &inv[r][c] - &(&factor * &inv[col][c]);
                inv[r][c] = t2;
            }
        }
    }
    let mut out = PolyMat::zero(size, size, n);
    for r in 0..size {
        for c in 0..size {
            out.set(r, c, PolyR::constant(n, inv[r][c].clone()));
        }
    }
    Some(out)
}

/// Evaluate a polynomial at commuting square matrices (one per variable).
pub fn eval_poly_at(p: &PolyR, mats: &[PolyMat], size: usize) -> PolyMat {
    let n = p.n();
    assert_eq!(mats.len(), n);
    let mut out = PolyMat::zero(size, size, n);
    for (exp, coeff) in p.terms() {
        let mut term = PolyMat::identity(size, n).scale(coeff);
        for (j, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&mats[j]);
            }
        }
        out = out.add(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_inverse() {
        let n = 2;
        let x1 = PolyR::var(1, n);
        // [[1, x1],[0, 1]] inverts to [[1, −x1],[0, 1]].
        let mut m = PolyMat::identity(2, n);
        m.set(0, 1, x1.clone());
        let inv = m.inverse_graded().unwrap();
        assert_eq!(m.mul(&inv), PolyMat::identity(2, n));
        assert_eq!(inv.mul(&m), PolyMat::identity(2, n));
        // Singular constant part has no inverse.
        let mut s = PolyMat::zero(2, 2, n);
        s.set(0, 0, x1);
        assert!(s.inverse_graded().is_none());
    }

    #[test]
    fn eval_at_matrices() {
        let n = 2;
        let p = PolyR::var(1, n).mul(&PolyR::var(2, n)); // x1·x2
        let a = PolyMat::scalar(2, &PolyR::var(1, n));
        let b = PolyMat::scalar(2, &PolyR::var(2, n));
        let e = eval_poly_at(&p, &[a, b], 2);
        assert_eq!(e, PolyMat::scalar(2, &p));
    }
}
