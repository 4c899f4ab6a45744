use std::collections::BTreeMap;

use serde::Serialize;

use crate::bimod::dim_r;
use crate::{Error, Result};

/// Triply graded dimension table: (a-degree, homological degree, internal
/// degree) ↦ dimension, exact for internal degrees ≤ cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareTable {
    pub n: usize,
    pub cutoff: i64,
    pub entries: BTreeMap<(i64, i64, i64), usize>,
}

impl PoincareTable {
    pub fn new(n: usize, cutoff: i64) -> Self {
        PoincareTable { n, cutoff, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, a: i64, t: i64, d: i64, dim: usize) {
        if dim > 0 {
            self.entries.insert((a, t, d), dim);
        }
    }

    pub fn get(&self, a: i64, t: i64, d: i64) -> usize {
        self.entries.get(&(a, t, d)).copied().unwrap_or(0)
    }

    /// Single a-column as a graded table.
    pub fn column(&self, a: i64) -> GradedTable {
        let mut out = GradedTable::new(self.cutoff);
        for (&(ka, t, d), &dim) in &self.entries {
            if ka == a {
                out.insert(t, d, dim);
            }
        }
        out
    }

    /// Canonical JSON representation: keys "a:t:d".
    pub fn to_json_map(&self) -> BTreeMap<String, usize> {
        self.entries.iter().map(|(&(a, t, d), &v)| (format!("{a}:{t}:{d}"), v)).collect()
    }
}

/// Doubly graded table (homological degree, internal degree) ↦ dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedTable {
    pub cutoff: i64,
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl GradedTable {
    pub fn new(cutoff: i64) -> Self {
        GradedTable { cutoff, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, t: i64, d: i64, dim: usize) {
        if dim > 0 {
            self.entries.insert((t, d), dim);
        }
    }

    pub fn get(&self, t: i64, d: i64) -> usize {
        self.entries.get(&(t, d)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with (t, d) shifted by the given offsets; cutoff adjusted by
    /// the degree offset so exactness windows stay honest.
    pub fn shifted(&self, dt: i64, dd: i64) -> GradedTable {
        let entries = self.entries.iter().map(|(&(t, d), &v)| ((t + dt, d + dd), v)).collect();
        GradedTable { cutoff: self.cutoff + dd, entries }
    }

    pub fn to_json_map(&self) -> BTreeMap<String, usize> {
        self.entries.iter().map(|(&(t, d), &v)| (format!("{t}:{d}"), v)).collect()
    }

    /// Cellwise equality below the shared exactness window; returns the
    /// per-cell comparison map.
    pub fn compare(&self, other: &GradedTable) -> (BTreeMap<String, bool>, bool) {
        let window = self.cutoff.min(other.cutoff);
        let mut cells = BTreeMap::new();
        let mut pass = true;
        let keys: std::collections::BTreeSet<(i64, i64)> =
            self.entries.keys().chain(other.entries.keys()).copied().collect();
        for (t, d) in keys {
            if d > window {
                continue;
            }
            let ok = self.get(t, d) == other.get(t, d);
            pass &= ok;
            cells.insert(format!("{t}:{d}"), ok);
        }
        (cells, pass)
    }
}

/// The graded dimension table of a free rank-1 module R⟨gen degree g⟩ at
/// homological degree t0, up to the cutoff.
pub fn free_module_table(n: usize, gen_degree: i64, t0: i64, cutoff: i64) -> GradedTable {
    let mut out = GradedTable::new(cutoff);
    let mut d = gen_degree;
    while d <= cutoff {
        let dim = dim_r(n, d - gen_degree);
        out.insert(t0, d, dim);
        d += 2;
    }
    out
}

/// Graded rank of a free module from its dimension table: multiplies the
/// generating function by (1 − q²)^n (the inverse Hilbert series of R with
/// deg x = 2, q tracking internal degree) and reads off generator degrees.
/// Fails with NotFreeBelowCutoff if a negative coefficient appears in the
/// safe window d ≤ cutoff − 2n.
pub fn free_rank_extract(
    table: &BTreeMap<i64, usize>,
    n: usize,
    cutoff: i64,
) -> Result<Vec<(i64, usize)>> {
    let window = cutoff - 2 * n as i64;
    let min_d = match table.keys().next() {
        None => return Ok(vec![]),
        Some(&d) => d,
    };
    let mut out = Vec::new();
    let mut d = min_d;
    while d <= window {
        let mut coeff: i64 = 0;
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = super::slice::binomial(n, k) as i64;
            let v = table.get(&(d - 2 * k as i64)).copied().unwrap_or(0) as i64;
            coeff += sign * c * v;
        }
        if coeff < 0 {
            return Err(Error::NotFreeBelowCutoff { degree: d, coeff });
        }
        if coeff > 0 {
            out.push((d, coeff as usize));
        }
        d += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_rank_of_r_itself() {
        // Table of R: dims of R per degree → graded rank 1.
        let n = 2;
        let cutoff = 12;
        let table: BTreeMap<i64, usize> =
            (0..=cutoff).filter_map(|d| (dim_r(n, d) > 0).then_some((d, dim_r(n, d)))).collect();
        let ranks = free_rank_extract(&table, n, cutoff).unwrap();
        assert_eq!(ranks, vec![(0, 1)]);
    }

    #[test]
    fn free_rank_of_shifted_generator() {
        // R with generator in degree 1 (the HH⁰(B_1) table at n=2) → q^{+1}.
        let n = 2;
        let cutoff = 12;
        let table: BTreeMap<i64, usize> = (0..=cutoff)
            .filter_map(|d| (dim_r(n, d - 1) > 0).then_some((d, dim_r(n, d - 1))))
            .collect();
        let ranks = free_rank_extract(&table, n, cutoff).unwrap();
        assert_eq!(ranks, vec![(1, 1)]);
    }

    #[test]
    fn zero_table_has_zero_rank() {
        let table = BTreeMap::new();
        assert!(free_rank_extract(&table, 3, 14).unwrap().is_empty());
    }

    #[test]
    fn non_free_table_detected() {
        // A table that is too thin to be free: single 1 in degree 0.
        let mut table = BTreeMap::new();
        table.insert(0, 1usize);
        let err = free_rank_extract(&table, 1, 10);
        assert!(matches!(err, Err(Error::NotFreeBelowCutoff { .. })));
    }

    #[test]
    fn table_comparison_windows() {
        let mut a = GradedTable::new(10);
        let mut b = GradedTable::new(8);
        a.insert(0, 2, 1);
        b.insert(0, 2, 1);
        a.insert(0, 9, 5); // beyond b's window: ignored
        let (_, pass) = a.compare(&b);
        assert!(pass);
        b.insert(1, 4, 2);
        let (cells, pass) = a.compare(&b);
        assert!(!pass);
        assert_eq!(cells.get("1:4"), Some(&false));
    }
}
