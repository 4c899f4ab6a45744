use std::collections::BTreeMap;

use num::rational::BigRational;
use num::Zero;

use super::table::PoincareTable;
use crate::hecke::{jones_ocneanu_trace, BraidWord, LaurentRat};

/// Graded Euler characteristic of one a-column of a (tilde-normalized) table
/// as coefficients of u^d, u = v⁻¹:  Σ_{t,d} (−1)^t dim·u^d.
pub fn column_euler(table: &PoincareTable, a: i64) -> BTreeMap<i64, BigRational> {
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (&(ka, t, d), &dim) in &table.entries {
        if ka != a {
            continue;
        }
        let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
        let c = BigRational::from_integer((sign * dim as i64).into());
        let e = out.entry(d).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            out.remove(&d);
        }
    }
    out
}

/// Result of the Euler-characteristic cross-check: per a-degree, whether the
/// alternating sum of the table matches the Jones-Ocneanu trace coefficient
/// as a series in u = v⁻¹, coefficientwise for d ≤ cutoff.
pub fn euler_check(table: &PoincareTable, braid: &BraidWord) -> BTreeMap<i64, bool> {
    let trace = jones_ocneanu_trace(&braid.to_hecke());
    let mut out = BTreeMap::new();
    for a in 0..=table.n as i64 {
        let lhs = column_euler(table, a);
        let coeff: LaurentRat = trace.coeff(a);
        let rhs = coeff.series_in_u(table.cutoff);
        let mut ok = true;
        let keys: std::collections::BTreeSet<i64> =
            lhs.keys().chain(rhs.keys()).copied().collect();
        for d in keys {
            if d > table.cutoff {
                continue;
            }
            let l = lhs.get(&d).cloned().unwrap_or_else(BigRational::zero);
            let r = rhs.get(&d).cloned().unwrap_or_else(BigRational::zero);
            if l != r {
                ok = false;
            }
        }
        out.insert(a, ok);
    }
    out
}

pub fn euler_check_passes(table: &PoincareTable, braid: &BraidWord) -> bool {
    euler_check(table, braid).values().all(|&b| b)
}
