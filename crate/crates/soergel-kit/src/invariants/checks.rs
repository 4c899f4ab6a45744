use std::collections::BTreeMap;

use serde::Serialize;

use super::hh::{hh0_complex, hh_column, hh_top_complex};
use super::ptr::ptr_complex;
use super::slice::SliceRequest;
use super::table::{free_rank_extract, GradedTable};
use crate::bimod::BSBimodule;
use crate::hecke::{ft, jm, BraidWord};
use crate::rouquier::{braid_to_complex_reduced, gaussian_eliminate, SBComplex};
use crate::Result;

/// The grading dictionary printed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub q_tracks: &'static str,
    pub v_dictionary: &'static str,
    pub twist: &'static str,
    pub a_normalization: &'static str,
}

impl Conventions {
    pub fn standard() -> Self {
        Conventions {
            q_tracks: "q^d marks internal degree d; deg x_i = 2",
            v_dictionary: "v = u^{-1} with u^d marking internal degree d; Hecke q = v^{-2} = u^2",
            twist: "(1) is the downshift: M(1)_d = M_{d+1}; B_i = R⊗R(1) has basis degrees {-1,+1}",
            a_normalization: "a-column k carries the normalized table of HH^k(-2k)",
        }
    }
}

/// Machine-readable verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub check: String,
    pub n: usize,
    pub cutoff: i64,
    pub field: String,
    pub conventions: Conventions,
    pub tables: BTreeMap<String, BTreeMap<String, usize>>,
    pub comparisons: BTreeMap<String, bool>,
    pub pass: bool,
}

impl CheckReport {
    fn new(check: &str, n: usize, req: &SliceRequest) -> Self {
        CheckReport {
            schema: "soergel-kit/1",
            check: check.to_string(),
            n,
            cutoff: req.cutoff,
            field: req.field.to_string(),
            conventions: Conventions::standard(),
            tables: BTreeMap::new(),
            comparisons: BTreeMap::new(),
            pass: true,
        }
    }

    fn add_table(&mut self, name: &str, t: &GradedTable) {
        self.tables.insert(name.to_string(), t.to_json_map());
    }

    fn add_comparison(&mut self, label: &str, cells: BTreeMap<String, bool>, pass: bool) {
        for (k, v) in cells {
            self.comparisons.insert(format!("{label}/{k}"), v);
        }
        self.pass &= pass;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Serre duality specialization: HH⁰(X) ≃ HH₀(FT ⊗ X) as tables, for
/// X = F(β).
pub fn check_serre(beta: &BraidWord, req: &SliceRequest) -> Result<CheckReport> {
    let n = beta.n();
    let mut report = CheckReport::new("serre", n, req);
    let x = braid_to_complex_reduced(beta)?;
    let lhs = hh0_complex(&x, req)?;
    let ft_beta = ft(n).concat(beta)?;
    let ftx = braid_to_complex_reduced(&ft_beta)?;
    let rhs = hh_top_complex(&ftx, req)?;
    report.add_table("hh0(F(beta))", &lhs);
    report.add_table("hh_bottom(F(ft.beta))", &rhs);
    let (cells, pass) = lhs.compare(&rhs);
    report.add_comparison("serre", cells, pass);
    Ok(report)
}

/// Top/bottom symmetry: a=0 column of F(β) equals the a=n column of
/// F(β·FT) (the (−2n) twist is built into the normalized tables).
pub fn check_kalman_cat(beta: &BraidWord, req: &SliceRequest) -> Result<CheckReport> {
    let n = beta.n();
    let mut report = CheckReport::new("kalman-cat", n, req);
    let x = braid_to_complex_reduced(beta)?;
    let bottom = hh_column(&x, 0, req)?;
    let beta_ft = beta.concat(&ft(n))?;
    let xft = braid_to_complex_reduced(&beta_ft)?;
    let top = hh_column(&xft, n, req)?;
    report.add_table("hhh_a0(F(beta))", &bottom);
    report.add_table("hhh_an(F(beta.ft))", &top);
    let (cells, pass) = bottom.compare(&top);
    report.add_comparison("kalman-cat", cells, pass);
    Ok(report)
}

/// Relative Serre duality: π⁻(X) ≃ π⁺(L_n ⊗ X) ≃ π⁺(X ⊗ L_n), all three
/// tables compared cellwise.
pub fn check_relative_serre(x: &SBComplex, req: &SliceRequest) -> Result<CheckReport> {
    let n = x.n();
    let mut report = CheckReport::new("relative-serre", n, req);
    let ln = braid_to_complex_reduced(&jm(n))?;
    let minus = ptr_complex(x, false, req)?;
    let left = gaussian_eliminate(&ln.tensor(x)?)?;
    let right = gaussian_eliminate(&x.tensor(&ln)?)?;
    let plus_left = ptr_complex(&left, true, req)?;
    let plus_right = ptr_complex(&right, true, req)?;
    report.add_table("ptr_minus(X)", &minus);
    report.add_table("ptr_plus(Ln.X)", &plus_left);
    report.add_table("ptr_plus(X.Ln)", &plus_right);
    let (cells_l, pass_l) = minus.compare(&plus_left);
    report.add_comparison("left", cells_l, pass_l);
    let (cells_r, pass_r) = minus.compare(&plus_right);
    report.add_comparison("right", cells_r, pass_r);
    Ok(report)
}

/// Hochschild duality for a Bott-Samelson word M: the normalized column k of
/// M equals the graded dual (degree-negated, via freeness) of the normalized
/// column n−k of M^∨.
pub fn check_hh_duality_word(word: &[usize], n: usize, req: &SliceRequest) -> Result<CheckReport> {
    let mut report = CheckReport::new("duality", n, req);
    let m = BSBimodule::from_word(n, word, 0)?;
    let c = one_term_complex(&m);
    let cd = one_term_complex(&m.dual());
    for k in 0..=n {
        let t1 = hh_column(&c, k, req)?;
        let t2 = hh_column(&cd, n - k, req)?;
        report.add_table(&format!("hh{k}(M)"), &t1);
        report.add_table(&format!("hh{}(Mdual)", n - k), &t2);
        let (cells, pass) = compare_with_graded_dual(&t1, &t2, n, req.cutoff)?;
        report.add_comparison(&format!("k={k}"), cells, pass);
    }
    Ok(report)
}

/// Hochschild duality for braids: column k of F(β) against the graded dual
/// of column n−k of F(β⁻¹), with homological degree negated as well.
pub fn check_hh_duality_braid(beta: &BraidWord, req: &SliceRequest) -> Result<CheckReport> {
    let n = beta.n();
    let mut report = CheckReport::new("duality", n, req);
    let c = braid_to_complex_reduced(beta)?;
    let cd = braid_to_complex_reduced(&beta.inverse())?;
    for k in 0..=n {
        let t1 = hh_column(&c, k, req)?;
        let t2 = hh_column(&cd, n - k, req)?;
        let (cells, pass) = compare_with_graded_dual(&t1, &t2, n, req.cutoff)?;
        report.add_comparison(&format!("k={k}"), cells, pass);
    }
    Ok(report)
}

pub(crate) fn one_term_complex(m: &BSBimodule) -> SBComplex {
    let mut summands = BTreeMap::new();
    summands.insert(0, vec![m.clone()]);
    SBComplex::from_parts(m.n(), summands, BTreeMap::new())
}

/// Compare t1 against the graded dual of t2: per homological degree, extract
/// free generator degrees of t2's column at −t, negate them, and re-expand
/// into a dimension table. Comparison happens inside the safe free-extraction
/// window on both sides.
fn compare_with_graded_dual(
    t1: &GradedTable,
    t2: &GradedTable,
    n: usize,
    cutoff: i64,
) -> Result<(BTreeMap<String, bool>, bool)> {
    let window = cutoff - 2 * n as i64;
    // Group t2 by homological degree.
    let mut per_t: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
    for (&(t, d), &dim) in &t2.entries {
        per_t.entry(t).or_default().insert(d, dim);
    }
    let mut dual_expanded = GradedTable::new(window);
    for (t, col) in per_t {
        let gens = free_rank_extract(&col, n, cutoff)?;
        for (g, mult) in gens {
            // dual generator at degree −g, homological degree −t
            let mut d = -g;
            while d <= window {
                let dim = crate::bimod::dim_r(n, d + g) * mult;
                if dim > 0 {
                    let cur = dual_expanded.get(-t, d);
                    dual_expanded.insert(-t, d, cur + dim);
                }
                d += 2;
            }
        }
    }
    let mut t1_window = GradedTable::new(window);
    for (&(t, d), &dim) in &t1.entries {
        if d <= window {
            t1_window.insert(t, d, dim);
        }
    }
    Ok(t1_window.compare(&dual_expanded))
}
