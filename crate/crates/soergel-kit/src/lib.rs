//! Exact-arithmetic engine for the type-A Hecke category.
//!
//! The crate is organized in layers:
//!
//! * [`exactla`] — sparse exact linear algebra over ℚ (or a prime field) and
//!   homology of finite graded chain complexes.
//! * [`hecke`] — symmetric group combinatorics, the Hecke algebra in Soergel's
//!   conventions, partial traces and the Jones-Ocneanu trace / HOMFLY-PT.
//! * [`bimod`] — the graded polynomial ring R = k[x_1..x_n] and Bott-Samelson
//!   bimodules with explicit right-action matrices and structure maps.
//! * [`rouquier`] — bounded complexes of Bott-Samelson bimodules, the braid
//!   compiler, distinguished chain maps and Gaussian-elimination reduction.
//! * [`invariants`] — Hochschild (co)homology by Koszul slicing, triply graded
//!   homology tables, partial-trace functors on complexes and the duality
//!   verification checks.

pub mod bimod;
pub mod exactla;
pub mod hecke;
pub mod invariants;
pub mod rouquier;

use thiserror::Error;

/// Engine-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("chain condition d²=0 violated at homological degree {0}")]
    ChainConditionViolated(i64),
    #[error("cutoff {cutoff} too low: data starts at degree {min_degree}")]
    CutoffTooLow { cutoff: i64, min_degree: i64 },
    #[error("table is not free below cutoff: negative coefficient {coeff} at degree {degree}")]
    NotFreeBelowCutoff { degree: i64, coeff: i64 },
    #[error("parse error at token {token}: {message}")]
    ParseError { token: usize, message: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("bad prime {prime}: {message}")]
    BadPrime { prime: u64, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
