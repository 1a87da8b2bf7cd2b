//! Chain complexes over ℤ and F₂, Smith normal form, a cellular model of
//! unordered configuration spaces of ℝ^d, and Thom-space dimensions.

mod complex;
mod f2;
mod fox_neuwirth;
mod matrix;
mod snf;
mod thom;

pub use complex::{
    homology, ChainComplex, ChainComplexJson, Coefficients, DegreeJson, HomologyResult,
};
pub use f2::rank_mod2;
pub use fox_neuwirth::{
    config_complex, config_homology, fn_boundary, MAX_CONF_DIM, MAX_CONF_POINTS,
};
pub use matrix::{IntMatrix, SparseMatrix, SparseMatrixJson};
pub use snf::{invariant_factors, rank_over_q, smith_normal_form, SmithForm};
pub use thom::{monodromy_sign, orientable, thom_dims, ThomDims};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary of degree {degree} composed with the next boundary is not zero")]
    BoundaryNotClosed { degree: usize },
    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
