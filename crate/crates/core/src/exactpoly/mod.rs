//! Exact arithmetic: Gaussian-rational scalars, sparse polynomials and dense
//! matrices.

mod linalg;
mod poly;
mod scalar;

pub use linalg::{independent_subset, ExactMatrix, Rref};
pub use poly::{named_vars, xy_vars, Affine, ExactPoly, Exponent};
pub use scalar::Scalar;

use crate::error::Result;

pub fn poly_eval(f: &ExactPoly, point: &[Scalar]) -> Result<Scalar> {
    f.eval(point)
}

pub fn affine_substitute(f: &ExactPoly, subs: &[Affine], target_vars: &[String]) -> Result<ExactPoly> {
    f.affine_substitute(subs, target_vars)
}

pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.nullspace()
}
