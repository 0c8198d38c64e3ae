//! `gl(2|2)` and its enveloping algebra: brackets, PBW normal ordering,
//! restricted roots and the Harish-Chandra projection.

mod algebra;
pub mod gl22;
mod pair;

pub use algebra::{matrix_unit, super_commutator, supertrace, unit_is_odd, Lin, PbwEngine, SuperAlgebra, SuperElt};
pub use pair::{a_basis, a_matrices, gl_units, restricted_roots, RestrictedRoot, RootData, SymmetricPair};

use crate::error::Result;

/// Superbracket of two named basis elements of `gl(2|2)`.
pub fn bracket(alg: &SuperAlgebra, a: &str, b: &str) -> Result<Lin> {
    let find = |l: &str| alg.index(l).ok_or_else(|| crate::Error::InvalidInput(format!("unknown label {l}")));
    Ok(alg.bracket(find(a)?, find(b)?).clone())
}

/// Normal orders `u` (given in `alg`'s basis) with respect to the basis
/// permutation `order`; the result is expressed in `alg`'s basis again.
pub fn normal_order(alg: &SuperAlgebra, u: &SuperElt, order: &[usize]) -> Result<SuperElt> {
    let reordered = alg.reorder(order)?;
    let mut inverse = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inverse[old] = new;
    }
    let mut eng = PbwEngine::new(reordered);
    Ok(eng.normal_order(&u.relabel(&inverse)).relabel(order))
}
