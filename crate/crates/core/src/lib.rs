//! Exact symbolic machinery for the super symmetric pair
//! `(gl(2p|2q), gl(p|q) ⊕ gl(p|q))` in its rank-`(p,q)` realization: hook
//! partitions, even supersymmetric polynomials, interpolation polynomials,
//! Harish-Chandra images of Shimura operators and Kac-module sphericity.

pub mod borel;
pub mod error;
pub mod exactpoly;
pub mod interp;
pub mod kacrep;
pub mod partitions;
pub mod shimura;
pub mod superlie;
pub mod susyring;
pub mod verify;

pub use error::{Error, Result};
pub use exactpoly::{ExactMatrix, ExactPoly, Scalar};
pub use partitions::{NaturalCoords, Partition, Profile};
