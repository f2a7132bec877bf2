//! Permutation polynomials over GF(2^t): field arithmetic, permutation
//! criteria, symbolic Hermite coefficients, equivalence classes and the
//! degree 6 and 7 classifiers.

pub mod classifier;
pub mod digitcomb;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod gf2t;
pub mod perm;
pub mod poly;
pub mod symbolic;

pub use error::{Error, Result};
pub use gf2t::{FieldCtx, GfElem};
pub use perm::{hermite_dickson_test, is_pp_exhaustive, PermFailure, PermVerdict};
pub use poly::FieldPoly;
pub use symbolic::{SymMonomial, SymPoly, Var};
