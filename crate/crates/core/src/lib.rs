//! Exact mutation engine for rank-3 skew-symmetrizable matrices.
//!
//! A cyclic matrix is encoded as a tuple `(x y z / x' y' z')` ([`MatM`]) and its
//! double-sided skew-symmetrized form as a triple of surds ([`Triple`]). On top
//! of the γ maps this crate decides cluster-cyclicity, reduces orbits to their
//! minimal element, and enumerates minimal representatives by Markov constant.

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod matrices;
pub mod orbits;
pub mod search;
pub mod surd;

pub use error::{Error, Result};
pub use matrices::{CyclicityClass, MatM, MutationPath, Perm, Scalar, Triple};
pub use surd::Surd;
