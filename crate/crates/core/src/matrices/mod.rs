//! Data model: tuples, triples, mutation words and the maps between them.

pub mod matm;
pub mod path;
pub mod perm;
pub mod triple;

pub use matm::{mutate_matrix, CyclicityClass, MatM};
pub use path::MutationPath;
pub use perm::Perm;
pub use triple::{Scalar, Triple};
