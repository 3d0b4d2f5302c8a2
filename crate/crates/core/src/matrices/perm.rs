use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the three column positions, stored zero-based as the
/// images `[σ(0), σ(1), σ(2)]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Perm([usize; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);

    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// All six permutations, identity first.
    pub fn all() -> [Perm; 6] {
        [
            Perm([0, 1, 2]),
            Perm([0, 2, 1]),
            Perm([1, 0, 2]),
            Perm([1, 2, 0]),
            Perm([2, 0, 1]),
            Perm([2, 1, 0]),
        ]
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = [0; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Perm(inv)
    }

    /// Moves the entry at position `i` to position `σ(i)`.
    pub fn apply<T: Copy>(&self, e: [T; 3]) -> [T; 3] {
        let mut out = e;
        for i in 0..3 {
            out[self.0[i]] = e[i];
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}
