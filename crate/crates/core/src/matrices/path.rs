use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over `{1, 2, 3}` with no two consecutive letters equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct MutationPath(Vec<u8>);

impl MutationPath {
    pub fn new(indices: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&k| !(1..=3).contains(&k)) {
            return Err(Error::InvalidPath(format!("index {bad} outside 1..=3")));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath(format!("{indices:?} repeats an index")));
        }
        Ok(MutationPath(indices))
    }

    pub fn empty() -> Self {
        MutationPath(Vec::new())
    }

    /// Appends `k`; pushing the same index twice in a row cancels the pair,
    /// since every γ and μ is an involution.
    pub fn push_reduced(&mut self, k: u8) {
        debug_assert!((1..=3).contains(&k));
        if self.0.last() == Some(&k) {
            self.0.pop();
        } else {
            self.0.push(k);
        }
    }

    pub fn reversed(&self) -> Self {
        MutationPath(self.0.iter().rev().copied().collect())
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<u8>> for MutationPath {
    type Error = Error;

    fn try_from(v: Vec<u8>) -> Result<Self> {
        MutationPath::new(v)
    }
}

impl From<MutationPath> for Vec<u8> {
    fn from(p: MutationPath) -> Self {
        p.0
    }
}

impl fmt::Display for MutationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}
