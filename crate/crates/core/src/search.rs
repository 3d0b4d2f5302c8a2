//! Budgets shared by the long-running searches.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_ENTRY_BOUND: u64 = 1_000_000_000;
pub const DEFAULT_DESCENT_CAP: usize = 10_000;
pub const DEFAULT_NEGATIVE_SEARCH_CAP: usize = 1_000_000;

/// Cooperative cancellation flag; clones share the flag.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum word length explored.
    pub depth: usize,
    /// Largest absolute entry kept in a γ-orbit enumeration.
    pub entry_bound: u64,
    pub cancel: Option<CancelToken>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            depth: DEFAULT_DEPTH,
            entry_bound: DEFAULT_ENTRY_BOUND,
            cancel: None,
        }
    }
}

impl SearchOptions {
    pub fn with_depth(depth: usize) -> Self {
        SearchOptions {
            depth,
            ..Self::default()
        }
    }

    pub(crate) fn check_cancelled(&self) -> Result<()> {
        match &self.cancel {
            Some(t) if t.is_cancelled() => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}
