use crate::canon::DEFAULT_CANON_LIMIT;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Size limits and execution strategy shared by the exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub exec: Execution,
    /// Largest vertex count handed to the canonical-form search.
    pub canon_limit: usize,
    /// Largest edge count for 2^m subset expansions.
    pub max_subset_edges: usize,
    /// Largest number of assignments any single enumeration may visit.
    pub max_enumeration: u64,
    /// Largest number of rotation systems for genus distributions.
    pub max_rotation_systems: u64,
    /// Entry bound for the Tutte memo table.
    pub memo_capacity: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exec: Execution::default(),
            canon_limit: DEFAULT_CANON_LIMIT,
            max_subset_edges: 20,
            max_enumeration: 10_000_000,
            max_rotation_systems: 10_000_000,
            memo_capacity: 1 << 16,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            exec: Execution::Sequential,
            ..Config::default()
        }
    }

    pub fn with_exec(self, exec: Execution) -> Self {
        Config { exec, ..self }
    }

    /// `base^exp`, failing if it exceeds the enumeration budget.
    pub(crate) fn enumeration_size(
        &self,
        what: &'static str,
        base: u64,
        exp: usize,
    ) -> Result<u64> {
        let mut total: u128 = 1;
        for _ in 0..exp {
            total = total.saturating_mul(base as u128);
            if total > self.max_enumeration as u128 {
                return Err(Error::SizeLimit {
                    what,
                    size: total,
                    limit: self.max_enumeration as u128,
                });
            }
        }
        Ok(total as u64)
    }

    pub(crate) fn check_subset_edges(&self, m: usize) -> Result<()> {
        if m > self.max_subset_edges {
            return Err(Error::SizeLimit {
                what: "edge subsets",
                size: m as u128,
                limit: self.max_subset_edges as u128,
            });
        }
        Ok(())
    }
}
