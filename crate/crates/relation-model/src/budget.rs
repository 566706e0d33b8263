use thiserror::Error;

/// Ceiling on the number of elementary tuples a scan may examine.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("scan budget of {limit} tuples exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Records `n` more tuples, failing once the ceiling is passed.
    pub fn spend(&mut self, n: u64) -> Result<(), BudgetExceeded> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(100_000_000)
    }
}
