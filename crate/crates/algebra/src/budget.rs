use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("step budget of {limit} exhausted")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// Counts expensive steps (S-polynomial reductions, simplex pivots) and
/// refuses to continue past a fixed limit.
///
/// A single budget is threaded through a whole computation so that the total
/// usage of a job can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 200_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit: Some(limit),
            used: 0,
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            used: 0,
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn step(&mut self) -> Result<(), BudgetExceeded> {
        if let Some(limit) = self.limit {
            if self.used >= limit {
                return Err(BudgetExceeded { limit });
            }
        }
        self.used += 1;
        Ok(())
    }

    /// A fresh budget limited to what is left of this one, for work run on
    /// another thread.
    pub fn child(&self) -> Budget {
        Budget {
            limit: self.limit.map(|l| l.saturating_sub(self.used)),
            used: 0,
        }
    }

    /// Charges the steps used by a child budget.
    pub fn absorb(&mut self, child: &Budget) -> Result<(), BudgetExceeded> {
        self.used += child.used;
        match self.limit {
            Some(limit) if self.used > limit => Err(BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
