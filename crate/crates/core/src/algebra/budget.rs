//! Term-operation budget guarding the large symbolic computations.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on coefficient multiplications in symbolic mode.
pub const DEFAULT_TERM_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_TERM_BUDGET`].
pub const TERM_BUDGET_ENV: &str = "QF_TERM_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("term budget exceeded: {used} term operations requested, cap is {limit}")]
pub struct BudgetExceeded {
    pub used: u64,
    pub limit: u64,
}

/// Shared counter; safe to charge from several threads.
#[derive(Debug)]
pub struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { used: AtomicU64::new(0), limit }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Cap from `QF_TERM_BUDGET`, else the default. Unparsable values fall back to the default.
    pub fn from_env() -> Self {
        let limit = std::env::var(TERM_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse::<u64>().ok())
            .unwrap_or(DEFAULT_TERM_BUDGET);
        Budget::new(limit)
    }

    pub fn charge(&self, n: u64) -> Result<(), BudgetExceeded> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        let used = before.saturating_add(n);
        if used > self.limit {
            Err(BudgetExceeded { used, limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charging_past_the_cap_fails() {
        let b = Budget::new(10);
        assert!(b.charge(7).is_ok());
        let err = b.charge(7).unwrap_err();
        assert_eq!(err, BudgetExceeded { used: 14, limit: 10 });
    }
}
