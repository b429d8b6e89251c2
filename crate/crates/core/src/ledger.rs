//! Query accounting.
//!
//! The measured quantity throughout this crate is the number of base
//! character comparisons charged to a [`QueryLedger`], never wall-clock
//! time. Reference (ground-truth) computations bypass the ledger.

/// Phase buckets for the hierarchical breakdown reported per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Preprocess,
    BlockSearch,
    InBlock,
}

impl Phase {
    fn index(self) -> usize {
        match self {
            Phase::Preprocess => 0,
            Phase::BlockSearch => 1,
            Phase::InBlock => 2,
        }
    }
}

/// Monotone counter of base-oracle comparisons, split by phase.
///
/// Charges only ever increase; there is no decrement operation.
#[derive(Debug, Clone)]
pub struct QueryLedger {
    total: u64,
    by_phase: [u64; 3],
    phase: Phase,
}

impl Default for QueryLedger {
    fn default() -> Self {
        Self::new()
    }
}

impl QueryLedger {
    pub fn new() -> Self {
        QueryLedger {
            total: 0,
            by_phase: [0; 3],
            phase: Phase::Preprocess,
        }
    }

    /// Charge `amount` base comparisons to the current phase.
    pub fn charge(&mut self, amount: u64) {
        self.total += amount;
        self.by_phase[self.phase.index()] += amount;
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn phase_total(&self, phase: Phase) -> u64 {
        self.by_phase[phase.index()]
    }

    /// (preprocess, block_search, in_block)
    pub fn breakdown(&self) -> (u64, u64, u64) {
        (self.by_phase[0], self.by_phase[1], self.by_phase[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges_accumulate_by_phase() {
        let mut ledger = QueryLedger::new();
        ledger.charge(3);
        ledger.set_phase(Phase::BlockSearch);
        ledger.charge(5);
        ledger.set_phase(Phase::InBlock);
        ledger.charge(1);
        assert_eq!(ledger.total(), 9);
        assert_eq!(ledger.breakdown(), (3, 5, 1));
    }

    #[test]
    fn totals_never_decrease() {
        let mut ledger = QueryLedger::new();
        let mut last = 0;
        for amount in [0u64, 1, 7, 2, 0, 11] {
            ledger.charge(amount);
            assert!(ledger.total() >= last);
            last = ledger.total();
        }
    }
}
