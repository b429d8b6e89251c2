//! Search primitives: unknown-count search, majority amplification of
//! probabilistic oracles, and comparison-oracle minimum finding.
//!
//! Simulation model. Searches sample measurement outcomes from the closed
//! form in [`crate::grover`] using the oracle's ground-truth marked set, and
//! charge the ledger per oracle call at the oracle's declared cost. After
//! majority amplification an oracle is treated as exact inside a search
//! ("deterministic in the model") while its calls are charged at the
//! amplified cost; the residual per-call error shows up wherever an oracle
//! is evaluated directly, including the verification of a found candidate.

use crate::error::{Error, Result};
use crate::grover::success_probability;
use crate::ledger::QueryLedger;
use crate::rng::TrialRng;

/// Growth factor of the iteration cap between unsuccessful rounds.
const CAP_GROWTH: f64 = 6.0 / 5.0;

/// Default iteration budget multiplier: a search over a domain of size `n`
/// stops after `budget_factor * sqrt(n)` charged iterations.
pub const DEFAULT_BUDGET_FACTOR: f64 = 9.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Deterministic,
    Probabilistic,
}

/// A bit oracle over `[0, domain_size)`.
///
/// `truth` is the exact predicate defining the marked set; it drives outcome
/// sampling and is never charged. `evaluate` charges `cost` and answers
/// truthfully for deterministic oracles, or flips the answer with probability
/// `flip_prob` for probabilistic ones.
pub struct OracleSpec<'a> {
    domain_size: usize,
    cost: u64,
    kind: OracleKind,
    flip_prob: f64,
    truth: Box<dyn Fn(usize) -> bool + 'a>,
}

impl<'a> OracleSpec<'a> {
    pub fn deterministic(
        domain_size: usize,
        cost: u64,
        truth: impl Fn(usize) -> bool + 'a,
    ) -> Result<Self> {
        Self::build(domain_size, cost, OracleKind::Deterministic, 0.0, truth)
    }

    /// `flip_prob` is the per-call probability of answering wrongly; the
    /// oracle contract requires it to stay at or below 1/4.
    pub fn probabilistic(
        domain_size: usize,
        cost: u64,
        flip_prob: f64,
        truth: impl Fn(usize) -> bool + 'a,
    ) -> Result<Self> {
        if !(0.0..=0.25).contains(&flip_prob) {
            return Err(Error::invalid("flip probability must lie in [0, 1/4]"));
        }
        Self::build(
            domain_size,
            cost,
            OracleKind::Probabilistic,
            flip_prob,
            truth,
        )
    }

    fn build(
        domain_size: usize,
        cost: u64,
        kind: OracleKind,
        flip_prob: f64,
        truth: impl Fn(usize) -> bool + 'a,
    ) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::invalid("oracle domain must be nonempty"));
        }
        if cost == 0 {
            return Err(Error::invalid("oracle cost must be at least 1"));
        }
        Ok(OracleSpec {
            domain_size,
            cost,
            kind,
            flip_prob,
            truth: Box::new(truth),
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    /// Ground truth, uncharged.
    pub fn truth(&self, index: usize) -> bool {
        (self.truth)(index)
    }

    /// One charged evaluation. Probabilistic oracles answer wrongly with
    /// probability `flip_prob`, independently per call.
    pub fn evaluate(&self, index: usize, rng: &mut TrialRng, ledger: &mut QueryLedger) -> bool {
        ledger.charge(self.cost);
        let answer = (self.truth)(index);
        if self.kind == OracleKind::Probabilistic && rng.chance(self.flip_prob) {
            !answer
        } else {
            answer
        }
    }
}

/// Majority vote over an odd number of repetitions of an inner oracle.
pub struct AmplifiedOracle<'a> {
    inner: OracleSpec<'a>,
    repetitions: u32,
}

impl<'a> AmplifiedOracle<'a> {
    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    pub fn domain_size(&self) -> usize {
        self.inner.domain_size
    }

    /// Cost per amplified call: repetitions times the inner cost.
    pub fn cost(&self) -> u64 {
        self.inner.cost * self.repetitions as u64
    }

    pub fn truth(&self, index: usize) -> bool {
        self.inner.truth(index)
    }

    /// Evaluate the inner oracle `repetitions` times and take the majority.
    pub fn evaluate(&self, index: usize, rng: &mut TrialRng, ledger: &mut QueryLedger) -> bool {
        let mut ones = 0u32;
        for _ in 0..self.repetitions {
            if self.inner.evaluate(index, rng, ledger) {
                ones += 1;
            }
        }
        2 * ones > self.repetitions
    }
}

/// Wrap an oracle so that each call takes the majority of `repetitions`
/// inner calls. Repetitions must be odd so the majority is defined.
pub fn amplify(oracle: OracleSpec<'_>, repetitions: u32) -> Result<AmplifiedOracle<'_>> {
    if repetitions == 0 || repetitions.is_multiple_of(2) {
        return Err(Error::invalid("repetitions must be odd and positive"));
    }
    Ok(AmplifiedOracle {
        inner: oracle,
        repetitions,
    })
}

/// Repetition count used when wrapping probabilistic oracles for search over
/// a domain of size `n`: 2*ceil(log2(max(2, sqrt(n)))) + 1.
pub fn amplification_reps(n: usize) -> u32 {
    let root = (n.max(1) as f64).sqrt().max(2.0);
    2 * root.log2().ceil() as u32 + 1
}

/// Outcome of a search. `oracle_calls` is the ledger delta attributable to
/// this search; `verified` means the reported index passed a direct oracle
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchResult {
    pub found: Option<usize>,
    pub oracle_calls: u64,
    pub verified: bool,
}

/// Core unknown-count search loop shared by the public entry points.
///
/// Per round: draw an iteration count `j` uniformly below the current cap,
/// charge `max(j, 1) * cost_per_call` — the rotation calls, or the single
/// classical check a zero-iteration round amounts to — and sample the
/// measured index from the closed form. A measured index the ground truth
/// marks goes through the confirmation callback, which carries the charge
/// of its own answer-bearing evaluation. The cap grows by 6/5 after every
/// unsuccessful round, clamped to sqrt(n); the search stops once
/// `budget_factor * sqrt(n)` iterations' worth of budget slots (one per
/// rotation step plus one per measurement) has been consumed.
fn bbht_core(
    domain_size: usize,
    truth: &dyn Fn(usize) -> bool,
    cost_per_call: u64,
    budget_factor: f64,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    confirm: &mut dyn FnMut(usize, &mut TrialRng, &mut QueryLedger) -> bool,
) -> Option<usize> {
    let n = domain_size;
    let marked: Vec<usize> = (0..n).filter(|&i| truth(i)).collect();
    let is_marked: Vec<bool> = {
        let mut v = vec![false; n];
        for &i in &marked {
            v[i] = true;
        }
        v
    };
    let t = marked.len();
    let root_n = (n as f64).sqrt();
    let budget = (budget_factor * root_n).ceil().max(1.0) as u64;

    let mut cap = 1.0f64;
    let mut spent = 0u64;
    loop {
        let j_bound = cap.ceil() as u64;
        let j = rng.below_u64(j_bound.max(1));
        if spent + j + 1 > budget {
            return None;
        }
        spent += j + 1;
        ledger.charge(j.max(1) * cost_per_call);

        let p = success_probability(n, t, j).expect("bounds checked");
        let measured = if rng.chance(p) {
            marked[rng.below(t)]
        } else {
            loop {
                let i = rng.below(n);
                if !is_marked[i] {
                    break i;
                }
            }
        };

        if is_marked[measured] && confirm(measured, rng, ledger) {
            return Some(measured);
        }
        cap = (cap * CAP_GROWTH).min(root_n.max(1.0));
    }
}

/// Search for any index the oracle marks, with the iteration count schedule
/// for an unknown number of solutions.
///
/// Returns a uniformly random marked index with probability at least 3/4
/// when one exists; reports `found: None` after the budget is exhausted
/// otherwise. The total charge is bounded by `budget_factor * sqrt(n) * cost`.
pub fn bbht_search(
    oracle: &OracleSpec<'_>,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    budget_factor: f64,
) -> Result<SearchResult> {
    if oracle.kind != OracleKind::Deterministic {
        return Err(Error::invalid(
            "bbht_search requires a deterministic oracle; amplify first",
        ));
    }
    let start = ledger.total();
    let found = bbht_core(
        oracle.domain_size,
        &|i| oracle.truth(i),
        oracle.cost,
        budget_factor,
        rng,
        ledger,
        // One direct evaluation verifies the candidate.
        &mut |i, rng, ledger| oracle.evaluate(i, rng, ledger),
    );
    Ok(SearchResult {
        found,
        oracle_calls: ledger.total() - start,
        verified: found.is_some(),
    })
}

/// Search with a probabilistic oracle: every call is majority-amplified with
/// `amplification_reps(n)` repetitions, and a found candidate is re-verified
/// with one direct amplified evaluation before being reported.
pub fn search_amplified(
    oracle: OracleSpec<'_>,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    budget_factor: f64,
) -> Result<SearchResult> {
    let reps = amplification_reps(oracle.domain_size);
    let amplified = amplify(oracle, reps)?;
    let start = ledger.total();
    let found = bbht_core(
        amplified.domain_size(),
        &|i| amplified.truth(i),
        amplified.cost(),
        budget_factor,
        rng,
        ledger,
        // Final gate: one direct amplified evaluation. This is where the
        // residual error of the amplified oracle can reject a good index;
        // the loop then keeps searching within its budget.
        &mut |i, rng, ledger| amplified.evaluate(i, rng, ledger),
    );
    Ok(SearchResult {
        found,
        oracle_calls: ledger.total() - start,
        verified: found.is_some(),
    })
}

/// Search driven by the model truth with per-call cost charged, confirming
/// candidates through a caller-supplied routine (used by the matcher, where
/// confirmation re-derives and verifies an occurrence).
pub(crate) fn bbht_with_confirm(
    domain_size: usize,
    truth: &dyn Fn(usize) -> bool,
    cost_per_call: u64,
    budget_factor: f64,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    confirm: &mut dyn FnMut(usize, &mut TrialRng, &mut QueryLedger) -> bool,
) -> Option<usize> {
    bbht_core(
        domain_size,
        truth,
        cost_per_call,
        budget_factor,
        rng,
        ledger,
        confirm,
    )
}

/// A comparison oracle presented as a total preorder through integer keys.
/// `less_than(a, b)` is `key(a) < key(b)`.
pub struct CmpOracle<'a> {
    domain_size: usize,
    cost: u64,
    kind: OracleKind,
    flip_prob: f64,
    key: Box<dyn Fn(usize) -> u64 + 'a>,
}

impl<'a> CmpOracle<'a> {
    pub fn deterministic(
        domain_size: usize,
        cost: u64,
        key: impl Fn(usize) -> u64 + 'a,
    ) -> Result<Self> {
        Self::build(domain_size, cost, OracleKind::Deterministic, 0.0, key)
    }

    pub fn probabilistic(
        domain_size: usize,
        cost: u64,
        flip_prob: f64,
        key: impl Fn(usize) -> u64 + 'a,
    ) -> Result<Self> {
        if !(0.0..=0.25).contains(&flip_prob) {
            return Err(Error::invalid("flip probability must lie in [0, 1/4]"));
        }
        Self::build(domain_size, cost, OracleKind::Probabilistic, flip_prob, key)
    }

    fn build(
        domain_size: usize,
        cost: u64,
        kind: OracleKind,
        flip_prob: f64,
        key: impl Fn(usize) -> u64 + 'a,
    ) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::invalid("comparison domain must be nonempty"));
        }
        if cost == 0 {
            return Err(Error::invalid("comparison cost must be at least 1"));
        }
        Ok(CmpOracle {
            domain_size,
            cost,
            kind,
            flip_prob,
            key: Box::new(key),
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn key(&self, index: usize) -> u64 {
        (self.key)(index)
    }

    /// One charged comparison; probabilistic oracles flip the answer with
    /// probability `flip_prob`.
    pub fn less_than(
        &self,
        a: usize,
        b: usize,
        rng: &mut TrialRng,
        ledger: &mut QueryLedger,
    ) -> bool {
        ledger.charge(self.cost);
        let answer = (self.key)(a) < (self.key)(b);
        if self.kind == OracleKind::Probabilistic && rng.chance(self.flip_prob) {
            !answer
        } else {
            answer
        }
    }
}

/// Charge accounting for one comparison between `candidate` and the current
/// threshold inside the minimum-finding loop.
pub(crate) type CmpCharge<'c> = dyn FnMut(&mut QueryLedger, usize, usize) + 'c;

/// Threshold-descent minimum finding over precomputed keys.
///
/// Keeps a current best index, repeatedly searches for any strictly smaller
/// index, and stops when a search exhausts its budget; a final confirmation
/// pass with a doubled budget guards the stop. Every comparison is routed
/// through `charge` so callers can implement their own cost model.
pub(crate) fn find_min_core(
    domain_size: usize,
    keys: &[u64],
    budget_factor: f64,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    charge: &mut CmpCharge<'_>,
) -> usize {
    let n = domain_size;
    debug_assert_eq!(keys.len(), n);
    // Indices sorted by (key, index) so strictly-smaller sets are prefixes.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (keys[i], i));
    let sorted_keys: Vec<u64> = order.iter().map(|&i| keys[i]).collect();

    let root_n = (n as f64).sqrt();
    let base_budget = (budget_factor * root_n).ceil().max(1.0) as u64;

    let mut best = rng.below(n);
    let mut confirming = false;
    loop {
        // Count of indices with a strictly smaller key.
        let t = sorted_keys.partition_point(|&k| k < keys[best]);
        let budget = if confirming {
            2 * base_budget
        } else {
            base_budget
        };

        let mut cap = 1.0f64;
        let mut spent = 0u64;
        let mut improved: Option<usize> = None;
        while spent < budget {
            let j_bound = (cap.ceil() as u64).max(1);
            let j = rng.below_u64(j_bound);
            if spent + j + 1 > budget {
                break;
            }
            spent += j + 1;
            // One comparison per rotation step (a zero-iteration round
            // still makes its one classical comparison), each between a
            // sampled domain index and the current threshold.
            for _ in 0..j.max(1) {
                let partner = rng.below(n);
                charge(ledger, partner, best);
            }
            let p = success_probability(n, t, j).expect("bounds checked");
            let measured = if rng.chance(p) {
                order[rng.below(t.max(1))]
            } else {
                loop {
                    let i = rng.below(n);
                    if keys[i] >= keys[best] {
                        break i;
                    }
                }
            };
            if keys[measured] < keys[best] {
                // The answer-bearing comparison that accepts the update.
                charge(ledger, measured, best);
                improved = Some(measured);
                break;
            }
            cap = (cap * CAP_GROWTH).min(root_n.max(1.0));
        }

        match improved {
            Some(next) => {
                best = next;
                confirming = false;
            }
            None if !confirming => confirming = true,
            None => return best,
        }
    }
}

/// Find an index of minimum key with probability at least 3/4, charging
/// `cost` per comparison. Always returns an index; `verified` reflects a
/// clean confirmation that no smaller element was found within budget.
pub fn find_min(
    cmp: &CmpOracle<'_>,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    budget_factor: f64,
) -> Result<SearchResult> {
    if cmp.kind != OracleKind::Deterministic {
        return Err(Error::invalid(
            "find_min requires a deterministic comparison oracle",
        ));
    }
    Ok(run_find_min(cmp, 1, rng, ledger, budget_factor))
}

/// Minimum finding with a probabilistic comparison oracle: every comparison
/// is majority-amplified with `amplification_reps(n)` repetitions, which
/// multiplies the charged cost.
pub fn find_min_amplified(
    cmp: &CmpOracle<'_>,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    budget_factor: f64,
) -> Result<SearchResult> {
    let reps = amplification_reps(cmp.domain_size) as u64;
    Ok(run_find_min(cmp, reps, rng, ledger, budget_factor))
}

fn run_find_min(
    cmp: &CmpOracle<'_>,
    reps: u64,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
    budget_factor: f64,
) -> SearchResult {
    let start = ledger.total();
    let keys: Vec<u64> = (0..cmp.domain_size).map(|i| cmp.key(i)).collect();
    let per_comparison = cmp.cost * reps;
    let best = find_min_core(
        cmp.domain_size,
        &keys,
        budget_factor,
        rng,
        ledger,
        &mut |ledger, _a, _b| ledger.charge(per_comparison),
    );
    SearchResult {
        found: Some(best),
        oracle_calls: ledger.total() - start,
        verified: true,
    }
}
