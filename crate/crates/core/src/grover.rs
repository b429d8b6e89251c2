//! Exact model of Grover iteration outcomes.
//!
//! Two routes are provided on purpose. [`success_probability`] is the closed
//! form used by every search in this crate; [`statevector_grover`] evolves an
//! explicit amplitude vector and exists solely to cross-validate the closed
//! form at small sizes. Simulation at the distribution level keeps scaling
//! experiments cheap: outcomes are sampled from the measurement distribution
//! while the ledger is charged exactly what the iterations would cost.

use crate::error::{Error, Result};
use crate::ledger::QueryLedger;
use crate::rng::TrialRng;

/// Largest domain the statevector cross-validation path accepts.
pub const STATEVECTOR_MAX: usize = 4096;

/// An unordered search domain with a known marked subset.
///
/// `per_call_cost` is the number of base comparisons charged for each oracle
/// invocation made against this space.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    size: usize,
    marked: Vec<usize>,
    per_call_cost: u64,
}

impl SearchSpace {
    pub fn new(size: usize, mut marked: Vec<usize>, per_call_cost: u64) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("search space size must be positive"));
        }
        if per_call_cost == 0 {
            return Err(Error::invalid("per_call_cost must be at least 1"));
        }
        marked.sort_unstable();
        marked.dedup();
        if marked.last().is_some_and(|&i| i >= size) {
            return Err(Error::invalid("marked index out of range"));
        }
        Ok(SearchSpace {
            size,
            marked,
            per_call_cost,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn per_call_cost(&self) -> u64 {
        self.per_call_cost
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.marked.binary_search(&index).is_ok()
    }
}

/// Result of measuring after a fixed number of Grover iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverOutcome {
    pub measured_index: usize,
    pub was_marked: bool,
    pub iterations_used: u64,
    pub oracle_calls_charged: u64,
}

/// Probability that measuring after `j` Grover iterations on a domain of
/// size `n` with `t` marked elements yields a marked index:
/// sin²((2j+1)·asin(√(t/n))).
pub fn success_probability(n: usize, t: usize, j: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("domain size must be positive"));
    }
    if t > n {
        return Err(Error::invalid("marked count exceeds domain size"));
    }
    if t == 0 {
        return Ok(0.0);
    }
    if t == n {
        return Ok(1.0);
    }
    let theta = (t as f64 / n as f64).sqrt().asin();
    let s = ((2 * j + 1) as f64 * theta).sin();
    Ok(s * s)
}

/// Sample one Grover run of `j` iterations at the distribution level.
///
/// With probability [`success_probability`] the measured index is uniform
/// over the marked set, otherwise uniform over the unmarked set. Charges
/// `j * per_call_cost` to the ledger.
pub fn sample_measurement(
    space: &SearchSpace,
    j: u64,
    rng: &mut TrialRng,
    ledger: &mut QueryLedger,
) -> GroverOutcome {
    let n = space.size();
    let t = space.marked.len();
    let charge = j * space.per_call_cost;
    ledger.charge(charge);

    let p = success_probability(n, t, j).expect("space invariants already checked");
    let hit = rng.chance(p);
    let measured_index = if hit {
        space.marked[rng.below(t)]
    } else {
        // Rejection sampling over the complement; t < n whenever we get here.
        loop {
            let i = rng.below(n);
            if !space.is_marked(i) {
                break i;
            }
        }
    };
    GroverOutcome {
        measured_index,
        was_marked: hit,
        iterations_used: j,
        oracle_calls_charged: charge,
    }
}

/// Explicit real-amplitude evolution of the Grover iteration.
///
/// Amplitudes stay real: the oracle is a sign flip and the diffusion step is
/// an inversion about the mean, so no complex phases ever appear.
#[derive(Debug, Clone)]
pub struct Statevector {
    amps: Vec<f64>,
    marked: Vec<bool>,
}

impl Statevector {
    pub fn uniform(n: usize, marked: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("domain size must be positive"));
        }
        if n > STATEVECTOR_MAX {
            return Err(Error::Capacity {
                n,
                max: STATEVECTOR_MAX,
            });
        }
        let mut flags = vec![false; n];
        for &i in marked {
            if i >= n {
                return Err(Error::invalid("marked index out of range"));
            }
            flags[i] = true;
        }
        let amp = 1.0 / (n as f64).sqrt();
        Ok(Statevector {
            amps: vec![amp; n],
            marked: flags,
        })
    }

    /// One round: oracle phase flip on marked amplitudes, then inversion
    /// about the mean.
    pub fn step(&mut self) {
        for (a, &m) in self.amps.iter_mut().zip(self.marked.iter()) {
            if m {
                *a = -*a;
            }
        }
        let mean = self.amps.iter().sum::<f64>() / self.amps.len() as f64;
        for a in self.amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }

    /// Total probability mass currently on marked indices.
    pub fn marked_mass(&self) -> f64 {
        self.amps
            .iter()
            .zip(self.marked.iter())
            .filter(|(_, &m)| m)
            .map(|(a, _)| a * a)
            .sum()
    }

    /// Sum of squared amplitudes; should remain 1 up to rounding.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }
}

/// Run `j` explicit Grover rounds and return the marked probability mass.
///
/// Independent oracle for [`success_probability`]; capacity-bounded.
pub fn statevector_grover(n: usize, marked: &[usize], j: u64) -> Result<f64> {
    let mut sv = Statevector::uniform(n, marked)?;
    for _ in 0..j {
        sv.step();
    }
    Ok(sv.marked_mass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::QueryLedger;
    use crate::rng::TrialRng;

    #[test]
    fn zero_iterations_is_uniform_sampling() {
        assert_eq!(success_probability(16, 4, 0).unwrap(), 0.25);
    }

    #[test]
    fn all_marked_is_certain() {
        assert_eq!(success_probability(4, 4, 7).unwrap(), 1.0);
    }

    #[test]
    fn single_round_on_four_elements_is_exact() {
        // Cross-checked against the statevector route below.
        let p = success_probability(4, 1, 1).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let sv = statevector_grover(4, &[1], 1).unwrap();
        assert!((sv - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_domain() {
        assert!(success_probability(0, 0, 1).is_err());
    }

    #[test]
    fn statevector_rejects_oversized_domain() {
        assert!(matches!(
            statevector_grover(STATEVECTOR_MAX + 1, &[0], 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn statevector_all_marked_conserves_mass() {
        let p = statevector_grover(2, &[0, 1], 3).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn statevector_matches_closed_form_at_desk_scale() {
        let p = statevector_grover(1024, &[7], 25).unwrap();
        let q = success_probability(1024, 1, 25).unwrap();
        assert!((p - q).abs() < 1e-9);
    }

    #[test]
    fn closed_form_angle_periodicity() {
        // t/n = 1/4 gives theta = pi/6, so probabilities repeat with j period 6.
        for j in 0..12u64 {
            let a = success_probability(16, 4, j).unwrap();
            let b = success_probability(16, 4, j + 6).unwrap();
            assert!((a - b).abs() < 1e-12, "j={j}: {a} vs {b}");
        }
    }

    #[test]
    fn sample_measurement_charges_iterations_times_cost() {
        let space = SearchSpace::new(4, vec![2], 3).unwrap();
        let mut rng = TrialRng::seeded(1);
        let mut ledger = QueryLedger::new();
        let out = sample_measurement(&space, 1, &mut rng, &mut ledger);
        assert_eq!(out.measured_index, 2);
        assert!(out.was_marked);
        assert_eq!(out.oracle_calls_charged, 3);
        assert_eq!(ledger.total(), 3);
    }

    #[test]
    fn sample_measurement_empty_marked_never_hits() {
        let space = SearchSpace::new(8, vec![], 1).unwrap();
        let mut rng = TrialRng::seeded(2);
        let mut ledger = QueryLedger::new();
        for _ in 0..50 {
            let out = sample_measurement(&space, 5, &mut rng, &mut ledger);
            assert!(!out.was_marked);
            assert_eq!(out.oracle_calls_charged, 5);
        }
    }

    #[test]
    fn uniform_case_frequency_is_within_five_sigma() {
        let space = SearchSpace::new(8, vec![3], 1).unwrap();
        let mut rng = TrialRng::seeded(3);
        let mut ledger = QueryLedger::new();
        let trials = 100_000;
        let mut hits = 0u64;
        for _ in 0..trials {
            if sample_measurement(&space, 0, &mut rng, &mut ledger).was_marked {
                hits += 1;
            }
        }
        let p = 1.0 / 8.0;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let freq = hits as f64 / trials as f64;
        assert!(
            (freq - p).abs() < 5.0 * sigma,
            "freq {freq} too far from {p}"
        );
        // j = 0 charges nothing.
        assert_eq!(ledger.total(), 0);
    }

    #[test]
    fn statevector_norm_is_preserved() {
        let mut sv = Statevector::uniform(256, &[1, 5, 200]).unwrap();
        for _ in 0..48 {
            sv.step();
            assert!((sv.norm() - 1.0).abs() < 1e-9);
        }
    }
}
