//! Classical ground-truth oracles.
//!
//! These are measurement instruments for the tests and the harness: linear
//! occurrence listing, exhaustive sample-property verification, and the
//! deterministic skeleton of the periodic block probe. None of them touch
//! the query ledger.

use crate::ds::{copy_count, DeterministicSample, PeriodInfo};
use crate::error::{Error, Result};

/// All left endpoints where the pattern occurs in the text, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OccurrenceList {
    pub positions: Vec<usize>,
}

impl OccurrenceList {
    pub fn contains(&self, q: usize) -> bool {
        self.positions.binary_search(&q).is_ok()
    }

    pub fn leftmost(&self) -> Option<usize> {
        self.positions.first().copied()
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

/// Knuth-Morris-Pratt, O(n + m).
pub fn kmp_all(text: &[u8], pattern: &[u8]) -> Result<OccurrenceList> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::invalid("pattern must be nonempty"));
    }
    let n = text.len();
    if n < m {
        return Ok(OccurrenceList::default());
    }

    // Failure function: longest proper prefix of pattern[..=i] that is
    // also a suffix.
    let mut lps = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[k] != pattern[i] {
            k = lps[k - 1];
        }
        if pattern[k] == pattern[i] {
            k += 1;
        }
        lps[i] = k;
    }

    let mut positions = Vec::new();
    let mut q = 0usize;
    for (i, &c) in text.iter().enumerate() {
        while q > 0 && pattern[q] != c {
            q = lps[q - 1];
        }
        if pattern[q] == c {
            q += 1;
        }
        if q == m {
            positions.push(i + 1 - m);
            q = lps[q - 1];
        }
    }
    Ok(OccurrenceList { positions })
}

/// Quadratic scan, used only to cross-check `kmp_all` in tests.
pub fn naive_all(text: &[u8], pattern: &[u8]) -> Result<OccurrenceList> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::invalid("pattern must be nonempty"));
    }
    let n = text.len();
    let mut positions = Vec::new();
    if n >= m {
        for q in 0..=(n - m) {
            if &text[q..q + m] == pattern {
                positions.push(q);
            }
        }
    }
    Ok(OccurrenceList { positions })
}

/// Check the defining property of a deterministic sample: for every copy
/// `j != focal` among the `floor(m/2)` consecutive shifts there is a sample
/// point that stabs copy `j` and, mapped into its frame, demands a character
/// different from what copy `j` carries. Purely pattern-vs-pattern; no text
/// involved. Points outside the focal copy's own frame are malformed.
pub fn verify_ds_property(pattern: &[u8], ds: &DeterministicSample) -> Result<bool> {
    let m = pattern.len();
    if m == 0 {
        return Err(Error::invalid("pattern must be nonempty"));
    }
    let k = copy_count(m);
    if ds.focal == 0 || ds.focal > k {
        return Err(Error::MalformedSample(format!(
            "focal {} outside [1, {}]",
            ds.focal, k
        )));
    }
    for point in &ds.points {
        if point.position >= m {
            return Err(Error::MalformedSample(format!(
                "point position {} outside the pattern",
                point.position
            )));
        }
    }

    for j in 1..=k {
        if j == ds.focal {
            continue;
        }
        let lo = j - 1;
        let hi = lo + m - 1;
        let excluded = ds.points.iter().any(|point| {
            let col = point.position + ds.focal - 1;
            col >= lo && col <= hi && pattern[col - lo] != point.required
        });
        if !excluded {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic skeleton of the periodic block probe: the answer the
/// randomized probe must produce when all of its internal searches succeed.
/// Computed by direct scanning, never charged.
///
/// Returns the leftmost occurrence with left endpoint in block `block`, or
/// `None`,
/// using the window rule: with `k`/`l` the leftmost/rightmost
/// sample-consistent left endpoints in the block and `e` the first position
/// after the block, extend the periodic continuation of instance `k`
/// backward from `e` (length `b`) and forward (length `a`, capped at `m`);
/// an endpoint `q ≡ k (mod v)` in `[k, l]` is an occurrence exactly when
/// `[q, q+m)` fits inside `[e-b, e+a)`.
pub fn brute_force_windows(
    text: &[u8],
    pattern: &[u8],
    info: &PeriodInfo,
    block: usize,
) -> Option<usize> {
    let n = text.len();
    let m = pattern.len();
    if m == 0 || n < m {
        return None;
    }
    let v = info.period;
    debug_assert!(v >= 1 && v <= m / 2);
    let block_len = m.div_ceil(2);
    let start = block.checked_mul(block_len)?;
    if start >= n {
        return None;
    }
    let end = ((block + 1) * block_len).min(n);
    let last_start = n - m;

    let consistent = |q: usize| -> bool {
        info.sample_points()
            .iter()
            .all(|p| text[q + p.position] == p.required)
    };

    // Leftmost and rightmost sample-consistent endpoints in the block.
    let mut k = None;
    let mut l = None;
    for q in start..end.min(last_start + 1) {
        if consistent(q) {
            if k.is_none() {
                k = Some(q);
            }
            l = Some(q);
        }
    }
    let (k, l) = (k?, l?);

    // Periodic continuation of instance k.
    let ext = |x: usize| -> u8 { pattern[(x - k) % v] };

    // Forward consistent length from the block boundary, capped at m and at
    // the end of instance l.
    let e = end;
    let fwd_cap = (e + m).min(l + m).min(n);
    let mut a = 0usize;
    while e + a < fwd_cap && text[e + a] == ext(e + a) {
        a += 1;
    }
    // Backward consistent length ending at the boundary, within instance k.
    let mut b = 0usize;
    while b < e - k && text[e - b - 1] == ext(e - b - 1) {
        b += 1;
    }

    // Smallest q >= e-b with q ≡ k (mod v).
    let lo = e - b;
    let q0 = k + (lo - k).div_ceil(v) * v;
    let hi = (e + a).checked_sub(m)?;
    if q0 <= hi && q0 <= l {
        Some(q0)
    } else {
        None
    }
}
