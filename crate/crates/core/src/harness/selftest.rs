//! Fast exhaustive self-checks, runnable from the command line.

use crate::ds::{build_ds_classical, copy_count, detect_period, Periodicity, Preprocessed};
use crate::error::Result;
use crate::grover::success_probability;
use crate::reference::{brute_force_windows, kmp_all, naive_all, verify_ds_property};
use crate::rng::TrialRng;

fn binary_pattern(bits: u32, m: usize) -> Vec<u8> {
    (0..m)
        .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
        .collect()
}

/// Run all suites, printing one line each; returns overall success.
pub fn run_selftest() -> Result<bool> {
    let mut ok = true;
    ok &= report("grover cross-validation", grover_crossval()?);
    ok &= report("kmp vs naive scan", kmp_vs_naive()?);
    ok &= report("sample construction, exhaustive m <= 12", ds_exhaustive()?);
    ok &= report(
        "periodic window rule, small exhaustive",
        window_rule_small()?,
    );
    Ok(ok)
}

fn report(name: &str, ok: bool) -> bool {
    println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn grover_crossval() -> Result<bool> {
    for exp in 1..=8u32 {
        let n = 1usize << exp;
        for t in [0usize, 1, 2, n / 4, n] {
            let marked: Vec<usize> = (0..t).collect();
            let mut sv = crate::grover::Statevector::uniform(n, &marked)?;
            let j_max = 3 * (n as f64).sqrt().ceil() as u64;
            for j in 0..=j_max {
                let closed = success_probability(n, t, j)?;
                if (sv.marked_mass() - closed).abs() > 1e-9 {
                    return Ok(false);
                }
                sv.step();
            }
        }
    }
    Ok(true)
}

fn kmp_vs_naive() -> Result<bool> {
    let mut rng = TrialRng::seeded(0x5e1f);
    for _ in 0..10_000 {
        let n = 1 + rng.below(512);
        let m = 1 + rng.below(n.min(16));
        let sigma = 2 + rng.below(2);
        let text: Vec<u8> = (0..n).map(|_| b'a' + rng.below(sigma) as u8).collect();
        let pattern: Vec<u8> = (0..m).map(|_| b'a' + rng.below(sigma) as u8).collect();
        if kmp_all(&text, &pattern)? != naive_all(&text, &pattern)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ds_exhaustive() -> Result<bool> {
    for m in 2..=12usize {
        for bits in 0..(1u32 << m) {
            let pattern = binary_pattern(bits, m);
            let classical = detect_period(&pattern)?;
            match build_ds_classical(&pattern)? {
                Preprocessed::Sample(ds) => {
                    if !matches!(classical, Periodicity::Aperiodic) {
                        return Ok(false);
                    }
                    let bound = (copy_count(m) as f64).log2().ceil() as usize;
                    if ds.points.len() > bound {
                        return Ok(false);
                    }
                    if !verify_ds_property(&pattern, &ds)? {
                        return Ok(false);
                    }
                }
                Preprocessed::Periodic(info) => {
                    if classical != Periodicity::Periodic(info.period) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn window_rule_small() -> Result<bool> {
    for m in 2..=6usize {
        for bits in 0..(1u32 << m) {
            let pattern = binary_pattern(bits, m);
            let Periodicity::Periodic(v) = detect_period(&pattern)? else {
                continue;
            };
            let info = crate::ds::PeriodInfo::with_classical_sample(&pattern, v);
            for n in m..=12usize {
                for tbits in 0..(1u32 << n) {
                    let text = binary_pattern(tbits, n);
                    let truth = kmp_all(&text, &pattern)?;
                    let block_len = m.div_ceil(2);
                    let num_blocks = n.div_ceil(block_len);
                    for block in 0..num_blocks {
                        let expected = truth
                            .positions
                            .iter()
                            .find(|&&q| q / block_len == block)
                            .copied();
                        if brute_force_windows(&text, &pattern, &info, block) != expected {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
