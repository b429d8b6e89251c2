//! Instance generation.

use crate::ds::{detect_period, Periodicity};
use crate::error::Result;
use crate::harness::config::Generator;
use crate::matcher::PatternText;
use crate::rng::TrialRng;

fn symbol(s: usize) -> u8 {
    b'a' + s as u8
}

fn random_string(len: usize, alphabet: u8, rng: &mut TrialRng) -> Vec<u8> {
    (0..len)
        .map(|_| symbol(rng.below(alphabet as usize)))
        .collect()
}

/// Build one (text, pattern) instance.
///
/// `random`: i.i.d. symbols for both. `planted`: random text with the
/// pattern copied to a random admissible offset. `adversarial_periodic`: a
/// short primitive unit tiled into the pattern, text tiled with the same
/// unit plus scattered corruptions so near-occurrences abound.  `all_same`:
/// a single repeated symbol.
pub fn generate_instance(
    generator: Generator,
    n: usize,
    m: usize,
    alphabet_size: u8,
    rng: &mut TrialRng,
) -> Result<PatternText> {
    debug_assert!(m >= 1 && m <= n);
    let sigma = alphabet_size as usize;
    match generator {
        Generator::Random => {
            let text = random_string(n, alphabet_size, rng);
            let pattern = random_string(m, alphabet_size, rng);
            PatternText::new(text, pattern)
        }
        Generator::Planted => {
            let mut text = random_string(n, alphabet_size, rng);
            // Prefer an aperiodic pattern; random strings almost always are.
            let mut pattern = random_string(m, alphabet_size, rng);
            for _ in 0..64 {
                if matches!(detect_period(&pattern)?, Periodicity::Aperiodic) {
                    break;
                }
                pattern = random_string(m, alphabet_size, rng);
            }
            let offset = rng.below(n - m + 1);
            text[offset..offset + m].copy_from_slice(&pattern);
            PatternText::new(text, pattern)
        }
        Generator::AdversarialPeriodic => {
            // Primitive unit of small length, tiled into the pattern.
            let max_unit = (m / 2).clamp(1, 8);
            let unit = loop {
                let len = 1 + rng.below(max_unit);
                let candidate = random_string(len, alphabet_size, rng);
                let primitive = (1..len).all(|d| {
                    !candidate
                        .iter()
                        .zip(candidate.iter().cycle().skip(d))
                        .all(|(a, b)| a == b)
                });
                if len == 1 || primitive {
                    break candidate;
                }
            };
            let pattern: Vec<u8> = unit.iter().cycle().take(m).copied().collect();
            let mut text: Vec<u8> = unit.iter().cycle().take(n).copied().collect();
            // Corruptions roughly every half pattern length keep most blocks
            // full of near-occurrences without real ones.
            let mut pos = rng.below(m.div_ceil(2).max(1));
            while pos < n {
                let old = text[pos];
                let mut repl = symbol(rng.below(sigma));
                while repl == old && sigma > 1 {
                    repl = symbol(rng.below(sigma));
                }
                text[pos] = repl;
                pos += 1 + rng.below(m.div_ceil(2).max(1));
            }
            if rng.chance(0.5) {
                let offset = rng.below(n - m + 1);
                text[offset..offset + m].copy_from_slice(&pattern);
            }
            PatternText::new(text, pattern)
        }
        Generator::AllSame => PatternText::new(vec![symbol(0); n], vec![symbol(0); m]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::kmp_all;

    #[test]
    fn planted_instances_contain_the_pattern() {
        let mut rng = TrialRng::seeded(1);
        for _ in 0..20 {
            let pt = generate_instance(Generator::Planted, 256, 16, 2, &mut rng).unwrap();
            assert!(kmp_all(pt.text(), pt.pattern()).unwrap().count() >= 1);
        }
    }

    #[test]
    fn all_same_is_a_single_symbol() {
        let mut rng = TrialRng::seeded(2);
        let pt = generate_instance(Generator::AllSame, 8, 2, 2, &mut rng).unwrap();
        assert_eq!(pt.text(), b"aaaaaaaa");
        assert_eq!(pt.pattern(), b"aa");
    }

    #[test]
    fn adversarial_patterns_are_periodic() {
        let mut rng = TrialRng::seeded(3);
        for _ in 0..20 {
            let pt =
                generate_instance(Generator::AdversarialPeriodic, 128, 16, 2, &mut rng).unwrap();
            match detect_period(pt.pattern()).unwrap() {
                Periodicity::Periodic(v) => assert!(v <= 8),
                Periodicity::Aperiodic => panic!("expected a periodic pattern"),
            }
        }
    }
}
