//! Rotation-based dataset splitting over stable-hashed item ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of hash bins the rotation schedule cycles through.
pub const SPLIT_BINS: u64 = 10;

/// FNV-1a 64-bit. Hand-rolled because the split must be reproducible across
/// toolchain versions, which the standard hasher does not promise.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in bytes {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// The stable bin an item id falls into, in `0..bins`.
pub fn stable_bin(id: &str, bins: u64) -> u64 {
    fnv1a64(id.as_bytes()) % bins
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSets {
    pub train: Vec<String>,
    pub valid: Vec<String>,
    pub test: Vec<String>,
}

/// Splits items into train/valid/test by hash bin under the rotating
/// schedule: at round `r`, bins r..r+7 (mod 10) train, bin r+8 validates and
/// bin r+9 tests. Input order is preserved within each part.
pub fn rotation_split<S: AsRef<str>>(ids: &[S], round: usize) -> Result<SplitSets> {
    if round >= SPLIT_BINS as usize {
        return Err(Error::invalid(format!(
            "round {round} outside 0..{SPLIT_BINS}"
        )));
    }
    let valid_bin = (round as u64 + 8) % SPLIT_BINS;
    let test_bin = (round as u64 + 9) % SPLIT_BINS;
    let mut sets = SplitSets::default();
    for id in ids {
        let id = id.as_ref();
        let bin = stable_bin(id, SPLIT_BINS);
        let target = if bin == valid_bin {
            &mut sets.valid
        } else if bin == test_bin {
            &mut sets.test
        } else {
            &mut sets.train
        };
        target.push(id.to_owned());
    }
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("dialogue-{i:04}")).collect()
    }

    #[test]
    fn parts_partition_the_input_every_round() {
        let all = ids(1000);
        for round in 0..10 {
            let sets = rotation_split(&all, round).unwrap();
            assert_eq!(
                sets.train.len() + sets.valid.len() + sets.test.len(),
                all.len()
            );
            let union: BTreeSet<&String> = sets
                .train
                .iter()
                .chain(&sets.valid)
                .chain(&sets.test)
                .collect();
            assert_eq!(union.len(), all.len(), "parts overlap in round {round}");
        }
    }

    #[test]
    fn schedule_rotates_bins() {
        let all = ids(1000);
        // Round 0 tests bin 9 and validates bin 8; round 1 tests bin 0.
        let r0 = rotation_split(&all, 0).unwrap();
        assert!(r0.valid.iter().all(|id| stable_bin(id, SPLIT_BINS) == 8));
        assert!(r0.test.iter().all(|id| stable_bin(id, SPLIT_BINS) == 9));
        let r1 = rotation_split(&all, 1).unwrap();
        assert!(r1.test.iter().all(|id| stable_bin(id, SPLIT_BINS) == 0));
    }

    #[test]
    fn each_bin_tests_and_validates_exactly_once() {
        let all = ids(400);
        let mut tested: Vec<BTreeSet<String>> = Vec::new();
        let mut validated: Vec<BTreeSet<String>> = Vec::new();
        for round in 0..10 {
            let sets = rotation_split(&all, round).unwrap();
            tested.push(sets.test.into_iter().collect());
            validated.push(sets.valid.into_iter().collect());
        }
        let all_tested: BTreeSet<String> = tested.iter().flatten().cloned().collect();
        let all_validated: BTreeSet<String> = validated.iter().flatten().cloned().collect();
        assert_eq!(all_tested.len(), all.len());
        assert_eq!(all_validated.len(), all.len());
        // Disjoint across rounds: totals equal the union sizes.
        assert_eq!(tested.iter().map(BTreeSet::len).sum::<usize>(), all.len());
        assert_eq!(validated.iter().map(BTreeSet::len).sum::<usize>(), all.len());
    }

    #[test]
    fn assignment_ignores_input_order() {
        let mut shuffled = ids(100);
        shuffled.reverse();
        let a = rotation_split(&ids(100), 3).unwrap();
        let b = rotation_split(&shuffled, 3).unwrap();
        let as_set = |v: &[String]| v.iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(as_set(&a.train), as_set(&b.train));
        assert_eq!(as_set(&a.valid), as_set(&b.valid));
        assert_eq!(as_set(&a.test), as_set(&b.test));
    }

    #[test]
    fn invalid_round_errors() {
        assert!(rotation_split(&ids(20), 10).is_err());
    }

    #[test]
    fn hash_is_frozen() {
        // Reference values computed from the FNV-1a specification constants;
        // a toolchain change must not move items between bins.
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }
}
