use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Apriori join-and-prune: size-`k+1` candidates from frequent size-`k`
/// sets.
///
/// Two sets join when they share their first `k - 1` items; a joined set
/// survives only if every one of its size-`k` subsets is in `level`. Output
/// is deduplicated and in ascending lexicographic order.
pub fn generate_candidates<T>(level: &[Vec<T>]) -> Result<Vec<Vec<T>>>
where
    T: Ord + Clone + Hash,
{
    let Some(first) = level.first() else {
        return Ok(Vec::new());
    };
    let k = first.len();
    if k == 0 {
        return Err(Error::Contract("candidate generation on empty itemsets".into()));
    }
    for set in level {
        if set.len() != k {
            return Err(Error::Contract(format!(
                "mixed itemset sizes {k} and {}",
                set.len()
            )));
        }
        if !set.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Contract("itemset is not in sorted canonical form".into()));
        }
    }

    let mut sorted: Vec<&[T]> = level.iter().map(Vec::as_slice).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let known: HashSet<&[T]> = sorted.iter().copied().collect();

    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(k);
    let mut start = 0;
    while start < sorted.len() {
        let prefix = &sorted[start][..k - 1];
        let end = start
            + sorted[start..]
                .iter()
                .take_while(|s| &s[..k - 1] == prefix)
                .count();
        for i in start..end {
            for j in i + 1..end {
                let mut candidate = sorted[i].to_vec();
                candidate.push(sorted[j][k - 1].clone());
                if all_subsets_known(&candidate, &known, &mut subset) {
                    out.push(candidate);
                }
            }
        }
        start = end;
    }
    Ok(out)
}

fn all_subsets_known<T: Ord + Clone + Hash>(
    candidate: &[T],
    known: &HashSet<&[T]>,
    buf: &mut Vec<T>,
) -> bool {
    // The two subsets that drop one of the last two items are the joined
    // parents themselves.
    (0..candidate.len().saturating_sub(2)).all(|skip| {
        buf.clear();
        buf.extend(
            candidate
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, x)| x.clone()),
        );
        known.contains(buf.as_slice())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(raw: &[&str]) -> Vec<Vec<String>> {
        raw.iter()
            .map(|s| s.chars().map(|c| c.to_string()).collect())
            .collect()
    }

    #[test]
    fn singles_join_to_pairs() {
        let out = generate_candidates(&sets(&["a", "b", "c"])).unwrap();
        assert_eq!(out, sets(&["ab", "ac", "bc"]));
    }

    #[test]
    fn pairs_join_to_triple() {
        let out = generate_candidates(&sets(&["ab", "ac", "bc"])).unwrap();
        assert_eq!(out, sets(&["abc"]));
    }

    #[test]
    fn prune_drops_unsupported() {
        // abc joins from ab+ac but bc is missing
        assert!(generate_candidates(&sets(&["ab", "ac"])).unwrap().is_empty());
        assert!(generate_candidates(&sets(&["ab", "cd"])).unwrap().is_empty());
    }

    #[test]
    fn unordered_and_duplicated_input() {
        let out = generate_candidates(&sets(&["bc", "ab", "ac", "ab"])).unwrap();
        assert_eq!(out, sets(&["abc"]));
        assert!(generate_candidates::<String>(&[]).unwrap().is_empty());
    }

    #[test]
    fn contract_violations() {
        assert!(matches!(
            generate_candidates(&sets(&["a", "bc"])),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            generate_candidates(&sets(&["ba"])),
            Err(Error::Contract(_))
        ));
    }
}
