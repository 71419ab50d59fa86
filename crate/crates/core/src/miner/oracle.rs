use std::collections::BTreeSet;

use super::{ItemSet, MinerConfig};
use crate::corpus::Transaction;
use crate::error::{Error, Result};

/// Distinct-item limit for [`brute_force_frequent`].
pub const ORACLE_MAX_ITEMS: usize = 20;

/// Reference miner: enumerates every non-empty subset of the observed items
/// and counts it with a full scan. Exponential; meant for checking
/// [`frequent_itemsets`](super::frequent_itemsets) on small inputs.
pub fn brute_force_frequent(tx: &[Transaction], cfg: &MinerConfig) -> Result<Vec<ItemSet>> {
    let items: Vec<&str> = tx
        .iter()
        .flat_map(|t| t.items())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if items.len() > ORACLE_MAX_ITEMS {
        return Err(Error::OracleScale {
            distinct: items.len(),
            limit: ORACLE_MAX_ITEMS,
        });
    }
    let masks: Vec<u32> = tx
        .iter()
        .map(|t| {
            items
                .iter()
                .enumerate()
                .filter(|(_, item)| t.contains(item))
                .fold(0u32, |m, (bit, _)| m | (1 << bit))
        })
        .collect();

    let total = tx.len() as u64;
    let max_size = cfg.max_itemset_size().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for subset in 1u32..(1u32 << items.len()) {
        if subset.count_ones() as usize > max_size {
            continue;
        }
        let count = masks.iter().filter(|&&m| m & subset == subset).count() as u64;
        if count > 0 && cfg.min_support().is_met_by(count, total) {
            out.push(ItemSet {
                items: (0..items.len())
                    .filter(|bit| subset & (1 << bit) != 0)
                    .map(|bit| items[bit].to_owned())
                    .collect(),
                count,
                total,
            });
        }
    }
    // Same order as the level-wise miner, compared by cross-multiplication.
    out.sort_by(|a, b| {
        a.items
            .len()
            .cmp(&b.items.len())
            .then_with(|| (b.count as u128 * a.total as u128).cmp(&(a.count as u128 * b.total as u128)))
            .then_with(|| a.items.cmp(&b.items))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::Fraction;

    fn tx(rows: &[&str]) -> Vec<Transaction> {
        rows.iter()
            .map(|r| Transaction::new(r.chars().map(|c| c.to_string())).unwrap())
            .collect()
    }

    #[test]
    fn hand_counted_example() {
        let cfg = MinerConfig::new(0.5, 0.5).unwrap();
        let out = brute_force_frequent(&tx(&["abc", "ab", "ac", "b"]), &cfg).unwrap();
        let got: Vec<(String, Fraction)> =
            out.iter().map(|s| (s.items.concat(), s.support())).collect();
        assert_eq!(
            got,
            vec![
                ("a".into(), Fraction::new(3, 4)),
                ("b".into(), Fraction::new(3, 4)),
                ("c".into(), Fraction::new(1, 2)),
                ("ab".into(), Fraction::new(1, 2)),
                ("ac".into(), Fraction::new(1, 2)),
            ]
        );
    }

    #[test]
    fn trivial_cases() {
        let cfg = MinerConfig::new(0.5, 0.5).unwrap();
        let out = brute_force_frequent(&tx(&["a"]), &cfg).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].support(), Fraction::new(1, 1));

        let cfg = MinerConfig::new(0.9, 0.5).unwrap();
        assert!(brute_force_frequent(&tx(&["a", "b", "c"]), &cfg).unwrap().is_empty());
        assert!(brute_force_frequent(&[], &cfg).unwrap().is_empty());
    }

    #[test]
    fn refuses_large_vocabularies() {
        let wide = tx(&["abcdefghijklmnopqrstu"]);
        assert!(matches!(
            brute_force_frequent(&wide, &MinerConfig::default()),
            Err(Error::OracleScale { distinct: 21, .. })
        ));
    }
}
