use std::collections::HashMap;

use super::{AssociationRule, ItemSet, MinerConfig};
use crate::error::{Error, Result};

/// Largest frequent set rules are generated from (all `2^n - 2` antecedents
/// are enumerated).
const MAX_RULE_SET_SIZE: usize = 30;

/// For each frequent set `S` with at least two items and each non-empty
/// proper subset `A`, emits `A => S \ A` when
/// `count(S) / count(A) >= cfg.min_confidence()`.
///
/// Antecedent counts are looked up in `frequent`, which therefore has to be
/// downward closed. Sorted by confidence, then support (both descending),
/// then antecedent and consequent ascending.
pub fn association_rules(frequent: &[ItemSet], cfg: &MinerConfig) -> Result<Vec<AssociationRule>> {
    let Some(total) = frequent.first().map(|s| s.total) else {
        return Ok(Vec::new());
    };
    let mut counts: HashMap<&[String], u64> = HashMap::with_capacity(frequent.len());
    for set in frequent {
        if set.total != total {
            return Err(Error::Contract(format!(
                "itemsets mined over different totals ({total} and {})",
                set.total
            )));
        }
        counts.insert(set.items.as_slice(), set.count);
    }
    let threshold = cfg.min_confidence().as_fraction();

    let mut rules = Vec::new();
    let mut antecedent = Vec::new();
    let mut consequent = Vec::new();
    for set in frequent.iter().filter(|s| s.items.len() >= 2) {
        let n = set.items.len();
        if n > MAX_RULE_SET_SIZE {
            return Err(Error::Contract(format!(
                "itemset of size {n} is too large for rule generation (max {MAX_RULE_SET_SIZE})"
            )));
        }
        for mask in 1u64..(1 << n) - 1 {
            antecedent.clear();
            consequent.clear();
            for (bit, item) in set.items.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    antecedent.push(item.clone());
                } else {
                    consequent.push(item.clone());
                }
            }
            let antecedent_count =
                *counts
                    .get(antecedent.as_slice())
                    .ok_or_else(|| Error::InputNotClosed {
                        items: antecedent.clone(),
                    })?;
            let rule = AssociationRule {
                antecedent: antecedent.clone(),
                consequent: consequent.clone(),
                union_count: set.count,
                antecedent_count,
                total,
            };
            if rule.confidence() >= threshold {
                rules.push(rule);
            }
        }
    }
    rules.sort_by(|a, b| {
        b.confidence()
            .cmp(&a.confidence())
            .then_with(|| b.union_count.cmp(&a.union_count))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Transaction;
    use crate::fraction::Fraction;
    use crate::miner::frequent_itemsets;

    fn tx(rows: &[&str]) -> Vec<Transaction> {
        rows.iter()
            .map(|r| Transaction::new(r.chars().map(|c| c.to_string())).unwrap())
            .collect()
    }

    fn find<'a>(rules: &'a [AssociationRule], a: &str, c: &str) -> Option<&'a AssociationRule> {
        rules
            .iter()
            .find(|r| r.antecedent.concat() == a && r.consequent.concat() == c)
    }

    #[test]
    fn confidence_from_counts() {
        // supp(ab) = 3/5, supp(a) = 4/5
        let cfg = MinerConfig::new(0.2, 0.5).unwrap();
        let sets = frequent_itemsets(&tx(&["ab", "ab", "abc", "ac", "b"]), &cfg);
        let rules = association_rules(&sets, &cfg).unwrap();
        let rule = find(&rules, "a", "b").unwrap();
        assert_eq!(rule.confidence(), Fraction::new(3, 4));
        assert_eq!(rule.support(), Fraction::new(3, 5));

        let strict = MinerConfig::new(0.2, 1.0).unwrap();
        let rules = association_rules(&sets, &strict).unwrap();
        assert!(find(&rules, "a", "b").is_none());
        assert!(rules.iter().all(|r| r.confidence() == Fraction::new(1, 1)));
    }

    #[test]
    fn single_pattern_gives_full_confidence() {
        let cfg = MinerConfig::new(0.5, 0.6).unwrap();
        let sets = frequent_itemsets(&tx(&["abc", "abc", "abc"]), &cfg);
        let rules = association_rules(&sets, &cfg).unwrap();
        // 3 subsets of size 1 and 3 of size 2 as antecedents
        assert_eq!(rules.len(), 6 + 6);
        let rule = find(&rules, "a", "bc").unwrap();
        assert_eq!(rule.confidence(), Fraction::new(1, 1));
    }

    #[test]
    fn missing_subset_is_reported() {
        let sets = vec![
            ItemSet {
                items: vec!["a".into(), "b".into()],
                count: 2,
                total: 4,
            },
            ItemSet {
                items: vec!["a".into()],
                count: 3,
                total: 4,
            },
        ];
        let err = association_rules(&sets, &MinerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::InputNotClosed { items } if items == ["b"]));
    }

    #[test]
    fn sorted_by_confidence_then_support() {
        let cfg = MinerConfig::new(0.2, 0.1).unwrap();
        let sets = frequent_itemsets(&tx(&["ab", "ab", "abc", "ac", "b", "cd"]), &cfg);
        let rules = association_rules(&sets, &cfg).unwrap();
        for w in rules.windows(2) {
            assert!(
                w[0].confidence() > w[1].confidence()
                    || (w[0].confidence() == w[1].confidence()
                        && w[0].union_count >= w[1].union_count)
            );
        }
    }
}
