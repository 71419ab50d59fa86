//! Property tests over the library's core invariants.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use tagminer::corpus::{posts_to_transactions, PostRecord, Transaction};
use tagminer::interests::top_followed;
use tagminer::lexicon::{propose_candidates, seed_from_frequency, Category, Lexicon};
use tagminer::miner::{association_rules, brute_force_frequent, frequent_itemsets, ItemSet, MinerConfig};
use tagminer::fraction::{Fraction, Threshold};
use tagminer::screening::{assign_category, screen_post, Purity};
use tagminer::temporal::{hour_histogram, weekday_histogram};

const ITEMS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn transactions() -> impl Strategy<Value = Vec<Transaction>> {
    prop::collection::vec(prop::collection::btree_set(0..ITEMS.len(), 1..=6), 0..=40).prop_map(
        |rows| {
            rows.into_iter()
                .map(|r| Transaction::new(r.into_iter().map(|i| ITEMS[i])).unwrap())
                .collect()
        },
    )
}

fn min_support() -> impl Strategy<Value = f64> {
    (1u32..=9).prop_map(|k| k as f64 / 10.0)
}

fn post(id: usize, tags: BTreeSet<String>, taken_at: u64) -> PostRecord {
    PostRecord {
        id: id.to_string(),
        author: "u".into(),
        taken_at,
        tags,
        caption: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn apriori_matches_oracle(tx in transactions(), ms in min_support(), partitions in 1usize..4) {
        let cfg = MinerConfig::new(ms, 0.5).unwrap().with_partitions(partitions).unwrap();
        prop_assert_eq!(frequent_itemsets(&tx, &cfg), brute_force_frequent(&tx, &cfg).unwrap());
    }

    #[test]
    fn downward_closure(tx in transactions(), ms in min_support()) {
        let cfg = MinerConfig::new(ms, 0.5).unwrap();
        let sets = frequent_itemsets(&tx, &cfg);
        let lookup: HashMap<&[String], &ItemSet> =
            sets.iter().map(|s| (s.items.as_slice(), s)).collect();
        for s in &sets {
            prop_assert!(s.count > 0 && s.support() <= Fraction::new(1, 1));
            for skip in 0..s.items.len() {
                if s.items.len() == 1 { break; }
                let sub: Vec<String> = s.items.iter().enumerate()
                    .filter(|&(i, _)| i != skip).map(|(_, x)| x.clone()).collect();
                let parent = lookup.get(sub.as_slice());
                prop_assert!(parent.is_some_and(|p| p.count >= s.count));
            }
        }
    }

    #[test]
    fn rules_are_sound(tx in transactions(), ms in min_support(), mc in 1u32..=10) {
        let cfg = MinerConfig::new(ms, mc as f64 / 10.0).unwrap();
        let sets = frequent_itemsets(&tx, &cfg);
        let rules = association_rules(&sets, &cfg).unwrap();
        let count = |items: &[String]| tx.iter()
            .filter(|t| items.iter().all(|i| t.contains(i))).count() as u64;
        for r in &rules {
            prop_assert!(!r.antecedent.is_empty() && !r.consequent.is_empty());
            prop_assert!(r.antecedent.iter().all(|a| !r.consequent.contains(a)));
            let mut union = r.antecedent.clone();
            union.extend(r.consequent.iter().cloned());
            union.sort();
            // exact confidence against a direct scan
            prop_assert_eq!(r.confidence(), Fraction::new(count(&union), count(&r.antecedent)));
            prop_assert!(r.confidence() >= Fraction::new(mc as u64, 10));
        }
    }

    #[test]
    fn top_followed_agrees_with_singletons(tx in transactions(), k in 1usize..10) {
        let ranked = top_followed(&tx, k);
        let cfg = MinerConfig::new(1e-9, 0.5).unwrap().with_max_itemset_size(Some(1)).unwrap();
        let singles = frequent_itemsets(&tx, &cfg);
        prop_assert_eq!(ranked.len(), k.min(singles.len()));
        for (r, s) in ranked.iter().zip(&singles) {
            prop_assert_eq!(&r.account, &s.items[0]);
            prop_assert_eq!(r.support(), s.support());
        }
    }

    #[test]
    fn transactions_preserve_multiplicity(
        tagsets in prop::collection::vec(prop::collection::btree_set("[a-d]", 0..3), 0..30)
    ) {
        let posts: Vec<PostRecord> = tagsets.iter().enumerate()
            .map(|(i, t)| post(i, t.clone(), 0)).collect();
        let tx = posts_to_transactions(&posts);
        prop_assert_eq!(tx.len(), tagsets.iter().filter(|t| !t.is_empty()).count());
    }

    #[test]
    fn seed_selection_is_a_frequency_cut(
        tagsets in prop::collection::vec(prop::collection::btree_set("[a-h]", 1..4), 1..30),
        k in 1usize..10,
    ) {
        let posts: Vec<PostRecord> = tagsets.iter().enumerate()
            .map(|(i, t)| post(i, t.clone(), 0)).collect();
        let lex = seed_from_frequency(&posts, k).unwrap();
        let mut freq: HashMap<&str, usize> = HashMap::new();
        for t in tagsets.iter().flatten() {
            *freq.entry(t).or_default() += 1;
        }
        prop_assert_eq!(lex.len(), k.min(freq.len()));
        let min_in = lex.terms().map(|t| freq[t]).min().unwrap();
        let max_out = freq.iter().filter(|(t, _)| !lex.contains(t)).map(|(_, &n)| n).max();
        prop_assert!(max_out.is_none_or(|m| min_in >= m));
    }

    #[test]
    fn adding_terms_never_loses_matches(
        tags in prop::collection::btree_set("[a-f]", 0..6),
        base in prop::collection::btree_set("[a-f]", 0..6),
        extra in "[a-f]",
    ) {
        let p = post(0, tags, 0);
        let lex = Lexicon::from_seed(base.iter().map(|t| (t.as_str(), Category::Weed))).unwrap();
        let mut bigger = base.clone();
        bigger.insert(extra);
        let lex2 = Lexicon::from_seed(bigger.iter().map(|t| (t.as_str(), Category::Weed))).unwrap();
        prop_assert!(
            screen_post(&p, &lex2, 2).matched_terms.len() >= screen_post(&p, &lex, 2).matched_terms.len()
        );
    }

    #[test]
    fn one_category_at_most_and_order_free(
        terms in prop::collection::vec((0usize..3, "[a-j]"), 2..10),
    ) {
        let entries: Vec<(String, Category)> = terms.iter()
            .map(|(c, t)| (format!("{t}{c}"), Category::DRUGS[*c])).collect();
        let lex = Lexicon::from_seed(entries.iter().map(|(t, c)| (t.as_str(), *c))).unwrap();
        let tags: BTreeSet<String> = entries.iter().map(|(t, _)| t.clone()).collect();
        prop_assume!(tags.len() >= 2);
        let a = assign_category(&post(0, tags.clone(), 0), &lex, 2, Purity::default()).unwrap();
        if let Some(c) = a.category {
            let n = entries.iter().filter(|(_, cat)| *cat == c).map(|(t, _)| t).collect::<BTreeSet<_>>().len();
            prop_assert!(n * 5 > tags.len() * 4);
        }
        // rebuilding the lexicon in reverse order changes nothing
        let rev = Lexicon::from_seed(entries.iter().rev().map(|(t, c)| (t.as_str(), *c))).unwrap();
        if rev == lex {
            let b = assign_category(&post(0, tags, 0), &rev, 2, Purity::default()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn candidates_respect_threshold_and_lexicon(
        tx in transactions(), lex_items in prop::collection::btree_set(0..ITEMS.len(), 1..4),
        threshold in min_support(),
    ) {
        let lex = Lexicon::from_seed(lex_items.iter().map(|&i| (ITEMS[i], Category::General))).unwrap();
        let sets = frequent_itemsets(&tx, &MinerConfig::new(0.05, 0.5).unwrap());
        let t = Threshold::new(threshold, "t").unwrap();
        for c in propose_candidates(&sets, &lex, t) {
            prop_assert!(!lex.contains(&c.term));
            prop_assert!(c.support_fraction() > t.as_fraction());
        }
    }

    #[test]
    fn histograms_conserve_and_ignore_order(mut ts in prop::collection::vec(0u64..4_000_000_000, 0..200)) {
        let h = hour_histogram(&ts);
        let w = weekday_histogram(&ts);
        prop_assert_eq!(h.total(), ts.len() as u64);
        prop_assert_eq!(w.total(), ts.len() as u64);
        ts.reverse();
        prop_assert_eq!(hour_histogram(&ts), h);
        prop_assert_eq!(weekday_histogram(&ts), w);
    }
}
