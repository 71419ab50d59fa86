//! Level-wise Apriori frequent-itemset mining and association rules.
//!
//! Supports are kept as integer counts over a known transaction total, so
//! every threshold comparison and every confidence is exact. Decimal values
//! appear only when results are written out.

mod apriori;
mod candidates;
mod format;
mod oracle;
mod rules;

use std::fmt;

pub use apriori::frequent_itemsets;
pub use candidates::generate_candidates;
pub use format::{
    format_itemsets, format_rules, parse_itemsets, read_itemsets, write_itemsets, write_rules,
};
pub use oracle::{brute_force_frequent, ORACLE_MAX_ITEMS};
pub use rules::association_rules;

use crate::error::{Error, Result};
use crate::fraction::{format_decimal, to_f64, Fraction, Threshold};

/// A frequent itemset and the number of transactions containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ItemSet {
    /// Sorted ascending, no duplicates.
    pub items: Vec<String>,
    pub count: u64,
    /// Number of transactions mined.
    pub total: u64,
}

impl ItemSet {
    pub fn support(&self) -> Fraction {
        Fraction::new(self.count, self.total)
    }

    pub fn support_f64(&self) -> f64 {
        to_f64(self.support())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: &str) -> bool {
        self.items.binary_search_by(|i| i.as_str().cmp(item)).is_ok()
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} support {}",
            self.items.join(", "),
            format_decimal(self.support())
        )
    }
}

/// `antecedent => consequent`, with the counts behind its support and
/// confidence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssociationRule {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    /// Transactions containing antecedent and consequent together.
    pub union_count: u64,
    /// Transactions containing the antecedent.
    pub antecedent_count: u64,
    pub total: u64,
}

impl AssociationRule {
    pub fn support(&self) -> Fraction {
        Fraction::new(self.union_count, self.total)
    }

    pub fn confidence(&self) -> Fraction {
        Fraction::new(self.union_count, self.antecedent_count)
    }

    pub fn confidence_f64(&self) -> f64 {
        to_f64(self.confidence())
    }
}

impl fmt::Display for AssociationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) => ({}) support {} confidence {}",
            self.antecedent.join(", "),
            self.consequent.join(", "),
            format_decimal(self.support()),
            format_decimal(self.confidence())
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinerConfig {
    min_support: Threshold,
    min_confidence: Threshold,
    max_itemset_size: Option<usize>,
    partitions: usize,
}

impl MinerConfig {
    pub const DEFAULT_MIN_SUPPORT: f64 = 0.05;
    pub const DEFAULT_MIN_CONFIDENCE: f64 = 0.6;

    pub fn new(min_support: f64, min_confidence: f64) -> Result<Self> {
        Ok(MinerConfig {
            min_support: Threshold::new(min_support, "min_support")?,
            min_confidence: Threshold::new(min_confidence, "min_confidence")?,
            max_itemset_size: None,
            partitions: 1,
        })
    }

    pub fn with_max_itemset_size(mut self, max: Option<usize>) -> Result<Self> {
        if max == Some(0) {
            return Err(Error::Config("max_itemset_size must be at least 1".into()));
        }
        self.max_itemset_size = max;
        Ok(self)
    }

    /// Number of transaction partitions counted independently and merged.
    /// Results do not depend on it.
    pub fn with_partitions(mut self, partitions: usize) -> Result<Self> {
        if partitions == 0 {
            return Err(Error::Config("partitions must be at least 1".into()));
        }
        self.partitions = partitions;
        Ok(self)
    }

    pub fn min_support(&self) -> Threshold {
        self.min_support
    }

    pub fn min_confidence(&self) -> Threshold {
        self.min_confidence
    }

    pub fn max_itemset_size(&self) -> Option<usize> {
        self.max_itemset_size
    }

    pub fn partitions(&self) -> usize {
        self.partitions
    }
}

impl Default for MinerConfig {
    fn default() -> Self {
        MinerConfig::new(Self::DEFAULT_MIN_SUPPORT, Self::DEFAULT_MIN_CONFIDENCE)
            .expect("default thresholds are valid")
    }
}

/// Canonical output order: size ascending, support descending, items
/// ascending.
pub(crate) fn canonical_order(a: &ItemSet, b: &ItemSet) -> std::cmp::Ordering {
    a.items
        .len()
        .cmp(&b.items.len())
        .then_with(|| b.support().cmp(&a.support()))
        .then_with(|| a.items.cmp(&b.items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(MinerConfig::new(0.0, 0.5).is_err());
        assert!(MinerConfig::new(1.1, 0.5).is_err());
        assert!(MinerConfig::new(0.5, 0.0).is_err());
        assert!(MinerConfig::new(1.0, 1.0).is_ok());
        let cfg = MinerConfig::default();
        assert!(cfg.with_max_itemset_size(Some(0)).is_err());
        assert!(cfg.with_partitions(0).is_err());
    }

    #[test]
    fn itemset_contains() {
        let s = ItemSet {
            items: vec!["a".into(), "c".into()],
            count: 1,
            total: 2,
        };
        assert!(s.contains("c"));
        assert!(!s.contains("b"));
        assert_eq!(s.support(), Fraction::new(1, 2));
    }
}
