//! Text formats for mined itemsets and rules.
//!
//! Itemsets file:
//!
//! ```text
//! # transactions=4
//! a|0.750000
//! a,b|0.500000
//! ```
//!
//! The header records how many transactions were mined so that exact counts
//! can be recovered from the six-place supports. Rules file lines are
//! `a1,a2=>c1|support|confidence`.

use std::path::Path;

use super::{AssociationRule, ItemSet};
use crate::error::{Error, Result};
use crate::fraction::{format_decimal, Fraction};
use crate::fsutil;

const HEADER: &str = "# transactions=";

pub fn format_itemsets(sets: &[ItemSet], total: u64) -> String {
    let mut out = format!("{HEADER}{total}\n");
    for set in sets {
        out.push_str(&set.items.join(","));
        out.push('|');
        out.push_str(&format_decimal(set.support()));
        out.push('\n');
    }
    out
}

pub fn parse_itemsets(text: &str) -> Result<Vec<ItemSet>> {
    let mut lines = text.split_terminator('\n').enumerate();
    let total: u64 = match lines.next() {
        Some((_, header)) => header
            .strip_prefix(HEADER)
            .and_then(|n| n.trim_end().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `{HEADER}N` header"),
            })?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty itemsets file".into(),
            })
        }
    };

    let mut sets = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let bad = |message: &str| Error::Parse {
            line: line_no,
            message: message.into(),
        };
        let (items, support) = line
            .trim_end_matches('\r')
            .rsplit_once('|')
            .ok_or_else(|| bad("expected `items|support`"))?;
        let items: Vec<String> = items.split(',').map(str::to_owned).collect();
        if items.iter().any(String::is_empty) {
            return Err(bad("empty item"));
        }
        if !items.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("items are not sorted and distinct"));
        }
        let value: f64 = support.parse().map_err(|_| bad("unparsable support"))?;
        if total == 0 || !(0.0..=1.0).contains(&value) {
            return Err(bad("support out of range"));
        }
        let count = (value * total as f64).round() as u64;
        if format_decimal(Fraction::new(count, total)) != support {
            return Err(bad("support does not match any count over the header total"));
        }
        sets.push(ItemSet {
            items,
            count,
            total,
        });
    }
    Ok(sets)
}

pub fn write_itemsets(path: impl AsRef<Path>, sets: &[ItemSet], total: u64) -> Result<()> {
    let text = format_itemsets(sets, total);
    fsutil::write_atomic(path.as_ref(), |out| out.write_all(text.as_bytes()))
}

pub fn read_itemsets(path: impl AsRef<Path>) -> Result<Vec<ItemSet>> {
    let path = path.as_ref();
    parse_itemsets(&fsutil::read_string(path)?).map_err(|e| e.in_file(path))
}

pub fn format_rules(rules: &[AssociationRule]) -> String {
    let mut out = String::new();
    for rule in rules {
        out.push_str(&rule.antecedent.join(","));
        out.push_str("=>");
        out.push_str(&rule.consequent.join(","));
        out.push('|');
        out.push_str(&format_decimal(rule.support()));
        out.push('|');
        out.push_str(&format_decimal(rule.confidence()));
        out.push('\n');
    }
    out
}

pub fn write_rules(path: impl AsRef<Path>, rules: &[AssociationRule]) -> Result<()> {
    let text = format_rules(rules);
    fsutil::write_atomic(path.as_ref(), |out| out.write_all(text.as_bytes()))
}
