use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::corpus::{normalize_account, FollowRecord, Transaction};
use crate::error::Result;
use crate::fraction::{format_decimal, Fraction};
use crate::miner::{association_rules, frequent_itemsets, AssociationRule, MinerConfig};

/// One transaction per user holding the accounts they follow. Users who
/// follow nobody are skipped.
pub fn follows_to_transactions(records: &[FollowRecord]) -> Vec<Transaction> {
    records
        .iter()
        .filter_map(|r| {
            let accounts: BTreeSet<String> = r
                .follows
                .iter()
                .filter_map(|a| normalize_account(a).ok())
                .collect();
            (!accounts.is_empty()).then(|| Transaction::from_normalized(accounts))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedAccount {
    pub account: String,
    pub count: u64,
    pub total: u64,
}

impl RankedAccount {
    pub fn support(&self) -> Fraction {
        Fraction::new(self.count, self.total)
    }
}

/// The `k` most followed accounts by support, ties in ascending name order.
pub fn top_followed(tx: &[Transaction], k: usize) -> Vec<RankedAccount> {
    let total = tx.len() as u64;
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in tx {
        for item in t.items() {
            *counts.entry(item).or_default() += 1;
        }
    }
    let mut ranked: Vec<RankedAccount> = counts
        .into_iter()
        .map(|(account, count)| RankedAccount {
            account: account.to_owned(),
            count,
            total,
        })
        .collect();
    ranked.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.account.cmp(&b.account)));
    ranked.truncate(k);
    ranked
}

/// Association rules among followed accounts; exactly the miner's rules on
/// the follow transactions.
pub fn interest_rules(tx: &[Transaction], cfg: &MinerConfig) -> Result<Vec<AssociationRule>> {
    association_rules(&frequent_itemsets(tx, cfg), cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterestReport {
    pub users: u64,
    pub top_accounts: Vec<RankedAccount>,
    pub rules: Vec<AssociationRule>,
}

impl InterestReport {
    pub fn build(records: &[FollowRecord], top: usize, cfg: &MinerConfig) -> Result<Self> {
        let tx = follows_to_transactions(records);
        Ok(InterestReport {
            users: tx.len() as u64,
            top_accounts: top_followed(&tx, top),
            rules: interest_rules(&tx, cfg)?,
        })
    }

    /// `account|support` lines, then rules in the miner's rules format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# top followed accounts (users={})", self.users);
        for a in &self.top_accounts {
            let _ = writeln!(out, "{}|{}", a.account, format_decimal(a.support()));
        }
        let _ = writeln!(out, "# rules ({})", self.rules.len());
        out.push_str(&crate::miner::format_rules(&self.rules));
        out
    }
}
