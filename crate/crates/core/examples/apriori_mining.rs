//! Frequent itemsets and association rules, checked against the brute-force
//! oracle.

use tagminer::corpus::Transaction;
use tagminer::miner::{
    association_rules, brute_force_frequent, format_itemsets, format_rules, frequent_itemsets,
    MinerConfig,
};

fn main() -> tagminer::Result<()> {
    let rows = [
        vec!["weed", "kush", "high"],
        vec!["weed", "kush"],
        vec!["weed", "high", "poup"],
        vec!["lean", "purpledrank"],
        vec!["weed", "kush", "high", "poup"],
        vec!["lean", "purpledrank", "high"],
    ];
    let tx: Vec<Transaction> = rows
        .iter()
        .map(|r| Transaction::new(r.iter().copied()))
        .collect::<tagminer::Result<_>>()?;

    let cfg = MinerConfig::new(0.3, 0.7)?;
    let sets = frequent_itemsets(&tx, &cfg);
    assert_eq!(sets, brute_force_frequent(&tx, &cfg)?);
    print!("{}", format_itemsets(&sets, tx.len() as u64));

    let rules = association_rules(&sets, &cfg)?;
    println!("# rules at confidence >= {}", cfg.min_confidence());
    print!("{}", format_rules(&rules));
    Ok(())
}
