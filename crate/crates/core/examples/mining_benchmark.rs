//! Times frequent-itemset mining on a Zipf basket corpus of desk scale.
//!
//! ```bash
//! cargo run --release -p tagminer --example mining_benchmark -- 100000 0.01
//! ```

use std::time::Instant;

use tagminer::corpus::{zipf_transactions, ZipfSpec};
use tagminer::miner::{frequent_itemsets, MinerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let transactions: usize = args.next().map_or(Ok(100_000), |s| s.parse())?;
    let min_support: f64 = args.next().map_or(Ok(0.01), |s| s.parse())?;
    let partitions: usize = args.next().map_or(Ok(1), |s| s.parse())?;

    let spec = ZipfSpec {
        transactions,
        ..ZipfSpec::default()
    };
    let start = Instant::now();
    let tx = zipf_transactions(42, spec)?;
    println!("generated {} transactions in {:.2?}", tx.len(), start.elapsed());

    let cfg = MinerConfig::new(min_support, 0.6)?.with_partitions(partitions)?;
    let start = Instant::now();
    let sets = frequent_itemsets(&tx, &cfg);
    println!(
        "mined {} frequent itemsets at min_support {min_support} in {:.2?}",
        sets.len(),
        start.elapsed()
    );
    for size in 1..=sets.last().map_or(0, |s| s.len()) {
        let n = sets.iter().filter(|s| s.len() == size).count();
        println!("  size {size}: {n}");
    }
    Ok(())
}
