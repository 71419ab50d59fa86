//! Most followed accounts and follow association rules.

use tagminer::corpus::{gen_synthetic_corpus, SynthSpec};
use tagminer::interests::InterestReport;
use tagminer::miner::MinerConfig;

fn main() -> tagminer::Result<()> {
    let corpus = gen_synthetic_corpus(1, &SynthSpec::default())?;
    let report = InterestReport::build(&corpus.follows, 8, &MinerConfig::new(0.1, 0.6)?)?;
    print!("{}", report.to_text());
    Ok(())
}
