//! Hour-of-day and weekday histograms of drug-related posts per category.

use tagminer::corpus::{gen_synthetic_corpus, SynthSpec};
use tagminer::screening::{screen_all, Purity};
use tagminer::temporal::TemporalReport;

fn main() -> tagminer::Result<()> {
    let corpus = gen_synthetic_corpus(1, &SynthSpec::default())?;
    let screened = screen_all(&corpus.posts, &corpus.lexicon, 2, Purity::default());
    let report = TemporalReport::from_screened(&screened);
    print!("{}", report.to_text());
    Ok(())
}
