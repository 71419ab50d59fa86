//! Generate a seeded synthetic corpus and check its planted properties by
//! direct counting.
//!
//! Usage: cargo run --example synthetic_corpus [seed]

use tagminer::corpus::{gen_synthetic_corpus, SynthSpec};
use tagminer::temporal::{hour_histogram, weekday_histogram, WEEKDAY_NAMES};

fn main() -> tagminer::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let spec = SynthSpec::default();
    let corpus = gen_synthetic_corpus(seed, &spec)?;
    println!(
        "seed {seed}: {} posts, {} follow records, lexicon of {} terms",
        corpus.posts.len(),
        corpus.follows.len(),
        corpus.lexicon.len()
    );

    let n = corpus.posts.len() as f64;
    for planted in &spec.planted {
        let hits = corpus.posts.iter().filter(|p| p.tags.contains(&planted.term)).count();
        println!(
            "planted {:<6} target {:.2}  realized {:.4}",
            planted.term,
            planted.support,
            hits as f64 / n
        );
    }

    let hours = hour_histogram(&corpus.posts);
    let days = weekday_histogram(&corpus.posts);
    println!("busiest hours (UTC): {:?}", hours.peaks(2));
    println!("busiest weekday: {}", WEEKDAY_NAMES[days.peaks(1)[0]]);
    Ok(())
}
