//! Every CLI stage in order, writing into a scratch directory.
//!
//! Usage: cargo run --example full_pipeline [out_dir]

use std::path::PathBuf;

fn stage(args: &[&str]) {
    println!("$ tagminer {}", args.join(" "));
    let code = tagminer::cli::run(std::iter::once("tagminer").chain(args.iter().copied()));
    assert_eq!(code, 0, "stage failed");
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("tagminer-pipeline"));
    std::fs::create_dir_all(&dir).expect("create output dir");
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let _ = std::fs::remove_file(dir.join("queue.jsonl"));

    stage(&[
        "synth", "--seed", "1", "--out-posts", &p("posts.jsonl"),
        "--out-follows", &p("follows.jsonl"), "--out-lexicon", &p("lexicon.json"),
    ]);
    stage(&["screen", "--posts", &p("posts.jsonl"), "--lexicon", &p("lexicon.json"), "--out", &p("screened.jsonl")]);
    stage(&["mine", "--posts", &p("posts.jsonl"), "--write-tx", &p("tx.csv"), "--min-support", "0.05", "--out", &p("sets.txt")]);
    stage(&["rules", "--sets", &p("sets.txt"), "--min-confidence", "0.6", "--out", &p("rules.txt")]);
    stage(&["expand", "--sets", &p("sets.txt"), "--lexicon", &p("lexicon.json"), "--queue", &p("queue.jsonl")]);
    stage(&["review", "--lexicon", &p("lexicon.json"), "--queue", &p("queue.jsonl")]);
    stage(&[
        "review", "--lexicon", &p("lexicon.json"), "--queue", &p("queue.jsonl"),
        "--approve", "poup=weed", "--out-lexicon", &p("lexicon_v2.json"),
    ]);
    stage(&["screen", "--posts", &p("posts.jsonl"), "--lexicon", &p("lexicon_v2.json"), "--out", &p("screened_v2.jsonl")]);
    stage(&["temporal", "--screened", &p("screened_v2.jsonl"), "--out", &p("temporal.txt")]);
    stage(&["interests", "--follows", &p("follows.jsonl"), "--out", &p("interests.txt")]);
    println!("outputs in {}", dir.display());
}
