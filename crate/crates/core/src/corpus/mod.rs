//! Post and follow ingestion, hashtag normalization, transaction encoding
//! and synthetic fixtures.

mod csv;
mod normalize;
mod records;
mod synth;

pub use csv::{decode_transactions, encode_transactions, read_transactions_csv, write_transactions_csv};
pub use normalize::{normalize_account, normalize_tag};
pub use records::{
    parse_follow_line, parse_post_line, posts_to_transactions, read_follows, read_posts,
    write_follows, write_posts, Batch, FollowRecord, Parsed, PostRecord, Transaction,
};
pub use synth::{
    gen_synthetic_corpus, zipf_transactions, FollowBundle, PlantedTerm, SynthSpec,
    SyntheticCorpus, WeightedTerm, ZipfSpec,
};
