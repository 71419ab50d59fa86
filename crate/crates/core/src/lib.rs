//! Hashtag-driven mining of drug-related social media posts.
//!
//! The pipeline screens posts against a categorized hashtag lexicon, mines
//! frequent hashtag sets with Apriori to propose new lexicon terms for human
//! review, aggregates drug-related posts into hour-of-day and weekday
//! histograms, and mines common interests from the accounts users follow.
//!
//! Each stage is a library module and a `tagminer` subcommand; stages talk
//! to each other through plain files (JSONL posts and follows, a
//! transactions CSV, itemset and rule text files, a JSON lexicon and a
//! JSONL review queue).

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fraction;
mod fsutil;
pub mod interests;
pub mod lexicon;
pub mod miner;
pub mod screening;
pub mod temporal;

pub use error::{Error, Result};
