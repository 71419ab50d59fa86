use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::normalize::{normalize_account, normalize_tag};
use crate::error::{Error, Result};
use crate::fsutil;

/// One social post with its normalized hashtag set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostRecord {
    pub id: String,
    #[serde(rename = "user")]
    pub author: String,
    /// Epoch seconds, UTC.
    pub taken_at: u64,
    pub tags: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caption: Option<String>,
}

/// Accounts followed by one user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FollowRecord {
    pub user: String,
    pub follows: BTreeSet<String>,
}

/// A set of items observed together: one post's tags or one user's follows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transaction {
    items: BTreeSet<String>,
}

impl Transaction {
    pub fn new<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for item in items {
            let item = item.into();
            if item.is_empty() || item.contains([',', '\n', '\r']) {
                return Err(Error::Contract(format!(
                    "item {item:?} is empty or contains a comma or line break"
                )));
            }
            set.insert(item);
        }
        Ok(Transaction { items: set })
    }

    /// Items in ascending order.
    pub fn items(&self) -> impl ExactSizeIterator<Item = &str> + Clone {
        self.items.iter().map(String::as_str)
    }

    pub fn item_set(&self) -> &BTreeSet<String> {
        &self.items
    }

    pub fn contains(&self, item: &str) -> bool {
        self.items.contains(item)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub(crate) fn from_normalized(items: BTreeSet<String>) -> Self {
        Transaction { items }
    }
}

/// A parsed record together with how many of its tags were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub record: T,
    pub dropped_tags: usize,
}

#[derive(Deserialize)]
struct RawPost {
    id: Option<String>,
    user: Option<String>,
    taken_at: Option<u64>,
    #[serde(default)]
    tags: Vec<String>,
    #[serde(default)]
    caption: Option<String>,
}

#[derive(Deserialize)]
struct RawFollow {
    user: Option<String>,
    #[serde(default)]
    follows: Vec<String>,
}

fn parse_error(line_no: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: line_no,
        message: message.into(),
    }
}

/// Parses one line of post JSONL. `line_no` is 1-based and only used in
/// errors.
pub fn parse_post_line(line: &str, line_no: usize) -> Result<Parsed<PostRecord>> {
    let raw: RawPost =
        serde_json::from_str(line).map_err(|e| parse_error(line_no, e.to_string()))?;
    let id = raw.id.ok_or_else(|| parse_error(line_no, "missing field `id`"))?;
    let author = raw
        .user
        .ok_or_else(|| parse_error(line_no, "missing field `user`"))?;
    let taken_at = raw
        .taken_at
        .ok_or_else(|| parse_error(line_no, "missing field `taken_at`"))?;

    let mut tags = BTreeSet::new();
    let mut dropped_tags = 0;
    for tag in &raw.tags {
        match normalize_tag(tag) {
            Ok(tag) => {
                tags.insert(tag);
            }
            Err(_) => dropped_tags += 1,
        }
    }
    Ok(Parsed {
        record: PostRecord {
            id,
            author,
            taken_at,
            tags,
            caption: raw.caption,
        },
        dropped_tags,
    })
}

/// Parses one line of follow JSONL. Users whose follow list is empty after
/// normalization yield `None`.
pub fn parse_follow_line(line: &str, line_no: usize) -> Result<Option<Parsed<FollowRecord>>> {
    let raw: RawFollow =
        serde_json::from_str(line).map_err(|e| parse_error(line_no, e.to_string()))?;
    let user = raw
        .user
        .ok_or_else(|| parse_error(line_no, "missing field `user`"))?;
    let mut follows = BTreeSet::new();
    let mut dropped_tags = 0;
    for account in &raw.follows {
        match normalize_account(account) {
            Ok(account) => {
                follows.insert(account);
            }
            Err(_) => dropped_tags += 1,
        }
    }
    if follows.is_empty() {
        return Ok(None);
    }
    Ok(Some(Parsed {
        record: FollowRecord { user, follows },
        dropped_tags,
    }))
}

/// Records loaded from a JSONL file.
#[derive(Clone, Debug, Default)]
pub struct Batch<T> {
    pub records: Vec<T>,
    pub dropped_tags: usize,
    /// Lines skipped because they carried nothing usable.
    pub skipped_lines: usize,
}

fn read_jsonl<T>(
    path: &Path,
    mut parse: impl FnMut(&str, usize) -> Result<Option<Parsed<T>>>,
) -> Result<Batch<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut batch = Batch {
        records: Vec::new(),
        dropped_tags: 0,
        skipped_lines: 0,
    };
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match parse(&line, idx + 1).map_err(|e| e.in_file(path))? {
            Some(parsed) => {
                batch.dropped_tags += parsed.dropped_tags;
                batch.records.push(parsed.record);
            }
            None => batch.skipped_lines += 1,
        }
    }
    if batch.dropped_tags > 0 {
        log::warn!(
            "{}: dropped {} malformed tag(s)",
            path.display(),
            batch.dropped_tags
        );
    }
    Ok(batch)
}

pub fn read_posts(path: impl AsRef<Path>) -> Result<Batch<PostRecord>> {
    read_jsonl(path.as_ref(), |line, no| parse_post_line(line, no).map(Some))
}

pub fn read_follows(path: impl AsRef<Path>) -> Result<Batch<FollowRecord>> {
    read_jsonl(path.as_ref(), parse_follow_line)
}

fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    fsutil::write_atomic(path, |out| {
        for record in records {
            serde_json::to_writer(&mut *out, record).map_err(std::io::Error::other)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    })
}

pub fn write_posts(path: impl AsRef<Path>, posts: &[PostRecord]) -> Result<()> {
    write_jsonl(path.as_ref(), posts)
}

pub fn write_follows(path: impl AsRef<Path>, follows: &[FollowRecord]) -> Result<()> {
    write_jsonl(path.as_ref(), follows)
}

/// One transaction per post with at least one tag, in input order.
pub fn posts_to_transactions(posts: &[PostRecord]) -> Vec<Transaction> {
    posts
        .iter()
        .filter(|p| !p.tags.is_empty())
        .map(|p| Transaction::from_normalized(p.tags.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn post(tags: &[&str]) -> PostRecord {
        PostRecord {
            id: "p".into(),
            author: "u".into(),
            taken_at: 0,
            tags: tags.iter().map(|t| t.to_string()).collect(),
            caption: None,
        }
    }

    #[test]
    fn parse_dedups_after_normalizing() {
        let parsed =
            parse_post_line(r##"{"id":"1","user":"u1","taken_at":0,"tags":["#Weed","weed"]}"##, 1)
                .unwrap();
        assert_eq!(parsed.record.tags, BTreeSet::from(["weed".to_string()]));
        assert_eq!(parsed.dropped_tags, 0);
    }

    #[test]
    fn parse_two_tags() {
        let parsed = parse_post_line(
            r#"{"id":"2","user":"u2","taken_at":59400,"tags":["kush","stonernation"]}"#,
            1,
        )
        .unwrap();
        assert_eq!(parsed.record.tags.len(), 2);
        assert_eq!(parsed.record.taken_at, 59400);
        assert_eq!(parsed.record.author, "u2");
    }

    #[test]
    fn missing_taken_at_names_the_line() {
        let err = parse_post_line(r#"{"id":"1","user":"u1","tags":[]}"#, 7).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 7);
                assert!(message.contains("taken_at"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_tags_are_counted() {
        let parsed = parse_post_line(
            r##"{"id":"1","user":"u","taken_at":5,"tags":["#", "ok", " "],"caption":"hi"}"##,
            1,
        )
        .unwrap();
        assert_eq!(parsed.dropped_tags, 2);
        assert_eq!(parsed.record.caption.as_deref(), Some("hi"));
    }

    #[test]
    fn negative_or_garbage_is_a_parse_error() {
        assert!(parse_post_line(r#"{"id":"1","user":"u","taken_at":-1}"#, 1).is_err());
        assert!(parse_post_line("not json", 1).is_err());
        assert!(parse_post_line(r#"{"id":"1","user":"u","taken_at":1,"tags":[3]}"#, 1).is_err());
    }

    #[test]
    fn follow_lines() {
        let parsed = parse_follow_line(r#"{"user":"u1","follows":["A","a"]}"#, 1)
            .unwrap()
            .unwrap();
        assert_eq!(parsed.record.follows, BTreeSet::from(["a".to_string()]));
        assert!(parse_follow_line(r#"{"user":"u1","follows":[" "]}"#, 1)
            .unwrap()
            .is_none());
        assert!(parse_follow_line(r#"{"follows":["a"]}"#, 1).is_err());
    }

    #[test]
    fn transactions_skip_empty_posts() {
        assert!(posts_to_transactions(&[]).is_empty());
        let tx = posts_to_transactions(&[post(&["a", "b"]), post(&[]), post(&["c"])]);
        assert_eq!(tx.len(), 2);
        assert_eq!(tx[0].items().collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(tx[1].items().collect::<Vec<_>>(), ["c"]);
    }

    #[test]
    fn transaction_rejects_commas() {
        assert!(Transaction::new(["a,b"]).is_err());
        assert!(Transaction::new([""]).is_err());
        assert_eq!(Transaction::new(["b", "a", "b"]).unwrap().len(), 2);
    }
}
