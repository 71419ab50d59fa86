//! The versioned, categorized dictionary of sensitive hashtags.
//!
//! A lexicon starts from the most frequent tags of a labeled corpus and grows
//! only through reviewed candidates mined from co-occurrence.

mod review;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use review::{apply_review, propose_candidates, CandidateTerm, Decision, ReviewQueue, ReviewStatus};

use crate::corpus::{normalize_tag, PostRecord};
use crate::error::{Error, Result};
use crate::fsutil;

/// Version of the on-disk lexicon layout.
pub const LEXICON_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Weed,
    CoughSyrup,
    Pills,
    /// Drug slang that does not point at one drug.
    General,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::Weed,
        Category::CoughSyrup,
        Category::Pills,
        Category::General,
    ];

    /// Categories a post can be assigned to.
    pub const DRUGS: [Category; 3] = [Category::Weed, Category::CoughSyrup, Category::Pills];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Weed => "weed",
            Category::CoughSyrup => "cough_syrup",
            Category::Pills => "pills",
            Category::General => "general",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown category {s:?} (expected weed, cough_syrup, pills or general)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Seed,
    Mined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub category: Category,
    pub source: Source,
    pub added_version: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    version: u32,
    entries: BTreeMap<String, Entry>,
}

#[derive(Serialize, Deserialize)]
struct LexiconFile {
    version: u32,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    term: String,
    category: Category,
    source: Source,
    added_version: u32,
}

impl Lexicon {
    /// Version-1 lexicon of seed terms. Terms are normalized; later
    /// duplicates overwrite earlier ones.
    pub fn from_seed<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Category)>,
        S: AsRef<str>,
    {
        let mut entries = BTreeMap::new();
        for (term, category) in terms {
            entries.insert(
                normalize_tag(term.as_ref())?,
                Entry {
                    category,
                    source: Source::Seed,
                    added_version: 1,
                },
            );
        }
        Ok(Lexicon {
            version: 1,
            entries,
        })
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains_key(term)
    }

    pub fn get(&self, term: &str) -> Option<&Entry> {
        self.entries.get(term)
    }

    pub fn category(&self, term: &str) -> Option<Category> {
        self.entries.get(term).map(|e| e.category)
    }

    /// Entries in ascending term order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.entries.iter().map(|(t, e)| (t.as_str(), e))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Adds a reviewed term as a new version.
    pub(crate) fn with_mined(&self, term: &str, category: Category) -> Result<Lexicon> {
        if self.contains(term) {
            return Err(Error::Conflict {
                term: term.to_owned(),
            });
        }
        let mut next = self.clone();
        next.version += 1;
        next.entries.insert(
            term.to_owned(),
            Entry {
                category,
                source: Source::Mined,
                added_version: next.version,
            },
        );
        Ok(next)
    }

    /// Moves an existing term to another category as a new version.
    pub fn recategorize(&self, term: &str, category: Category) -> Result<Lexicon> {
        let Some(entry) = self.entries.get(term) else {
            return Err(Error::Contract(format!("term {term:?} is not in the lexicon")));
        };
        if entry.category == category {
            return Ok(self.clone());
        }
        let mut next = self.clone();
        next.version += 1;
        next.entries.get_mut(term).expect("checked above").category = category;
        Ok(next)
    }

    pub fn to_json(&self) -> String {
        let file = LexiconFile {
            version: self.version,
            entries: self
                .entries
                .iter()
                .map(|(term, e)| EntryFile {
                    term: term.clone(),
                    category: e.category,
                    source: e.source,
                    added_version: e.added_version,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("lexicon serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LexiconFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let invalid = |message: String| Error::Parse { line: 0, message };
        if file.version < 1 {
            return Err(invalid("lexicon version must be at least 1".into()));
        }
        let mut entries = BTreeMap::new();
        for e in file.entries {
            match normalize_tag(&e.term) {
                Ok(t) if t == e.term => {}
                _ => return Err(invalid(format!("term {:?} is not normalized", e.term))),
            }
            if e.added_version > file.version || e.added_version < 1 {
                return Err(invalid(format!(
                    "term {:?} added in version {} of a version-{} lexicon",
                    e.term, e.added_version, file.version
                )));
            }
            let entry = Entry {
                category: e.category,
                source: e.source,
                added_version: e.added_version,
            };
            if entries.insert(e.term.clone(), entry).is_some() {
                return Err(invalid(format!("duplicate term {:?}", e.term)));
            }
        }
        Ok(Lexicon {
            version: file.version,
            entries,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Lexicon::from_json(&fsutil::read_string(path)?).map_err(|e| e.in_file(path))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fsutil::write_string(path.as_ref(), &self.to_json())
    }
}

/// Version-1 lexicon of the `k` tags contained in the most posts, ties
/// broken by ascending term. Every entry is a `general` seed term until
/// recategorized.
pub fn seed_from_frequency(labeled_posts: &[PostRecord], k: usize) -> Result<Lexicon> {
    if labeled_posts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let mut freq: HashMap<&str, u64> = HashMap::new();
    for post in labeled_posts {
        for tag in &post.tags {
            *freq.entry(tag).or_default() += 1;
        }
    }
    let mut ranked: Vec<(&str, u64)> = freq.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(k);
    Lexicon::from_seed(ranked.into_iter().map(|(t, _)| (t, Category::General)))
}
