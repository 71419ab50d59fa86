use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Category, Lexicon};
use crate::error::{Error, Result};
use crate::fraction::{to_f64, Fraction, Threshold};
use crate::fsutil;
use crate::miner::ItemSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReviewStatus {
    Pending,
    Approved,
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Approve(Category),
    Reject,
}

/// A mined term waiting for (or past) human review.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateTerm {
    pub term: String,
    /// Support of the strongest itemset that proposed the term, rounded to
    /// six places. Exact value is `support_count / transactions`.
    pub support: f64,
    pub support_count: u64,
    pub transactions: u64,
    /// Frequent itemsets (above the threshold) that paired the term with
    /// lexicon terms, strongest first.
    pub evidence: Vec<Vec<String>>,
    pub status: ReviewStatus,
    /// Category shared by every categorized lexicon term in the evidence.
    pub proposed_category: Option<Category>,
    /// Category chosen on approval.
    #[serde(default)]
    pub decided_category: Option<Category>,
    /// Epoch seconds of the decision.
    #[serde(default)]
    pub decided_at: Option<u64>,
}

impl CandidateTerm {
    pub fn support_fraction(&self) -> Fraction {
        Fraction::new(self.support_count, self.transactions)
    }
}

/// Terms not yet in `lex` that appear in a frequent itemset together with at
/// least one lexicon term, where the itemset's support is strictly greater
/// than `min_support`.
///
/// Each term is proposed once, with the largest support among its itemsets.
/// Sorted by support descending, then term ascending.
pub fn propose_candidates(
    itemsets: &[ItemSet],
    lex: &Lexicon,
    min_support: Threshold,
) -> Vec<CandidateTerm> {
    struct Acc<'a> {
        best: &'a ItemSet,
        evidence: Vec<&'a ItemSet>,
    }
    let mut found: BTreeMap<&str, Acc> = BTreeMap::new();
    for set in itemsets {
        if !min_support.is_exceeded_by(set.count, set.total) {
            continue;
        }
        let (known, new): (Vec<&String>, Vec<&String>) =
            set.items.iter().partition(|t| lex.contains(t));
        if known.is_empty() {
            continue;
        }
        for term in new {
            let acc = found.entry(term).or_insert(Acc {
                best: set,
                evidence: Vec::new(),
            });
            if set.support() > acc.best.support() {
                acc.best = set;
            }
            acc.evidence.push(set);
        }
    }

    let mut out: Vec<CandidateTerm> = found
        .into_iter()
        .map(|(term, mut acc)| {
            acc.evidence
                .sort_by(|a, b| b.support().cmp(&a.support()).then_with(|| a.items.cmp(&b.items)));
            acc.evidence.dedup_by(|a, b| a.items == b.items);
            CandidateTerm {
                term: term.to_owned(),
                support: round6(to_f64(acc.best.support())),
                support_count: acc.best.count,
                transactions: acc.best.total,
                proposed_category: shared_category(&acc.evidence, lex),
                evidence: acc.evidence.iter().map(|s| s.items.clone()).collect(),
                status: ReviewStatus::Pending,
                decided_category: None,
                decided_at: None,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.support_fraction()
            .cmp(&a.support_fraction())
            .then_with(|| a.term.cmp(&b.term))
    });
    out
}

fn shared_category(evidence: &[&ItemSet], lex: &Lexicon) -> Option<Category> {
    let mut shared = None;
    for term in evidence.iter().flat_map(|s| &s.items) {
        match lex.category(term) {
            None | Some(Category::General) => {}
            Some(c) if shared.is_none() => shared = Some(c),
            Some(c) if shared != Some(c) => return None,
            Some(_) => {}
        }
    }
    shared
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Records `decision` on a pending candidate. Approval returns the next
/// lexicon version with the term added as a mined entry; rejection returns
/// the lexicon unchanged.
pub fn apply_review(
    lex: &Lexicon,
    candidate: &mut CandidateTerm,
    decision: Decision,
    decided_at: u64,
) -> Result<Lexicon> {
    if let Decision::Approve(_) = decision {
        if lex.contains(&candidate.term) {
            return Err(Error::Conflict {
                term: candidate.term.clone(),
            });
        }
    }
    if candidate.status != ReviewStatus::Pending {
        return Err(Error::Contract(format!(
            "candidate {:?} was already reviewed",
            candidate.term
        )));
    }
    let next = match decision {
        Decision::Approve(category) => {
            let next = lex.with_mined(&candidate.term, category)?;
            candidate.status = ReviewStatus::Approved;
            candidate.decided_category = Some(category);
            next
        }
        Decision::Reject => {
            candidate.status = ReviewStatus::Rejected;
            lex.clone()
        }
    };
    candidate.decided_at = Some(decided_at);
    Ok(next)
}

/// Candidates persisted one JSON object per line, in proposal order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReviewQueue {
    pub candidates: Vec<CandidateTerm>,
}

impl ReviewQueue {
    /// A missing file is an empty queue.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.exists() {
            return Ok(ReviewQueue::default());
        }
        let text = fsutil::read_string(path)?;
        let mut candidates = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let candidate: CandidateTerm =
                serde_json::from_str(line).map_err(|e| {
                    Error::Parse {
                        line: idx + 1,
                        message: e.to_string(),
                    }
                    .in_file(path)
                })?;
            candidates.push(candidate);
        }
        Ok(ReviewQueue { candidates })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fsutil::write_atomic(path.as_ref(), |out| {
            for c in &self.candidates {
                serde_json::to_writer(&mut *out, c).map_err(std::io::Error::other)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        })
    }

    /// Appends candidates whose term is not already queued (in any status).
    /// Returns how many were added.
    pub fn extend_new(&mut self, proposed: impl IntoIterator<Item = CandidateTerm>) -> usize {
        let mut added = 0;
        for candidate in proposed {
            if self.candidates.iter().all(|c| c.term != candidate.term) {
                self.candidates.push(candidate);
                added += 1;
            }
        }
        added
    }

    pub fn pending(&self) -> impl Iterator<Item = &CandidateTerm> {
        self.candidates
            .iter()
            .filter(|c| c.status == ReviewStatus::Pending)
    }

    pub fn find_mut(&mut self, term: &str) -> Option<&mut CandidateTerm> {
        self.candidates.iter_mut().find(|c| c.term == term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str], count: u64, total: u64) -> ItemSet {
        let mut items: Vec<String> = items.iter().map(|s| s.to_string()).collect();
        items.sort();
        ItemSet { items, count, total }
    }

    fn lex(terms: &[(&str, Category)]) -> Lexicon {
        Lexicon::from_seed(terms.iter().copied()).unwrap()
    }

    fn threshold() -> Threshold {
        Threshold::new(0.2, "min_support").unwrap()
    }

    #[test]
    fn planted_term_is_proposed() {
        let lex = lex(&[("weed", Category::Weed)]);
        let out = propose_candidates(&[set(&["weed", "poup"], 25, 100)], &lex, threshold());
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].term, "poup");
        assert_eq!(out[0].support, 0.25);
        assert_eq!(out[0].status, ReviewStatus::Pending);
        assert_eq!(out[0].proposed_category, Some(Category::Weed));
        assert_eq!(out[0].evidence, vec![vec!["poup".to_string(), "weed".to_string()]]);
    }

    #[test]
    fn nothing_new_or_below_threshold() {
        let lex = lex(&[("weed", Category::Weed), ("kush", Category::Weed)]);
        assert!(propose_candidates(&[set(&["weed", "kush"], 90, 100)], &lex, threshold()).is_empty());
        assert!(propose_candidates(&[set(&["weed", "faded"], 15, 100)], &lex, threshold()).is_empty());
        // no lexicon term in the set
        assert!(propose_candidates(&[set(&["sunset", "beach"], 50, 100)], &lex, threshold()).is_empty());
    }

    #[test]
    fn strict_boundary() {
        let lex = lex(&[("weed", Category::Weed)]);
        assert!(propose_candidates(&[set(&["weed", "x"], 200, 1000)], &lex, threshold()).is_empty());
        assert_eq!(
            propose_candidates(&[set(&["weed", "x"], 201, 1000)], &lex, threshold()).len(),
            1
        );
    }

    #[test]
    fn keeps_max_support_and_sorts() {
        let lex = lex(&[("weed", Category::Weed), ("lean", Category::CoughSyrup)]);
        let sets = [
            set(&["weed", "poup"], 30, 100),
            set(&["lean", "poup"], 40, 100),
            set(&["lean", "goodtime"], 40, 100),
            set(&["weed", "alpha"], 25, 100),
        ];
        let out = propose_candidates(&sets, &lex, threshold());
        let got: Vec<(&str, u64)> = out.iter().map(|c| (c.term.as_str(), c.support_count)).collect();
        assert_eq!(got, [("goodtime", 40), ("poup", 40), ("alpha", 25)]);
        let poup = &out[1];
        assert_eq!(poup.evidence.len(), 2);
        assert_eq!(poup.evidence[0], ["lean", "poup"]);
        assert_eq!(poup.proposed_category, None);
    }

    #[test]
    fn review_outcomes() {
        let lex = lex(&[("lean", Category::CoughSyrup)]);
        let sets = [set(&["lean", "poup"], 30, 100), set(&["lean", "goodtime"], 30, 100)];
        let mut cands = propose_candidates(&sets, &lex, threshold());
        let (goodtime, poup) = cands.split_at_mut(1);

        let approved =
            apply_review(&lex, &mut poup[0], Decision::Approve(Category::CoughSyrup), 10).unwrap();
        assert_eq!(approved.version(), 2);
        let entry = approved.get("poup").unwrap();
        assert_eq!(entry.category, Category::CoughSyrup);
        assert_eq!(entry.source, super::super::Source::Mined);
        assert_eq!(entry.added_version, 2);
        assert_eq!(poup[0].status, ReviewStatus::Approved);
        assert_eq!(poup[0].decided_at, Some(10));

        let after = apply_review(&approved, &mut goodtime[0], Decision::Reject, 11).unwrap();
        assert_eq!(after, approved);
        assert_eq!(goodtime[0].status, ReviewStatus::Rejected);
    }

    #[test]
    fn approving_twice_conflicts() {
        let lex = lex(&[("lean", Category::CoughSyrup)]);
        let sets = [set(&["lean", "poup"], 30, 100)];
        let mut first = propose_candidates(&sets, &lex, threshold()).remove(0);
        let mut second = first.clone();
        let lex = apply_review(&lex, &mut first, Decision::Approve(Category::CoughSyrup), 1).unwrap();
        assert!(matches!(
            apply_review(&lex, &mut second, Decision::Approve(Category::CoughSyrup), 2),
            Err(Error::Conflict { .. })
        ));
        assert!(matches!(
            apply_review(&lex, &mut first, Decision::Reject, 3),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn queue_persistence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("queue.jsonl");
        assert!(ReviewQueue::load(&path).unwrap().candidates.is_empty());

        let lex = lex(&[("lean", Category::CoughSyrup)]);
        let sets = [set(&["lean", "poup"], 30, 100)];
        let mut queue = ReviewQueue::default();
        assert_eq!(queue.extend_new(propose_candidates(&sets, &lex, threshold())), 1);
        assert_eq!(queue.extend_new(propose_candidates(&sets, &lex, threshold())), 0);
        queue.save(&path).unwrap();
        let loaded = ReviewQueue::load(&path).unwrap();
        assert_eq!(loaded, queue);
        assert_eq!(loaded.pending().count(), 1);
        let line = std::fs::read_to_string(&path).unwrap();
        assert!(line.starts_with(r#"{"term":"poup","support":0.3,"#), "{line}");
    }
}
