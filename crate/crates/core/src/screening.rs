//! Drug-relatedness screening and single-category assignment.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::PostRecord;
use crate::error::{Error, Result};
use crate::fraction::{Fraction, Threshold};
use crate::lexicon::{Category, Lexicon};

pub const DEFAULT_MIN_MATCHES: usize = 2;
pub const DEFAULT_PURITY: f64 = 0.8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenResult {
    pub post_id: String,
    pub matched_terms: BTreeSet<String>,
    pub drug_related: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryAssignment {
    pub post_id: String,
    pub category: Option<Category>,
}

/// Purity threshold for category assignment, at least one half so that no
/// two categories can pass at once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Purity(Threshold);

impl Purity {
    pub fn new(value: f64) -> Result<Self> {
        if value < 0.5 {
            return Err(Error::Config(format!("purity must be at least 0.5, got {value}")));
        }
        Ok(Purity(Threshold::new(value, "purity")?))
    }
}

impl Default for Purity {
    fn default() -> Self {
        Purity::new(DEFAULT_PURITY).expect("default purity is valid")
    }
}

pub fn screen_post(post: &PostRecord, lex: &Lexicon, min_matches: usize) -> ScreenResult {
    let matched_terms: BTreeSet<String> = post
        .tags
        .iter()
        .filter(|t| lex.contains(t))
        .cloned()
        .collect();
    ScreenResult {
        post_id: post.id.clone(),
        drug_related: matched_terms.len() >= min_matches,
        matched_terms,
    }
}

/// Assigns the category holding strictly more than `purity` of the post's
/// matched non-`general` terms. `general` terms are left out of both sides
/// of the share.
///
/// Only meaningful for drug-related posts; `min_matches` is the same bound
/// used for [`screen_post`].
pub fn assign_category(
    post: &PostRecord,
    lex: &Lexicon,
    min_matches: usize,
    purity: Purity,
) -> Result<CategoryAssignment> {
    let screened = screen_post(post, lex, min_matches);
    if !screened.drug_related {
        return Err(Error::Contract(format!(
            "post {:?} is not drug related; cannot assign a category",
            post.id
        )));
    }
    Ok(assign_from_matches(&screened, lex, purity))
}

pub(crate) fn assign_from_matches(
    screened: &ScreenResult,
    lex: &Lexicon,
    purity: Purity,
) -> CategoryAssignment {
    let mut counts = [0u64; 3];
    for term in &screened.matched_terms {
        if let Some(i) = lex
            .category(term)
            .and_then(|c| Category::DRUGS.iter().position(|&d| d == c))
        {
            counts[i] += 1;
        }
    }
    let categorized: u64 = counts.iter().sum();
    let category = (categorized > 0)
        .then(|| {
            Category::DRUGS
                .into_iter()
                .zip(counts)
                .find(|&(_, n)| Fraction::new(n, categorized) > purity.0.as_fraction())
                .map(|(c, _)| c)
        })
        .flatten();
    CategoryAssignment {
        post_id: screened.post_id.clone(),
        category,
    }
}

/// One line of screening output: the screen result, the category when the
/// post is drug related, and the timestamp temporal aggregation needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenedPost {
    pub post_id: String,
    pub taken_at: u64,
    pub matched_terms: Vec<String>,
    pub drug_related: bool,
    pub category: Option<Category>,
}

pub fn screen_all(
    posts: &[PostRecord],
    lex: &Lexicon,
    min_matches: usize,
    purity: Purity,
) -> Vec<ScreenedPost> {
    posts
        .iter()
        .map(|post| {
            let screened = screen_post(post, lex, min_matches);
            let category = if screened.drug_related {
                assign_from_matches(&screened, lex, purity).category
            } else {
                None
            };
            ScreenedPost {
                post_id: screened.post_id,
                taken_at: post.taken_at,
                matched_terms: screened.matched_terms.into_iter().collect(),
                drug_related: screened.drug_related,
                category,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn post(tags: &[&str]) -> PostRecord {
        PostRecord {
            id: "p1".into(),
            author: "u".into(),
            taken_at: 0,
            tags: tags.iter().map(|t| t.to_string()).collect(),
            caption: None,
        }
    }

    fn lexicon() -> Lexicon {
        Lexicon::from_seed([
            ("weed", Category::Weed),
            ("kush", Category::Weed),
            ("w1", Category::Weed),
            ("w2", Category::Weed),
            ("w3", Category::Weed),
            ("w4", Category::Weed),
            ("w5", Category::Weed),
            ("xanax", Category::Pills),
            ("lean", Category::CoughSyrup),
            ("high", Category::General),
            ("g1", Category::General),
        ])
        .unwrap()
    }

    #[test]
    fn two_matches_screen_in() {
        let lex = lexicon();
        let r = screen_post(&post(&["weed", "kush", "sunset"]), &lex, 2);
        assert_eq!(r.matched_terms.len(), 2);
        assert!(r.drug_related);

        let r = screen_post(&post(&["weed", "sunset"]), &lex, 2);
        assert_eq!(r.matched_terms.len(), 1);
        assert!(!r.drug_related);

        let r = screen_post(&post(&["weed"]), &lex, 2);
        assert!(!r.drug_related);
    }

    #[test]
    fn exactly_eighty_percent_is_not_enough() {
        let lex = lexicon();
        let a = assign_category(&post(&["w1", "w2", "w3", "w4", "xanax"]), &lex, 2, Purity::default())
            .unwrap();
        assert_eq!(a.category, None);
        let a = assign_category(&post(&["w1", "w2", "w3", "w4", "w5"]), &lex, 2, Purity::default())
            .unwrap();
        assert_eq!(a.category, Some(Category::Weed));
    }

    #[test]
    fn general_terms_are_left_out_of_purity() {
        let lex = lexicon();
        let a = assign_category(&post(&["w1", "w2", "g1"]), &lex, 2, Purity::default()).unwrap();
        assert_eq!(a.category, Some(Category::Weed));
        // only general terms: drug related, no category
        let a = assign_category(&post(&["high", "g1"]), &lex, 2, Purity::default()).unwrap();
        assert_eq!(a.category, None);
    }

    #[test]
    fn non_drug_post_is_a_contract_error() {
        let err = assign_category(&post(&["weed"]), &lexicon(), 2, Purity::default()).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn purity_bounds() {
        assert!(Purity::new(0.4).is_err());
        assert!(Purity::new(1.01).is_err());
        assert!(Purity::new(0.5).is_ok());
    }

    #[test]
    fn screen_all_carries_timestamp() {
        let mut p = post(&["lean", "high", "party"]);
        p.taken_at = 59400;
        let out = screen_all(&[p], &lexicon(), 2, Purity::default());
        assert_eq!(out[0].taken_at, 59400);
        assert_eq!(out[0].matched_terms, ["high", "lean"]);
        assert_eq!(out[0].category, Some(Category::CoughSyrup));
    }
}
