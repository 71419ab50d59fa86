//! Seeded synthetic corpora with planted patterns.
//!
//! Posts get a drug category drawn from category weights, a timestamp drawn
//! from hour-of-day and weekday weights, background noise tags, and planted
//! terms that co-occur with an anchor tag at a target rate. Follow records
//! draw accounts from per-account follow probabilities plus bundles of
//! accounts that are always followed together.

use std::collections::{BTreeMap, BTreeSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Poisson;
use serde::{Deserialize, Serialize};

use super::normalize::{normalize_account, normalize_tag};
use super::records::{FollowRecord, PostRecord, Transaction};
use crate::error::{Error, Result};
use crate::lexicon::{Category, Lexicon};
use crate::temporal::weekday;

/// A term or account with an independent inclusion probability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub term: String,
    pub probability: f64,
}

/// A term planted into posts with probability `support`. When `anchor` is
/// set, every post carrying the term also carries the anchor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantedTerm {
    pub term: String,
    pub support: f64,
    #[serde(default)]
    pub anchor: Option<String>,
}

/// Accounts followed together with probability `probability`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FollowBundle {
    pub accounts: Vec<String>,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthSpec {
    pub posts: usize,
    pub authors: usize,
    /// Relative weight of each drug category among drug posts.
    pub category_weights: BTreeMap<Category, f64>,
    /// Lexicon terms per category; `general` terms are drug slang without a
    /// specific drug.
    pub vocabulary: BTreeMap<Category, Vec<String>>,
    pub noise_tags: Vec<WeightedTerm>,
    /// Fraction of posts that carry at most one `general` lexicon term.
    pub non_drug_fraction: f64,
    /// Fraction of drug posts that mix in terms of a second category, which
    /// keeps them below any purity threshold above 0.8.
    pub mixed_fraction: f64,
    /// Probability that a drug post carries one `general` term.
    pub general_probability: f64,
    pub hour_weights: Vec<f64>,
    /// Index 0 = Monday.
    pub weekday_weights: Vec<f64>,
    /// Midnight UTC on a Monday.
    pub start_epoch: u64,
    pub weeks: u32,
    pub planted: Vec<PlantedTerm>,

    pub users: usize,
    pub accounts: Vec<WeightedTerm>,
    pub bundles: Vec<FollowBundle>,
    pub filler_accounts: usize,
    pub filler_probability: f64,
}

fn terms(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn weighted(list: &[(&str, f64)]) -> Vec<WeightedTerm> {
    list.iter()
        .map(|&(term, probability)| WeightedTerm {
            term: term.into(),
            probability,
        })
        .collect()
}

impl Default for SynthSpec {
    fn default() -> Self {
        // Evening-leaning day with spikes at 16:00 and 21:00 UTC.
        let mut hour_weights: Vec<f64> = (0..24)
            .map(|h| match h {
                0..=5 => 1.0,
                6..=11 => 1.5,
                12..=17 => 2.5,
                _ => 3.5,
            })
            .collect();
        hour_weights[16] = 9.0;
        hour_weights[21] = 9.0;

        SynthSpec {
            posts: 10_000,
            authors: 2_000,
            category_weights: BTreeMap::from([
                (Category::Weed, 72.0),
                (Category::Pills, 14.0),
                (Category::CoughSyrup, 13.0),
            ]),
            vocabulary: BTreeMap::from([
                (
                    Category::Weed,
                    terms(&[
                        "weed", "kush", "stonernation", "weedstagram", "420", "marijuana",
                        "ganja", "dank", "blunt", "dabs",
                    ]),
                ),
                (
                    Category::CoughSyrup,
                    terms(&[
                        "lean", "purpledrank", "sizzurp", "codeine", "actavis", "promethazine",
                        "dirtysprite",
                    ]),
                ),
                (
                    Category::Pills,
                    terms(&["xanax", "percocet", "vicodin", "oxy", "bars", "perc30", "adderall"]),
                ),
                (Category::General, terms(&["high", "stoned", "lit", "plug"])),
            ]),
            noise_tags: weighted(&[
                ("goodtime", 0.18),
                ("instagood", 0.15),
                ("party", 0.12),
                ("love", 0.10),
                ("sunset", 0.08),
                ("music", 0.08),
                ("friends", 0.08),
                ("highsociety", 0.10),
                ("photooftheday", 0.12),
            ]),
            non_drug_fraction: 0.10,
            mixed_fraction: 0.05,
            general_probability: 0.3,
            hour_weights,
            // Thursday peak, Friday above the weekend.
            weekday_weights: vec![1.0, 1.0, 1.1, 1.7, 1.4, 1.15, 1.05],
            // 2016-01-04, a Monday
            start_epoch: 1_451_865_600,
            weeks: 52,
            planted: vec![
                PlantedTerm {
                    term: "poup".into(),
                    support: 0.25,
                    anchor: Some("high".into()),
                },
                PlantedTerm {
                    term: "faded".into(),
                    support: 0.15,
                    anchor: Some("high".into()),
                },
            ],
            users: 100,
            accounts: weighted(&[
                ("hightimesmagazine", 0.156),
                ("elboglass", 0.129),
                ("saltglass", 0.107),
                ("weedhumor", 0.102),
                ("christucker", 0.09),
                ("therock", 0.085),
                ("heytommychong", 0.08),
                ("elksthattrun", 0.06),
            ]),
            bundles: vec![
                FollowBundle {
                    accounts: terms(&["cheechandchong", "heytommychong", "hightimesmagazine"]),
                    probability: 0.15,
                },
                FollowBundle {
                    accounts: terms(&["coylecondenser", "elksthattrun", "oilbrothers", "sdryno"]),
                    probability: 0.12,
                },
            ],
            filler_accounts: 200,
            filler_probability: 0.02,
        }
    }
}

/// Everything [`gen_synthetic_corpus`] produces.
#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticCorpus {
    pub posts: Vec<PostRecord>,
    pub follows: Vec<FollowRecord>,
    /// The vocabulary as a categorized version-1 lexicon.
    pub lexicon: Lexicon,
}

fn check_probability(value: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Spec(format!("{what} must be a probability, got {value}")));
    }
    Ok(())
}

fn check_weights(weights: &[f64], what: &str) -> Result<()> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Spec(format!("{what} must be non-negative")));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(Error::Spec(format!("{what} are all zero")));
    }
    Ok(())
}

struct Prepared {
    categories: Vec<Category>,
    category_index: WeightedIndex<f64>,
    vocabulary: BTreeMap<Category, Vec<String>>,
    hours: WeightedIndex<f64>,
    weekdays: WeightedIndex<f64>,
    noise: Vec<(String, f64)>,
    planted: Vec<(String, f64, Option<String>)>,
}

impl SynthSpec {
    fn prepare(&self) -> Result<Prepared> {
        if self.hour_weights.len() != 24 {
            return Err(Error::Spec("hour_weights needs 24 entries".into()));
        }
        if self.weekday_weights.len() != 7 {
            return Err(Error::Spec("weekday_weights needs 7 entries".into()));
        }
        check_weights(&self.hour_weights, "hour weights")?;
        check_weights(&self.weekday_weights, "weekday weights")?;
        if !self.start_epoch.is_multiple_of(86_400) || weekday(self.start_epoch) != 0 {
            return Err(Error::Spec("start_epoch must be midnight UTC on a Monday".into()));
        }
        if self.weeks == 0 || self.authors == 0 {
            return Err(Error::Spec("weeks and authors must be positive".into()));
        }
        for (what, p) in [
            ("non_drug_fraction", self.non_drug_fraction),
            ("mixed_fraction", self.mixed_fraction),
            ("general_probability", self.general_probability),
            ("filler_probability", self.filler_probability),
        ] {
            check_probability(p, what)?;
        }

        let mut vocabulary = BTreeMap::new();
        for (&c, list) in &self.vocabulary {
            let normalized = list
                .iter()
                .map(|t| normalize_tag(t))
                .collect::<Result<BTreeSet<_>>>()
                .map_err(|e| Error::Spec(e.to_string()))?;
            vocabulary.insert(c, normalized.into_iter().collect::<Vec<_>>());
        }

        let categories: Vec<Category> = Category::DRUGS
            .into_iter()
            .filter(|c| self.category_weights.get(c).copied().unwrap_or(0.0) != 0.0)
            .collect();
        let weights: Vec<f64> = Category::DRUGS
            .iter()
            .map(|c| self.category_weights.get(c).copied().unwrap_or(0.0))
            .collect();
        if self.category_weights.contains_key(&Category::General) {
            return Err(Error::Spec("general is not a post category".into()));
        }
        check_weights(&weights, "category weights")?;
        for c in &categories {
            if vocabulary.get(c).is_none_or(|v| v.len() < 2) {
                return Err(Error::Spec(format!("category {c} needs at least two terms")));
            }
        }
        let category_weights: Vec<f64> = categories
            .iter()
            .map(|c| self.category_weights[c])
            .collect();

        let mut noise = Vec::new();
        for w in &self.noise_tags {
            check_probability(w.probability, "noise tag probability")?;
            noise.push((
                normalize_tag(&w.term).map_err(|e| Error::Spec(e.to_string()))?,
                w.probability,
            ));
        }
        let mut planted = Vec::new();
        for p in &self.planted {
            check_probability(p.support, "planted support")?;
            let term = normalize_tag(&p.term).map_err(|e| Error::Spec(e.to_string()))?;
            let anchor = p
                .anchor
                .as_deref()
                .map(normalize_tag)
                .transpose()
                .map_err(|e| Error::Spec(e.to_string()))?;
            planted.push((term, p.support, anchor));
        }

        let index = |w: &[f64]| WeightedIndex::new(w).map_err(|e| Error::Spec(e.to_string()));
        Ok(Prepared {
            category_index: index(&category_weights)?,
            categories,
            vocabulary,
            hours: index(&self.hour_weights)?,
            weekdays: index(&self.weekday_weights)?,
            noise,
            planted,
        })
    }
}

/// Generates posts, follow records and the matching lexicon. A pure function
/// of `(seed, spec)`.
pub fn gen_synthetic_corpus(seed: u64, spec: &SynthSpec) -> Result<SyntheticCorpus> {
    let prepared = spec.prepare()?;
    let follows = gen_follows(seed, spec)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let posts = (0..spec.posts)
        .map(|i| gen_post(i, spec, &prepared, &mut rng))
        .collect();

    let lexicon = Lexicon::from_seed(
        prepared
            .vocabulary
            .iter()
            .flat_map(|(&c, list)| list.iter().map(move |t| (t.as_str(), c))),
    )?;
    Ok(SyntheticCorpus {
        posts,
        follows,
        lexicon,
    })
}

fn pick<'a>(rng: &mut ChaCha8Rng, list: &'a [String], n: usize) -> impl Iterator<Item = &'a String> {
    let n = n.min(list.len());
    let mut chosen: Vec<usize> = index::sample(rng, list.len(), n).into_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(move |i| &list[i])
}

fn gen_post(i: usize, spec: &SynthSpec, p: &Prepared, rng: &mut ChaCha8Rng) -> PostRecord {
    let mut tags = BTreeSet::new();
    let general = p.vocabulary.get(&Category::General).map(Vec::as_slice).unwrap_or(&[]);

    if rng.random::<f64>() >= spec.non_drug_fraction {
        let category = p.categories[p.category_index.sample(rng)];
        let n = rng.random_range(2..=4);
        tags.extend(pick(rng, &p.vocabulary[&category], n).cloned());
        if p.categories.len() > 1 && rng.random::<f64>() < spec.mixed_fraction {
            let others: Vec<Category> =
                p.categories.iter().copied().filter(|&c| c != category).collect();
            let other = others[rng.random_range(0..others.len())];
            let m = rng.random_range(1..=2);
            tags.extend(pick(rng, &p.vocabulary[&other], m).cloned());
        }
        if !general.is_empty() && rng.random::<f64>() < spec.general_probability {
            tags.extend(pick(rng, general, 1).cloned());
        }
    } else if !general.is_empty() && rng.random::<f64>() < 0.5 {
        tags.extend(pick(rng, general, 1).cloned());
    }

    for (tag, prob) in &p.noise {
        if rng.random::<f64>() < *prob {
            tags.insert(tag.clone());
        }
    }
    for (term, support, anchor) in &p.planted {
        if rng.random::<f64>() < *support {
            tags.insert(term.clone());
            if let Some(anchor) = anchor {
                tags.insert(anchor.clone());
            }
        }
    }

    let week = rng.random_range(0..spec.weeks) as u64;
    let day = p.weekdays.sample(rng) as u64;
    let hour = p.hours.sample(rng) as u64;
    let second = rng.random_range(0..3600u64);
    PostRecord {
        id: format!("p{i:07}"),
        author: format!("user{:05}", rng.random_range(0..spec.authors)),
        taken_at: spec.start_epoch + (week * 7 + day) * 86_400 + hour * 3600 + second,
        tags,
        caption: None,
    }
}

fn gen_follows(seed: u64, spec: &SynthSpec) -> Result<Vec<FollowRecord>> {
    let account = |raw: &str| normalize_account(raw).map_err(|e| Error::Spec(e.to_string()));
    let mut accounts = Vec::new();
    for w in &spec.accounts {
        check_probability(w.probability, "account probability")?;
        accounts.push((account(&w.term)?, w.probability));
    }
    accounts.extend((0..spec.filler_accounts).map(|i| (format!("fanpage{i:04}"), spec.filler_probability)));
    let mut bundles = Vec::new();
    for b in &spec.bundles {
        check_probability(b.probability, "bundle probability")?;
        let members = b
            .accounts
            .iter()
            .map(|a| account(a))
            .collect::<Result<Vec<_>>>()?;
        bundles.push((members, b.probability));
    }
    if spec.users > 0 && accounts.is_empty() && bundles.is_empty() {
        return Err(Error::Spec("users need at least one account to follow".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let records = (0..spec.users)
        .map(|u| {
            let mut follows = BTreeSet::new();
            for (name, prob) in &accounts {
                if rng.random::<f64>() < *prob {
                    follows.insert(name.clone());
                }
            }
            for (members, prob) in &bundles {
                if rng.random::<f64>() < *prob {
                    follows.extend(members.iter().cloned());
                }
            }
            if follows.is_empty() {
                let fallback = accounts
                    .first()
                    .map(|(a, _)| a.clone())
                    .unwrap_or_else(|| bundles[0].0[0].clone());
                follows.insert(fallback);
            }
            FollowRecord {
                user: format!("druguser{u:03}"),
                follows,
            }
        })
        .collect();
    Ok(records)
}

/// Shape of a Zipf-distributed benchmark basket corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipfSpec {
    pub transactions: usize,
    pub items: usize,
    /// Mean basket size (Poisson).
    pub mean_len: f64,
    /// Zipf exponent for item popularity.
    pub exponent: f64,
}

impl Default for ZipfSpec {
    fn default() -> Self {
        ZipfSpec {
            transactions: 100_000,
            items: 1_000,
            mean_len: 8.0,
            exponent: 1.0,
        }
    }
}

/// Baskets of distinct items named `tag0000`.. drawn with Zipf popularity.
pub fn zipf_transactions(seed: u64, spec: ZipfSpec) -> Result<Vec<Transaction>> {
    if spec.items == 0 || spec.mean_len <= 0.0 {
        return Err(Error::Spec("zipf corpus needs items and a positive mean length".into()));
    }
    let names: Vec<String> = (0..spec.items).map(|i| format!("tag{i:04}")).collect();
    let weights: Vec<f64> = (1..=spec.items)
        .map(|rank| (rank as f64).powf(-spec.exponent))
        .collect();
    let popularity = WeightedIndex::new(&weights).map_err(|e| Error::Spec(e.to_string()))?;
    let sizes = Poisson::new(spec.mean_len).map_err(|e| Error::Spec(e.to_string()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basket: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(spec.transactions);
    for _ in 0..spec.transactions {
        let len = (sizes.sample(&mut rng) as usize).clamp(1, spec.items);
        basket.clear();
        while basket.len() < len {
            let item = popularity.sample(&mut rng);
            if !basket.contains(&item) {
                basket.push(item);
            }
        }
        out.push(Transaction::from_normalized(
            basket.iter().map(|&i| names[i].clone()).collect(),
        ));
    }
    Ok(out)
}
