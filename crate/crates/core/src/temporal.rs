//! Hour-of-day and day-of-week histograms over UTC timestamps, category
//! popularity shares, and peak lookup.
//!
//! Binning is integer arithmetic on epoch seconds. No timezone correction is
//! attempted: every timestamp is read as UTC.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::PostRecord;
use crate::error::{Error, Result};
use crate::lexicon::Category;
use crate::screening::{CategoryAssignment, ScreenedPost};

const SECONDS_PER_DAY: u64 = 86_400;

/// 1970-01-01 was a Thursday.
const EPOCH_WEEKDAY: u64 = 3;

pub const WEEKDAY_NAMES: [&str; 7] = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

pub trait Timestamped {
    /// Epoch seconds, UTC.
    fn taken_at(&self) -> u64;
}

impl Timestamped for PostRecord {
    fn taken_at(&self) -> u64 {
        self.taken_at
    }
}

impl Timestamped for ScreenedPost {
    fn taken_at(&self) -> u64 {
        self.taken_at
    }
}

impl Timestamped for u64 {
    fn taken_at(&self) -> u64 {
        *self
    }
}

pub fn hour_of_day(taken_at: u64) -> usize {
    ((taken_at % SECONDS_PER_DAY) / 3600) as usize
}

/// 0 = Monday ... 6 = Sunday.
pub fn weekday(taken_at: u64) -> usize {
    ((taken_at / SECONDS_PER_DAY + EPOCH_WEEKDAY) % 7) as usize
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HourHistogram {
    pub bins: [u64; 24],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeekdayHistogram {
    pub bins: [u64; 7],
}

impl HourHistogram {
    pub fn add(&mut self, taken_at: u64) {
        self.bins[hour_of_day(taken_at)] += 1;
    }

    pub fn merge(&mut self, other: &HourHistogram) {
        for (a, b) in self.bins.iter_mut().zip(other.bins) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    pub fn peaks(&self, k: usize) -> Vec<usize> {
        peak_bins(&self.bins, k)
    }
}

impl WeekdayHistogram {
    pub fn add(&mut self, taken_at: u64) {
        self.bins[weekday(taken_at)] += 1;
    }

    pub fn merge(&mut self, other: &WeekdayHistogram) {
        for (a, b) in self.bins.iter_mut().zip(other.bins) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    pub fn peaks(&self, k: usize) -> Vec<usize> {
        peak_bins(&self.bins, k)
    }
}

pub fn hour_histogram<'a, T, I>(posts: I) -> HourHistogram
where
    T: Timestamped + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let mut hist = HourHistogram::default();
    for p in posts {
        hist.add(p.taken_at());
    }
    hist
}

pub fn weekday_histogram<'a, T, I>(posts: I) -> WeekdayHistogram
where
    T: Timestamped + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let mut hist = WeekdayHistogram::default();
    for p in posts {
        hist.add(p.taken_at());
    }
    hist
}

/// Indices of the `k` largest bins, larger counts first and smaller index
/// first among equals. `k` is clamped to the number of bins.
pub fn peak_bins(bins: &[u64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..bins.len()).collect();
    order.sort_by(|&a, &b| bins[b].cmp(&bins[a]).then(a.cmp(&b)));
    order.truncate(k);
    order
}

/// Share of each drug category among posts that received one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryShares {
    pub counts: BTreeMap<Category, u64>,
    pub assigned: u64,
}

impl CategoryShares {
    /// Unassigned entries (`None`) are skipped.
    pub fn from_categories(categories: impl IntoIterator<Item = Option<Category>>) -> Result<Self> {
        let mut counts: BTreeMap<Category, u64> =
            Category::DRUGS.into_iter().map(|c| (c, 0)).collect();
        let mut assigned = 0;
        for c in categories.into_iter().flatten() {
            *counts.entry(c).or_default() += 1;
            assigned += 1;
        }
        if assigned == 0 {
            return Err(Error::NoAssignedPosts);
        }
        Ok(CategoryShares { counts, assigned })
    }

    pub fn share(&self, category: Category) -> f64 {
        self.counts.get(&category).copied().unwrap_or(0) as f64 / self.assigned as f64
    }

    pub fn shares(&self) -> impl Iterator<Item = (Category, f64)> + '_ {
        self.counts.keys().map(|&c| (c, self.share(c)))
    }
}

pub fn category_shares(assignments: &[CategoryAssignment]) -> Result<CategoryShares> {
    CategoryShares::from_categories(assignments.iter().map(|a| a.category))
}

/// Histograms for one slice of the screened posts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimeProfile {
    pub posts: u64,
    pub hours: HourHistogram,
    pub weekdays: WeekdayHistogram,
}

impl TimeProfile {
    fn from_posts<'a>(posts: impl IntoIterator<Item = &'a ScreenedPost> + Clone) -> Self {
        let hours = hour_histogram(posts.clone());
        TimeProfile {
            posts: hours.total(),
            hours,
            weekdays: weekday_histogram(posts),
        }
    }
}

/// Temporal summary of drug-related posts: overall and per category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemporalReport {
    /// Drug-related posts, assigned or not.
    pub all: TimeProfile,
    pub by_category: BTreeMap<Category, TimeProfile>,
    pub shares: Option<CategoryShares>,
}

impl TemporalReport {
    pub fn from_screened(screened: &[ScreenedPost]) -> Self {
        let related = screened.iter().filter(|p| p.drug_related);
        let by_category = Category::DRUGS
            .into_iter()
            .map(|c| {
                let slice = screened
                    .iter()
                    .filter(move |p| p.drug_related && p.category == Some(c));
                (c, TimeProfile::from_posts(slice))
            })
            .collect();
        TemporalReport {
            all: TimeProfile::from_posts(related.clone()),
            by_category,
            shares: CategoryShares::from_categories(related.map(|p| p.category)).ok(),
        }
    }

    /// Human-readable tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# temporal report (times in UTC; weekday 0=Mon .. 6=Sun)\n");
        write_profile(&mut out, "all drug-related", &self.all);
        for (c, profile) in &self.by_category {
            write_profile(&mut out, c.as_str(), profile);
        }
        out.push_str("\n## category shares\n");
        match &self.shares {
            Some(shares) => {
                let _ = writeln!(out, "assigned posts: {}", shares.assigned);
                for (c, share) in shares.shares() {
                    let _ = writeln!(
                        out,
                        "{:<12} {:>8} {:.6}",
                        c.as_str(),
                        shares.counts[&c],
                        share
                    );
                }
            }
            None => out.push_str("no assigned posts\n"),
        }
        out
    }

    /// Raw counts as JSON.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

fn write_profile(out: &mut String, name: &str, profile: &TimeProfile) {
    let _ = writeln!(out, "\n## {name} (posts: {})", profile.posts);
    out.push_str("hour  count\n");
    for (h, n) in profile.hours.bins.iter().enumerate() {
        let _ = writeln!(out, "{h:02}    {n}");
    }
    out.push_str("weekday  count\n");
    for (d, n) in profile.weekdays.bins.iter().enumerate() {
        let _ = writeln!(out, "{d} {}    {n}", WEEKDAY_NAMES[d]);
    }
    if profile.posts > 0 {
        let peaks: Vec<String> = profile
            .hours
            .peaks(2)
            .iter()
            .map(|h| format!("{h:02}:00"))
            .collect();
        let top_day = profile.weekdays.peaks(1)[0];
        let _ = writeln!(out, "top hours: {}", peaks.join(", "));
        let _ = writeln!(out, "top weekday: {top_day} {}", WEEKDAY_NAMES[top_day]);
    }
}
