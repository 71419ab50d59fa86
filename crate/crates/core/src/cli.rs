//! The `tagminer` command line: one subcommand per pipeline stage, files in
//! and files out.
//!
//! Exit status is 0 on success, 1 for usage errors (bad flags or values) and
//! 2 for data errors (missing files, malformed records), with the file and
//! line in the message.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::corpus::{
    gen_synthetic_corpus, normalize_tag, posts_to_transactions, read_follows, read_posts,
    read_transactions_csv, write_follows, write_posts, write_transactions_csv, SynthSpec,
};
use crate::error::{Error, Result};
use crate::fraction::Threshold;
use crate::fsutil;
use crate::interests::InterestReport;
use crate::lexicon::{
    apply_review, propose_candidates, seed_from_frequency, Category, Decision, Lexicon,
    ReviewQueue,
};
use crate::miner::{
    association_rules, frequent_itemsets, read_itemsets, write_itemsets, write_rules, MinerConfig,
};
use crate::screening::{screen_all, Purity, ScreenedPost, DEFAULT_MIN_MATCHES, DEFAULT_PURITY};
use crate::temporal::TemporalReport;

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (lexicon format 1)");

pub const DEFAULT_EXPANSION_SUPPORT: f64 = 0.20;

/// Thresholds shared across stages.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub min_matches: usize,
    pub purity: f64,
    pub expansion_min_support: f64,
    pub mining_min_support: f64,
    pub min_confidence: f64,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            min_matches: DEFAULT_MIN_MATCHES,
            purity: DEFAULT_PURITY,
            expansion_min_support: DEFAULT_EXPANSION_SUPPORT,
            mining_min_support: MinerConfig::DEFAULT_MIN_SUPPORT,
            min_confidence: MinerConfig::DEFAULT_MIN_CONFIDENCE,
            seed: 1,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_matches == 0 {
            return Err(Error::Config("min_matches must be at least 1".into()));
        }
        Purity::new(self.purity)?;
        Threshold::new(self.expansion_min_support, "expansion min_support")?;
        MinerConfig::new(self.mining_min_support, self.min_confidence)?;
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "tagminer", version = VERSION, about = "Hashtag lexicon screening, itemset mining and temporal analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a version-1 lexicon from the most frequent tags of labeled posts
    SeedLexicon(SeedArgs),
    /// Screen posts against a lexicon and assign drug categories
    Screen(ScreenArgs),
    /// Mine frequent itemsets from a transactions CSV (or posts JSONL)
    Mine(MineArgs),
    /// Generate association rules from a mined itemsets file
    Rules(RulesArgs),
    /// Propose lexicon candidates from mined itemsets into the review queue
    Expand(ExpandArgs),
    /// List pending candidates, or approve/reject them
    Review(ReviewArgs),
    /// Hour-of-day and weekday histograms of screened posts
    Temporal(TemporalArgs),
    /// Top followed accounts and follow association rules
    Interests(InterestsArgs),
    /// Generate a seeded synthetic corpus
    Synth(SynthArgs),
}

#[derive(Args, Debug)]
struct SeedArgs {
    #[arg(long)]
    posts: PathBuf,
    #[arg(long, default_value_t = 100)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ScreenArgs {
    #[arg(long)]
    posts: PathBuf,
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MIN_MATCHES)]
    min_matches: usize,
    #[arg(long, default_value_t = DEFAULT_PURITY)]
    purity: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct MineArgs {
    /// Transactions CSV
    #[arg(long, required_unless_present = "posts", conflicts_with = "posts")]
    tx: Option<PathBuf>,
    /// Posts JSONL, one transaction per post with tags
    #[arg(long)]
    posts: Option<PathBuf>,
    /// Also write the transactions derived from --posts
    #[arg(long, requires = "posts")]
    write_tx: Option<PathBuf>,
    #[arg(long, default_value_t = MinerConfig::DEFAULT_MIN_SUPPORT)]
    min_support: f64,
    #[arg(long)]
    max_size: Option<usize>,
    /// Transaction partitions counted in parallel; output does not depend on it
    #[arg(long, default_value_t = 1)]
    partitions: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct RulesArgs {
    #[arg(long)]
    sets: PathBuf,
    #[arg(long, default_value_t = MinerConfig::DEFAULT_MIN_CONFIDENCE)]
    min_confidence: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    sets: PathBuf,
    #[arg(long)]
    lexicon: PathBuf,
    /// Itemsets must exceed this support strictly
    #[arg(long, default_value_t = DEFAULT_EXPANSION_SUPPORT)]
    min_support: f64,
    #[arg(long, default_value = "review_queue.jsonl")]
    queue: PathBuf,
}

#[derive(Args, Debug)]
struct ReviewArgs {
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, default_value = "review_queue.jsonl")]
    queue: PathBuf,
    /// TERM=CATEGORY; may be repeated
    #[arg(long, value_name = "TERM=CATEGORY")]
    approve: Vec<String>,
    /// TERM; may be repeated
    #[arg(long, value_name = "TERM")]
    reject: Vec<String>,
    /// TERM=CATEGORY for a term already in the lexicon; may be repeated
    #[arg(long, value_name = "TERM=CATEGORY")]
    recategorize: Vec<String>,
    /// Decision time in epoch seconds (default: now)
    #[arg(long)]
    decided_at: Option<u64>,
    /// Where to write the updated lexicon (default: --lexicon)
    #[arg(long)]
    out_lexicon: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TemporalArgs {
    #[arg(long)]
    screened: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Raw counts as JSON (default: --out with a .json extension)
    #[arg(long)]
    counts_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InterestsArgs {
    #[arg(long)]
    follows: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    min_support: f64,
    #[arg(long, default_value_t = MinerConfig::DEFAULT_MIN_CONFIDENCE)]
    min_confidence: f64,
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Generation parameters as JSON; missing fields take defaults
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override the number of posts
    #[arg(long)]
    posts: Option<usize>,
    /// Override the number of follow records
    #[arg(long)]
    users: Option<usize>,
    #[arg(long)]
    out_posts: PathBuf,
    #[arg(long)]
    out_follows: PathBuf,
    /// Also write the generator's vocabulary as a categorized lexicon
    #[arg(long)]
    out_lexicon: Option<PathBuf>,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tagminer: {e}");
            if e.is_data_error() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::SeedLexicon(a) => seed_lexicon(a),
        Command::Screen(a) => screen(a),
        Command::Mine(a) => mine(a),
        Command::Rules(a) => rules(a),
        Command::Expand(a) => expand(a),
        Command::Review(a) => review(a),
        Command::Temporal(a) => temporal(a),
        Command::Interests(a) => interests(a),
        Command::Synth(a) => synth(a),
    }
}

fn seed_lexicon(a: SeedArgs) -> Result<()> {
    if a.k == 0 {
        return Err(Error::Config("--k must be at least 1".into()));
    }
    let posts = read_posts(&a.posts)?.records;
    let lex = seed_from_frequency(&posts, a.k).map_err(|e| e.in_file(&a.posts))?;
    lex.save(&a.out)?;
    println!("seeded {} terms into {}", lex.len(), a.out.display());
    Ok(())
}

fn screen(a: ScreenArgs) -> Result<()> {
    let cfg = PipelineConfig {
        min_matches: a.min_matches,
        purity: a.purity,
        ..PipelineConfig::default()
    };
    cfg.validate()?;
    let purity = Purity::new(cfg.purity)?;
    let lex = Lexicon::load(&a.lexicon)?;
    let posts = read_posts(&a.posts)?.records;
    let screened = screen_all(&posts, &lex, cfg.min_matches, purity);
    write_jsonl(&a.out, &screened)?;
    let related = screened.iter().filter(|p| p.drug_related).count();
    let assigned = screened.iter().filter(|p| p.category.is_some()).count();
    println!(
        "screened {} posts: {related} drug related, {assigned} with a category",
        screened.len()
    );
    Ok(())
}

fn mine(a: MineArgs) -> Result<()> {
    let cfg = MinerConfig::new(a.min_support, MinerConfig::DEFAULT_MIN_CONFIDENCE)?
        .with_max_itemset_size(a.max_size)?
        .with_partitions(a.partitions)?;
    let tx = match (&a.tx, &a.posts) {
        (Some(path), _) => read_transactions_csv(path)?,
        (None, Some(path)) => {
            let tx = posts_to_transactions(&read_posts(path)?.records);
            if let Some(out) = &a.write_tx {
                write_transactions_csv(&tx, out)?;
            }
            tx
        }
        (None, None) => unreachable!("clap requires --tx or --posts"),
    };
    let sets = frequent_itemsets(&tx, &cfg);
    write_itemsets(&a.out, &sets, tx.len() as u64)?;
    println!(
        "{} frequent itemsets from {} transactions",
        sets.len(),
        tx.len()
    );
    Ok(())
}

fn rules(a: RulesArgs) -> Result<()> {
    let cfg = MinerConfig::new(MinerConfig::DEFAULT_MIN_SUPPORT, a.min_confidence)?;
    let sets = read_itemsets(&a.sets)?;
    let rules = association_rules(&sets, &cfg).map_err(|e| e.in_file(&a.sets))?;
    write_rules(&a.out, &rules)?;
    println!("{} rules", rules.len());
    Ok(())
}

fn expand(a: ExpandArgs) -> Result<()> {
    let threshold = Threshold::new(a.min_support, "min_support")?;
    let lex = Lexicon::load(&a.lexicon)?;
    let sets = read_itemsets(&a.sets)?;
    let proposed = propose_candidates(&sets, &lex, threshold);
    let mut queue = ReviewQueue::load(&a.queue)?;
    let added = queue.extend_new(proposed);
    queue.save(&a.queue)?;
    println!(
        "{added} new candidate(s); {} pending in {}",
        queue.pending().count(),
        a.queue.display()
    );
    Ok(())
}

fn parse_term_category(raw: &str, flag: &str) -> Result<(String, Category)> {
    let (term, category) = raw
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("{flag} expects TERM=CATEGORY, got {raw:?}")))?;
    let term = normalize_tag(term).map_err(|e| Error::Config(e.to_string()))?;
    Ok((term, category.parse()?))
}

fn review(a: ReviewArgs) -> Result<()> {
    let approvals = a
        .approve
        .iter()
        .map(|r| parse_term_category(r, "--approve"))
        .collect::<Result<Vec<_>>>()?;
    let recategorized = a
        .recategorize
        .iter()
        .map(|r| parse_term_category(r, "--recategorize"))
        .collect::<Result<Vec<_>>>()?;
    let rejections = a
        .reject
        .iter()
        .map(|t| normalize_tag(t).map_err(|e| Error::Config(e.to_string())))
        .collect::<Result<Vec<_>>>()?;

    let mut lex = Lexicon::load(&a.lexicon)?;
    let mut queue = ReviewQueue::load(&a.queue)?;

    if approvals.is_empty() && rejections.is_empty() && recategorized.is_empty() {
        println!("lexicon version {} ({} terms)", lex.version(), lex.len());
        for c in queue.pending() {
            let evidence: Vec<String> = c.evidence.iter().map(|s| s.join(",")).collect();
            println!(
                "{}\t{:.6}\t{}\t{}",
                c.term,
                c.support,
                c.proposed_category.map_or("-", Category::as_str),
                evidence.join(" ")
            );
        }
        return Ok(());
    }

    let decided_at = a.decided_at.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let decisions = approvals
        .into_iter()
        .map(|(t, c)| (t, Decision::Approve(c)))
        .chain(rejections.into_iter().map(|t| (t, Decision::Reject)));
    for (term, decision) in decisions {
        let candidate = queue
            .find_mut(&term)
            .ok_or_else(|| Error::Contract(format!("{term:?} is not in the review queue")))?;
        lex = apply_review(&lex, candidate, decision, decided_at)?;
        println!("{term}: {:?}", candidate.status);
    }
    for (term, category) in recategorized {
        lex = lex.recategorize(&term, category)?;
    }

    lex.save(a.out_lexicon.as_ref().unwrap_or(&a.lexicon))?;
    queue.save(&a.queue)?;
    println!("lexicon version {}", lex.version());
    Ok(())
}

fn temporal(a: TemporalArgs) -> Result<()> {
    let screened = read_screened(&a.screened)?;
    let report = TemporalReport::from_screened(&screened);
    let counts_out = a.counts_out.unwrap_or_else(|| {
        let json = a.out.with_extension("json");
        if json == a.out {
            a.out.with_extension("counts.json")
        } else {
            json
        }
    });
    fsutil::write_string(&a.out, &report.to_text())?;
    fsutil::write_string(&counts_out, &report.to_json())?;
    println!("{} drug-related posts aggregated", report.all.posts);
    Ok(())
}

fn interests(a: InterestsArgs) -> Result<()> {
    if a.top == 0 {
        return Err(Error::Config("--top must be at least 1".into()));
    }
    let cfg = MinerConfig::new(a.min_support, a.min_confidence)?.with_max_itemset_size(a.max_size)?;
    let records = read_follows(&a.follows)?.records;
    let report = InterestReport::build(&records, a.top, &cfg)?;
    fsutil::write_string(&a.out, &report.to_text())?;
    println!(
        "{} users, {} rules",
        report.users,
        report.rules.len()
    );
    Ok(())
}

fn synth(a: SynthArgs) -> Result<()> {
    let mut spec = match &a.spec {
        Some(path) => serde_json::from_str::<SynthSpec>(&fsutil::read_string(path)?).map_err(|e| {
            Error::Parse {
                line: e.line(),
                message: e.to_string(),
            }
            .in_file(path)
        })?,
        None => SynthSpec::default(),
    };
    if let Some(n) = a.posts {
        spec.posts = n;
    }
    if let Some(n) = a.users {
        spec.users = n;
    }
    let corpus = gen_synthetic_corpus(a.seed, &spec)?;
    write_posts(&a.out_posts, &corpus.posts)?;
    write_follows(&a.out_follows, &corpus.follows)?;
    if let Some(path) = &a.out_lexicon {
        corpus.lexicon.save(path)?;
    }
    println!(
        "{} posts, {} follow records (seed {})",
        corpus.posts.len(),
        corpus.follows.len(),
        a.seed
    );
    Ok(())
}

fn write_jsonl(path: &Path, screened: &[ScreenedPost]) -> Result<()> {
    fsutil::write_atomic(path, |out| {
        for p in screened {
            serde_json::to_writer(&mut *out, p).map_err(std::io::Error::other)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    })
}

fn read_screened(path: &Path) -> Result<Vec<ScreenedPost>> {
    let text = fsutil::read_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, line)| {
            serde_json::from_str(line).map_err(|e| {
                Error::Parse {
                    line: idx + 1,
                    message: e.to_string(),
                }
                .in_file(path)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LEXICON_FORMAT_VERSION;

    #[test]
    fn version_names_lexicon_format() {
        assert!(VERSION.ends_with(&format!("(lexicon format {LEXICON_FORMAT_VERSION})")));
    }

    #[test]
    fn pipeline_defaults_are_valid() {
        let cfg = PipelineConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.min_matches, 2);
        assert_eq!(cfg.purity, 0.8);
        assert_eq!(cfg.expansion_min_support, 0.2);
        assert_eq!(cfg.mining_min_support, 0.05);
        assert_eq!(cfg.min_confidence, 0.6);
        let bad = PipelineConfig {
            min_matches: 0,
            ..cfg
        };
        assert!(bad.validate().is_err());
        let bad = PipelineConfig { purity: 1.2, ..cfg };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn term_category_flags() {
        assert_eq!(
            parse_term_category("#Poup=cough_syrup", "--approve").unwrap(),
            ("poup".to_string(), Category::CoughSyrup)
        );
        assert!(parse_term_category("poup", "--approve").is_err());
        assert!(parse_term_category("poup=opioid", "--approve").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["tagminer", "bogus"]), 1);
        assert_eq!(run(["tagminer", "mine", "--out", "x", "--nope"]), 1);
        assert_eq!(run(["tagminer", "--version"]), 0);
    }
}
