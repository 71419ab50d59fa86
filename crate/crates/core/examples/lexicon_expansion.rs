//! Propose new lexicon terms from mined co-occurrence and review them.

use tagminer::corpus::{gen_synthetic_corpus, posts_to_transactions, SynthSpec};
use tagminer::fraction::Threshold;
use tagminer::lexicon::{apply_review, propose_candidates, Category, Decision, ReviewQueue};
use tagminer::miner::{frequent_itemsets, MinerConfig};
use tagminer::screening::screen_post;

fn main() -> tagminer::Result<()> {
    let corpus = gen_synthetic_corpus(1, &SynthSpec::default())?;
    let lex = corpus.lexicon;
    let tx = posts_to_transactions(&corpus.posts);
    let sets = frequent_itemsets(&tx, &MinerConfig::new(0.05, 0.6)?);

    let mut queue = ReviewQueue::default();
    queue.extend_new(propose_candidates(&sets, &lex, Threshold::new(0.2, "expansion")?));
    for c in queue.pending() {
        println!("candidate {:<8} support {:.6}  seen with {:?}", c.term, c.support, c.evidence);
    }

    let candidate = queue.find_mut("poup").expect("planted term is proposed");
    let next = apply_review(&lex, candidate, Decision::Approve(Category::Weed), 1_700_000_000)?;
    println!("approved poup: lexicon v{} -> v{}", lex.version(), next.version());

    let post = corpus.posts.iter().find(|p| p.tags.contains("poup")).unwrap();
    println!(
        "post {} matches {} terms before, {} after",
        post.id,
        screen_post(post, &lex, 2).matched_terms.len(),
        screen_post(post, &next, 2).matched_terms.len()
    );
    Ok(())
}
