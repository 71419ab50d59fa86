//! Seed a lexicon from frequent tags, categorize it, then screen posts.

use tagminer::corpus::{gen_synthetic_corpus, SynthSpec};
use tagminer::lexicon::{seed_from_frequency, Category};
use tagminer::screening::{assign_category, screen_all, screen_post, Purity};

fn main() -> tagminer::Result<()> {
    let corpus = gen_synthetic_corpus(1, &SynthSpec::default())?;

    // Seeding picks the most frequent tags; every term starts out `general`.
    let mut lex = seed_from_frequency(&corpus.posts, 12)?;
    println!("seeded v{}: {:?}", lex.version(), lex.terms().collect::<Vec<_>>());

    // A reviewer files each seed term under the category it belongs to.
    let terms: Vec<String> = lex.terms().map(str::to_owned).collect();
    for term in terms {
        if let Some(cat) = corpus.lexicon.category(&term).filter(|c| *c != Category::General) {
            lex = lex.recategorize(&term, cat)?;
        }
    }
    println!("after categorizing: v{}", lex.version());

    let post = &corpus.posts[0];
    let result = screen_post(post, &lex, 2);
    println!("post {} tags {:?} -> matched {:?}", post.id, post.tags, result.matched_terms);
    if result.drug_related {
        let a = assign_category(post, &lex, 2, Purity::default())?;
        println!("  category: {:?}", a.category);
    }

    let screened = screen_all(&corpus.posts, &lex, 2, Purity::default());
    let related = screened.iter().filter(|s| s.drug_related).count();
    let assigned = screened.iter().filter(|s| s.category.is_some()).count();
    println!("{related} of {} posts drug related, {assigned} with a category", screened.len());
    Ok(())
}
