//! Tag normalization and the transactions CSV format.

use tagminer::corpus::{
    decode_transactions, encode_transactions, normalize_tag, parse_post_line, posts_to_transactions,
};

fn main() -> tagminer::Result<()> {
    for raw in ["#Weed", "  #KUSH ", "Ｌｅａｎ", "purple,drank", "#"] {
        match normalize_tag(raw) {
            Ok(tag) => println!("{raw:?} -> {tag:?}"),
            Err(e) => println!("{raw:?} rejected: {e}"),
        }
    }

    let lines = [
        r##"{"id":"1","user":"u1","taken_at":1451930400,"tags":["#Weed","weed","#Kush"]}"##,
        r##"{"id":"2","user":"u2","taken_at":1451941200,"tags":["sunset"]}"##,
        r##"{"id":"3","user":"u3","taken_at":1451944800,"tags":[]}"##,
    ];
    let mut posts = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        posts.push(parse_post_line(line, i + 1)?.record);
    }

    let tx = posts_to_transactions(&posts);
    let csv = encode_transactions(&tx);
    print!("transactions csv:\n{csv}");
    assert_eq!(decode_transactions(&csv)?, tx);
    Ok(())
}
