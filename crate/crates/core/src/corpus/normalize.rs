use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Canonical item string for a hashtag.
///
/// Compatibility-normalizes (NFKC), lowercases, drops commas and line
/// breaks, and strips leading `#` and surrounding whitespace. The result is
/// a fixed point: `normalize_tag(normalize_tag(t)) == normalize_tag(t)`.
pub fn normalize_tag(raw: &str) -> Result<String> {
    let once = normalize_once(raw);
    // Lowercasing can leave a string that NFKC rewrites again (e.g. some
    // precomposed capitals); a second pass reaches the fixed point.
    let tag = normalize_once(&once);
    if tag.is_empty() {
        return Err(Error::RejectedTag {
            raw: raw.to_owned(),
        });
    }
    Ok(tag)
}

fn normalize_once(raw: &str) -> String {
    let folded: String = raw
        .nfkc()
        .collect::<String>()
        .to_lowercase()
        .nfkc()
        .filter(|c| !matches!(c, ',' | '\n' | '\r'))
        .collect();
    folded
        .trim_start_matches(|c: char| c == '#' || c.is_whitespace())
        .trim_end()
        .to_owned()
}

/// Account handles are case-insensitive; no `#` semantics.
pub fn normalize_account(raw: &str) -> Result<String> {
    let name: String = raw
        .trim()
        .to_lowercase()
        .chars()
        .filter(|c| !matches!(c, ',' | '\n' | '\r'))
        .collect();
    if name.is_empty() {
        return Err(Error::RejectedTag {
            raw: raw.to_owned(),
        });
    }
    Ok(name)
}
