//! Label normalization shared by the lexical matchers and the autocomplete index.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Case-folds, strips diacritics and collapses whitespace.
///
/// `normalize(normalize(s)) == normalize(s)` for every input.
pub fn normalize(s: &str) -> String {
    let folded = s.to_lowercase();
    let stripped: String = folded.nfd().filter(|c| !is_combining_mark(*c)).nfc().collect();
    let mut out = String::with_capacity(stripped.len());
    for word in stripped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}
