//! Text grammar for words.
//!
//! Two styles, chosen by the alphabet:
//!
//! * compact, when every generator is a single lowercase letter: a lowercase
//!   letter is a generator and the matching uppercase letter its inverse
//!   (`abA` is a·b·a⁻¹);
//! * extended, otherwise: whitespace- or `*`-separated tokens `name`,
//!   `name^-1` or `name^k` for any integer `k`.
//!
//! In both styles `1` (or an empty string) denotes the identity. A word is
//! parsed in the style of its alphabet, so the two styles never mix within
//! one document.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Parses `text` as a word over `alphabet`. Error columns are 1-based and
/// relative to `text`; `line` is reported as 1.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    parse_word_at(alphabet, text, 1, 1)
}

/// As [`parse_word`], reporting errors at `line` with columns offset so that
/// the first byte of `text` is column `column`.
pub fn parse_word_at(alphabet: &Alphabet, text: &str, line: usize, column: usize) -> Result<Word> {
    let err = |offset: usize, message: String| Error::Malformed {
        line,
        column: column + offset,
        message,
    };
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Word::identity());
    }
    let mut letters = Vec::new();
    if alphabet.is_compact() {
        for (offset, ch) in text.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            let lower = ch.to_ascii_lowercase().to_string();
            match alphabet.index_of(&lower) {
                Some(g) if ch.is_ascii_alphabetic() => {
                    letters.push(Letter::new(g, ch.is_ascii_uppercase()))
                }
                _ => return Err(err(offset, format!("unknown generator `{ch}`"))),
            }
        }
    } else {
        for (offset, token) in tokens(text) {
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| err(offset, format!("bad exponent in `{token}`")))?;
                    (name, k)
                }
                None => (token, 1),
            };
            let g = alphabet
                .index_of(name)
                .ok_or_else(|| err(offset, format!("unknown generator `{name}`")))?;
            let l = Letter::new(g, exponent < 0);
            for _ in 0..exponent.unsigned_abs() {
                letters.push(l);
            }
        }
    }
    Ok(Word::reduce(letters))
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        let sep = ch.is_whitespace() || ch == '*';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
}

/// Prints `w` in the style of `alphabet`; the identity prints as `1`.
pub fn format_word(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    if alphabet.is_compact() {
        w.letters()
            .iter()
            .map(|l| {
                let c = alphabet.symbol(l.gen()).chars().next().unwrap();
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    } else {
        w.letters()
            .iter()
            .map(|l| {
                let name = alphabet.symbol(l.gen());
                if l.is_inverse() {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn compact_style() {
        let al = ab();
        let w = parse_word(&al, "aAb").unwrap();
        assert_eq!(format_word(&al, &w), "b");
        assert_eq!(format_word(&al, &parse_word(&al, "abBa").unwrap()), "aa");
        assert!(parse_word(&al, "").unwrap().is_identity());
        assert!(parse_word(&al, "1").unwrap().is_identity());
        assert_eq!(format_word(&al, &Word::identity()), "1");
        assert_eq!(format_word(&al, &parse_word(&al, "a b A").unwrap()), "abA");
    }

    #[test]
    fn unknown_generator_reports_column() {
        let err = parse_word(&ab(), "abc").unwrap_err();
        assert_eq!(
            err,
            Error::Malformed {
                line: 1,
                column: 3,
                message: "unknown generator `c`".into()
            }
        );
    }

    #[test]
    fn extended_style() {
        let al = Alphabet::new(["x1", "x2"]).unwrap();
        let w = parse_word(&al, "x1 x2^-1 x2^3 * x1^-2").unwrap();
        assert_eq!(format_word(&al, &w), "x1 x2 x2 x1^-1 x1^-1");
        assert_eq!(parse_word(&al, &format_word(&al, &w)).unwrap(), w);
        assert!(matches!(
            parse_word(&al, "x1 y").unwrap_err(),
            Error::Malformed { column: 4, .. }
        ));
        assert!(parse_word(&al, "x1^q").is_err());
    }
}
