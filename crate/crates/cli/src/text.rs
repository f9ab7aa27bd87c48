//! Rendering words and reading them back.

use std::fmt::Write;

use anyhow::{anyhow, bail, Result};
use erecheck::syntax::ParseError;
use erecheck::BooleanAlgebra;

/// A word as plain text, with non-printable symbols and backslashes escaped;
/// `ε` for the empty word.
pub fn show_word<A: BooleanAlgebra>(alg: &A, word: &[A::Symbol]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let mut out = String::new();
    for x in word {
        let cp = alg.codepoint(x);
        match char::from_u32(cp) {
            Some('\\') => out.push_str("\\\\"),
            Some(c) if c == ' ' || !(c.is_control() || c.is_whitespace()) => out.push(c),
            _ => {
                let _ = write!(out, "\\u{{{cp:x}}}");
            }
        }
    }
    out
}

/// Reads a word written as by [`show_word`]: `\u{hex}` and `\\` are escapes,
/// everything else stands for itself. `ε` alone is the empty word.
pub fn read_word<A: BooleanAlgebra>(alg: &A, text: &str) -> Result<Vec<A::Symbol>> {
    if text == "ε" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let cp = if c != '\\' {
            c as u32
        } else {
            match chars.next() {
                Some('\\') => '\\' as u32,
                Some('u') if chars.next() == Some('{') => {
                    let hex: String = chars.by_ref().take_while(|&c| c != '}').collect();
                    u32::from_str_radix(&hex, 16).map_err(|_| anyhow!("bad escape \\u{{{hex}}} in word"))?
                }
                _ => bail!("bad escape in word; use \\u{{hex}} or \\\\"),
            }
        };
        word.push(alg.symbol_from_codepoint(cp)?);
    }
    Ok(word)
}

/// A parse error with the input echoed and the offending position marked.
pub fn parse_diagnostic(what: &str, input: &str, err: &ParseError) -> anyhow::Error {
    let pad: String = input.chars().take(err.position).map(|c| if c == '\t' { '\t' } else { ' ' }).collect();
    anyhow!("{what}: {err}\n  {input}\n  {pad}^")
}

#[cfg(test)]
mod tests {
    use super::*;
    use erecheck::{BitsetAlgebra, IntervalAlgebra};

    #[test]
    fn words_round_trip() {
        let alg = IntervalAlgebra::unicode();
        for w in [vec![], vec![0x61, 0x0, 0x5c, 0x20, 0x2028], vec![0x10ffff]] {
            let shown = show_word(&alg, &w);
            assert_eq!(read_word(&alg, &shown).unwrap(), w, "{shown}");
        }
        assert_eq!(show_word(&alg, &[0x61, 0x7]), "a\\u{7}");
    }

    #[test]
    fn words_outside_the_alphabet_are_rejected() {
        let alg = BitsetAlgebra::new("ab".chars()).unwrap();
        assert_eq!(read_word(&alg, "ab").unwrap(), vec!['a', 'b']);
        assert!(read_word(&alg, "abc").is_err());
        assert!(read_word(&alg, "a\\q").is_err());
    }
}
