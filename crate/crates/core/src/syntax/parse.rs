//! Recursive-descent parser for the concrete expression syntax.
//!
//! ```text
//! expr  := alt
//! alt   := and ('|' and)*
//! and   := cat ('&' cat)*
//! cat   := neg+
//! neg   := '!' neg | post
//! post  := atom '*'*
//! atom  := '(' expr? ')' | class | char | '.'
//! class := '[' '^'? items ']'
//! ```
//!
//! `()` is the empty word, `[]` the empty language and `.` any symbol.
//! `+` is reserved and rejected; union is written `|`.

use std::fmt;

use thiserror::Error;

use super::RawEre;
use crate::alphabet::{AlgebraError, BooleanAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { expected: &'static str, found: Option<char> },
    Reserved(char),
    BadEscape,
    Algebra(AlgebraError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected { expected, found: Some(c) } => {
                write!(f, "expected {expected}, found {c:?}")
            }
            ParseErrorKind::Unexpected { expected, found: None } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::Reserved(c) => {
                write!(f, "{c:?} is reserved; write union as '|'")
            }
            ParseErrorKind::BadEscape => f.write_str("malformed \\u{...} escape"),
            ParseErrorKind::Algebra(e) => e.fmt(f),
        }
    }
}

/// Parses `text` into an unnormalized tree over `alg`.
pub fn parse_raw<A: BooleanAlgebra>(alg: &A, text: &str) -> Result<RawEre<A::Set>, ParseError> {
    let mut p = Parser { alg, chars: text.chars().collect(), pos: 0 };
    let e = p.alt()?;
    match p.peek() {
        None => Ok(e),
        Some(_) => Err(p.unexpected("end of input")),
    }
}

struct Parser<'a, A> {
    alg: &'a A,
    chars: Vec<char>,
    pos: usize,
}

impl<A: BooleanAlgebra> Parser<'_, A> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error_at(self.pos, ParseErrorKind::Unexpected { expected, found: self.peek() })
    }

    fn error_at(&self, position: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { position, kind }
    }

    fn algebra<T>(&self, at: usize, r: Result<T, AlgebraError>) -> Result<T, ParseError> {
        r.map_err(|e| self.error_at(at, ParseErrorKind::Algebra(e)))
    }

    fn alt(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let mut e = self.and()?;
        while self.eat('|') {
            let rhs = self.and()?;
            e = RawEre::union(e, rhs);
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let mut e = self.cat()?;
        while self.eat('&') {
            let rhs = self.cat()?;
            e = RawEre::and(e, rhs);
        }
        Ok(e)
    }

    fn cat(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let mut e = self.neg()?;
        while !matches!(self.peek(), None | Some('|' | '&' | ')')) {
            let rhs = self.neg()?;
            e = RawEre::concat(e, rhs);
        }
        Ok(e)
    }

    fn neg(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        if self.eat('!') {
            Ok(RawEre::not(self.neg()?))
        } else {
            self.post()
        }
    }

    fn post(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let mut e = self.atom()?;
        while self.eat('*') {
            e = RawEre::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                if self.eat(')') {
                    return Ok(RawEre::Epsilon);
                }
                let e = self.alt()?;
                if !self.eat(')') {
                    return Err(self.unexpected("')'"));
                }
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                self.class()
            }
            Some('.') => {
                self.pos += 1;
                Ok(RawEre::Literal(self.alg.top()))
            }
            Some('+') => Err(self.error_at(start, ParseErrorKind::Reserved('+'))),
            Some('\\') => {
                self.pos += 1;
                let cp = self.escape()?;
                self.single(start, cp)
            }
            Some(c) if !matches!(c, '|' | '&' | ')' | '*' | ']' | '!') => {
                self.pos += 1;
                self.single(start, c as u32)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn single(&self, at: usize, cp: u32) -> Result<RawEre<A::Set>, ParseError> {
        let x = self.algebra(at, self.alg.symbol_from_codepoint(cp))?;
        Ok(RawEre::Literal(self.alg.singleton(&x)))
    }

    /// Reads the escaped character after a backslash.
    fn escape(&mut self) -> Result<u32, ParseError> {
        let start = self.pos - 1;
        match self.bump() {
            None => Err(self.error_at(start, ParseErrorKind::BadEscape)),
            Some('u') if self.peek() == Some('{') => {
                self.pos += 1;
                let digits_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_hexdigit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[digits_start..self.pos].iter().collect();
                if digits.is_empty() || !self.eat('}') {
                    return Err(self.error_at(start, ParseErrorKind::BadEscape));
                }
                u32::from_str_radix(&digits, 16).map_err(|_| self.error_at(start, ParseErrorKind::BadEscape))
            }
            Some(c) => Ok(c as u32),
        }
    }

    fn class_char(&mut self) -> Result<u32, ParseError> {
        match self.bump() {
            Some('\\') => self.escape(),
            Some(c) => Ok(c as u32),
            None => {
                self.pos -= 1;
                Err(self.unexpected("']'"))
            }
        }
    }

    fn class(&mut self) -> Result<RawEre<A::Set>, ParseError> {
        let negated = self.eat('^');
        let mut set = self.alg.bottom();
        while !self.eat(']') {
            let start = self.pos;
            let lo = self.class_char()?;
            let hi = if self.peek() == Some('-') && self.chars.get(self.pos + 1) != Some(&']') {
                self.pos += 1;
                self.class_char()?
            } else {
                lo
            };
            let item = if lo == hi {
                let x = self.algebra(start, self.alg.symbol_from_codepoint(lo))?;
                self.alg.singleton(&x)
            } else {
                self.algebra(start, self.alg.codepoint_range(lo, hi))?
            };
            set = self.alg.union(&set, &item);
        }
        if negated {
            set = self.alg.complement(&set);
        }
        Ok(RawEre::Literal(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{BitsetAlgebra, IntervalAlgebra};
    use crate::syntax::{Builder, EreKind};

    fn abc() -> BitsetAlgebra {
        BitsetAlgebra::new("abc".chars()).unwrap()
    }

    #[test]
    fn alternation_of_singletons_merges() {
        let mut b = Builder::new(abc());
        let r = b.parse("(a|b)|c").unwrap();
        assert_eq!(r.as_literal(), Some(&b.algebra().top()));
    }

    #[test]
    fn intersection_of_concatenations() {
        let mut b = Builder::new(abc());
        let raw = parse_raw(b.algebra(), "(ac)&(bc)").unwrap();
        let s = |c: &str| RawEre::Literal(b.algebra().set_of(c).unwrap());
        assert_eq!(raw, RawEre::and(RawEre::concat(s("a"), s("c")), RawEre::concat(s("b"), s("c"))));
        let r = b.build(&raw);
        assert!(matches!(r.kind(), EreKind::And(..)));
    }

    #[test]
    fn dot_is_any_symbol() {
        let alg = abc();
        let raw = parse_raw(&alg, "(a.c)").unwrap();
        let s = |c: &str| RawEre::Literal(alg.set_of(c).unwrap());
        assert_eq!(raw, RawEre::concat(RawEre::concat(s("a"), s("abc")), s("c")));
    }

    #[test]
    fn precedence() {
        let alg = IntervalAlgebra::unicode();
        let az = RawEre::Literal(alg.codepoint_range('a' as u32, 'z' as u32).unwrap());
        // postfix star binds tighter than prefix negation
        assert_eq!(parse_raw(&alg, "!([a-z])*").unwrap(), RawEre::not(RawEre::star(az.clone())));
        assert_eq!(parse_raw(&alg, "(![a-z])*").unwrap(), RawEre::star(RawEre::not(az)));
        let l = |c: char| RawEre::Literal(alg.singleton(&(c as u32)));
        assert_eq!(parse_raw(&alg, "a|b&c").unwrap(), RawEre::union(l('a'), RawEre::and(l('b'), l('c'))));
        assert_eq!(parse_raw(&alg, "!ab").unwrap(), RawEre::concat(RawEre::not(l('a')), l('b')));
        assert_eq!(parse_raw(&alg, "ab&c").unwrap(), RawEre::and(RawEre::concat(l('a'), l('b')), l('c')));
    }

    #[test]
    fn epsilon_and_empty() {
        let alg = abc();
        assert_eq!(parse_raw(&alg, "()").unwrap(), RawEre::Epsilon);
        assert_eq!(parse_raw(&alg, "[]").unwrap(), RawEre::Literal(alg.bottom()));
        assert_eq!(parse_raw(&alg, "[^]").unwrap(), RawEre::Literal(alg.top()));
    }

    #[test]
    fn classes_and_escapes() {
        let alg = IntervalAlgebra::unicode();
        let raw = parse_raw(&alg, r"[\]\-a-c-]").unwrap();
        let expect =
            alg.from_ranges([(']' as u32, ']' as u32), ('-' as u32, '-' as u32), ('a' as u32, 'c' as u32)]);
        assert_eq!(raw, RawEre::Literal(expect));
        let raw = parse_raw(&alg, r"\*\u{41}").unwrap();
        assert_eq!(
            raw,
            RawEre::concat(
                RawEre::Literal(alg.singleton(&('*' as u32))),
                RawEre::Literal(alg.singleton(&0x41))
            )
        );
        let raw = parse_raw(&alg, "[^a]").unwrap();
        assert_eq!(raw, RawEre::Literal(alg.complement(&alg.singleton(&('a' as u32)))));
    }

    #[test]
    fn errors_carry_positions() {
        let alg = abc();
        let err = parse_raw(&alg, "a|").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { found: None, .. }));

        let err = parse_raw(&alg, "a+b").unwrap_err();
        assert_eq!((err.position, err.kind), (1, ParseErrorKind::Reserved('+')));

        let err = parse_raw(&alg, "(ab").unwrap_err();
        assert_eq!(err.position, 3);

        let err = parse_raw(&alg, "ab)").unwrap_err();
        assert_eq!(err.position, 2);

        let err = parse_raw(&alg, "ad").unwrap_err();
        assert_eq!(err.position, 1);
        assert!(matches!(err.kind, ParseErrorKind::Algebra(AlgebraError::NotInAlphabet(_))));

        let err = parse_raw(&alg, "[ab").unwrap_err();
        assert_eq!(err.position, 3);

        let err = parse_raw(&alg, "*a").unwrap_err();
        assert_eq!(err.position, 0);

        assert!(parse_raw(&alg, "").is_err());
        assert!(parse_raw(&alg, r"\u{zz}").is_err());
        assert!(parse_raw(&alg, "[c-a]").is_err());
    }
}
