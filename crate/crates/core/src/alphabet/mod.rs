//! Effective boolean algebras over symbol sets.
//!
//! A literal in an expression is a set of symbols. The engine never looks
//! inside a set directly: every operation it needs (union, intersection,
//! complement, emptiness, membership, picking a representative) goes through
//! the [`BooleanAlgebra`] trait, so the same decision procedure runs over a
//! three-letter alphabet, all of Unicode, or an unbounded universe of
//! finite/cofinite sets.
//!
//! Three algebras ship with the crate:
//!
//! - [`BitsetAlgebra`]: an explicit small alphabet (at most 128 symbols),
//!   sets are bit vectors.
//! - [`IntervalAlgebra`]: codepoint sets as sorted disjoint intervals.
//! - [`CofiniteAlgebra`]: sets that are either finite or have a finite
//!   complement; operations only ever touch the explicit finite part.

mod bitset;
mod cofinite;
mod interval;

use std::fmt::{self, Debug, Write as _};
use std::hash::{Hash, Hasher};

use thiserror::Error;

pub use bitset::{BitSet, BitsetAlgebra};
pub use cofinite::{CofiniteAlgebra, CofiniteSet, OpCounters, OpStats};
pub use interval::{IntervalAlgebra, IntervalSet};

/// Largest Unicode scalar value; the default upper bound of codepoint universes.
pub const MAX_CODEPOINT: u32 = 0x10FFFF;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("symbol {0} is not part of the alphabet")]
    NotInAlphabet(String),
    #[error("invalid range {lo}-{hi}: lower bound exceeds upper bound")]
    InvertedRange { lo: String, hi: String },
    #[error("range of {0} symbols is too large for an explicit finite set")]
    RangeTooLarge(u64),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
}

/// A set algebra `(U, ⊔, ⊓, complement, ⊥, ⊤)` with decidable equality.
///
/// Sets are kept in a canonical form, so `==` on [`Self::Set`] coincides with
/// equality of denotations. Sets remember which universe they belong to;
/// combining sets from different universes panics.
pub trait BooleanAlgebra: Clone + Debug {
    type Symbol: Clone + Ord + Hash + Debug + Send + Sync;
    type Set: Clone + Ord + Hash + Debug + Send + Sync;

    fn bottom(&self) -> Self::Set;
    fn top(&self) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn intersect(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn complement(&self, a: &Self::Set) -> Self::Set;
    fn is_empty(&self, a: &Self::Set) -> bool;
    fn contains(&self, a: &Self::Set, x: &Self::Symbol) -> bool;

    /// The least symbol of `a` under the algebra's order, or `None` for ⊥.
    fn pick_witness(&self, a: &Self::Set) -> Option<Self::Symbol>;

    fn singleton(&self, x: &Self::Symbol) -> Self::Set;

    /// Whether `a` was created by an algebra over the same universe.
    fn owns(&self, a: &Self::Set) -> bool;

    fn is_equal(&self, a: &Self::Set, b: &Self::Set) -> bool {
        a == b
    }

    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool {
        self.is_empty(&self.intersect(a, &self.complement(b)))
    }

    fn is_top(&self, a: &Self::Set) -> bool {
        self.is_empty(&self.complement(a))
    }

    fn is_disjoint(&self, a: &Self::Set, b: &Self::Set) -> bool {
        self.is_empty(&self.intersect(a, b))
    }

    /// Maps a codepoint from concrete syntax to a symbol.
    fn symbol_from_codepoint(&self, cp: u32) -> Result<Self::Symbol, AlgebraError>;

    /// The codepoint a symbol stands for; inverse of [`Self::symbol_from_codepoint`].
    fn codepoint(&self, x: &Self::Symbol) -> u32;

    /// The set of symbols whose codepoints lie in `lo..=hi`.
    fn codepoint_range(&self, lo: u32, hi: u32) -> Result<Self::Set, AlgebraError>;

    /// Renders a symbol the way it would be written in an expression.
    fn write_symbol(&self, x: &Self::Symbol, out: &mut String);

    /// Renders a set in character-class syntax (`[a-z]`, `[^ab]`, `.`, `[]`, `c`).
    fn write_set(&self, a: &Self::Set, out: &mut String);

    fn symbol_to_string(&self, x: &Self::Symbol) -> String {
        let mut s = String::new();
        self.write_symbol(x, &mut s);
        s
    }

    fn set_to_string(&self, a: &Self::Set) -> String {
        let mut s = String::new();
        self.write_set(a, &mut s);
        s
    }

    fn word_to_string(&self, word: &[Self::Symbol]) -> String {
        let mut s = String::new();
        for x in word {
            self.write_symbol(x, &mut s);
        }
        s
    }

    fn union_all<'a, I>(&self, sets: I) -> Self::Set
    where
        I: IntoIterator<Item = &'a Self::Set>,
        Self::Set: 'a,
    {
        sets.into_iter().fold(self.bottom(), |acc, s| self.union(&acc, s))
    }
}

/// Characters that must be escaped outside a character class.
pub(crate) const META: &[char] = &['|', '&', '!', '*', '(', ')', '[', ']', '.', '\\', '+'];
/// Characters that must be escaped inside a character class.
pub(crate) const CLASS_META: &[char] = &['[', ']', '\\', '-', '^'];

/// Writes a codepoint as it appears in concrete syntax.
pub(crate) fn write_codepoint(cp: u32, in_class: bool, out: &mut String) {
    match char::from_u32(cp) {
        Some(c) if !c.is_control() && !c.is_whitespace() || c == ' ' => {
            let meta = if in_class { CLASS_META } else { META };
            if meta.contains(&c) {
                out.push('\\');
            }
            out.push(c);
        }
        _ => {
            let _ = write!(out, "\\u{{{cp:x}}}");
        }
    }
}

/// Writes sorted, disjoint, inclusive codepoint ranges as a class body.
pub(crate) fn write_ranges(ranges: &[(u32, u32)], out: &mut String) {
    for &(lo, hi) in ranges {
        write_codepoint(lo, true, out);
        if hi > lo {
            if hi > lo + 1 {
                out.push('-');
            }
            write_codepoint(hi, true, out);
        }
    }
}

/// Stable fingerprint identifying a universe configuration.
pub(crate) fn fingerprint(kind: &str, params: &impl Hash) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    kind.hash(&mut h);
    params.hash(&mut h);
    h.finish()
}

#[track_caller]
pub(crate) fn assert_same_universe(expected: u64, got: u64) {
    assert_eq!(expected, got, "symbol set belongs to a different algebra instance");
}

/// Wraps a symbol for display through its algebra.
pub struct SymbolDisplay<'a, A: BooleanAlgebra>(pub &'a A, pub &'a A::Symbol);

impl<A: BooleanAlgebra> fmt::Display for SymbolDisplay<'_, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.symbol_to_string(self.1))
    }
}

/// Wraps a set for display through its algebra.
pub struct SetDisplay<'a, A: BooleanAlgebra>(pub &'a A, pub &'a A::Set);

impl<A: BooleanAlgebra> fmt::Display for SetDisplay<'_, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.set_to_string(self.1))
    }
}
