//! Decides containment and equivalence of extended regular expressions
//! (regular expressions with intersection `&` and complement `!`) whose
//! literals are symbol sets from a pluggable boolean algebra.
//!
//! ```
//! use erecheck::{BitsetAlgebra, CheckOptions, Checker};
//!
//! let alg = BitsetAlgebra::new("abc".chars()).unwrap();
//! let mut checker = Checker::new(alg, CheckOptions::default());
//! let r = checker.parse("(a|b)|c").unwrap();
//! let s = checker.parse("a|b").unwrap();
//! let verdict = checker.check(&r, &s).unwrap();
//! assert!(!verdict.holds);
//! assert_eq!(verdict.witness, Some(vec!['c']));
//! ```

pub mod alphabet;
pub mod containment;
pub mod derivative;
pub mod generate;
pub mod next;
pub mod oracle;
pub mod syntax;

#[cfg(test)]
mod testing;

pub use alphabet::{
    AlgebraError, BitSet, BitsetAlgebra, BooleanAlgebra, CofiniteAlgebra, CofiniteSet, IntervalAlgebra,
    IntervalSet,
};
pub use containment::{
    CheckError, CheckOptions, Checker, Direction, Rule, Stats, TraceEvent, TraceRecord, Verdict,
};
pub use derivative::DerivError;
pub use next::{IntersectionLiterals, LiteralPartition};
pub use oracle::{LanguageSlice, Oracle, OracleError};
pub use syntax::{Builder, Ere, EreKind, ExprId, ParseError, RawEre};
