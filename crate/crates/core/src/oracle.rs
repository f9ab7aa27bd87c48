//! Bounded language slices computed directly from the set semantics.
//!
//! `slice(r, N)` is the set of words of length at most `N` in the language
//! of `r`, built bottom-up with set operations: no derivatives are involved,
//! which makes it an independent reference for the checker. Complement is
//! taken relative to all words of length at most `N`; this is exact because
//! whether a word belongs to a language never depends on longer words.
//!
//! Words are stored as bits of one vector, ordered by length and then
//! lexicographically by alphabet position.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::alphabet::{BitSet, BitsetAlgebra, BooleanAlgebra};
use crate::syntax::{Ere, EreKind, RawEre};

pub const MAX_ORACLE_SYMBOLS: usize = 8;
pub const MAX_ORACLE_LENGTH: usize = 10;
/// Upper bound on the number of words of length at most `N`.
pub const MAX_ORACLE_WORDS: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("alphabet of {0} symbols exceeds the oracle limit of {MAX_ORACLE_SYMBOLS}")]
    AlphabetTooLarge(usize),
    #[error("length bound {0} exceeds the oracle limit of {MAX_ORACLE_LENGTH}")]
    BoundTooLarge(usize),
    #[error("{0} words up to the length bound exceed the oracle limit of {MAX_ORACLE_WORDS}")]
    TooManyWords(u64),
    #[error("expression belongs to a different alphabet")]
    ForeignAlphabet,
}

/// The geometry of `Σ^{≤N}` for a fixed alphabet.
#[derive(Debug, Clone)]
struct Space {
    symbols: Arc<[char]>,
    n: usize,
    /// `offsets[l]` is the index of the first word of length `l`; the last
    /// entry is the total word count.
    offsets: Vec<usize>,
    /// `powers[l] = k^l`.
    powers: Vec<usize>,
}

impl Space {
    fn new(alg: &BitsetAlgebra, n: usize) -> Result<Self, OracleError> {
        let k = alg.symbols().len();
        if k > MAX_ORACLE_SYMBOLS {
            return Err(OracleError::AlphabetTooLarge(k));
        }
        if n > MAX_ORACLE_LENGTH {
            return Err(OracleError::BoundTooLarge(n));
        }
        let powers: Vec<u64> = (0..=n as u32).map(|l| (k as u64).pow(l)).collect();
        let total: u64 = powers.iter().sum();
        if total > MAX_ORACLE_WORDS {
            return Err(OracleError::TooManyWords(total));
        }
        let mut offsets = vec![0usize];
        for p in &powers {
            offsets.push(offsets.last().unwrap() + *p as usize);
        }
        Ok(Space {
            symbols: alg.symbols().into(),
            n,
            offsets,
            powers: powers.into_iter().map(|p| p as usize).collect(),
        })
    }

    fn shrink(&self, m: usize) -> Space {
        Space {
            symbols: Arc::clone(&self.symbols),
            n: m,
            offsets: self.offsets[..m + 2].to_vec(),
            powers: self.powers[..m + 1].to_vec(),
        }
    }

    fn k(&self) -> usize {
        self.symbols.len()
    }

    fn total(&self) -> usize {
        self.offsets[self.n + 1]
    }

    fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.total())
    }

    /// Splits a word index into its length and its base-`k` value.
    fn decode(&self, idx: usize) -> (usize, usize) {
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        (len, idx - self.offsets[len])
    }

    fn index(&self, word: &[char]) -> Option<usize> {
        if word.len() > self.n {
            return None;
        }
        let mut v = 0;
        for c in word {
            v = v * self.k() + self.symbols.binary_search(c).ok()?;
        }
        Some(self.offsets[word.len()] + v)
    }

    fn word(&self, idx: usize) -> Vec<char> {
        let (len, mut v) = self.decode(idx);
        let mut w = vec![self.symbols[0]; len];
        for slot in w.iter_mut().rev() {
            *slot = self.symbols[v % self.k()];
            v /= self.k();
        }
        w
    }

    fn literal(&self, set: &BitSet) -> FixedBitSet {
        let mut out = self.empty();
        if self.n >= 1 {
            for i in 0..self.k() {
                if set.bits() >> i & 1 == 1 {
                    out.insert(self.offsets[1] + i);
                }
            }
        }
        out
    }

    fn epsilon(&self) -> FixedBitSet {
        let mut out = self.empty();
        out.insert(0);
        out
    }

    fn concat(&self, x: &FixedBitSet, y: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty();
        let ys: Vec<(usize, usize)> = y.ones().map(|j| self.decode(j)).collect();
        for i in x.ones() {
            let (lu, vu) = self.decode(i);
            for &(lv, vv) in &ys {
                if lu + lv > self.n {
                    // ys is sorted by length
                    break;
                }
                out.insert(self.offsets[lu + lv] + vu * self.powers[lv] + vv);
            }
        }
        out
    }

    fn star(&self, x: &FixedBitSet) -> FixedBitSet {
        let mut step = x.clone();
        step.set(0, false);
        let mut acc = self.epsilon();
        loop {
            let mut next = self.concat(&step, &acc);
            next.union_with(&acc);
            if next == acc {
                return acc;
            }
            acc = next;
        }
    }

    fn complement(&self, x: &FixedBitSet) -> FixedBitSet {
        let mut out = x.clone();
        out.toggle_range(..);
        out
    }
}

/// The words of length at most `N` in a language.
#[derive(Debug, Clone)]
pub struct LanguageSlice {
    space: Arc<Space>,
    bits: FixedBitSet,
}

impl PartialEq for LanguageSlice {
    fn eq(&self, other: &Self) -> bool {
        self.space.symbols == other.space.symbols && self.space.n == other.space.n && self.bits == other.bits
    }
}

impl Eq for LanguageSlice {}

impl LanguageSlice {
    pub fn bound(&self) -> usize {
        self.space.n
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, word: &[char]) -> bool {
        self.space.index(word).is_some_and(|i| self.bits.contains(i))
    }

    /// All words, shortest first, then in alphabet order.
    pub fn words(&self) -> Vec<Vec<char>> {
        self.bits.ones().map(|i| self.space.word(i)).collect()
    }

    /// The shortest (then least) word, if any.
    pub fn first_word(&self) -> Option<Vec<char>> {
        self.bits.ones().next().map(|i| self.space.word(i))
    }

    #[track_caller]
    fn same_space(&self, other: &Self) {
        assert!(
            self.space.symbols == other.space.symbols && self.space.n == other.space.n,
            "slices over different alphabets or bounds"
        );
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_space(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_space(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        LanguageSlice { space: Arc::clone(&self.space), bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_space(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        LanguageSlice { space: Arc::clone(&self.space), bits }
    }

    /// The words of length at most `m`, as a slice with bound `m`.
    pub fn restrict(&self, m: usize) -> Self {
        assert!(m <= self.space.n, "cannot widen a slice");
        let small = self.space.shrink(m);
        let mut bits = small.empty();
        for i in self.bits.ones().take_while(|&i| i < small.total()) {
            bits.insert(i);
        }
        LanguageSlice { space: Arc::new(small), bits }
    }
}

/// Computes slices for one alphabet and length bound.
#[derive(Debug, Clone)]
pub struct Oracle {
    alg: BitsetAlgebra,
    space: Arc<Space>,
}

impl Oracle {
    pub fn new(alg: &BitsetAlgebra, n: usize) -> Result<Self, OracleError> {
        Ok(Oracle { alg: alg.clone(), space: Arc::new(Space::new(alg, n)?) })
    }

    pub fn bound(&self) -> usize {
        self.space.n
    }

    fn wrap(&self, bits: FixedBitSet) -> LanguageSlice {
        LanguageSlice { space: Arc::clone(&self.space), bits }
    }

    fn check_set(&self, set: &BitSet) -> Result<(), OracleError> {
        if self.alg.owns(set) {
            Ok(())
        } else {
            Err(OracleError::ForeignAlphabet)
        }
    }

    pub fn slice(&self, r: &Ere<BitSet>) -> Result<LanguageSlice, OracleError> {
        self.bits_of(r).map(|b| self.wrap(b))
    }

    pub fn slice_raw(&self, r: &RawEre<BitSet>) -> Result<LanguageSlice, OracleError> {
        self.raw_bits_of(r).map(|b| self.wrap(b))
    }

    /// The set of all words up to the bound.
    pub fn all(&self) -> LanguageSlice {
        self.wrap(self.space.complement(&self.space.empty()))
    }

    pub fn nothing(&self) -> LanguageSlice {
        self.wrap(self.space.empty())
    }

    /// All words up to the bound, shortest first.
    pub fn universe_words(&self) -> Vec<Vec<char>> {
        (0..self.space.total()).map(|i| self.space.word(i)).collect()
    }

    fn bits_of(&self, r: &Ere<BitSet>) -> Result<FixedBitSet, OracleError> {
        let sp = &self.space;
        Ok(match r.kind() {
            EreKind::Epsilon => sp.epsilon(),
            EreKind::Literal(set) => {
                self.check_set(set)?;
                sp.literal(set)
            }
            EreKind::Union(x, y) => {
                let mut b = self.bits_of(x)?;
                b.union_with(&self.bits_of(y)?);
                b
            }
            EreKind::And(x, y) => {
                let mut b = self.bits_of(x)?;
                b.intersect_with(&self.bits_of(y)?);
                b
            }
            EreKind::Concat(x, y) => sp.concat(&self.bits_of(x)?, &self.bits_of(y)?),
            EreKind::Star(x) => sp.star(&self.bits_of(x)?),
            EreKind::Not(x) => sp.complement(&self.bits_of(x)?),
        })
    }

    fn raw_bits_of(&self, r: &RawEre<BitSet>) -> Result<FixedBitSet, OracleError> {
        let sp = &self.space;
        Ok(match r {
            RawEre::Epsilon => sp.epsilon(),
            RawEre::Literal(set) => {
                self.check_set(set)?;
                sp.literal(set)
            }
            RawEre::Union(x, y) => {
                let mut b = self.raw_bits_of(x)?;
                b.union_with(&self.raw_bits_of(y)?);
                b
            }
            RawEre::And(x, y) => {
                let mut b = self.raw_bits_of(x)?;
                b.intersect_with(&self.raw_bits_of(y)?);
                b
            }
            RawEre::Concat(x, y) => sp.concat(&self.raw_bits_of(x)?, &self.raw_bits_of(y)?),
            RawEre::Star(x) => sp.star(&self.raw_bits_of(x)?),
            RawEre::Not(x) => sp.complement(&self.raw_bits_of(x)?),
        })
    }
}

/// `⟦r⟧ ∩ Σ^{≤n}`.
pub fn slice(alg: &BitsetAlgebra, r: &Ere<BitSet>, n: usize) -> Result<LanguageSlice, OracleError> {
    Oracle::new(alg, n)?.slice(r)
}

pub fn slice_subset(
    alg: &BitsetAlgebra,
    r: &Ere<BitSet>,
    s: &Ere<BitSet>,
    n: usize,
) -> Result<bool, OracleError> {
    let o = Oracle::new(alg, n)?;
    Ok(o.slice(r)?.is_subset(&o.slice(s)?))
}

pub fn slice_equal(
    alg: &BitsetAlgebra,
    r: &Ere<BitSet>,
    s: &Ere<BitSet>,
    n: usize,
) -> Result<bool, OracleError> {
    let o = Oracle::new(alg, n)?;
    Ok(o.slice(r)? == o.slice(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Builder;

    fn builder(chars: &str) -> Builder<BitsetAlgebra> {
        Builder::new(BitsetAlgebra::new(chars.chars()).unwrap())
    }

    fn words(s: &LanguageSlice) -> Vec<String> {
        s.words().into_iter().map(|w| w.into_iter().collect()).collect()
    }

    #[test]
    fn basic_slices() {
        let mut b = builder("abc");
        let alg = b.algebra().clone();
        let r = b.parse("[]").unwrap();
        assert!(slice(&alg, &r, 3).unwrap().is_empty());
        let r = b.parse("(a.c)&(b.c)").unwrap();
        assert!(slice(&alg, &r, 4).unwrap().is_empty());
        let r = b.parse("a*").unwrap();
        assert_eq!(words(&slice(&alg, &r, 3).unwrap()), ["", "a", "aa", "aaa"]);
        let r = b.parse("(a|bc)*").unwrap();
        assert_eq!(words(&slice(&alg, &r, 3).unwrap()), ["", "a", "aa", "bc", "aaa", "abc", "bca"]);
    }

    #[test]
    fn complement_is_relative_to_the_bound() {
        let mut b = builder("ab");
        let alg = b.algebra().clone();
        let r = b.parse("!([])").unwrap();
        assert_eq!(words(&slice(&alg, &r, 1).unwrap()), ["", "a", "b"]);
        let r = b.parse("!(a*)").unwrap();
        assert_eq!(words(&slice(&alg, &r, 2).unwrap()), ["b", "ab", "ba", "bb"]);
    }

    #[test]
    fn subset_and_equality() {
        let mut b = builder("abc");
        let alg = b.algebra().clone();
        let (a, ab) = (b.parse("a").unwrap(), b.parse("a|b").unwrap());
        assert!(slice_subset(&alg, &a, &ab, 4).unwrap());
        let abc = b.parse("(a|b)|c").unwrap();
        assert!(!slice_subset(&alg, &abc, &ab, 1).unwrap());
        assert!(slice_equal(&alg, &abc, &abc, 3).unwrap());
    }

    #[test]
    fn membership_and_words_round_trip() {
        let mut b = builder("ab");
        let alg = b.algebra().clone();
        let r = b.parse("(ab)*").unwrap();
        let s = slice(&alg, &r, 4).unwrap();
        assert!(s.contains(&['a', 'b', 'a', 'b']));
        assert!(!s.contains(&['a']));
        assert!(!s.contains(&['a', 'b', 'a', 'b', 'a', 'b']));
        assert!(!s.contains(&['z']));
        assert_eq!(s.first_word(), Some(vec![]));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn restriction_matches_smaller_bound() {
        let mut b = builder("ab");
        let alg = b.algebra().clone();
        let r = b.parse("!(a*b)&(a|b)*").unwrap();
        let big = slice(&alg, &r, 6).unwrap();
        for m in 0..6 {
            assert_eq!(big.restrict(m), slice(&alg, &r, m).unwrap());
        }
    }

    #[test]
    fn guards() {
        let alg = BitsetAlgebra::new("abcdefghi".chars()).unwrap();
        assert_eq!(Oracle::new(&alg, 2).unwrap_err(), OracleError::AlphabetTooLarge(9));
        let alg = BitsetAlgebra::new("ab".chars()).unwrap();
        assert_eq!(Oracle::new(&alg, 11).unwrap_err(), OracleError::BoundTooLarge(11));
        let alg = BitsetAlgebra::new("abcdefgh".chars()).unwrap();
        assert!(matches!(Oracle::new(&alg, 10), Err(OracleError::TooManyWords(_))));
        let other = BitsetAlgebra::new("xy".chars()).unwrap();
        let mut b = Builder::new(other);
        let r = b.parse("x").unwrap();
        let o = Oracle::new(&BitsetAlgebra::new("ab".chars()).unwrap(), 2).unwrap();
        assert_eq!(o.slice(&r).unwrap_err(), OracleError::ForeignAlphabet);
    }
}
