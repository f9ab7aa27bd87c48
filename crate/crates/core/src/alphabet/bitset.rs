use std::sync::Arc;

use super::{assert_same_universe, fingerprint, write_codepoint, write_ranges, AlgebraError, BooleanAlgebra};

/// Maximum number of symbols in a bitset universe.
pub const MAX_BITSET_SYMBOLS: usize = 128;

/// A subset of a small explicit alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSet {
    universe: u64,
    bits: u128,
}

impl BitSet {
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }
}

/// Powerset algebra over an explicit alphabet of at most 128 characters.
///
/// Symbols are ordered by codepoint; bit `i` of a set stands for the `i`-th
/// smallest character of the alphabet.
#[derive(Debug, Clone)]
pub struct BitsetAlgebra {
    symbols: Arc<[char]>,
    universe: u64,
    full: u128,
}

impl BitsetAlgebra {
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self, AlgebraError> {
        let mut symbols: Vec<char> = chars.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.is_empty() {
            return Err(AlgebraError::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > MAX_BITSET_SYMBOLS {
            return Err(AlgebraError::InvalidAlphabet(format!(
                "{} symbols exceed the bitset limit of {MAX_BITSET_SYMBOLS}",
                symbols.len()
            )));
        }
        let full = if symbols.len() == 128 { u128::MAX } else { (1u128 << symbols.len()) - 1 };
        Ok(BitsetAlgebra { universe: fingerprint("bitset", &symbols), symbols: symbols.into(), full })
    }

    /// The alphabet in ascending order.
    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.binary_search(&c).ok()
    }

    pub fn from_bits(&self, bits: u128) -> BitSet {
        BitSet { universe: self.universe, bits: bits & self.full }
    }

    /// Builds a set from characters; characters outside the alphabet are an error.
    pub fn set_of(&self, chars: &str) -> Result<BitSet, AlgebraError> {
        let mut bits = 0u128;
        for c in chars.chars() {
            let i = self.index_of(c).ok_or_else(|| AlgebraError::NotInAlphabet(c.to_string()))?;
            bits |= 1 << i;
        }
        Ok(self.from_bits(bits))
    }

    /// Members of `a` in ascending order.
    pub fn members(&self, a: &BitSet) -> Vec<char> {
        self.check(a);
        (0..self.symbols.len()).filter(|&i| a.bits >> i & 1 == 1).map(|i| self.symbols[i]).collect()
    }

    #[track_caller]
    fn check(&self, a: &BitSet) {
        assert_same_universe(self.universe, a.universe);
    }

    fn make(&self, bits: u128) -> BitSet {
        BitSet { universe: self.universe, bits }
    }
}

impl BooleanAlgebra for BitsetAlgebra {
    type Symbol = char;
    type Set = BitSet;

    fn bottom(&self) -> BitSet {
        self.make(0)
    }

    fn top(&self) -> BitSet {
        self.make(self.full)
    }

    fn union(&self, a: &BitSet, b: &BitSet) -> BitSet {
        self.check(a);
        self.check(b);
        self.make(a.bits | b.bits)
    }

    fn intersect(&self, a: &BitSet, b: &BitSet) -> BitSet {
        self.check(a);
        self.check(b);
        self.make(a.bits & b.bits)
    }

    fn complement(&self, a: &BitSet) -> BitSet {
        self.check(a);
        self.make(!a.bits & self.full)
    }

    fn is_empty(&self, a: &BitSet) -> bool {
        self.check(a);
        a.bits == 0
    }

    fn is_subset(&self, a: &BitSet, b: &BitSet) -> bool {
        self.check(a);
        self.check(b);
        a.bits & !b.bits == 0
    }

    fn contains(&self, a: &BitSet, x: &char) -> bool {
        self.check(a);
        self.index_of(*x).is_some_and(|i| a.bits >> i & 1 == 1)
    }

    fn pick_witness(&self, a: &BitSet) -> Option<char> {
        self.check(a);
        (a.bits != 0).then(|| self.symbols[a.bits.trailing_zeros() as usize])
    }

    fn singleton(&self, x: &char) -> BitSet {
        match self.index_of(*x) {
            Some(i) => self.make(1 << i),
            None => panic!("symbol {x:?} is not part of the alphabet"),
        }
    }

    fn owns(&self, a: &BitSet) -> bool {
        a.universe == self.universe
    }

    fn symbol_from_codepoint(&self, cp: u32) -> Result<char, AlgebraError> {
        char::from_u32(cp).filter(|c| self.index_of(*c).is_some()).ok_or_else(|| {
            let mut s = String::new();
            write_codepoint(cp, false, &mut s);
            AlgebraError::NotInAlphabet(s)
        })
    }

    fn codepoint(&self, x: &char) -> u32 {
        *x as u32
    }

    fn codepoint_range(&self, lo: u32, hi: u32) -> Result<BitSet, AlgebraError> {
        if lo > hi {
            let (mut l, mut h) = (String::new(), String::new());
            write_codepoint(lo, true, &mut l);
            write_codepoint(hi, true, &mut h);
            return Err(AlgebraError::InvertedRange { lo: l, hi: h });
        }
        let bits = self
            .symbols
            .iter()
            .enumerate()
            .filter(|(_, &c)| (lo..=hi).contains(&(c as u32)))
            .fold(0u128, |acc, (i, _)| acc | 1 << i);
        Ok(self.make(bits))
    }

    fn write_symbol(&self, x: &char, out: &mut String) {
        write_codepoint(*x as u32, false, out);
    }

    fn write_set(&self, a: &BitSet, out: &mut String) {
        self.check(a);
        if a.bits == 0 {
            out.push_str("[]");
        } else if a.bits == self.full {
            out.push('.');
        } else if a.bits.count_ones() == 1 {
            self.write_symbol(&self.symbols[a.bits.trailing_zeros() as usize], out);
        } else {
            // Runs of consecutive alphabet positions print as ranges; re-parsing
            // a range picks up exactly the alphabet members between its ends.
            let mut ranges = Vec::new();
            let mut i = 0;
            while i < self.symbols.len() {
                if a.bits >> i & 1 == 1 {
                    let start = i;
                    while i + 1 < self.symbols.len() && a.bits >> (i + 1) & 1 == 1 {
                        i += 1;
                    }
                    let (lo, hi) = (self.symbols[start] as u32, self.symbols[i] as u32);
                    if i > start && i - start < 2 {
                        ranges.push((lo, lo));
                        ranges.push((hi, hi));
                    } else {
                        ranges.push((lo, hi));
                    }
                }
                i += 1;
            }
            out.push('[');
            write_ranges(&ranges, out);
            out.push(']');
        }
    }
}
