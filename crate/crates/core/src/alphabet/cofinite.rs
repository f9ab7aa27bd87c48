use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{
    assert_same_universe, fingerprint, write_codepoint, write_ranges, AlgebraError, BooleanAlgebra,
    MAX_CODEPOINT,
};

/// Largest range `codepoint_range` will materialize as an explicit set.
pub const MAX_EXPLICIT_RANGE: u64 = 1 << 16;

/// A finite set, or the complement of a finite set.
///
/// The representation with the smaller explicit part is canonical; on a tie
/// the finite form wins.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CofiniteSet {
    universe: u64,
    cofinite: bool,
    elems: Arc<[u32]>,
}

impl CofiniteSet {
    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    /// The explicit part: members of a finite set, or excluded symbols of a
    /// cofinite one.
    pub fn explicit(&self) -> &[u32] {
        &self.elems
    }
}

/// Instrumentation for [`CofiniteAlgebra`]: how many symbols each operation
/// touched, compared with the explicit parts of the sets involved.
#[derive(Debug, Default)]
pub struct OpCounters {
    ops: AtomicU64,
    touched: AtomicU64,
    max_touched: AtomicU64,
    over_budget: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpStats {
    /// Number of set operations performed.
    pub ops: u64,
    /// Total symbols visited across all operations.
    pub touched: u64,
    /// Most symbols visited by a single operation.
    pub max_touched: u64,
    /// Operations that visited more symbols than the explicit parts of their
    /// operands and result.
    pub over_budget: u64,
}

impl OpCounters {
    fn record(&self, touched: u64, budget: u64) {
        self.ops.fetch_add(1, Ordering::Relaxed);
        self.touched.fetch_add(touched, Ordering::Relaxed);
        self.max_touched.fetch_max(touched, Ordering::Relaxed);
        if touched > budget {
            self.over_budget.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn snapshot(&self) -> OpStats {
        OpStats {
            ops: self.ops.load(Ordering::Relaxed),
            touched: self.touched.load(Ordering::Relaxed),
            max_touched: self.max_touched.load(Ordering::Relaxed),
            over_budget: self.over_budget.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.ops.store(0, Ordering::Relaxed);
        self.touched.store(0, Ordering::Relaxed);
        self.max_touched.store(0, Ordering::Relaxed);
        self.over_budget.store(0, Ordering::Relaxed);
    }
}

/// Finite/cofinite sets over `min..=max`. No operation enumerates the universe.
#[derive(Debug, Clone)]
pub struct CofiniteAlgebra {
    min: u32,
    max: u32,
    universe: u64,
    counters: Arc<OpCounters>,
}

impl Default for CofiniteAlgebra {
    fn default() -> Self {
        Self::unicode()
    }
}

/// Sorted-merge helper that also counts how many elements it visited.
struct Merge {
    touched: u64,
}

impl Merge {
    fn run(&mut self, a: &[u32], b: &[u32], keep_a: bool, keep_b: bool, keep_both: bool) -> Vec<u32> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            self.touched += 1;
            match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    if keep_both {
                        out.push(x);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    if keep_a {
                        out.push(x);
                    }
                    i += 1;
                }
                (Some(_), Some(&y)) => {
                    if keep_b {
                        out.push(y);
                    }
                    j += 1;
                }
                (Some(&x), None) => {
                    if keep_a {
                        out.push(x);
                    }
                    i += 1;
                }
                (None, Some(&y)) => {
                    if keep_b {
                        out.push(y);
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }
}

impl CofiniteAlgebra {
    pub fn unicode() -> Self {
        Self::with_range(0, MAX_CODEPOINT).expect("valid range")
    }

    pub fn with_range(min: u32, max: u32) -> Result<Self, AlgebraError> {
        if min > max {
            return Err(AlgebraError::InvalidAlphabet(format!("empty codepoint universe {min}..={max}")));
        }
        Ok(CofiniteAlgebra {
            min,
            max,
            universe: fingerprint("cofinite", &(min, max)),
            counters: Arc::default(),
        })
    }

    pub fn counters(&self) -> &OpCounters {
        &self.counters
    }

    fn universe_size(&self) -> u64 {
        u64::from(self.max - self.min) + 1
    }

    pub fn finite<I: IntoIterator<Item = u32>>(&self, elems: I) -> CofiniteSet {
        let mut v: Vec<u32> = elems.into_iter().filter(|x| (self.min..=self.max).contains(x)).collect();
        v.sort_unstable();
        v.dedup();
        let mut touched = 0;
        self.canonical(false, v, &mut touched)
    }

    pub fn cofinite<I: IntoIterator<Item = u32>>(&self, excluded: I) -> CofiniteSet {
        let fin = self.finite(excluded);
        self.complement(&fin)
    }

    #[track_caller]
    fn check(&self, a: &CofiniteSet) {
        assert_same_universe(self.universe, a.universe);
    }

    /// Chooses the representation with the smaller explicit part.
    fn canonical(&self, cofinite: bool, elems: Vec<u32>, touched: &mut u64) -> CofiniteSet {
        let k = elems.len() as u64;
        let rest = self.universe_size() - k;
        let flip = if cofinite { k >= rest } else { k > rest };
        let (cofinite, elems) = if flip {
            // The gap walk emits `rest` symbols, fewer than the `k` explicit ones.
            let mut gaps = Vec::with_capacity(rest as usize);
            let mut next = self.min;
            for &e in &elems {
                *touched += 1;
                while next < e {
                    *touched += 1;
                    gaps.push(next);
                    next += 1;
                }
                next = e.saturating_add(1);
            }
            if elems.last().is_none_or(|&l| l < self.max) {
                for x in next..=self.max {
                    *touched += 1;
                    gaps.push(x);
                }
            }
            (!cofinite, gaps)
        } else {
            (cofinite, elems)
        };
        CofiniteSet { universe: self.universe, cofinite, elems: elems.into() }
    }

    fn finish(&self, cofinite: bool, elems: Vec<u32>, mut touched: u64, inputs: u64) -> CofiniteSet {
        let out = self.canonical(cofinite, elems, &mut touched);
        // merge visits at most `inputs`; a flip visits its input plus its output
        let budget = 2 * inputs + out.elems.len() as u64;
        self.counters.record(touched, budget);
        out
    }
}

impl BooleanAlgebra for CofiniteAlgebra {
    type Symbol = u32;
    type Set = CofiniteSet;

    fn bottom(&self) -> CofiniteSet {
        CofiniteSet { universe: self.universe, cofinite: false, elems: Arc::from([]) }
    }

    fn top(&self) -> CofiniteSet {
        self.complement(&self.bottom())
    }

    fn union(&self, a: &CofiniteSet, b: &CofiniteSet) -> CofiniteSet {
        self.check(a);
        self.check(b);
        let mut m = Merge { touched: 0 };
        let (cof, elems) = match (a.cofinite, b.cofinite) {
            (false, false) => (false, m.run(&a.elems, &b.elems, true, true, true)),
            // complement(B) ∪ A = complement(B \ A)
            (false, true) => (true, m.run(&a.elems, &b.elems, false, true, false)),
            (true, false) => (true, m.run(&a.elems, &b.elems, true, false, false)),
            (true, true) => (true, m.run(&a.elems, &b.elems, false, false, true)),
        };
        self.finish(cof, elems, m.touched, (a.elems.len() + b.elems.len()) as u64)
    }

    fn intersect(&self, a: &CofiniteSet, b: &CofiniteSet) -> CofiniteSet {
        self.check(a);
        self.check(b);
        let mut m = Merge { touched: 0 };
        let (cof, elems) = match (a.cofinite, b.cofinite) {
            (false, false) => (false, m.run(&a.elems, &b.elems, false, false, true)),
            // A ∩ complement(B) = A \ B
            (false, true) => (false, m.run(&a.elems, &b.elems, true, false, false)),
            (true, false) => (false, m.run(&a.elems, &b.elems, false, true, false)),
            (true, true) => (true, m.run(&a.elems, &b.elems, true, true, true)),
        };
        self.finish(cof, elems, m.touched, (a.elems.len() + b.elems.len()) as u64)
    }

    fn complement(&self, a: &CofiniteSet) -> CofiniteSet {
        self.check(a);
        self.finish(!a.cofinite, a.elems.to_vec(), a.elems.len() as u64, a.elems.len() as u64)
    }

    fn is_empty(&self, a: &CofiniteSet) -> bool {
        self.check(a);
        // A cofinite set with an explicit part smaller than the universe is never empty.
        !a.cofinite && a.elems.is_empty()
    }

    fn is_subset(&self, a: &CofiniteSet, b: &CofiniteSet) -> bool {
        self.is_empty(&self.intersect(a, &self.complement(b)))
    }

    fn contains(&self, a: &CofiniteSet, x: &u32) -> bool {
        self.check(a);
        (self.min..=self.max).contains(x) && a.elems.binary_search(x).is_ok() != a.cofinite
    }

    fn pick_witness(&self, a: &CofiniteSet) -> Option<u32> {
        self.check(a);
        if !a.cofinite {
            return a.elems.first().copied();
        }
        let mut candidate = self.min;
        let mut touched = 0;
        for &e in a.elems.iter() {
            touched += 1;
            if e == candidate {
                candidate += 1;
            } else if e > candidate {
                break;
            }
        }
        self.counters.record(touched, a.elems.len() as u64);
        Some(candidate)
    }

    fn singleton(&self, x: &u32) -> CofiniteSet {
        self.finite([*x])
    }

    fn owns(&self, a: &CofiniteSet) -> bool {
        a.universe == self.universe
    }

    fn symbol_from_codepoint(&self, cp: u32) -> Result<u32, AlgebraError> {
        if (self.min..=self.max).contains(&cp) {
            Ok(cp)
        } else {
            let mut s = String::new();
            write_codepoint(cp, false, &mut s);
            Err(AlgebraError::NotInAlphabet(s))
        }
    }

    fn codepoint(&self, x: &u32) -> u32 {
        *x
    }

    fn codepoint_range(&self, lo: u32, hi: u32) -> Result<CofiniteSet, AlgebraError> {
        if lo > hi {
            let (mut l, mut h) = (String::new(), String::new());
            write_codepoint(lo, true, &mut l);
            write_codepoint(hi, true, &mut h);
            return Err(AlgebraError::InvertedRange { lo: l, hi: h });
        }
        let size = u64::from(hi - lo) + 1;
        if size > MAX_EXPLICIT_RANGE {
            return Err(AlgebraError::RangeTooLarge(size));
        }
        Ok(self.finite(lo..=hi))
    }

    fn write_symbol(&self, x: &u32, out: &mut String) {
        write_codepoint(*x, false, out);
    }

    fn write_set(&self, a: &CofiniteSet, out: &mut String) {
        self.check(a);
        match (a.cofinite, &a.elems[..]) {
            (false, []) => out.push_str("[]"),
            (true, []) => out.push('.'),
            (false, [x]) => write_codepoint(*x, false, out),
            (cof, elems) => {
                out.push('[');
                if cof {
                    out.push('^');
                }
                let mut ranges: Vec<(u32, u32)> = Vec::new();
                for &e in elems {
                    match ranges.last_mut() {
                        Some(r) if r.1 + 1 == e => r.1 = e,
                        _ => ranges.push((e, e)),
                    }
                }
                write_ranges(&ranges, out);
                out.push(']');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::alphabet::laws::check_laws;

    const A: u32 = 'a' as u32;
    const B: u32 = 'b' as u32;

    #[test]
    fn top_is_cofinite_with_nothing_excluded() {
        let alg = CofiniteAlgebra::unicode();
        let top = alg.top();
        assert!(top.is_cofinite());
        assert!(top.explicit().is_empty());
    }

    #[test]
    fn complement_of_finite_is_cofinite() {
        let alg = CofiniteAlgebra::unicode();
        let co = alg.complement(&alg.finite([A]));
        assert!(co.is_cofinite());
        assert_eq!(co.explicit(), &[A]);
        assert!(alg.contains(&co, &B));
        assert!(!alg.contains(&co, &A));
    }

    #[test]
    fn witness_of_cofinite_skips_excluded() {
        let alg = CofiniteAlgebra::with_range(A, A + 10).unwrap();
        let co = alg.cofinite([A]);
        assert_eq!(alg.pick_witness(&co), Some(B));
        let co = alg.cofinite([A, B, A + 3]);
        assert_eq!(alg.pick_witness(&co), Some(A + 2));
        let unicode = CofiniteAlgebra::unicode();
        assert_eq!(unicode.pick_witness(&unicode.cofinite([0, 1, 2])), Some(3));
    }

    #[test]
    fn operations_never_scan_the_universe() {
        let alg = CofiniteAlgebra::unicode();
        alg.counters().reset();
        let a = alg.cofinite([A, B]);
        let b = alg.finite([B, 'c' as u32]);
        let u = alg.union(&a, &b);
        let i = alg.intersect(&a, &b);
        let _ = alg.complement(&u);
        let _ = alg.pick_witness(&i);
        let stats = alg.counters().snapshot();
        assert_eq!(stats.over_budget, 0);
        assert!(stats.max_touched <= 4, "{stats:?}");
    }

    #[test]
    fn small_universe_flips_to_minimal_form() {
        let alg = CofiniteAlgebra::with_range(0, 3).unwrap();
        let s = alg.finite([0, 1, 2]);
        assert!(s.is_cofinite());
        assert_eq!(s.explicit(), &[3]);
        let all = alg.finite([0, 1, 2, 3]);
        assert_eq!(all, alg.top());
        let none = alg.cofinite([0, 1, 2, 3]);
        assert_eq!(none, alg.bottom());
        // tie: two explicit either way, finite form wins
        let half = alg.cofinite([0, 1]);
        assert!(!half.is_cofinite());
        assert_eq!(half.explicit(), &[2, 3]);
    }

    #[test]
    fn class_syntax() {
        let alg = CofiniteAlgebra::unicode();
        assert_eq!(alg.set_to_string(&alg.cofinite([A])), "[^a]");
        assert_eq!(alg.set_to_string(&alg.finite([A, B, 'c' as u32, 'x' as u32])), "[a-cx]");
        assert_eq!(alg.set_to_string(&alg.top()), ".");
        assert!(matches!(alg.codepoint_range(0, MAX_CODEPOINT), Err(AlgebraError::RangeTooLarge(_))));
    }

    fn arb_set() -> impl Strategy<Value = (bool, Vec<u32>)> {
        (any::<bool>(), prop::collection::vec(0u32..12, 0..8))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn boolean_laws_small_universe(a in arb_set(), b in arb_set(), c in arb_set()) {
            let alg = CofiniteAlgebra::with_range(0, 11).unwrap();
            let mk = |(cof, v): (bool, Vec<u32>)| if cof { alg.cofinite(v) } else { alg.finite(v) };
            check_laws(&alg, &mk(a), &mk(b), &mk(c));
        }

        #[test]
        fn boolean_laws_unicode(a in arb_set(), b in arb_set(), c in arb_set()) {
            let alg = CofiniteAlgebra::unicode();
            let mk = |(cof, v): (bool, Vec<u32>)| if cof { alg.cofinite(v) } else { alg.finite(v) };
            check_laws(&alg, &mk(a), &mk(b), &mk(c));
        }

        #[test]
        fn canonical_form_matches_denotation(a in arb_set(), b in arb_set()) {
            let alg = CofiniteAlgebra::with_range(0, 11).unwrap();
            let mk = |(cof, v): (bool, Vec<u32>)| if cof { alg.cofinite(v) } else { alg.finite(v) };
            let (x, y) = (mk(a), mk(b));
            let same = (0..=11).all(|p| alg.contains(&x, &p) == alg.contains(&y, &p));
            prop_assert_eq!(x == y, same);
        }
    }
}
