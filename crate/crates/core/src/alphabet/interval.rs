use super::{
    assert_same_universe, fingerprint, write_codepoint, write_ranges, AlgebraError, BooleanAlgebra,
    MAX_CODEPOINT,
};

/// A set of codepoints stored as sorted, disjoint, non-adjacent inclusive ranges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSet {
    universe: u64,
    ranges: Vec<(u32, u32)>,
}

impl IntervalSet {
    pub fn ranges(&self) -> &[(u32, u32)] {
        &self.ranges
    }
}

/// Codepoint sets over the universe `min..=max` (default: all of Unicode).
#[derive(Debug, Clone)]
pub struct IntervalAlgebra {
    min: u32,
    max: u32,
    universe: u64,
}

impl Default for IntervalAlgebra {
    fn default() -> Self {
        Self::unicode()
    }
}

impl IntervalAlgebra {
    pub fn unicode() -> Self {
        Self::with_range(0, MAX_CODEPOINT).expect("valid range")
    }

    pub fn with_range(min: u32, max: u32) -> Result<Self, AlgebraError> {
        if min > max {
            return Err(AlgebraError::InvalidAlphabet(format!("empty codepoint universe {min}..={max}")));
        }
        Ok(IntervalAlgebra { min, max, universe: fingerprint("interval", &(min, max)) })
    }

    pub fn bounds(&self) -> (u32, u32) {
        (self.min, self.max)
    }

    /// Builds a canonical set from arbitrary (possibly overlapping) ranges.
    /// Ranges are clipped to the universe.
    pub fn from_ranges<I: IntoIterator<Item = (u32, u32)>>(&self, ranges: I) -> IntervalSet {
        let mut rs: Vec<(u32, u32)> = ranges
            .into_iter()
            .filter_map(|(lo, hi)| {
                let (lo, hi) = (lo.max(self.min), hi.min(self.max));
                (lo <= hi).then_some((lo, hi))
            })
            .collect();
        rs.sort_unstable();
        self.make(coalesce(rs))
    }

    #[track_caller]
    fn check(&self, a: &IntervalSet) {
        assert_same_universe(self.universe, a.universe);
    }

    fn make(&self, ranges: Vec<(u32, u32)>) -> IntervalSet {
        IntervalSet { universe: self.universe, ranges }
    }
}

/// Merges sorted ranges that overlap or touch.
fn coalesce(sorted: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(sorted.len());
    for (lo, hi) in sorted {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

impl BooleanAlgebra for IntervalAlgebra {
    type Symbol = u32;
    type Set = IntervalSet;

    fn bottom(&self) -> IntervalSet {
        self.make(Vec::new())
    }

    fn top(&self) -> IntervalSet {
        self.make(vec![(self.min, self.max)])
    }

    fn union(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        self.check(a);
        self.check(b);
        let mut merged = Vec::with_capacity(a.ranges.len() + b.ranges.len());
        let (mut i, mut j) = (0, 0);
        while i < a.ranges.len() || j < b.ranges.len() {
            let take_a = j == b.ranges.len() || (i < a.ranges.len() && a.ranges[i] <= b.ranges[j]);
            if take_a {
                merged.push(a.ranges[i]);
                i += 1;
            } else {
                merged.push(b.ranges[j]);
                j += 1;
            }
        }
        self.make(coalesce(merged))
    }

    fn intersect(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        self.check(a);
        self.check(b);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.ranges.len() && j < b.ranges.len() {
            let (alo, ahi) = a.ranges[i];
            let (blo, bhi) = b.ranges[j];
            let (lo, hi) = (alo.max(blo), ahi.min(bhi));
            if lo <= hi {
                out.push((lo, hi));
            }
            if ahi < bhi {
                i += 1;
            } else {
                j += 1;
            }
        }
        self.make(out)
    }

    fn complement(&self, a: &IntervalSet) -> IntervalSet {
        self.check(a);
        let mut out = Vec::with_capacity(a.ranges.len() + 1);
        let mut next = Some(self.min);
        for &(lo, hi) in &a.ranges {
            if let Some(start) = next {
                if start < lo {
                    out.push((start, lo - 1));
                }
            }
            next = if hi >= self.max { None } else { Some(hi + 1) };
        }
        if let Some(start) = next {
            out.push((start, self.max));
        }
        self.make(out)
    }

    fn is_empty(&self, a: &IntervalSet) -> bool {
        self.check(a);
        a.ranges.is_empty()
    }

    fn contains(&self, a: &IntervalSet, x: &u32) -> bool {
        self.check(a);
        let i = a.ranges.partition_point(|&(_, hi)| hi < *x);
        a.ranges.get(i).is_some_and(|&(lo, _)| lo <= *x)
    }

    fn pick_witness(&self, a: &IntervalSet) -> Option<u32> {
        self.check(a);
        a.ranges.first().map(|&(lo, _)| lo)
    }

    fn singleton(&self, x: &u32) -> IntervalSet {
        self.from_ranges([(*x, *x)])
    }

    fn owns(&self, a: &IntervalSet) -> bool {
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

    fn codepoint_range(&self, lo: u32, hi: u32) -> Result<IntervalSet, AlgebraError> {
        if lo > hi {
            let (mut l, mut h) = (String::new(), String::new());
            write_codepoint(lo, true, &mut l);
            write_codepoint(hi, true, &mut h);
            return Err(AlgebraError::InvertedRange { lo: l, hi: h });
        }
        Ok(self.from_ranges([(lo, hi)]))
    }

    fn write_symbol(&self, x: &u32, out: &mut String) {
        write_codepoint(*x, false, out);
    }

    fn write_set(&self, a: &IntervalSet, out: &mut String) {
        self.check(a);
        match a.ranges.as_slice() {
            [] => out.push_str("[]"),
            [(lo, hi)] if (*lo, *hi) == (self.min, self.max) => out.push('.'),
            [(lo, hi)] if lo == hi => write_codepoint(*lo, false, out),
            _ => {
                let co = self.complement(a);
                out.push('[');
                if co.ranges.len() < a.ranges.len() {
                    out.push('^');
                    write_ranges(&co.ranges, out);
                } else {
                    write_ranges(&a.ranges, out);
                }
                out.push(']');
            }
        }
    }
}
