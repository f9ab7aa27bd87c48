//! `--oracle-check`: verdicts compared against bounded language slices.

use anyhow::{bail, Result};
use erecheck::oracle::{Oracle, MAX_ORACLE_LENGTH, MAX_ORACLE_SYMBOLS};
use erecheck::{BitSet, BitsetAlgebra, BooleanAlgebra, Checker, CofiniteAlgebra, Ere, IntervalAlgebra};

use crate::text::show_word;

const NO_ORACLE: &str = "--oracle-check needs a bitset alphabet";

/// Slices are cut at the longest length whose word count stays below this.
const WORD_BUDGET: u64 = 1 << 20;

/// Algebras that may have a slice oracle. Each method returns a description
/// of the disagreement, or `None` when oracle and verdict agree.
pub trait CrossCheck: BooleanAlgebra + Sized {
    fn cross_containment(
        checker: &mut Checker<Self>,
        r: &Ere<Self::Set>,
        s: &Ere<Self::Set>,
        witness: Option<&[Self::Symbol]>,
    ) -> Result<Option<String>> {
        let _ = (checker, r, s, witness);
        bail!(NO_ORACLE)
    }

    fn cross_membership(
        checker: &mut Checker<Self>,
        word: &[Self::Symbol],
        r: &Ere<Self::Set>,
        matched: bool,
    ) -> Result<Option<String>> {
        let _ = (checker, word, r, matched);
        bail!(NO_ORACLE)
    }
}

impl CrossCheck for IntervalAlgebra {}
impl CrossCheck for CofiniteAlgebra {}

/// The longest slice length that fits the word budget.
fn bound(alg: &BitsetAlgebra) -> Result<usize> {
    let k = alg.symbols().len() as u64;
    if k as usize > MAX_ORACLE_SYMBOLS {
        bail!("--oracle-check supports at most {MAX_ORACLE_SYMBOLS} symbols, the alphabet has {k}");
    }
    let mut n = 0;
    let (mut total, mut layer) = (1u64, 1u64);
    while n < 8 {
        layer *= k.max(1);
        if total + layer > WORD_BUDGET {
            break;
        }
        total += layer;
        n += 1;
    }
    Ok(n)
}

impl CrossCheck for BitsetAlgebra {
    fn cross_containment(
        checker: &mut Checker<Self>,
        r: &Ere<BitSet>,
        s: &Ere<BitSet>,
        witness: Option<&[char]>,
    ) -> Result<Option<String>> {
        let n = bound(checker.algebra())?;
        let o = Oracle::new(checker.algebra(), n)?;
        let (sr, ss) = (o.slice(r)?, o.slice(s)?);
        let Some(w) = witness else {
            let extra = sr.words().into_iter().find(|w| !ss.contains(w));
            return Ok(extra.map(|w| {
                format!("verdict holds, but {} is in the left side only", show_word(checker.algebra(), &w))
            }));
        };
        let shown = show_word(checker.algebra(), w);
        if !(checker.membership(w, r) && !checker.membership(w, s)) {
            return Ok(Some(format!("witness {shown} is not a counterexample by membership")));
        }
        if w.len() <= n && !(sr.contains(w) && !ss.contains(w)) {
            return Ok(Some(format!("witness {shown} is not a counterexample on the slice of length {n}")));
        }
        Ok(None)
    }

    fn cross_membership(
        checker: &mut Checker<Self>,
        word: &[char],
        r: &Ere<BitSet>,
        matched: bool,
    ) -> Result<Option<String>> {
        bound(checker.algebra())?;
        if word.len() > MAX_ORACLE_LENGTH {
            bail!("--oracle-check handles words of at most {MAX_ORACLE_LENGTH} symbols");
        }
        let o = Oracle::new(checker.algebra(), word.len())?;
        let expected = o.slice(r)?.contains(word);
        Ok((expected != matched).then(|| {
            format!("the slice oracle says the word is {}in the language", if expected { "" } else { "not " })
        }))
    }
}
