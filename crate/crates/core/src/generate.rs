//! Random expression generation for differential testing and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::RawEre;

/// Relative weights of the constructors used for inner nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpWeights {
    pub union: u32,
    pub concat: u32,
    pub star: u32,
    pub and: u32,
    pub not: u32,
}

impl Default for OpWeights {
    fn default() -> Self {
        OpWeights { union: 3, concat: 3, star: 2, and: 2, not: 2 }
    }
}

impl OpWeights {
    /// Weights without `&` and `!`.
    pub fn basic() -> Self {
        OpWeights { and: 0, not: 0, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    /// Upper bound on the raw size of generated trees (at least 1).
    pub max_size: u64,
    pub weights: OpWeights,
    /// Probability that a leaf is `()` rather than a literal.
    pub epsilon_leaf: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_size: 10, weights: OpWeights::default(), epsilon_leaf: 0.1 }
    }
}

/// Draws a tree whose size is uniform in `1..=max_size`, with leaves taken
/// from `atoms`.
pub fn random_raw<S: Clone, R: Rng + ?Sized>(rng: &mut R, atoms: &[S], cfg: &GenConfig) -> RawEre<S> {
    assert!(!atoms.is_empty(), "need at least one atom");
    let size = rng.gen_range(1..=cfg.max_size.max(1));
    sized(rng, atoms, cfg, size)
}

/// Draws a tree of exactly `size` nodes.
pub fn sized<S: Clone, R: Rng + ?Sized>(rng: &mut R, atoms: &[S], cfg: &GenConfig, size: u64) -> RawEre<S> {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(cfg.epsilon_leaf) {
            RawEre::Epsilon
        } else {
            RawEre::Literal(atoms.choose(rng).expect("non-empty").clone())
        }
    };
    if size <= 1 {
        return leaf(rng);
    }
    let w = cfg.weights;
    // binary constructors need two children, so size 2 only admits unary ones
    let binary = if size >= 3 { 1 } else { 0 };
    let table =
        [(w.union * binary, 0u8), (w.concat * binary, 1), (w.star, 2), (w.and * binary, 3), (w.not, 4)];
    let total: u32 = table.iter().map(|t| t.0).sum();
    if total == 0 {
        return leaf(rng);
    }
    let mut pick = rng.gen_range(0..total);
    let op = table
        .iter()
        .find(|t| {
            if pick < t.0 {
                true
            } else {
                pick -= t.0;
                false
            }
        })
        .expect("weights cover the draw")
        .1;
    match op {
        2 | 4 => {
            let child = sized(rng, atoms, cfg, size - 1);
            if op == 2 {
                RawEre::star(child)
            } else {
                RawEre::not(child)
            }
        }
        _ => {
            let left = rng.gen_range(1..=size - 2);
            let (l, r) = (sized(rng, atoms, cfg, left), sized(rng, atoms, cfg, size - 1 - left));
            match op {
                0 => RawEre::union(l, r),
                1 => RawEre::concat(l, r),
                _ => RawEre::and(l, r),
            }
        }
    }
}
