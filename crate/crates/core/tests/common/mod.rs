#![allow(dead_code)]

use erecheck::generate::{sized, GenConfig};
use erecheck::{BitSet, BitsetAlgebra, Builder, Ere, RawEre};
use proptest::prelude::*;
use rand::Rng;

pub fn alg(chars: &str) -> BitsetAlgebra {
    BitsetAlgebra::new(chars.chars()).unwrap()
}

/// Every non-empty subset of the alphabet, plus the empty one.
pub fn all_sets(alg: &BitsetAlgebra) -> Vec<BitSet> {
    let k = alg.symbols().len();
    (0..1u128 << k).map(|b| alg.from_bits(b)).collect()
}

/// Literal atoms for random expressions: every non-empty subset.
pub fn atoms(alg: &BitsetAlgebra) -> Vec<BitSet> {
    all_sets(alg).into_iter().filter(|s| !s.is_empty()).collect()
}

/// A random raw tree of size in `1..=max_size`.
pub fn random_raw<R: Rng>(rng: &mut R, alg: &BitsetAlgebra, max_size: u64) -> RawEre<BitSet> {
    let size = rng.gen_range(1..=max_size);
    sized(rng, &atoms(alg), &GenConfig::default(), size)
}

/// Raw trees over the atoms of `alg` (by bit pattern), for proptest.
pub fn arb_raw(bits: Vec<u128>, depth: u32) -> impl Strategy<Value = RawEre<u128>> {
    let leaf = prop_oneof![
        1 => Just(RawEre::Epsilon),
        6 => prop::sample::select(bits).prop_map(RawEre::Literal),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::union(r, s)),
            3 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::concat(r, s)),
            2 => inner.clone().prop_map(RawEre::star),
            2 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::and(r, s)),
            2 => inner.prop_map(RawEre::not),
        ]
    })
}

pub fn resolve(alg: &BitsetAlgebra, raw: &RawEre<u128>) -> RawEre<BitSet> {
    let r = |x: &RawEre<u128>| resolve(alg, x);
    match raw {
        RawEre::Epsilon => RawEre::Epsilon,
        RawEre::Literal(b) => RawEre::Literal(alg.from_bits(*b)),
        RawEre::Union(x, y) => RawEre::union(r(x), r(y)),
        RawEre::Concat(x, y) => RawEre::concat(r(x), r(y)),
        RawEre::Star(x) => RawEre::star(r(x)),
        RawEre::And(x, y) => RawEre::and(r(x), r(y)),
        RawEre::Not(x) => RawEre::not(r(x)),
    }
}

pub fn build(b: &mut Builder<BitsetAlgebra>, raw: &RawEre<u128>) -> Ere<BitSet> {
    let raw = resolve(b.algebra(), raw);
    b.build(&raw)
}

pub fn text(w: &[char]) -> String {
    w.iter().collect()
}
