//! Proptest strategies shared by unit tests.

use proptest::prelude::*;

use crate::alphabet::{BitSet, BitsetAlgebra};
use crate::syntax::RawEre;

/// Random raw trees whose literals are drawn from `atoms` (strings of
/// alphabet characters; `""` is the empty literal).
pub fn arb_raw(atoms: &[&str], depth: u32) -> impl Strategy<Value = RawEre<String>> {
    let atoms: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
    let leaf = prop_oneof![
        1 => Just(RawEre::Epsilon),
        6 => prop::sample::select(atoms).prop_map(RawEre::Literal),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::union(r, s)),
            3 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::concat(r, s)),
            2 => inner.clone().prop_map(RawEre::star),
            2 => (inner.clone(), inner.clone()).prop_map(|(r, s)| RawEre::and(r, s)),
            2 => inner.prop_map(RawEre::not),
        ]
    })
}

/// Maps string literals to sets of `alg`.
pub fn resolve(alg: &BitsetAlgebra, raw: &RawEre<String>) -> RawEre<BitSet> {
    let r = |x: &RawEre<String>| resolve(alg, x);
    match raw {
        RawEre::Epsilon => RawEre::Epsilon,
        RawEre::Literal(s) => RawEre::Literal(alg.set_of(s).expect("atom outside alphabet")),
        RawEre::Union(x, y) => RawEre::union(r(x), r(y)),
        RawEre::Concat(x, y) => RawEre::concat(r(x), r(y)),
        RawEre::Star(x) => RawEre::star(r(x)),
        RawEre::And(x, y) => RawEre::and(r(x), r(y)),
        RawEre::Not(x) => RawEre::not(r(x)),
    }
}
