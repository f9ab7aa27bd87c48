//! Workloads shared by the benchmarks.

use erecheck::generate::{random_raw, GenConfig};
use erecheck::{BitSet, BitsetAlgebra, BooleanAlgebra, RawEre};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(A1·.*|B1·.*)&…&(An·.*|Bn·.*)` over `2^n` symbols, where `Ai` and `Bi`
/// split the alphabet on bit `i` of the symbol index. Its next literals are
/// the `2^n` singletons.
pub fn splitting_family(n: u32) -> (BitsetAlgebra, RawEre<BitSet>) {
    assert!(n <= 7, "at most 128 symbols");
    let k = 1u32 << n;
    let alg = BitsetAlgebra::new((0..k).map(|i| char::from_u32(0x100 + i).unwrap())).unwrap();
    let any = RawEre::star(RawEre::Literal(alg.top()));
    let term = |i: u32| {
        let bit: u128 = (0..k).filter(|j| j >> i & 1 == 1).fold(0, |m, j| m | 1 << j);
        let half = |bits| RawEre::concat(RawEre::Literal(alg.from_bits(bits)), any.clone());
        RawEre::union(half(!bit), half(bit))
    };
    let r = (1..n).fold(term(0), |r, i| RawEre::and(r, term(i)));
    (alg, r)
}

pub type Pair = (RawEre<BitSet>, RawEre<BitSet>);

/// Reproducible random pairs over `{a, b}`.
pub fn random_pairs(count: usize, max_size: u64, seed: u64) -> (BitsetAlgebra, Vec<Pair>) {
    let alg = BitsetAlgebra::new("ab".chars()).unwrap();
    let atoms: Vec<BitSet> = (1..4).map(|b| alg.from_bits(b)).collect();
    let cfg = GenConfig { max_size, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|_| (random_raw(&mut rng, &atoms, &cfg), random_raw(&mut rng, &atoms, &cfg)))
        .collect();
    (alg, pairs)
}

/// Equivalences over `{a, b}`, as `(lhs, rhs)` in concrete syntax.
pub const EQUIVALENCES: &[(&str, &str)] = &[
    ("(a|b)*", "(a*b*)*"),
    ("(ab)*a", "a(ba)*"),
    ("!(!a&!b)", "a|b"),
    ("!(.*ab.*)", "b*a*"),
    ("a*&!((aa)*)", "a(aa)*"),
];
