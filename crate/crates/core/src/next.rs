//! Next-literal partitions.
//!
//! `next(r)` is a finite set of mutually disjoint, non-empty literals such
//! that all symbols of one literal have the same derivative on `r`, and every
//! symbol that can start a word of `r` lies in some literal. The empty set is
//! never kept as a member.

use std::sync::Arc;

use crate::alphabet::BooleanAlgebra;
use crate::syntax::{Builder, Ere, EreKind};

/// How `next` combines the literals of the two operands of an intersection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum IntersectionLiterals {
    /// The common refinement of both sides, as for union. Positive and
    /// negative derivatives by any resulting literal are exact.
    #[default]
    Join,
    /// Only the pairwise intersections. Smaller, and every literal still has
    /// a single symbol derivative, but a literal may straddle the literals of
    /// an operand, in which case `Δ` and `∇` by it are not exact: for
    /// `!(c&a)` the only literal is `.`, yet `∇_.` gives `!()` while every
    /// symbol derivative is `.*`.
    Meet,
}

/// A finite collection of pairwise disjoint, non-empty symbol sets, ordered by
/// their least symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiteralPartition<S> {
    literals: Vec<S>,
}

impl<S> LiteralPartition<S> {
    pub fn empty() -> Self {
        LiteralPartition { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[S] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.literals.iter()
    }
}

impl<S: Clone + Ord> LiteralPartition<S> {
    /// Builds a partition from disjoint sets, dropping empty ones and
    /// duplicates. Disjointness is the caller's obligation.
    pub fn from_disjoint<A>(alg: &A, sets: impl IntoIterator<Item = S>) -> Self
    where
        A: BooleanAlgebra<Set = S>,
    {
        let mut keyed: Vec<(A::Symbol, S)> =
            sets.into_iter().filter_map(|s| alg.pick_witness(&s).map(|w| (w, s))).collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        keyed.dedup_by(|x, y| x.1 == y.1);
        debug_assert!(keyed.windows(2).all(|w| w[0].0 != w[1].0), "partition members overlap");
        LiteralPartition { literals: keyed.into_iter().map(|(_, s)| s).collect() }
    }

    /// The union of all members.
    pub fn cover<A>(&self, alg: &A) -> S
    where
        A: BooleanAlgebra<Set = S>,
    {
        alg.union_all(&self.literals)
    }
}

impl<'a, S> IntoIterator for &'a LiteralPartition<S> {
    type Item = &'a S;
    type IntoIter = std::slice::Iter<'a, S>;

    fn into_iter(self) -> Self::IntoIter {
        self.literals.iter()
    }
}

/// Pairwise intersections of `l1` and `l2`.
fn crossing<A: BooleanAlgebra>(
    alg: &A,
    l1: &LiteralPartition<A::Set>,
    l2: &LiteralPartition<A::Set>,
) -> Vec<A::Set> {
    let mut out = Vec::with_capacity(l1.len() * l2.len());
    for a1 in l1 {
        for a2 in l2 {
            out.push(alg.intersect(a1, a2));
        }
    }
    out
}

/// Members of `l` restricted to the complement of `cover`.
fn outside<A: BooleanAlgebra>(alg: &A, l: &LiteralPartition<A::Set>, cover: &A::Set) -> Vec<A::Set> {
    let rest = alg.complement(cover);
    l.iter().map(|a| alg.intersect(a, &rest)).collect()
}

/// The common refinement of two partitions, covering both.
pub fn join<A: BooleanAlgebra>(
    alg: &A,
    l1: &LiteralPartition<A::Set>,
    l2: &LiteralPartition<A::Set>,
) -> LiteralPartition<A::Set> {
    let mut sets = crossing(alg, l1, l2);
    sets.extend(outside(alg, l1, &l2.cover(alg)));
    sets.extend(outside(alg, l2, &l1.cover(alg)));
    LiteralPartition::from_disjoint(alg, sets)
}

/// The refinement of `l1` by `l2`, covering only `l1`.
pub fn left_join<A: BooleanAlgebra>(
    alg: &A,
    l1: &LiteralPartition<A::Set>,
    l2: &LiteralPartition<A::Set>,
) -> LiteralPartition<A::Set> {
    let mut sets = crossing(alg, l1, l2);
    sets.extend(outside(alg, l1, &l2.cover(alg)));
    LiteralPartition::from_disjoint(alg, sets)
}

/// Pairwise intersections, covering the intersection of both covers.
pub fn meet<A: BooleanAlgebra>(
    alg: &A,
    l1: &LiteralPartition<A::Set>,
    l2: &LiteralPartition<A::Set>,
) -> LiteralPartition<A::Set> {
    LiteralPartition::from_disjoint(alg, crossing(alg, l1, l2))
}

impl<A: BooleanAlgebra> Builder<A> {
    /// The next literals of `r`, memoized per expression.
    pub fn next(&mut self, r: &Ere<A::Set>) -> Arc<LiteralPartition<A::Set>> {
        if let Some(p) = self.next_cache.get(&r.id()) {
            return Arc::clone(p);
        }
        let alg = self.algebra().clone();
        let p = match r.kind() {
            EreKind::Epsilon => LiteralPartition::empty(),
            EreKind::Literal(a) => LiteralPartition::from_disjoint(&alg, [a.clone()]),
            EreKind::Union(x, y) => {
                let (px, py) = (self.next(x), self.next(y));
                join(&alg, &px, &py)
            }
            EreKind::Concat(x, y) => {
                let px = self.next(x);
                if x.nullable() {
                    let py = self.next(y);
                    join(&alg, &px, &py)
                } else {
                    (*px).clone()
                }
            }
            EreKind::Star(x) => (*self.next(x)).clone(),
            EreKind::And(x, y) => {
                let (px, py) = (self.next(x), self.next(y));
                match self.intersection_literals() {
                    IntersectionLiterals::Join => join(&alg, &px, &py),
                    IntersectionLiterals::Meet => meet(&alg, &px, &py),
                }
            }
            EreKind::Not(x) => {
                let px = self.next(x);
                let rest = alg.complement(&px.cover(&alg));
                LiteralPartition::from_disjoint(&alg, px.iter().cloned().chain([rest]))
            }
        };
        let p = Arc::new(p);
        self.next_cache.insert(r.id(), Arc::clone(&p));
        p
    }

    /// The next literals of the inequality `r ⊑ s`: `next(r)` refined by `next(s)`.
    pub fn next_ineq(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> LiteralPartition<A::Set> {
        let (pr, ps) = (self.next(r), self.next(s));
        left_join(self.algebra(), &pr, &ps)
    }
}
