//! Extended regular expressions: the hash-consed normalized form [`Ere`], the
//! plain tree [`RawEre`] produced by the parser, and the [`Builder`] that
//! interns and normalizes.
//!
//! Every `Ere` is built through the builder's smart constructors and is
//! normalized on construction:
//!
//! - union is associative, commutative and idempotent with `[]` as identity;
//!   its operands form a right-leaning spine sorted by [`ExprId`], and all
//!   literal operands are merged into a single literal;
//! - concatenation is right-leaning, `()` is its unit and `[]` annihilates;
//! - `r**` is `r*`, `()*` and `[]*` are `()`;
//! - intersection is associative, commutative and idempotent, and `[]`
//!   annihilates;
//! - `!!r` is `r`.
//!
//! Structurally equal normalized trees share one node and one [`ExprId`], so
//! equality, hashing and ordering on `Ere` are O(1).

mod parse;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::alphabet::BooleanAlgebra;
use crate::next::{IntersectionLiterals, LiteralPartition};

pub use parse::{parse_raw, ParseError, ParseErrorKind};

/// Interning key of a normalized expression, unique within one [`Builder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExprId(u32);

impl ExprId {
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone)]
pub enum EreKind<S> {
    Epsilon,
    Literal(S),
    Union(Ere<S>, Ere<S>),
    Concat(Ere<S>, Ere<S>),
    Star(Ere<S>),
    And(Ere<S>, Ere<S>),
    Not(Ere<S>),
}

struct Node<S> {
    id: ExprId,
    nullable: bool,
    kind: EreKind<S>,
}

/// A normalized, interned extended regular expression.
pub struct Ere<S>(Arc<Node<S>>);

impl<S> Clone for Ere<S> {
    fn clone(&self) -> Self {
        Ere(Arc::clone(&self.0))
    }
}

impl<S> PartialEq for Ere<S> {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl<S> Eq for Ere<S> {}

impl<S> Hash for Ere<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl<S> PartialOrd for Ere<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S> Ord for Ere<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.id.cmp(&other.0.id)
    }
}

impl<S: fmt::Debug> fmt::Debug for Ere<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:{:?}", self.0.id.0, self.0.kind)
    }
}

impl<S> Ere<S> {
    pub fn id(&self) -> ExprId {
        self.0.id
    }

    pub fn kind(&self) -> &EreKind<S> {
        &self.0.kind
    }

    /// Whether the language contains the empty word.
    pub fn nullable(&self) -> bool {
        self.0.nullable
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self.0.kind, EreKind::Epsilon)
    }

    pub fn as_literal(&self) -> Option<&S> {
        match &self.0.kind {
            EreKind::Literal(s) => Some(s),
            _ => None,
        }
    }

    /// Number of constructors and literals in the tree.
    pub fn size(&self) -> u64 {
        match &self.0.kind {
            EreKind::Epsilon | EreKind::Literal(_) => 1,
            EreKind::Star(r) | EreKind::Not(r) => r.size() + 1,
            EreKind::Union(r, s) | EreKind::Concat(r, s) | EreKind::And(r, s) => r.size() + s.size() + 1,
        }
    }

    /// Number of literal leaves in the tree.
    pub fn width(&self) -> u64 {
        match &self.0.kind {
            EreKind::Epsilon => 0,
            EreKind::Literal(_) => 1,
            EreKind::Star(r) | EreKind::Not(r) => r.width(),
            EreKind::Union(r, s) | EreKind::Concat(r, s) | EreKind::And(r, s) => r.width() + s.width(),
        }
    }
}

impl<S: Clone> Ere<S> {
    pub fn to_raw(&self) -> RawEre<S> {
        let b = |r: &Ere<S>| Box::new(r.to_raw());
        match &self.0.kind {
            EreKind::Epsilon => RawEre::Epsilon,
            EreKind::Literal(s) => RawEre::Literal(s.clone()),
            EreKind::Union(r, s) => RawEre::Union(b(r), b(s)),
            EreKind::Concat(r, s) => RawEre::Concat(b(r), b(s)),
            EreKind::Star(r) => RawEre::Star(b(r)),
            EreKind::And(r, s) => RawEre::And(b(r), b(s)),
            EreKind::Not(r) => RawEre::Not(b(r)),
        }
    }
}

/// An expression tree exactly as written, before normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RawEre<S> {
    Epsilon,
    Literal(S),
    Union(Box<RawEre<S>>, Box<RawEre<S>>),
    Concat(Box<RawEre<S>>, Box<RawEre<S>>),
    Star(Box<RawEre<S>>),
    And(Box<RawEre<S>>, Box<RawEre<S>>),
    Not(Box<RawEre<S>>),
}

impl<S> RawEre<S> {
    pub fn union(r: Self, s: Self) -> Self {
        RawEre::Union(Box::new(r), Box::new(s))
    }

    pub fn concat(r: Self, s: Self) -> Self {
        RawEre::Concat(Box::new(r), Box::new(s))
    }

    pub fn and(r: Self, s: Self) -> Self {
        RawEre::And(Box::new(r), Box::new(s))
    }

    pub fn star(r: Self) -> Self {
        RawEre::Star(Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(r: Self) -> Self {
        RawEre::Not(Box::new(r))
    }

    pub fn nullable(&self) -> bool {
        match self {
            RawEre::Epsilon | RawEre::Star(_) => true,
            RawEre::Literal(_) => false,
            RawEre::Union(r, s) => r.nullable() || s.nullable(),
            RawEre::Concat(r, s) | RawEre::And(r, s) => r.nullable() && s.nullable(),
            RawEre::Not(r) => !r.nullable(),
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            RawEre::Epsilon | RawEre::Literal(_) => 1,
            RawEre::Star(r) | RawEre::Not(r) => r.size() + 1,
            RawEre::Union(r, s) | RawEre::Concat(r, s) | RawEre::And(r, s) => r.size() + s.size() + 1,
        }
    }

    pub fn width(&self) -> u64 {
        match self {
            RawEre::Epsilon => 0,
            RawEre::Literal(_) => 1,
            RawEre::Star(r) | RawEre::Not(r) => r.width(),
            RawEre::Union(r, s) | RawEre::Concat(r, s) | RawEre::And(r, s) => r.width() + s.width(),
        }
    }

    /// Nesting depth of `!` operators.
    pub fn negation_depth(&self) -> u32 {
        match self {
            RawEre::Epsilon | RawEre::Literal(_) => 0,
            RawEre::Star(r) => r.negation_depth(),
            RawEre::Not(r) => r.negation_depth() + 1,
            RawEre::Union(r, s) | RawEre::Concat(r, s) | RawEre::And(r, s) => {
                r.negation_depth().max(s.negation_depth())
            }
        }
    }

    pub fn has_extended_ops(&self) -> bool {
        match self {
            RawEre::Epsilon | RawEre::Literal(_) => false,
            RawEre::And(..) | RawEre::Not(_) => true,
            RawEre::Star(r) => r.has_extended_ops(),
            RawEre::Union(r, s) | RawEre::Concat(r, s) => r.has_extended_ops() || s.has_extended_ops(),
        }
    }
}

type SpineOp<S> = fn(Ere<S>, Ere<S>) -> EreKind<S>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key<S> {
    Epsilon,
    Literal(S),
    Union(ExprId, ExprId),
    Concat(ExprId, ExprId),
    Star(ExprId),
    And(ExprId, ExprId),
    Not(ExprId),
}

/// Interning table and smart constructors for one algebra.
///
/// A builder also owns the memo tables for derivatives and next literals, so
/// one builder corresponds to one single-owner checking session.
pub struct Builder<A: BooleanAlgebra> {
    alg: A,
    table: HashMap<Key<A::Set>, Ere<A::Set>>,
    empty: Ere<A::Set>,
    epsilon: Ere<A::Set>,
    universal: Ere<A::Set>,
    pub(crate) deriv_cache: HashMap<(A::Symbol, ExprId), Ere<A::Set>>,
    pub(crate) next_cache: HashMap<ExprId, Arc<LiteralPartition<A::Set>>>,
    intersection_literals: IntersectionLiterals,
}

impl<A: BooleanAlgebra> fmt::Debug for Builder<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Builder").field("algebra", &self.alg).field("interned", &self.table.len()).finish()
    }
}

impl<A: BooleanAlgebra> Builder<A> {
    pub fn new(alg: A) -> Self {
        let mut table = HashMap::new();
        let bottom = alg.bottom();
        let top = alg.top();
        let empty = Self::intern_in(&mut table, EreKind::Literal(bottom));
        let epsilon = Self::intern_in(&mut table, EreKind::Epsilon);
        let sigma = Self::intern_in(&mut table, EreKind::Literal(top));
        let universal = Self::intern_in(&mut table, EreKind::Star(sigma));
        Builder {
            alg,
            table,
            empty,
            epsilon,
            universal,
            deriv_cache: HashMap::new(),
            next_cache: HashMap::new(),
            intersection_literals: IntersectionLiterals::default(),
        }
    }

    pub fn intersection_literals(&self) -> IntersectionLiterals {
        self.intersection_literals
    }

    /// Selects how `next` treats intersections; clears the memoized literals.
    pub fn set_intersection_literals(&mut self, mode: IntersectionLiterals) {
        if mode != self.intersection_literals {
            self.intersection_literals = mode;
            self.next_cache.clear();
        }
    }

    pub fn algebra(&self) -> &A {
        &self.alg
    }

    /// Number of distinct normalized expressions interned so far.
    pub fn interned(&self) -> usize {
        self.table.len()
    }

    fn intern_in(table: &mut HashMap<Key<A::Set>, Ere<A::Set>>, kind: EreKind<A::Set>) -> Ere<A::Set> {
        let key = match &kind {
            EreKind::Epsilon => Key::Epsilon,
            EreKind::Literal(s) => Key::Literal(s.clone()),
            EreKind::Union(r, s) => Key::Union(r.id(), s.id()),
            EreKind::Concat(r, s) => Key::Concat(r.id(), s.id()),
            EreKind::Star(r) => Key::Star(r.id()),
            EreKind::And(r, s) => Key::And(r.id(), s.id()),
            EreKind::Not(r) => Key::Not(r.id()),
        };
        if let Some(e) = table.get(&key) {
            return e.clone();
        }
        let nullable = match &kind {
            EreKind::Epsilon | EreKind::Star(_) => true,
            EreKind::Literal(_) => false,
            EreKind::Union(r, s) => r.nullable() || s.nullable(),
            EreKind::Concat(r, s) | EreKind::And(r, s) => r.nullable() && s.nullable(),
            EreKind::Not(r) => !r.nullable(),
        };
        let id = ExprId(u32::try_from(table.len()).expect("interning table overflow"));
        let e = Ere(Arc::new(Node { id, nullable, kind }));
        table.insert(key, e.clone());
        e
    }

    fn intern(&mut self, kind: EreKind<A::Set>) -> Ere<A::Set> {
        Self::intern_in(&mut self.table, kind)
    }

    /// `[]`, the empty language.
    pub fn empty(&self) -> Ere<A::Set> {
        self.empty.clone()
    }

    /// `()`, the language containing only the empty word.
    pub fn epsilon(&self) -> Ere<A::Set> {
        self.epsilon.clone()
    }

    /// `.*`, all words.
    pub fn universal(&self) -> Ere<A::Set> {
        self.universal.clone()
    }

    pub fn is_empty_expr(&self, r: &Ere<A::Set>) -> bool {
        *r == self.empty
    }

    pub fn is_universal_expr(&self, r: &Ere<A::Set>) -> bool {
        *r == self.universal
    }

    pub fn literal(&mut self, set: A::Set) -> Ere<A::Set> {
        assert!(self.alg.owns(&set), "symbol set belongs to a different algebra instance");
        if self.alg.is_empty(&set) {
            return self.empty();
        }
        self.intern(EreKind::Literal(set))
    }

    pub fn symbol(&mut self, x: &A::Symbol) -> Ere<A::Set> {
        let set = self.alg.singleton(x);
        self.literal(set)
    }

    pub fn union(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> Ere<A::Set> {
        if r == s {
            return r.clone();
        }
        let mut items = Vec::new();
        let mut lit: Option<A::Set> = None;
        for side in [r, s] {
            let mut cur = side.clone();
            loop {
                let (head, rest) = match cur.kind() {
                    EreKind::Union(h, t) => (h.clone(), Some(t.clone())),
                    _ => (cur.clone(), None),
                };
                match head.kind() {
                    EreKind::Literal(set) => {
                        lit = Some(match lit {
                            None => set.clone(),
                            Some(acc) => self.alg.union(&acc, set),
                        });
                    }
                    _ => items.push(head),
                }
                match rest {
                    Some(t) => cur = t,
                    None => break,
                }
            }
        }
        if let Some(set) = lit {
            if !self.alg.is_empty(&set) {
                items.push(self.intern(EreKind::Literal(set)));
            }
        }
        items.sort_unstable();
        items.dedup();
        self.spine(items, EreKind::Union).unwrap_or_else(|| self.empty())
    }

    pub fn and(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> Ere<A::Set> {
        if r == s {
            return r.clone();
        }
        let mut items = Vec::new();
        for side in [r, s] {
            let mut cur = side.clone();
            loop {
                let (head, rest) = match cur.kind() {
                    EreKind::And(h, t) => (h.clone(), Some(t.clone())),
                    _ => (cur.clone(), None),
                };
                if self.is_empty_expr(&head) {
                    return self.empty();
                }
                items.push(head);
                match rest {
                    Some(t) => cur = t,
                    None => break,
                }
            }
        }
        items.sort_unstable();
        items.dedup();
        self.spine(items, EreKind::And).expect("intersection has operands")
    }

    /// Folds sorted operands into a right-leaning spine.
    fn spine(&mut self, items: Vec<Ere<A::Set>>, op: SpineOp<A::Set>) -> Option<Ere<A::Set>> {
        let mut it = items.into_iter().rev();
        let mut acc = it.next()?;
        for item in it {
            acc = self.intern(op(item, acc));
        }
        Some(acc)
    }

    pub fn concat(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> Ere<A::Set> {
        if self.is_empty_expr(r) || self.is_empty_expr(s) {
            return self.empty();
        }
        if r.is_epsilon() {
            return s.clone();
        }
        if s.is_epsilon() {
            return r.clone();
        }
        match r.kind() {
            EreKind::Concat(r1, r2) => {
                let (r1, r2) = (r1.clone(), r2.clone());
                let tail = self.concat(&r2, s);
                self.concat(&r1, &tail)
            }
            _ => self.intern(EreKind::Concat(r.clone(), s.clone())),
        }
    }

    pub fn star(&mut self, r: &Ere<A::Set>) -> Ere<A::Set> {
        match r.kind() {
            EreKind::Star(_) => r.clone(),
            EreKind::Epsilon => self.epsilon(),
            _ if self.is_empty_expr(r) => self.epsilon(),
            _ => self.intern(EreKind::Star(r.clone())),
        }
    }

    pub fn not(&mut self, r: &Ere<A::Set>) -> Ere<A::Set> {
        match r.kind() {
            EreKind::Not(inner) => inner.clone(),
            _ => self.intern(EreKind::Not(r.clone())),
        }
    }

    /// Normalizes a raw tree.
    pub fn build(&mut self, raw: &RawEre<A::Set>) -> Ere<A::Set> {
        match raw {
            RawEre::Epsilon => self.epsilon(),
            RawEre::Literal(s) => self.literal(s.clone()),
            RawEre::Union(r, s) => {
                let (r, s) = (self.build(r), self.build(s));
                self.union(&r, &s)
            }
            RawEre::Concat(r, s) => {
                let (r, s) = (self.build(r), self.build(s));
                self.concat(&r, &s)
            }
            RawEre::Star(r) => {
                let r = self.build(r);
                self.star(&r)
            }
            RawEre::And(r, s) => {
                let (r, s) = (self.build(r), self.build(s));
                self.and(&r, &s)
            }
            RawEre::Not(r) => {
                let r = self.build(r);
                self.not(&r)
            }
        }
    }

    /// Parses concrete syntax into a normalized expression.
    pub fn parse(&mut self, text: &str) -> Result<Ere<A::Set>, ParseError> {
        let raw = parse_raw(&self.alg, text)?;
        Ok(self.build(&raw))
    }

    /// Renders an expression in concrete syntax; the output parses back to
    /// the same normalized expression.
    pub fn display<'a>(&'a self, r: &'a Ere<A::Set>) -> EreDisplay<'a, A> {
        EreDisplay { alg: &self.alg, ere: r }
    }

    pub fn to_string(&self, r: &Ere<A::Set>) -> String {
        self.display(r).to_string()
    }
}

pub struct EreDisplay<'a, A: BooleanAlgebra> {
    alg: &'a A,
    ere: &'a Ere<A::Set>,
}

// Binding strength, loosest first.
const PREC_UNION: u8 = 0;
const PREC_AND: u8 = 1;
const PREC_CONCAT: u8 = 2;
const PREC_NOT: u8 = 3;
const PREC_ATOM: u8 = 5;

fn write_ere<A: BooleanAlgebra>(alg: &A, r: &Ere<A::Set>, min: u8, out: &mut String) {
    let prec = match r.kind() {
        EreKind::Union(..) => PREC_UNION,
        EreKind::And(..) => PREC_AND,
        EreKind::Concat(..) => PREC_CONCAT,
        EreKind::Not(_) => PREC_NOT,
        EreKind::Star(_) => 4,
        EreKind::Epsilon | EreKind::Literal(_) => PREC_ATOM,
    };
    let wrap = prec < min;
    if wrap {
        out.push('(');
    }
    match r.kind() {
        EreKind::Epsilon => out.push_str("()"),
        EreKind::Literal(s) => alg.write_set(s, out),
        EreKind::Union(a, b) => {
            write_ere(alg, a, PREC_AND, out);
            out.push('|');
            write_ere(alg, b, PREC_UNION, out);
        }
        EreKind::And(a, b) => {
            write_ere(alg, a, PREC_CONCAT, out);
            out.push('&');
            write_ere(alg, b, PREC_AND, out);
        }
        EreKind::Concat(a, b) => {
            write_ere(alg, a, PREC_NOT, out);
            write_ere(alg, b, PREC_CONCAT, out);
        }
        EreKind::Not(a) => {
            out.push('!');
            write_ere(alg, a, PREC_NOT, out);
        }
        EreKind::Star(a) => {
            write_ere(alg, a, PREC_ATOM, out);
            out.push('*');
        }
    }
    if wrap {
        out.push(')');
    }
}

impl<A: BooleanAlgebra> fmt::Display for EreDisplay<'_, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_ere(self.alg, self.ere, PREC_UNION, &mut s);
        f.write_str(&s)
    }
}
