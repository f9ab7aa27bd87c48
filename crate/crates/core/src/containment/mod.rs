//! The containment decision procedure.
//!
//! A query `r ⊑ s` is decided by unfolding: at each pair the procedure tries,
//! in order,
//!
//! 1. *disprove*: `r` accepts the empty word and `s` does not;
//! 2. the fast-path axioms (identity, empty left side, `()` on the left with a
//!    nullable right side, and an empty right side against a non-empty left);
//! 3. *cycle*: the pair was assumed before;
//! 4. *unfold*: assume the pair, then check the derivatives by every next
//!    literal of the inequality.
//!
//! The derivation is explored depth first with an explicit stack and stops at
//! the first failing leaf; the literals on the path to that leaf spell the
//! counterexample.

mod trace;

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::alphabet::BooleanAlgebra;
use crate::derivative::DerivError;
use crate::syntax::{Builder, Ere, ExprId, ParseError};

pub use trace::{replay, ReplayError, Rule, TraceEvent, TraceRecord};

/// Default bound on rule applications per query.
pub const DEFAULT_FUEL: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Use the fast-path axioms.
    pub axioms: bool,
    /// Keep every visited pair as an assumption for the rest of the query,
    /// instead of only along the current branch.
    pub global_memo: bool,
    /// Maximum number of rule applications (and search steps) per query.
    pub fuel: u64,
    /// Record a trace event per rule application.
    pub trace: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { axioms: true, global_memo: true, fuel: DEFAULT_FUEL, trace: false }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Rule applications, i.e. nodes of the derivation.
    pub steps: u64,
    /// Distinct pairs that were unfolded.
    pub visited: u64,
    pub max_depth: usize,
    /// Derivative states explored while searching for words.
    pub search_states: u64,
}

impl Stats {
    fn absorb(&mut self, other: &Stats) {
        self.steps += other.steps;
        self.visited += other.visited;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.search_states += other.search_states;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(
        "fuel exhausted after {} rule applications ({} pairs visited, depth {})",
        stats.steps, stats.visited, stats.max_depth
    )]
    FuelExhausted { stats: Stats },
    #[error(transparent)]
    Deriv(#[from] DerivError),
}

/// Which inclusion an equivalence verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `lhs ⊑ rhs`
    Forward,
    /// `rhs ⊑ lhs`
    Backward,
}

/// The outcome of a containment or equivalence query.
#[derive(Debug, Clone)]
pub struct Verdict<A: BooleanAlgebra> {
    pub holds: bool,
    /// A word of the left side that the right side rejects; present exactly
    /// when the verdict fails.
    pub witness: Option<Vec<A::Symbol>>,
    pub stats: Stats,
    /// For equivalence: the direction that failed, or the last one checked.
    pub direction: Direction,
    pub trace: Vec<TraceEvent<A::Set>>,
}

type Pair = (ExprId, ExprId);

/// A search edge: the predecessor state and the symbol leading out of it.
type Step<A> = (Ere<<A as BooleanAlgebra>::Set>, <A as BooleanAlgebra>::Symbol);

struct Frame<S> {
    lhs: Ere<S>,
    rhs: Ere<S>,
    literals: Vec<S>,
    next: usize,
    depth: usize,
}

enum Visit<S, X> {
    Leaf(Option<Vec<X>>),
    Expand(Frame<S>),
}

/// A single-owner checking session: an expression builder plus options.
#[derive(Debug)]
pub struct Checker<A: BooleanAlgebra> {
    builder: Builder<A>,
    options: CheckOptions,
}

/// Per-query mutable state.
struct Query<S> {
    options: CheckOptions,
    assumed: HashSet<Pair>,
    unfolded: HashSet<Pair>,
    stats: Stats,
    trace: Vec<TraceEvent<S>>,
}

impl<S: Clone> Query<S> {
    fn new(options: CheckOptions) -> Self {
        Query {
            options,
            assumed: HashSet::new(),
            unfolded: HashSet::new(),
            stats: Stats::default(),
            trace: Vec::new(),
        }
    }

    fn spend(&mut self) -> Result<(), CheckError> {
        if self.stats.steps + self.stats.search_states >= self.options.fuel {
            return Err(CheckError::FuelExhausted { stats: self.stats });
        }
        Ok(())
    }

    fn record(&mut self, rule: Rule, lhs: &Ere<S>, rhs: &Ere<S>, literal: Option<&S>, depth: usize) {
        if self.options.trace {
            self.trace.push(TraceEvent {
                rule,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                literal: literal.cloned(),
                depth,
            });
        }
    }
}

impl<A: BooleanAlgebra> Checker<A> {
    pub fn new(alg: A, options: CheckOptions) -> Self {
        Checker { builder: Builder::new(alg), options }
    }

    pub fn with_builder(builder: Builder<A>, options: CheckOptions) -> Self {
        Checker { builder, options }
    }

    pub fn algebra(&self) -> &A {
        self.builder.algebra()
    }

    pub fn builder(&self) -> &Builder<A> {
        &self.builder
    }

    pub fn builder_mut(&mut self) -> &mut Builder<A> {
        &mut self.builder
    }

    pub fn into_builder(self) -> Builder<A> {
        self.builder
    }

    pub fn options(&self) -> CheckOptions {
        self.options
    }

    pub fn set_options(&mut self, options: CheckOptions) {
        self.options = options;
    }

    pub fn parse(&mut self, text: &str) -> Result<Ere<A::Set>, ParseError> {
        self.builder.parse(text)
    }

    /// Whether `u` is in the language of `r`.
    pub fn membership(&mut self, u: &[A::Symbol], r: &Ere<A::Set>) -> bool {
        self.builder.deriv_word(u, r).nullable()
    }

    /// A shortest word of `r`, or `None` if its language is empty.
    pub fn find_word(&mut self, r: &Ere<A::Set>) -> Result<Option<Vec<A::Symbol>>, CheckError> {
        let mut q = Query::new(self.options);
        let found = self.search(&mut q, r)?;
        Ok(found)
    }

    /// Decides `⟦r⟧ ⊆ ⟦s⟧`.
    pub fn check(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> Result<Verdict<A>, CheckError> {
        let mut q = Query::new(self.options);
        let witness = self.run(&mut q, r, s)?;
        Ok(Verdict {
            holds: witness.is_none(),
            witness,
            stats: q.stats,
            direction: Direction::Forward,
            trace: q.trace,
        })
    }

    /// Decides `⟦r⟧ = ⟦s⟧` as two containments, forward first.
    pub fn equivalent(&mut self, r: &Ere<A::Set>, s: &Ere<A::Set>) -> Result<Verdict<A>, CheckError> {
        let forward = self.check(r, s)?;
        if !forward.holds {
            return Ok(forward);
        }
        let mut backward = self.check(s, r)?;
        backward.direction = Direction::Backward;
        let mut stats = forward.stats;
        stats.absorb(&backward.stats);
        backward.stats = stats;
        let mut trace = forward.trace;
        trace.append(&mut backward.trace);
        backward.trace = trace;
        Ok(backward)
    }

    fn run(
        &mut self,
        q: &mut Query<A::Set>,
        r: &Ere<A::Set>,
        s: &Ere<A::Set>,
    ) -> Result<Option<Vec<A::Symbol>>, CheckError> {
        let mut stack: Vec<Frame<A::Set>> = Vec::new();
        match self.visit(q, r, s, None, 0)? {
            Visit::Leaf(w) => return Ok(w),
            Visit::Expand(f) => stack.push(f),
        }
        while let Some(top) = stack.last_mut() {
            if top.next == top.literals.len() {
                let done = stack.pop().expect("non-empty");
                if !q.options.global_memo {
                    q.assumed.remove(&(done.lhs.id(), done.rhs.id()));
                }
                continue;
            }
            let lit = top.literals[top.next].clone();
            top.next += 1;
            let (lhs, rhs, depth) = (top.lhs.clone(), top.rhs.clone(), top.depth);
            let dl = self.builder.deriv_literal(&lit, &lhs)?;
            let dr = self.builder.deriv_literal(&lit, &rhs)?;
            match self.visit(q, &dl, &dr, Some(&lit), depth + 1)? {
                Visit::Leaf(None) => {}
                Visit::Leaf(Some(suffix)) => {
                    let alg = self.builder.algebra();
                    let mut word: Vec<A::Symbol> = stack
                        .iter()
                        .map(|f| alg.pick_witness(&f.literals[f.next - 1]).expect("non-empty literal"))
                        .collect();
                    word.extend(suffix);
                    return Ok(Some(word));
                }
                Visit::Expand(f) => stack.push(f),
            }
        }
        Ok(None)
    }

    /// Applies the first matching rule to one pair.
    fn visit(
        &mut self,
        q: &mut Query<A::Set>,
        r: &Ere<A::Set>,
        s: &Ere<A::Set>,
        via: Option<&A::Set>,
        depth: usize,
    ) -> Result<Visit<A::Set, A::Symbol>, CheckError> {
        q.spend()?;
        q.stats.steps += 1;
        q.stats.max_depth = q.stats.max_depth.max(depth);

        if r.nullable() && !s.nullable() {
            q.record(Rule::Disprove, r, s, via, depth);
            return Ok(Visit::Leaf(Some(Vec::new())));
        }
        if q.options.axioms {
            let b = &self.builder;
            let proved = if r == s {
                Some(Rule::ProveIdentity)
            } else if b.is_empty_expr(r) {
                Some(Rule::ProveEmpty)
            } else if r.is_epsilon() && s.nullable() {
                Some(Rule::ProveNullable)
            } else {
                None
            };
            if let Some(rule) = proved {
                q.record(rule, r, s, via, depth);
                return Ok(Visit::Leaf(None));
            }
            if self.builder.is_empty_expr(s) && !self.builder.next(r).is_empty() {
                // A non-empty next set does not make the language non-empty
                // once & and ! are involved, so the axiom only fires on an
                // actual word.
                if let Some(w) = self.search(q, r)? {
                    q.record(Rule::DisproveEmpty, r, s, via, depth);
                    return Ok(Visit::Leaf(Some(w)));
                }
            }
        }
        let pair = (r.id(), s.id());
        if q.assumed.contains(&pair) {
            q.record(Rule::Cycle, r, s, via, depth);
            return Ok(Visit::Leaf(None));
        }
        q.record(Rule::Unfold, r, s, via, depth);
        q.assumed.insert(pair);
        if q.unfolded.insert(pair) {
            q.stats.visited += 1;
        }
        let literals = self.builder.next_ineq(r, s).literals().to_vec();
        Ok(Visit::Expand(Frame { lhs: r.clone(), rhs: s.clone(), literals, next: 0, depth }))
    }

    /// Breadth-first search over derivatives for a shortest word of `r`.
    fn search(
        &mut self,
        q: &mut Query<A::Set>,
        r: &Ere<A::Set>,
    ) -> Result<Option<Vec<A::Symbol>>, CheckError> {
        // parent links: state -> (predecessor, symbol)
        let mut parent: HashMap<ExprId, Option<Step<A>>> = HashMap::new();
        let mut queue = VecDeque::new();
        parent.insert(r.id(), None);
        queue.push_back(r.clone());
        while let Some(cur) = queue.pop_front() {
            q.spend()?;
            q.stats.search_states += 1;
            if cur.nullable() {
                let mut word = Vec::new();
                let mut at = cur;
                while let Some(Some((prev, x))) = parent.get(&at.id()) {
                    word.push(x.clone());
                    at = prev.clone();
                }
                word.reverse();
                return Ok(Some(word));
            }
            let next = self.builder.next(&cur);
            for lit in next.iter() {
                let d = self.builder.deriv_literal(lit, &cur)?;
                if self.builder.is_empty_expr(&d) || parent.contains_key(&d.id()) {
                    continue;
                }
                let x = self.builder.algebra().pick_witness(lit).expect("non-empty literal");
                parent.insert(d.id(), Some((cur.clone(), x)));
                queue.push_back(d);
            }
        }
        Ok(None)
    }
}
