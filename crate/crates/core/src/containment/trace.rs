use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::alphabet::BooleanAlgebra;
use crate::syntax::{Builder, Ere};

/// The rule applied at one node of a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Disprove,
    Cycle,
    Unfold,
    ProveIdentity,
    ProveEmpty,
    ProveNullable,
    DisproveEmpty,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Disprove => "disprove",
            Rule::Cycle => "cycle",
            Rule::Unfold => "unfold",
            Rule::ProveIdentity => "prove-identity",
            Rule::ProveEmpty => "prove-empty",
            Rule::ProveNullable => "prove-nullable",
            Rule::DisproveEmpty => "disprove-empty",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        [
            Rule::Disprove,
            Rule::Cycle,
            Rule::Unfold,
            Rule::ProveIdentity,
            Rule::ProveEmpty,
            Rule::ProveNullable,
            Rule::DisproveEmpty,
        ]
        .into_iter()
        .find(|r| r.name() == name)
    }

    /// The verdict a leaf rule establishes; `None` for unfold.
    pub fn leaf_value(self) -> Option<bool> {
        match self {
            Rule::Unfold => None,
            Rule::Disprove | Rule::DisproveEmpty => Some(false),
            Rule::Cycle | Rule::ProveIdentity | Rule::ProveEmpty | Rule::ProveNullable => Some(true),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One node of a derivation, in pre-order.
#[derive(Debug, Clone)]
pub struct TraceEvent<S> {
    pub rule: Rule,
    pub lhs: Ere<S>,
    pub rhs: Ere<S>,
    /// The literal whose derivative led to this node; `None` at the root.
    pub literal: Option<S>,
    pub depth: usize,
}

/// A trace event rendered in concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub rule: Rule,
    pub lhs: String,
    pub rhs: String,
    pub literal: Option<String>,
    pub depth: usize,
}

impl<S> TraceEvent<S> {
    pub fn render<A: BooleanAlgebra<Set = S>>(&self, builder: &Builder<A>) -> TraceRecord {
        TraceRecord {
            rule: self.rule,
            lhs: builder.to_string(&self.lhs),
            rhs: builder.to_string(&self.rhs),
            literal: self.literal.as_ref().map(|s| builder.algebra().set_to_string(s)),
            depth: self.depth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("trace is empty")]
    Empty,
    #[error("event {index} at depth {depth} does not follow an unfold at depth {expected}")]
    BadDepth { index: usize, depth: usize, expected: usize },
}

/// Re-evaluates a derivation from its rule sequence alone: a leaf rule gives
/// its own value, an unfold the conjunction of its children. A trace with
/// several roots (as produced for an equivalence) evaluates to the
/// conjunction of its roots.
pub fn replay<I>(events: I) -> Result<bool, ReplayError>
where
    I: IntoIterator<Item = (Rule, usize)>,
{
    // open unfold nodes: (depth, value so far)
    let mut open: Vec<(usize, bool)> = Vec::new();
    let mut root: Option<bool> = None;
    let fold = |open: &mut Vec<(usize, bool)>, root: &mut Option<bool>, v: bool| match open.last_mut() {
        Some(parent) => parent.1 &= v,
        None => *root = Some(root.unwrap_or(true) && v),
    };
    for (index, (rule, depth)) in events.into_iter().enumerate() {
        while open.last().is_some_and(|&(d, _)| d >= depth) {
            let (_, v) = open.pop().unwrap();
            fold(&mut open, &mut root, v);
        }
        let expected = open.last().map_or(0, |&(d, _)| d + 1);
        if depth != expected {
            return Err(ReplayError::BadDepth { index, depth, expected });
        }
        match rule.leaf_value() {
            Some(v) => fold(&mut open, &mut root, v),
            None => open.push((depth, true)),
        }
    }
    while let Some((_, v)) = open.pop() {
        fold(&mut open, &mut root, v);
    }
    root.ok_or(ReplayError::Empty)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for r in [
            Rule::Disprove,
            Rule::Cycle,
            Rule::Unfold,
            Rule::ProveIdentity,
            Rule::ProveEmpty,
            Rule::ProveNullable,
            Rule::DisproveEmpty,
        ] {
            assert_eq!(Rule::from_name(r.name()), Some(r));
            assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.name()));
        }
    }

    #[test]
    fn replay_trees() {
        use Rule::*;
        assert_eq!(replay([(Cycle, 0)]), Ok(true));
        assert_eq!(replay([(Disprove, 0)]), Ok(false));
        assert_eq!(replay([(Unfold, 0)]), Ok(true));
        assert_eq!(replay([(Unfold, 0), (Unfold, 1), (Cycle, 2), (ProveEmpty, 1)]), Ok(true));
        assert_eq!(replay([(Unfold, 0), (Unfold, 1), (Cycle, 2), (Disprove, 1)]), Ok(false));
        assert_eq!(replay([(Unfold, 0), (Unfold, 1), (Disprove, 2)]), Ok(false));
        assert_eq!(replay(Vec::new()), Err(ReplayError::Empty));
        assert!(matches!(replay([(Unfold, 0), (Cycle, 2)]), Err(ReplayError::BadDepth { .. })));
        assert_eq!(replay([(Cycle, 0), (Cycle, 0)]), Ok(true));
        assert_eq!(replay([(Unfold, 0), (Cycle, 1), (Unfold, 0), (Disprove, 1)]), Ok(false));
        assert!(replay([(Cycle, 1)]).is_err());
    }
}
