//! Derivatives by symbols, words and literals.
//!
//! The positive derivative `Δ_A` over-approximates the union of the symbol
//! derivatives for `a ∈ A`, the negative derivative `∇_A` under-approximates
//! their intersection. Both are exact, and agree with `∂_a`, whenever `A` is
//! contained in a member of `next(r)`.

use thiserror::Error;

use crate::alphabet::BooleanAlgebra;
use crate::syntax::{Builder, Ere, EreKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivError {
    #[error("cannot derive by the empty literal")]
    EmptyLiteral,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

impl<A: BooleanAlgebra> Builder<A> {
    /// `∂_a r`, the left quotient of `r` by the symbol `a`. Memoized.
    pub fn deriv_symbol(&mut self, a: &A::Symbol, r: &Ere<A::Set>) -> Ere<A::Set> {
        let key = (a.clone(), r.id());
        if let Some(d) = self.deriv_cache.get(&key) {
            return d.clone();
        }
        let d = match r.kind() {
            EreKind::Epsilon => self.empty(),
            EreKind::Literal(set) => {
                if self.algebra().contains(set, a) {
                    self.epsilon()
                } else {
                    self.empty()
                }
            }
            EreKind::Union(x, y) => {
                let (dx, dy) = (self.deriv_symbol(a, x), self.deriv_symbol(a, y));
                self.union(&dx, &dy)
            }
            EreKind::Concat(x, y) => {
                let dx = self.deriv_symbol(a, x);
                let head = self.concat(&dx, y);
                if x.nullable() {
                    let dy = self.deriv_symbol(a, y);
                    self.union(&head, &dy)
                } else {
                    head
                }
            }
            EreKind::Star(x) => {
                let dx = self.deriv_symbol(a, x);
                self.concat(&dx, r)
            }
            EreKind::And(x, y) => {
                let (dx, dy) = (self.deriv_symbol(a, x), self.deriv_symbol(a, y));
                self.and(&dx, &dy)
            }
            EreKind::Not(x) => {
                let dx = self.deriv_symbol(a, x);
                self.not(&dx)
            }
        };
        self.deriv_cache.insert(key, d.clone());
        d
    }

    /// `∂_u r`: derives by each symbol of `u` in turn.
    pub fn deriv_word(&mut self, u: &[A::Symbol], r: &Ere<A::Set>) -> Ere<A::Set> {
        u.iter().fold(r.clone(), |acc, a| self.deriv_symbol(a, &acc))
    }

    /// `Δ_A r`, the positive derivative.
    pub fn pos_deriv(&mut self, set: &A::Set, r: &Ere<A::Set>) -> Ere<A::Set> {
        self.polar_deriv(Polarity::Positive, set, r)
    }

    /// `∇_A r`, the negative derivative.
    pub fn neg_deriv(&mut self, set: &A::Set, r: &Ere<A::Set>) -> Ere<A::Set> {
        self.polar_deriv(Polarity::Negative, set, r)
    }

    fn polar_deriv(&mut self, pol: Polarity, set: &A::Set, r: &Ere<A::Set>) -> Ere<A::Set> {
        if self.algebra().is_empty(set) {
            return match pol {
                Polarity::Positive => self.empty(),
                Polarity::Negative => self.universal(),
            };
        }
        match r.kind() {
            EreKind::Epsilon => self.empty(),
            EreKind::Literal(b) => {
                let hit = match pol {
                    Polarity::Positive => !self.algebra().is_disjoint(set, b),
                    Polarity::Negative => self.algebra().is_subset(set, b),
                };
                if hit {
                    self.epsilon()
                } else {
                    self.empty()
                }
            }
            EreKind::Union(x, y) => {
                let (dx, dy) = (self.polar_deriv(pol, set, x), self.polar_deriv(pol, set, y));
                self.union(&dx, &dy)
            }
            EreKind::Concat(x, y) => {
                let dx = self.polar_deriv(pol, set, x);
                let head = self.concat(&dx, y);
                if x.nullable() {
                    let dy = self.polar_deriv(pol, set, y);
                    self.union(&head, &dy)
                } else {
                    head
                }
            }
            EreKind::Star(x) => {
                let dx = self.polar_deriv(pol, set, x);
                self.concat(&dx, r)
            }
            EreKind::And(x, y) => {
                let (dx, dy) = (self.polar_deriv(pol, set, x), self.polar_deriv(pol, set, y));
                self.and(&dx, &dy)
            }
            EreKind::Not(x) => {
                let dx = self.polar_deriv(pol.flip(), set, x);
                self.not(&dx)
            }
        }
    }

    /// `∂_A r` for a literal `A` on which all symbols derive alike: the
    /// derivative by the least symbol of `A`.
    ///
    /// `A` must lie inside one member of `next(r)` or outside all of them;
    /// debug builds verify this.
    pub fn deriv_literal(&mut self, set: &A::Set, r: &Ere<A::Set>) -> Result<Ere<A::Set>, DerivError> {
        let a = self.algebra().pick_witness(set).ok_or(DerivError::EmptyLiteral)?;
        #[cfg(debug_assertions)]
        {
            let next = self.next(r);
            let alg = self.algebra();
            debug_assert!(
                next.iter().any(|b| alg.is_subset(set, b)) || alg.is_disjoint(set, &next.cover(alg)),
                "literal {} straddles next literals of {}",
                alg.set_to_string(set),
                self.to_string(r)
            );
        }
        Ok(self.deriv_symbol(&a, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{BitSet, BitsetAlgebra};

    fn builder() -> Builder<BitsetAlgebra> {
        Builder::new(BitsetAlgebra::new("abc".chars()).unwrap())
    }

    fn set(b: &Builder<BitsetAlgebra>, s: &str) -> BitSet {
        b.algebra().set_of(s).unwrap()
    }

    #[test]
    fn symbol_derivatives() {
        let mut b = builder();
        let r = b.parse("ac").unwrap();
        let c = b.parse("c").unwrap();
        assert_eq!(b.deriv_symbol(&'a', &r), c);
        let r = b.parse("(ac)&(bc)").unwrap();
        assert_eq!(b.deriv_symbol(&'a', &r), b.empty());
        let r = b.parse("(ac)|(bc)").unwrap();
        assert_eq!(b.deriv_symbol(&'b', &r), c);
        let eps = b.epsilon();
        assert_eq!(b.deriv_symbol(&'a', &eps), b.empty());
    }

    #[test]
    fn literal_derivative_examples() {
        let mut b = builder();
        let ab = set(&b, "ab");
        let (c, e) = (b.parse("c").unwrap(), b.empty());
        let r = b.parse("(ac)&(bc)").unwrap();
        assert_eq!(b.pos_deriv(&ab, &r), c);
        let r = b.parse("(ac)|(bc)").unwrap();
        assert_eq!(b.neg_deriv(&ab, &r), e);
        let bot = b.algebra().bottom();
        assert_eq!(b.pos_deriv(&bot, &r), e);
        assert_eq!(b.neg_deriv(&bot, &r), b.universal());
        let lit = b.parse("[ab]").unwrap();
        assert_eq!(b.neg_deriv(&set(&b, "a"), &lit), b.epsilon());
        let a = set_lit(&mut b, "a");
        assert_eq!(b.neg_deriv(&ab, &a), e);
    }

    fn set_lit(b: &mut Builder<BitsetAlgebra>, s: &str) -> Ere<BitSet> {
        let s = set(b, s);
        b.literal(s)
    }

    #[test]
    fn derivative_by_literal() {
        let mut b = builder();
        let r = b.parse("[ab]*").unwrap();
        assert_eq!(b.deriv_literal(&set(&b, "ab"), &r).unwrap(), r);
        let r = b.parse("(a|b)|c").unwrap();
        assert_eq!(b.deriv_literal(&set(&b, "c"), &r).unwrap(), b.epsilon());
        let r = b.parse("a|b").unwrap();
        assert_eq!(b.deriv_literal(&set(&b, "a"), &r).unwrap(), b.epsilon());
        // outside every next literal: the derivative is empty
        assert_eq!(b.deriv_literal(&set(&b, "c"), &r).unwrap(), b.empty());
        let bot = b.algebra().bottom();
        assert_eq!(b.deriv_literal(&bot, &r), Err(DerivError::EmptyLiteral));
    }

    #[test]
    #[cfg(debug_assertions)]
    #[should_panic(expected = "straddles")]
    fn straddling_literal_is_caught_in_debug_builds() {
        let mut b = builder();
        let r = b.parse("a|bc").unwrap();
        let ab = set(&b, "ab");
        let _ = b.deriv_literal(&ab, &r);
    }

    #[test]
    fn word_derivatives() {
        let mut b = builder();
        let r = b.parse("ab").unwrap();
        assert_eq!(b.deriv_word(&[], &r), r);
        assert!(b.deriv_word(&['a', 'b'], &r).nullable());
        let r = b.parse("a|b").unwrap();
        assert!(!b.deriv_word(&['c'], &r).nullable());
    }

    #[test]
    fn single_symbol_literal_derivatives_coincide() {
        let mut b = builder();
        for src in ["(ab|c)*&!(a.*)", "!(a*b)|c&.", "(a|b)*abb", "!(!a&!b)c*"] {
            let r = b.parse(src).unwrap();
            for x in ['a', 'b', 'c'] {
                let s = b.algebra().singleton(&x);
                let d = b.deriv_symbol(&x, &r);
                assert_eq!(b.pos_deriv(&s, &r), d, "{src} by {x}");
                assert_eq!(b.neg_deriv(&s, &r), d, "{src} by {x}");
            }
        }
    }
}
