//! Terms and formulas of arithmetic with a box operator.
//!
//! The canonical text form is produced by `Display` and read back by
//! [`parse_formula`]; the two are mutually inverse on canonical text.

mod parse;
mod print;
mod vars;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

pub use parse::{parse_formula, parse_term, parse_theory, ParseError};
pub use vars::{free_vars, is_free_for, substitute, substitute_term, term_vars, FreshVars};

/// Natural numbers. Codes of fixed points can get large, so no fixed width.
pub type Nat = BigUint;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(String);

impl Var {
    /// Panics unless `name` matches `[a-z][a-z0-9_]*`; use the parser for
    /// untrusted input.
    pub fn new(name: &str) -> Var {
        assert!(is_identifier(name), "bad variable name {name:?}");
        Var(String::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `Some(k)` for the reserved fresh-variable shape `v<k>`.
    pub fn fresh_index(&self) -> Option<usize> {
        let digits = self.0.strip_prefix('v')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        digits.parse().ok()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b'a'..=b'z'))
        && bytes.all(|b| matches!(b, b'a'..=b'z' | b'0'..=b'9' | b'_'))
        && !parse::is_keyword(s)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    Var(Var),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// The numeral for `n`, kept as a literal rather than a successor chain.
    Num(Nat),
    /// The code of `formula` with each free variable replaced by the numeral
    /// of its mapped term's value.
    CodeSub(Box<CodeSub>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeSub {
    formula: Formula,
    subst: BTreeMap<Var, Term>,
}

impl CodeSub {
    /// The keys of `subst` must be exactly the free variables of `formula`.
    pub fn new(formula: Formula, subst: BTreeMap<Var, Term>) -> Option<CodeSub> {
        let fv = free_vars(&formula);
        if fv.len() != subst.len() || !fv.iter().all(|v| subst.contains_key(v)) {
            return None;
        }
        Some(CodeSub { formula, subst })
    }

    /// The dotted code of `formula`: every free variable maps to itself.
    pub fn dotted(formula: Formula) -> CodeSub {
        let subst = free_vars(&formula)
            .into_iter()
            .map(|v| (v.clone(), Term::Var(v)))
            .collect();
        CodeSub { formula, subst }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn subst(&self) -> &BTreeMap<Var, Term> {
        &self.subst
    }

    pub(crate) fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> CodeSub {
        CodeSub {
            formula: self.formula.clone(),
            subst: self.subst.iter().map(|(k, t)| (k.clone(), f(t))).collect(),
        }
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn num(n: impl Into<Nat>) -> Term {
        Term::Num(n.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn is_closed(&self) -> bool {
        term_vars(self).is_empty()
    }
}

/// The numeral `#n`.
pub fn numeral(n: impl Into<Nat>) -> Term {
    Term::Num(n.into())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Logic {
    PaBox,
    K,
    K4,
    KT,
    S4,
    S41,
    Triv,
    GL,
    Ver,
}

impl Logic {
    pub const ALL: [Logic; 9] = [
        Logic::PaBox,
        Logic::K,
        Logic::K4,
        Logic::KT,
        Logic::S4,
        Logic::S41,
        Logic::Triv,
        Logic::GL,
        Logic::Ver,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Logic::PaBox => "paB",
            Logic::K => "k",
            Logic::K4 => "k4",
            Logic::KT => "kt",
            Logic::S4 => "s4",
            Logic::S41 => "s41",
            Logic::Triv => "triv",
            Logic::GL => "gl",
            Logic::Ver => "ver",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Logic> {
        Logic::ALL.into_iter().find(|l| l.tag() == tag)
    }
}

/// A base logic plus extra axiom sentences. Text form: `k4{box bot}{0=0}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TheoryId {
    pub base: Logic,
    pub extra: Vec<Formula>,
}

impl TheoryId {
    pub fn new(base: Logic) -> TheoryId {
        TheoryId { base, extra: Vec::new() }
    }

    /// Fails if some extra axiom has free variables.
    pub fn with_extra(base: Logic, extra: Vec<Formula>) -> Option<TheoryId> {
        if extra.iter().all(Formula::is_sentence) {
            Some(TheoryId { base, extra })
        } else {
            None
        }
    }
}

impl From<Logic> for TheoryId {
    fn from(base: Logic) -> TheoryId {
        TheoryId::new(base)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Eq(Term, Term),
    Le(Term, Term),
    /// `t1 < t2`, read as `S(t1) <= t2`.
    Lt(Term, Term),
    /// `Prf_T(x, y)`: `y` codes a `T`-proof of the formula coded by `x`.
    Prf(TheoryId, Term, Term),
    /// `x` belongs to the `y`-th enumerated set.
    InW(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    /// `forall v < bound body`; `v` does not occur in `bound`.
    BForall(Var, Term, Box<Formula>),
    BExists(Var, Term, Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// Panics if `v` occurs in `bound`.
    pub fn bforall(v: Var, bound: Term, body: Formula) -> Formula {
        assert!(!term_vars(&bound).contains(&v), "bound variable {v} occurs in its bound");
        Formula::BForall(v, bound, Box::new(body))
    }

    /// Panics if `v` occurs in `bound`.
    pub fn bexists(v: Var, bound: Term, body: Formula) -> Formula {
        assert!(!term_vars(&bound).contains(&v), "bound variable {v} occurs in its bound");
        Formula::BExists(v, bound, Box::new(body))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    /// `0=0`, the canonical true sentence.
    pub fn top() -> Formula {
        Formula::Eq(Term::Zero, Term::Zero)
    }

    /// Left-nested conjunction; the empty conjunction is `~bot`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::not(Formula::Bot),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-nested disjunction; the empty disjunction is `bot`.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    pub fn is_sentence(&self) -> bool {
        free_vars(self).is_empty()
    }

    pub fn has_box(&self) -> bool {
        match self {
            Formula::Box(_) => true,
            Formula::Bot
            | Formula::Eq(..)
            | Formula::Le(..)
            | Formula::Lt(..)
            | Formula::Prf(..)
            | Formula::InW(..) => false,
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::BForall(_, _, a)
            | Formula::BExists(_, _, a) => a.has_box(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.has_box() || b.has_box()
            }
        }
    }

    /// Nesting depth of boxes.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Box(a) => 1 + a.modal_depth(),
            Formula::Bot
            | Formula::Eq(..)
            | Formula::Le(..)
            | Formula::Lt(..)
            | Formula::Prf(..)
            | Formula::InW(..) => 0,
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::BForall(_, _, a)
            | Formula::BExists(_, _, a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    /// Number of AST nodes, terms included.
    pub fn size(&self) -> usize {
        fn tsize(t: &Term) -> usize {
            match t {
                Term::Zero | Term::Var(_) | Term::Num(_) | Term::CodeSub(_) => 1,
                Term::Succ(a) => 1 + tsize(a),
                Term::Add(a, b) | Term::Mul(a, b) => 1 + tsize(a) + tsize(b),
            }
        }
        match self {
            Formula::Bot => 1,
            Formula::Eq(a, b) | Formula::Le(a, b) | Formula::Lt(a, b) | Formula::InW(a, b) => {
                1 + tsize(a) + tsize(b)
            }
            Formula::Prf(_, a, b) => 1 + tsize(a) + tsize(b),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Box(a) => {
                1 + a.size()
            }
            Formula::BForall(_, t, a) | Formula::BExists(_, t, a) => 1 + tsize(t) + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for CodeSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_index_shape() {
        assert_eq!(Var::new("v0").fresh_index(), Some(0));
        assert_eq!(Var::new("v12").fresh_index(), Some(12));
        assert_eq!(Var::new("v").fresh_index(), None);
        assert_eq!(Var::new("v01").fresh_index(), None);
        assert_eq!(Var::new("vx").fresh_index(), None);
    }

    #[test]
    fn keywords_are_not_identifiers() {
        assert!(!is_identifier("box"));
        assert!(!is_identifier("bot"));
        assert!(is_identifier("boxes"));
        assert!(!is_identifier("Abc"));
    }

    #[test]
    fn conj_and_disj_edge_cases() {
        assert_eq!(Formula::disj([]), Formula::Bot);
        assert_eq!(Formula::conj([]), Formula::not(Formula::Bot));
        let a = Formula::top();
        assert_eq!(Formula::conj([a.clone()]), a);
    }

    #[test]
    fn codesub_requires_exact_cover() {
        let f = Formula::eq(Term::var("x"), Term::Zero);
        assert!(CodeSub::new(f.clone(), BTreeMap::new()).is_none());
        let mut m = BTreeMap::new();
        m.insert(Var::new("x"), Term::var("z"));
        assert!(CodeSub::new(f, m).is_some());
    }
}
