//! Syntactic formula classes and the normal forms and transforms built on
//! them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use bitflags::bitflags;
use num_traits::ToPrimitive;

use crate::coding::Registry;
use crate::eval::{eval_sentence, eval_term, Env, Model};
use crate::syntax::{numeral, substitute, Formula, FreshVars, Term, Var};

bitflags! {
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    pub struct FormulaClass: u8 {
        /// No boxes.
        const LA = 1;
        const DELTA0 = 1 << 1;
        const SIGMA1 = 1 << 2;
        /// Of the form `box A`.
        const B = 1 << 3;
        const DELTA_B = 1 << 4;
        const SIGMA_B = 1 << 5;
    }
}

const NAMES: [(FormulaClass, &str); 6] = [
    (FormulaClass::LA, "LA"),
    (FormulaClass::DELTA0, "Delta0"),
    (FormulaClass::SIGMA1, "Sigma1"),
    (FormulaClass::B, "B"),
    (FormulaClass::DELTA_B, "DeltaB"),
    (FormulaClass::SIGMA_B, "SigmaB"),
];

/// Comma separated names, `none` for the empty class.
impl fmt::Display for FormulaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let mut first = true;
        for (flag, name) in NAMES {
            if self.contains(flag) {
                if !first {
                    f.write_str(",")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        Ok(())
    }
}

const ATOMIC: FormulaClass = FormulaClass::LA
    .union(FormulaClass::DELTA0)
    .union(FormulaClass::SIGMA1)
    .union(FormulaClass::DELTA_B)
    .union(FormulaClass::SIGMA_B);

pub fn classify(phi: &Formula) -> FormulaClass {
    use FormulaClass as C;
    match phi {
        Formula::Bot | Formula::Eq(..) | Formula::Le(..) | Formula::Lt(..) | Formula::Prf(..) => ATOMIC,
        Formula::InW(..) => C::LA | C::SIGMA1 | C::SIGMA_B,
        Formula::Not(a) => boolean(&[classify(a)]),
        Formula::Imp(a, b) | Formula::Iff(a, b) => boolean(&[classify(a), classify(b)]),
        Formula::And(a, b) | Formula::Or(a, b) => (classify(a) & classify(b)) - C::B,
        Formula::Forall(_, a) => classify(a) & C::LA,
        Formula::Exists(_, a) => classify(a) & (C::LA | C::SIGMA1 | C::SIGMA_B),
        Formula::BForall(_, _, a) | Formula::BExists(_, _, a) => classify(a) - C::B,
        Formula::Box(_) => C::B | C::DELTA_B | C::SIGMA_B,
    }
}

/// Negation-like connectives keep only Delta0 and box-freeness.
fn boolean(children: &[FormulaClass]) -> FormulaClass {
    if children.iter().all(|c| c.contains(FormulaClass::DELTA0)) {
        ATOMIC
    } else if children.iter().all(|c| c.contains(FormulaClass::LA)) {
        FormulaClass::LA
    } else {
        FormulaClass::empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassError {
    /// The input is not in the class the operation needs.
    NotIn { needed: FormulaClass, found: FormulaClass },
    NotASentence,
    /// Membership atoms have no Delta(B) counterpart.
    Membership,
}

impl fmt::Display for ClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassError::NotIn { needed, found } => write!(f, "expected a {needed} formula, found class {found}"),
            ClassError::NotASentence => f.write_str("expected a sentence"),
            ClassError::Membership => f.write_str("membership atoms have no bounded normal form"),
        }
    }
}

impl core::error::Error for ClassError {}

fn require(phi: &Formula, needed: FormulaClass) -> Result<(), ClassError> {
    let found = classify(phi);
    if found.contains(needed) {
        Ok(())
    } else {
        Err(ClassError::NotIn { needed, found })
    }
}

/// Pushes negations onto atoms. Only called on Delta0 parts, so unbounded
/// quantifiers never end up under a negation.
fn nnf(phi: &Formula, positive: bool) -> Formula {
    match (phi, positive) {
        (Formula::Not(a), s) => nnf(a, !s),
        (Formula::And(a, b), true) => Formula::and(nnf(a, true), nnf(b, true)),
        (Formula::And(a, b), false) => Formula::or(nnf(a, false), nnf(b, false)),
        (Formula::Or(a, b), true) => Formula::or(nnf(a, true), nnf(b, true)),
        (Formula::Or(a, b), false) => Formula::and(nnf(a, false), nnf(b, false)),
        (Formula::Imp(a, b), true) => Formula::or(nnf(a, false), nnf(b, true)),
        (Formula::Imp(a, b), false) => Formula::and(nnf(a, true), nnf(b, false)),
        (Formula::Iff(a, b), true) => Formula::or(
            Formula::and(nnf(a, true), nnf(b, true)),
            Formula::and(nnf(a, false), nnf(b, false)),
        ),
        (Formula::Iff(a, b), false) => Formula::or(
            Formula::and(nnf(a, true), nnf(b, false)),
            Formula::and(nnf(a, false), nnf(b, true)),
        ),
        (Formula::Exists(v, a), true) => Formula::exists(v.clone(), nnf(a, true)),
        (Formula::Exists(v, a), false) => Formula::forall(v.clone(), nnf(a, false)),
        (Formula::Forall(v, a), true) => Formula::forall(v.clone(), nnf(a, true)),
        (Formula::Forall(v, a), false) => Formula::exists(v.clone(), nnf(a, false)),
        (Formula::BExists(v, t, a), true) => Formula::BExists(v.clone(), t.clone(), nnf(a, true).into()),
        (Formula::BExists(v, t, a), false) => Formula::BForall(v.clone(), t.clone(), nnf(a, false).into()),
        (Formula::BForall(v, t, a), true) => Formula::BForall(v.clone(), t.clone(), nnf(a, true).into()),
        (Formula::BForall(v, t, a), false) => Formula::BExists(v.clone(), t.clone(), nnf(a, false).into()),
        (atom, true) => atom.clone(),
        (atom, false) => Formula::not(atom.clone()),
    }
}

/// Rewrites a Sigma1 formula so that it has no negation, implication or
/// order atom. Proof-predicate atoms have no positive complement and are
/// kept as literals.
pub fn positive_sigma1_form(phi: &Formula) -> Result<Formula, ClassError> {
    require(phi, FormulaClass::SIGMA1)?;
    let mut fresh = FreshVars::above([phi]);
    Ok(positive(&nnf(phi, true), &mut fresh))
}

fn positive(phi: &Formula, fresh: &mut FreshVars) -> Formula {
    let gap = |fresh: &mut FreshVars, lo: &Term, hi: &Term, strict: bool| {
        // exists u (lo + u) = hi, or with S(u) when strict
        let u = fresh.next();
        let step = if strict { Term::succ(Term::Var(u.clone())) } else { Term::Var(u.clone()) };
        Formula::exists(u, Formula::eq(Term::add(lo.clone(), step), hi.clone()))
    };
    match phi {
        Formula::Bot => Formula::eq(Term::Zero, Term::succ(Term::Zero)),
        Formula::Le(a, b) => gap(fresh, a, b, false),
        Formula::Lt(a, b) => gap(fresh, a, b, true),
        Formula::Not(a) => match &**a {
            Formula::Bot => Formula::top(),
            Formula::Eq(a, b) => {
                let l = gap(fresh, a, b, true);
                Formula::or(l, gap(fresh, b, a, true))
            }
            Formula::Le(a, b) => gap(fresh, b, a, true),
            Formula::Lt(a, b) => Formula::or(Formula::eq(a.clone(), b.clone()), gap(fresh, b, a, true)),
            _ => phi.clone(),
        },
        Formula::And(a, b) => Formula::and(positive(a, fresh), positive(b, fresh)),
        Formula::Or(a, b) => Formula::or(positive(a, fresh), positive(b, fresh)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), positive(a, fresh)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), positive(a, fresh)),
        Formula::BExists(v, t, a) => Formula::BExists(v.clone(), t.clone(), positive(a, fresh).into()),
        Formula::BForall(v, t, a) => Formula::BForall(v.clone(), t.clone(), positive(a, fresh).into()),
        _ => phi.clone(),
    }
}

/// Returns `(v, psi)` with `psi` in Delta(B) and `phi` equivalent to
/// `exists v psi`.
pub fn sigma_b_to_exists_delta_b(phi: &Formula) -> Result<(Var, Formula), ClassError> {
    require(phi, FormulaClass::SIGMA_B)?;
    let mut fresh = FreshVars::above([phi]);
    s2d(phi, &mut fresh)
}

fn s2d(phi: &Formula, fresh: &mut FreshVars) -> Result<(Var, Formula), ClassError> {
    if classify(phi).contains(FormulaClass::DELTA_B) {
        return Ok((fresh.next(), phi.clone()));
    }
    let bounded = |x: &Var, v: &Var, body: Formula| Formula::BExists(x.clone(), Term::Var(v.clone()), body.into());
    Ok(match phi {
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (v0, p0) = s2d(a, fresh)?;
            let (v1, p1) = s2d(b, fresh)?;
            let v = fresh.next();
            let inner = if matches!(phi, Formula::And(..)) { Formula::and(p0, p1) } else { Formula::or(p0, p1) };
            let body = bounded(&v0, &v, bounded(&v1, &v, inner));
            (v, body)
        }
        Formula::Exists(x, a) => {
            let (v0, p0) = s2d(a, fresh)?;
            let v = fresh.next();
            (v.clone(), bounded(x, &v, bounded(&v0, &v, p0)))
        }
        Formula::BExists(x, t, a) => {
            let (v0, p0) = s2d(a, fresh)?;
            let v = fresh.next();
            (v.clone(), Formula::BExists(x.clone(), t.clone(), bounded(&v0, &v, p0).into()))
        }
        Formula::BForall(x, t, a) => {
            let (v0, p0) = s2d(a, fresh)?;
            let v = fresh.next();
            (v.clone(), Formula::BForall(x.clone(), t.clone(), bounded(&v0, &v, p0).into()))
        }
        Formula::InW(..) => return Err(ClassError::Membership),
        _ => {
            // Delta0 or boxed formulas were returned above; what is left
            // is a Boolean combination over a membership atom.
            return Err(ClassError::Membership);
        }
    })
}

fn closed_value(reg: &Registry, t: &Term) -> Result<usize, ClassError> {
    let n = eval_term(reg, t, &Env::new()).map_err(|_| ClassError::NotASentence)?;
    // A bound too large for memory cannot be expanded anyway.
    Ok(n.to_usize().expect("bounded quantifier range exceeds the address space"))
}

/// For a Delta(B) sentence, sentences `psi_i` with `phi` equivalent to the
/// disjunction of the `box psi_i` (the empty list standing for `bot`).
pub fn delta_b_sentence_to_boxes(reg: &Registry, phi: &Formula) -> Result<Vec<Formula>, ClassError> {
    require(phi, FormulaClass::DELTA_B)?;
    if !phi.is_sentence() {
        return Err(ClassError::NotASentence);
    }
    boxes(reg, phi)
}

/// `box psi_0 | ... | box psi_{k-1}`, left nested; `bot` when empty.
pub fn boxes_disjunction(psis: &[Formula]) -> Formula {
    Formula::disj(psis.iter().cloned().map(Formula::boxed))
}

fn boxes(reg: &Registry, phi: &Formula) -> Result<Vec<Formula>, ClassError> {
    if classify(phi).contains(FormulaClass::DELTA0) {
        let truth = eval_sentence(phi, &Model::triv(reg, 0)).map_err(|_| ClassError::NotASentence)?;
        return Ok(if truth.is_true() { vec![Formula::top()] } else { Vec::new() });
    }
    Ok(match phi {
        Formula::Box(a) => vec![(**a).clone()],
        Formula::And(a, b) => product(boxes(reg, a)?, boxes(reg, b)?),
        Formula::Or(a, b) => {
            let mut l = boxes(reg, a)?;
            l.extend(boxes(reg, b)?);
            l
        }
        Formula::BExists(x, t, a) => {
            let n = closed_value(reg, t)?;
            let mut out = Vec::new();
            for i in 0..n {
                out.extend(boxes(reg, &substitute(a, x, &numeral(i)))?);
            }
            out
        }
        Formula::BForall(x, t, a) => {
            let n = closed_value(reg, t)?;
            let mut acc = vec![Formula::top()];
            for i in 0..n {
                let next = boxes(reg, &substitute(a, x, &numeral(i)))?;
                acc = if i == 0 { next } else { product(acc, next) };
            }
            acc
        }
        _ => unreachable!("Delta(B) sentences are covered above"),
    })
}

fn product(xs: Vec<Formula>, ys: Vec<Formula>) -> Vec<Formula> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            out.push(Formula::and(x.clone(), y.clone()));
        }
    }
    out
}

/// Strips the outermost box of every maximal boxed part outside the
/// Sigma1 parts.
pub fn minus(phi: &Formula) -> Result<Formula, ClassError> {
    require(phi, FormulaClass::SIGMA_B)?;
    Ok(minus_unchecked(phi))
}

fn minus_unchecked(phi: &Formula) -> Formula {
    if classify(phi).contains(FormulaClass::SIGMA1) {
        return phi.clone();
    }
    match phi {
        Formula::Box(a) => (**a).clone(),
        Formula::And(a, b) => Formula::and(minus_unchecked(a), minus_unchecked(b)),
        Formula::Or(a, b) => Formula::or(minus_unchecked(a), minus_unchecked(b)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), minus_unchecked(a)),
        Formula::BForall(v, t, a) => Formula::BForall(v.clone(), t.clone(), minus_unchecked(a).into()),
        Formula::BExists(v, t, a) => Formula::BExists(v.clone(), t.clone(), minus_unchecked(a).into()),
        _ => unreachable!("Sigma(B) formulas are covered above"),
    }
}

/// The witness-annotated form of a Delta(B) formula together with its new
/// free variables, in order of introduction.
pub fn star(phi: &Formula) -> Result<(Formula, Vec<Var>), ClassError> {
    require(phi, FormulaClass::DELTA_B)?;
    let mut fresh = FreshVars::above([phi]);
    let mut vars = Vec::new();
    let out = star_rec(phi, &mut fresh, &mut vars);
    Ok((out, vars))
}

/// `w=0`, the selector test of the disjunction clause.
pub fn selector(w: &Var) -> Formula {
    Formula::eq(Term::Var(w.clone()), Term::Zero)
}

fn star_rec(phi: &Formula, fresh: &mut FreshVars, vars: &mut Vec<Var>) -> Formula {
    if classify(phi).contains(FormulaClass::DELTA0) {
        return phi.clone();
    }
    match phi {
        Formula::Box(_) => phi.clone(),
        Formula::And(a, b) => {
            let a = star_rec(a, fresh, vars);
            Formula::and(a, star_rec(b, fresh, vars))
        }
        Formula::Or(a, b) => {
            let a = star_rec(a, fresh, vars);
            let b = star_rec(b, fresh, vars);
            let w = fresh.next();
            vars.push(w.clone());
            Formula::or(
                Formula::and(selector(&w), a),
                Formula::and(Formula::not(selector(&w)), b),
            )
        }
        Formula::BForall(y, t, a) => Formula::BForall(y.clone(), t.clone(), star_rec(a, fresh, vars).into()),
        Formula::BExists(y, t, a) => {
            let a = star_rec(a, fresh, vars);
            let w = fresh.next();
            vars.push(w.clone());
            let pin = Formula::eq(Term::Var(y.clone()), Term::Var(w));
            Formula::BExists(y.clone(), t.clone(), Formula::and(pin, a).into())
        }
        _ => unreachable!("Delta(B) formulas are covered above"),
    }
}
