use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;

use super::{Formula, Term, Var};

pub fn term_vars(t: &Term) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    collect_term(t, &mut out);
    out
}

fn collect_term(t: &Term, out: &mut BTreeSet<Var>) {
    match t {
        Term::Zero | Term::Num(_) => {}
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Succ(a) => collect_term(a, out),
        Term::Add(a, b) | Term::Mul(a, b) => {
            collect_term(a, out);
            collect_term(b, out);
        }
        // Variables of the coded formula are inside the code, not free here.
        Term::CodeSub(c) => c.subst().values().for_each(|t| collect_term(t, out)),
    }
}

pub fn free_vars(phi: &Formula) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    collect(phi, &mut out);
    out
}

fn collect(phi: &Formula, out: &mut BTreeSet<Var>) {
    match phi {
        Formula::Bot => {}
        Formula::Eq(a, b)
        | Formula::Le(a, b)
        | Formula::Lt(a, b)
        | Formula::Prf(_, a, b)
        | Formula::InW(a, b) => {
            collect_term(a, out);
            collect_term(b, out);
        }
        Formula::Not(a) | Formula::Box(a) => collect(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let mut inner = BTreeSet::new();
            collect(a, &mut inner);
            inner.remove(v);
            out.extend(inner);
        }
        Formula::BForall(v, t, a) | Formula::BExists(v, t, a) => {
            collect_term(t, out);
            let mut inner = BTreeSet::new();
            collect(a, &mut inner);
            inner.remove(v);
            out.extend(inner);
        }
    }
}

pub fn substitute_term(t: &Term, v: &Var, s: &Term) -> Term {
    match t {
        Term::Zero | Term::Num(_) => t.clone(),
        Term::Var(w) if w == v => s.clone(),
        Term::Var(_) => t.clone(),
        Term::Succ(a) => Term::Succ(Box::new(substitute_term(a, v, s))),
        Term::Add(a, b) => Term::add(substitute_term(a, v, s), substitute_term(b, v, s)),
        Term::Mul(a, b) => Term::mul(substitute_term(a, v, s), substitute_term(b, v, s)),
        Term::CodeSub(c) => Term::CodeSub(Box::new(c.map_terms(|u| substitute_term(u, v, s)))),
    }
}

/// Replaces the free occurrences of `v` by `t`. No renaming is done, so the
/// caller must make sure `t` is free for `v` (see [`is_free_for`]).
pub fn substitute(phi: &Formula, v: &Var, t: &Term) -> Formula {
    let st = |u: &Term| substitute_term(u, v, t);
    let sf = |a: &Formula| Box::new(substitute(a, v, t));
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Eq(a, b) => Formula::Eq(st(a), st(b)),
        Formula::Le(a, b) => Formula::Le(st(a), st(b)),
        Formula::Lt(a, b) => Formula::Lt(st(a), st(b)),
        Formula::Prf(th, a, b) => Formula::Prf(th.clone(), st(a), st(b)),
        Formula::InW(a, b) => Formula::InW(st(a), st(b)),
        Formula::Not(a) => Formula::Not(sf(a)),
        Formula::Box(a) => Formula::Box(sf(a)),
        Formula::And(a, b) => Formula::And(sf(a), sf(b)),
        Formula::Or(a, b) => Formula::Or(sf(a), sf(b)),
        Formula::Imp(a, b) => Formula::Imp(sf(a), sf(b)),
        Formula::Iff(a, b) => Formula::Iff(sf(a), sf(b)),
        Formula::Forall(w, _) | Formula::Exists(w, _) if w == v => phi.clone(),
        Formula::Forall(w, a) => Formula::Forall(w.clone(), sf(a)),
        Formula::Exists(w, a) => Formula::Exists(w.clone(), sf(a)),
        Formula::BForall(w, b, a) => {
            let body = if w == v { a.clone() } else { sf(a) };
            Formula::BForall(w.clone(), st(b), body)
        }
        Formula::BExists(w, b, a) => {
            let body = if w == v { a.clone() } else { sf(a) };
            Formula::BExists(w.clone(), st(b), body)
        }
    }
}

/// True when substituting `t` for `v` in `phi` captures no variable of `t`.
pub fn is_free_for(phi: &Formula, v: &Var, t: &Term) -> bool {
    let tv = term_vars(t);
    if tv.is_empty() {
        return true;
    }
    free_for(phi, v, &tv)
}

fn free_for(phi: &Formula, v: &Var, tv: &BTreeSet<Var>) -> bool {
    match phi {
        Formula::Bot
        | Formula::Eq(..)
        | Formula::Le(..)
        | Formula::Lt(..)
        | Formula::Prf(..)
        | Formula::InW(..) => true,
        Formula::Not(a) | Formula::Box(a) => free_for(a, v, tv),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            free_for(a, v, tv) && free_for(b, v, tv)
        }
        Formula::Forall(w, a)
        | Formula::Exists(w, a)
        | Formula::BForall(w, _, a)
        | Formula::BExists(w, _, a) => {
            if w == v || !free_vars(a).contains(v) {
                true
            } else {
                !tv.contains(w) && free_for(a, v, tv)
            }
        }
    }
}

/// Supplies `v<k>` names above every `v<k>` index already in use.
#[derive(Clone, Debug)]
pub struct FreshVars {
    next: usize,
}

impl FreshVars {
    /// Starts above every index occurring anywhere in `phis`, bound or free.
    pub fn above<'a>(phis: impl IntoIterator<Item = &'a Formula>) -> FreshVars {
        let mut next = 0;
        for phi in phis {
            scan(phi, &mut next);
        }
        FreshVars { next }
    }

    pub fn next(&mut self) -> Var {
        let v = Var::new(&format!("v{}", self.next));
        self.next += 1;
        v
    }

    /// Makes sure later names also avoid `phi`.
    pub fn avoid(&mut self, phi: &Formula) {
        scan(phi, &mut self.next);
    }
}

fn bump(v: &Var, next: &mut usize) {
    if let Some(k) = v.fresh_index() {
        *next = (*next).max(k + 1);
    }
}

fn scan_term(t: &Term, next: &mut usize) {
    match t {
        Term::Zero | Term::Num(_) => {}
        Term::Var(v) => bump(v, next),
        Term::Succ(a) => scan_term(a, next),
        Term::Add(a, b) | Term::Mul(a, b) => {
            scan_term(a, next);
            scan_term(b, next);
        }
        Term::CodeSub(c) => {
            scan(c.formula(), next);
            for (k, t) in c.subst() {
                bump(k, next);
                scan_term(t, next);
            }
        }
    }
}

fn scan(phi: &Formula, next: &mut usize) {
    match phi {
        Formula::Bot => {}
        Formula::Eq(a, b)
        | Formula::Le(a, b)
        | Formula::Lt(a, b)
        | Formula::Prf(_, a, b)
        | Formula::InW(a, b) => {
            scan_term(a, next);
            scan_term(b, next);
        }
        Formula::Not(a) | Formula::Box(a) => scan(a, next),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            scan(a, next);
            scan(b, next);
        }
        Formula::Forall(w, a) | Formula::Exists(w, a) => {
            bump(w, next);
            scan(a, next);
        }
        Formula::BForall(w, t, a) | Formula::BExists(w, t, a) => {
            bump(w, next);
            scan_term(t, next);
            scan(a, next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, CodeSub};
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn substitute_spec_examples() {
        assert_eq!(substitute(&p("x=0"), &v("x"), &Term::num(3u32)), p("#3=0"));
        assert_eq!(substitute(&p("forall x x=y"), &v("y"), &Term::succ(Term::Zero)), p("forall x x=S(0)"));
        assert_eq!(substitute(&p("box x=x"), &v("x"), &Term::num(2u32)), p("box #2=#2"));
    }

    #[test]
    fn bounded_quantifier_scope() {
        let f = p("forall x < x0 x=x0");
        assert_eq!(substitute(&f, &v("x0"), &Term::num(1u32)), p("forall x < #1 x=#1"));
        let g = p("forall x < y x=y");
        // The bound sits outside the binder's scope.
        assert_eq!(free_vars(&g), [v("y")].into());
        assert_eq!(substitute(&g, &v("x"), &Term::Zero), g);
    }

    #[test]
    fn free_vars_through_code_terms() {
        let mut m = BTreeMap::new();
        m.insert(v("x"), Term::var("z"));
        let c = Term::CodeSub(Box::new(CodeSub::new(p("x=0"), m).unwrap()));
        let f = Formula::eq(c, Term::Zero);
        assert_eq!(free_vars(&f), [v("z")].into());
        assert_eq!(free_vars(&p("box x=0")), [v("x")].into());
        assert_eq!(free_vars(&p("exists x x=y")), [v("y")].into());
    }

    #[test]
    fn capture_detection() {
        let f = p("forall y x=y");
        assert!(!is_free_for(&f, &v("x"), &Term::var("y")));
        assert!(is_free_for(&f, &v("x"), &Term::var("z")));
        assert!(is_free_for(&p("forall x x=y"), &v("x"), &Term::var("x")));
    }

    #[test]
    fn fresh_names_skip_used_indices() {
        let f = p("exists v3 (v0=v3 & box v10=0)");
        let mut fresh = FreshVars::above([&f]);
        assert_eq!(fresh.next(), v("v11"));
        assert_eq!(fresh.next(), v("v12"));
        let mut fresh = FreshVars::above(vec![&p("x=y")]);
        assert_eq!(fresh.next(), v("v0"));
    }
}
