use num_traits::{ToPrimitive, Zero};

use super::proof::Scheme;
use super::taut::is_tautology;
use crate::coding::Registry;
use crate::eval::{eval_sentence, eval_term, Env, Model, Truth};
use crate::syntax::{
    free_vars, is_free_for, numeral, substitute, term_vars, CodeSub, Formula, Logic, Term, TheoryId, Var,
};

/// Modal schemes available in each base logic.
pub fn modal_schemes(logic: Logic) -> &'static [Scheme] {
    use Scheme::*;
    match logic {
        Logic::PaBox => &[],
        Logic::K => &[K],
        Logic::K4 => &[K, Four],
        Logic::KT => &[K, T],
        Logic::S4 => &[K, T, Four],
        Logic::S41 => &[K, T, Four, S41],
        Logic::Triv => &[K, Triv],
        Logic::GL => &[K, Four, Lob],
        Logic::Ver => &[K, Ver],
    }
}

pub fn scheme_allowed(theory: &TheoryId, s: Scheme) -> bool {
    !s.is_modal() || modal_schemes(theory.base).contains(&s)
}

/// Budget for membership atoms accepted as arithmetic facts.
pub const ARITH_MEMBERSHIP_BUDGET: usize = 64;

/// Whether `phi`, or `phi` with some leading universal quantifiers removed,
/// is an instance of `scheme`.
pub fn is_axiom(reg: &Registry, scheme: Scheme, phi: &Formula) -> bool {
    let mut f = phi;
    loop {
        if instance(reg, scheme, f) {
            return true;
        }
        match f {
            Formula::Forall(_, body) => f = body,
            _ => return false,
        }
    }
}

fn instance(reg: &Registry, scheme: Scheme, phi: &Formula) -> bool {
    use Formula as F;
    use Scheme as S;
    match (scheme, phi) {
        (S::Taut, _) => is_tautology(phi),
        (S::Inst, F::Imp(l, r)) => match &**l {
            F::Forall(x, a) => instantiates(a, x, r),
            _ => false,
        },
        (S::ExistsIntro, F::Imp(l, r)) => match &**r {
            F::Exists(x, a) => instantiates(a, x, l),
            _ => false,
        },
        (S::ForallDist, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Forall(x, body), F::Imp(a2, q)) => match (&**body, &**q) {
                (F::Imp(a, b), F::Forall(x2, b2)) => {
                    x == x2 && a == a2 && b == b2 && !free_vars(a).contains(x)
                }
                _ => false,
            },
            _ => false,
        },
        (S::ExistsElim, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Forall(x, body), F::Imp(e, b2)) => match (&**body, &**e) {
                (F::Imp(a, b), F::Exists(x2, a2)) => {
                    x == x2 && a == a2 && b == b2 && !free_vars(b).contains(x)
                }
                _ => false,
            },
            _ => false,
        },
        (S::Refl, F::Eq(a, b)) => a == b,
        (S::EqSubst, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Eq(s, t), F::Imp(p, q)) => atom_replaces(p, q, s, t),
            _ => false,
        },
        (S::SuccNonZero, F::Not(a)) => matches!(&**a, F::Eq(Term::Succ(_), Term::Zero)),
        (S::SuccInj, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Eq(Term::Succ(a), Term::Succ(b)), F::Eq(a2, b2)) => **a == *a2 && **b == *b2,
            _ => false,
        },
        (S::AddZero, F::Eq(Term::Add(a, z), b)) => **z == Term::Zero && **a == *b,
        (S::AddSucc, F::Eq(Term::Add(a, sb), Term::Succ(r))) => match (&**sb, &**r) {
            (Term::Succ(b), Term::Add(a2, b2)) => a == a2 && b == b2,
            _ => false,
        },
        (S::MulZero, F::Eq(Term::Mul(_, z), r)) => **z == Term::Zero && *r == Term::Zero,
        (S::MulSucc, F::Eq(Term::Mul(a, sb), Term::Add(m, a3))) => match (&**sb, &**m) {
            (Term::Succ(b), Term::Mul(a2, b2)) => a == a2 && b == b2 && a == a3,
            _ => false,
        },
        (S::LeDef, F::Iff(l, r)) => match (&**l, &**r) {
            (F::Le(a, b), F::Exists(z, body)) => {
                !term_vars(a).contains(z)
                    && !term_vars(b).contains(z)
                    && **body == F::eq(Term::add(a.clone(), Term::Var(z.clone())), b.clone())
            }
            _ => false,
        },
        (S::LtDef, F::Iff(l, r)) => match (&**l, &**r) {
            (F::Lt(a, b), F::Le(Term::Succ(a2), b2)) => **a2 == *a && b == b2,
            _ => false,
        },
        (S::NumZero, F::Eq(Term::Num(n), Term::Zero)) => n.is_zero(),
        (S::NumSucc, F::Eq(Term::Num(n), Term::Succ(m))) => match &**m {
            Term::Num(m) => *n == m + 1u32,
            _ => false,
        },
        (S::Induction, F::Imp(l, r)) => match (&**l, &**r) {
            (F::And(base, step), F::Forall(x, a)) => match &**step {
                F::Forall(x2, imp) => match &**imp {
                    F::Imp(a2, next) => {
                        let sx = Term::succ(Term::Var(x.clone()));
                        x == x2
                            && **a2 == **a
                            && **base == substitute(a, x, &Term::Zero)
                            && is_free_for(a, x, &sx)
                            && **next == substitute(a, x, &sx)
                    }
                    _ => false,
                },
                _ => false,
            },
            _ => false,
        },
        (S::BForallDef, F::Iff(l, r)) => match (&**l, &**r) {
            (F::BForall(x, t, a), F::Forall(x2, imp)) => {
                x == x2
                    && !term_vars(t).contains(x)
                    && **imp == F::imp(F::Lt(Term::Var(x.clone()), t.clone()), (**a).clone())
            }
            _ => false,
        },
        (S::BExistsDef, F::Iff(l, r)) => match (&**l, &**r) {
            (F::BExists(x, t, a), F::Exists(x2, conj)) => {
                x == x2
                    && !term_vars(t).contains(x)
                    && **conj == F::and(F::Lt(Term::Var(x.clone()), t.clone()), (**a).clone())
            }
            _ => false,
        },
        (S::BForallExpand, F::Iff(l, r)) => match &**l {
            F::BForall(x, t, a) => expands(reg, x, t, a, r, true),
            _ => false,
        },
        (S::BExistsExpand, F::Iff(l, r)) => match &**l {
            F::BExists(x, t, a) => expands(reg, x, t, a, r, false),
            _ => false,
        },
        (S::Arith, _) => arith(reg, phi),
        (S::K, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Box(ab), F::Imp(ba, bb)) => match (&**ab, &**ba, &**bb) {
                (F::Imp(a, b), F::Box(a2), F::Box(b2)) => a == a2 && b == b2,
                _ => false,
            },
            _ => false,
        },
        (S::Four, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Box(_), F::Box(inner)) => **inner == **l,
            _ => false,
        },
        (S::T, F::Imp(l, r)) => matches!(&**l, F::Box(a) if **a == **r),
        (S::Lob, F::Imp(l, r)) => match (&**l, &**r) {
            (F::Box(imp), F::Box(a)) => **imp == F::imp((**r).clone(), (**a).clone()),
            _ => false,
        },
        (S::Triv, F::Iff(l, r)) => matches!(&**l, F::Box(a) if **a == **r),
        (S::Ver, F::Box(a)) => **a == F::Bot,
        (S::S41, F::Imp(l, r)) => match &**l {
            F::Not(b) => match &**b {
                F::Box(n) => matches!(&**n, F::Not(_)) && **r == F::boxed((**l).clone()),
                _ => false,
            },
            _ => false,
        },
        _ => false,
    }
}

/// Whether `inst` is `a` with some term substituted for `x`, free for it.
fn instantiates(a: &Formula, x: &Var, inst: &Formula) -> bool {
    match witness(a, x, inst) {
        Some(t) => is_free_for(a, x, &t) && substitute(a, x, &t) == *inst,
        None => a == inst,
    }
}

/// The term standing in `inst` where `a` has a free `x`, if any.
fn witness(a: &Formula, x: &Var, inst: &Formula) -> Option<Term> {
    use Formula as F;
    match (a, inst) {
        (F::Eq(a1, a2), F::Eq(b1, b2))
        | (F::Le(a1, a2), F::Le(b1, b2))
        | (F::Lt(a1, a2), F::Lt(b1, b2))
        | (F::Prf(_, a1, a2), F::Prf(_, b1, b2))
        | (F::InW(a1, a2), F::InW(b1, b2)) => term_witness(a1, x, b1).or_else(|| term_witness(a2, x, b2)),
        (F::Not(a), F::Not(b)) | (F::Box(a), F::Box(b)) => witness(a, x, b),
        (F::And(a1, a2), F::And(b1, b2))
        | (F::Or(a1, a2), F::Or(b1, b2))
        | (F::Imp(a1, a2), F::Imp(b1, b2))
        | (F::Iff(a1, a2), F::Iff(b1, b2)) => witness(a1, x, b1).or_else(|| witness(a2, x, b2)),
        (F::Forall(w, a), F::Forall(_, b)) | (F::Exists(w, a), F::Exists(_, b)) => {
            if w == x {
                None
            } else {
                witness(a, x, b)
            }
        }
        (F::BForall(w, t, a), F::BForall(_, u, b)) | (F::BExists(w, t, a), F::BExists(_, u, b)) => {
            term_witness(t, x, u).or_else(|| if w == x { None } else { witness(a, x, b) })
        }
        _ => None,
    }
}

fn term_witness(t: &Term, x: &Var, u: &Term) -> Option<Term> {
    match (t, u) {
        (Term::Var(v), _) if v == x => Some(u.clone()),
        (Term::Succ(a), Term::Succ(b)) => term_witness(a, x, b),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            term_witness(a1, x, b1).or_else(|| term_witness(a2, x, b2))
        }
        (Term::CodeSub(a), Term::CodeSub(b)) => a
            .subst()
            .iter()
            .zip(b.subst())
            .find_map(|((_, ta), (_, tb))| term_witness(ta, x, tb)),
        _ => None,
    }
}

/// Whether the atomic `q` arises from the atomic `p` by replacing some
/// occurrences of `s` with `t`.
fn atom_replaces(p: &Formula, q: &Formula, s: &Term, t: &Term) -> bool {
    use Formula as F;
    let r = |a: &Term, b: &Term| replaces(a, b, s, t);
    match (p, q) {
        (F::Eq(a1, a2), F::Eq(b1, b2)) | (F::Le(a1, a2), F::Le(b1, b2)) | (F::Lt(a1, a2), F::Lt(b1, b2)) => {
            r(a1, b1) && r(a2, b2)
        }
        (F::InW(a1, a2), F::InW(b1, b2)) => r(a1, b1) && r(a2, b2),
        (F::Prf(th, a1, a2), F::Prf(th2, b1, b2)) => th == th2 && r(a1, b1) && r(a2, b2),
        _ => false,
    }
}

fn replaces(a: &Term, b: &Term, s: &Term, t: &Term) -> bool {
    if a == b || (a == s && b == t) {
        return true;
    }
    match (a, b) {
        (Term::Succ(a), Term::Succ(b)) => replaces(a, b, s, t),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            replaces(a1, b1, s, t) && replaces(a2, b2, s, t)
        }
        (Term::CodeSub(a), Term::CodeSub(b)) => {
            a.formula() == b.formula()
                && a.subst().len() == b.subst().len()
                && a
                    .subst()
                    .iter()
                    .zip(b.subst())
                    .all(|((ka, ta), (kb, tb))| ka == kb && replaces(ta, tb, s, t))
        }
        _ => false,
    }
}

fn expands(reg: &Registry, x: &Var, t: &Term, a: &Formula, rhs: &Formula, conj: bool) -> bool {
    if !t.is_closed() {
        return false;
    }
    let Ok(n) = eval_term(reg, t, &Env::new()) else { return false };
    // Each conjunct or disjunct contributes at least one node.
    match n.to_usize() {
        Some(n) if n <= rhs.size() => {}
        _ => return false,
    }
    let n = n.to_usize().unwrap_or(0);
    let items = (0..n).map(|i| substitute(a, x, &numeral(i)));
    let expected = if conj { Formula::conj(items) } else { Formula::disj(items) };
    expected == *rhs
}

/// A numeral, `0`, or one arithmetic operation applied to those.
fn literal_term(t: &Term) -> bool {
    let num = |t: &Term| matches!(t, Term::Num(_) | Term::Zero);
    match t {
        Term::Num(_) | Term::Zero => true,
        Term::Succ(a) => num(a),
        Term::Add(a, b) | Term::Mul(a, b) => num(a) && num(b),
        Term::CodeSub(c) => literal_code(c),
        Term::Var(_) => false,
    }
}

fn literal_code(c: &CodeSub) -> bool {
    c.subst().values().all(|t| matches!(t, Term::Num(_) | Term::Zero))
}

fn arith(reg: &Registry, phi: &Formula) -> bool {
    let (atom, want) = match phi {
        Formula::Not(a) => (&**a, Truth::False),
        a => (a, Truth::True),
    };
    let literal = match atom {
        Formula::Eq(a, b) | Formula::Le(a, b) | Formula::Lt(a, b) | Formula::Prf(_, a, b) | Formula::InW(a, b) => {
            literal_term(a) && literal_term(b)
        }
        _ => false,
    };
    literal && eval_sentence(atom, &Model::triv(reg, ARITH_MEMBERSHIP_BUDGET)) == Ok(want)
}
