//! Proof search for true sentences of the decidable and existential
//! fragments, guided by evaluation.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::axioms::is_axiom;
use super::builder::ProofBuilder;
use super::proof::{Proof, Scheme};
use super::store::pr_search;
use crate::classes::{classify, FormulaClass};
use crate::coding::Registry;
use crate::eval::{eval_sentence, eval_term, Env, Flavor, Model, Truth};
use crate::syntax::{numeral, substitute, term_vars, Formula, Nat, Term, TheoryId, Var};

/// Proves `t=#n` for a closed term `t` of value `n`.
pub fn prove_term_eq(reg: &Registry, t: &Term) -> Option<Proof> {
    if !t.is_closed() {
        return None;
    }
    let mut b = ProofBuilder::new();
    let line = Synth::new(reg, Model::triv(reg, 0), &mut b).term_eq(t);
    Some(b.finish(line))
}

/// For a Delta0 sentence, a proof of it (`true`) or of its negation
/// (`false`).
pub fn prove_delta0(reg: &Registry, phi: &Formula) -> Option<(Proof, bool)> {
    if !phi.is_sentence() || !classify(phi).contains(FormulaClass::DELTA0) {
        return None;
    }
    let mut b = ProofBuilder::new();
    let (line, truth) = Synth::new(reg, Model::triv(reg, 0), &mut b).delta0(phi);
    Some((b.finish(line), truth))
}

/// A proof of a Sigma1 sentence whose witnesses lie within `budget`.
pub fn prove_true_sigma1(reg: &Registry, sigma: &Formula, budget: usize) -> Option<Proof> {
    if !sigma.is_sentence() || !classify(sigma).contains(FormulaClass::SIGMA1) {
        return None;
    }
    let mut b = ProofBuilder::new();
    let line = Synth::new(reg, Model::triv(reg, budget), &mut b).sigma(sigma)?;
    Some(b.finish(line))
}

/// A `theory`-proof of a Sigma(B) sentence. Boxed parts are discharged by
/// citing proofs of the boxed formulas found within `budget`, so this
/// succeeds exactly when the sentence is true in the model that reads
/// `box A` as "a proof of `box A` is known".
pub fn prove_true_sigma_b(reg: &Registry, theory: &TheoryId, phi: &Formula, budget: usize) -> Option<Proof> {
    if !phi.is_sentence() || !classify(phi).contains(FormulaClass::SIGMA_B) {
        return None;
    }
    let mut b = ProofBuilder::new();
    let model = Model::new(Flavor::Rho(theory.clone()), budget, reg);
    let line = Synth::new(reg, model, &mut b).sigma(phi)?;
    Some(b.finish(line))
}

pub(crate) struct Synth<'a, 'r> {
    reg: &'r Registry,
    model: Model<'r>,
    pub(crate) b: &'a mut ProofBuilder,
}

fn value(reg: &Registry, t: &Term) -> Nat {
    eval_term(reg, t, &Env::new()).expect("closed term")
}

pub(crate) fn bound(reg: &Registry, t: &Term) -> usize {
    value(reg, t).to_usize().expect("bounded quantifier range exceeds the address space")
}

fn atom_args(phi: &Formula) -> Option<(&Term, &Term)> {
    match phi {
        Formula::Eq(a, b) | Formula::Le(a, b) | Formula::Lt(a, b) | Formula::Prf(_, a, b) | Formula::InW(a, b) => {
            Some((a, b))
        }
        _ => None,
    }
}

fn with_args(phi: &Formula, a: Term, b: Term) -> Formula {
    match phi {
        Formula::Eq(..) => Formula::Eq(a, b),
        Formula::Le(..) => Formula::Le(a, b),
        Formula::Lt(..) => Formula::Lt(a, b),
        Formula::Prf(th, ..) => Formula::Prf(th.clone(), a, b),
        Formula::InW(..) => Formula::InW(a, b),
        _ => unreachable!("not an atom"),
    }
}

/// Whether every immediate subterm is a numeral.
fn is_literal(t: &Term) -> bool {
    let num = |t: &Term| matches!(t, Term::Num(_) | Term::Zero);
    match t {
        Term::Zero | Term::Num(_) => true,
        Term::Succ(a) => num(a),
        Term::Add(a, b) | Term::Mul(a, b) => num(a) && num(b),
        Term::CodeSub(c) => c.subst().values().all(num),
        Term::Var(_) => false,
    }
}

impl<'a, 'r> Synth<'a, 'r> {
    pub(crate) fn new(reg: &'r Registry, model: Model<'r>, b: &'a mut ProofBuilder) -> Synth<'a, 'r> {
        Synth { reg, model, b }
    }

    fn truth(&self, phi: &Formula) -> Truth {
        eval_sentence(phi, &self.model).unwrap_or(Truth::Unknown)
    }

    /// From `s=t`, `t=s`.
    fn sym(&mut self, line: usize) -> usize {
        let Formula::Eq(s, t) = self.b.formula(line).clone() else { unreachable!() };
        if s == t {
            return line;
        }
        let refl = self.b.axiom(Scheme::Refl, Formula::eq(s.clone(), s.clone()));
        let ax = Formula::imp(
            Formula::eq(s.clone(), t.clone()),
            Formula::imp(Formula::eq(s.clone(), s.clone()), Formula::eq(t, s)),
        );
        let ax = self.b.axiom(Scheme::EqSubst, ax);
        let step = self.b.mp(ax, line);
        self.b.mp(step, refl)
    }

    /// From `eq` (`s=t`) and the atom `p`, the atom `target` obtained by
    /// replacing some occurrences of `s` in `p` with `t`.
    fn rewrite(&mut self, eq: usize, p: usize, target: Formula) -> usize {
        let ax = Formula::imp(self.b.formula(eq).clone(), Formula::imp(self.b.formula(p).clone(), target));
        let ax = self.b.axiom(Scheme::EqSubst, ax);
        let step = self.b.mp(ax, eq);
        self.b.mp(step, p)
    }

    /// Proves `t=#n`.
    pub(crate) fn term_eq(&mut self, t: &Term) -> usize {
        let n = value(self.reg, t);
        let target = Formula::eq(t.clone(), numeral(n.clone()));
        if let Some(i) = self.b.find(&target) {
            return i;
        }
        if matches!(t, Term::Num(_)) {
            return self.b.axiom(Scheme::Refl, target);
        }
        if is_literal(t) {
            return self.b.axiom(Scheme::Arith, target);
        }
        // t = t, then rewrite each immediate subterm of the right side to
        // its numeral, then one arithmetic step.
        let mut line = self.b.axiom(Scheme::Refl, Formula::eq(t.clone(), t.clone()));
        let mut rhs = t.clone();
        for (k, child) in children(t).into_iter().enumerate() {
            if matches!(child, Term::Num(_) | Term::Zero) {
                continue;
            }
            let ceq = self.term_eq(&child);
            let cn = numeral(value(self.reg, &child));
            rhs = replace_child(&rhs, k, cn);
            line = self.rewrite(ceq, line, Formula::eq(t.clone(), rhs.clone()));
        }
        let lit = self.b.axiom(Scheme::Arith, Formula::eq(rhs.clone(), numeral(n)));
        self.rewrite(lit, line, target)
    }

    /// Proves a true atom or the negation of a false one. `None` when the
    /// atom's arithmetic fact is out of reach.
    fn atom(&mut self, phi: &Formula, truth: bool) -> Option<usize> {
        let (a, b) = atom_args(phi).expect("atom");
        let (na, nb) = (numeral(value(self.reg, a)), numeral(value(self.reg, b)));
        let lit = with_args(phi, na.clone(), nb.clone());
        let lit_fact = if truth { lit.clone() } else { Formula::not(lit.clone()) };
        if !is_axiom(self.reg, Scheme::Arith, &lit_fact) {
            return None;
        }
        let fact = self.b.axiom(Scheme::Arith, lit_fact);
        let ea = self.term_eq(a);
        let eb = self.term_eq(b);
        let mid = with_args(phi, a.clone(), nb.clone());
        if truth {
            let ae = self.sym(ea);
            let be = self.sym(eb);
            let l = self.rewrite(ae, fact, mid);
            Some(self.rewrite(be, l, phi.clone()))
        } else {
            let mid2 = with_args(phi, na, b.clone());
            let i1 = self.eqsubst_imp(ea, phi.clone(), mid2.clone());
            let i2 = self.eqsubst_imp(eb, mid2, lit);
            Some(self.b.chain(&[fact, i1, i2], Formula::not(phi.clone())))
        }
    }

    /// `p -> q` from an equation line, by one substitution axiom.
    fn eqsubst_imp(&mut self, eq: usize, p: Formula, q: Formula) -> usize {
        let ax = Formula::imp(self.b.formula(eq).clone(), Formula::imp(p, q));
        let ax = self.b.axiom(Scheme::EqSubst, ax);
        self.b.mp(ax, eq)
    }

    /// Proves a Delta0 sentence or its negation; the flag says which.
    pub(crate) fn delta0(&mut self, phi: &Formula) -> (usize, bool) {
        let truth = self.truth(phi).is_true();
        let goal = if truth { phi.clone() } else { Formula::not(phi.clone()) };
        if let Some(i) = self.b.find(&goal) {
            return (i, truth);
        }
        let line = match phi {
            Formula::Bot => self.b.axiom(Scheme::Taut, goal),
            Formula::Not(a) => {
                let (i, va) = self.delta0(a);
                if va {
                    self.b.chain(&[i], goal)
                } else {
                    i
                }
            }
            Formula::And(a, c) | Formula::Or(a, c) | Formula::Imp(a, c) | Formula::Iff(a, c) => {
                let (l, vl) = self.delta0(a);
                // Short-circuit when one side settles the value.
                let settled = match phi {
                    Formula::And(..) => !vl,
                    Formula::Or(..) => vl,
                    Formula::Imp(..) => !vl,
                    _ => false,
                };
                if settled {
                    self.b.chain(&[l], goal)
                } else {
                    let (r, _) = self.delta0(c);
                    self.b.chain(&[l, r], goal)
                }
            }
            Formula::BForall(x, t, a) | Formula::BExists(x, t, a) => {
                let universal = matches!(phi, Formula::BForall(..));
                let k = bound(self.reg, t);
                let iff = self.expansion(phi, x, a, k, universal);
                let mut premises = Vec::new();
                for i in 0..k {
                    let inst = substitute(a, x, &numeral(i));
                    let (line, v) = self.delta0(&inst);
                    if v != universal {
                        premises = alloc::vec![line];
                        break;
                    }
                    premises.push(line);
                }
                premises.push(iff);
                self.b.chain(&premises, goal)
            }
            atom => self.atom(atom, truth).expect("Delta0 atoms are arithmetic facts"),
        };
        (line, truth)
    }

    /// The expansion axiom of a bounded quantifier with closed bound `k`.
    pub(crate) fn expansion(&mut self, phi: &Formula, x: &Var, a: &Formula, k: usize, universal: bool) -> usize {
        let items = (0..k).map(|i| substitute(a, x, &numeral(i)));
        let rhs = if universal { Formula::conj(items) } else { Formula::disj(items) };
        let scheme = if universal { Scheme::BForallExpand } else { Scheme::BExistsExpand };
        self.b.axiom(scheme, Formula::iff(phi.clone(), rhs))
    }

    /// Proves a true sentence of the existential fragment.
    pub(crate) fn sigma(&mut self, phi: &Formula) -> Option<usize> {
        if let Some(i) = self.b.find(phi) {
            return Some(i);
        }
        if classify(phi).contains(FormulaClass::DELTA0) {
            let (line, truth) = self.delta0(phi);
            return truth.then_some(line);
        }
        match phi {
            Formula::InW(..) => {
                if !self.truth(phi).is_true() {
                    return None;
                }
                self.atom(phi, true)
            }
            Formula::Box(_) => {
                let Flavor::Rho(th) = &self.model.flavor else { return None };
                let code = self.reg.code_of_formula(phi);
                let proof = pr_search(self.reg, th, code, self.model.budget)?;
                Some(self.b.cite(proof, phi.clone()))
            }
            Formula::And(a, c) => {
                let l = self.sigma(a)?;
                let r = self.sigma(c)?;
                Some(self.b.chain(&[l, r], phi.clone()))
            }
            Formula::Or(a, c) => {
                let line = if self.truth(a).is_true() { self.sigma(a)? } else { self.sigma(c)? };
                Some(self.b.chain(&[line], phi.clone()))
            }
            Formula::Exists(x, a) => {
                let inst = self.witness(x, a)?;
                let line = self.sigma(&inst)?;
                let ax = self.b.axiom(Scheme::ExistsIntro, Formula::imp(inst, phi.clone()));
                Some(self.b.mp(ax, line))
            }
            Formula::BExists(x, t, a) => {
                let k = bound(self.reg, t);
                let inst = (0..k)
                    .map(|i| substitute(a, x, &numeral(i)))
                    .find(|inst| self.truth(inst).is_true())?;
                let line = self.sigma(&inst)?;
                let iff = self.expansion(phi, x, a, k, false);
                Some(self.b.chain(&[line, iff], phi.clone()))
            }
            Formula::BForall(x, t, a) => {
                let k = bound(self.reg, t);
                let mut premises = Vec::with_capacity(k + 1);
                for i in 0..k {
                    premises.push(self.sigma(&substitute(a, x, &numeral(i)))?);
                }
                premises.push(self.expansion(phi, x, a, k, true));
                Some(self.b.chain(&premises, phi.clone()))
            }
            _ => None,
        }
    }

    /// A true instance `a(#n)` with `n` within the budget.
    fn witness(&self, x: &Var, a: &Formula) -> Option<Formula> {
        if let Formula::Prf(th, s, Term::Var(y)) = a {
            if y == x && !term_vars(s).contains(x) {
                let code = value(self.reg, s).to_usize()?;
                let code = self.reg.resolve(code).ok()?;
                let proof = pr_search(self.reg, th, code, self.model.budget)?;
                return Some(substitute(a, x, &numeral(proof)));
            }
        }
        (0..=self.model.budget)
            .map(|n| substitute(a, x, &numeral(n)))
            .find(|inst| self.truth(inst).is_true())
    }
}

fn children(t: &Term) -> Vec<Term> {
    match t {
        Term::Succ(a) => alloc::vec![(**a).clone()],
        Term::Add(a, b) | Term::Mul(a, b) => alloc::vec![(**a).clone(), (**b).clone()],
        Term::CodeSub(c) => c.subst().values().cloned().collect(),
        _ => Vec::new(),
    }
}

fn replace_child(t: &Term, k: usize, new: Term) -> Term {
    match t {
        Term::Succ(_) => Term::succ(new),
        Term::Add(a, b) => {
            if k == 0 {
                Term::add(new, (**b).clone())
            } else {
                Term::add((**a).clone(), new)
            }
        }
        Term::Mul(a, b) => {
            if k == 0 {
                Term::mul(new, (**b).clone())
            } else {
                Term::mul((**a).clone(), new)
            }
        }
        Term::CodeSub(c) => {
            let mut i = 0;
            Term::CodeSub(alloc::boxed::Box::new(c.map_terms(|u| {
                let out = if i == k { new.clone() } else { u.clone() };
                i += 1;
                out
            })))
        }
        _ => unreachable!("leaf terms have no children"),
    }
}
