//! Evaluation in the standard model with budgeted, three-valued truth.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::coding::{Code, Registry};
use crate::kernel::{pr_search, proof_code_checks};
use crate::translate::beta;
use crate::syntax::{free_vars, numeral, substitute, term_vars, Formula, Nat, Term, TheoryId, Var};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn is_false(self) -> bool {
        self == Truth::False
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }

    pub fn imp(self, other: Truth) -> Truth {
        self.not().or(other)
    }

    pub fn iff(self, other: Truth) -> Truth {
        match (self.known(), other.known()) {
            (Some(a), Some(b)) => Truth::from_bool(a == b),
            _ => Truth::Unknown,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

/// How boxes are read.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// `box A` means `A`.
    Triv,
    /// `box A` is always true.
    Ver,
    /// `box A` means some proof code within budget proves `A` in the theory.
    Prov(TheoryId),
    /// `box A` means some proof code within budget proves `box A`.
    Rho(TheoryId),
}

#[derive(Clone, Debug)]
pub struct Model<'r> {
    pub flavor: Flavor,
    /// Witnesses of unbounded quantifiers and proof codes range over
    /// `0..=budget`.
    pub budget: usize,
    pub registry: &'r Registry,
}

impl<'r> Model<'r> {
    pub fn new(flavor: Flavor, budget: usize, registry: &'r Registry) -> Model<'r> {
        Model { flavor, budget, registry }
    }

    pub fn triv(registry: &'r Registry, budget: usize) -> Model<'r> {
        Model::new(Flavor::Triv, budget, registry)
    }

    pub fn ver(registry: &'r Registry, budget: usize) -> Model<'r> {
        Model::new(Flavor::Ver, budget, registry)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalError {
    UnboundVariable(Var),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(v) => write!(f, "variable {v} has no value"),
        }
    }
}

impl core::error::Error for EvalError {}

/// A variable assignment; later bindings shadow earlier ones. A binding
/// without a value stands for an arbitrary number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    stack: Vec<(Var, Option<Nat>)>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn push(&mut self, v: Var, n: Nat) {
        self.stack.push((v, Some(n)));
    }

    fn push_opaque(&mut self, v: Var) {
        self.stack.push((v, None));
    }

    pub fn pop(&mut self) {
        self.stack.pop();
    }

    pub fn get(&self, v: &Var) -> Option<&Nat> {
        self.binding(v).and_then(Option::as_ref)
    }

    fn binding(&self, v: &Var) -> Option<&Option<Nat>> {
        self.stack.iter().rev().find(|(w, _)| w == v).map(|(_, n)| n)
    }

    fn binds(&self, v: &Var) -> bool {
        self.binding(v).is_some()
    }

    fn is_opaque(&self, v: &Var) -> bool {
        matches!(self.binding(v), Some(None))
    }

    pub fn with(mut self, v: &str, n: impl Into<Nat>) -> Env {
        self.push(Var::new(v), n.into());
        self
    }
}

impl FromIterator<(Var, Nat)> for Env {
    fn from_iter<I: IntoIterator<Item = (Var, Nat)>>(iter: I) -> Env {
        Env { stack: iter.into_iter().map(|(v, n)| (v, Some(n))).collect() }
    }
}

pub fn eval_term(reg: &Registry, t: &Term, env: &Env) -> Result<Nat, EvalError> {
    Ok(match t {
        Term::Zero => Nat::zero(),
        Term::Num(n) => n.clone(),
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        Term::Succ(a) => eval_term(reg, a, env)? + 1u32,
        Term::Add(a, b) => eval_term(reg, a, env)? + eval_term(reg, b, env)?,
        Term::Mul(a, b) => eval_term(reg, a, env)? * eval_term(reg, b, env)?,
        Term::CodeSub(c) => reg.code_sub_value(c, env)?,
    })
}

/// Evaluates a sentence.
pub fn eval_sentence(phi: &Formula, m: &Model<'_>) -> Result<Truth, EvalError> {
    eval_formula(phi, m, &mut Env::new())
}

pub fn eval_formula(phi: &Formula, m: &Model<'_>, env: &mut Env) -> Result<Truth, EvalError> {
    Evaluator { m, depth: 0, memo: BTreeMap::new(), scope: BTreeMap::new() }.formula(phi, env)
}

/// Nesting limit for membership atoms whose set is defined by another
/// membership atom.
const MEMBERSHIP_DEPTH: usize = 16;

/// Quantifier node (by address), membership depth, and the values of the
/// node's free variables.
type MemoKey = (usize, usize, Vec<Option<Option<Nat>>>);

struct Evaluator<'a, 'r> {
    m: &'a Model<'r>,
    depth: usize,
    /// Verdicts of quantifier nodes already evaluated under the same
    /// values, which keeps nested bounded searches polynomial.
    memo: BTreeMap<MemoKey, Truth>,
    scope: BTreeMap<usize, Vec<Var>>,
}

fn as_code(n: &Nat) -> Option<Code> {
    n.to_usize()
}

impl Evaluator<'_, '_> {
    /// The value of `t`, or `None` when it mentions an opaque variable.
    fn term(&self, t: &Term, env: &Env) -> Result<Option<Nat>, EvalError> {
        if term_vars(t).iter().any(|v| env.is_opaque(v)) {
            return Ok(None);
        }
        eval_term(self.m.registry, t, env).map(Some)
    }

    fn compare(&self, a: &Term, b: &Term, env: &Env, op: fn(&Nat, &Nat) -> bool) -> Result<Truth, EvalError> {
        Ok(match (self.term(a, env)?, self.term(b, env)?) {
            (Some(x), Some(y)) => Truth::from_bool(op(&x, &y)),
            _ => Truth::Unknown,
        })
    }

    fn has_opaque(&self, phi: &Formula, env: &Env) -> bool {
        free_vars(phi).iter().any(|v| env.is_opaque(v))
    }

    /// The code of `phi` with the assignment's values plugged in.
    fn instance_code(&self, phi: &Formula, env: &Env) -> Result<Code, EvalError> {
        let mut inst = phi.clone();
        for v in free_vars(phi) {
            let n = env.get(&v).cloned().ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            inst = substitute(&inst, &v, &numeral(n));
        }
        Ok(self.m.registry.code_of_formula(&inst))
    }

    fn provable(&self, theory: &TheoryId, code: Code) -> Truth {
        match pr_search(self.m.registry, theory, code, self.m.budget) {
            Some(_) => Truth::True,
            None => Truth::Unknown,
        }
    }

    fn prf(&self, theory: &TheoryId, x: &Nat, y: &Nat) -> bool {
        let reg = self.m.registry;
        let (Some(x), Some(y)) = (as_code(x), as_code(y)) else { return false };
        let Ok(proof) = reg.proof(y) else { return false };
        let Some(conclusion) = proof.conclusion() else { return false };
        let Ok(x) = reg.resolve(x) else { return false };
        reg.lookup_formula(conclusion) == Some(x) && proof_code_checks(reg, theory, y)
    }

    fn member(&mut self, x: &Nat, y: &Nat) -> Result<Truth, EvalError> {
        let Some(set) = self.m.registry.formula_at(y) else { return Ok(Truth::False) };
        let fv = free_vars(&set);
        if set.has_box() || fv.len() > 1 {
            return Ok(Truth::False);
        }
        if self.depth >= MEMBERSHIP_DEPTH {
            return Ok(Truth::Unknown);
        }
        let mut env = Env::new();
        if let Some(v) = fv.into_iter().next() {
            env.push(v, x.clone());
        }
        self.depth += 1;
        let r = self.formula(&set, &mut env);
        self.depth -= 1;
        r
    }

    fn formula(&mut self, phi: &Formula, env: &mut Env) -> Result<Truth, EvalError> {
        if !matches!(
            phi,
            Formula::Exists(..) | Formula::Forall(..) | Formula::BExists(..) | Formula::BForall(..)
        ) {
            return self.node(phi, env);
        }
        let at = phi as *const Formula as usize;
        let vars = self.scope.entry(at).or_insert_with(|| free_vars(phi).into_iter().collect());
        let key = (at, self.depth, vars.iter().map(|v| env.binding(v).cloned()).collect());
        if let Some(&t) = self.memo.get(&key) {
            return Ok(t);
        }
        let t = self.node(phi, env)?;
        self.memo.insert(key, t);
        Ok(t)
    }

    fn node(&mut self, phi: &Formula, env: &mut Env) -> Result<Truth, EvalError> {
        Ok(match phi {
            Formula::Bot => Truth::False,
            Formula::Eq(a, b) => self.compare(a, b, env, |x, y| x == y)?,
            Formula::Le(a, b) => self.compare(a, b, env, |x, y| x <= y)?,
            Formula::Lt(a, b) => self.compare(a, b, env, |x, y| x < y)?,
            Formula::Prf(th, a, b) => match (self.term(a, env)?, self.term(b, env)?) {
                (Some(x), Some(y)) => Truth::from_bool(self.prf(th, &x, &y)),
                _ => Truth::Unknown,
            },
            Formula::InW(a, b) => match (self.term(a, env)?, self.term(b, env)?) {
                (Some(x), Some(y)) => self.member(&x, &y)?,
                _ => Truth::Unknown,
            },
            Formula::Not(a) => self.formula(a, env)?.not(),
            Formula::And(a, b) => {
                let l = self.formula(a, env)?;
                if l.is_false() {
                    return Ok(l);
                }
                l.and(self.formula(b, env)?)
            }
            Formula::Or(a, b) => {
                let l = self.formula(a, env)?;
                if l.is_true() {
                    return Ok(l);
                }
                l.or(self.formula(b, env)?)
            }
            Formula::Imp(a, b) => {
                let l = self.formula(a, env)?;
                if l.is_false() {
                    return Ok(Truth::True);
                }
                l.imp(self.formula(b, env)?)
            }
            Formula::Iff(a, b) => self.formula(a, env)?.iff(self.formula(b, env)?),
            Formula::Box(a) => match &self.m.flavor {
                Flavor::Triv => self.formula(a, env)?,
                Flavor::Ver => {
                    // Still reject unbound variables, as the other flavors do.
                    if let Some(v) = free_vars(a).into_iter().find(|v| !env.binds(v)) {
                        return Err(EvalError::UnboundVariable(v));
                    }
                    Truth::True
                }
                _ if self.has_opaque(a, env) => Truth::Unknown,
                Flavor::Prov(th) => {
                    let c = self.instance_code(a, env)?;
                    self.provable(th, c)
                }
                Flavor::Rho(th) => {
                    let c = self.instance_code(phi, env)?;
                    self.provable(th, c)
                }
            },
            Formula::Exists(y, body) => {
                // Provability shape: search the proof index directly.
                if let Formula::Prf(th, x, Term::Var(w)) = &**body {
                    if w == y && !term_vars(x).contains(y) {
                        let Some(x) = self.term(x, env)? else { return Ok(Truth::Unknown) };
                        return Ok(match as_code(&x).and_then(|c| self.m.registry.resolve(c).ok()) {
                            Some(c) => self.provable(th, c),
                            None => Truth::Unknown,
                        });
                    }
                }
                self.unbounded(y, body, env, true)?
            }
            Formula::Forall(y, body) => self.unbounded(y, body, env, false)?,
            Formula::BForall(y, t, body) => self.bounded(y, t, body, env, false)?,
            Formula::BExists(y, t, body) => self.bounded(y, t, body, env, true)?,
        })
    }

    /// Whether the value of `body` can change with `y`. In Ver, boxes are
    /// constant, so occurrences inside them do not count.
    fn depends_on(&self, body: &Formula, y: &Var) -> bool {
        match self.m.flavor {
            Flavor::Ver => free_vars(&beta(body)).contains(y),
            _ => free_vars(body).contains(y),
        }
    }

    /// `exists` (or `forall`) over `0..=budget`; only the witnessing
    /// (refuting) outcome is conclusive.
    fn unbounded(&mut self, y: &Var, body: &Formula, env: &mut Env, exists: bool) -> Result<Truth, EvalError> {
        if !self.depends_on(body, y) {
            env.push(y.clone(), Nat::zero());
            let r = self.formula(body, env);
            env.pop();
            return r;
        }
        // A verdict that holds whatever `y` is settles the quantifier.
        env.push_opaque(y.clone());
        let r = self.formula(body, env);
        env.pop();
        let r = r?;
        if r != Truth::Unknown {
            return Ok(r);
        }
        let decisive = Truth::from_bool(exists);
        for i in 0..=self.m.budget {
            env.push(y.clone(), Nat::from(i));
            let r = self.formula(body, env);
            env.pop();
            if r? == decisive {
                return Ok(decisive);
            }
        }
        Ok(Truth::Unknown)
    }

    fn bounded(&mut self, y: &Var, t: &Term, body: &Formula, env: &mut Env, exists: bool) -> Result<Truth, EvalError> {
        let decisive = Truth::from_bool(exists);
        let Some(n) = self.term(t, env)? else {
            // Unknown range: only a body that fails (holds) everywhere
            // refutes the existential (confirms the universal).
            env.push_opaque(y.clone());
            let r = self.formula(body, env);
            env.pop();
            return Ok(if r? == decisive.not() { decisive.not() } else { Truth::Unknown });
        };
        if !self.depends_on(body, y) {
            if n.is_zero() {
                return Ok(decisive.not());
            }
            env.push(y.clone(), Nat::zero());
            let r = self.formula(body, env);
            env.pop();
            return r;
        }
        let mut acc = decisive.not();
        let mut i = Nat::zero();
        while i < n {
            env.push(y.clone(), i.clone());
            let r = self.formula(body, env);
            env.pop();
            let r = r?;
            if r == decisive {
                return Ok(decisive);
            }
            if r == Truth::Unknown {
                acc = Truth::Unknown;
            }
            i += Nat::one();
        }
        Ok(acc)
    }
}
