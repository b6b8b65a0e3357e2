//! Goedel numbering by interning.
//!
//! Codes are registry indices. Fixed points reserve their indices before the
//! sentences exist, so a sentence can contain the numeral of its own code.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::eval::{eval_term, Env, EvalError};
use crate::kernel::Proof;
use crate::syntax::{free_vars, numeral, substitute, CodeSub, Formula, Nat, TheoryId, Var};

pub type Code = usize;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Object {
    Formula(Rc<Formula>),
    Proof(Rc<Proof>),
}

/// One registry slot, as written to and replayed from a journal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Entry {
    Reserved,
    Object(Object),
    /// A handle abandoned during a fixed-point build whose object turned out
    /// to be interned already.
    Alias(Code),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CodingError {
    OutOfRange(Code),
    Unbound(Code),
    NotAFormula(Code),
    NotAProof(Code),
    NotReserved(Code),
    /// The object is already interned under another code.
    Duplicate(Code),
    BadAlias(Code),
    StrayVariable(Var),
    ArityMismatch { contexts: usize, vars: usize },
    /// Two fixed-point outputs came out syntactically equal.
    Coincident,
}

impl fmt::Display for CodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodingError::OutOfRange(n) => write!(f, "code {n} is not in the registry"),
            CodingError::Unbound(n) => write!(f, "code {n} is reserved but unbound"),
            CodingError::NotAFormula(n) => write!(f, "code {n} is not a formula"),
            CodingError::NotAProof(n) => write!(f, "code {n} is not a proof"),
            CodingError::NotReserved(n) => write!(f, "code {n} is not a reserved handle"),
            CodingError::Duplicate(n) => write!(f, "object already interned as {n}"),
            CodingError::BadAlias(n) => write!(f, "alias target {n} is not a bound earlier code"),
            CodingError::StrayVariable(v) => write!(f, "free variable {v} outside the declared list"),
            CodingError::ArityMismatch { contexts, vars } => {
                write!(f, "{contexts} contexts but {vars} variables")
            }
            CodingError::Coincident => f.write_str("fixed-point sentences coincide"),
        }
    }
}

impl core::error::Error for CodingError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Verdict {
    Checking,
    Valid,
    Invalid,
}

#[derive(Default)]
struct Table {
    slots: Vec<Entry>,
    formulas: BTreeMap<Rc<Formula>, Code>,
    proofs: BTreeMap<Rc<Proof>, Code>,
    /// Formula code to the codes of proofs concluding it, ascending.
    by_conclusion: BTreeMap<Code, Vec<Code>>,
    verdicts: BTreeMap<(TheoryId, Code), Verdict>,
}

impl Table {
    fn resolve(&self, mut n: Code) -> Result<Code, CodingError> {
        loop {
            match self.slots.get(n) {
                None => return Err(CodingError::OutOfRange(n)),
                Some(Entry::Reserved) => return Err(CodingError::Unbound(n)),
                Some(Entry::Alias(m)) => n = *m,
                Some(Entry::Object(_)) => return Ok(n),
            }
        }
    }

    fn index(&mut self, at: Code, obj: &Object) {
        match obj {
            Object::Formula(f) => {
                self.formulas.insert(f.clone(), at);
            }
            Object::Proof(p) => {
                self.proofs.insert(p.clone(), at);
                if let Some(c) = p.conclusion().and_then(|c| self.formulas.get(c)) {
                    self.by_conclusion.entry(*c).or_default().push(at);
                }
            }
        }
    }
}

/// The interning table. Shared by reference; writes go through `&self`.
#[derive(Default)]
pub struct Registry {
    inner: RefCell<Table>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Registry({} entries)", self.len())
    }
}

/// Output of [`Registry::fixed_points_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub sentences: Vec<Formula>,
    pub codes: Vec<Code>,
    pub derived: Vec<Formula>,
    pub derived_codes: Vec<Code>,
}

pub type Derived<'a> = &'a dyn Fn(&[Formula]) -> Formula;

const FIXED_POINT_ATTEMPTS: usize = 8;

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn len(&self) -> usize {
        self.inner.borrow().slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup_formula(&self, f: &Formula) -> Option<Code> {
        self.inner.borrow().formulas.get(f).copied()
    }

    pub fn lookup_proof(&self, p: &Proof) -> Option<Code> {
        self.inner.borrow().proofs.get(p).copied()
    }

    pub fn code_of_formula(&self, f: &Formula) -> Code {
        if let Some(c) = self.lookup_formula(f) {
            return c;
        }
        self.append(Object::Formula(Rc::new(f.clone())))
    }

    /// Interns the conclusion first, so it gets the smaller code.
    pub fn code_of_proof(&self, p: &Proof) -> Code {
        if let Some(c) = self.lookup_proof(p) {
            return c;
        }
        if let Some(c) = p.conclusion() {
            self.code_of_formula(c);
        }
        self.append(Object::Proof(Rc::new(p.clone())))
    }

    pub fn code_of(&self, obj: &Object) -> Code {
        match obj {
            Object::Formula(f) => self.code_of_formula(f),
            Object::Proof(p) => self.code_of_proof(p),
        }
    }

    fn append(&self, obj: Object) -> Code {
        let mut t = self.inner.borrow_mut();
        let at = t.slots.len();
        t.index(at, &obj);
        t.slots.push(Entry::Object(obj));
        at
    }

    /// Follows aliases.
    pub fn decode(&self, n: Code) -> Result<Object, CodingError> {
        let t = self.inner.borrow();
        let m = t.resolve(n)?;
        match &t.slots[m] {
            Entry::Object(o) => Ok(o.clone()),
            _ => unreachable!("resolve returns bound slots"),
        }
    }

    pub fn formula(&self, n: Code) -> Result<Rc<Formula>, CodingError> {
        match self.decode(n)? {
            Object::Formula(f) => Ok(f),
            Object::Proof(_) => Err(CodingError::NotAFormula(n)),
        }
    }

    pub fn proof(&self, n: Code) -> Result<Rc<Proof>, CodingError> {
        match self.decode(n)? {
            Object::Proof(p) => Ok(p),
            Object::Formula(_) => Err(CodingError::NotAProof(n)),
        }
    }

    /// Like [`Registry::formula`] but takes an arbitrary natural.
    pub fn formula_at(&self, n: &Nat) -> Option<Rc<Formula>> {
        usize::try_from(n).ok().and_then(|n| self.formula(n).ok())
    }

    /// The canonical code of `n`: aliases resolved.
    pub fn resolve(&self, n: Code) -> Result<Code, CodingError> {
        self.inner.borrow().resolve(n)
    }

    /// Proof codes whose conclusion is the formula `code`, ascending.
    pub fn proofs_concluding(&self, code: Code) -> Vec<Code> {
        let t = self.inner.borrow();
        let Ok(c) = t.resolve(code) else { return Vec::new() };
        t.by_conclusion.get(&c).cloned().unwrap_or_default()
    }

    pub fn entry(&self, n: Code) -> Option<Entry> {
        self.inner.borrow().slots.get(n).cloned()
    }

    pub fn entries(&self) -> Vec<Entry> {
        self.inner.borrow().slots.clone()
    }

    pub fn reserve(&self) -> Code {
        let mut t = self.inner.borrow_mut();
        t.slots.push(Entry::Reserved);
        t.slots.len() - 1
    }

    /// Binds a reserved handle. Fails if the object is interned already.
    pub fn bind(&self, handle: Code, obj: Object) -> Result<(), CodingError> {
        let mut t = self.inner.borrow_mut();
        match t.slots.get(handle) {
            Some(Entry::Reserved) => {}
            None => return Err(CodingError::OutOfRange(handle)),
            Some(_) => return Err(CodingError::NotReserved(handle)),
        }
        let existing = match &obj {
            Object::Formula(f) => t.formulas.get(&**f),
            Object::Proof(p) => t.proofs.get(&**p),
        };
        if let Some(c) = existing {
            return Err(CodingError::Duplicate(*c));
        }
        t.index(handle, &obj);
        t.slots[handle] = Entry::Object(obj);
        Ok(())
    }

    pub fn bind_alias(&self, handle: Code, target: Code) -> Result<(), CodingError> {
        let mut t = self.inner.borrow_mut();
        match t.slots.get(handle) {
            Some(Entry::Reserved) => {}
            None => return Err(CodingError::OutOfRange(handle)),
            Some(_) => return Err(CodingError::NotReserved(handle)),
        }
        if t.resolve(target).is_err() || target == handle {
            return Err(CodingError::BadAlias(target));
        }
        t.slots[handle] = Entry::Alias(target);
        Ok(())
    }

    /// Appends a journal entry verbatim. Unlike the `code_of_*` functions
    /// this never interns anything else, so replaying a journal reproduces
    /// its codes exactly.
    pub fn push_entry(&self, entry: Entry) -> Result<Code, CodingError> {
        let at = self.len();
        match entry {
            Entry::Reserved => Ok(self.reserve()),
            Entry::Alias(target) => {
                let h = self.reserve();
                self.bind_alias(h, target).inspect_err(|_| {
                    self.inner.borrow_mut().slots.pop();
                })?;
                Ok(h)
            }
            Entry::Object(obj) => {
                let h = self.reserve();
                self.bind(h, obj).inspect_err(|_| {
                    self.inner.borrow_mut().slots.pop();
                })?;
                debug_assert_eq!(h, at);
                Ok(h)
            }
        }
    }

    /// The code of `cs` with the values of its substitution terms plugged in
    /// as numerals. Interns on demand.
    pub fn code_sub_value(&self, cs: &CodeSub, env: &Env) -> Result<Nat, EvalError> {
        let mut phi = cs.formula().clone();
        for (v, t) in cs.subst() {
            let n = eval_term(self, t, env)?;
            phi = substitute(&phi, v, &numeral(n));
        }
        Ok(Nat::from(self.code_of_formula(&phi)))
    }

    pub(crate) fn verdict(&self, theory: &TheoryId, proof: Code) -> Option<Verdict> {
        self.inner.borrow().verdicts.get(&(theory.clone(), proof)).copied()
    }

    pub(crate) fn set_verdict(&self, theory: &TheoryId, proof: Code, v: Verdict) {
        self.inner.borrow_mut().verdicts.insert((theory.clone(), proof), v);
    }

    /// Solves `psi_i == contexts[i][vars[j] := #code(psi_j)]` exactly.
    pub fn fixed_points(&self, contexts: &[Formula], vars: &[Var]) -> Result<Vec<Formula>, CodingError> {
        Ok(self.fixed_points_with(contexts, vars, &[])?.sentences)
    }

    /// As [`Registry::fixed_points`], with extra sentences built from the
    /// solutions whose codes the contexts may also mention. With `k`
    /// contexts and `m` derived builders, `vars` has `k + m` entries; entry
    /// `k + i` stands for the code of `derived[i](solutions)`.
    pub fn fixed_points_with(
        &self,
        contexts: &[Formula],
        vars: &[Var],
        derived: &[Derived<'_>],
    ) -> Result<FixedPoints, CodingError> {
        let k = contexts.len();
        if vars.len() != k + derived.len() {
            return Err(CodingError::ArityMismatch { contexts: k + derived.len(), vars: vars.len() });
        }
        let declared: BTreeSet<&Var> = vars.iter().collect();
        for phi in contexts {
            if let Some(v) = free_vars(phi).into_iter().find(|v| !declared.contains(v)) {
                return Err(CodingError::StrayVariable(v));
            }
        }
        for _ in 0..FIXED_POINT_ATTEMPTS {
            if let Some(out) = self.try_fixed_points(contexts, vars, derived)? {
                return Ok(out);
            }
        }
        Err(CodingError::Coincident)
    }

    fn try_fixed_points(
        &self,
        contexts: &[Formula],
        vars: &[Var],
        derived: &[Derived<'_>],
    ) -> Result<Option<FixedPoints>, CodingError> {
        let k = contexts.len();
        let any_derived = !derived.is_empty();
        // Identical contexts share one solution; contexts mentioning none
        // of the variables are their own solution.
        let mut handles: Vec<Option<Code>> = Vec::with_capacity(k);
        for (i, phi) in contexts.iter().enumerate() {
            if let Some(j) = contexts[..i].iter().position(|c| c == phi) {
                handles.push(handles[j]);
            } else if any_derived || free_vars(phi).iter().any(|v| vars.contains(v)) {
                handles.push(Some(self.reserve()));
            } else {
                handles.push(None);
            }
        }
        let derived_handles: Vec<Code> = derived.iter().map(|_| self.reserve()).collect();
        let mut codes: Vec<Code> = Vec::with_capacity(k);
        for (i, h) in handles.iter().enumerate() {
            codes.push(match h {
                Some(h) => *h,
                None => self.code_of_formula(&contexts[i]),
            });
        }
        let all: Vec<Code> = codes.iter().chain(&derived_handles).copied().collect();
        let sentences: Vec<Formula> = contexts
            .iter()
            .map(|phi| {
                vars.iter()
                    .zip(&all)
                    .fold(phi.clone(), |acc, (v, c)| substitute(&acc, v, &numeral(*c)))
            })
            .collect();
        let extra: Vec<Formula> = derived.iter().map(|d| d(&sentences)).collect();

        let mut planned: Vec<(Code, &Formula)> = Vec::new();
        let mut seen = BTreeSet::new();
        for (h, psi) in handles.iter().zip(&sentences) {
            if let Some(h) = h {
                if seen.insert(*h) {
                    planned.push((*h, psi));
                }
            }
        }
        planned.extend(derived_handles.iter().copied().zip(&extra));
        for (a, (_, x)) in planned.iter().enumerate() {
            if planned[..a].iter().any(|(_, y)| y == x) {
                return Err(CodingError::Coincident);
            }
        }
        let clash = planned.iter().any(|(_, f)| self.lookup_formula(f).is_some());
        for (h, f) in &planned {
            match self.lookup_formula(f) {
                Some(c) => self.bind_alias(*h, c)?,
                None => self.bind(*h, Object::Formula(Rc::new((*f).clone())))?,
            }
        }
        if clash {
            return Ok(None);
        }
        Ok(Some(FixedPoints { sentences, codes, derived: extra, derived_codes: derived_handles }))
    }
}
