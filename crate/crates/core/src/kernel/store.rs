use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::axioms::scheme_allowed;
use super::check::{check_proof, proof_code_checks, CheckError};
use super::proof::{Justification, Line, Proof, Scheme};
use crate::coding::{Code, Registry};
use crate::syntax::{Formula, TheoryId};

/// The smallest code `<= budget` of a proof of the formula `code` that
/// checks under `theory`.
pub fn pr_search(reg: &Registry, theory: &TheoryId, code: Code, budget: usize) -> Option<Code> {
    reg.proofs_concluding(code)
        .into_iter()
        .take_while(|&c| c <= budget)
        .find(|&c| proof_code_checks(reg, theory, c))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Record {
    pub theory: TheoryId,
    pub formula: Code,
    pub proof: Code,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StoreError {
    Check(CheckError),
    /// The code is not a proof, or the proof does not conclude the
    /// recorded formula.
    Mismatch(Code),
}

impl fmt::Display for StoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoreError::Check(e) => write!(f, "proof does not check: {e}"),
            StoreError::Mismatch(c) => write!(f, "code {c} is not a proof of the recorded formula"),
        }
    }
}

impl core::error::Error for StoreError {}

/// Checked theorems, each backed by an interned proof.
#[derive(Clone, Default, Debug)]
pub struct TheoremStore {
    records: Vec<Record>,
}

impl TheoremStore {
    pub fn new() -> TheoremStore {
        TheoremStore::default()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// Checks `proof`, interns it and records its conclusion.
    pub fn record(&mut self, reg: &Registry, theory: &TheoryId, proof: &Proof) -> Result<Record, StoreError> {
        check_proof(reg, theory, proof).map_err(StoreError::Check)?;
        let code = reg.code_of_proof(proof);
        let formula = reg.code_of_formula(proof.conclusion().expect("checked proofs are non-empty"));
        let rec = Record { theory: theory.clone(), formula, proof: code };
        if !self.records.contains(&rec) {
            self.records.push(rec.clone());
        }
        Ok(rec)
    }

    /// Adds an already interned record after verifying it.
    pub fn push_record(&mut self, reg: &Registry, rec: Record) -> Result<(), StoreError> {
        let proof = reg.proof(rec.proof).map_err(|_| StoreError::Mismatch(rec.proof))?;
        let concl = proof.conclusion().and_then(|c| reg.lookup_formula(c));
        if concl.is_none() || concl != reg.resolve(rec.formula).ok() {
            return Err(StoreError::Mismatch(rec.proof));
        }
        check_proof(reg, &rec.theory, &proof).map_err(StoreError::Check)?;
        if !self.records.contains(&rec) {
            self.records.push(rec);
        }
        Ok(())
    }

    pub fn contains(&self, reg: &Registry, theory: &TheoryId, formula: Code) -> bool {
        let Ok(f) = reg.resolve(formula) else { return false };
        self.records.iter().any(|r| r.theory == *theory && reg.resolve(r.formula).ok() == Some(f))
    }

    fn formulas(&self, reg: &Registry, theory: &TheoryId) -> Vec<(Formula, Code)> {
        self.records
            .iter()
            .filter(|r| r.theory == *theory)
            .filter_map(|r| reg.formula(r.formula).ok().map(|f| ((*f).clone(), r.proof)))
            .collect()
    }

    /// One round of necessitation: for each recorded `A` of modal depth
    /// below `max_depth` without a recorded `box A`, records
    /// `cite A; nec box A`. Returns the number of records added.
    pub fn nec_close(&mut self, reg: &Registry, theory: &TheoryId, max_depth: usize) -> usize {
        let mut added = 0;
        for (phi, proof) in self.formulas(reg, theory) {
            if phi.modal_depth() >= max_depth {
                continue;
            }
            let boxed = Formula::boxed(phi.clone());
            if self.contains(reg, theory, reg.code_of_formula(&boxed)) {
                continue;
            }
            let p = Proof::new(vec![
                Line { formula: phi, just: Justification::Cited(proof) },
                Line { formula: boxed, just: Justification::Nec(0) },
            ]);
            if self.record(reg, theory, &p).is_ok() {
                added += 1;
            }
        }
        added
    }

    /// Repeats [`TheoremStore::nec_close`] until nothing changes.
    pub fn nec_close_to_depth(&mut self, reg: &Registry, theory: &TheoryId, max_depth: usize) -> usize {
        let mut total = 0;
        loop {
            let n = self.nec_close(reg, theory, max_depth);
            if n == 0 {
                return total;
            }
            total += n;
        }
    }

    /// Every recorded `A` of modal depth below `max_depth` has `box A`
    /// recorded too.
    pub fn is_nec_closed(&self, reg: &Registry, theory: &TheoryId, max_depth: usize) -> bool {
        self.formulas(reg, theory).into_iter().all(|(phi, _)| {
            phi.modal_depth() >= max_depth
                || reg
                    .lookup_formula(&Formula::boxed(phi))
                    .is_some_and(|c| self.contains(reg, theory, c))
        })
    }

    /// Recorded `box A` whose `A` is not recorded.
    pub fn box_elim_violations(&self, reg: &Registry, theory: &TheoryId) -> Vec<Formula> {
        self.formulas(reg, theory)
            .into_iter()
            .filter_map(|(phi, _)| match phi {
                Formula::Box(ref a) => {
                    let ok = reg.lookup_formula(a).is_some_and(|c| self.contains(reg, theory, c));
                    (!ok).then_some(phi)
                }
                _ => None,
            })
            .collect()
    }

    pub fn is_box_elim_closed(&self, reg: &Registry, theory: &TheoryId) -> bool {
        self.box_elim_violations(reg, theory).is_empty()
    }

    /// Records `A` for every recorded `box A`, via the T axiom. Returns
    /// `None` when the theory lacks that axiom.
    pub fn box_elim_close(&mut self, reg: &Registry, theory: &TheoryId) -> Option<usize> {
        if !scheme_allowed(theory, Scheme::T) {
            return None;
        }
        let mut added = 0;
        loop {
            let mut changed = false;
            for (phi, proof) in self.formulas(reg, theory) {
                let Formula::Box(a) = &phi else { continue };
                if reg.lookup_formula(a).is_some_and(|c| self.contains(reg, theory, c)) {
                    continue;
                }
                let a = (**a).clone();
                let p = Proof::new(vec![
                    Line { formula: phi.clone(), just: Justification::Cited(proof) },
                    Line { formula: Formula::imp(phi.clone(), a.clone()), just: Justification::Axiom(Scheme::T) },
                    Line { formula: a, just: Justification::Mp(1, 0) },
                ]);
                if self.record(reg, theory, &p).is_ok() {
                    added += 1;
                    changed = true;
                }
            }
            if !changed {
                return Some(added);
            }
        }
    }
}
