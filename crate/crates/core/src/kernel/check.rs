use core::fmt;

use super::axioms::{is_axiom, scheme_allowed};
use super::proof::{Justification, Proof, Scheme};
use crate::coding::{Code, Registry, Verdict};
use crate::syntax::{Formula, TheoryId};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CheckFailure {
    Empty,
    NotAnInstance(Scheme),
    SchemeNotInLogic(Scheme),
    NoSuchExtra(usize),
    /// A rule cites a line at or after itself.
    ForwardReference(usize),
    MpShape,
    GenShape,
    NecShape,
    /// The cited code is not a proof.
    NotAProof(Code),
    CitedConclusion(Code),
    CitedInvalid(Code),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckError {
    pub line: usize,
    pub failure: CheckFailure,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.failure {
            CheckFailure::Empty => f.write_str("empty proof"),
            CheckFailure::NotAnInstance(s) => write!(f, "not an instance of scheme {}", s.tag()),
            CheckFailure::SchemeNotInLogic(s) => write!(f, "scheme {} is not available in this theory", s.tag()),
            CheckFailure::NoSuchExtra(i) => write!(f, "theory has no extra axiom {i} matching this line"),
            CheckFailure::ForwardReference(i) => write!(f, "reference to line {i} is not to an earlier line"),
            CheckFailure::MpShape => f.write_str("modus ponens premises do not fit"),
            CheckFailure::GenShape => f.write_str("generalization does not fit"),
            CheckFailure::NecShape => f.write_str("necessitation does not fit"),
            CheckFailure::NotAProof(c) => write!(f, "code {c} is not a proof"),
            CheckFailure::CitedConclusion(c) => write!(f, "proof {c} concludes a different formula"),
            CheckFailure::CitedInvalid(c) => write!(f, "proof {c} does not check"),
        }
    }
}

impl core::error::Error for CheckError {}

pub fn check_proof(reg: &Registry, theory: &TheoryId, p: &Proof) -> Result<(), CheckError> {
    if p.is_empty() {
        return Err(CheckError { line: 0, failure: CheckFailure::Empty });
    }
    for (n, line) in p.lines.iter().enumerate() {
        let fail = |failure| Err(CheckError { line: n, failure });
        let earlier = |i: usize| if i < n { Ok(&p.lines[i].formula) } else { Err(CheckFailure::ForwardReference(i)) };
        let phi = &line.formula;
        let outcome: Result<(), CheckFailure> = match &line.just {
            Justification::Axiom(s) => {
                if !scheme_allowed(theory, *s) {
                    Err(CheckFailure::SchemeNotInLogic(*s))
                } else if is_axiom(reg, *s, phi) {
                    Ok(())
                } else {
                    Err(CheckFailure::NotAnInstance(*s))
                }
            }
            Justification::Extra(i) => match theory.extra.get(*i) {
                Some(x) if x == phi => Ok(()),
                _ => Err(CheckFailure::NoSuchExtra(*i)),
            },
            Justification::Mp(i, j) => earlier(*i).and_then(|imp| {
                let ant = earlier(*j)?;
                match imp {
                    Formula::Imp(a, b) if **a == *ant && **b == *phi => Ok(()),
                    _ => Err(CheckFailure::MpShape),
                }
            }),
            Justification::Gen(i, x) => earlier(*i).and_then(|a| match phi {
                Formula::Forall(y, body) if y == x && **body == *a => Ok(()),
                _ => Err(CheckFailure::GenShape),
            }),
            Justification::Nec(i) => earlier(*i).and_then(|a| match phi {
                Formula::Box(body) if **body == *a => Ok(()),
                _ => Err(CheckFailure::NecShape),
            }),
            Justification::Cited(c) => cited(reg, theory, *c, phi),
        };
        if let Err(failure) = outcome {
            return fail(failure);
        }
    }
    Ok(())
}

fn cited(reg: &Registry, theory: &TheoryId, c: Code, phi: &Formula) -> Result<(), CheckFailure> {
    let proof = reg.proof(c).map_err(|_| CheckFailure::NotAProof(c))?;
    if proof.conclusion() != Some(phi) {
        return Err(CheckFailure::CitedConclusion(c));
    }
    if proof_code_checks(reg, theory, c) {
        Ok(())
    } else {
        Err(CheckFailure::CitedInvalid(c))
    }
}

/// Whether `code` is a proof that checks under `theory`. Verdicts are cached
/// in the registry; a proof reached again while it is being checked is a
/// circular citation and counts as invalid.
pub fn proof_code_checks(reg: &Registry, theory: &TheoryId, code: Code) -> bool {
    let Ok(code) = reg.resolve(code) else { return false };
    match reg.verdict(theory, code) {
        Some(Verdict::Valid) => return true,
        Some(Verdict::Invalid) | Some(Verdict::Checking) => return false,
        None => {}
    }
    let Ok(proof) = reg.proof(code) else { return false };
    reg.set_verdict(theory, code, Verdict::Checking);
    let ok = check_proof(reg, theory, &proof).is_ok();
    reg.set_verdict(theory, code, if ok { Verdict::Valid } else { Verdict::Invalid });
    ok
}
