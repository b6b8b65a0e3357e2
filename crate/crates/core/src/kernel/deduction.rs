use alloc::vec::Vec;
use core::fmt;

use super::builder::ProofBuilder;
use super::check::{check_proof, proof_code_checks, CheckError};
use super::proof::{Justification, Proof, Scheme};
use super::synth::Synth;
use crate::classes::{classify, FormulaClass};
use crate::coding::{Code, Registry};
use crate::eval::Model;
use crate::syntax::{Formula, Logic, TheoryId};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DeductionError {
    /// The base logic lacks the `box A -> box box A` scheme.
    BaseLogic(Logic),
    /// A hypothesis has free variables.
    OpenHypothesis(Formula),
    /// A hypothesis is not built from boxes and bounded sentences by `&`
    /// and `|`.
    UnsupportedHypothesis(Formula),
    Check(CheckError),
    /// A cited proof only checks with the hypotheses.
    Citation(Code),
}

impl fmt::Display for DeductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeductionError::BaseLogic(l) => write!(f, "base logic {} has no 4 axiom", l.tag()),
            DeductionError::OpenHypothesis(x) => write!(f, "hypothesis {x} is not a sentence"),
            DeductionError::UnsupportedHypothesis(x) => write!(f, "cannot box hypothesis {x}"),
            DeductionError::Check(e) => write!(f, "proof does not check with the hypotheses: {e}"),
            DeductionError::Citation(c) => write!(f, "cited proof {c} needs the hypotheses"),
        }
    }
}

impl core::error::Error for DeductionError {}

/// Turns a proof `p` under `theory` plus the hypotheses `xs` into a
/// `theory`-proof of `conj(xs) -> A`, `A` being the conclusion of `p`.
/// In `p`, extra axiom `theory.extra.len() + j` refers to `xs[j]`.
pub fn boxed_deduction(
    reg: &Registry,
    theory: &TheoryId,
    xs: &[Formula],
    p: &Proof,
) -> Result<Proof, DeductionError> {
    if !matches!(theory.base, Logic::K4 | Logic::S4 | Logic::S41 | Logic::GL) {
        return Err(DeductionError::BaseLogic(theory.base));
    }
    if let Some(x) = xs.iter().find(|x| !x.is_sentence()) {
        return Err(DeductionError::OpenHypothesis(x.clone()));
    }
    let mut extra = theory.extra.clone();
    extra.extend(xs.iter().cloned());
    let extended = TheoryId { base: theory.base, extra };
    check_proof(reg, &extended, p).map_err(DeductionError::Check)?;
    if xs.is_empty() {
        return Ok(p.clone());
    }
    let base_extras = theory.extra.len();
    let s = Formula::conj(xs.iter().cloned());
    let imp = |a: &Formula| Formula::imp(s.clone(), a.clone());

    let mut b = ProofBuilder::new();
    let mut up = None;
    let mut out: Vec<usize> = Vec::with_capacity(p.len());
    for line in &p.lines {
        let psi = &line.formula;
        let derived = match &line.just {
            Justification::Axiom(scheme) => {
                let a = b.axiom(*scheme, psi.clone());
                b.chain(&[a], imp(psi))
            }
            Justification::Extra(i) if *i < base_extras => {
                let a = b.extra(*i, psi.clone());
                b.chain(&[a], imp(psi))
            }
            Justification::Extra(_) => b.axiom(Scheme::Taut, imp(psi)),
            Justification::Cited(c) => {
                if !proof_code_checks(reg, theory, *c) {
                    return Err(DeductionError::Citation(*c));
                }
                let a = b.cite(*c, psi.clone());
                b.chain(&[a], imp(psi))
            }
            Justification::Mp(i, j) => b.chain(&[out[*i], out[*j]], imp(psi)),
            Justification::Gen(i, x) => {
                let g = b.gen(out[*i], x.clone());
                let dist = Formula::imp(b.formula(g).clone(), imp(psi));
                let dist = b.axiom(Scheme::ForallDist, dist);
                b.mp(dist, g)
            }
            Justification::Nec(i) => {
                let n = b.nec(out[*i]);
                let k = Formula::imp(
                    b.formula(n).clone(),
                    Formula::imp(Formula::boxed(s.clone()), psi.clone()),
                );
                let k = b.axiom(Scheme::K, k);
                let m = b.mp(k, n);
                let u = match up {
                    Some(u) => u,
                    None => {
                        let u = derive_up(reg, &mut b, &s)?;
                        up = Some(u);
                        u
                    }
                };
                b.chain(&[u, m], imp(psi))
            }
        };
        out.push(derived);
    }
    Ok(b.finish(*out.last().expect("checked proofs are non-empty")))
}

/// A line `sigma -> box sigma`.
fn derive_up(reg: &Registry, b: &mut ProofBuilder, sigma: &Formula) -> Result<usize, DeductionError> {
    let goal = Formula::imp(sigma.clone(), Formula::boxed(sigma.clone()));
    if let Some(i) = b.find(&goal) {
        return Ok(i);
    }
    if sigma.is_sentence() && classify(sigma).contains(FormulaClass::DELTA0) {
        let (line, truth) = Synth::new(reg, Model::triv(reg, 0), b).delta0(sigma);
        let premise = if truth { b.nec(line) } else { line };
        return Ok(b.chain(&[premise], goal));
    }
    match sigma {
        Formula::Box(_) => Ok(b.axiom(Scheme::Four, goal)),
        Formula::And(l, r) => {
            let ul = derive_up(reg, b, l)?;
            let ur = derive_up(reg, b, r)?;
            // box l -> box (r -> sigma), then box (r -> sigma) -> (box r -> box sigma).
            let inner = Formula::imp((**r).clone(), sigma.clone());
            let t = b.axiom(Scheme::Taut, Formula::imp((**l).clone(), inner.clone()));
            let n = b.nec(t);
            let k1 = Formula::imp(
                b.formula(n).clone(),
                Formula::imp(Formula::boxed((**l).clone()), Formula::boxed(inner.clone())),
            );
            let k1 = b.axiom(Scheme::K, k1);
            let m1 = b.mp(k1, n);
            let k2 = Formula::imp(
                Formula::boxed(inner),
                Formula::imp(Formula::boxed((**r).clone()), Formula::boxed(sigma.clone())),
            );
            let k2 = b.axiom(Scheme::K, k2);
            Ok(b.chain(&[ul, ur, m1, k2], goal))
        }
        Formula::Or(l, r) => {
            let mut premises = Vec::with_capacity(4);
            for side in [l, r] {
                premises.push(derive_up(reg, b, side)?);
                let t = b.axiom(Scheme::Taut, Formula::imp((**side).clone(), sigma.clone()));
                let n = b.nec(t);
                let k = Formula::imp(
                    b.formula(n).clone(),
                    Formula::imp(Formula::boxed((**side).clone()), Formula::boxed(sigma.clone())),
                );
                let k = b.axiom(Scheme::K, k);
                premises.push(b.mp(k, n));
            }
            Ok(b.chain(&premises, goal))
        }
        _ => Err(DeductionError::UnsupportedHypothesis(sigma.clone())),
    }
}
