use alloc::vec::Vec;
use core::fmt;

use super::builder::ProofBuilder;
use super::check::{check_proof, CheckError};
use super::proof::{Proof, Scheme};
use super::synth::{bound, Synth};
use crate::classes::{classify, minus, star, ClassError, FormulaClass};
use crate::coding::Registry;
use crate::eval::{eval_term, Env, Model};
use crate::syntax::{numeral, substitute, Formula, Logic, TheoryId, Var};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtractError {
    Class(ClassError),
    NotASentence,
    /// The theory has no K axiom.
    NoModalAxioms,
    /// Wrong number of witness values.
    Arity { expected: usize, found: usize },
    /// The given proof does not conclude the boxed annotated form.
    WrongConclusion,
    Check(CheckError),
    /// The boxed annotated form is false at this point, so the theory proves
    /// the box of a false bounded sentence.
    Inconsistent(Formula),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::Class(e) => e.fmt(f),
            ExtractError::NotASentence => f.write_str("expected a sentence"),
            ExtractError::NoModalAxioms => f.write_str("theory has no K axiom"),
            ExtractError::Arity { expected, found } => write!(f, "expected {expected} witness values, got {found}"),
            ExtractError::WrongConclusion => f.write_str("proof does not conclude the expected boxed sentence"),
            ExtractError::Check(e) => write!(f, "proof does not check: {e}"),
            ExtractError::Inconsistent(x) => write!(f, "the box of the false sentence {x} is provable"),
        }
    }
}

impl core::error::Error for ExtractError {}

/// The sentence `box a` that [`extract_from_star_minus`] expects a proof of:
/// `a` is the boxes-stripped annotated form of `phi` with the annotation
/// variables set to `ps`.
pub fn star_minus_instance(phi: &Formula, ps: &[usize]) -> Result<Formula, ExtractError> {
    let (s, vars) = star(phi).map_err(ExtractError::Class)?;
    if vars.len() != ps.len() {
        return Err(ExtractError::Arity { expected: vars.len(), found: ps.len() });
    }
    let a = minus(&s).map_err(ExtractError::Class)?;
    Ok(Formula::boxed(instantiate(&a, &vars, ps)))
}

fn instantiate(a: &Formula, vars: &[Var], ps: &[usize]) -> Formula {
    vars.iter()
        .zip(ps)
        .fold(a.clone(), |acc, (v, p)| substitute(&acc, v, &numeral(*p)))
}

/// From a `theory`-proof `q` of the boxed instance given by
/// [`star_minus_instance`], a `theory`-proof of the Delta(B) sentence `phi`.
pub fn extract_from_star_minus(
    reg: &Registry,
    theory: &TheoryId,
    phi: &Formula,
    ps: &[usize],
    q: &Proof,
) -> Result<Proof, ExtractError> {
    if !phi.is_sentence() {
        return Err(ExtractError::NotASentence);
    }
    if theory.base == Logic::PaBox {
        return Err(ExtractError::NoModalAxioms);
    }
    let target = star_minus_instance(phi, ps)?;
    if q.conclusion() != Some(&target) {
        return Err(ExtractError::WrongConclusion);
    }
    check_proof(reg, theory, q).map_err(ExtractError::Check)?;
    let Formula::Box(a) = &target else { unreachable!() };
    let mut b = ProofBuilder::new();
    let qa = b.import(q);
    let line = Extractor { reg, b: &mut b }.extract(phi, a, qa)?;
    Ok(b.finish(line))
}

struct Extractor<'a, 'r> {
    reg: &'r Registry,
    b: &'a mut ProofBuilder,
}

impl Extractor<'_, '_> {
    fn synth(&mut self) -> Synth<'_, '_> {
        Synth::new(self.reg, Model::triv(self.reg, 0), self.b)
    }

    /// From lines `box P1, ..., box Pn`, the line `box goal`, given that
    /// `P1 -> ... -> Pn -> goal` is a tautology.
    fn box_chain(&mut self, premises: &[usize], goal: Formula) -> usize {
        let inner: Vec<Formula> = premises
            .iter()
            .map(|&i| match self.b.formula(i) {
                Formula::Box(p) => (**p).clone(),
                other => panic!("not a boxed line: {other}"),
            })
            .collect();
        let taut = inner.iter().rev().fold(goal, |acc, p| Formula::imp(p.clone(), acc));
        let t = self.b.axiom(Scheme::Taut, taut);
        let mut cur = self.b.nec(t);
        for (&line, p) in premises.iter().zip(&inner) {
            let Formula::Box(imp) = self.b.formula(cur).clone() else { unreachable!() };
            let Formula::Imp(_, rest) = *imp else { unreachable!() };
            let k = Formula::imp(
                self.b.formula(cur).clone(),
                Formula::imp(Formula::boxed(p.clone()), Formula::boxed(*rest)),
            );
            let k = self.b.axiom(Scheme::K, k);
            let m = self.b.mp(k, cur);
            cur = self.b.mp(m, line);
        }
        cur
    }

    /// `box #i=#j` or `box ~#i=#j`, whichever is true.
    fn boxed_fact(&mut self, fact: Formula) -> usize {
        let line = self.b.axiom(Scheme::Arith, fact);
        self.b.nec(line)
    }

    /// `line` proves `box a`; returns a line proving `phi`.
    fn extract(&mut self, phi: &Formula, a: &Formula, line: usize) -> Result<usize, ExtractError> {
        if classify(phi).contains(FormulaClass::DELTA0) {
            let (l, truth) = self.synth().delta0(phi);
            return if truth { Ok(l) } else { Err(ExtractError::Inconsistent(phi.clone())) };
        }
        match (phi, a) {
            (Formula::Box(_), _) => Ok(line),
            (Formula::And(l, r), Formula::And(al, ar)) => {
                let bl = self.box_chain(&[line], (**al).clone());
                let ll = self.extract(l, al, bl)?;
                let br = self.box_chain(&[line], (**ar).clone());
                let lr = self.extract(r, ar, br)?;
                Ok(self.b.chain(&[ll, lr], phi.clone()))
            }
            (Formula::Or(l, r), Formula::Or(left, right)) => {
                let (Formula::And(sel, al), Formula::And(_, ar)) = (&**left, &**right) else {
                    unreachable!("annotated disjunction")
                };
                let Formula::Eq(w, _) = &**sel else { unreachable!("selector") };
                let w = eval_term(self.reg, w, &Env::new()).expect("closed selector");
                let (side, a_side, fact) = if w == 0u32.into() {
                    (l, al, (**sel).clone())
                } else {
                    (r, ar, Formula::not((**sel).clone()))
                };
                let nf = self.boxed_fact(fact);
                let bs = self.box_chain(&[line, nf], (**a_side).clone());
                let ls = self.extract(side, a_side, bs)?;
                Ok(self.b.chain(&[ls], phi.clone()))
            }
            (Formula::BForall(y, t, body), Formula::BForall(_, _, abody)) => {
                let k = bound(self.reg, t);
                let iff_a = self.synth().expansion(a, y, abody, k, true);
                let n_iff = self.b.nec(iff_a);
                let mut premises = Vec::with_capacity(k + 1);
                for i in 0..k {
                    let ai = substitute(abody, y, &numeral(i));
                    let bi = self.box_chain(&[n_iff, line], ai.clone());
                    premises.push(self.extract(&substitute(body, y, &numeral(i)), &ai, bi)?);
                }
                premises.push(self.synth().expansion(phi, y, body, k, true));
                Ok(self.b.chain(&premises, phi.clone()))
            }
            (Formula::BExists(y, t, body), Formula::BExists(_, _, abody)) => {
                let Formula::And(pin, _) = &**abody else { unreachable!("annotated bounded existential") };
                let Formula::Eq(_, qt) = &**pin else { unreachable!("pin") };
                let k = bound(self.reg, t);
                let q = bound(self.reg, qt);
                if q >= k {
                    return Err(ExtractError::Inconsistent((*a).clone()));
                }
                let iff_a = self.synth().expansion(a, y, abody, k, false);
                let mut premises = alloc::vec![self.b.nec(iff_a), line];
                for i in (0..k).filter(|&i| i != q) {
                    let neq = Formula::not(Formula::eq(numeral(i), qt.clone()));
                    premises.push(self.boxed_fact(neq));
                }
                let Formula::And(_, ab) = substitute(abody, y, &numeral(q)) else { unreachable!() };
                let bq = self.box_chain(&premises, (*ab).clone());
                let lq = self.extract(&substitute(body, y, &numeral(q)), &ab, bq)?;
                let iff = self.synth().expansion(phi, y, body, k, false);
                Ok(self.b.chain(&[lq, iff], phi.clone()))
            }
            _ => Err(ExtractError::Class(ClassError::NotIn {
                needed: FormulaClass::DELTA_B,
                found: classify(phi),
            })),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{prove_true_sigma1, Line, Justification};
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// A proof of the boxed instance, from a proof of its body.
    fn boxed_proof(reg: &Registry, target: &Formula) -> Proof {
        let Formula::Box(a) = target else { panic!() };
        let mut q = prove_true_sigma1(reg, a, 16).expect("true instance");
        let n = q.len() - 1;
        q.lines.push(Line { formula: target.clone(), just: Justification::Nec(n) });
        q
    }

    #[test]
    fn extracts_through_every_connective() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let cases: [(&str, &[usize]); 5] = [
            ("box #2=#2", &[]),
            ("(box 0=0 & #1<#2)", &[]),
            ("(box bot | box 0=0)", &[1]),
            ("forall y < #2 box y<#3", &[]),
            ("exists y < #3 box y=#2", &[2]),
        ];
        for (src, ps) in cases {
            let phi = p(src);
            let target = star_minus_instance(&phi, ps).unwrap();
            let q = boxed_proof(&r, &target);
            let out = extract_from_star_minus(&r, &th, &phi, ps, &q).unwrap();
            assert_eq!(out.conclusion(), Some(&phi), "{src}");
            assert_eq!(check_proof(&r, &th, &out), Ok(()), "{src}\n{out:?}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let phi = p("(box bot | box 0=0)");
        assert_eq!(
            star_minus_instance(&phi, &[]),
            Err(ExtractError::Arity { expected: 1, found: 0 })
        );
        let q: Proof = "ax:refl 0=0; nec:0 box 0=0".parse().unwrap();
        assert_eq!(extract_from_star_minus(&r, &th, &phi, &[1], &q), Err(ExtractError::WrongConclusion));
        assert_eq!(
            extract_from_star_minus(&r, &Logic::PaBox.into(), &phi, &[1], &q),
            Err(ExtractError::NoModalAxioms)
        );
    }
}
