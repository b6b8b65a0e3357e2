//! Translations of formulas with boxes into box-free arithmetic.

use alloc::boxed::Box;
use core::fmt;
use core::str::FromStr;

use crate::coding::Registry;
use crate::syntax::{numeral, CodeSub, Formula, FreshVars, Term, TheoryId, Var};

/// Replaces every box by its body.
pub fn alpha(phi: &Formula) -> Formula {
    map_boxes(phi, &mut |body| alpha(body))
}

/// Replaces every boxed subformula by `0=0`.
pub fn beta(phi: &Formula) -> Formula {
    map_boxes(phi, &mut |_| Formula::top())
}

/// Rebuilds `phi` with each outermost box `box A` replaced by `f(A)`.
fn map_boxes(phi: &Formula, f: &mut dyn FnMut(&Formula) -> Formula) -> Formula {
    let mut rec = |a: &Formula| Box::new(map_boxes(a, f));
    match phi {
        Formula::Box(a) => f(a),
        Formula::Not(a) => Formula::Not(rec(a)),
        Formula::And(a, b) => {
            let a = rec(a);
            Formula::And(a, rec(b))
        }
        Formula::Or(a, b) => {
            let a = rec(a);
            Formula::Or(a, rec(b))
        }
        Formula::Imp(a, b) => {
            let a = rec(a);
            Formula::Imp(a, rec(b))
        }
        Formula::Iff(a, b) => {
            let a = rec(a);
            Formula::Iff(a, rec(b))
        }
        Formula::Forall(v, a) => Formula::Forall(v.clone(), rec(a)),
        Formula::Exists(v, a) => Formula::Exists(v.clone(), rec(a)),
        Formula::BForall(v, t, a) => Formula::BForall(v.clone(), t.clone(), rec(a)),
        Formula::BExists(v, t, a) => Formula::BExists(v.clone(), t.clone(), rec(a)),
        atom => atom.clone(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrTag {
    /// `box A` becomes "A is provable".
    Pi,
    /// `box A` becomes "A is provable, and A" (translated).
    PiPrime,
    /// `box A` becomes "`box A` is provable".
    Rho,
}

impl PrTag {
    pub fn tag(self) -> &'static str {
        match self {
            PrTag::Pi => "pi",
            PrTag::PiPrime => "piprime",
            PrTag::Rho => "rho",
        }
    }
}

impl fmt::Display for PrTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PrTag {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pi" => Ok(PrTag::Pi),
            "piprime" => Ok(PrTag::PiPrime),
            "rho" => Ok(PrTag::Rho),
            _ => Err(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrVariant {
    pub tag: PrTag,
    pub theory: TheoryId,
}

impl PrVariant {
    pub fn new(tag: PrTag, theory: TheoryId) -> PrVariant {
        PrVariant { tag, theory }
    }
}

/// The code of `phi` as a term: a numeral for sentences (interning `phi`),
/// the dotted code otherwise.
pub fn code_term(reg: &Registry, phi: &Formula) -> Term {
    if phi.is_sentence() {
        numeral(reg.code_of_formula(phi))
    } else {
        Term::CodeSub(Box::new(CodeSub::dotted(phi.clone())))
    }
}

/// `exists y prf[T](code, y)`.
pub fn provability(theory: &TheoryId, code: Term, y: Var) -> Formula {
    let prf = Formula::Prf(theory.clone(), code, Term::Var(y.clone()));
    Formula::exists(y, prf)
}

pub fn pr_translate(reg: &Registry, v: &PrVariant, phi: &Formula) -> Formula {
    let mut fresh = FreshVars::above([phi]);
    translate(reg, v, phi, &mut fresh)
}

fn translate(reg: &Registry, v: &PrVariant, phi: &Formula, fresh: &mut FreshVars) -> Formula {
    map_boxes(phi, &mut |body| {
        let boxed = Formula::boxed(body.clone());
        match v.tag {
            PrTag::Pi => provability(&v.theory, code_term(reg, body), fresh.next()),
            PrTag::PiPrime => {
                let pr = provability(&v.theory, code_term(reg, body), fresh.next());
                Formula::and(pr, translate(reg, v, body, fresh))
            }
            PrTag::Rho => provability(&v.theory, code_term(reg, &boxed), fresh.next()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_sentence, Flavor, Model, Truth};
    use crate::syntax::{parse_formula, Logic};
    use alloc::format;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn erasing_and_trivializing() {
        assert_eq!(alpha(&p("box 0=0")), p("0=0"));
        assert_eq!(alpha(&p("forall x box x=x")), p("forall x x=x"));
        assert_eq!(alpha(&p("box box bot")), p("bot"));
        assert_eq!(beta(&p("box bot")), p("0=0"));
        assert_eq!(beta(&p("(box x=0 | ~x<y)")), p("(0=0 | ~x<y)"));
        let la = p("forall x exists y < x (x*y)=S(0)");
        assert_eq!(alpha(&la), la);
        assert_eq!(beta(&la), la);
    }

    #[test]
    fn provability_clauses() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let v = |tag| PrVariant::new(tag, th.clone());
        assert_eq!(pr_translate(&r, &v(PrTag::Pi), &p("box x=0")), p("exists v0 prf[k](code[x=0]{x:=x},v0)"));
        let out = pr_translate(&r, &v(PrTag::PiPrime), &p("box box bot"));
        let inner = r.lookup_formula(&p("bot")).unwrap();
        let outer = r.lookup_formula(&p("box bot")).unwrap();
        assert_eq!(
            out,
            p(&format!(
                "(exists v0 prf[k](#{outer},v0) & (exists v1 prf[k](#{inner},v1) & bot))"
            ))
        );
        let rho = pr_translate(&r, &v(PrTag::Rho), &p("box bot"));
        assert_eq!(rho, p(&format!("exists v0 prf[k](#{outer},v0)")));
        let la = p("exists x x<x");
        assert_eq!(pr_translate(&r, &v(PrTag::Rho), &la), la);
    }

    #[test]
    fn pi_matches_the_provability_model() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let q: crate::kernel::Proof = "ax:refl 0=0; nec:0 box 0=0".parse().unwrap();
        r.code_of_proof(&q);
        let m = Model::new(Flavor::Prov(th.clone()), 64, &r);
        for src in ["box 0=0", "box box 0=0", "(box bot | box 0=0)", "exists x < #2 box x=0"] {
            let phi = p(src);
            let pi = pr_translate(&r, &PrVariant::new(PrTag::Pi, th.clone()), &phi);
            let m2 = Model::new(Flavor::Prov(th.clone()), r.len(), &r);
            assert_eq!(eval_sentence(&phi, &m2), eval_sentence(&pi, &m2), "{src}");
        }
        assert_eq!(eval_sentence(&p("box box 0=0"), &m), Ok(Truth::True));
    }
}
