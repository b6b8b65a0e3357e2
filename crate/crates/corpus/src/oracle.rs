//! Independent checks shared by the property tests and the acceptance
//! suite.

use boxarith_core::classes::{classify, FormulaClass};
use boxarith_core::coding::Registry;
use boxarith_core::eval::{eval_sentence, Model, Truth};
use boxarith_core::syntax::{numeral, Formula, TheoryId, Var};
use boxarith_core::translate::{pr_translate, PrTag, PrVariant};

/// Upper bound on the annotation values worth trying: generated bounds
/// never exceed 5, and all nonzero selector values behave alike.
pub const ANNOTATION_BOUND: u32 = 6;

/// Number of annotation variables the witness-annotated form must add:
/// one per disjunction and per bounded existential outside boxes and
/// outside bounded (box-free) parts.
pub fn annotation_count(phi: &Formula) -> usize {
    if classify(phi).contains(FormulaClass::DELTA0) {
        return 0;
    }
    match phi {
        Formula::Box(_) => 0,
        Formula::And(a, b) => annotation_count(a) + annotation_count(b),
        Formula::Or(a, b) => 1 + annotation_count(a) + annotation_count(b),
        Formula::BForall(_, _, a) => annotation_count(a),
        Formula::BExists(_, _, a) => 1 + annotation_count(a),
        other => panic!("not a Delta(B) formula: {other}"),
    }
}

/// `exists vs < #ANNOTATION_BOUND body`, which for generated inputs is
/// exactly `exists vs body`.
pub fn close_annotations(body: &Formula, vars: &[Var]) -> Formula {
    vars.iter().rev().fold(body.clone(), |acc, v| {
        Formula::bexists(v.clone(), numeral(ANNOTATION_BOUND), acc)
    })
}

/// Truth of a sentence whose quantifiers are all bounded.
pub fn decide(phi: &Formula, model: &Model<'_>) -> bool {
    match eval_sentence(phi, model).expect("closed sentence") {
        Truth::True => true,
        Truth::False => false,
        Truth::Unknown => panic!("bounded sentence evaluated to unknown: {phi}"),
    }
}

/// The Triv and Ver models over `reg` at `budget`.
pub fn box_models(reg: &Registry, budget: usize) -> [Model<'_>; 2] {
    [Model::triv(reg, budget), Model::ver(reg, budget)]
}

/// All annotation value vectors of length `n` below [`ANNOTATION_BOUND`],
/// in lexicographic order.
pub fn annotations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let b = ANNOTATION_BOUND as usize;
    (0..b.pow(n as u32)).map(move |mut i| {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = i % b;
            i /= b;
        }
        out
    })
}

/// Truth of the `tag` translation of `phi`, searching every proof code in
/// the registry.
pub fn translation_holds(reg: &Registry, theory: &TheoryId, tag: PrTag, phi: &Formula) -> bool {
    let out = pr_translate(reg, &PrVariant::new(tag, theory.clone()), phi);
    let m = Model::triv(reg, reg.len());
    eval_sentence(&out, &m).expect("translations of sentences are closed").is_true()
}
