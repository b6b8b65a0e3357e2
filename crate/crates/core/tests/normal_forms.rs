//! Normal forms of the boxed classes, checked against the Triv and Ver
//! models.

use boxarith_core::classes::{
    boxes_disjunction, classify, delta_b_sentence_to_boxes, minus, positive_sigma1_form, sigma_b_to_exists_delta_b,
    star, FormulaClass,
};
use boxarith_core::coding::Registry;
use boxarith_core::eval::{eval_sentence, Model};
use boxarith_core::syntax::{free_vars, Formula};
use boxarith_corpus::oracle::{annotation_count, box_models, close_annotations, decide};
use boxarith_corpus::Corpus;
use proptest::prelude::*;

/// Scanner for the positive existential form.
fn positive(phi: &Formula) -> bool {
    match phi {
        Formula::Not(a) => matches!(**a, Formula::Prf(..) | Formula::InW(..)),
        Formula::Imp(..) | Formula::Iff(..) | Formula::Le(..) | Formula::Lt(..) => false,
        Formula::And(a, b) | Formula::Or(a, b) => positive(a) && positive(b),
        Formula::Exists(_, a) | Formula::Forall(_, a) | Formula::BExists(_, _, a) | Formula::BForall(_, _, a) => {
            positive(a)
        }
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sigma_b_is_an_existential_over_delta_b(seed in any::<u64>()) {
        let phi = Corpus::new(seed).sigma_b(3);
        prop_assume!(classify(&phi).contains(FormulaClass::SIGMA_B));
        let (v, psi) = sigma_b_to_exists_delta_b(&phi).unwrap();
        prop_assert!(classify(&psi).contains(FormulaClass::DELTA_B), "{}", psi);
        prop_assert!(free_vars(&psi).iter().all(|x| *x == v));
        let ex = Formula::exists(v, psi);
        let r = Registry::new();
        for m in box_models(&r, 24) {
            prop_assert_eq!(eval_sentence(&phi, &m), eval_sentence(&ex, &m), "{}", phi);
        }
    }

    #[test]
    fn delta_b_sentences_are_disjunctions_of_boxes(seed in any::<u64>()) {
        let phi = Corpus::new(seed).delta_b(4);
        let r = Registry::new();
        let psis = delta_b_sentence_to_boxes(&r, &phi).unwrap();
        let [triv, ver] = box_models(&r, 0);
        prop_assert_eq!(decide(&phi, &triv), decide(&boxes_disjunction(&psis), &triv), "{}", phi);
        prop_assert_eq!(decide(&phi, &ver), !psis.is_empty(), "{}", phi);
    }

    #[test]
    fn positive_form_drops_negations(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let phi = Formula::exists(boxarith_core::syntax::Var::new("z"), c.delta0(&[], 3));
        let pos = positive_sigma1_form(&phi).unwrap();
        prop_assert!(positive(&pos), "{}", pos);
        prop_assert!(classify(&pos).contains(FormulaClass::SIGMA1));
    }

    #[test]
    fn stripping_boxes_preserves_truth(seed in any::<u64>()) {
        let phi = Corpus::new(seed).sigma_b(3);
        let r = Registry::new();
        let m = Model::triv(&r, 16);
        let out = minus(&phi).unwrap();
        if eval_sentence(&phi, &m).unwrap().is_true() {
            prop_assert!(eval_sentence(&out, &m).unwrap().is_true(), "{}", phi);
        }
    }

    #[test]
    fn annotation_variables_are_fresh(seed in any::<u64>()) {
        let phi = Corpus::new(seed).delta_b(4);
        let (s, vars) = star(&phi).unwrap();
        prop_assert_eq!(vars.len(), annotation_count(&phi));
        let fv = free_vars(&phi);
        prop_assert!(vars.iter().all(|v| !fv.contains(v)));
        prop_assert!(classify(&s).contains(FormulaClass::DELTA_B));
        prop_assert_eq!(free_vars(&s).len(), vars.len());
    }

    #[test]
    fn annotated_form_implies_the_original(seed in any::<u64>()) {
        let phi = Corpus::new(seed).delta_b(3);
        let (s, vars) = star(&phi).unwrap();
        prop_assume!(vars.len() <= 4);
        let r = Registry::new();
        for m in box_models(&r, 0) {
            if decide(&close_annotations(&s, &vars), &m) {
                prop_assert!(decide(&phi, &m), "{}", phi);
            }
        }
    }
}

/// The converse direction holds when no bounded universal scopes over a
/// choice; a universal over a disjunction can need a different choice
/// per instance.
#[test]
fn annotations_cannot_vary_under_a_bounded_universal() {
    let phi = boxarith_core::syntax::parse_formula("forall y < #2 (box y=#0 | box y=#1)").unwrap();
    let r = Registry::new();
    let (s, vars) = star(&phi).unwrap();
    let [triv, _] = box_models(&r, 0);
    assert!(decide(&phi, &triv));
    assert!(!decide(&close_annotations(&s, &vars), &triv));
}
