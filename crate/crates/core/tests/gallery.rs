//! Self-referential constructions over random parameters.

use boxarith_core::classes::{classify, FormulaClass};
use boxarith_core::coding::Registry;
use boxarith_core::constructions::{audit_cross_references, build, GalleryKind};
use boxarith_core::eval::{eval_sentence, Flavor, Model};
use boxarith_core::syntax::{free_vars, Formula, Logic, TheoryId, Var};
use boxarith_corpus::Corpus;
use proptest::prelude::*;
use rand::Rng;

fn kinds(c: &mut Corpus) -> Vec<GalleryKind> {
    let x = Var::new("x");
    let delta = c.delta0(std::slice::from_ref(&x), 2);
    let phi = c.delta0(&[], 2);
    let unary = Formula::boxed(c.delta0(std::slice::from_ref(&x), 1));
    let psis = (0..c.rng().gen_range(1..4)).map(|_| c.delta0(&[], 1)).collect();
    vec![
        GalleryKind::DisjunctPair { delta: delta.clone(), phi: phi.clone() },
        GalleryKind::Sigma1Pair { delta: delta.clone() },
        GalleryKind::BoxFamily { delta: delta.clone(), psis },
        GalleryKind::CorrectnessWitness { delta, phi },
        GalleryKind::BoxWitness { phi: unary.clone() },
        GalleryKind::Godel,
        GalleryKind::WeakRepresentation { phi: unary },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prf_atoms_name_the_intended_sentences(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let reg = Registry::new();
        let th: TheoryId = Logic::K4.into();
        for kind in kinds(&mut c) {
            let g = build(&reg, &th, &kind).unwrap();
            prop_assert_eq!(audit_cross_references(&g), Ok(()), "{}", kind.tag());
            for e in &g.entries {
                // The index of a weak representation defines a set, so it
                // keeps its variable.
                let open = if e.label == "index" { 1 } else { 0 };
                prop_assert!(free_vars(&e.formula).len() <= open, "{} {}", kind.tag(), e.label);
                prop_assert_eq!(&*reg.formula(e.code).unwrap(), &e.formula);
            }
        }
    }

    #[test]
    fn race_sentences_stay_in_their_classes(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let reg = Registry::new();
        let th: TheoryId = Logic::K.into();
        for kind in kinds(&mut c) {
            let g = build(&reg, &th, &kind).unwrap();
            let class = |label: &str| classify(&g.get(label).unwrap().formula);
            match kind {
                GalleryKind::Sigma1Pair { .. } => {
                    prop_assert!(class("sigma0").contains(FormulaClass::SIGMA1));
                    prop_assert!(class("sigma1").contains(FormulaClass::SIGMA1));
                }
                GalleryKind::BoxWitness { .. } => prop_assert!(class("psi").contains(FormulaClass::SIGMA_B)),
                GalleryKind::CorrectnessWitness { .. } => prop_assert!(class("sigma").contains(FormulaClass::SIGMA1)),
                _ => {}
            }
        }
    }

    #[test]
    fn a_delta_witness_settles_the_disjunct_pair(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let x = Var::new("x");
        let delta = c.delta0(std::slice::from_ref(&x), 2);
        let phi = c.delta0(&[], 1);
        let reg = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&reg, &th, &GalleryKind::DisjunctPair { delta: delta.clone(), phi }).unwrap();
        let m = Model::new(Flavor::Prov(th), 32, &reg);
        let witnessed = Formula::exists(x, delta);
        if eval_sentence(&witnessed, &m).unwrap().is_true() {
            let either = Formula::or(g.get("psi0").unwrap().formula.clone(), g.get("psi1").unwrap().formula.clone());
            prop_assert!(eval_sentence(&either, &m).unwrap().is_true());
        }
    }
}
