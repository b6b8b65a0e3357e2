//! Provability translations over seeded theorem stores.

use boxarith_core::classes::{classify, FormulaClass};
use boxarith_core::coding::Registry;
use boxarith_core::kernel::TheoremStore;
use boxarith_core::syntax::{Formula, Logic, TheoryId};
use boxarith_core::translate::PrTag;
use boxarith_corpus::oracle::translation_holds;
use boxarith_corpus::Corpus;
use proptest::prelude::*;

fn seeded(seed: u64, theory: &TheoryId) -> (Registry, TheoremStore, Formula) {
    let mut c = Corpus::new(seed);
    let phi = c.sigma_b(3);
    let reg = Registry::new();
    let mut store = TheoremStore::new();
    c.seed_store(&reg, theory, &mut store, &phi);
    (reg, store, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn necessitation_closure_carries_pi_to_rho(seed in any::<u64>()) {
        let th: TheoryId = Logic::K.into();
        let (reg, mut store, phi) = seeded(seed, &th);
        prop_assume!(classify(&phi).contains(FormulaClass::SIGMA_B));
        store.nec_close_to_depth(&reg, &th, phi.modal_depth() + 1);
        if translation_holds(&reg, &th, PrTag::Pi, &phi) {
            prop_assert!(translation_holds(&reg, &th, PrTag::Rho, &phi), "{}", phi);
        }
    }

    #[test]
    fn box_elimination_closure_carries_rho_to_pi(seed in any::<u64>()) {
        let th: TheoryId = Logic::KT.into();
        let (reg, mut store, phi) = seeded(seed, &th);
        store.nec_close_to_depth(&reg, &th, 2);
        store.box_elim_close(&reg, &th).unwrap();
        prop_assert!(store.is_box_elim_closed(&reg, &th));
        if translation_holds(&reg, &th, PrTag::Rho, &phi) {
            prop_assert!(translation_holds(&reg, &th, PrTag::Pi, &phi), "{}", phi);
        }
    }

    #[test]
    fn strengthened_translation_implies_the_plain_one(seed in any::<u64>()) {
        let th: TheoryId = Logic::K.into();
        let (reg, _, phi) = seeded(seed, &th);
        if translation_holds(&reg, &th, PrTag::PiPrime, &phi) {
            prop_assert!(translation_holds(&reg, &th, PrTag::Pi, &phi), "{}", phi);
        }
    }
}

#[test]
fn seeding_makes_some_translations_true() {
    let th: TheoryId = Logic::K.into();
    let hits = (0..64u64)
        .filter(|&s| {
            let (reg, mut store, phi) = seeded(s, &th);
            store.nec_close_to_depth(&reg, &th, phi.modal_depth() + 1);
            phi.has_box() && translation_holds(&reg, &th, PrTag::Rho, &phi)
        })
        .count();
    assert!(hits >= 4, "only {hits} boxed sentences became true");
}
