//! Proof synthesis and proof transformers produce proofs the checker
//! accepts.

use boxarith_core::classes::{classify, star, FormulaClass};
use boxarith_core::coding::Registry;
use boxarith_core::eval::{eval_sentence, Flavor, Model};
use boxarith_core::kernel::{
    boxed_deduction, check_proof, extract_from_star_minus, prove_delta0, prove_true_sigma1, prove_true_sigma_b,
    star_minus_instance, Proof, ProofBuilder, TheoremStore,
};
use boxarith_core::syntax::{Formula, Logic, TheoryId};
use boxarith_corpus::oracle::annotations;
use boxarith_corpus::Corpus;
use proptest::prelude::*;
use rand::Rng;

fn pa() -> TheoryId {
    Logic::PaBox.into()
}

/// A proof of a true bounded sentence or of the box of one.
fn prove_simple(reg: &Registry, x: &Formula) -> Option<Proof> {
    let (inner, boxed) = match x {
        Formula::Box(a) => (&**a, true),
        _ => (x, false),
    };
    let (p, truth) = prove_delta0(reg, inner)?;
    if !truth {
        return None;
    }
    let mut b = ProofBuilder::new();
    let mut line = b.import(&p);
    if boxed {
        line = b.nec(line);
    }
    Some(b.finish(line))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn true_existentials_are_proved(seed in any::<u64>()) {
        let (phi, k) = Corpus::new(seed).true_sigma1(50);
        let reg = Registry::new();
        let p = prove_true_sigma1(&reg, &phi, k as usize);
        prop_assert!(p.is_some(), "{}", phi);
        let p = p.unwrap();
        prop_assert_eq!(check_proof(&reg, &pa(), &p), Ok(()));
        prop_assert_eq!(p.conclusion(), Some(&phi));
    }

    #[test]
    fn false_existentials_are_not(seed in any::<u64>()) {
        let phi = Corpus::new(seed).false_sigma1();
        prop_assert!(prove_true_sigma1(&Registry::new(), &phi, 64).is_none(), "{}", phi);
    }

    #[test]
    fn boxed_proofs_are_cited_exactly_when_rho_holds(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let th: TheoryId = Logic::K4.into();
        let phi = c.sigma_b(3);
        prop_assume!(classify(&phi).contains(FormulaClass::SIGMA_B));
        let reg = Registry::new();
        let mut store = TheoremStore::new();
        c.seed_store(&reg, &th, &mut store, &phi);
        if c.rng().gen_bool(0.7) {
            store.nec_close_to_depth(&reg, &th, phi.modal_depth() + 1);
        }
        let budget = reg.len() + 16;
        let rho = eval_sentence(&phi, &Model::new(Flavor::Rho(th.clone()), budget, &reg)).unwrap();
        let p = prove_true_sigma_b(&reg, &th, &phi, budget);
        prop_assert_eq!(p.is_some(), rho.is_true(), "{}", phi);
        if let Some(p) = p {
            prop_assert_eq!(check_proof(&reg, &th, &p), Ok(()));
        }
    }

    #[test]
    fn deduction_discharges_hypotheses(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let th: TheoryId = Logic::K4.into();
        let xs: Vec<Formula> = (0..c.rng().gen_range(1..3)).map(|_| c.hypothesis()).collect();
        let p = c.derivation(&xs);
        let reg = Registry::new();
        let d = boxed_deduction(&reg, &th, &xs, &p).unwrap();
        prop_assert_eq!(check_proof(&reg, &th, &d), Ok(()));
        let goal = Formula::imp(Formula::conj(xs.clone()), p.conclusion().unwrap().clone());
        prop_assert_eq!(d.conclusion(), Some(&goal));
    }

    #[test]
    fn discharged_proofs_apply_to_proved_hypotheses(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let th: TheoryId = Logic::GL.into();
        let reg = Registry::new();
        let xs: Vec<Formula> = (0..c.rng().gen_range(1..3)).map(|_| c.simple_hypothesis()).collect();
        let proofs: Option<Vec<Proof>> = xs.iter().map(|x| prove_simple(&reg, x)).collect();
        prop_assume!(proofs.is_some());
        let p = c.derivation(&xs);
        let d = boxed_deduction(&reg, &th, &xs, &p).unwrap();
        let mut b = ProofBuilder::new();
        let lines: Vec<usize> = proofs.unwrap().iter().map(|q| b.import(q)).collect();
        let conj = b.chain(&lines, Formula::conj(xs.clone()));
        let imp = b.import(&d);
        let out = b.mp(imp, conj);
        let q = b.finish(out);
        prop_assert_eq!(check_proof(&reg, &th, &q), Ok(()));
        prop_assert_eq!(q.conclusion(), p.conclusion());
    }
}

#[test]
fn extraction_yields_checked_proofs() {
    let th: TheoryId = Logic::K.into();
    let mut done = 0;
    for seed in 0..400u64 {
        let phi = Corpus::new(seed).delta_b(3);
        let (_, vars) = star(&phi).unwrap();
        if vars.len() > 3 {
            continue;
        }
        let reg = Registry::new();
        let found = annotations(vars.len()).find_map(|ps| {
            let Formula::Box(a) = star_minus_instance(&phi, &ps).unwrap() else { unreachable!() };
            let p = prove_true_sigma_b(&reg, &th, &a, 0)?;
            let mut b = ProofBuilder::new();
            let line = b.import(&p);
            let line = b.nec(line);
            Some((ps, b.finish(line)))
        });
        let Some((ps, q)) = found else { continue };
        let out = extract_from_star_minus(&reg, &th, &phi, &ps, &q).unwrap();
        assert_eq!(check_proof(&reg, &th, &out), Ok(()), "{phi}");
        assert_eq!(out.conclusion(), Some(&phi));
        done += 1;
    }
    assert!(done >= 100, "only {done} extraction cases");
}
