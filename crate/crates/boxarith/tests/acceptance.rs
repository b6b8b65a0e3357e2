//! Acceptance criteria, one PASS/FAIL line each. Checks are exact; the only
//! tolerances are the wall-clock limits below.
//!
//! A criterion listed in `KNOWN_RED` is reported as it measures and does not
//! fail the run; any other failure does.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boxarith::journal;
use boxarith_core::classes::{
    boxes_disjunction, classify, delta_b_sentence_to_boxes, minus, sigma_b_to_exists_delta_b, star, FormulaClass,
};
use boxarith_core::coding::Registry;
use boxarith_core::eval::{eval_sentence, Flavor, Model};
use boxarith_core::kernel::{
    boxed_deduction, check_proof, extract_from_star_minus, prove_true_sigma1, prove_true_sigma_b,
    star_minus_instance, ProofBuilder, TheoremStore,
};
use boxarith_core::modalprop::{decide, mdp_scan, verify, ModalLogic};
use boxarith_core::syntax::{free_vars, numeral, substitute, Formula, Logic, TheoryId, Var};
use boxarith_core::translate::{alpha, beta, PrTag};
use boxarith_corpus::oracle::{
    annotation_count, annotations, box_models, close_annotations, decide as decide_bounded, translation_holds,
};
use boxarith_corpus::Corpus;
use rand::Rng;

const BRIDGE_LIMIT: Duration = Duration::from_secs(60);
const KERNEL_LIMIT: Duration = Duration::from_secs(300);
const MODAL_LIMIT: Duration = Duration::from_secs(300);
const BUDGET: usize = 64;
const STAR_INSTANCES: usize = 5000;

/// Criteria expected to measure red, with the reason.
const KNOWN_RED: &[(&str, &str)] = &[(
    "AC3",
    "the annotated form fixes one choice per disjunction, so it cannot follow a bounded universal \
     whose instances need different disjuncts",
)];

struct Verdict {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Verdict);

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// The first `n` values `make` accepts, trying seeds from 0 upward.
fn sample<T>(n: usize, mut make: impl FnMut(u64) -> Option<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(n);
    let mut seed = 0;
    while out.len() < n {
        if let Some(x) = make(seed) {
            out.push(x);
        }
        seed += 1;
    }
    out
}

fn ac1() -> Verdict {
    let start = Instant::now();
    let reg = Registry::new();
    let [triv, ver] = box_models(&reg, BUDGET);
    let mut bad = Vec::new();
    let mut known = 0;
    for seed in 0..1000u64 {
        let phi = Corpus::new(seed).sentence(1 + (seed % 6) as usize);
        let t = eval_sentence(&phi, &triv);
        let v = eval_sentence(&phi, &ver);
        if t != eval_sentence(&alpha(&phi), &ver) || v != eval_sentence(&beta(&phi), &triv) {
            bad.push(seed);
        }
        known += usize::from(matches!(t, Ok(x) if x.known().is_some()));
    }
    let took = start.elapsed();
    verdict(
        bad.is_empty() && took < BRIDGE_LIMIT,
        format!("1000 sentences, {} mismatches, {known} decided in Triv, {:.1}s", bad.len(), took.as_secs_f64()),
    )
}

fn ac2() -> Verdict {
    let reg = Registry::new();
    let models = box_models(&reg, BUDGET);
    let sigma = sample(500, |s| {
        let phi = Corpus::new(s).sigma_b(3);
        classify(&phi).contains(FormulaClass::SIGMA_B).then_some(phi)
    });
    let mut s_bad = 0;
    for phi in &sigma {
        let (v, psi) = sigma_b_to_exists_delta_b(phi).expect("Sigma(B) input");
        let shaped = classify(&psi).contains(FormulaClass::DELTA_B) && free_vars(&psi).iter().all(|x| *x == v);
        let ex = Formula::exists(v, psi);
        if !shaped || models.iter().any(|m| eval_sentence(phi, m) != eval_sentence(&ex, m)) {
            s_bad += 1;
        }
    }
    let mut d_bad = 0;
    for seed in 0..500u64 {
        let phi = Corpus::new(seed).delta_b(4);
        let psis = delta_b_sentence_to_boxes(&reg, &phi).expect("Delta(B) sentence");
        let [triv, ver] = &models;
        let same = decide_bounded(&phi, triv) == decide_bounded(&boxes_disjunction(&psis), triv);
        if !same || decide_bounded(&phi, ver) != !psis.is_empty() {
            d_bad += 1;
        }
    }
    verdict(
        s_bad == 0 && d_bad == 0,
        format!("500 Sigma(B) -> {s_bad} failures; 500 Delta(B) -> {d_bad} failures"),
    )
}

fn ac3() -> Verdict {
    let reg = Registry::new();
    let triv = Model::triv(&reg, BUDGET);
    let sigma = sample(500, |s| {
        let phi = Corpus::new(s).sigma_b(3);
        classify(&phi).contains(FormulaClass::SIGMA_B).then_some(phi)
    });
    let mut minus_bad = 0;
    for phi in &sigma {
        let out = minus(phi).expect("Sigma(B) input");
        if eval_sentence(phi, &triv).unwrap().is_true() && !eval_sentence(&out, &triv).unwrap().is_true() {
            minus_bad += 1;
        }
    }
    // Failures of the equivalence are rare in random inputs (a few per
    // ten thousand), so this side samples well beyond the minimum.
    let delta = sample(STAR_INSTANCES, |s| {
        let phi = Corpus::new(s).delta_b(4);
        (annotation_count(&phi) <= 4).then_some(phi)
    });
    let models = box_models(&reg, 0);
    let (mut stale, mut forward, mut backward) = (0, 0, 0);
    let mut example = None;
    for phi in &delta {
        let (s, vars) = star(phi).expect("Delta(B) input");
        let fv = free_vars(phi);
        if vars.len() != annotation_count(phi)
            || vars.iter().any(|v| fv.contains(v))
            || free_vars(&s).len() != vars.len()
        {
            stale += 1;
        }
        let closed = close_annotations(&s, &vars);
        for m in &models {
            let (a, b) = (decide_bounded(phi, m), decide_bounded(&closed, m));
            if a && !b {
                forward += 1;
                example.get_or_insert_with(|| phi.to_string());
            }
            if b && !a {
                backward += 1;
            }
        }
    }
    let mut detail = format!(
        "minus: {minus_bad}/500 monotonicity failures; star over {STAR_INSTANCES}: {stale} freshness failures, \
         phi -> exists v phi*: {forward} failures, converse: {backward} failures"
    );
    if let Some(e) = example {
        detail.push_str(&format!("; e.g. {e}"));
    }
    verdict(minus_bad == 0 && stale == 0 && forward == 0 && backward == 0, detail)
}

fn ac4() -> Verdict {
    let mut bad = 0;
    let mut sigma_inputs = 0;
    for seed in 0..100u64 {
        let mut c = Corpus::new(seed);
        let k = c.rng().gen_range(1..=3usize);
        let sigma_b = c.rng().gen_bool(0.5);
        let vars: Vec<Var> = (0..k).map(|i| Var::new(&format!("c{i}"))).collect();
        let contexts: Vec<Formula> = (0..k).map(|_| c.context(&vars, sigma_b)).collect();
        let reg = Registry::new();
        let Ok(psis) = reg.fixed_points(&contexts, &vars) else {
            bad += 1;
            continue;
        };
        let codes: Vec<usize> = psis.iter().map(|p| reg.code_of_formula(p)).collect();
        let mut ok = true;
        for (ctx, psi) in contexts.iter().zip(&psis) {
            let expected =
                vars.iter().zip(&codes).fold(ctx.clone(), |acc, (v, code)| substitute(&acc, v, &numeral(*code)));
            ok &= *psi == expected;
            if classify(ctx).contains(FormulaClass::SIGMA_B) {
                sigma_inputs += 1;
                ok &= classify(psi).contains(FormulaClass::SIGMA_B);
            }
        }
        bad += usize::from(!ok);
    }
    verdict(bad == 0, format!("100 contexts, {sigma_inputs} Sigma(B) contexts, {bad} failures"))
}

fn ac5() -> Verdict {
    let start = Instant::now();
    let pa: TheoryId = Logic::PaBox.into();
    let mut true_ok = 0;
    for seed in 0..200u64 {
        let (phi, k) = Corpus::new(seed).true_sigma1(50);
        let reg = Registry::new();
        if let Some(p) = prove_true_sigma1(&reg, &phi, k as usize) {
            true_ok += usize::from(check_proof(&reg, &pa, &p).is_ok() && p.conclusion() == Some(&phi));
        }
    }
    let false_none = (0..200u64)
        .filter(|&s| prove_true_sigma1(&Registry::new(), &Corpus::new(s).false_sigma1(), BUDGET).is_none())
        .count();

    let k4: TheoryId = Logic::K4.into();
    let mut rho_ok = 0;
    let mut rho_true = 0;
    let cases = sample(100, |s| {
        let phi = Corpus::new(s).sigma_b(3);
        classify(&phi).contains(FormulaClass::SIGMA_B).then_some(s)
    });
    for seed in cases {
        let mut c = Corpus::new(seed);
        let phi = c.sigma_b(3);
        let reg = Registry::new();
        let mut store = TheoremStore::new();
        c.seed_store(&reg, &k4, &mut store, &phi);
        if c.rng().gen_bool(0.7) {
            store.nec_close_to_depth(&reg, &k4, phi.modal_depth() + 1);
        }
        let budget = reg.len() + 16;
        let rho = eval_sentence(&phi, &Model::new(Flavor::Rho(k4.clone()), budget, &reg)).unwrap();
        let p = prove_true_sigma_b(&reg, &k4, &phi, budget);
        rho_true += usize::from(rho.is_true());
        let agrees = p.is_some() == rho.is_true();
        rho_ok += usize::from(agrees && p.is_none_or(|p| check_proof(&reg, &k4, &p).is_ok()));
    }

    let mut ded_ok = 0;
    for seed in 0..100u64 {
        let mut c = Corpus::new(seed);
        let xs: Vec<Formula> = (0..c.rng().gen_range(1..3)).map(|_| c.hypothesis()).collect();
        let p = c.derivation(&xs);
        let reg = Registry::new();
        if let Ok(d) = boxed_deduction(&reg, &k4, &xs, &p) {
            let goal = Formula::imp(Formula::conj(xs.clone()), p.conclusion().unwrap().clone());
            ded_ok += usize::from(check_proof(&reg, &k4, &d).is_ok() && d.conclusion() == Some(&goal));
        }
    }

    let k: TheoryId = Logic::K.into();
    let (mut ext_cases, mut ext_ok) = (0, 0);
    let mut seed = 0u64;
    while ext_cases < 100 && seed < 5000 {
        let phi = Corpus::new(seed).delta_b(3);
        seed += 1;
        let (_, vars) = star(&phi).unwrap();
        if vars.len() > 3 {
            continue;
        }
        let reg = Registry::new();
        let found = annotations(vars.len()).find_map(|ps| {
            let Formula::Box(a) = star_minus_instance(&phi, &ps).unwrap() else { unreachable!() };
            let p = prove_true_sigma_b(&reg, &k, &a, 0)?;
            let mut b = ProofBuilder::new();
            let line = b.import(&p);
            let line = b.nec(line);
            Some((ps, b.finish(line)))
        });
        let Some((ps, q)) = found else { continue };
        ext_cases += 1;
        if let Ok(out) = extract_from_star_minus(&reg, &k, &phi, &ps, &q) {
            ext_ok += usize::from(check_proof(&reg, &k, &out).is_ok() && out.conclusion() == Some(&phi));
        }
    }
    let took = start.elapsed();
    let pass = true_ok == 200
        && false_none == 200
        && rho_ok == 100
        && ded_ok == 100
        && ext_cases == 100
        && ext_ok == 100
        && took < KERNEL_LIMIT;
    verdict(
        pass,
        format!(
            "true Sigma1 {true_ok}/200, false Sigma1 unproved {false_none}/200, rho agreement {rho_ok}/100 \
             ({rho_true} true), deduction {ded_ok}/100, extraction {ext_ok}/{ext_cases}, {:.1}s",
            took.as_secs_f64()
        ),
    )
}

fn ac6() -> Verdict {
    let k: TheoryId = Logic::K.into();
    let kt: TheoryId = Logic::KT.into();
    let seeds = sample(200, |s| {
        let phi = Corpus::new(s).sigma_b(3);
        classify(&phi).contains(FormulaClass::SIGMA_B).then_some(s)
    });
    let (mut pi_rho_bad, mut rho_pi_bad, mut pi_true, mut rho_true) = (0, 0, 0, 0);
    for &seed in &seeds {
        let mut c = Corpus::new(seed);
        let phi = c.sigma_b(3);
        let reg = Registry::new();
        let mut store = TheoremStore::new();
        c.seed_store(&reg, &k, &mut store, &phi);
        store.nec_close_to_depth(&reg, &k, phi.modal_depth() + 1);
        if translation_holds(&reg, &k, PrTag::Pi, &phi) {
            pi_true += 1;
            pi_rho_bad += usize::from(!translation_holds(&reg, &k, PrTag::Rho, &phi));
        }

        let mut c = Corpus::new(seed);
        let phi = c.sigma_b(3);
        let reg = Registry::new();
        let mut store = TheoremStore::new();
        c.seed_store(&reg, &kt, &mut store, &phi);
        store.nec_close_to_depth(&reg, &kt, 2);
        store.box_elim_close(&reg, &kt).expect("KT has the T axiom");
        if !store.is_box_elim_closed(&reg, &kt) {
            rho_pi_bad += 1;
        } else if translation_holds(&reg, &kt, PrTag::Rho, &phi) {
            rho_true += 1;
            rho_pi_bad += usize::from(!translation_holds(&reg, &kt, PrTag::Pi, &phi));
        }
    }
    verdict(
        pi_rho_bad == 0 && rho_pi_bad == 0,
        format!(
            "200 Sigma(B): pi -> rho {pi_rho_bad} failures ({pi_true} pi-true), \
             rho -> pi {rho_pi_bad} failures ({rho_true} rho-true)"
        ),
    )
}

fn ac7() -> Verdict {
    let start = Instant::now();
    let gl = mdp_scan(ModalLogic::GL, 7, 1);
    let ver = mdp_scan(ModalLogic::Ver, 7, 1);
    let triv = mdp_scan(ModalLogic::Triv, 7, 1);
    let mut unverified = 0;
    for logic in [ModalLogic::K, ModalLogic::KT, ModalLogic::K4, ModalLogic::S4] {
        for seed in 0..1000u64 {
            let mut c = Corpus::new(seed);
            let size = c.rng().gen_range(3..12);
            let a = c.prop(2, size);
            unverified += usize::from(!decide(logic, &a).is_ok_and(|d| verify(logic, &a, &d)));
        }
    }
    let took = start.elapsed();
    verdict(
        gl.violations.is_empty()
            && !ver.violations.is_empty()
            && !triv.violations.is_empty()
            && unverified == 0
            && took < MODAL_LIMIT,
        format!(
            "GL {} violations over {} formulas; Ver {}; Triv {}; 4000 decisions, {unverified} unverified; {:.1}s",
            gl.violations.len(),
            gl.formulas,
            ver.violations.len(),
            triv.violations.len(),
            took.as_secs_f64()
        ),
    )
}

fn ac8() -> Verdict {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ta = common::transcript(a.path());
    let tb = common::transcript(b.path());
    let read = |d: &tempfile::TempDir, name: &str| fs::read(d.path().join(name)).unwrap();
    let journal_same = read(&a, "session.store.journal") == read(&b, "session.store.journal");
    let store_same = read(&a, "session.store") == read(&b, "session.store");
    let text = String::from_utf8(read(&a, "session.store.journal")).unwrap();
    let replayed = journal::replay(&text).is_ok_and(|reg| journal::render(&reg) == text);
    let golden = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/session.txt"))
        .is_ok_and(|g| g == ta);
    verdict(
        ta == tb && journal_same && store_same && replayed && golden,
        format!(
            "{} commands; transcripts equal: {}, journals equal: {journal_same}, stores equal: {store_same}, \
             replay reserializes: {replayed}, matches golden: {golden}",
            common::SCRIPT.len(),
            ta == tb
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7), ("AC8", ac8)];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let v = run();
        let red = KNOWN_RED.iter().find(|(k, _)| *k == id);
        let status = if v.pass { "PASS" } else { "FAIL" };
        match (v.pass, red) {
            (false, Some((_, why))) => println!("{id} {status} (known: {why}) {}", v.detail),
            (false, None) => {
                unexpected += 1;
                println!("{id} {status} {}", v.detail);
            }
            (true, _) => println!("{id} {status} {}", v.detail),
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
