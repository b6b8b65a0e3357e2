//! Rosser-style fixed points and store-level audits of disjunction
//! properties.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::classes::{boxes_disjunction, classify, FormulaClass};
use crate::coding::{Code, CodingError, Derived, Registry};
use crate::eval::{eval_sentence, Model, Truth};
use crate::kernel::TheoremStore;
use crate::syntax::{free_vars, numeral, substitute, Formula, FreshVars, Term, TheoryId, Var};
use crate::translate::{pr_translate, PrTag, PrVariant};

/// Which construction to build, with its parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GalleryKind {
    /// `psi0, psi1` racing a `delta` witness or a proof of `box psi1`
    /// against a proof of `box (phi | psi0)`.
    DisjunctPair { delta: Formula, phi: Formula },
    /// `sigma0, sigma1`: the same race with `sigma1` and `box sigma0`.
    Sigma1Pair { delta: Formula },
    /// `xi_i = psi_i | (delta wins against box xi_0 | ... | box xi_k-1)`.
    BoxFamily { delta: Formula, psis: Vec<Formula> },
    /// `sigma`: a `delta` witness below every proof of `phi | sigma`.
    CorrectnessWitness { delta: Formula, phi: Formula },
    /// `psi`: some `box phi(x)` below every proof of `psi`.
    BoxWitness { phi: Formula },
    /// `psi = ~PR(psi)`.
    Godel,
    /// `forall x (box phi(x) <-> x in W_e)`, with `e` the code of the
    /// provability translation of `box phi(x)`.
    WeakRepresentation { phi: Formula },
}

impl GalleryKind {
    pub const TAGS: [&'static str; 7] = [
        "disjunct-pair",
        "sigma1-pair",
        "box-family",
        "correctness-witness",
        "box-witness",
        "godel",
        "weak-representation",
    ];

    pub fn tag(&self) -> &'static str {
        let i = match self {
            GalleryKind::DisjunctPair { .. } => 0,
            GalleryKind::Sigma1Pair { .. } => 1,
            GalleryKind::BoxFamily { .. } => 2,
            GalleryKind::CorrectnessWitness { .. } => 3,
            GalleryKind::BoxWitness { .. } => 4,
            GalleryKind::Godel => 5,
            GalleryKind::WeakRepresentation { .. } => 6,
        };
        Self::TAGS[i]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GalleryError {
    /// `delta` must be a bounded formula with at most one free variable.
    BadDelta(Formula),
    NotASentence(Formula),
    /// More than one free variable.
    TooManyFreeVars(Formula),
    EmptyFamily,
    Coding(CodingError),
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::BadDelta(d) => write!(f, "{d} is not a Delta0 formula in at most one variable"),
            GalleryError::NotASentence(p) => write!(f, "{p} is not a sentence"),
            GalleryError::TooManyFreeVars(p) => write!(f, "{p} has more than one free variable"),
            GalleryError::EmptyFamily => f.write_str("the family needs at least one sentence"),
            GalleryError::Coding(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for GalleryError {}

impl From<CodingError> for GalleryError {
    fn from(e: CodingError) -> Self {
        GalleryError::Coding(e)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GalleryEntry {
    pub label: alloc::string::String,
    pub formula: Formula,
    pub code: Code,
    /// Codes the `prf` atoms of this sentence must name, for the
    /// self-referential sentences; `None` for derived ones.
    pub refs: Option<Vec<Code>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gallery {
    pub tag: &'static str,
    pub theory: TheoryId,
    pub entries: Vec<GalleryEntry>,
}

impl Gallery {
    pub fn get(&self, label: &str) -> Option<&GalleryEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

struct Vars {
    fresh: FreshVars,
}

impl Vars {
    fn new(params: &[&Formula]) -> Vars {
        Vars { fresh: FreshVars::above(params.iter().copied()) }
    }

    fn next(&mut self) -> Var {
        self.fresh.next()
    }

    fn many(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.next()).collect()
    }
}

fn check_delta(delta: &Formula) -> Result<Option<Var>, GalleryError> {
    let fv = free_vars(delta);
    if fv.len() > 1 || !classify(delta).contains(FormulaClass::DELTA0) {
        return Err(GalleryError::BadDelta(delta.clone()));
    }
    Ok(fv.into_iter().next())
}

fn check_sentence(phi: &Formula) -> Result<(), GalleryError> {
    if phi.is_sentence() {
        Ok(())
    } else {
        Err(GalleryError::NotASentence(phi.clone()))
    }
}

fn check_unary(phi: &Formula) -> Result<Option<Var>, GalleryError> {
    let fv = free_vars(phi);
    if fv.len() > 1 {
        return Err(GalleryError::TooManyFreeVars(phi.clone()));
    }
    Ok(fv.into_iter().next())
}

/// `phi` with its free variable (if any) renamed to `x`.
fn at(phi: &Formula, free: &Option<Var>, x: &Var) -> Formula {
    match free {
        Some(v) => substitute(phi, v, &Term::Var(x.clone())),
        None => phi.clone(),
    }
}

fn prf(theory: &TheoryId, code: &Var, y: &Var) -> Formula {
    Formula::Prf(theory.clone(), Term::Var(code.clone()), Term::Var(y.clone()))
}

fn not_prf(theory: &TheoryId, code: &Var, y: &Var) -> Formula {
    Formula::not(prf(theory, code, y))
}

/// `exists x ((d(x) | prf(a, x)) & forall y < x ~prf(b, y))`.
fn race_first(theory: &TheoryId, d: Formula, a: &Var, b: &Var, x: &Var, y: &Var) -> Formula {
    let head = Formula::or(d, prf(theory, a, x));
    let guard = Formula::bforall(y.clone(), Term::Var(x.clone()), not_prf(theory, b, y));
    Formula::exists(x.clone(), Formula::and(head, guard))
}

/// `exists y (prf(b, y) & forall x < S(y) (~d(x) & ~prf(a, x)))`.
fn race_second(theory: &TheoryId, d: Formula, a: &Var, b: &Var, x: &Var, y: &Var) -> Formula {
    let body = Formula::and(Formula::not(d), not_prf(theory, a, x));
    let guard = Formula::bforall(x.clone(), Term::succ(Term::Var(y.clone())), body);
    Formula::exists(y.clone(), Formula::and(prf(theory, b, y), guard))
}

/// `exists x (d(x) & forall y < x ~prf(a, y))`.
fn race_witness(theory: &TheoryId, d: Formula, a: &Var, x: &Var, y: &Var) -> Formula {
    let guard = Formula::bforall(y.clone(), Term::Var(x.clone()), not_prf(theory, a, y));
    Formula::exists(x.clone(), Formula::and(d, guard))
}

fn entry(label: &str, formula: Formula, code: Code, refs: Option<Vec<Code>>) -> GalleryEntry {
    GalleryEntry { label: label.into(), formula, code, refs }
}

/// Builds the sentences of `kind` with `prf` atoms over `theory`.
pub fn build(reg: &Registry, theory: &TheoryId, kind: &GalleryKind) -> Result<Gallery, GalleryError> {
    let th = theory;
    let entries = match kind {
        GalleryKind::DisjunctPair { delta, phi } => {
            let free = check_delta(delta)?;
            check_sentence(phi)?;
            let mut v = Vars::new(&[delta, phi]);
            let (x, y) = (v.next(), v.next());
            let c = v.many(4);
            let ctx = [
                race_first(th, at(delta, &free, &x), &c[2], &c[3], &x, &y),
                race_second(th, at(delta, &free, &x), &c[2], &c[3], &x, &y),
            ];
            let box1: Derived<'_> = &|s| Formula::boxed(s[1].clone());
            let box_or: Derived<'_> = &|s| Formula::boxed(Formula::or(phi.clone(), s[0].clone()));
            let fp = reg.fixed_points_with(&ctx, &c, &[box1, box_or])?;
            let refs = vec![fp.derived_codes[0], fp.derived_codes[1]];
            vec![
                entry("psi0", fp.sentences[0].clone(), fp.codes[0], Some(refs.clone())),
                entry("psi1", fp.sentences[1].clone(), fp.codes[1], Some(refs)),
                entry("box psi1", fp.derived[0].clone(), fp.derived_codes[0], None),
                entry("box (phi | psi0)", fp.derived[1].clone(), fp.derived_codes[1], None),
            ]
        }
        GalleryKind::Sigma1Pair { delta } => {
            let free = check_delta(delta)?;
            let mut v = Vars::new(&[delta]);
            let (x, y) = (v.next(), v.next());
            let c = v.many(3);
            let ctx = [
                race_first(th, at(delta, &free, &x), &c[1], &c[2], &x, &y),
                race_second(th, at(delta, &free, &x), &c[1], &c[2], &x, &y),
            ];
            let box0: Derived<'_> = &|s| Formula::boxed(s[0].clone());
            let fp = reg.fixed_points_with(&ctx, &c, &[box0])?;
            let refs = vec![fp.codes[1], fp.derived_codes[0]];
            vec![
                entry("sigma0", fp.sentences[0].clone(), fp.codes[0], Some(refs.clone())),
                entry("sigma1", fp.sentences[1].clone(), fp.codes[1], Some(refs)),
                entry("box sigma0", fp.derived[0].clone(), fp.derived_codes[0], None),
            ]
        }
        GalleryKind::BoxFamily { delta, psis } => {
            let free = check_delta(delta)?;
            if psis.is_empty() {
                return Err(GalleryError::EmptyFamily);
            }
            psis.iter().try_for_each(check_sentence)?;
            let mut params: Vec<&Formula> = psis.iter().collect();
            params.push(delta);
            let mut v = Vars::new(&params);
            let (x, y) = (v.next(), v.next());
            let c = v.many(psis.len() + 1);
            let d = &c[psis.len()];
            let ctx: Vec<Formula> = psis
                .iter()
                .map(|psi| Formula::or(psi.clone(), race_witness(th, at(delta, &free, &x), d, &x, &y)))
                .collect();
            let disj: Derived<'_> = &|s| boxes_disjunction(s);
            let fp = reg.fixed_points_with(&ctx, &c, &[disj])?;
            let mut out: Vec<GalleryEntry> = fp
                .sentences
                .iter()
                .zip(&fp.codes)
                .enumerate()
                .map(|(i, (s, code))| entry(&alloc::format!("xi{i}"), s.clone(), *code, Some(vec![fp.derived_codes[0]])))
                .collect();
            out.push(entry("boxes", fp.derived[0].clone(), fp.derived_codes[0], None));
            out
        }
        GalleryKind::CorrectnessWitness { delta, phi } => {
            let free = check_delta(delta)?;
            check_sentence(phi)?;
            let mut v = Vars::new(&[delta, phi]);
            let (x, y) = (v.next(), v.next());
            let c = v.many(2);
            let ctx = [race_witness(th, at(delta, &free, &x), &c[1], &x, &y)];
            let or: Derived<'_> = &|s| Formula::or(phi.clone(), s[0].clone());
            let fp = reg.fixed_points_with(&ctx, &c, &[or])?;
            vec![
                entry("sigma", fp.sentences[0].clone(), fp.codes[0], Some(vec![fp.derived_codes[0]])),
                entry("phi | sigma", fp.derived[0].clone(), fp.derived_codes[0], None),
            ]
        }
        GalleryKind::BoxWitness { phi } => {
            let free = check_unary(phi)?;
            let mut v = Vars::new(&[phi]);
            let (x, y) = (v.next(), v.next());
            let c = v.many(1);
            let ctx = [race_witness(th, Formula::boxed(at(phi, &free, &x)), &c[0], &x, &y)];
            let fp = reg.fixed_points_with(&ctx, &c, &[])?;
            vec![entry("psi", fp.sentences[0].clone(), fp.codes[0], Some(vec![fp.codes[0]]))]
        }
        GalleryKind::Godel => {
            let mut v = Vars::new(&[]);
            let (c, y) = (v.next(), v.next());
            let ctx = [Formula::not(Formula::exists(y.clone(), prf(th, &c, &y)))];
            let fp = reg.fixed_points_with(&ctx, &[c], &[])?;
            vec![entry("psi", fp.sentences[0].clone(), fp.codes[0], Some(vec![fp.codes[0]]))]
        }
        GalleryKind::WeakRepresentation { phi } => {
            let free = check_unary(phi)?;
            let mut v = Vars::new(&[phi]);
            let (x, y) = (v.next(), v.next());
            let boxed = Formula::boxed(at(phi, &free, &x));
            let pi = pr_translate(reg, &PrVariant::new(PrTag::Pi, th.clone()), &boxed);
            let e = reg.code_of_formula(&pi);
            let rep = |w: Term| Formula::forall(x.clone(), Formula::iff(boxed.clone(), Formula::InW(Term::Var(x.clone()), w)));
            let schema = Formula::exists(y.clone(), rep(Term::Var(y.clone())));
            let instance = rep(numeral(e));
            vec![
                entry("schema", schema.clone(), reg.code_of_formula(&schema), None),
                entry("instance", instance.clone(), reg.code_of_formula(&instance), None),
                entry("index", pi, e, None),
            ]
        }
    };
    Ok(Gallery { tag: kind.tag(), theory: theory.clone(), entries })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossRefMismatch {
    pub label: alloc::string::String,
    pub expected: Vec<Code>,
    pub found: Vec<Code>,
}

/// Checks that the `prf` atoms of each self-referential entry name exactly
/// the codes listed in its `refs`.
pub fn audit_cross_references(g: &Gallery) -> Result<(), CrossRefMismatch> {
    for e in &g.entries {
        let Some(refs) = &e.refs else { continue };
        let mut found = BTreeSet::new();
        prf_targets(&e.formula, &mut found);
        let expected: BTreeSet<Code> = refs.iter().copied().collect();
        if found != expected {
            return Err(CrossRefMismatch {
                label: e.label.clone(),
                expected: expected.into_iter().collect(),
                found: found.into_iter().collect(),
            });
        }
    }
    Ok(())
}

/// Numeral first arguments of `prf` atoms outside boxes. Non-numeral
/// arguments are recorded as `usize::MAX`.
fn prf_targets(phi: &Formula, out: &mut BTreeSet<Code>) {
    match phi {
        Formula::Prf(_, Term::Num(n), _) => {
            out.insert(usize::try_from(n).unwrap_or(usize::MAX));
        }
        Formula::Prf(_, Term::Zero, _) => {
            out.insert(0);
        }
        Formula::Prf(..) => {
            out.insert(usize::MAX);
        }
        Formula::Not(a) => prf_targets(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            prf_targets(a, out);
            prf_targets(b, out);
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::BForall(_, _, a) | Formula::BExists(_, _, a) => {
            prf_targets(a, out)
        }
        _ => {}
    }
}

/// The smallest proof code `<= budget` backing a `theory` record of `phi`.
pub fn stored_proof(
    reg: &Registry,
    store: &TheoremStore,
    theory: &TheoryId,
    phi: &Formula,
    budget: usize,
) -> Option<Code> {
    let code = reg.lookup_formula(phi)?;
    store
        .records()
        .iter()
        .filter(|r| &r.theory == theory && r.formula == code && r.proof <= budget)
        .map(|r| r.proof)
        .min()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DpVerdict {
    /// A proof of the left disjunct (its code).
    Left(Code),
    Right(Code),
    /// The disjunction is stored but neither disjunct is.
    CounterexampleCandidate,
    /// No stored proof of the disjunction.
    Unknown,
}

impl fmt::Display for DpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DpVerdict::Left(c) => write!(f, "left {c}"),
            DpVerdict::Right(c) => write!(f, "right {c}"),
            DpVerdict::CounterexampleCandidate => f.write_str("counterexample-candidate"),
            DpVerdict::Unknown => f.write_str("unknown"),
        }
    }
}

fn dp_verdict(
    reg: &Registry,
    store: &TheoremStore,
    theory: &TheoryId,
    hyp: &Formula,
    left: &Formula,
    right: &Formula,
    budget: usize,
) -> DpVerdict {
    if stored_proof(reg, store, theory, hyp, budget).is_none() {
        return DpVerdict::Unknown;
    }
    if let Some(c) = stored_proof(reg, store, theory, left, budget) {
        return DpVerdict::Left(c);
    }
    match stored_proof(reg, store, theory, right, budget) {
        Some(c) => DpVerdict::Right(c),
        None => DpVerdict::CounterexampleCandidate,
    }
}

/// Disjunction property evidence for `phi | psi`.
pub fn check_dp(
    reg: &Registry,
    theory: &TheoryId,
    phi: &Formula,
    psi: &Formula,
    store: &TheoremStore,
    budget: usize,
) -> DpVerdict {
    let hyp = Formula::or(phi.clone(), psi.clone());
    dp_verdict(reg, store, theory, &hyp, phi, psi, budget)
}

/// Modal disjunction property evidence: from `box phi | box psi` to `phi`
/// or `psi`.
pub fn check_mdp(
    reg: &Registry,
    theory: &TheoryId,
    phi: &Formula,
    psi: &Formula,
    store: &TheoremStore,
    budget: usize,
) -> DpVerdict {
    let hyp = Formula::or(Formula::boxed(phi.clone()), Formula::boxed(psi.clone()));
    dp_verdict(reg, store, theory, &hyp, phi, psi, budget)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DcVerdict {
    Satisfied(Code),
    /// `phi | PR(phi)` is not stored.
    HypothesisAbsent,
    /// `phi | PR(phi)` is stored, `phi` is not.
    Unknown,
}

impl fmt::Display for DcVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DcVerdict::Satisfied(c) => write!(f, "satisfied {c}"),
            DcVerdict::HypothesisAbsent => f.write_str("hypothesis-absent"),
            DcVerdict::Unknown => f.write_str("unknown"),
        }
    }
}

/// `phi | PR(phi)`, with `PR(phi)` the provability translation of `box phi`.
pub fn dc_hypothesis(reg: &Registry, theory: &TheoryId, phi: &Formula) -> Formula {
    let pr = pr_translate(reg, &PrVariant::new(PrTag::Pi, theory.clone()), &Formula::boxed(phi.clone()));
    Formula::or(phi.clone(), pr)
}

/// Disjunctive correctness evidence for the sentence `phi`.
pub fn check_dc(reg: &Registry, theory: &TheoryId, phi: &Formula, store: &TheoremStore, budget: usize) -> DcVerdict {
    if let Some(c) = stored_proof(reg, store, theory, phi, budget) {
        return DcVerdict::Satisfied(c);
    }
    let hyp = dc_hypothesis(reg, theory, phi);
    match stored_proof(reg, store, theory, &hyp, budget) {
        Some(_) => DcVerdict::Unknown,
        None => DcVerdict::HypothesisAbsent,
    }
}

/// Truth of `~sigma` for a correctness witness `sigma`, once a proof of
/// `phi | sigma` is stored: every witness for `sigma` must lie at or below
/// that proof's code, so the search is bounded.
pub fn refute_by_proof_index(
    reg: &Registry,
    g: &Gallery,
    store: &TheoremStore,
    budget: usize,
) -> Truth {
    let (Some(sigma), Some(disj)) = (g.get("sigma"), g.get("phi | sigma")) else {
        return Truth::Unknown;
    };
    let Some(p) = stored_proof(reg, store, &g.theory, &disj.formula, budget) else {
        return Truth::Unknown;
    };
    let Formula::Exists(x, body) = &sigma.formula else { return Truth::Unknown };
    let bounded = Formula::bexists(x.clone(), numeral(p + 1), (**body).clone());
    eval_sentence(&Formula::not(bounded), &Model::triv(reg, 0)).unwrap_or(Truth::Unknown)
}

impl FromStr for DpVerdict {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (head, tail) = s.split_once(' ').unwrap_or((s, ""));
        let code = || tail.parse::<Code>().map_err(|_| ());
        match head {
            "left" => Ok(DpVerdict::Left(code()?)),
            "right" => Ok(DpVerdict::Right(code()?)),
            "counterexample-candidate" => Ok(DpVerdict::CounterexampleCandidate),
            "unknown" => Ok(DpVerdict::Unknown),
            _ => Err(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_proof, Proof};
    use crate::syntax::{parse_formula, Logic};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn num_of(reg: &Registry, phi: &Formula) -> Term {
        numeral(reg.lookup_formula(phi).unwrap())
    }

    #[test]
    fn godel_sentence_denies_its_own_provability() {
        let r = Registry::new();
        let th: TheoryId = Logic::K4.into();
        let g = build(&r, &th, &GalleryKind::Godel).unwrap();
        let psi = &g.entries[0].formula;
        let expect = Formula::not(Formula::exists(
            Var::new("v1"),
            Formula::Prf(th.clone(), num_of(&r, psi), Term::var("v1")),
        ));
        assert_eq!(psi, &expect);
        assert_eq!(audit_cross_references(&g), Ok(()));
    }

    #[test]
    fn sigma1_pair_matches_its_equations() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::Sigma1Pair { delta: p("(x=S(0) & bot)") }).unwrap();
        let s0 = &g.get("sigma0").unwrap().formula;
        let s1 = &g.get("sigma1").unwrap().formula;
        assert_eq!(g.get("box sigma0").unwrap().formula, Formula::boxed(s0.clone()));
        let (c1, cb) = (num_of(&r, s1), num_of(&r, &Formula::boxed(s0.clone())));
        let expect0 = p(&alloc::format!(
            "exists v0 (((v0=S(0) & bot) | prf[k]({c1},v0)) & forall v1 < v0 ~prf[k]({cb},v1))"
        ));
        let expect1 = p(&alloc::format!(
            "exists v1 (prf[k]({cb},v1) & forall v0 < S(v1) (~(v0=S(0) & bot) & ~prf[k]({c1},v0)))"
        ));
        assert_eq!(s0, &expect0);
        assert_eq!(s1, &expect1);
        assert!(classify(s0).contains(FormulaClass::SIGMA1));
        assert!(classify(s1).contains(FormulaClass::SIGMA1));
        assert_eq!(audit_cross_references(&g), Ok(()));
    }

    #[test]
    fn box_witness_is_sigma_b() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::BoxWitness { phi: p("box x=x") }).unwrap();
        let psi = &g.entries[0].formula;
        let c = num_of(&r, psi);
        assert_eq!(psi, &p(&alloc::format!("exists v0 (box box v0=v0 & forall v1 < v0 ~prf[k]({c},v1))")));
        assert!(classify(psi).contains(FormulaClass::SIGMA_B));
    }

    #[test]
    fn weak_representation_instance() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::WeakRepresentation { phi: p("x=x") }).unwrap();
        let e = g.get("index").unwrap();
        assert_eq!(e.formula, p("exists v1 prf[k](code[v0=v0]{v0:=v0},v1)"));
        assert_eq!(
            g.get("instance").unwrap().formula,
            p(&alloc::format!("forall v0 (box v0=v0 <-> inW(v0,#{}))", e.code))
        );
        assert_eq!(g.get("schema").unwrap().formula, p("exists v1 forall v0 (box v0=v0 <-> inW(v0,v1))"));
    }

    #[test]
    fn malformed_parameters() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let bad = build(&r, &th, &GalleryKind::Sigma1Pair { delta: p("exists y x=y") });
        assert_eq!(bad, Err(GalleryError::BadDelta(p("exists y x=y"))));
        let bad = build(&r, &th, &GalleryKind::DisjunctPair { delta: p("x=0"), phi: p("box x=0") });
        assert_eq!(bad, Err(GalleryError::NotASentence(p("box x=0"))));
        let bad = build(&r, &th, &GalleryKind::BoxFamily { delta: p("bot"), psis: Vec::new() });
        assert_eq!(bad, Err(GalleryError::EmptyFamily));
        let bad = build(&r, &th, &GalleryKind::BoxWitness { phi: p("x=y") });
        assert_eq!(bad, Err(GalleryError::TooManyFreeVars(p("x=y"))));
    }

    #[test]
    fn dp_on_a_ver_store() {
        let r = Registry::new();
        let th: TheoryId = Logic::Ver.into();
        let mut store = TheoremStore::new();
        let (phi, psi) = (p("box bot"), p("bot"));
        assert_eq!(check_dp(&r, &th, &phi, &psi, &store, 100), DpVerdict::Unknown);
        let q: Proof = "ax:ver box bot; ax:taut (box bot -> (box bot | bot)); mp:1,0 (box bot | bot)"
            .parse()
            .unwrap();
        assert_eq!(check_proof(&r, &th, &q), Ok(()));
        store.record(&r, &th, &q).unwrap();
        assert_eq!(check_dp(&r, &th, &phi, &psi, &store, 100), DpVerdict::CounterexampleCandidate);
        let q0: Proof = "ax:ver box bot".parse().unwrap();
        let rec = store.record(&r, &th, &q0).unwrap();
        assert_eq!(check_dp(&r, &th, &phi, &psi, &store, 100), DpVerdict::Left(rec.proof));
        assert!(!store.is_box_elim_closed(&r, &th));
        assert_eq!(check_dp(&r, &th, &phi, &phi, &store, 0), DpVerdict::Unknown);
        let or_self = Formula::or(phi.clone(), phi.clone());
        let q2: Proof = alloc::format!("ax:ver box bot; ax:taut (box bot -> {or_self}); mp:1,0 {or_self}")
            .parse()
            .unwrap();
        store.record(&r, &th, &q2).unwrap();
        assert!(matches!(check_dp(&r, &th, &phi, &phi, &store, 1000), DpVerdict::Left(_)));
    }

    #[test]
    fn dc_verdicts() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let mut store = TheoremStore::new();
        let phi = p("0=0");
        assert_eq!(check_dc(&r, &th, &phi, &store, 100), DcVerdict::HypothesisAbsent);
        let hyp = dc_hypothesis(&r, &th, &phi);
        let q: Proof = alloc::format!("ax:refl 0=0; ax:taut (0=0 -> {hyp}); mp:1,0 {hyp}").parse().unwrap();
        store.record(&r, &th, &q).unwrap();
        assert_eq!(check_dc(&r, &th, &phi, &store, 1000), DcVerdict::Unknown);
        let rec = store.record(&r, &th, &"ax:refl 0=0".parse().unwrap()).unwrap();
        assert_eq!(check_dc(&r, &th, &phi, &store, 1000), DcVerdict::Satisfied(rec.proof));
    }

    #[test]
    fn correctness_witness_refuted_by_a_stored_proof() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::CorrectnessWitness { delta: p("x=#1000"), phi: p("0=0") }).unwrap();
        assert_eq!(audit_cross_references(&g), Ok(()));
        let disj = g.get("phi | sigma").unwrap().formula.clone();
        let mut store = TheoremStore::new();
        assert_eq!(refute_by_proof_index(&r, &g, &store, 1000), Truth::Unknown);
        let q: Proof = alloc::format!("ax:refl 0=0; ax:taut (0=0 -> {disj}); mp:1,0 {disj}").parse().unwrap();
        let rec = store.record(&r, &th, &q).unwrap();
        assert!(rec.proof < 1000);
        assert_eq!(refute_by_proof_index(&r, &g, &store, 1000), Truth::True);
    }

    #[test]
    fn correctness_witness_beating_the_proof() {
        // delta(0) holds and every proof code is positive, so sigma is true.
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::CorrectnessWitness { delta: p("x=0"), phi: p("0=0") }).unwrap();
        let disj = g.get("phi | sigma").unwrap().formula.clone();
        let mut store = TheoremStore::new();
        let q: Proof = alloc::format!("ax:refl 0=0; ax:taut (0=0 -> {disj}); mp:1,0 {disj}").parse().unwrap();
        store.record(&r, &th, &q).unwrap();
        assert_eq!(refute_by_proof_index(&r, &g, &store, 1000), Truth::False);
    }

    #[test]
    fn disjunct_pair_race_covers_a_delta_witness() {
        // With delta(x) true at 2 and no proofs at all, psi0 wins the race.
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let g = build(&r, &th, &GalleryKind::DisjunctPair { delta: p("x=#2"), phi: p("bot") }).unwrap();
        assert_eq!(audit_cross_references(&g), Ok(()));
        let m = Model::triv(&r, 16);
        let psi0 = &g.get("psi0").unwrap().formula;
        let psi1 = &g.get("psi1").unwrap().formula;
        assert_eq!(eval_sentence(psi0, &m), Ok(Truth::True));
        assert_eq!(eval_sentence(psi1, &m), Ok(Truth::Unknown));
    }

    #[test]
    fn box_family_shape() {
        let r = Registry::new();
        let th: TheoryId = Logic::K.into();
        let psis = alloc::vec![p("0=0"), p("bot")];
        let g = build(&r, &th, &GalleryKind::BoxFamily { delta: p("bot"), psis }).unwrap();
        let xi0 = g.get("xi0").unwrap().formula.clone();
        let xi1 = g.get("xi1").unwrap().formula.clone();
        assert_eq!(g.get("boxes").unwrap().formula, p(&alloc::format!("(box {xi0} | box {xi1})")));
        assert_eq!(audit_cross_references(&g), Ok(()));
    }
}
