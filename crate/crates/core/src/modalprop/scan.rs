//! Exhaustive search for modal disjunction property failures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{provable, KripkeModel, ModalLogic, PropFormula};

fn var_name(i: usize) -> String {
    const NAMES: [&str; 5] = ["p", "q", "r", "s", "t"];
    NAMES.get(i).map_or_else(|| format!("p{i}"), |s| String::from(*s))
}

/// Every formula over `vars` variables with at most `max_size` symbols,
/// built from `bot`, `~`, `&`, `|`, `->` and `box`, by increasing size.
pub fn enumerate(vars: usize, max_size: usize) -> Vec<PropFormula> {
    let mut by_size: Vec<Vec<PropFormula>> = vec![Vec::new()];
    for n in 1..=max_size {
        let mut layer = Vec::new();
        if n == 1 {
            layer.push(PropFormula::Bot);
            layer.extend((0..vars).map(|i| PropFormula::Var(var_name(i))));
        } else {
            for a in &by_size[n - 1] {
                layer.push(PropFormula::not(a.clone()));
                layer.push(PropFormula::boxed(a.clone()));
            }
            for i in 1..n - 1 {
                for a in &by_size[i] {
                    for b in &by_size[n - 1 - i] {
                        layer.push(PropFormula::and(a.clone(), b.clone()));
                        layer.push(PropFormula::or(a.clone(), b.clone()));
                        layer.push(PropFormula::imp(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(layer);
    }
    by_size.into_iter().flatten().collect()
}

/// Small frames of `logic` with every valuation of `vars` variables.
fn probe_models(logic: ModalLogic, vars: usize) -> Vec<KripkeModel> {
    let max_worlds = if matches!(logic, ModalLogic::K4 | ModalLogic::S4 | ModalLogic::GL) { 3 } else { 2 };
    let names: Vec<String> = (0..vars).map(var_name).collect();
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        for rel in 0u32..1 << (n * n) {
            let succ: Vec<BTreeSet<usize>> =
                (0..n).map(|w| (0..n).filter(|u| rel >> (w * n + u) & 1 == 1).collect()).collect();
            let frame = KripkeModel { succ, val: vec![BTreeSet::new(); n] };
            if !frame.satisfies_frame_conditions(logic) {
                continue;
            }
            for v in 0u32..1 << (n * vars) {
                let val = (0..n)
                    .map(|w| (0..vars).filter(|i| v >> (w * vars + i) & 1 == 1).map(|i| names[i].clone()).collect())
                    .collect();
                out.push(KripkeModel { succ: frame.succ.clone(), val });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdpReport {
    pub logic: ModalLogic,
    /// Formulas enumerated.
    pub formulas: usize,
    /// Equivalence classes among them; one representative each is paired.
    pub classes: usize,
    /// Unordered representative pairs `(A, B)` with `box A | box B` provable.
    pub hypotheses: usize,
    /// Of those, pairs with `A` or `B` provable.
    pub witnessed: usize,
    /// Pairs with `box A | box B` provable but neither `A` nor `B`.
    pub violations: Vec<(PropFormula, PropFormula)>,
}

/// Scans all pairs of formulas up to `max_size` symbols over `vars`
/// variables, one representative per provable-equivalence class.
pub fn mdp_scan(logic: ModalLogic, max_size: usize, vars: usize) -> MdpReport {
    let formulas = enumerate(vars, max_size);
    let probes = probe_models(logic, vars);
    let mut buckets: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    let mut reps: Vec<PropFormula> = Vec::new();
    for a in &formulas {
        let print: Vec<bool> = probes.iter().flat_map(|m| (0..m.len()).map(move |w| m.holds(w, a))).collect();
        let bucket = buckets.entry(print).or_default();
        let known = bucket.iter().any(|&r| provable(logic, &PropFormula::iff(reps[r].clone(), a.clone())));
        if !known {
            bucket.push(reps.len());
            reps.push(a.clone());
        }
    }
    let theorem: Vec<bool> = reps.iter().map(|a| provable(logic, a)).collect();
    let mut report =
        MdpReport { logic, formulas: formulas.len(), classes: reps.len(), hypotheses: 0, witnessed: 0, violations: Vec::new() };
    for i in 0..reps.len() {
        for j in i..reps.len() {
            if theorem[i] || theorem[j] {
                report.hypotheses += 1;
                report.witnessed += 1;
                continue;
            }
            let hyp = PropFormula::or(PropFormula::boxed(reps[i].clone()), PropFormula::boxed(reps[j].clone()));
            if provable(logic, &hyp) {
                report.hypotheses += 1;
                report.violations.push((reps[i].clone(), reps[j].clone()));
            }
        }
    }
    report
}
