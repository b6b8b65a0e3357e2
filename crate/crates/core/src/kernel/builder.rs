use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::proof::{Justification, Line, Proof, Scheme};
use crate::coding::Code;
use crate::syntax::{Formula, Var};

/// Assembles proofs line by line. A formula is derived at most once; asking
/// for it again returns the existing line.
#[derive(Clone, Default, Debug)]
pub struct ProofBuilder {
    lines: Vec<Line>,
    index: BTreeMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new() -> ProofBuilder {
        ProofBuilder::default()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.lines[i].formula
    }

    pub fn find(&self, phi: &Formula) -> Option<usize> {
        self.index.get(phi).copied()
    }

    pub fn add(&mut self, formula: Formula, just: Justification) -> usize {
        if let Some(i) = self.index.get(&formula) {
            return *i;
        }
        let i = self.lines.len();
        self.index.insert(formula.clone(), i);
        self.lines.push(Line { formula, just });
        i
    }

    pub fn axiom(&mut self, scheme: Scheme, phi: Formula) -> usize {
        self.add(phi, Justification::Axiom(scheme))
    }

    pub fn extra(&mut self, i: usize, phi: Formula) -> usize {
        self.add(phi, Justification::Extra(i))
    }

    /// Line `imp` must be an implication whose antecedent is line `ant`.
    pub fn mp(&mut self, imp: usize, ant: usize) -> usize {
        let Formula::Imp(a, b) = self.formula(imp) else {
            panic!("modus ponens on a non-implication: {}", self.formula(imp));
        };
        debug_assert_eq!(**a, *self.formula(ant));
        let b = (**b).clone();
        self.add(b, Justification::Mp(imp, ant))
    }

    pub fn nec(&mut self, i: usize) -> usize {
        let phi = Formula::boxed(self.formula(i).clone());
        self.add(phi, Justification::Nec(i))
    }

    pub fn gen(&mut self, i: usize, x: Var) -> usize {
        let phi = Formula::forall(x.clone(), self.formula(i).clone());
        self.add(phi, Justification::Gen(i, x))
    }

    pub fn cite(&mut self, proof: Code, phi: Formula) -> usize {
        self.add(phi, Justification::Cited(proof))
    }

    /// Copies the lines of `p`, returning the line of its conclusion.
    pub fn import(&mut self, p: &Proof) -> usize {
        let mut map = Vec::with_capacity(p.len());
        for line in &p.lines {
            let just = match &line.just {
                Justification::Mp(i, j) => Justification::Mp(map[*i], map[*j]),
                Justification::Gen(i, x) => Justification::Gen(map[*i], x.clone()),
                Justification::Nec(i) => Justification::Nec(map[*i]),
                other => other.clone(),
            };
            map.push(self.add(line.formula.clone(), just));
        }
        *map.last().expect("imported proofs are non-empty")
    }

    /// Derives `goal` from the premise lines by one tautology
    /// `p1 -> (p2 -> ... -> goal)` and modus ponens.
    pub fn chain(&mut self, premises: &[usize], goal: Formula) -> usize {
        if let Some(i) = self.find(&goal) {
            return i;
        }
        let taut = premises
            .iter()
            .rev()
            .fold(goal, |acc, &p| Formula::imp(self.formula(p).clone(), acc));
        let mut cur = self.axiom(Scheme::Taut, taut);
        for &p in premises {
            cur = self.mp(cur, p);
        }
        cur
    }

    /// The proof of line `target`, keeping only the lines it depends on.
    pub fn finish(&self, target: usize) -> Proof {
        let mut keep = BTreeSet::new();
        let mut stack = alloc::vec![target];
        while let Some(i) = stack.pop() {
            if !keep.insert(i) {
                continue;
            }
            match &self.lines[i].just {
                Justification::Mp(a, b) => stack.extend([*a, *b]),
                Justification::Gen(a, _) | Justification::Nec(a) => stack.push(*a),
                _ => {}
            }
        }
        let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let lines = keep
            .iter()
            .map(|&i| {
                let line = &self.lines[i];
                let just = match &line.just {
                    Justification::Mp(a, b) => Justification::Mp(renumber[a], renumber[b]),
                    Justification::Gen(a, x) => Justification::Gen(renumber[a], x.clone()),
                    Justification::Nec(a) => Justification::Nec(renumber[a]),
                    other => other.clone(),
                };
                Line { formula: line.formula.clone(), just }
            })
            .collect();
        Proof::new(lines)
    }
}
