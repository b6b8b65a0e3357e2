//! Finite Kripke models, a model checker, and countermodel construction by
//! eliminating closure assignments that lack the successors they need.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{DecideError, ModalLogic, PropFormula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    /// Successors of each world.
    pub succ: Vec<BTreeSet<usize>>,
    /// Variables true at each world.
    pub val: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    /// One world, seeing itself when `reflexive`.
    pub fn single(reflexive: bool, truths: Vec<String>) -> KripkeModel {
        let succ = if reflexive { [0].into_iter().collect() } else { BTreeSet::new() };
        KripkeModel { succ: vec![succ], val: vec![truths.into_iter().collect()] }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn holds(&self, w: usize, a: &PropFormula) -> bool {
        let val = |v: &str| self.val[w].contains(v);
        let boxes = |b: &PropFormula| self.succ[w].iter().all(|&u| self.holds(u, b));
        a.eval(&val, &boxes)
    }

    pub fn reflexive(&self) -> bool {
        (0..self.len()).all(|w| self.succ[w].contains(&w))
    }

    pub fn irreflexive(&self) -> bool {
        (0..self.len()).all(|w| !self.succ[w].contains(&w))
    }

    pub fn transitive(&self) -> bool {
        (0..self.len()).all(|w| self.succ[w].iter().all(|&u| self.succ[u].is_subset(&self.succ[w])))
    }

    /// Frame conditions of `logic`. On finite frames, transitive and
    /// irreflexive means conversely well-founded.
    pub fn satisfies_frame_conditions(&self, logic: ModalLogic) -> bool {
        let sane = self.val.len() == self.len() && self.succ.iter().flatten().all(|&u| u < self.len());
        sane && match logic {
            ModalLogic::K => true,
            ModalLogic::KT => self.reflexive(),
            ModalLogic::K4 => self.transitive(),
            ModalLogic::S4 => self.reflexive() && self.transitive(),
            ModalLogic::GL => self.transitive() && self.irreflexive(),
            ModalLogic::Triv => (0..self.len()).all(|w| self.succ[w].iter().eq([w].iter())),
            ModalLogic::Ver => self.succ.iter().all(BTreeSet::is_empty),
        }
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..self.len() {
            if w > 0 {
                f.write_str("; ")?;
            }
            write!(f, "w{w}{{")?;
            for (i, v) in self.val[w].iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(v)?;
            }
            f.write_str("} ->")?;
            for u in &self.succ[w] {
                write!(f, " w{u}")?;
            }
        }
        Ok(())
    }
}

/// Atoms and boxed subformulas beyond this many are refused.
const MAX_BASIS: usize = 16;

/// Truth of every closure member under each basis assignment, as bitmasks.
struct Closure {
    members: Vec<PropFormula>,
    /// Closure indices of the variables and boxed subformulas.
    basis: Vec<usize>,
    /// For each boxed member, the index of its body.
    body: BTreeMap<usize, usize>,
    index: BTreeMap<PropFormula, usize>,
}

impl Closure {
    fn new(a: &PropFormula) -> Closure {
        let members = a.closure();
        let basis: Vec<usize> = (0..members.len())
            .filter(|&i| matches!(members[i], PropFormula::Var(_) | PropFormula::Box(_)))
            .collect();
        let index: BTreeMap<PropFormula, usize> = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let body = basis
            .iter()
            .filter_map(|&i| match &members[i] {
                PropFormula::Box(b) => Some((i, index[&**b])),
                _ => None,
            })
            .collect();
        Closure { members, basis, body, index }
    }

    /// The closure truth vector of basis assignment `m`.
    fn truths(&self, m: u32) -> Vec<bool> {
        let mut t: Vec<bool> = Vec::with_capacity(self.members.len());
        for (i, f) in self.members.iter().enumerate() {
            let v = match f {
                PropFormula::Var(_) | PropFormula::Box(_) => {
                    let k = self.basis.iter().position(|&j| j == i).expect("basis member");
                    m >> k & 1 == 1
                }
                other => {
                    let idx = |x: &PropFormula| self.index[x];
                    match other {
                        PropFormula::Bot => false,
                        PropFormula::Not(a) => !t[idx(a)],
                        PropFormula::And(a, b) => t[idx(a)] && t[idx(b)],
                        PropFormula::Or(a, b) => t[idx(a)] || t[idx(b)],
                        PropFormula::Imp(a, b) => !t[idx(a)] || t[idx(b)],
                        PropFormula::Iff(a, b) => t[idx(a)] == t[idx(b)],
                        PropFormula::Var(_) | PropFormula::Box(_) => unreachable!(),
                    }
                }
            };
            t.push(v);
        }
        t
    }
}

/// Packs a truth vector into 128-bit words.
fn pack(t: &[bool]) -> Vec<u128> {
    let mut out = vec![0u128; t.len().div_ceil(128)];
    for (i, &b) in t.iter().enumerate() {
        if b {
            out[i / 128] |= 1 << (i % 128);
        }
    }
    out
}

fn subset(a: &[u128], b: &[u128]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// A world of `logic` falsifying `a`, if `a` is not a theorem.
pub fn countermodel(logic: ModalLogic, a: &PropFormula) -> Result<Option<(KripkeModel, usize)>, DecideError> {
    let cl = Closure::new(a);
    if cl.basis.len() > MAX_BASIS {
        return Err(DecideError::TooLarge(cl.basis.len()));
    }
    let n = cl.members.len();
    let top = n - 1;
    let worlds: Vec<Vec<bool>> = (0..1u32 << cl.basis.len()).map(|m| cl.truths(m)).collect();
    let packed: Vec<Vec<u128>> = worlds.iter().map(|t| pack(t)).collect();
    // What every successor must make true, and the box part for GL.
    let boxes: Vec<(usize, usize)> = cl.body.iter().map(|(&b, &x)| (b, x)).collect();
    let needs: Vec<Vec<u128>> = worlds
        .iter()
        .map(|t| {
            let mut need = vec![false; n];
            for &(b, x) in &boxes {
                if t[b] {
                    need[x] = true;
                    if logic.transitive() {
                        need[b] = true;
                    }
                }
            }
            pack(&need)
        })
        .collect();
    let box_part = |w: usize| -> Vec<bool> { boxes.iter().map(|&(b, _)| worlds[w][b]).collect() };
    let related = |w: usize, v: usize| -> bool {
        subset(&needs[w], &packed[v]) && (logic != ModalLogic::GL || box_part(w) != box_part(v))
    };
    let mut alive: Vec<bool> = (0..worlds.len()).map(|w| !logic.reflexive() || related(w, w)).collect();
    // For each world and failed box, a live successor refuting the body.
    let witness = |alive: &[bool], w: usize, x: usize| (0..worlds.len()).find(|&v| alive[v] && !worlds[v][x] && related(w, v));
    loop {
        let mut changed = false;
        for w in 0..worlds.len() {
            if alive[w] && boxes.iter().any(|&(b, x)| !worlds[w][b] && witness(&alive, w, x).is_none()) {
                alive[w] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let Some(root) = (0..worlds.len()).find(|&w| alive[w] && !worlds[w][top]) else {
        return Ok(None);
    };
    // Keep the root and the chosen witnesses, then close the relation.
    let mut order = vec![root];
    let mut index: BTreeMap<usize, usize> = [(root, 0)].into_iter().collect();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    let mut i = 0;
    while i < order.len() {
        let w = order[i];
        for &(b, x) in &boxes {
            if worlds[w][b] {
                continue;
            }
            let v = witness(&alive, w, x).expect("live worlds have witnesses");
            let j = *index.entry(v).or_insert_with(|| {
                order.push(v);
                succ.push(BTreeSet::new());
                order.len() - 1
            });
            succ[i].insert(j);
        }
        i += 1;
    }
    if logic.reflexive() {
        for (w, s) in succ.iter_mut().enumerate() {
            s.insert(w);
        }
    }
    if logic.transitive() {
        loop {
            let mut changed = false;
            for w in 0..succ.len() {
                let reach: BTreeSet<usize> = succ[w].iter().flat_map(|&u| succ[u].iter().copied()).collect();
                if !reach.is_subset(&succ[w]) {
                    succ[w].extend(reach);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    let val = order
        .iter()
        .map(|&w| {
            cl.basis
                .iter()
                .filter(|&&i| worlds[w][i])
                .filter_map(|&i| match &cl.members[i] {
                    PropFormula::Var(v) => Some(v.clone()),
                    _ => None,
                })
                .collect()
        })
        .collect();
    Ok(Some((KripkeModel { succ, val }, 0)))
}
