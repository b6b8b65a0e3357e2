//! Signed tableaux for K, KT, K4, S4 and GL. A closed tableau is kept as
//! a tree of node sets so it can be re-checked step by step.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{ModalLogic, PropFormula};

/// `(true, A)`: A holds at the world; `(false, A)`: A fails there.
pub type Signed = (bool, PropFormula);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub set: BTreeSet<Signed>,
    pub step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// The set contains `(true, bot)` or both signs of one formula.
    Clash,
    /// A non-branching rule applied to `of`.
    Alpha { of: Signed, child: Box<Node> },
    /// A branching rule applied to `of`; both branches close.
    Beta { of: Signed, children: Box<[Node; 2]> },
    /// `(true, box A)` adds `(true, A)`; reflexive logics only.
    Reflexive { of: Signed, child: Box<Node> },
    /// A successor world refuting the body of the failed box `of`.
    Successor { of: Signed, child: Box<Node> },
}

enum Rule {
    Alpha(Vec<Signed>),
    Beta([Vec<Signed>; 2]),
    None,
}

fn rule(s: &Signed) -> Rule {
    use PropFormula as F;
    let (sign, f) = s;
    let t = |a: &F| (true, a.clone());
    let n = |a: &F| (false, a.clone());
    match (sign, f) {
        (_, F::Not(a)) => Rule::Alpha(vec![(!sign, (**a).clone())]),
        (true, F::And(a, b)) => Rule::Alpha(vec![t(a), t(b)]),
        (false, F::Or(a, b)) => Rule::Alpha(vec![n(a), n(b)]),
        (false, F::Imp(a, b)) => Rule::Alpha(vec![t(a), n(b)]),
        (false, F::And(a, b)) => Rule::Beta([vec![n(a)], vec![n(b)]]),
        (true, F::Or(a, b)) => Rule::Beta([vec![t(a)], vec![t(b)]]),
        (true, F::Imp(a, b)) => Rule::Beta([vec![n(a)], vec![t(b)]]),
        (true, F::Iff(a, b)) => Rule::Beta([vec![t(a), t(b)], vec![n(a), n(b)]]),
        (false, F::Iff(a, b)) => Rule::Beta([vec![t(a), n(b)], vec![n(a), t(b)]]),
        _ => Rule::None,
    }
}

fn clashes(set: &BTreeSet<Signed>) -> bool {
    set.contains(&(true, PropFormula::Bot)) || set.iter().any(|(s, f)| *s && set.contains(&(false, f.clone())))
}

fn extend(set: &BTreeSet<Signed>, more: &[Signed]) -> BTreeSet<Signed> {
    let mut out = set.clone();
    out.extend(more.iter().cloned());
    out
}

fn boxed_bodies(set: &BTreeSet<Signed>) -> impl Iterator<Item = &PropFormula> {
    set.iter().filter_map(|(s, f)| match (s, f) {
        (true, PropFormula::Box(a)) => Some(&**a),
        _ => None,
    })
}

/// The starting set of a successor world refuting `a`.
fn successor(logic: ModalLogic, set: &BTreeSet<Signed>, a: &PropFormula) -> BTreeSet<Signed> {
    let mut out = BTreeSet::new();
    out.insert((false, a.clone()));
    if logic == ModalLogic::GL {
        out.insert((true, PropFormula::boxed(a.clone())));
    }
    for b in boxed_bodies(set) {
        if logic != ModalLogic::S4 {
            out.insert((true, b.clone()));
        }
        if logic.transitive() {
            out.insert((true, PropFormula::boxed(b.clone())));
        }
    }
    out
}

/// A closed tableau for `~a` in `logic`, if there is one. K, KT, K4, S4
/// and GL only.
pub fn refute(logic: ModalLogic, a: &PropFormula) -> Option<Node> {
    assert!(!matches!(logic, ModalLogic::Triv | ModalLogic::Ver), "no tableau rules for {}", logic.tag());
    let root: BTreeSet<Signed> = [(false, a.clone())].into_iter().collect();
    let mut prover = Prover { logic, seen: vec![root.clone()] };
    prover.close(root)
}

struct Prover {
    logic: ModalLogic,
    /// Starting sets of the worlds on the current path, for loop checks.
    seen: Vec<BTreeSet<Signed>>,
}

impl Prover {
    fn close(&mut self, set: BTreeSet<Signed>) -> Option<Node> {
        if clashes(&set) {
            return Some(Node { set, step: Step::Clash });
        }
        for s in &set {
            if let Rule::Alpha(parts) = rule(s) {
                if parts.iter().any(|p| !set.contains(p)) {
                    let child = self.close(extend(&set, &parts))?;
                    let of = s.clone();
                    return Some(Node { set, step: Step::Alpha { of, child: Box::new(child) } });
                }
            }
        }
        if self.logic.reflexive() {
            for s in &set {
                if let (true, PropFormula::Box(b)) = s {
                    let part = (true, (**b).clone());
                    if !set.contains(&part) {
                        let child = self.close(extend(&set, &[part]))?;
                        let of = s.clone();
                        return Some(Node { set, step: Step::Reflexive { of, child: Box::new(child) } });
                    }
                }
            }
        }
        for s in &set {
            if let Rule::Beta([l, r]) = rule(s) {
                if l.iter().any(|p| !set.contains(p)) && r.iter().any(|p| !set.contains(p)) {
                    let left = self.close(extend(&set, &l))?;
                    let right = self.close(extend(&set, &r))?;
                    let of = s.clone();
                    return Some(Node { set, step: Step::Beta { of, children: Box::new([left, right]) } });
                }
            }
        }
        for s in &set {
            let (false, PropFormula::Box(a)) = s else { continue };
            let start = successor(self.logic, &set, a);
            let blocked = self.logic.transitive() && self.logic != ModalLogic::GL && self.seen.contains(&start);
            if blocked {
                continue;
            }
            self.seen.push(start.clone());
            let child = self.close(start);
            self.seen.pop();
            if let Some(child) = child {
                let of = s.clone();
                return Some(Node { set, step: Step::Successor { of, child: Box::new(child) } });
            }
        }
        None
    }
}

/// Checks that `node` is a closed tableau for `~a` under the rules of
/// `logic`.
pub fn check_certificate(logic: ModalLogic, a: &PropFormula, node: &Node) -> bool {
    if matches!(logic, ModalLogic::Triv | ModalLogic::Ver) {
        return false;
    }
    let root: BTreeSet<Signed> = [(false, a.clone())].into_iter().collect();
    node.set == root && check_node(logic, node)
}

fn check_node(logic: ModalLogic, node: &Node) -> bool {
    let set = &node.set;
    match &node.step {
        Step::Clash => clashes(set),
        Step::Alpha { of, child } => {
            set.contains(of)
                && matches!(rule(of), Rule::Alpha(parts) if child.set == extend(set, &parts))
                && check_node(logic, child)
        }
        Step::Beta { of, children } => {
            set.contains(of)
                && matches!(rule(of), Rule::Beta([l, r])
                    if children[0].set == extend(set, &l) && children[1].set == extend(set, &r))
                && children.iter().all(|c| check_node(logic, c))
        }
        Step::Reflexive { of, child } => {
            let (true, PropFormula::Box(b)) = of else { return false };
            logic.reflexive()
                && set.contains(of)
                && child.set == extend(set, &[(true, (**b).clone())])
                && check_node(logic, child)
        }
        Step::Successor { of, child } => {
            let (false, PropFormula::Box(b)) = of else { return false };
            set.contains(of) && child.set == successor(logic, set, b) && check_node(logic, child)
        }
    }
}
