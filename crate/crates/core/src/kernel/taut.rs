//! Propositional validity over the Boolean skeleton. Maximal non-Boolean
//! subformulas are atoms, identified up to syntactic equality.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::syntax::Formula;

type Signed<'a> = (bool, &'a Formula);
/// Two alternative extensions of a branch.
type Split<'a> = [Vec<Signed<'a>>; 2];

/// True when `phi` is a tautology in its Boolean skeleton.
pub fn is_tautology(phi: &Formula) -> bool {
    closes(vec![(false, phi)], Vec::new(), &mut BTreeMap::new())
}

/// Whether every branch of the signed tableau closes.
fn closes<'a>(
    mut todo: Vec<Signed<'a>>,
    mut splits: Vec<Split<'a>>,
    atoms: &mut BTreeMap<&'a Formula, bool>,
) -> bool {
    let mut assigned: Vec<&'a Formula> = Vec::new();
    let mut closed = false;
    while let Some((s, f)) = todo.pop() {
        match (s, f) {
            (s, Formula::Not(a)) => todo.push((!s, a)),
            (true, Formula::Bot) => {
                closed = true;
                break;
            }
            (false, Formula::Bot) => {}
            (true, Formula::And(a, b)) | (false, Formula::Or(a, b)) => {
                todo.push((s, a));
                todo.push((s, b));
            }
            (false, Formula::Imp(a, b)) => {
                todo.push((true, a));
                todo.push((false, b));
            }
            (false, Formula::And(a, b)) | (true, Formula::Or(a, b)) => splits.push([vec![(s, a)], vec![(s, b)]]),
            (true, Formula::Imp(a, b)) => splits.push([vec![(false, a)], vec![(true, b)]]),
            (s, Formula::Iff(a, b)) => splits.push([vec![(true, a), (s, b)], vec![(false, a), (!s, b)]]),
            (s, atom) => match atoms.get(atom) {
                Some(&v) if v != s => {
                    closed = true;
                    break;
                }
                Some(_) => {}
                None => {
                    atoms.insert(atom, s);
                    assigned.push(atom);
                }
            },
        }
    }
    if !closed {
        closed = match splits.pop() {
            None => false,
            Some([l, r]) => closes(l, splits.clone(), atoms) && closes(r, splits, atoms),
        };
    }
    for a in assigned {
        atoms.remove(a);
    }
    closed
}
