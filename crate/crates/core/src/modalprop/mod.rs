//! Propositional modal logic: formulas, deciders with checkable evidence,
//! and an exhaustive scan for the modal disjunction property.

mod kripke;
mod scan;
mod tableau;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use kripke::{countermodel, KripkeModel};
pub use scan::{enumerate, mdp_scan, MdpReport};
pub use tableau::{check_certificate, refute, Node, Step};

use crate::syntax::Logic;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Bot,
    Var(String),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Imp(Box<PropFormula>, Box<PropFormula>),
    Iff(Box<PropFormula>, Box<PropFormula>),
    Box(Box<PropFormula>),
}

impl PropFormula {
    pub fn var(name: &str) -> PropFormula {
        PropFormula::Var(name.into())
    }

    pub fn not(a: PropFormula) -> PropFormula {
        PropFormula::Not(Box::new(a))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: PropFormula) -> PropFormula {
        PropFormula::Box(Box::new(a))
    }

    /// `~bot`.
    pub fn top() -> PropFormula {
        PropFormula::not(PropFormula::Bot)
    }

    /// Symbol count: atoms count one, each connective one more.
    pub fn size(&self) -> usize {
        match self {
            PropFormula::Bot | PropFormula::Var(_) => 1,
            PropFormula::Not(a) | PropFormula::Box(a) => 1 + a.size(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) | PropFormula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Distinct subformulas, children before parents.
    pub fn closure(&self) -> Vec<PropFormula> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<PropFormula>) {
        match self {
            PropFormula::Bot | PropFormula::Var(_) => {}
            PropFormula::Not(a) | PropFormula::Box(a) => a.collect(out),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) | PropFormula::Iff(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
        if !out.contains(self) {
            out.push(self.clone());
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .closure()
            .into_iter()
            .filter_map(|f| match f {
                PropFormula::Var(v) => Some(v),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// Classical truth with boxes given by `boxes`.
    pub fn eval(&self, val: &dyn Fn(&str) -> bool, boxes: &dyn Fn(&PropFormula) -> bool) -> bool {
        match self {
            PropFormula::Bot => false,
            PropFormula::Var(v) => val(v),
            PropFormula::Not(a) => !a.eval(val, boxes),
            PropFormula::And(a, b) => a.eval(val, boxes) && b.eval(val, boxes),
            PropFormula::Or(a, b) => a.eval(val, boxes) || b.eval(val, boxes),
            PropFormula::Imp(a, b) => !a.eval(val, boxes) || b.eval(val, boxes),
            PropFormula::Iff(a, b) => a.eval(val, boxes) == b.eval(val, boxes),
            PropFormula::Box(a) => boxes(a),
        }
    }
}

/// Every box replaced by its body.
pub fn erase_boxes(a: &PropFormula) -> PropFormula {
    map_boxes(a, &|b| erase_boxes(b))
}

/// Every boxed subformula replaced by `~bot`.
pub fn boxes_to_top(a: &PropFormula) -> PropFormula {
    map_boxes(a, &|_| PropFormula::top())
}

fn map_boxes(a: &PropFormula, f: &dyn Fn(&PropFormula) -> PropFormula) -> PropFormula {
    let rec = |x: &PropFormula| Box::new(map_boxes(x, f));
    match a {
        PropFormula::Bot | PropFormula::Var(_) => a.clone(),
        PropFormula::Not(x) => PropFormula::Not(rec(x)),
        PropFormula::And(x, y) => PropFormula::And(rec(x), rec(y)),
        PropFormula::Or(x, y) => PropFormula::Or(rec(x), rec(y)),
        PropFormula::Imp(x, y) => PropFormula::Imp(rec(x), rec(y)),
        PropFormula::Iff(x, y) => PropFormula::Iff(rec(x), rec(y)),
        PropFormula::Box(x) => f(x),
    }
}

/// Classical validity by truth table; boxes must be absent.
pub fn is_classical_tautology(a: &PropFormula) -> bool {
    falsifying_assignment(a).is_none()
}

/// The set of variables true in some assignment making the box-free `a`
/// false.
fn falsifying_assignment(a: &PropFormula) -> Option<Vec<String>> {
    let vars = a.vars();
    assert!(vars.len() < 32, "too many variables for a truth table");
    (0u64..1 << vars.len()).find_map(|m| {
        let val = |v: &str| vars.iter().position(|w| w == v).is_some_and(|i| m >> i & 1 == 1);
        let no_boxes = |_: &PropFormula| unreachable!("box-free input");
        (!a.eval(&val, &no_boxes))
            .then(|| vars.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| v.clone()).collect())
    })
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Bot => f.write_str("bot"),
            PropFormula::Var(v) => f.write_str(v),
            PropFormula::Not(a) => write!(f, "~{a}"),
            PropFormula::And(a, b) => write!(f, "({a} & {b})"),
            PropFormula::Or(a, b) => write!(f, "({a} | {b})"),
            PropFormula::Imp(a, b) => write!(f, "({a} -> {b})"),
            PropFormula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            PropFormula::Box(a) => write!(f, "box {a}"),
        }
    }
}

impl fmt::Debug for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for PropParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.pos, self.message)
    }
}

impl core::error::Error for PropParseError {}

/// Binary connectives bind looser than `~`, `box` and `dia`; `&` binds
/// tighter than `|`, then `->` (right associative), then `<->`.
impl FromStr for PropFormula {
    type Err = PropParseError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut p = PropParser { src, pos: 0 };
        let a = p.iff()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(a)
    }
}

struct PropParser<'a> {
    src: &'a str,
    pos: usize,
}

impl PropParser<'_> {
    fn error(&self, message: &str) -> PropParseError {
        PropParseError { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<PropFormula, PropParseError> {
        let mut a = self.imp()?;
        while self.eat("<->") {
            a = PropFormula::iff(a, self.imp()?);
        }
        Ok(a)
    }

    fn imp(&mut self) -> Result<PropFormula, PropParseError> {
        let a = self.or()?;
        if self.eat("->") {
            return Ok(PropFormula::imp(a, self.imp()?));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<PropFormula, PropParseError> {
        let mut a = self.and()?;
        while self.eat("|") {
            a = PropFormula::or(a, self.and()?);
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<PropFormula, PropParseError> {
        let mut a = self.unary()?;
        while self.eat("&") {
            a = PropFormula::and(a, self.unary()?);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<PropFormula, PropParseError> {
        if self.eat("~") {
            return Ok(PropFormula::not(self.unary()?));
        }
        if self.eat("(") {
            let a = self.iff()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(a);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(self.error("expected a formula"));
        }
        let word = &rest[..len];
        self.pos += len;
        Ok(match word {
            "bot" => PropFormula::Bot,
            "top" => PropFormula::top(),
            "box" => PropFormula::boxed(self.unary()?),
            "dia" => PropFormula::not(PropFormula::boxed(PropFormula::not(self.unary()?))),
            v => PropFormula::var(v),
        })
    }
}

/// The propositional logics with a decider.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ModalLogic {
    K,
    KT,
    K4,
    S4,
    GL,
    Triv,
    Ver,
}

impl ModalLogic {
    pub const ALL: [ModalLogic; 7] =
        [ModalLogic::K, ModalLogic::KT, ModalLogic::K4, ModalLogic::S4, ModalLogic::GL, ModalLogic::Triv, ModalLogic::Ver];

    pub fn tag(self) -> &'static str {
        Logic::from(self).tag()
    }

    pub fn from_tag(tag: &str) -> Option<ModalLogic> {
        Logic::from_tag(tag).and_then(|l| ModalLogic::try_from(l).ok())
    }

    fn reflexive(self) -> bool {
        matches!(self, ModalLogic::KT | ModalLogic::S4)
    }

    fn transitive(self) -> bool {
        matches!(self, ModalLogic::K4 | ModalLogic::S4 | ModalLogic::GL)
    }
}

impl From<ModalLogic> for Logic {
    fn from(l: ModalLogic) -> Logic {
        match l {
            ModalLogic::K => Logic::K,
            ModalLogic::KT => Logic::KT,
            ModalLogic::K4 => Logic::K4,
            ModalLogic::S4 => Logic::S4,
            ModalLogic::GL => Logic::GL,
            ModalLogic::Triv => Logic::Triv,
            ModalLogic::Ver => Logic::Ver,
        }
    }
}

impl TryFrom<Logic> for ModalLogic {
    type Error = Logic;

    fn try_from(l: Logic) -> Result<ModalLogic, Logic> {
        ModalLogic::ALL.into_iter().find(|m| Logic::from(*m) == l).ok_or(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A closed tableau for the negation.
    Tableau(Node),
    /// The box-erased (Triv) or box-trivialized (Ver) formula is a
    /// tautology.
    TruthTable,
    /// `world` of `model` falsifies the formula.
    Countermodel { model: KripkeModel, world: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub provable: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecideError {
    /// The formula has too many variables and boxed subformulas for the
    /// countermodel search.
    TooLarge(usize),
}

impl fmt::Display for DecideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecideError::TooLarge(n) => write!(f, "{n} atoms and boxed subformulas exceed the countermodel search limit"),
        }
    }
}

impl core::error::Error for DecideError {}

/// The reduction used for Triv and Ver.
fn collapse(logic: ModalLogic, a: &PropFormula) -> Option<PropFormula> {
    match logic {
        ModalLogic::Triv => Some(erase_boxes(a)),
        ModalLogic::Ver => Some(boxes_to_top(a)),
        _ => None,
    }
}

/// Provability alone, without evidence.
pub fn provable(logic: ModalLogic, a: &PropFormula) -> bool {
    match collapse(logic, a) {
        Some(c) => is_classical_tautology(&c),
        None => refute(logic, a).is_some(),
    }
}

/// Decides `a` in `logic`, with a closed tableau or truth table for
/// theorems and a countermodel otherwise.
pub fn decide(logic: ModalLogic, a: &PropFormula) -> Result<Decision, DecideError> {
    if let Some(c) = collapse(logic, a) {
        return Ok(match falsifying_assignment(&c) {
            None => Decision { provable: true, evidence: Evidence::TruthTable },
            Some(truths) => {
                let model = KripkeModel::single(logic == ModalLogic::Triv, truths);
                Decision { provable: false, evidence: Evidence::Countermodel { model, world: 0 } }
            }
        });
    }
    if let Some(node) = refute(logic, a) {
        return Ok(Decision { provable: true, evidence: Evidence::Tableau(node) });
    }
    let (model, world) = countermodel(logic, a)?.expect("open tableau but no countermodel");
    Ok(Decision { provable: false, evidence: Evidence::Countermodel { model, world } })
}

/// Re-checks the evidence of a decision independently of how it was found.
pub fn verify(logic: ModalLogic, a: &PropFormula, d: &Decision) -> bool {
    match (&d.evidence, d.provable) {
        (Evidence::Tableau(node), true) => check_certificate(logic, a, node),
        (Evidence::TruthTable, true) => collapse(logic, a).is_some_and(|c| is_classical_tautology(&c)),
        (Evidence::Countermodel { model, world }, false) => {
            model.satisfies_frame_conditions(logic) && *world < model.len() && !model.holds(*world, a)
        }
        _ => false,
    }
}
