use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coding::Code;
use crate::syntax::{parse_formula, Formula, Var};

/// Axiom schemes known to the checker. Every scheme also admits universal
/// closures of its instances.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Scheme {
    /// Instance of a propositional tautology over the Boolean skeleton.
    Taut,
    /// `forall x A -> A(t)`.
    Inst,
    /// `A(t) -> exists x A`.
    ExistsIntro,
    /// `forall x (A -> B) -> (A -> forall x B)`, `x` not free in `A`.
    ForallDist,
    /// `forall x (A -> B) -> (exists x A -> B)`, `x` not free in `B`.
    ExistsElim,
    /// `t=t`.
    Refl,
    /// `s=t -> (P -> P')` for atomic `P`, `P'` replacing some `s` by `t`.
    EqSubst,
    SuccNonZero,
    SuccInj,
    AddZero,
    AddSucc,
    MulZero,
    MulSucc,
    /// `t1<=t2 <-> exists z (t1+z)=t2`.
    LeDef,
    /// `t1<t2 <-> S(t1)<=t2`.
    LtDef,
    /// `#0=0`.
    NumZero,
    /// `#(n+1)=S(#n)`.
    NumSucc,
    Induction,
    /// `forall x < t A <-> forall x (x<t -> A)`.
    BForallDef,
    /// `exists x < t A <-> exists x (x<t & A)`.
    BExistsDef,
    /// `forall x < t A <-> A(#0) & ... & A(#n-1)` for closed `t` of value `n`.
    BForallExpand,
    /// `exists x < t A <-> A(#0) | ... | A(#n-1)` for closed `t` of value `n`.
    BExistsExpand,
    /// A true closed atomic sentence or a negation of a false one.
    Arith,
    K,
    Four,
    T,
    Lob,
    Triv,
    Ver,
    S41,
}

impl Scheme {
    pub const ALL: [Scheme; 30] = [
        Scheme::Taut,
        Scheme::Inst,
        Scheme::ExistsIntro,
        Scheme::ForallDist,
        Scheme::ExistsElim,
        Scheme::Refl,
        Scheme::EqSubst,
        Scheme::SuccNonZero,
        Scheme::SuccInj,
        Scheme::AddZero,
        Scheme::AddSucc,
        Scheme::MulZero,
        Scheme::MulSucc,
        Scheme::LeDef,
        Scheme::LtDef,
        Scheme::NumZero,
        Scheme::NumSucc,
        Scheme::Induction,
        Scheme::BForallDef,
        Scheme::BExistsDef,
        Scheme::BForallExpand,
        Scheme::BExistsExpand,
        Scheme::Arith,
        Scheme::K,
        Scheme::Four,
        Scheme::T,
        Scheme::Lob,
        Scheme::Triv,
        Scheme::Ver,
        Scheme::S41,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Taut => "taut",
            Scheme::Inst => "inst",
            Scheme::ExistsIntro => "eintro",
            Scheme::ForallDist => "fdist",
            Scheme::ExistsElim => "eelim",
            Scheme::Refl => "refl",
            Scheme::EqSubst => "eqsub",
            Scheme::SuccNonZero => "s0",
            Scheme::SuccInj => "sinj",
            Scheme::AddZero => "add0",
            Scheme::AddSucc => "adds",
            Scheme::MulZero => "mul0",
            Scheme::MulSucc => "muls",
            Scheme::LeDef => "ledef",
            Scheme::LtDef => "ltdef",
            Scheme::NumZero => "num0",
            Scheme::NumSucc => "nums",
            Scheme::Induction => "ind",
            Scheme::BForallDef => "bfdef",
            Scheme::BExistsDef => "bedef",
            Scheme::BForallExpand => "bfexp",
            Scheme::BExistsExpand => "beexp",
            Scheme::Arith => "arith",
            Scheme::K => "k",
            Scheme::Four => "four",
            Scheme::T => "t",
            Scheme::Lob => "lob",
            Scheme::Triv => "triv",
            Scheme::Ver => "ver",
            Scheme::S41 => "s41",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.tag() == tag)
    }

    pub fn is_modal(self) -> bool {
        matches!(
            self,
            Scheme::K | Scheme::Four | Scheme::T | Scheme::Lob | Scheme::Triv | Scheme::Ver | Scheme::S41
        )
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Justification {
    Axiom(Scheme),
    /// The theory's extra axiom with this index.
    Extra(usize),
    /// Line `.0` is `A -> B` and line `.1` is `A`.
    Mp(usize, usize),
    Gen(usize, Var),
    Nec(usize),
    /// The conclusion of the interned proof with this code.
    Cited(Code),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Proof {
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn new(lines: Vec<Line>) -> Proof {
        Proof { lines }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(s) => write!(f, "ax:{}", s.tag()),
            Justification::Extra(i) => write!(f, "extra:{i}"),
            Justification::Mp(i, j) => write!(f, "mp:{i},{j}"),
            Justification::Gen(i, v) => write!(f, "gen:{i},{v}"),
            Justification::Nec(i) => write!(f, "nec:{i}"),
            Justification::Cited(c) => write!(f, "cite:{c}"),
        }
    }
}

/// Text form: `<justification> <formula>` per line, lines joined by `; `.
impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} {}", line.just, line.formula)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            writeln!(f, "{i:>4}  {:<14} {}", line.just.to_string(), line.formula)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofSyntaxError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ProofSyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "proof line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for ProofSyntaxError {}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s.split_once(':').ok_or_else(|| "missing `:`".to_string())?;
        let num = |a: &str| a.parse::<usize>().map_err(|_| alloc::format!("bad index {a:?}"));
        fn pair(a: &str) -> Result<(&str, &str), String> {
            a.split_once(',').ok_or_else(|| "expected two arguments".to_string())
        }
        Ok(match kind {
            "ax" => Justification::Axiom(
                Scheme::from_tag(args).ok_or_else(|| alloc::format!("unknown scheme {args:?}"))?,
            ),
            "extra" => Justification::Extra(num(args)?),
            "mp" => {
                let (a, b) = pair(args)?;
                Justification::Mp(num(a)?, num(b)?)
            }
            "gen" => {
                let (a, v) = pair(args)?;
                if !crate::syntax::is_identifier(v) {
                    return Err(alloc::format!("bad variable {v:?}"));
                }
                Justification::Gen(num(a)?, Var::new(v))
            }
            "nec" => Justification::Nec(num(args)?),
            "cite" => Justification::Cited(num(args)?),
            _ => return Err(alloc::format!("unknown justification {kind:?}")),
        })
    }
}

impl FromStr for Proof {
    type Err = ProofSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = Vec::new();
        if s.trim().is_empty() {
            return Ok(Proof::default());
        }
        for (i, chunk) in s.split(';').enumerate() {
            let chunk = chunk.trim();
            let err = |message: String| ProofSyntaxError { line: i, message };
            let (just, formula) =
                chunk.split_once(' ').ok_or_else(|| err("expected `<justification> <formula>`".to_string()))?;
            let just = just.parse().map_err(err)?;
            let formula = parse_formula(formula).map_err(|e| err(e.to_string()))?;
            lines.push(Line { formula, just });
        }
        Ok(Proof { lines })
    }
}
