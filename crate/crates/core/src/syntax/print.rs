use core::fmt::{self, Display, Formatter, Write};

use super::{CodeSub, Formula, Term, TheoryId};

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_char('0'),
            Term::Var(v) => f.write_str(v.as_str()),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Add(a, b) => write!(f, "({a}+{b})"),
            Term::Mul(a, b) => write!(f, "({a}*{b})"),
            Term::Num(n) => write!(f, "#{n}"),
            Term::CodeSub(c) => Display::fmt(c, f),
        }
    }
}

impl Display for CodeSub {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "code[{}]{{", self.formula())?;
        for (i, (v, t)) in self.subst().iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}:={t}")?;
        }
        f.write_char('}')
    }
}

impl Display for TheoryId {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.tag())?;
        for ax in &self.extra {
            write!(f, "{{{ax}}}")?;
        }
        Ok(())
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bot => f.write_str("bot"),
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Le(a, b) => write!(f, "{a}<={b}"),
            Formula::Lt(a, b) => write!(f, "{a}<{b}"),
            Formula::Prf(t, a, b) => write!(f, "prf[{t}]({a},{b})"),
            Formula::InW(a, b) => write!(f, "inW({a},{b})"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Imp(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Formula::Forall(v, a) => write!(f, "forall {v} {a}"),
            Formula::Exists(v, a) => write!(f, "exists {v} {a}"),
            Formula::BForall(v, t, a) => write!(f, "forall {v} < {t} {a}"),
            Formula::BExists(v, t, a) => write!(f, "exists {v} < {t} {a}"),
            Formula::Box(a) => write!(f, "box {a}"),
        }
    }
}
