//! Recursive-descent parser for the canonical text form.
//!
//! A `(` may open a binary formula, a grouped formula or a parenthesised
//! term; the parser tries the formula readings first and backtracks.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{free_vars, is_identifier, term_vars, CodeSub, Formula, Logic, Term, TheoryId, Var};

const KEYWORDS: [&str; 7] = ["bot", "forall", "exists", "box", "prf", "inW", "code"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || s == "S"
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Zero,
    Num(BigUint),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Eq,
    Le,
    Lt,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Assign,
    Plus,
    Star,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Word(w) => return write!(f, "`{w}`"),
            Tok::Num(n) => return write!(f, "`#{n}`"),
            Tok::Zero => "0",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            Tok::Assign => ":=",
            Tok::Plus => "+",
            Tok::Star => "*",
        };
        write!(f, "`{s}`")
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, message: &str| ParseError { pos, message: message.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'<' if two(b"<->") => {
                i += 3;
                out.push((start, Tok::DArrow));
                continue;
            }
            b'<' if two(b"<=") => {
                i += 2;
                out.push((start, Tok::Le));
                continue;
            }
            b'<' => Tok::Lt,
            b'-' if two(b"->") => {
                i += 2;
                out.push((start, Tok::Arrow));
                continue;
            }
            b':' if two(b":=") => {
                i += 2;
                out.push((start, Tok::Assign));
                continue;
            }
            b'0' => {
                if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    return Err(err(i, "numerals other than 0 are written #n"));
                }
                Tok::Zero
            }
            b'#' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(i, "expected digits after `#`"));
                }
                let digits = &src[i + 1..j];
                if digits.len() > 1 && digits.starts_with('0') {
                    return Err(err(i, "numeral with leading zero"));
                }
                let n = BigUint::parse_bytes(digits.as_bytes(), 10)
                    .ok_or_else(|| err(i, "bad numeral"))?;
                i = j;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((start, Tok::Word(src[i..j].to_string())));
                i = j;
                continue;
            }
            _ => return Err(err(i, "unexpected character")),
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    /// Deepest error seen, reported when every alternative fails.
    best: Option<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len(), best: None })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&mut self, message: impl Into<String>) -> PResult<T> {
        self.fail_at(self.offset(), message)
    }

    fn fail_at<T>(&mut self, pos: usize, message: impl Into<String>) -> PResult<T> {
        let e = ParseError { pos, message: message.into() };
        if self.best.as_ref().is_none_or(|b| b.pos <= e.pos) {
            self.best = Some(e.clone());
        }
        Err(e)
    }

    fn unexpected<T>(&mut self, wanted: &str) -> PResult<T> {
        let msg = match self.peek() {
            Some(t) => alloc::format!("expected {wanted}, found {t}"),
            None => alloc::format!("expected {wanted}, found end of input"),
        };
        self.fail(msg)
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&alloc::format!("{tok}"))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn var(&mut self) -> PResult<Var> {
        match self.word() {
            Some(w) if is_identifier(w) => {
                let v = Var::new(w);
                self.pos += 1;
                Ok(v)
            }
            _ => self.unexpected("a variable"),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek().cloned() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Term::Num(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.term()?;
                let add = match self.peek() {
                    Some(Tok::Plus) => true,
                    Some(Tok::Star) => false,
                    _ => return self.unexpected("`+` or `*`"),
                };
                self.pos += 1;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(if add { Term::add(a, b) } else { Term::mul(a, b) })
            }
            Some(Tok::Word(w)) if w == "S" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let a = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(a))
            }
            Some(Tok::Word(w)) if w == "code" => {
                self.pos += 1;
                self.code_sub()
            }
            Some(Tok::Word(w)) if is_identifier(&w) => {
                self.pos += 1;
                Ok(Term::Var(Var::new(&w)))
            }
            _ => self.unexpected("a term"),
        }
    }

    fn code_sub(&mut self) -> PResult<Term> {
        let at = self.offset();
        self.expect(Tok::LBrack)?;
        let f = self.formula()?;
        self.expect(Tok::RBrack)?;
        self.expect(Tok::LBrace)?;
        let mut subst = BTreeMap::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                let v = self.var()?;
                self.expect(Tok::Assign)?;
                let t = self.term()?;
                if subst.insert(v.clone(), t).is_some() {
                    return self.fail(alloc::format!("variable {v} substituted twice"));
                }
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        match CodeSub::new(f, subst) {
            Some(c) => Ok(Term::CodeSub(Box::new(c))),
            None => self.fail_at(at, "code substitution must cover exactly the free variables".to_string()),
        }
    }

    fn theory(&mut self) -> PResult<TheoryId> {
        let base = match self.word().and_then(Logic::from_tag) {
            Some(l) => l,
            None => return self.unexpected("a theory tag"),
        };
        self.pos += 1;
        let mut extra = Vec::new();
        while self.eat(&Tok::LBrace) {
            let at = self.offset();
            let ax = self.formula()?;
            if !free_vars(&ax).is_empty() {
                return self.fail_at(at, "extra axioms must be sentences".to_string());
            }
            extra.push(ax);
            self.expect(Tok::RBrace)?;
        }
        Ok(TheoryId { base, extra })
    }

    fn atom(&mut self) -> PResult<Formula> {
        let a = self.term()?;
        let rel = self.peek().cloned();
        match rel {
            Some(Tok::Eq) | Some(Tok::Le) | Some(Tok::Lt) => self.pos += 1,
            _ => return self.unexpected("`=`, `<=` or `<`"),
        }
        let b = self.term()?;
        Ok(match rel {
            Some(Tok::Eq) => Formula::Eq(a, b),
            Some(Tok::Le) => Formula::Le(a, b),
            _ => Formula::Lt(a, b),
        })
    }

    fn quantifier(&mut self, universal: bool) -> PResult<Formula> {
        let v = self.var()?;
        if self.eat(&Tok::Lt) {
            let at = self.offset();
            let bound = self.term()?;
            if term_vars(&bound).contains(&v) {
                return self.fail_at(at, alloc::format!("bound variable {v} occurs in its bound"));
            }
            let body = Box::new(self.formula()?);
            Ok(if universal {
                Formula::BForall(v, bound, body)
            } else {
                Formula::BExists(v, bound, body)
            })
        } else {
            let body = Box::new(self.formula()?);
            Ok(if universal { Formula::Forall(v, body) } else { Formula::Exists(v, body) })
        }
    }

    fn parenthesised(&mut self) -> PResult<Formula> {
        let save = self.pos;
        self.pos += 1;
        let attempt = (|| {
            let a = self.formula()?;
            let op = self.peek().cloned();
            let build: fn(Formula, Formula) -> Formula = match op {
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok(a);
                }
                Some(Tok::Amp) => Formula::and,
                Some(Tok::Bar) => Formula::or,
                Some(Tok::Arrow) => Formula::imp,
                Some(Tok::DArrow) => Formula::iff,
                _ => return self.unexpected("a connective or `)`"),
            };
            self.pos += 1;
            let b = self.formula()?;
            self.expect(Tok::RParen)?;
            Ok(build(a, b))
        })();
        match attempt {
            Ok(f) => Ok(f),
            Err(_) => {
                self.pos = save;
                self.atom()
            }
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::LParen) => self.parenthesised(),
            Some(Tok::Word(w)) => match w.as_str() {
                "bot" => {
                    self.pos += 1;
                    Ok(Formula::Bot)
                }
                "box" => {
                    self.pos += 1;
                    Ok(Formula::boxed(self.formula()?))
                }
                "forall" => {
                    self.pos += 1;
                    self.quantifier(true)
                }
                "exists" => {
                    self.pos += 1;
                    self.quantifier(false)
                }
                "prf" => {
                    self.pos += 1;
                    self.expect(Tok::LBrack)?;
                    let t = self.theory()?;
                    self.expect(Tok::RBrack)?;
                    self.expect(Tok::LParen)?;
                    let a = self.term()?;
                    self.expect(Tok::Comma)?;
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Formula::Prf(t, a, b))
                }
                "inW" => {
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let a = self.term()?;
                    self.expect(Tok::Comma)?;
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Formula::InW(a, b))
                }
                _ => self.atom(),
            },
            _ => self.atom(),
        }
    }

    fn finish<T>(&mut self, r: PResult<T>) -> PResult<T> {
        match r {
            Ok(v) if self.pos == self.toks.len() => Ok(v),
            Ok(_) => self.unexpected("end of input"),
            Err(e) => Err(match self.best.take() {
                Some(b) if b.pos > e.pos => b,
                _ => e,
            }),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.formula();
    p.finish(r)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.term();
    p.finish(r)
}

/// Reads a theory such as `k4` or `gl{box bot}`.
pub fn parse_theory(src: &str) -> Result<TheoryId, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.theory();
    p.finish(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn box_of_grouped_atom() {
        assert_eq!(
            parse_formula("box (0=0)").unwrap(),
            Formula::boxed(Formula::eq(Term::Zero, Term::Zero))
        );
    }

    #[test]
    fn exists_with_spaces_in_atom() {
        assert_eq!(
            parse_formula("exists x (x = S(0))").unwrap(),
            Formula::exists(Var::new("x"), Formula::eq(x(), Term::succ(Term::Zero)))
        );
    }

    #[test]
    fn bounded_forall() {
        let f = parse_formula("forall x < S(0) box bot").unwrap();
        assert_eq!(
            f,
            Formula::BForall(Var::new("x"), Term::succ(Term::Zero), Box::new(Formula::boxed(Formula::Bot)))
        );
        assert_eq!(f.to_string(), "forall x < S(0) box bot");
    }

    #[test]
    fn parenthesised_term_on_the_left() {
        let f = parse_formula("((x+S(0))=#3 & ~(x*x)<=0)").unwrap();
        assert_eq!(f.to_string(), "((x+S(0))=#3 & ~(x*x)<=0)");
    }

    #[test]
    fn bound_may_not_mention_its_variable() {
        let e = parse_formula("forall x < S(x) x=x").unwrap_err();
        assert!(e.message.contains("occurs in its bound"), "{e}");
    }

    #[test]
    fn prf_with_extra_axioms() {
        let src = "prf[k4{box bot}{~0=S(0)}](#12,y)";
        let f = parse_formula(src).unwrap();
        assert_eq!(f.to_string(), src);
        assert!(parse_formula("prf[k4{x=0}](#1,#2)").is_err());
    }

    #[test]
    fn code_sub_round_trip_and_cover() {
        let src = "exists y prf[gl](code[box x=0]{x:=x},y)";
        assert_eq!(parse_formula(src).unwrap().to_string(), src);
        assert!(parse_formula("code[x=0]{}=0").is_err());
        assert!(parse_formula("code[0=0]{}=0").is_ok());
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = parse_formula("(0=0 & 0=)").unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(parse_formula("0=0 0=0").is_err());
        assert!(parse_formula("#07=0").is_err());
        assert!(parse_formula("01=0").is_err());
    }

    #[test]
    fn all_connectives_print_canonically() {
        for src in [
            "bot",
            "~~bot",
            "(0=0 -> (bot <-> box 0<S(0)))",
            "(inW(x,#3) | exists y < (x+#2) box ~y=x)",
            "forall x exists y x<=y",
        ] {
            assert_eq!(parse_formula(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn theory_tags() {
        for l in Logic::ALL {
            assert_eq!(parse_theory(l.tag()).unwrap(), TheoryId::new(l));
        }
        assert!(parse_theory("s5").is_err());
    }
}
