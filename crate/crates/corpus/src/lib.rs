//! Seeded generators of sentences, normal-form inputs, fixed-point
//! contexts and propositional modal formulas.

pub mod oracle;

use boxarith_core::modalprop::PropFormula;
use boxarith_core::coding::Registry;
use boxarith_core::eval::{eval_sentence, Model};
use boxarith_core::kernel::{prove_true_sigma_b, Proof, ProofBuilder, TheoremStore};
use boxarith_core::syntax::{numeral, Formula, Logic, Term, TheoryId, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Corpus {
    rng: ChaCha8Rng,
    /// Unbounded quantifiers still allowed in the current sentence.
    unbounded_left: usize,
    next_var: usize,
}

/// Which quantifiers and boxes a generated formula may use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Shape {
    /// Anything, negations included.
    Mixed,
    /// Boxes, bounded atoms, `&`, `|`, bounded quantifiers.
    DeltaB,
    /// As `DeltaB`, plus unbounded `exists`.
    SigmaB,
    /// Box-free, bounded.
    Delta0,
}

impl Corpus {
    pub fn new(seed: u64) -> Corpus {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed), unbounded_left: 0, next_var: 0 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn fresh(&mut self) -> Var {
        let v = Var::new(&format!("x{}", self.next_var));
        self.next_var += 1;
        v
    }

    fn start(&mut self, unbounded: usize) {
        self.unbounded_left = unbounded;
        self.next_var = 0;
    }

    /// A term over `scope` whose value stays small.
    pub fn term(&mut self, scope: &[Var], depth: usize) -> Term {
        let leaf = |c: &mut Corpus| {
            if !scope.is_empty() && c.rng.gen_bool(0.5) {
                Term::Var(scope.choose(&mut c.rng).expect("non-empty").clone())
            } else {
                match c.rng.gen_range(0..3) {
                    0 => Term::Zero,
                    _ => numeral(c.rng.gen_range(0u32..5)),
                }
            }
        };
        if depth == 0 || self.rng.gen_bool(0.5) {
            return leaf(self);
        }
        match self.rng.gen_range(0..3) {
            0 => Term::succ(self.term(scope, depth - 1)),
            1 => Term::add(self.term(scope, depth - 1), self.term(scope, depth - 1)),
            _ => Term::mul(leaf(self), leaf(self)),
        }
    }

    fn atom(&mut self, scope: &[Var]) -> Formula {
        let (a, b) = (self.term(scope, 1), self.term(scope, 1));
        match self.rng.gen_range(0..7) {
            0 => Formula::Bot,
            1 | 2 => Formula::eq(a, b),
            3 | 4 => Formula::Lt(a, b),
            _ => Formula::Le(a, b),
        }
    }

    fn bound(&mut self, scope: &[Var]) -> Term {
        if !scope.is_empty() && self.rng.gen_bool(0.3) {
            Term::succ(Term::Var(scope.choose(&mut self.rng).expect("non-empty").clone()))
        } else {
            numeral(self.rng.gen_range(0u32..4))
        }
    }

    fn formula(&mut self, shape: Shape, scope: &mut Vec<Var>, depth: usize) -> Formula {
        if depth == 0 {
            return match shape {
                Shape::DeltaB | Shape::SigmaB if self.rng.gen_bool(0.4) => {
                    Formula::boxed(self.formula(Shape::Mixed, scope, 1))
                }
                _ => self.atom(scope),
            };
        }
        let d = depth - 1;
        let choice = self.rng.gen_range(0..10);
        match (shape, choice) {
            (Shape::Mixed | Shape::Delta0, 0) => Formula::not(self.formula(shape, scope, d)),
            (Shape::Mixed | Shape::Delta0, 1) => {
                let a = self.formula(shape, scope, d);
                let b = self.formula(shape, scope, d);
                if self.rng.gen_bool(0.5) {
                    Formula::imp(a, b)
                } else {
                    Formula::iff(a, b)
                }
            }
            (Shape::Mixed | Shape::DeltaB | Shape::SigmaB, 2) => {
                Formula::boxed(self.formula(Shape::Mixed, scope, d))
            }
            (_, 3 | 4) => {
                let a = self.formula(shape, scope, d);
                Formula::and(a, self.formula(shape, scope, d))
            }
            (_, 5 | 6) => {
                let a = self.formula(shape, scope, d);
                Formula::or(a, self.formula(shape, scope, d))
            }
            (_, 7 | 8) => {
                let t = self.bound(scope);
                let v = self.fresh();
                scope.push(v.clone());
                let body = self.formula(shape, scope, d);
                scope.pop();
                if self.rng.gen_bool(0.5) {
                    Formula::bforall(v, t, body)
                } else {
                    Formula::bexists(v, t, body)
                }
            }
            (Shape::Mixed | Shape::SigmaB, _) if self.unbounded_left > 0 => {
                self.unbounded_left -= 1;
                let v = self.fresh();
                scope.push(v.clone());
                let body = self.formula(shape, scope, d);
                scope.pop();
                if shape == Shape::Mixed && self.rng.gen_bool(0.5) {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
            _ => self.formula(shape, scope, d),
        }
    }

    /// A sentence mixing boxes, connectives, bounded and (at most two)
    /// unbounded quantifiers.
    pub fn sentence(&mut self, depth: usize) -> Formula {
        self.start(2);
        self.formula(Shape::Mixed, &mut Vec::new(), depth)
    }

    /// A Sigma(B) sentence.
    pub fn sigma_b(&mut self, depth: usize) -> Formula {
        self.start(2);
        self.formula(Shape::SigmaB, &mut Vec::new(), depth)
    }

    /// A Delta(B) sentence.
    pub fn delta_b(&mut self, depth: usize) -> Formula {
        self.start(0);
        self.formula(Shape::DeltaB, &mut Vec::new(), depth)
    }

    /// A Delta0 formula over `scope`.
    pub fn delta0(&mut self, scope: &[Var], depth: usize) -> Formula {
        self.start(0);
        self.next_var = scope.len() + 100;
        self.formula(Shape::Delta0, &mut scope.to_vec(), depth)
    }

    /// A true sentence `exists y d(y)` with `d` bounded, and its least
    /// witness, which is at most `max_witness`.
    pub fn true_sigma1(&mut self, max_witness: u32) -> (Formula, u32) {
        let y = Var::new("y");
        let k = self.rng.gen_range(0..=max_witness);
        let pin = self.pin(&y, k);
        let extra = loop {
            let d = self.delta0(&[], 2);
            if self.truth_of_closed(&d) {
                break d;
            }
        };
        (Formula::exists(y, Formula::and(pin, extra)), k)
    }

    /// A false sentence `exists y d(y)` with `d` bounded.
    pub fn false_sigma1(&mut self) -> Formula {
        let y = Var::new("y");
        let yt = Term::Var(y.clone());
        let body = match self.rng.gen_range(0..4) {
            0 => Formula::eq(Term::succ(yt), Term::Zero),
            1 => Formula::eq(Term::mul(yt, Term::Zero), numeral(self.rng.gen_range(1u32..9))),
            2 => {
                let k = self.rng.gen_range(0..20);
                let pin = self.pin(&y, k);
                Formula::and(pin, Formula::Lt(Term::Var(y.clone()), numeral(k)))
            }
            _ => {
                let k = self.rng.gen_range(0..20);
                let pin = self.pin(&y, k);
                let no = loop {
                    let d = self.delta0(&[], 2);
                    if !self.truth_of_closed(&d) {
                        break d;
                    }
                };
                Formula::and(pin, no)
            }
        };
        Formula::exists(y, body)
    }

    /// `y` equal to a closed term worth `k`, in one of a few forms.
    fn pin(&mut self, y: &Var, k: u32) -> Formula {
        let yt = Term::Var(y.clone());
        match self.rng.gen_range(0..3) {
            0 => Formula::eq(yt, numeral(k)),
            1 if k > 0 => Formula::eq(Term::succ(yt), numeral(k + 1)),
            _ => {
                let a = self.rng.gen_range(0..=k);
                Formula::eq(Term::add(yt, numeral(a)), Term::add(numeral(k), numeral(a)))
            }
        }
    }

    fn truth_of_closed(&self, d: &Formula) -> bool {
        let reg = Registry::new();
        eval_sentence(d, &Model::triv(&reg, 0)).expect("closed").is_true()
    }

    /// A fixed-point context whose free variables are among `vars`; codes
    /// occur inside `prf` atoms and as plain terms. Sigma(B) when
    /// `sigma_b`.
    pub fn context(&mut self, vars: &[Var], sigma_b: bool) -> Formula {
        let th: TheoryId = Logic::K.into();
        let mention = |c: &mut Corpus| -> Formula {
            let v = vars.choose(&mut c.rng).expect("non-empty").clone();
            let y = Var::new("y");
            match c.rng.gen_range(0..3) {
                0 => Formula::exists(y.clone(), Formula::Prf(th.clone(), Term::Var(v), Term::Var(y))),
                1 => Formula::Lt(numeral(c.rng.gen_range(0u32..4)), Term::Var(v)),
                _ => Formula::boxed(Formula::eq(Term::Var(v.clone()), Term::Var(v))),
            }
        };
        let a = mention(self);
        let b = if sigma_b { self.sigma_b(1) } else { self.sentence(1) };
        let c = mention(self);
        let mut out = match self.rng.gen_range(0..3) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            _ => Formula::and(a, Formula::or(b, c.clone())),
        };
        if !sigma_b && self.rng.gen_bool(0.3) {
            out = Formula::not(out);
        }
        if self.rng.gen_bool(0.5) {
            out = Formula::or(out, c);
        }
        out
    }

    /// A propositional modal formula with at most `size` symbols over the
    /// first `vars` of `p, q, r, s`.
    pub fn prop(&mut self, vars: usize, size: usize) -> PropFormula {
        const NAMES: [&str; 4] = ["p", "q", "r", "s"];
        if size <= 1 || self.rng.gen_bool(0.15) {
            return if vars == 0 || self.rng.gen_bool(0.15) {
                PropFormula::Bot
            } else {
                PropFormula::var(NAMES[self.rng.gen_range(0..vars.min(4))])
            };
        }
        // Binary connectives need a symbol for each side.
        let arity_cap = if size < 3 { 3 } else { 7 };
        match self.rng.gen_range(0..arity_cap) {
            0 => PropFormula::not(self.prop(vars, size - 1)),
            1 | 2 => PropFormula::boxed(self.prop(vars, size - 1)),
            k => {
                let left = self.rng.gen_range(1..size - 1);
                let a = self.prop(vars, left);
                let b = self.prop(vars, size - 1 - left);
                match k {
                    3 => PropFormula::and(a, b),
                    4 => PropFormula::or(a, b),
                    5 => PropFormula::imp(a, b),
                    _ => PropFormula::iff(a, b),
                }
            }
        }
    }
}

/// Closed bodies of boxes in `phi`, innermost first.
fn closed_box_bodies(phi: &Formula, out: &mut Vec<Formula>) {
    match phi {
        Formula::Box(a) => {
            closed_box_bodies(a, out);
            if a.is_sentence() && !out.contains(a) {
                out.push((**a).clone());
            }
        }
        Formula::Not(a) => closed_box_bodies(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            closed_box_bodies(a, out);
            closed_box_bodies(b, out);
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::BForall(_, _, a) | Formula::BExists(_, _, a) => {
            closed_box_bodies(a, out)
        }
        _ => {}
    }
}

impl Corpus {
    /// Records proofs of roughly half of the closed box bodies of `phi`
    /// that the synthesizer can prove. Returns how many were recorded.
    pub fn seed_store(&mut self, reg: &Registry, theory: &TheoryId, store: &mut TheoremStore, phi: &Formula) -> usize {
        let mut bodies = Vec::new();
        closed_box_bodies(phi, &mut bodies);
        let mut added = 0;
        for a in bodies {
            if !self.rng.gen_bool(0.5) {
                continue;
            }
            if let Some(p) = prove_true_sigma_b(reg, theory, &a, reg.len()) {
                store.record(reg, theory, &p).expect("synthesized proofs check");
                added += 1;
            }
        }
        added
    }
}

impl Corpus {
    /// A closed bounded sentence, or the box of one.
    pub fn simple_hypothesis(&mut self) -> Formula {
        let d = self.delta0(&[], 2);
        if self.rng.gen_bool(0.5) {
            Formula::boxed(d)
        } else {
            d
        }
    }

    /// A simple hypothesis, sometimes joined with a second by `&` or `|`.
    pub fn hypothesis(&mut self) -> Formula {
        let a = self.simple_hypothesis();
        match self.rng.gen_range(0..4) {
            0 => Formula::and(a, self.simple_hypothesis()),
            1 => Formula::or(a, self.simple_hypothesis()),
            _ => a,
        }
    }

    /// A random derivation that cites `xs` as extra axioms `0..xs.len()`.
    pub fn derivation(&mut self, xs: &[Formula]) -> Proof {
        let mut b = ProofBuilder::new();
        let mut lines: Vec<usize> = xs.iter().enumerate().map(|(j, x)| b.extra(j, x.clone())).collect();
        for _ in 0..self.rng.gen_range(1..5) {
            let i = lines[self.rng.gen_range(0..lines.len())];
            let j = lines[self.rng.gen_range(0..lines.len())];
            let next = match self.rng.gen_range(0..3) {
                0 => {
                    let goal = Formula::and(b.formula(i).clone(), b.formula(j).clone());
                    b.chain(&[i, j], goal)
                }
                1 => {
                    let goal = Formula::or(b.formula(i).clone(), self.delta0(&[], 1));
                    b.chain(&[i], goal)
                }
                _ => b.nec(i),
            };
            lines.push(next);
        }
        b.finish(*lines.last().expect("xs is non-empty"))
    }
}
