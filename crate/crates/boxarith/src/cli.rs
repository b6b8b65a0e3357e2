//! Argument parsing and the subcommand adapters.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use boxarith_core::classes::{
    boxes_disjunction, classify, delta_b_sentence_to_boxes, minus, positive_sigma1_form, sigma_b_to_exists_delta_b,
    star,
};
use boxarith_core::coding::Registry;
use boxarith_core::constructions::{
    audit_cross_references, build, check_dc, check_dp, check_mdp, dc_hypothesis, GalleryKind,
};
use boxarith_core::eval::{eval_sentence, Flavor, Model};
use boxarith_core::kernel::{check_proof, prove_true_sigma_b, Proof, TheoremStore};
use boxarith_core::modalprop::{decide, mdp_scan, Evidence, ModalLogic, PropFormula};
use boxarith_core::syntax::{parse_formula, parse_theory, Formula, TheoryId, Var};
use boxarith_core::translate::{alpha, beta, pr_translate, PrTag, PrVariant};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{journal, storefile};

pub const DEFAULT_STORE: &str = "boxarith.store";
pub const STORE_ENV: &str = "BOXARITH_STORE";

#[derive(Parser, Debug)]
#[command(name = "boxarith", version, about = "Workbench for arithmetic with a provability box")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Theorem store file [default: $BOXARITH_STORE, else boxarith.store]
    #[arg(long, global = true)]
    store: Option<PathBuf>,
    /// Registry journal [default: the store path with `.journal` appended]
    #[arg(long, global = true)]
    journal: Option<PathBuf>,
    #[arg(long, global = true, default_value = "gl", value_parser = theory_arg)]
    theory: TheoryId,
    /// Witness and proof-code budget
    #[arg(long, global = true, default_value_t = 64)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn theory_arg(s: &str) -> Result<TheoryId, String> {
    parse_theory(s).map_err(|e| e.to_string())
}

fn logic_arg(s: &str) -> Result<ModalLogic, String> {
    ModalLogic::from_tag(s).ok_or_else(|| {
        let tags: Vec<&str> = ModalLogic::ALL.iter().map(|l| l.tag()).collect();
        format!("expected one of {}", tags.join(", "))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    /// Values only, tab separated.
    Text,
    /// `key=value` fields, tab separated.
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the classes a formula belongs to.
    Classify { formula: String },
    Normalize {
        #[arg(long, value_enum)]
        rule: Rule,
        formula: String,
    },
    Translate {
        #[arg(long, value_enum)]
        mode: Mode,
        formula: String,
    },
    /// Simultaneous fixed points: `psi_i` equals context `i` with each
    /// variable replaced by the code of the matching `psi_j`.
    Diag {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(required = true)]
        contexts: Vec<String>,
    },
    Eval {
        #[arg(long, value_enum)]
        model: ModelArg,
        sentence: String,
    },
    /// Synthesize a proof of a true Sigma(B) sentence.
    Prove {
        #[arg(long)]
        record: bool,
        sentence: String,
    },
    /// Check a proof given as text or by registry code.
    Check {
        #[arg(long, conflicts_with = "proof", required_unless_present = "proof")]
        code: Option<usize>,
        proof: Option<String>,
    },
    Store {
        #[command(subcommand)]
        action: StoreAction,
    },
    Gallery {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(GalleryKind::TAGS))]
        kind: String,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        /// Family members, repeatable.
        #[arg(long)]
        psi: Vec<String>,
    },
    /// Disjunction property evidence for a pair, or for every stored
    /// disjunction.
    AuditDp {
        /// Read the pair as `box phi | box psi`.
        #[arg(long)]
        mdp: bool,
        #[arg(num_args = 2, value_names = ["PHI", "PSI"])]
        pair: Vec<String>,
    },
    /// Disjunctive correctness evidence for a sentence, or for every stored
    /// `phi | PR(phi)`.
    AuditDc { sentence: Option<String> },
    Decide {
        #[arg(long, value_parser = logic_arg)]
        logic: ModalLogic,
        formula: String,
    },
    ScanMdp {
        #[arg(long, value_parser = logic_arg)]
        logic: ModalLogic,
        #[arg(long, default_value_t = 7)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Possigma1,
    S2d,
    Boxes,
    Minus,
    Star,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Alpha,
    Beta,
    Pi,
    Piprime,
    Rho,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Triv,
    Ver,
    Prov,
    Rho,
}

#[derive(Subcommand, Debug)]
enum StoreAction {
    List,
    /// Check a proof and record its conclusion.
    Add { proof: String },
    NecClose {
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    BoxElimClose,
    Status {
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
}

impl Command {
    fn needs_state(&self) -> bool {
        match self {
            Command::Classify { .. } | Command::Normalize { .. } | Command::Decide { .. } | Command::ScanMdp { .. } => {
                false
            }
            Command::Translate { mode, .. } => !matches!(mode, Mode::Alpha | Mode::Beta),
            _ => true,
        }
    }
}

/// Resolved configuration.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub store: PathBuf,
    pub journal: PathBuf,
    pub theory: TheoryId,
    pub budget: usize,
    pub format: Format,
}

impl CliConfig {
    fn resolve(g: GlobalArgs, env_store: Option<OsString>) -> CliConfig {
        let store = g
            .store
            .or_else(|| env_store.filter(|s| !s.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_STORE));
        let journal = g.journal.unwrap_or_else(|| with_suffix(&store, ".journal"));
        CliConfig { store, journal, theory: g.theory, budget: g.budget, format: g.format }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

type Outcome = Result<Vec<Record>, Failure>;

/// One output line.
#[derive(Clone, Debug, Default)]
struct Record(Vec<(&'static str, String)>);

impl Record {
    fn new() -> Record {
        Record::default()
    }

    fn with(mut self, key: &'static str, value: impl Display) -> Record {
        self.0.push((key, value.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let fields: Vec<String> = match format {
            Format::Text => self.0.iter().map(|(_, v)| v.clone()).collect(),
            Format::Machine => self.0.iter().map(|(k, v)| format!("{k}={v}")).collect(),
        };
        fields.join("\t")
    }
}

fn one(key: &'static str, value: impl Display) -> Outcome {
    Ok(vec![Record::new().with(key, value)])
}

/// Registry and store loaded from disk, held under an exclusive lock.
struct State {
    reg: Registry,
    store: TheoremStore,
    journal_text: Option<String>,
    store_text: Option<String>,
    _lock: File,
}

fn read_optional(path: &Path) -> io::Result<Option<String>> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e),
    }
}

fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

impl State {
    fn open(cfg: &CliConfig) -> Result<State, Failure> {
        let io_err = |p: &Path, e: io::Error| Failure::Domain(format!("{}: {e}", p.display()));
        let lock_path = with_suffix(&cfg.store, ".lock");
        let lock = File::create(&lock_path).map_err(|e| io_err(&lock_path, e))?;
        lock.lock().map_err(|e| io_err(&lock_path, e))?;
        let journal_text = read_optional(&cfg.journal).map_err(|e| io_err(&cfg.journal, e))?;
        let reg = match &journal_text {
            Some(t) => journal::replay(t).map_err(|e| io_err(&cfg.journal, io::Error::other(e)))?,
            None => Registry::new(),
        };
        let store_text = read_optional(&cfg.store).map_err(|e| io_err(&cfg.store, e))?;
        let store = match &store_text {
            Some(t) => storefile::load(&reg, t).map_err(|e| io_err(&cfg.store, io::Error::other(e)))?,
            None => TheoremStore::new(),
        };
        Ok(State { reg, store, journal_text, store_text, _lock: lock })
    }

    /// Writes back whatever changed, journal first since the store refers
    /// to its codes.
    fn save(&self, cfg: &CliConfig) -> Result<(), Failure> {
        let journal = journal::render(&self.reg);
        if self.journal_text.as_deref() != Some(&journal) && !(self.journal_text.is_none() && self.reg.is_empty()) {
            write_atomic(&cfg.journal, &journal).map_err(|e| domain(format!("{}: {e}", cfg.journal.display())))?;
        }
        let store = storefile::render(&self.store);
        if self.store_text.as_deref() != Some(&store)
            && !(self.store_text.is_none() && self.store.records().is_empty())
        {
            write_atomic(&cfg.store, &store).map_err(|e| domain(format!("{}: {e}", cfg.store.display())))?;
        }
        Ok(())
    }
}

fn formula(src: &str) -> Result<Formula, Failure> {
    parse_formula(src).map_err(domain)
}

fn sentence(src: &str) -> Result<Formula, Failure> {
    let phi = formula(src)?;
    if !phi.is_sentence() {
        return Err(domain(format!("{phi} is not a sentence")));
    }
    Ok(phi)
}

/// Runs one invocation and returns the exit status: 0 on success, 1 on a
/// domain error, 2 on a usage error.
pub fn run<I, T>(args: I, env_store: Option<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    let cfg = CliConfig::resolve(cli.global, env_store);
    let result = if cli.command.needs_state() {
        State::open(&cfg).and_then(|mut st| {
            let records = stateful(&cfg, &mut st, cli.command)?;
            st.save(&cfg)?;
            Ok(records)
        })
    } else {
        stateless(cli.command)
    };
    match result {
        Ok(records) => {
            let mut text = String::new();
            for r in &records {
                text.push_str(&r.render(cfg.format));
                text.push('\n');
            }
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(_) => 1,
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn stateless(command: Command) -> Outcome {
    match command {
        Command::Classify { formula: src } => one("classes", classify(&formula(&src)?)),
        Command::Normalize { rule, formula: src } => normalize(rule, &formula(&src)?),
        Command::Translate { mode, formula: src } => {
            let phi = formula(&src)?;
            match mode {
                Mode::Alpha => one("formula", alpha(&phi)),
                Mode::Beta => one("formula", beta(&phi)),
                _ => unreachable!("provability translations need the registry"),
            }
        }
        Command::Decide { logic, formula: src } => {
            let a: PropFormula = src.parse().map_err(domain)?;
            let d = decide(logic, &a).map_err(domain)?;
            let r = Record::new().with("logic", logic.tag()).with("provable", d.provable);
            Ok(vec![match d.evidence {
                Evidence::Tableau(_) => r.with("evidence", "tableau"),
                Evidence::TruthTable => r.with("evidence", "truth-table"),
                Evidence::Countermodel { model, world } => {
                    r.with("evidence", "countermodel").with("world", format!("w{world}")).with("model", model)
                }
            }])
        }
        Command::ScanMdp { logic, size, vars } => {
            let rep = mdp_scan(logic, size, vars);
            let mut out = vec![Record::new()
                .with("logic", logic.tag())
                .with("formulas", rep.formulas)
                .with("classes", rep.classes)
                .with("hypotheses", rep.hypotheses)
                .with("witnessed", rep.witnessed)
                .with("violations", rep.violations.len())];
            for (a, b) in &rep.violations {
                out.push(Record::new().with("left", a).with("right", b));
            }
            Ok(out)
        }
        _ => unreachable!("stateful command"),
    }
}

fn normalize(rule: Rule, phi: &Formula) -> Outcome {
    match rule {
        Rule::Possigma1 => one("formula", positive_sigma1_form(phi).map_err(domain)?),
        Rule::S2d => {
            let (v, psi) = sigma_b_to_exists_delta_b(phi).map_err(domain)?;
            Ok(vec![Record::new().with("var", v).with("formula", psi)])
        }
        Rule::Boxes => {
            let psis = delta_b_sentence_to_boxes(&Registry::new(), phi).map_err(domain)?;
            one("formula", boxes_disjunction(&psis))
        }
        Rule::Minus => one("formula", minus(phi).map_err(domain)?),
        Rule::Star => {
            let (s, vars) = star(phi).map_err(domain)?;
            let vars: Vec<String> = vars.iter().map(Var::to_string).collect();
            Ok(vec![Record::new().with("formula", s).with("vars", vars.join(","))])
        }
    }
}

fn stateful(cfg: &CliConfig, st: &mut State, command: Command) -> Outcome {
    let reg = &st.reg;
    let th = &cfg.theory;
    match command {
        Command::Translate { mode, formula: src } => {
            let tag = match mode {
                Mode::Pi => PrTag::Pi,
                Mode::Piprime => PrTag::PiPrime,
                Mode::Rho => PrTag::Rho,
                Mode::Alpha | Mode::Beta => unreachable!("handled without state"),
            };
            one("formula", pr_translate(reg, &PrVariant::new(tag, th.clone()), &formula(&src)?))
        }
        Command::Diag { vars, contexts } => {
            let contexts = contexts.iter().map(|s| formula(s)).collect::<Result<Vec<_>, _>>()?;
            let vars: Vec<Var> = vars.iter().map(|v| Var::new(v)).collect();
            let psis = reg.fixed_points(&contexts, &vars).map_err(domain)?;
            Ok(psis
                .iter()
                .enumerate()
                .map(|(i, psi)| {
                    let code = reg.lookup_formula(psi).expect("fixed points are interned");
                    Record::new().with("index", i).with("code", code).with("formula", psi)
                })
                .collect())
        }
        Command::Eval { model, sentence: src } => {
            let phi = formula(&src)?;
            let flavor = match model {
                ModelArg::Triv => Flavor::Triv,
                ModelArg::Ver => Flavor::Ver,
                ModelArg::Prov => Flavor::Prov(th.clone()),
                ModelArg::Rho => Flavor::Rho(th.clone()),
            };
            one("truth", eval_sentence(&phi, &Model::new(flavor, cfg.budget, reg)).map_err(domain)?)
        }
        Command::Prove { record, sentence: src } => {
            let phi = sentence(&src)?;
            let proof = prove_true_sigma_b(reg, th, &phi, cfg.budget)
                .ok_or_else(|| domain(format!("no proof of {phi} within budget {}", cfg.budget)))?;
            let code = reg.code_of_proof(&proof);
            if record {
                st.store.record(reg, th, &proof).map_err(domain)?;
            }
            Ok(vec![Record::new()
                .with("proof", code)
                .with("lines", proof.len())
                .with("recorded", record)])
        }
        Command::Check { code, proof } => {
            let p = match (code, proof) {
                (Some(c), _) => (*reg.proof(c).map_err(domain)?).clone(),
                (None, Some(text)) => text.parse::<Proof>().map_err(domain)?,
                (None, None) => return Err(Failure::Usage("give a proof or --code".into())),
            };
            check_proof(reg, th, &p).map_err(domain)?;
            let concl = p.conclusion().expect("checked proofs are non-empty");
            Ok(vec![Record::new().with("status", "ok").with("conclusion", concl)])
        }
        Command::Store { action } => store_action(cfg, st, action),
        Command::Gallery { kind, delta, phi, psi } => {
            let need = |name: &str, v: &Option<String>| {
                v.as_deref()
                    .ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --{name}")))
                    .and_then(formula)
            };
            let kind = match kind.as_str() {
                "disjunct-pair" => GalleryKind::DisjunctPair { delta: need("delta", &delta)?, phi: need("phi", &phi)? },
                "sigma1-pair" => GalleryKind::Sigma1Pair { delta: need("delta", &delta)? },
                "box-family" => GalleryKind::BoxFamily {
                    delta: need("delta", &delta)?,
                    psis: psi.iter().map(|s| formula(s)).collect::<Result<_, _>>()?,
                },
                "correctness-witness" => {
                    GalleryKind::CorrectnessWitness { delta: need("delta", &delta)?, phi: need("phi", &phi)? }
                }
                "box-witness" => GalleryKind::BoxWitness { phi: need("phi", &phi)? },
                "godel" => GalleryKind::Godel,
                "weak-representation" => GalleryKind::WeakRepresentation { phi: need("phi", &phi)? },
                other => unreachable!("clap accepted unknown kind {other}"),
            };
            let g = build(reg, th, &kind).map_err(domain)?;
            audit_cross_references(&g)
                .map_err(|m| domain(format!("cross-reference mismatch in {}: {m:?}", g.tag)))?;
            Ok(g.entries
                .iter()
                .map(|e| Record::new().with("label", &e.label).with("code", e.code).with("formula", &e.formula))
                .collect())
        }
        Command::AuditDp { mdp, pair } => {
            let check = if mdp { check_mdp } else { check_dp };
            let pairs: Vec<(Formula, Formula)> = if let [a, b] = &pair[..] {
                vec![(sentence(a)?, sentence(b)?)]
            } else {
                stored_formulas(st, th)
                    .into_iter()
                    .filter_map(|f| match f {
                        Formula::Or(a, b) if !mdp => Some((*a, *b)),
                        Formula::Or(a, b) => match (*a, *b) {
                            (Formula::Box(a), Formula::Box(b)) => Some((*a, *b)),
                            _ => None,
                        },
                        _ => None,
                    })
                    .collect()
            };
            Ok(pairs
                .iter()
                .map(|(a, b)| {
                    let hyp = if mdp {
                        Formula::or(Formula::boxed(a.clone()), Formula::boxed(b.clone()))
                    } else {
                        Formula::or(a.clone(), b.clone())
                    };
                    let v = check(reg, th, a, b, &st.store, cfg.budget);
                    Record::new().with("formula", hyp).with("verdict", v)
                })
                .collect())
        }
        Command::AuditDc { sentence: src } => {
            let phis = match src {
                Some(s) => vec![sentence(&s)?],
                None => stored_formulas(st, th)
                    .into_iter()
                    .filter_map(|f| match &f {
                        Formula::Or(a, _) if dc_hypothesis(reg, th, a) == f => Some((**a).clone()),
                        _ => None,
                    })
                    .collect(),
            };
            Ok(phis
                .iter()
                .map(|phi| Record::new().with("sentence", phi).with("verdict", check_dc(reg, th, phi, &st.store, cfg.budget)))
                .collect())
        }
        Command::Classify { .. } | Command::Normalize { .. } | Command::Decide { .. } | Command::ScanMdp { .. } => {
            stateless(command)
        }
    }
}

/// Distinct recorded formulas of `theory`, in record order.
fn stored_formulas(st: &State, theory: &TheoryId) -> Vec<Formula> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for r in st.store.records().iter().filter(|r| &r.theory == theory) {
        if seen.contains(&r.formula) {
            continue;
        }
        seen.push(r.formula);
        if let Ok(f) = st.reg.formula(r.formula) {
            out.push((*f).clone());
        }
    }
    out
}

fn store_action(cfg: &CliConfig, st: &mut State, action: StoreAction) -> Outcome {
    let reg = &st.reg;
    let th = &cfg.theory;
    match action {
        StoreAction::List => Ok(st
            .store
            .records()
            .iter()
            .map(|r| {
                let text = reg.formula(r.formula).map(|f| f.to_string()).unwrap_or_default();
                Record::new()
                    .with("theory", &r.theory)
                    .with("formula-code", r.formula)
                    .with("proof-code", r.proof)
                    .with("formula", text)
            })
            .collect()),
        StoreAction::Add { proof } => {
            let p: Proof = proof.parse().map_err(domain)?;
            let rec = st.store.record(reg, th, &p).map_err(domain)?;
            Ok(vec![Record::new().with("formula-code", rec.formula).with("proof-code", rec.proof)])
        }
        StoreAction::NecClose { depth } => one("added", st.store.nec_close_to_depth(reg, th, depth)),
        StoreAction::BoxElimClose => {
            let added = st
                .store
                .box_elim_close(reg, th)
                .ok_or_else(|| domain(format!("theory {th} has no box-elimination axiom")))?;
            one("added", added)
        }
        StoreAction::Status { depth } => {
            let n = st.store.records().iter().filter(|r| &r.theory == th).count();
            Ok(vec![Record::new()
                .with("theory", th)
                .with("records", n)
                .with("nec-closed", st.store.is_nec_closed(reg, th, depth))
                .with("box-elim-closed", st.store.is_box_elim_closed(reg, th))])
        }
    }
}
