//! The scripted CLI session shared by the golden and acceptance tests.

use std::path::Path;

/// Each entry is one invocation, without the program name. All of them run
/// against the same store, in order.
pub const SCRIPT: &[&[&str]] = &[
    &["classify", "box bot"],
    &["translate", "--mode", "beta", "box bot"],
    &["normalize", "--rule", "boxes", "0=S(0)"],
    &["--format", "machine", "classify", "forall x exists y < x x=y"],
    &["--format", "machine", "classify", "exists x prf[k4](x,#3)"],
    &["--format", "machine", "normalize", "--rule", "possigma1", "(exists y ~(y<#3 -> y=#1) & ~forall x < #4 ~x=#2)"],
    &["--format", "machine", "normalize", "--rule", "s2d", "(box 0=0 & exists x box x=x)"],
    &["--format", "machine", "normalize", "--rule", "boxes", "(exists x < #3 box x=#1 | #2<#1)"],
    &["--format", "machine", "normalize", "--rule", "minus", "exists x < #2 (box x=x & x=#1)"],
    &["--format", "machine", "normalize", "--rule", "star", "forall y < #2 (box y=#0 | box ~y=#0)"],
    &["--format", "machine", "translate", "--mode", "alpha", "box (box bot -> exists x box x=x)"],
    &["--format", "machine", "--theory", "k4", "translate", "--mode", "pi", "box box 0=0"],
    &["--format", "machine", "--theory", "k4", "translate", "--mode", "piprime", "box box 0=0"],
    &["--format", "machine", "--theory", "k4", "translate", "--mode", "rho", "box box 0=0"],
    &["--format", "machine", "eval", "--model", "triv", "exists x ((x*x)=#9 & box ~x=#2)"],
    &["--format", "machine", "eval", "--model", "ver", "box bot"],
    &["--format", "machine", "--theory", "k4", "store", "add", "ax:refl 0=0; nec:0 box 0=0"],
    &["--format", "machine", "--theory", "k4", "eval", "--model", "prov", "box 0=0"],
    &["--format", "machine", "--theory", "k4", "eval", "--model", "prov", "box box 0=0"],
    &["--format", "machine", "--theory", "k4", "--budget", "2", "eval", "--model", "prov", "box 0=0"],
    &["--format", "machine", "--theory", "k4", "store", "nec-close", "--depth", "3"],
    &["--format", "machine", "--theory", "k4", "eval", "--model", "rho", "box 0=0"],
    &["--format", "machine", "--theory", "k4", "prove", "--record", "(box box 0=0 & exists x (x+x)=#6)"],
    &["--format", "machine", "--theory", "k4", "prove", "exists x (x*x)=#7"],
    &["--format", "machine", "--theory", "k4", "store", "list"],
    &["--format", "machine", "--theory", "k4", "store", "status", "--depth", "3"],
    &["--format", "machine", "--theory", "k4", "store", "box-elim-close"],
    &["--format", "machine", "--theory", "kt", "store", "add", "ax:refl 0=0; nec:0 box 0=0; nec:1 box box 0=0"],
    &["--format", "machine", "--theory", "kt", "store", "status"],
    &["--format", "machine", "--theory", "kt", "store", "box-elim-close"],
    &["--format", "machine", "--theory", "kt", "store", "status"],
    &["--format", "machine", "--theory", "k4", "check", "--code", "3"],
    &["--format", "machine", "--theory", "k", "check", "ax:four (box 0=0 -> box box 0=0)"],
    &["--format", "machine", "diag", "--vars", "x", "forall y ~prf[gl](x,y)"],
    &["--format", "machine", "diag", "--vars", "a,b", "box prf[gl](b,#0)", "~box a=a"],
    &["--format", "machine", "gallery", "--kind", "godel"],
    &["--format", "machine", "gallery", "--kind", "sigma1-pair", "--delta", "x=x"],
    &["--format", "machine", "gallery", "--kind", "disjunct-pair", "--delta", "x<#3", "--phi", "box bot"],
    &["--format", "machine", "gallery", "--kind", "box-family", "--delta", "x=x", "--psi", "0=0", "--psi", "bot"],
    &["--format", "machine", "gallery", "--kind", "correctness-witness", "--delta", "x=#5", "--phi", "bot"],
    &["--format", "machine", "gallery", "--kind", "box-witness", "--phi", "x=x"],
    &["--format", "machine", "gallery", "--kind", "weak-representation", "--phi", "x=#2"],
    &["--format", "machine", "gallery", "--kind", "box-witness"],
    &["--format", "machine", "--theory", "k4", "store", "add", "ax:taut (box 0=0 | box bot)"],
    &["--format", "machine", "--theory", "k4", "store", "add", "ax:refl 0=0; nec:0 box 0=0; ax:taut (box 0=0 -> (box 0=0 | box bot)); mp:2,1 (box 0=0 | box bot)"],
    &["--format", "machine", "--theory", "k4", "audit-dp", "--mdp"],
    &["--format", "machine", "--theory", "k4", "audit-dp"],
    &["--format", "machine", "--theory", "k4", "audit-dp", "box bot", "0=0"],
    &["--format", "machine", "--theory", "k4", "audit-dc", "0=0"],
    &["--format", "machine", "--theory", "k4", "audit-dc", "bot"],
    &["--format", "machine", "--theory", "k4", "prove", "--record", "(0=0 | exists v0 prf[k4](#1,v0))"],
    &["--format", "machine", "--theory", "k4", "audit-dc"],
    &["--format", "machine", "decide", "--logic", "gl", "(box (box p -> p) -> box p)"],
    &["--format", "machine", "decide", "--logic", "k4", "(box p -> p)"],
    &["--format", "machine", "decide", "--logic", "s4", "(box p -> box box p)"],
    &["--format", "machine", "decide", "--logic", "triv", "(box p <-> p)"],
    &["--format", "machine", "decide", "--logic", "ver", "(p -> box bot)"],
    &["--format", "machine", "scan-mdp", "--logic", "ver", "--size", "4"],
    &["--format", "machine", "scan-mdp", "--logic", "gl", "--size", "5"],
    &["--format", "machine", "classify", "box ("],
    &["--format", "machine", "normalize", "--rule", "boxes", "exists x box x=x"],
    &["--format", "machine", "--theory", "k4", "prove", "bot"],
    &["--format", "machine", "--theory", "k", "store", "box-elim-close"],
    &["--format", "machine", "normalize", "--rule", "sideways", "bot"],
    &["--theory", "q9", "classify", "bot"],
    &["frobnicate"],
];

/// Shell-style rendering of an argument list for the transcript.
fn show(args: &[&str]) -> String {
    let quoted: Vec<String> = args
        .iter()
        .map(|a| if a.chars().all(|c| c.is_ascii_alphanumeric() || "-_=.,".contains(c)) { a.to_string() } else { format!("'{a}'") })
        .collect();
    quoted.join(" ")
}

/// Runs the whole script against the store `dir/session.store` and returns
/// the transcript: each command, its stdout, stderr lines marked `! `, and
/// its exit status.
pub fn transcript(dir: &Path) -> String {
    let store = dir.join("session.store");
    let mut log = String::new();
    for args in SCRIPT {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("boxarith").chain(args.iter().copied());
        let status = boxarith::run(argv, Some(store.clone().into_os_string()), &mut out, &mut err);
        log.push_str(&format!("$ {}\n", show(args)));
        log.push_str(&String::from_utf8(out).expect("utf-8 output"));
        for line in String::from_utf8(err).expect("utf-8 errors").lines() {
            log.push_str(&format!("! {line}\n"));
        }
        log.push_str(&format!("[exit {status}]\n"));
    }
    log
}
