use std::fs;
use std::path::Path;
use std::process::Command;

use boxarith::{journal, storefile};
use boxarith_core::classes::classify;
use boxarith_core::coding::Registry;
use boxarith_core::syntax::parse_formula;
use boxarith_core::translate::{alpha, beta};
use boxarith_corpus::Corpus;
use proptest::prelude::*;

fn run(args: &[&str], env_store: Option<&Path>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("boxarith").chain(args.iter().copied());
    let status = boxarith::run(argv, env_store.map(|p| p.as_os_str().to_owned()), &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const ADD: [&str; 5] = ["--theory", "k", "store", "add", "ax:refl 0=0; nec:0 box 0=0"];

#[test]
fn store_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let env = dir.path().join("env.store");
    let flag = dir.path().join("flag.store");
    assert_eq!(run(&ADD, Some(&env)).0, 0);
    assert!(env.exists() && Path::new(&format!("{}.journal", env.display())).exists());
    let mut args = vec!["--store", flag.to_str().unwrap()];
    args.extend(ADD);
    assert_eq!(run(&args, Some(&env)).0, 0);
    assert!(flag.exists());
    let (_, listed, _) = run(&["store", "list"], Some(&env));
    assert_eq!(listed.lines().count(), 1);
}

#[test]
fn explicit_journal_path_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s");
    let jpath = dir.path().join("codes.txt");
    let args = ["--journal", jpath.to_str().unwrap(), "--theory", "k", "store", "add", "ax:refl 0=0; nec:0 box 0=0"];
    assert_eq!(run(&args, Some(&store)).0, 0);
    let text = fs::read_to_string(&jpath).unwrap();
    let reg = journal::replay(&text).unwrap();
    assert_eq!(journal::render(&reg), text);
    let st = storefile::load(&reg, &fs::read_to_string(&store).unwrap()).unwrap();
    assert_eq!(st.records().len(), 1);
}

#[test]
fn read_only_commands_leave_files_alone() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s");
    assert_eq!(run(&["classify", "box bot"], Some(&store)).0, 0);
    assert_eq!(run(&["--theory", "k", "audit-dc", "0=0"], Some(&store)).0, 0);
    assert!(!store.exists());
    run(&ADD, Some(&store));
    let before = fs::read(&store).unwrap();
    let jpath = format!("{}.journal", store.display());
    let jbefore = fs::read(&jpath).unwrap();
    run(&["--theory", "k", "store", "list"], Some(&store));
    assert_eq!(fs::read(&store).unwrap(), before);
    assert_eq!(fs::read(&jpath).unwrap(), jbefore);
}

#[test]
fn corrupt_journal_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s");
    run(&ADD, Some(&store));
    let jpath = format!("{}.journal", store.display());
    let text = fs::read_to_string(&jpath).unwrap().replace("0=0", "1=1");
    fs::write(&jpath, text).unwrap();
    let (status, _, err) = run(&["store", "list"], Some(&store));
    assert_eq!(status, 1);
    assert!(err.contains("checksum"), "{err}");
}

#[test]
fn binary_exit_codes_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_boxarith");
    let out = Command::new(bin).args(["translate", "--mode", "beta", "box bot"]).output().unwrap();
    assert_eq!((out.status.code(), out.stdout.as_slice()), (Some(0), &b"0=0\n"[..]));
    let out = Command::new(bin).args(["classify", "box ("]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let store = dir.path().join("via-env");
    let out = Command::new(bin).env("BOXARITH_STORE", &store).args(ADD).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(store.exists());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stateless_commands_match_the_library(seed in any::<u64>()) {
        let phi = Corpus::new(seed).sentence(4);
        let src = phi.to_string();
        let (s, out, _) = run(&["classify", &src], None);
        prop_assert_eq!(s, 0);
        prop_assert_eq!(out.trim_end(), classify(&phi).to_string());
        for (mode, f) in [("alpha", alpha as fn(&_) -> _), ("beta", beta)] {
            let (s, out, _) = run(&["translate", "--mode", mode, &src], None);
            prop_assert_eq!(s, 0);
            prop_assert_eq!(parse_formula(out.trim_end()).unwrap(), f(&phi));
        }
    }

    #[test]
    fn journal_round_trips(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let reg = Registry::new();
        for _ in 0..8 {
            reg.code_of_formula(&c.sentence(3));
        }
        let text = journal::render(&reg);
        let back = journal::replay(&text).unwrap();
        prop_assert_eq!(back.entries(), reg.entries());
        prop_assert_eq!(journal::render(&back), text);
    }
}
