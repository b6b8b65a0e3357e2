//! Theorem store file: `boxarithstore v1`, then one
//! `<theory><TAB><formula code><TAB><proof code>` line per record. Codes
//! refer to the registry journal, and every record is re-checked on load.

use boxarith_core::coding::Registry;
use boxarith_core::kernel::{Record, TheoremStore};
use boxarith_core::syntax::parse_theory;

pub const MAGIC: &str = "boxarithstore v1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StoreFileError {
    #[error("store file header is missing or malformed")]
    Header,
    #[error("store line {line}: {message}")]
    Line { line: usize, message: String },
}

pub fn render(store: &TheoremStore) -> String {
    let mut out = format!("{MAGIC}\n");
    for r in store.records() {
        out.push_str(&format!("{}\t{}\t{}\n", r.theory, r.formula, r.proof));
    }
    out
}

pub fn load(reg: &Registry, text: &str) -> Result<TheoremStore, StoreFileError> {
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(StoreFileError::Header);
    }
    let mut store = TheoremStore::new();
    for (i, line) in lines.enumerate() {
        let err = |message: String| StoreFileError::Line { line: i + 1, message };
        let fields: Vec<&str> = line.split('\t').collect();
        let [theory, formula, proof] = fields[..] else {
            return Err(err("expected three tab-separated fields".into()));
        };
        let theory = parse_theory(theory).map_err(|e| err(e.to_string()))?;
        let code = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad code {s:?}")));
        let rec = Record { theory, formula: code(formula)?, proof: code(proof)? };
        store.push_record(reg, rec).map_err(|e| err(e.to_string()))?;
    }
    Ok(store)
}
