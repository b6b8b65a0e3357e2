//! Registry journal: one line per registry slot, replayed verbatim so codes
//! survive across runs.
//!
//! ```text
//! boxarith-journal v1<TAB><count><TAB><sha256 of the body>
//! <code><TAB><kind><TAB><text>
//! ```

use std::rc::Rc;

use boxarith_core::coding::{Entry, Object, Registry};
use boxarith_core::kernel::Proof;
use boxarith_core::syntax::parse_formula;
use sha2::{Digest, Sha256};

pub const MAGIC: &str = "boxarith-journal v1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum JournalError {
    #[error("journal header is missing or malformed")]
    Header,
    #[error("journal checksum does not match its contents")]
    Checksum,
    #[error("journal header announces {expected} entries, found {found}")]
    Count { expected: usize, found: usize },
    #[error("journal line {line}: {message}")]
    Line { line: usize, message: String },
}

fn digest(body: &str) -> String {
    format!("{:x}", Sha256::digest(body.as_bytes()))
}

pub fn render(reg: &Registry) -> String {
    let mut body = String::new();
    for (i, entry) in reg.entries().into_iter().enumerate() {
        let (kind, text) = match entry {
            Entry::Reserved => ("reserved", String::new()),
            Entry::Alias(c) => ("alias", c.to_string()),
            Entry::Object(Object::Formula(f)) => ("formula", f.to_string()),
            Entry::Object(Object::Proof(p)) => ("proof", p.to_string()),
        };
        body.push_str(&format!("{i}\t{kind}\t{text}\n"));
    }
    format!("{MAGIC}\t{}\t{}\n{body}", reg.len(), digest(&body))
}

/// Rebuilds the registry, checking that every entry lands on its recorded
/// code.
pub fn replay(text: &str) -> Result<Registry, JournalError> {
    let (head, body) = text.split_once('\n').ok_or(JournalError::Header)?;
    let fields: Vec<&str> = head.split('\t').collect();
    let [magic, count, sum] = fields[..] else { return Err(JournalError::Header) };
    if magic != MAGIC {
        return Err(JournalError::Header);
    }
    let expected: usize = count.parse().map_err(|_| JournalError::Header)?;
    if sum != digest(body) {
        return Err(JournalError::Checksum);
    }
    let reg = Registry::new();
    let lines: Vec<&str> = body.lines().collect();
    if lines.len() != expected {
        return Err(JournalError::Count { expected, found: lines.len() });
    }
    for (i, line) in lines.into_iter().enumerate() {
        let err = |message: String| JournalError::Line { line: i, message };
        let mut parts = line.splitn(3, '\t');
        let (Some(code), Some(kind), Some(text)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected `<code>\\t<kind>\\t<text>`".into()));
        };
        if code.parse::<usize>().ok() != Some(i) {
            return Err(err(format!("code {code:?} out of sequence")));
        }
        let entry = match kind {
            "reserved" => Entry::Reserved,
            "alias" => Entry::Alias(text.parse().map_err(|_| err(format!("bad alias target {text:?}")))?),
            "formula" => Entry::Object(Object::Formula(Rc::new(
                parse_formula(text).map_err(|e| err(e.to_string()))?,
            ))),
            "proof" => Entry::Object(Object::Proof(Rc::new(
                text.parse::<Proof>().map_err(|e| err(e.to_string()))?,
            ))),
            _ => return Err(err(format!("unknown entry kind {kind:?}"))),
        };
        let at = reg.push_entry(entry).map_err(|e| err(e.to_string()))?;
        if at != i {
            return Err(err(format!("entry landed on code {at}")));
        }
    }
    Ok(reg)
}
