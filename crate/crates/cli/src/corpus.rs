//! Protocol corpus files.
//!
//! A corpus is a sequence of `[protocol]` blocks, each with three keys whose
//! values are JSON literals:
//!
//! ```text
//! [protocol]
//! name = "Five-card trick"
//! reference = "den Boer 1990"
//! tuple = ["0","1","0","0","0"]
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use cardshuffle_core::{ComplexityTuple, ProtocolRecord};

const BUNDLED: &str = include_str!("../data/protocols.corpus");

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate protocol name {name:?}")]
    DuplicateName { line: usize, name: String },
}

fn malformed(line: usize, reason: impl Into<String>) -> CorpusError {
    CorpusError::Malformed {
        line,
        reason: reason.into(),
    }
}

#[derive(Default)]
struct Block {
    start: usize,
    name: Option<String>,
    reference: Option<String>,
    tuple: Option<ComplexityTuple>,
}

impl Block {
    fn finish(self) -> Result<ProtocolRecord, CorpusError> {
        let missing = |key: &str| malformed(self.start, format!("block is missing `{key}`"));
        Ok(ProtocolRecord {
            name: self.name.clone().ok_or_else(|| missing("name"))?,
            reference: self.reference.clone().ok_or_else(|| missing("reference"))?,
            tuple: self.tuple.ok_or_else(|| missing("tuple"))?,
        })
    }
}

/// Parses a corpus, keeping records in file order.
pub fn load_corpus(text: &str) -> Result<Vec<ProtocolRecord>, CorpusError> {
    let mut records = Vec::new();
    let mut names = HashSet::new();
    let mut current: Option<Block> = None;

    let mut push = |block: Block, records: &mut Vec<ProtocolRecord>| {
        let start = block.start;
        let record = block.finish()?;
        if !names.insert(record.name.clone()) {
            return Err(CorpusError::DuplicateName {
                line: start,
                name: record.name,
            });
        }
        records.push(record);
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            if line != "[protocol]" {
                return Err(malformed(line_no, format!("unknown section {line}")));
            }
            if let Some(block) = current.take() {
                push(block, &mut records)?;
            }
            current = Some(Block {
                start: line_no,
                ..Block::default()
            });
            continue;
        }
        let block = current
            .as_mut()
            .ok_or_else(|| malformed(line_no, "key outside a [protocol] block"))?;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| malformed(line_no, "expected `key = value`"))?;
        let value: serde_json::Value = serde_json::from_str(value.trim())
            .map_err(|e| malformed(line_no, format!("bad value: {e}")))?;
        match key.trim() {
            "name" => set_once(
                &mut block.name,
                string_value(&value, line_no)?,
                line_no,
                "name",
            )?,
            "reference" => set_once(
                &mut block.reference,
                string_value(&value, line_no)?,
                line_no,
                "reference",
            )?,
            "tuple" => {
                let parts = value
                    .as_array()
                    .filter(|a| a.len() == 5)
                    .ok_or_else(|| malformed(line_no, "tuple must be an array of 5 strings"))?
                    .iter()
                    .map(|v| string_value(v, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                let tuple = ComplexityTuple::parse(&parts)
                    .map_err(|e| malformed(line_no, e.to_string()))?;
                set_once(&mut block.tuple, tuple, line_no, "tuple")?;
            }
            other => return Err(malformed(line_no, format!("unknown key `{other}`"))),
        }
    }
    if let Some(block) = current {
        push(block, &mut records)?;
    }
    Ok(records)
}

fn string_value(value: &serde_json::Value, line: usize) -> Result<String, CorpusError> {
    value
        .as_str()
        .map(str::to_owned)
        .ok_or_else(|| malformed(line, "expected a string"))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), CorpusError> {
    if slot.is_some() {
        return Err(malformed(line, format!("`{key}` given twice")));
    }
    *slot = Some(value);
    Ok(())
}

/// Writes records in the format [`load_corpus`] reads.
pub fn serialize_corpus(records: &[ProtocolRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let tuple: Vec<String> = r.tuple.0.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "[protocol]");
        let _ = writeln!(out, "name = {}", serde_json::Value::from(r.name.as_str()));
        let _ = writeln!(
            out,
            "reference = {}",
            serde_json::Value::from(r.reference.as_str())
        );
        let _ = writeln!(out, "tuple = {}", serde_json::Value::from(tuple));
    }
    out
}

/// The bundled table of published protocols.
pub fn bundled_corpus() -> Vec<ProtocolRecord> {
    load_corpus(BUNDLED).expect("bundled corpus is well formed")
}

pub fn bundled_corpus_text() -> &'static str {
    BUNDLED
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_empty_corpus() {
        assert!(load_corpus("").unwrap().is_empty());
        assert!(load_corpus("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn single_block() {
        let text = "[protocol]\nname = \"x\"\nreference = \"y\"\ntuple = [\"0\",\"n-1\",\"0\",\"0\",\"2n\"]\n";
        let r = load_corpus(text).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].name, "x");
        assert_eq!(r[0].tuple.to_string(), "(0,n-1,0,0,2n)");
        assert!(r[0].parameterized());
    }

    #[test]
    fn rejects_duplicates_and_junk() {
        let block = "[protocol]\nname = \"x\"\nreference = \"y\"\ntuple = [\"0\",\"0\",\"0\",\"0\",\"0\"]\n";
        let twice = format!("{block}\n{block}");
        assert!(matches!(
            load_corpus(&twice),
            Err(CorpusError::DuplicateName { line: 6, .. })
        ));

        for bad in [
            "name = \"x\"",
            "[protocol]\nname = \"x\"",
            "[protocol]\nname = x",
            "[protocol]\nname = \"x\"\nname = \"z\"",
            "[protocol]\ncolor = \"x\"",
            "[other]",
            "[protocol]\nname = \"x\"\nreference = \"y\"\ntuple = [\"0\",\"0\"]",
            "[protocol]\nname = \"x\"\nreference = \"y\"\ntuple = [\"n^2\",\"0\",\"0\",\"0\",\"0\"]",
        ] {
            assert!(matches!(load_corpus(bad), Err(CorpusError::Malformed { .. })), "{bad}");
        }
    }

    #[test]
    fn escapes_survive_round_trip() {
        let text = "[protocol]\nname = \"a \\\"quoted\\\" name\"\nreference = \"b\"\ntuple = [\"1\",\"0\",\"0\",\"0\",\"0\"]\n";
        let once = load_corpus(text).unwrap();
        assert_eq!(once[0].name, "a \"quoted\" name");
        assert_eq!(load_corpus(&serialize_corpus(&once)).unwrap(), once);
    }
}
