//! Trace files: a header line `n = N`, then one set per line.
//!
//! ```text
//! # five-card trick
//! n = 3
//! {id,(1 2 3),(1 3 2)}
//! ```

use std::fmt::Write as _;

use cardshuffle_core::{DeckSize, PermSet, ShuffleTrace};

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("trace file has no `n = N` header")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
}

pub fn parse_trace(text: &str) -> Result<ShuffleTrace, TraceError> {
    let mut n: Option<DeckSize> = None;
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |reason: String| TraceError::Line {
            line: idx + 1,
            reason,
        };
        match n {
            None => {
                let value = line
                    .strip_prefix('n')
                    .and_then(|rest| rest.trim_start().strip_prefix('='))
                    .ok_or(TraceError::MissingHeader)?;
                let size: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("bad deck size {:?}", value.trim())))?;
                n = Some(DeckSize::new(size).map_err(|e| fail(e.to_string()))?);
            }
            Some(n) => steps.push(PermSet::parse(line, n).map_err(|e| fail(e.to_string()))?),
        }
    }
    let n = n.ok_or(TraceError::MissingHeader)?;
    Ok(ShuffleTrace::new(n, steps).expect("steps are nonempty sets on the header's deck"))
}

pub fn serialize_trace(trace: &ShuffleTrace) -> String {
    let mut out = format!("n = {}\n", trace.deck());
    for step in trace.steps() {
        let _ = writeln!(out, "{step}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_and_steps() {
        let t = parse_trace("# demo\nn = 3\n\n{id,(1 2 3),(1 3 2)}\n{id, (1 2 3)}\n").unwrap();
        assert_eq!(t.deck().get(), 3);
        assert_eq!(t.steps().len(), 2);
        assert_eq!(parse_trace(&serialize_trace(&t)).unwrap(), t);
    }

    #[test]
    fn header_without_steps() {
        assert!(parse_trace("n=4").unwrap().steps().is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_trace(""), Err(TraceError::MissingHeader)));
        assert!(matches!(
            parse_trace("{id}\n"),
            Err(TraceError::MissingHeader)
        ));
        assert!(matches!(
            parse_trace("n = x"),
            Err(TraceError::Line { line: 1, .. })
        ));
        assert!(matches!(
            parse_trace("n = 9"),
            Err(TraceError::Line { line: 1, .. })
        ));
        assert!(matches!(
            parse_trace("n = 3\n{(1 4)}"),
            Err(TraceError::Line { line: 2, .. })
        ));
    }
}
