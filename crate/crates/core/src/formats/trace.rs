//! Trace files: JSON Lines, one record per step.
//!
//! ```text
//! {"step":0,"kind":"splice","sizes":[1,0],"lost":0}
//! ```
//!
//! With full contents each record also has `contents`, parallel to `sizes`:
//! one array per node of words, each word an array of tokens.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::ParseError;
use crate::runtime::{StepKind, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub kind: String,
    pub sizes: Vec<usize>,
    pub lost: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contents: Option<Vec<Vec<Vec<String>>>>,
}

/// Writes `trace`; contents are included only when `full` is set and the
/// trace recorded them.
pub fn write_trace(out: &mut impl Write, trace: &Trace, full: bool) -> io::Result<()> {
    for e in &trace.events {
        let contents = e.contents.as_ref().filter(|_| full).map(|nodes| {
            nodes
                .iter()
                .map(|set| {
                    let mut words: Vec<_> = set.iter().collect();
                    words.sort_by(|a, b| a.cmp_tokens(b));
                    words
                        .into_iter()
                        .map(|w| w.tokens().into_iter().map(String::from).collect())
                        .collect()
                })
                .collect()
        });
        let rec = TraceRecord {
            step: e.step,
            kind: e.kind.as_str().to_string(),
            sizes: e.sizes.clone(),
            lost: e.lost,
            contents,
        };
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceRecord>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| ParseError::new(i + 1, e.to_string())))
        .collect()
}

/// Steps count up from 0 by one and kinds alternate, starting with a splice.
pub fn check_alternation(records: &[TraceRecord]) -> Result<(), String> {
    for (i, r) in records.iter().enumerate() {
        if r.step != i {
            return Err(format!("record {i} has step {}", r.step));
        }
        let want = StepKind::for_step(i).as_str();
        if r.kind != want {
            return Err(format!("step {i} is {:?}, expected {want:?}", r.kind));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::TraceEvent;
    use crate::splice::WordSet;
    use crate::symbol::w;

    fn trace() -> Trace {
        let set: WordSet = [w("a b"), w("~")].into_iter().collect();
        Trace {
            node_names: vec!["x".into()],
            events: (0..3)
                .map(|i| TraceEvent {
                    step: i,
                    kind: StepKind::for_step(i),
                    sizes: vec![2],
                    lost: i,
                    contents: Some(vec![set.clone()]),
                })
                .collect(),
        }
    }

    #[test]
    fn write_then_parse() {
        let mut buf = Vec::new();
        write_trace(&mut buf, &trace(), false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), r#"{"step":0,"kind":"splice","sizes":[2],"lost":0}"#);
        let recs = parse_trace(&text).unwrap();
        assert_eq!(recs.len(), 3);
        check_alternation(&recs).unwrap();
    }

    #[test]
    fn full_contents() {
        let mut buf = Vec::new();
        write_trace(&mut buf, &trace(), true).unwrap();
        let recs = parse_trace(std::str::from_utf8(&buf).unwrap()).unwrap();
        let c = recs[0].contents.as_ref().unwrap();
        assert_eq!(c[0], vec![Vec::<String>::new(), vec!["a".to_string(), "b".to_string()]]);
    }

    #[test]
    fn broken_alternation() {
        let mut recs = parse_trace(r#"{"step":0,"kind":"splice","sizes":[],"lost":0}"#).unwrap();
        recs.push(TraceRecord { step: 1, kind: "splice".into(), sizes: vec![], lost: 0, contents: None });
        assert!(check_alternation(&recs).is_err());
        recs[1].step = 2;
        assert!(check_alternation(&recs).unwrap_err().contains("step 2"));
    }
}
