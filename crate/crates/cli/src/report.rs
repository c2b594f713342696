//! JSON records written by the `search` and `spectrum` commands.

use std::io::{self, Write};

use mec_core::{EntryVerdict, SearchConfig, SpectrumEntry};
use serde_json::{json, Map, Value};

/// Writes one complete line per record, so an interrupted run never leaves a
/// partial record behind.
pub struct RecordWriter<W: Write> {
    out: W,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Self {
        RecordWriter { out }
    }

    pub fn emit(&mut self, record: &Value) -> io::Result<()> {
        let mut line = serde_json::to_vec(record).expect("records are plain JSON");
        line.push(b'\n');
        self.out.write_all(&line)?;
        self.out.flush()
    }
}

pub fn header(
    command: &str,
    n: usize,
    m_range: (usize, usize),
    cfg: &SearchConfig,
    graphs_from: Option<&str>,
) -> Value {
    json!({
        "command": command,
        "n": n,
        "m_from": m_range.0,
        "m_to": m_range.1,
        "config": {
            "filters": cfg.filters,
            "workers": cfg.workers,
            "node_budget": cfg.node_budget,
            "enumeration_budget": cfg.enumeration_budget,
            "theorem_shortcuts": cfg.theorem_shortcuts,
            "graphs_from": graphs_from,
        },
    })
}

pub fn entry(e: &SpectrumEntry) -> Value {
    let mut record = Map::new();
    record.insert("n".into(), json!(e.n));
    record.insert("m".into(), json!(e.m));
    record.insert("verdict".into(), json!(e.verdict.code()));
    match &e.verdict {
        EntryVerdict::Member(cert) => {
            record.insert("certificate".into(), json!(cert));
        }
        EntryVerdict::NonmemberTheorem(t) => {
            record.insert(
                "citation".into(),
                json!({ "theorem": t.tag(), "statement": t.statement() }),
            );
        }
        EntryVerdict::Unknown(reason) => {
            record.insert("reason".into(), json!(reason));
        }
        EntryVerdict::NonmemberExhausted => {}
    }
    record.insert("stats".into(), json!(e.stats));
    Value::Object(record)
}

#[derive(Debug, Default)]
pub struct Summary {
    pub members: Vec<usize>,
    pub nonmembers: Vec<usize>,
    pub unknown: Vec<usize>,
    pub interrupted: bool,
}

impl Summary {
    pub fn record(&mut self, e: &SpectrumEntry) {
        if e.verdict.is_member() {
            self.members.push(e.m);
        } else if e.verdict.is_nonmember() {
            self.nonmembers.push(e.m);
        } else {
            self.unknown.push(e.m);
        }
    }

    pub fn complete(&self) -> bool {
        self.unknown.is_empty() && !self.interrupted
    }

    pub fn to_value(&self, runtime_ms: Option<u128>) -> Value {
        let mut body = json!({
            "members": self.members,
            "nonmembers": self.nonmembers,
            "unknown": self.unknown,
            "complete": self.complete(),
            "interrupted": self.interrupted,
        });
        if let Some(ms) = runtime_ms {
            body["runtime_ms"] = json!(ms);
        }
        json!({ "summary": body })
    }
}
