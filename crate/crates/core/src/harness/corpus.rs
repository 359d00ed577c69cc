//! Running a single analysis over a corpus of graphs or schemes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{sha256_hex, with_pool, TOOL_VERSION};
use crate::embedding::{
    count_faces, euler_genus, is_orientable_scheme, min_euler_genus, validate_scheme, EmbeddingScheme, GenusMode,
    DEFAULT_GENUS_BUDGET,
};
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, write_graph6, Graph};
use crate::solver::{cop_number, dismantle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusCommand {
    Copnum,
    Dismantle,
    Faces,
    Genus(GenusMode),
}

#[derive(Clone, Debug)]
pub enum CorpusItem {
    Graph {
        id: String,
        text: String,
        graph: Graph,
    },
    Scheme {
        id: String,
        text: String,
        scheme: EmbeddingScheme,
    },
    /// Input that failed to parse; reported, never fatal.
    Broken {
        id: String,
        text: String,
        error: String,
    },
}

impl CorpusItem {
    fn id(&self) -> &str {
        match self {
            CorpusItem::Graph { id, .. } | CorpusItem::Scheme { id, .. } | CorpusItem::Broken { id, .. } => id,
        }
    }

    fn text(&self) -> &str {
        match self {
            CorpusItem::Graph { text, .. } | CorpusItem::Scheme { text, .. } | CorpusItem::Broken { text, .. } => text,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub input_hash: String,
    pub graph6: String,
    pub result: Value,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub tool_version: String,
    pub command: CorpusCommand,
    pub items: usize,
    pub errors: usize,
    /// Copnum: count of graphs per cop number.
    pub histogram: BTreeMap<usize, usize>,
    pub records: Vec<CorpusRecord>,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,input_hash,graph6,result,error\n");
        for r in &self.records {
            let result = r.result.to_string().replace('"', "'");
            out.push_str(&format!(
                "{},{},{},\"{}\",{}\n",
                r.id,
                r.input_hash,
                r.graph6,
                result,
                r.error.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

fn graph_lines(id_prefix: &str, text: &str, out: &mut Vec<CorpusItem>) {
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id = format!("{id_prefix}:{}", i + 1);
        out.push(match parse_graph6(line) {
            Ok(graph) => CorpusItem::Graph { id, text: line.to_string(), graph },
            Err(e) => CorpusItem::Broken { id, text: line.to_string(), error: e.to_string() },
        });
    }
}

/// Loads a newline-separated graph6 file, or a directory of `*.g6` and
/// scheme `*.json` files.
pub fn load_graph_corpus(path: &Path) -> Result<Vec<CorpusItem>> {
    let io = |e| Error::Io { path: path.display().to_string(), source: e };
    let mut out = Vec::new();
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(io)?;
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        graph_lines(&name, &text, &mut out);
        return Ok(out);
    }
    let mut entries: Vec<_> = fs::read_dir(path).map_err(io)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    entries.sort();
    for p in entries {
        let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match p.extension().and_then(|x| x.to_str()) {
            Some("g6") => {
                let text =
                    fs::read_to_string(&p).map_err(|e| Error::Io { path: p.display().to_string(), source: e })?;
                graph_lines(&name, &text, &mut out);
            }
            Some("json") => {
                let text =
                    fs::read_to_string(&p).map_err(|e| Error::Io { path: p.display().to_string(), source: e })?;
                out.push(match serde_json::from_str::<EmbeddingScheme>(&text) {
                    Ok(scheme) => CorpusItem::Scheme { id: name, text, scheme },
                    Err(e) => CorpusItem::Broken { id: name, text, error: e.to_string() },
                });
            }
            _ => {}
        }
    }
    Ok(out)
}

fn run_one(command: CorpusCommand, item: &CorpusItem) -> std::result::Result<(String, Value), String> {
    let (graph, scheme) = match item {
        CorpusItem::Graph { graph, .. } => (graph.clone(), None),
        CorpusItem::Scheme { scheme, .. } => {
            validate_scheme(scheme).map_err(|v| format!("invalid scheme: {v:?}"))?;
            (scheme.graph(), Some(scheme))
        }
        CorpusItem::Broken { error, .. } => return Err(error.clone()),
    };
    let g6 = write_graph6(&graph).map_err(|e| e.to_string())?;
    let value = match command {
        CorpusCommand::Copnum => {
            let (c, res) = cop_number(&graph).map_err(|e| e.to_string())?;
            json!({ "cop_number": c, "states": res.states(), "best_placement": res.best_placement })
        }
        CorpusCommand::Dismantle => serde_json::to_value(dismantle(&graph)).expect("serialises"),
        CorpusCommand::Faces => {
            let s = scheme.ok_or("faces needs an embedding scheme")?;
            json!({ "faces": count_faces(s), "euler_genus": euler_genus(s), "orientable": is_orientable_scheme(s) })
        }
        CorpusCommand::Genus(mode) => {
            let r = min_euler_genus(&graph, mode, DEFAULT_GENUS_BUDGET).map_err(|e| e.to_string())?;
            json!({ "euler_genus": r.euler_genus, "orientable_genus": r.orientable_genus })
        }
    };
    Ok((g6, value))
}

/// Runs `command` over every item with `workers` threads (0 = default).
/// Records are sorted by input hash, so output does not depend on `workers`.
pub fn run_corpus(command: CorpusCommand, items: &[CorpusItem], workers: usize) -> CorpusReport {
    let mut records: Vec<CorpusRecord> = with_pool(workers, || {
        items
            .par_iter()
            .map(|item| {
                let input_hash = sha256_hex(item.text().as_bytes());
                match run_one(command, item) {
                    Ok((graph6, result)) => {
                        CorpusRecord { id: item.id().to_string(), input_hash, graph6, result, error: None }
                    }
                    Err(e) => CorpusRecord {
                        id: item.id().to_string(),
                        input_hash,
                        graph6: String::new(),
                        result: Value::Null,
                        error: Some(e),
                    },
                }
            })
            .collect()
    });
    records.sort_by(|a, b| (&a.input_hash, &a.id).cmp(&(&b.input_hash, &b.id)));
    let mut histogram = BTreeMap::new();
    if command == CorpusCommand::Copnum {
        for r in &records {
            if let Some(c) = r.result.get("cop_number").and_then(Value::as_u64) {
                *histogram.entry(c as usize).or_insert(0) += 1;
            }
        }
    }
    CorpusReport {
        tool_version: TOOL_VERSION.to_string(),
        command,
        items: records.len(),
        errors: records.iter().filter(|r| r.error.is_some()).count(),
        histogram,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let r = run_corpus(CorpusCommand::Copnum, &[], 2);
        assert_eq!((r.items, r.errors), (0, 0));
        assert!(r.histogram.is_empty());
    }

    #[test]
    fn broken_lines_are_isolated() {
        let mut items = Vec::new();
        graph_lines("t", "A_\nD?\n# comment\nC~\n", &mut items);
        let r = run_corpus(CorpusCommand::Copnum, &items, 1);
        assert_eq!(r.items, 3);
        assert_eq!(r.errors, 1);
        assert_eq!(r.histogram, BTreeMap::from([(1, 2)]));
    }
}
