//! Edge-list, DOT and JSON serialization of labeled graphs.
//!
//! The edge list is line oriented:
//!
//! ```text
//! # model=n t=1 config=Tall-Hprev-S3-Rprev-X1
//! 0 1 vertical 0 seed
//! ```
//!
//! Body lines are `u v orientation birth_step origin` with `u < v`, in edge
//! id order.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::graph::{EdgeRec, LabeledGraph, Roles};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Edgelist,
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::Edgelist),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (edgelist, dot, json)")),
        }
    }
}

/// Header fields carried alongside a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub model: String,
    pub t: u32,
    pub config: String,
}

impl GraphMeta {
    pub fn new(model: impl Into<String>, t: u32, config: impl Into<String>) -> Self {
        GraphMeta {
            model: model.into(),
            t,
            config: config.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub meta: GraphMeta,
    pub graph: LabeledGraph,
}

pub fn to_edgelist(graph: &LabeledGraph, meta: &GraphMeta) -> String {
    let mut s = format!("# model={} t={} config={}\n", meta.model, meta.t, meta.config);
    for e in graph.edges() {
        let _ = writeln!(s, "{} {} {} {} {}", e.u, e.v, e.orientation, e.birth_step, e.origin);
    }
    s
}

pub fn to_dot(graph: &LabeledGraph, meta: &GraphMeta) -> String {
    let mut s = format!("graph \"{}_t{}\" {{\n", meta.model, meta.t);
    for v in graph.vertices() {
        let _ = writeln!(s, "  {} [origin={}, birth={}];", v.id, v.origin, v.birth_step);
    }
    for e in graph.edges() {
        let _ = writeln!(
            s,
            "  {} -- {} [orientation={}, birth={}, origin={}];",
            e.u, e.v, e.orientation, e.birth_step, e.origin
        );
    }
    s.push_str("}\n");
    s
}

pub fn to_json(graph: &LabeledGraph, meta: &GraphMeta) -> Result<String, IoError> {
    let doc = GraphDocument {
        meta: meta.clone(),
        graph: graph.clone(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn export(graph: &LabeledGraph, meta: &GraphMeta, format: Format) -> Result<String, IoError> {
    match format {
        Format::Edgelist => Ok(to_edgelist(graph, meta)),
        Format::Dot => Ok(to_dot(graph, meta)),
        Format::Json => to_json(graph, meta),
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<Option<GraphMeta>, IoError> {
    let body = line.trim_start_matches('#').trim();
    let mut model = None;
    let mut t = None;
    let mut config = None;
    for tok in body.split_whitespace() {
        let Some((k, v)) = tok.split_once('=') else { continue };
        match k {
            "model" => model = Some(v.to_string()),
            "t" => {
                t = Some(v.parse::<u32>().map_err(|e| IoError::Malformed {
                    line: lineno,
                    message: format!("bad t `{v}`: {e}"),
                })?)
            }
            "config" => config = Some(v.to_string()),
            _ => {}
        }
    }
    Ok(match (model, t) {
        (Some(model), Some(t)) => Some(GraphMeta {
            model,
            t,
            config: config.unwrap_or_default(),
        }),
        _ => None,
    })
}

fn field<T: FromStr>(tok: Option<&str>, what: &str, lineno: usize) -> Result<T, IoError>
where
    T::Err: std::fmt::Display,
{
    let tok = tok.ok_or_else(|| IoError::Malformed {
        line: lineno,
        message: format!("missing {what}"),
    })?;
    tok.parse().map_err(|e: T::Err| IoError::Malformed {
        line: lineno,
        message: format!("bad {what} `{tok}`: {e}"),
    })
}

/// Parses an edge list; `meta` is `None` when the file has no header.
pub fn from_edgelist(text: &str) -> Result<(LabeledGraph, Option<GraphMeta>), IoError> {
    let mut meta = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if meta.is_none() {
                meta = parse_header(line, lineno)?;
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let u: usize = field(toks.next(), "u", lineno)?;
        let v: usize = field(toks.next(), "v", lineno)?;
        let orientation = field(toks.next(), "orientation", lineno)?;
        let birth_step: u32 = field(toks.next(), "birth step", lineno)?;
        let origin = field(toks.next(), "origin", lineno)?;
        if toks.next().is_some() {
            return Err(IoError::Malformed {
                line: lineno,
                message: "trailing fields".into(),
            });
        }
        if u >= v {
            return Err(IoError::Malformed {
                line: lineno,
                message: format!("endpoints must satisfy u < v, got {u} {v}"),
            });
        }
        edges.push(EdgeRec {
            id: edges.len(),
            u,
            v,
            orientation,
            birth_step,
            origin,
            roles: Roles::default(),
        });
    }
    if let Some(m) = &meta {
        if let Some(e) = edges.iter().find(|e| e.birth_step > m.t) {
            return Err(IoError::Inconsistent(format!(
                "edge {} {} born at step {} but header says t={}",
                e.u, e.v, e.birth_step, m.t
            )));
        }
    }
    Ok((LabeledGraph::from_labeled_edges(edges)?, meta))
}

pub fn from_json(text: &str) -> Result<(LabeledGraph, Option<GraphMeta>), IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("graph").is_some() {
        let doc: GraphDocument = serde_json::from_value(value)?;
        Ok((doc.graph, Some(doc.meta)))
    } else {
        Ok((serde_json::from_value(value)?, None))
    }
}

pub fn import(text: &str, format: Format) -> Result<(LabeledGraph, Option<GraphMeta>), IoError> {
    match format {
        Format::Edgelist => from_edgelist(text),
        Format::Json => from_json(text),
        Format::Dot => Err(IoError::NotImportable("dot")),
    }
}

/// Guesses the format from content: JSON starts with `{`, DOT with `graph`.
pub fn sniff(text: &str) -> Format {
    let head = text.trim_start();
    if head.starts_with('{') {
        Format::Json
    } else if head.starts_with("graph") || head.starts_with("strict") {
        Format::Dot
    } else {
        Format::Edgelist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_n, generate_n1, RuleConfig};
    use crate::graph::SeedKind;

    fn meta(t: u32) -> GraphMeta {
        GraphMeta::new("n", t, RuleConfig::default().fingerprint())
    }

    #[test]
    fn seed_edgelist() {
        let s = to_edgelist(&LabeledGraph::new_seed(SeedKind::Rectangle), &meta(0));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].contains("t=0"));
        assert_eq!(lines[1], "0 1 vertical 0 seed");
    }

    #[test]
    fn round_trips() {
        for t in 0..=3 {
            let g = generate_n(t, &RuleConfig::default()).unwrap().0;
            let (back, m) = from_edgelist(&to_edgelist(&g, &meta(t))).unwrap();
            assert_eq!(back, g, "edgelist t={t}");
            assert_eq!(m, Some(meta(t)));
            let (back, _) = from_json(&to_json(&g, &meta(t)).unwrap()).unwrap();
            assert_eq!(back, g, "json t={t}");
        }
        for t in 1..=3 {
            let g = generate_n1(t).unwrap();
            let m = GraphMeta::new("n1", t, "");
            assert_eq!(from_edgelist(&to_edgelist(&g, &m)).unwrap().0, g);
        }
    }

    #[test]
    fn dot_statement_counts() {
        let g = generate_n(1, &RuleConfig::default()).unwrap().0;
        let s = to_dot(&g, &meta(1));
        assert_eq!(s.lines().filter(|l| l.contains("[origin=")).count(), 10);
        assert_eq!(s.lines().filter(|l| l.contains(" -- ")).count(), 12);
        assert!(matches!(import(&s, sniff(&s)), Err(IoError::NotImportable("dot"))));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let bad = "# model=n t=0 config=x\n0 1 vertical 0 seed\n1 2 sideways 0 seed\n";
        match from_edgelist(bad) {
            Err(IoError::Malformed { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let late = "# model=n t=0 config=x\n0 1 vertical 3 seed\n";
        assert!(matches!(from_edgelist(late), Err(IoError::Inconsistent(_))));
        assert!(matches!(from_edgelist("2 1 vertical 0 seed\n"), Err(IoError::Malformed { line: 1, .. })));
    }
}
