//! Text and JSON encodings of graphs.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! v a
//! v b
//! e a b
//! e b b      # a loop
//! ```
//!
//! Edges may mention vertices not declared with `v`; they are declared
//! implicitly. Vertex names become labels and ids follow first appearance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

struct Builder {
    graph: Graph,
    by_name: BTreeMap<String, Vertex>,
}

impl Builder {
    fn new() -> Self {
        Builder { graph: Graph::new(), by_name: BTreeMap::new() }
    }

    fn vertex(&mut self, name: &str) -> Vertex {
        if let Some(&v) = self.by_name.get(name) {
            return v;
        }
        let v = self.graph.add_labeled_vertex(name);
        self.by_name.insert(name.to_string(), v);
        v
    }
}

impl Graph {
    /// Parses the line-oriented text format.
    pub fn parse_text(text: &str) -> Result<Graph, ParseError> {
        let mut b = Builder::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut col = 0;
            for piece in line.split_inclusive(char::is_whitespace) {
                let tok = piece.trim_end();
                if !tok.is_empty() {
                    tokens.push((col + 1, tok));
                }
                col += piece.chars().count();
            }
            let Some(&(kc, kind)) = tokens.first() else { continue };
            match (kind, tokens.len()) {
                ("v", 2) => {
                    b.vertex(tokens[1].1);
                }
                ("e", 3) => {
                    let u = b.vertex(tokens[1].1);
                    let v = b.vertex(tokens[2].1);
                    b.graph.add_edge(u, v).expect("declared");
                }
                ("v", n) => {
                    return Err(ParseError::at(ln + 1, kc, format!("`v` takes one vertex id, found {}", n - 1)))
                }
                ("e", n) => {
                    return Err(ParseError::at(ln + 1, kc, format!("`e` takes two vertex ids, found {}", n - 1)))
                }
                (other, _) => {
                    return Err(ParseError::at(ln + 1, kc, format!("unknown directive `{other}`, expected `v` or `e`")))
                }
            }
        }
        Ok(b.graph)
    }

    /// Emits the text format. Vertices are listed first, then edges.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let _ = writeln!(out, "v {}", self.name(v));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", self.name(u), self.name(v));
        }
        out
    }

    /// Parses either the JSON form or the text form, deciding by the first
    /// non-blank character.
    pub fn parse_any(text: &str) -> Result<Graph, ParseError> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| ParseError::at(e.line(), e.column(), e.to_string()))
        } else {
            Graph::parse_text(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Name {
    Text(String),
    Number(u64),
}

impl Name {
    fn into_string(self) -> String {
        match self {
            Name::Text(s) => s,
            Name::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<Name>,
    #[serde(default)]
    edges: Vec<[Name; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertices().map(|v| Name::Text(self.name(v))).collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [Name::Text(self.name(u)), Name::Text(self.name(v))])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        let mut b = Builder::new();
        for v in raw.vertices {
            b.vertex(&v.into_string());
        }
        for [u, v] in raw.edges {
            let (u, v) = (u.into_string(), v.into_string());
            let (Some(&a), Some(&c)) = (b.by_name.get(&u), b.by_name.get(&v)) else {
                return Err(serde::de::Error::custom(format!("edge {u}-{v} uses an undeclared vertex")));
            };
            b.graph.add_edge(a, c).map_err(serde::de::Error::custom)?;
        }
        Ok(b.graph)
    }
}
