//! Plain-text quiver files.
//!
//! ```text
//! # comment
//! quiver <name>
//! vertex <id>
//! arrow <label> <source> <target>
//! twocycle <name> <c> <d>
//! pair <name> <v0> <v1>
//! ```
//!
//! Identifiers match `[A-Za-z0-9_^.*]+`. The `quiver` line is optional but
//! must precede every other declaration.

use crate::error::{Error, Result};
use crate::quiver::{Quiver, TwoCyclePointer, VertexPairPointer};

const DEFAULT_NAME: &str = "quiver";

/// A quiver together with its named two-cycles and vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDocument {
    pub quiver: Quiver,
    pub twocycles: Vec<(String, TwoCyclePointer)>,
    pub pairs: Vec<(String, VertexPairPointer)>,
}

impl QuiverDocument {
    pub fn new(quiver: Quiver) -> Self {
        QuiverDocument {
            quiver,
            twocycles: Vec::new(),
            pairs: Vec::new(),
        }
    }

    pub fn twocycle(&self, name: &str) -> Option<&TwoCyclePointer> {
        self.twocycles
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    pub fn pair(&self, name: &str) -> Option<&VertexPairPointer> {
        self.pairs.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '^' | '.' | '*'))
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

pub fn parse_quiver(text: &str) -> Result<QuiverDocument> {
    let mut quiver: Option<Quiver> = None;
    let mut twocycles: Vec<(String, TwoCyclePointer)> = Vec::new();
    let mut pairs: Vec<(String, VertexPairPointer)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        if head.text.starts_with('#') {
            continue;
        }
        let syntax = |column: usize, message: String| Error::Syntax {
            line,
            column,
            message,
        };
        let semantic = |message: String| Error::Semantic { line, message };
        let arity = match head.text {
            "quiver" => 1,
            "vertex" => 1,
            "arrow" | "twocycle" | "pair" => 3,
            other => {
                return Err(syntax(
                    head.column,
                    format!("unknown declaration `{other}`"),
                ));
            }
        };
        if toks.len() != arity + 1 {
            let column = toks
                .get(arity + 1)
                .map_or(raw.chars().count() + 1, |t| t.column);
            return Err(syntax(
                column,
                format!(
                    "`{}` takes {arity} argument(s), found {}",
                    head.text,
                    toks.len() - 1
                ),
            ));
        }
        for t in &toks[1..] {
            if !is_identifier(t.text) {
                return Err(syntax(t.column, format!("invalid identifier `{}`", t.text)));
            }
        }
        let args: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();

        if head.text == "quiver" {
            if quiver.is_some() {
                return Err(syntax(
                    head.column,
                    "`quiver` must be the first declaration".into(),
                ));
            }
            quiver = Some(Quiver::new(args[0]));
            continue;
        }
        let q = quiver.get_or_insert_with(|| Quiver::new(DEFAULT_NAME));
        match head.text {
            "vertex" => {
                q.add_vertex(args[0]).map_err(|e| semantic(e.to_string()))?;
            }
            "arrow" => {
                if let Some(v) = args[1..].iter().find(|v| !q.has_vertex(v)) {
                    return Err(semantic(format!("unknown vertex `{v}`")));
                }
                q.add_arrow(args[0], args[1], args[2])
                    .map_err(|e| semantic(e.to_string()))?;
            }
            "twocycle" => {
                if twocycles.iter().any(|(n, _)| n == args[0]) {
                    return Err(semantic(format!("duplicate two-cycle name `{}`", args[0])));
                }
                let p = TwoCyclePointer::from_labels(q, args[1], args[2])
                    .map_err(|e| semantic(e.to_string()))?;
                twocycles.push((args[0].to_string(), p));
            }
            "pair" => {
                if pairs.iter().any(|(n, _)| n == args[0]) {
                    return Err(semantic(format!("duplicate pair name `{}`", args[0])));
                }
                let p = VertexPairPointer::from_ids(q, args[1], args[2])
                    .map_err(|e| semantic(e.to_string()))?;
                pairs.push((args[0].to_string(), p));
            }
            _ => unreachable!(),
        }
    }
    Ok(QuiverDocument {
        quiver: quiver.unwrap_or_else(|| Quiver::new(DEFAULT_NAME)),
        twocycles,
        pairs,
    })
}

/// Canonical text: quiver line, vertices, arrows, two-cycles, pairs.
pub fn serialize_quiver(doc: &QuiverDocument) -> String {
    let q = &doc.quiver;
    let mut out = format!("quiver {}\n", q.name());
    for v in q.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.label,
            q.vertices()[a.source],
            q.vertices()[a.target]
        ));
    }
    for (name, p) in &doc.twocycles {
        out.push_str(&format!(
            "twocycle {name} {} {}\n",
            q.arrows()[p.c].label,
            q.arrows()[p.d].label
        ));
    }
    for (name, p) in &doc.pairs {
        out.push_str(&format!(
            "pair {name} {} {}\n",
            q.vertices()[p.v0],
            q.vertices()[p.v1]
        ));
    }
    out
}
