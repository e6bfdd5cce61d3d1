//! Line-oriented text format for element sets.
//!
//! ```text
//! # comment
//! n 8
//! k 1
//! source K1_Block8
//! size 6
//! u 0
//! vv 1
//! ```
//!
//! Element lines are `<tag> <index>` with tags `v`, `u` (vertices), `vv`
//! (`v_i v_{i+1}`), `vu` (spoke `v_i u_i`) and `uu` (`u_i u_{i+k}`), or
//! `id <canonical id>`. Any other `key value` line is kept as metadata.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Element, Graph, GraphSpec};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFile {
    pub n: usize,
    pub k: usize,
    pub source: String,
    pub elements: Vec<Element>,
    pub meta: Vec<(String, String)>,
}

impl SetFile {
    pub fn from_set(graph: &Graph, set: &ElementSet, source: &str) -> SetFile {
        SetFile {
            n: graph.n(),
            k: graph.k(),
            source: source.to_string(),
            elements: set
                .iter()
                .map(|id| graph.element(id).expect("id in range"))
                .collect(),
            meta: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> SetFile {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn spec(&self) -> GraphSpec {
        GraphSpec {
            n: self.n,
            k: self.k,
        }
    }

    pub fn to_set(&self, graph: &Graph) -> Result<ElementSet> {
        graph.set_of(self.elements.iter().copied())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "k {}", self.k);
        if !self.source.is_empty() {
            let _ = writeln!(out, "source {}", self.source);
        }
        let _ = writeln!(out, "size {}", self.elements.len());
        for (key, value) in &self.meta {
            let _ = writeln!(out, "{key} {value}");
        }
        for el in &self.elements {
            let _ = writeln!(out, "{} {}", el.tag(), el.index());
        }
        out
    }

    pub fn parse(text: &str) -> Result<SetFile> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut n = None;
        let mut k = None;
        let mut size = None;
        let mut source = String::new();
        let mut meta = Vec::new();
        let mut raw: Vec<(usize, &str, usize)> = Vec::new();

        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .map(|(a, b)| (a, b.trim()))
                .ok_or_else(|| err(lineno, format!("expected `key value`, got `{line}`")))?;
            let number = || {
                value
                    .parse::<usize>()
                    .map_err(|_| err(lineno, format!("`{value}` is not a non-negative integer")))
            };
            match key {
                "n" => n = Some(number()?),
                "k" => k = Some(number()?),
                "size" => size = Some(number()?),
                "source" => source = value.to_string(),
                "id" | "v" | "u" | "vv" | "vu" | "uu" => raw.push((lineno, key, number()?)),
                _ => meta.push((key.to_string(), value.to_string())),
            }
        }

        let n = n.ok_or_else(|| err(0, "missing `n` header".into()))?;
        let k = k.ok_or_else(|| err(0, "missing `k` header".into()))?;
        let spec = GraphSpec { n, k };
        spec.validate().map_err(|e| err(0, e.to_string()))?;

        let mut seen = BTreeSet::new();
        let mut elements = Vec::with_capacity(raw.len());
        for (lineno, tag, value) in raw {
            let el = if tag == "id" {
                Element::from_id(n, value).map_err(|e| err(lineno, e.to_string()))?
            } else {
                if value >= n {
                    return Err(err(lineno, format!("index {value} outside 0..{n}")));
                }
                Element::from_tag(tag, value).expect("known tag")
            };
            if !seen.insert(el) {
                return Err(err(
                    lineno,
                    format!("duplicate element `{} {}`", el.tag(), el.index()),
                ));
            }
            elements.push(el);
        }
        if let Some(size) = size {
            if size != elements.len() {
                return Err(err(
                    0,
                    format!("header size {size} but {} elements listed", elements.len()),
                ));
            }
        }
        Ok(SetFile {
            n,
            k,
            source,
            elements,
            meta,
        })
    }
}
