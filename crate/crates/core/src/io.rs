//! Canonical JSON documents, DOT export and CSV count summaries.
//!
//! Documents are compact JSON with a fixed field order and lexicographically
//! sorted inversions, so equal values always produce identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::colors::{natural_color, signed_label, ColorSet};
use crate::digraph::FlipDigraph;
use crate::enumerate::Class;
use crate::error::{Error, Result};
use crate::flips::EdgeKind;
use crate::inversion::{format_members, validate, Cubillage, InversionSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    /// Colors `1..=n`.
    #[default]
    Natural,
    /// Colors `-m..=m`, with `0` only for odd `n`; the involution is negation.
    Symmetric,
}

impl LabelMode {
    fn is_natural(&self) -> bool {
        *self == LabelMode::Natural
    }

    fn encode(self, set: ColorSet, n: usize) -> Vec<i64> {
        set.iter()
            .map(|c| match self {
                LabelMode::Natural => c as i64,
                LabelMode::Symmetric => signed_label(c, n),
            })
            .collect()
    }

    fn decode(self, labels: &[i64], n: usize) -> Result<ColorSet> {
        let colors = labels
            .iter()
            .map(|&l| match self {
                LabelMode::Natural if l >= 1 && l as usize <= n => Ok(l as usize),
                LabelMode::Natural => Err(Error::invalid(format!("color {l} is outside 1..={n}"))),
                LabelMode::Symmetric => natural_color(l, n),
            })
            .collect::<Result<Vec<_>>>()?;
        ColorSet::from_colors(colors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubillageDocument {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "LabelMode::is_natural")]
    pub label_mode: LabelMode,
    pub inversions: Vec<Vec<i64>>,
}

impl CubillageDocument {
    pub fn new(q: &Cubillage, label_mode: LabelMode) -> Self {
        CubillageDocument {
            n: q.n(),
            d: q.d(),
            label_mode,
            inversions: q.iter().map(|f| label_mode.encode(f, q.n())).collect(),
        }
    }

    /// The validated cubillage described by the document.
    pub fn to_cubillage(&self) -> Result<Cubillage> {
        let members =
            self.inversions.iter().map(|labels| self.label_mode.decode(labels, self.n)).collect::<Result<Vec<_>>>()?;
        let set = InversionSet::from_members(self.n, self.d, members)?;
        Ok(validate(set)?)
    }
}

/// Canonical compact JSON of a cubillage.
pub fn emit_cubillage(q: &Cubillage, label_mode: LabelMode) -> String {
    serde_json::to_string(&CubillageDocument::new(q, label_mode)).expect("documents serialize")
}

/// Parses and validates a cubillage document.
pub fn parse_cubillage(text: &str) -> Result<Cubillage> {
    parse_json::<CubillageDocument>(text)?.to_cubillage()
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full);
        Error::invalid(format!("line {}, column {}: {message}", e.line(), e.column()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub n: usize,
    pub d: usize,
    pub class: Class,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: usize,
    pub rank: usize,
    pub inversions: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDocument {
    pub parameters: Parameters,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl DigraphDocument {
    pub fn new(g: &FlipDigraph, class: Class) -> Self {
        DigraphDocument {
            parameters: Parameters { n: g.n(), d: g.d(), class },
            nodes: g
                .nodes()
                .iter()
                .enumerate()
                .map(|(id, q)| NodeRecord {
                    id,
                    rank: q.rank(),
                    inversions: q.iter().map(|f| LabelMode::Natural.encode(f, q.n())).collect(),
                })
                .collect(),
            edges: g.edges().iter().map(|e| EdgeRecord { src: e.src, dst: e.dst, kind: e.kind }).collect(),
        }
    }

    /// Nodes as validated cubillages, checking that ids, ranks and order
    /// are canonical.
    pub fn cubillages(&self) -> Result<Vec<Cubillage>> {
        let Parameters { n, d, .. } = self.parameters;
        let mut out: Vec<Cubillage> = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let doc = CubillageDocument { n, d, label_mode: LabelMode::Natural, inversions: node.inversions.clone() };
            let q = doc.to_cubillage()?;
            if node.id != i || node.rank != q.rank() {
                return Err(Error::invalid(format!("node {i} has a non-canonical id or rank")));
            }
            if out.last().is_some_and(|prev| prev >= &q) {
                return Err(Error::invalid(format!("node {i} is out of canonical order")));
            }
            out.push(q);
        }
        Ok(out)
    }
}

/// Canonical digraph JSON: one node or edge record per line.
pub fn emit_digraph(g: &FlipDigraph, class: Class) -> String {
    let doc = DigraphDocument::new(g, class);
    let mut out = String::new();
    let params = serde_json::to_string(&doc.parameters).expect("serializes");
    write!(out, "{{\"parameters\":{params},\n\"nodes\":[").unwrap();
    write_lines(&mut out, &doc.nodes);
    out.push_str("],\n\"edges\":[");
    write_lines(&mut out, &doc.edges);
    out.push_str("]}\n");
    out
}

fn write_lines<T: Serialize>(out: &mut String, items: &[T]) {
    for (i, item) in items.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&serde_json::to_string(item).expect("serializes"));
    }
    if !items.is_empty() {
        out.push('\n');
    }
}

pub fn parse_digraph(text: &str) -> Result<DigraphDocument> {
    parse_json(text)
}

/// A JSON array of cubillage documents, one per line.
pub fn emit_cubillage_list(list: &[Cubillage], label_mode: LabelMode) -> String {
    let docs: Vec<CubillageDocument> = list.iter().map(|q| CubillageDocument::new(q, label_mode)).collect();
    let mut out = String::from("[");
    write_lines(&mut out, &docs);
    out.push_str("]\n");
    out
}

pub fn parse_cubillage_list(text: &str) -> Result<Vec<Cubillage>> {
    parse_json::<Vec<CubillageDocument>>(text)?.iter().map(CubillageDocument::to_cubillage).collect()
}

/// Graphviz rendering: plain arrows for simple and type-A flips, a doubled
/// line for double flips, a bold line for barrels.
pub fn to_dot(g: &FlipDigraph, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{title}\" {{").unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (id, q) in g.nodes().iter().enumerate() {
        let label = if q.rank() == 0 { "{}".to_string() } else { format_members(q.iter()) };
        writeln!(out, "  n{id} [label=\"{label}\"];").unwrap();
    }
    for e in g.edges() {
        let style = match e.kind {
            EdgeKind::TypeA | EdgeKind::Simple => "style=solid",
            EdgeKind::Double => "color=\"black:invis:black\"",
            EdgeKind::Barrel => "style=bold, penwidth=3",
        };
        writeln!(out, "  n{} -> n{} [{style}, kind={}];", e.src, e.dst, e.kind).unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub d: usize,
    pub class: Class,
    pub count: usize,
}

pub fn counts_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("n,d,class,count\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.n, r.d, r.class, r.count).unwrap();
    }
    out
}
