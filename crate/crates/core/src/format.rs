//! JSON interchange for graphs and colorings, plus DOT and CSV renderings.
//!
//! Graph document:
//!
//! ```json
//! {"family": "cylinder", "m": 2, "n": 2,
//!  "vertices": [[1,1], [1,2], ...],
//!  "edges": [[[1,1],[1,2]], ...]}
//! ```
//!
//! A coloring document has the same fields, with every edge entry extended by
//! its color (`[[1,1],[1,2],3]`), a top-level `"t"`, and an optional `"rules"`
//! array aligned with `"edges"`. Vertices are `[layer, ring]` pairs and all
//! arrays are written in canonical sorted order.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColoringError, EdgeColoring};
use crate::constructions::Rule;
use crate::graph::{build_family, Edge, Family, GraphError, GridVertex, MeshGraph};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        FormatError::Parse { line: e.line(), column: e.column(), message }
    }
}

type Pair = [u32; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub family: String,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub vertices: Vec<Pair>,
    pub edges: Vec<[Pair; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge(pub Pair, pub Pair, pub Color);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub family: String,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub t: Color,
    pub vertices: Vec<Pair>,
    pub edges: Vec<ColoredEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<String>>,
}

fn pair(v: GridVertex) -> Pair {
    [v.layer, v.ring]
}

fn vertex(p: Pair) -> GridVertex {
    GridVertex::new(p[0], p[1])
}

impl GraphDoc {
    pub fn from_graph(g: &MeshGraph) -> Self {
        let (m, n) = g.family().params();
        GraphDoc {
            family: g.family().name().to_string(),
            m,
            n,
            vertices: g.vertices().iter().copied().map(pair).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = e.endpoints();
                    [pair(a), pair(b)]
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MeshGraph, FormatError> {
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Edge::new(vertex(*a), vertex(*b)))
            .collect::<Result<Vec<_>, _>>()?;
        assemble_graph(&self.family, self.m, self.n, &self.vertices, edges)
    }
}

fn assemble_graph(
    family: &str,
    m: Option<u32>,
    n: Option<u32>,
    vertices: &[Pair],
    edges: Vec<Edge>,
) -> Result<MeshGraph, FormatError> {
    let family = Family::from_parts(family, m, n)?;
    let layers = vertices.iter().map(|p| p[0]).max().unwrap_or(0);
    let ring_len = vertices.iter().map(|p| p[1]).max().unwrap_or(0);
    if vertices.len() as u64 != u64::from(layers) * u64::from(ring_len) {
        return Err(FormatError::Schema(format!(
            "vertex list must be the full {layers}x{ring_len} grid, each vertex once"
        )));
    }
    if let Some(shape) = family.grid_shape() {
        if shape != (layers, ring_len) {
            return Err(GraphError::FamilyMismatch(family.to_string()).into());
        }
    }
    let mut listed: Vec<GridVertex> = vertices.iter().copied().map(vertex).collect();
    listed.sort_unstable();
    let graph = MeshGraph::from_edges(family, layers, ring_len, edges)?;
    if listed != graph.vertices() {
        return Err(FormatError::Schema(format!(
            "vertex list must be the full {layers}x{ring_len} grid, each vertex once"
        )));
    }
    if family != Family::Product {
        let expected = build_family(family)?;
        if expected.edges() != graph.edges() || expected.vertices() != graph.vertices() {
            return Err(GraphError::FamilyMismatch(family.to_string()).into());
        }
    }
    Ok(graph)
}

impl ColoringDoc {
    pub fn from_coloring(c: &EdgeColoring, rules: Option<&[Rule]>) -> Self {
        let g = GraphDoc::from_graph(c.graph());
        let edges = g.edges.iter().zip(c.colors()).map(|([a, b], &col)| ColoredEdge(*a, *b, col)).collect();
        ColoringDoc {
            family: g.family,
            m: g.m,
            n: g.n,
            t: c.palette_size(),
            vertices: g.vertices,
            edges,
            rules: rules.map(|r| r.iter().map(Rule::to_string).collect()),
        }
    }

    /// Rebuild the coloring. Colors outside `1..=t` are kept so the verifier can
    /// report them.
    pub fn to_coloring(&self) -> Result<(EdgeColoring, Option<Vec<Rule>>), FormatError> {
        let edges = self
            .edges
            .iter()
            .map(|ColoredEdge(a, b, _)| Edge::new(vertex(*a), vertex(*b)))
            .collect::<Result<Vec<_>, _>>()?;
        let graph = Arc::new(assemble_graph(&self.family, self.m, self.n, &self.vertices, edges.clone())?);
        let mut colors = vec![0; graph.edge_count()];
        let mut rules = self.rules.as_ref().map(|_| vec![None; graph.edge_count()]);
        if let Some(r) = &self.rules {
            if r.len() != self.edges.len() {
                return Err(FormatError::Schema(format!(
                    "{} rules for {} edges",
                    r.len(),
                    self.edges.len()
                )));
            }
        }
        for (k, (e, ColoredEdge(_, _, color))) in edges.iter().zip(&self.edges).enumerate() {
            let id = graph.edge_id(e).expect("edge was used to build the graph");
            colors[id] = *color;
            if let (Some(slots), Some(names)) = (rules.as_mut(), &self.rules) {
                slots[id] = Some(names[k].parse::<Rule>().map_err(FormatError::Schema)?);
            }
        }
        let coloring = EdgeColoring::unchecked(graph, colors, self.t)?;
        let rules = rules.map(|slots| slots.into_iter().map(Option::unwrap).collect());
        Ok((coloring, rules))
    }
}

pub fn graph_to_json(g: &MeshGraph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from_graph(g)).expect("graph documents always serialize")
}

pub fn parse_graph(text: &str) -> Result<MeshGraph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    doc.to_graph()
}

pub fn coloring_to_json(c: &EdgeColoring, rules: Option<&[Rule]>) -> String {
    serde_json::to_string_pretty(&ColoringDoc::from_coloring(c, rules)).expect("coloring documents always serialize")
}

pub fn parse_coloring(text: &str) -> Result<(EdgeColoring, Option<Vec<Rule>>), FormatError> {
    let doc: ColoringDoc = serde_json::from_str(text)?;
    doc.to_coloring()
}

fn dot_name(v: GridVertex) -> String {
    format!("x_{}_{}", v.ring, v.layer)
}

/// Graphviz rendering with each edge labeled by its color. Vertex `x_j^(i)` is
/// named `x_j_i`.
pub fn to_dot(c: &EdgeColoring) -> String {
    let mut out = String::new();
    let g = c.graph();
    let _ = writeln!(out, "graph \"{}\" {{", g.family());
    let _ = writeln!(out, "  // t = {}", c.palette_size());
    for &v in g.vertices() {
        let _ = writeln!(out, "  {};", dot_name(v));
    }
    for (e, color) in c.iter() {
        let (a, b) = e.endpoints();
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", dot_name(a), dot_name(b), color);
    }
    out.push_str("}\n");
    out
}

/// One CSV row per edge: endpoints, rule id (empty without a trace) and color.
pub fn to_csv(c: &EdgeColoring, rules: Option<&[Rule]>) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["u", "v", "rule", "color"])?;
    for (id, (e, color)) in c.iter().enumerate() {
        let (a, b) = e.endpoints();
        let rule = rules.map(|r| r[id].to_string()).unwrap_or_default();
        w.write_record([dot_name(a), dot_name(b), rule, color.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of ascii fields is utf-8"))
}
