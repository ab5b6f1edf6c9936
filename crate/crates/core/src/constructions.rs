//! Explicit interval colorings of cylinders and tori, and the step-down
//! recoloring that walks a regular graph's colorings down to `t = Δ`.
//!
//! The coloring rules are transcribed with 1-based indices exactly as numbered
//! below. Every result is checked by [`verify_interval`] before it is returned;
//! a rule that fails verification surfaces as
//! [`ConstructionError::Verification`] with the offending vertex spectrum.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::coloring::{verify_interval, Color, ColoringError, EdgeColoring};
use crate::graph::{build_cylinder, build_torus, Edge, GraphError, GridVertex, MeshGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("no rule colors edge {0}")]
    Uncovered(Edge),
    #[error("edge {edge} colored {first_color} by {first} and {second_color} by {second}")]
    Conflict { edge: Edge, first: Rule, first_color: i64, second: Rule, second_color: i64 },
    #[error("{rule} gives edge {edge} the non-positive color {value}")]
    NonPositive { edge: Edge, rule: Rule, value: i64 },
    #[error("construction claims t = {claimed_t} but vertex {vertex} has spectrum {spectrum:?} (degree {degree})")]
    Verification { claimed_t: Color, vertex: GridVertex, degree: usize, spectrum: Vec<Color> },
    #[error("construction claims t = {claimed_t} but colors {missing:?} are unused")]
    NotSurjective { claimed_t: Color, missing: Vec<Color> },
    #[error("graph is not regular (degrees {min}..={max})")]
    NotRegular { min: usize, max: usize },
    #[error("coloring already uses t = Δ = {0} colors")]
    CannotStepDown(Color),
    #[error("input is not an interval coloring: {0}")]
    InvalidColoring(String),
}

/// Which numbered rule colored an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Cylinder(u8),
    Torus(u8),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Cylinder(k) => write!(f, "cylinder-{k}"),
            Rule::Torus(k) => write!(f, "torus-{k}"),
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, k) = s.split_once('-').ok_or_else(|| format!("bad rule id {s:?}"))?;
        let k: u8 = k.parse().map_err(|_| format!("bad rule number in {s:?}"))?;
        match kind {
            "cylinder" if (1..=6).contains(&k) => Ok(Rule::Cylinder(k)),
            "torus" if (1..=8).contains(&k) => Ok(Rule::Torus(k)),
            _ => Err(format!("unknown rule {s:?}")),
        }
    }
}

/// The two families with explicit constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshFamily {
    Cylinder,
    Torus,
}

impl MeshFamily {
    pub fn name(&self) -> &'static str {
        match self {
            MeshFamily::Cylinder => "cylinder",
            MeshFamily::Torus => "torus",
        }
    }

    pub fn build_graph(&self, m: u32, n: u32) -> Result<MeshGraph, GraphError> {
        match self {
            MeshFamily::Cylinder => build_cylinder(m, n),
            MeshFamily::Torus => build_torus(m, n),
        }
    }

    pub fn construct(&self, m: u32, n: u32) -> Result<ConstructionResult, ConstructionError> {
        match self {
            MeshFamily::Cylinder => cylinder_coloring(m, n),
            MeshFamily::Torus => torus_coloring(m, n),
        }
    }

    /// Palette size of the explicit construction: `3m + n − 2` for cylinders,
    /// `max{3m + n, 3n + m}` for tori.
    pub fn claimed_t(&self, m: u32, n: u32) -> Color {
        match self {
            MeshFamily::Cylinder => 3 * m + n - 2,
            MeshFamily::Torus => (3 * m + n).max(3 * n + m),
        }
    }
}

impl fmt::Display for MeshFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeshFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cylinder" => Ok(MeshFamily::Cylinder),
            "torus" => Ok(MeshFamily::Torus),
            other => Err(format!("unknown family {other:?} (expected cylinder or torus)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub coloring: EdgeColoring,
    pub claimed_t: Color,
    /// Rule per edge id, aligned with [`MeshGraph::edges`].
    pub rule_trace: Option<Vec<Rule>>,
}

impl ConstructionResult {
    pub fn rule_of(&self, e: &Edge) -> Option<Rule> {
        let id = self.coloring.graph().edge_id(e)?;
        self.rule_trace.as_ref().map(|r| r[id])
    }
}

/// Collects rule applications, rejecting conflicts and non-positive colors.
struct Assigner {
    graph: Arc<MeshGraph>,
    slots: Vec<Option<(i64, Rule)>>,
}

impl Assigner {
    fn new(graph: Arc<MeshGraph>) -> Self {
        let slots = vec![None; graph.edge_count()];
        Assigner { graph, slots }
    }

    fn put(&mut self, a: (u32, u32), b: (u32, u32), value: i64, rule: Rule) -> Result<(), ConstructionError> {
        let edge = Edge::new(GridVertex::new(a.0, a.1), GridVertex::new(b.0, b.1))?;
        let id = self
            .graph
            .edge_id(&edge)
            .ok_or(GraphError::InvalidVertex(GridVertex::new(b.0, b.1)))?;
        if value < 1 {
            return Err(ConstructionError::NonPositive { edge, rule, value });
        }
        match self.slots[id] {
            None => self.slots[id] = Some((value, rule)),
            // a mirrored instance of the same rule landing on the same edge must agree
            Some((prev, prev_rule)) if prev_rule == rule && prev == value => {}
            Some((prev, prev_rule)) => {
                return Err(ConstructionError::Conflict {
                    edge,
                    first: prev_rule,
                    first_color: prev,
                    second: rule,
                    second_color: value,
                })
            }
        }
        Ok(())
    }

    fn finish(self, claimed_t: Color) -> Result<ConstructionResult, ConstructionError> {
        let edges = self.graph.edges();
        let mut colors = Vec::with_capacity(edges.len());
        let mut rules = Vec::with_capacity(edges.len());
        for (id, slot) in self.slots.iter().enumerate() {
            let (value, rule) = slot.ok_or(ConstructionError::Uncovered(edges[id]))?;
            colors.push(value as Color);
            rules.push(rule);
        }
        let coloring = EdgeColoring::unchecked(self.graph, colors, claimed_t)?;
        checked(ConstructionResult { coloring, claimed_t, rule_trace: Some(rules) })
    }
}

/// Run the verifier on a construction and turn the first failure into an error.
fn checked(result: ConstructionResult) -> Result<ConstructionResult, ConstructionError> {
    let report = verify_interval(&result.coloring);
    if report.interval {
        return Ok(result);
    }
    if let Some(bad) = report.first_violation() {
        return Err(ConstructionError::Verification {
            claimed_t: result.claimed_t,
            vertex: bad.vertex,
            degree: bad.degree,
            spectrum: bad.colors.clone(),
        });
    }
    let mut missing = report.missing_colors;
    missing.extend(report.stray_colors);
    Err(ConstructionError::NotSurjective { claimed_t: result.claimed_t, missing })
}

/// Interval `(3m + n − 2)`-coloring of the cylinder `C(m, 2n)`.
///
/// Rules, for layer `i` and ring position `j`:
///
/// 1. ring edge `(x_j, x_{j+1})`, `j = 1..=n+1`: `3i + j − 3`
/// 2. ring edge `(x_j, x_{j+1})`, `j = n+2..=2n−1`: `3i − j + 2n − 1`
/// 3. ring edge `(x_1, x_2n)`: `3i − 1`
/// 4. rung `(x_j^(i), x_j^(i+1))`, `j = 2..=n+1`: `3i + j − 2`
/// 5. rung `(x_j^(i), x_j^(i+1))`, `j = n+2..=2n`: `3i − j + 2n + 1`
/// 6. rung `(x_1^(i), x_1^(i+1))`: `3i`
pub fn cylinder_coloring(m: u32, n: u32) -> Result<ConstructionResult, ConstructionError> {
    let graph = Arc::new(build_cylinder(m, n)?);
    let mut a = Assigner::new(graph);
    let (mi, ni) = (m as i64, n as i64);
    let rule = Rule::Cylinder;
    let u = |x: i64| x as u32;
    for i in 1..=mi {
        for j in 1..=ni + 1 {
            a.put((u(i), u(j)), (u(i), u(j + 1)), 3 * i + j - 3, rule(1))?;
        }
        for j in ni + 2..=2 * ni - 1 {
            a.put((u(i), u(j)), (u(i), u(j + 1)), 3 * i - j + 2 * ni - 1, rule(2))?;
        }
        a.put((u(i), 1), (u(i), u(2 * ni)), 3 * i - 1, rule(3))?;
    }
    for i in 1..mi {
        for j in 2..=ni + 1 {
            a.put((u(i), u(j)), (u(i + 1), u(j)), 3 * i + j - 2, rule(4))?;
        }
        for j in ni + 2..=2 * ni {
            a.put((u(i), u(j)), (u(i + 1), u(j)), 3 * i - j + 2 * ni + 1, rule(5))?;
        }
        a.put((u(i), 1), (u(i + 1), 1), 3 * i, rule(6))?;
    }
    a.finish(MeshFamily::Cylinder.claimed_t(m, n))
}

/// Interval `max{3m + n, 3n + m}`-coloring of the torus `T(2m, 2n)`.
///
/// For `m <= n` the rules below are applied directly. Each ring rule colors
/// layer `i` and its mirror layer `2m + 1 − i`; each rung rule colors the rung
/// between layers `i, i+1` and its mirror between `2m − i, 2m + 1 − i` (these
/// coincide at `i = m`). For `i = 1..=m`:
///
/// 1. ring `(x_j, x_{j+1})`, `j = 1..=n+1`: `i + 3j − 3`
/// 2. ring `(x_j, x_{j+1})`, `j = n+2..=2n−1`: `i − 3j + 6n + 3`
/// 3. ring `(x_1, x_2n)`: `i + 3`
/// 4. rung at column `j = 2..=n+1`: `i + 3j − 4`
/// 5. rung at column `j = n+2..=2n`: `i − 3j + 6n + 5`
/// 6. rung at column 1: `i + 2`
/// 7. wrap rung `(x_j^(1), x_j^(2m))` and its column mirror `2n + 3 − j`, `j = 3..=n+1`: `3j − 4`
/// 8. wrap rungs at columns 1 and 2: `2`
///
/// For `m > n` the coloring of `T(2n, 2m)` is pulled back through the
/// factor swap `x_j^(i) ↦ x_i^(j)`.
pub fn torus_coloring(m: u32, n: u32) -> Result<ConstructionResult, ConstructionError> {
    if m <= n {
        return torus_coloring_ordered(m, n);
    }
    let target = Arc::new(build_torus(m, n)?);
    let base = torus_coloring_ordered(n, m)?;
    let swap = |x: GridVertex| GridVertex::new(x.ring, x.layer);
    let coloring = base.coloring.pull_back(Arc::clone(&target), swap)?;
    let rule_trace = base.rule_trace.as_ref().map(|_| {
        target
            .edges()
            .iter()
            .map(|e| base.rule_of(&e.transposed()).expect("transposed edge exists"))
            .collect()
    });
    checked(ConstructionResult { coloring, claimed_t: base.claimed_t, rule_trace })
}

fn torus_coloring_ordered(m: u32, n: u32) -> Result<ConstructionResult, ConstructionError> {
    debug_assert!(m <= n);
    let graph = Arc::new(build_torus(m, n)?);
    let mut a = Assigner::new(graph);
    let (mi, ni) = (m as i64, n as i64);
    let rule = Rule::Torus;
    let u = |x: i64| x as u32;
    for i in 1..=mi {
        for layer in [i, 2 * mi + 1 - i] {
            let l = u(layer);
            for j in 1..=ni + 1 {
                a.put((l, u(j)), (l, u(j + 1)), i + 3 * j - 3, rule(1))?;
            }
            for j in ni + 2..=2 * ni - 1 {
                a.put((l, u(j)), (l, u(j + 1)), i - 3 * j + 6 * ni + 3, rule(2))?;
            }
            a.put((l, 1), (l, u(2 * ni)), i + 3, rule(3))?;
        }
        for (lo, hi) in [(i, i + 1), (2 * mi - i, 2 * mi + 1 - i)] {
            let (lo, hi) = (u(lo), u(hi));
            for j in 2..=ni + 1 {
                a.put((lo, u(j)), (hi, u(j)), i + 3 * j - 4, rule(4))?;
            }
            for j in ni + 2..=2 * ni {
                a.put((lo, u(j)), (hi, u(j)), i - 3 * j + 6 * ni + 5, rule(5))?;
            }
            a.put((lo, 1), (hi, 1), i + 2, rule(6))?;
        }
    }
    let top = u(2 * mi);
    for j in 3..=ni + 1 {
        for col in [j, 2 * ni + 3 - j] {
            a.put((1, u(col)), (top, u(col)), 3 * j - 4, rule(7))?;
        }
    }
    for col in [1, 2] {
        a.put((1, col), (top, col), 2, rule(8))?;
    }
    a.finish(MeshFamily::Torus.claimed_t(m, n))
}

/// Turn an interval `t`-coloring of a `Δ`-regular graph into an interval
/// `(t − 1)`-coloring by recoloring every edge of color `t` with `t − Δ`.
///
/// In a `Δ`-regular interval coloring both endpoints of a color-`t` edge have
/// spectrum `{t − Δ + 1, …, t}`, so `t − Δ` is free at each of them and their
/// new spectrum is `{t − Δ, …, t − 1}`. The output is re-verified regardless.
pub fn step_down(c: &EdgeColoring) -> Result<EdgeColoring, ConstructionError> {
    let g = c.graph();
    if !g.is_regular() {
        return Err(ConstructionError::NotRegular { min: g.min_degree(), max: g.max_degree() });
    }
    let report = verify_interval(c);
    if !report.interval {
        let why = match report.first_violation() {
            Some(v) => format!("vertex {} has spectrum {:?}", v.vertex, v.colors),
            None => format!("unused colors {:?}", report.missing_colors),
        };
        return Err(ConstructionError::InvalidColoring(why));
    }
    let t = c.palette_size();
    let delta = g.max_degree() as Color;
    if t <= delta {
        return Err(ConstructionError::CannotStepDown(delta));
    }
    let colors = c.colors().iter().map(|&x| if x == t { t - delta } else { x }).collect();
    let stepped = EdgeColoring::new(Arc::clone(c.graph_arc()), colors, t - 1)?;
    let after = verify_interval(&stepped);
    if !after.interval {
        let bad = after.first_violation();
        return Err(ConstructionError::Verification {
            claimed_t: t - 1,
            vertex: bad.map(|b| b.vertex).unwrap_or(GridVertex::new(1, 1)),
            degree: bad.map(|b| b.degree).unwrap_or(0),
            spectrum: bad.map(|b| b.colors.clone()).unwrap_or_default(),
        });
    }
    Ok(stepped)
}

/// Verified interval `t`-colorings of `T(2m, 2n)` for every `t` from
/// `max{3m + n, 3n + m}` down to 4, in that order.
pub fn spectrum_sweep(m: u32, n: u32) -> Result<Vec<EdgeColoring>, ConstructionError> {
    let top = torus_coloring(m, n)?.coloring;
    let delta = top.graph().max_degree() as Color;
    let mut out = Vec::with_capacity((top.palette_size() - delta + 1) as usize);
    out.push(top);
    while out.last().unwrap().palette_size() > delta {
        let next = step_down(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}
