//! Exhaustive backtracking search for interval `t`-colorings of small graphs.
//!
//! Edges are colored in BFS order from vertex `x_1^(1)`, trying colors in
//! ascending order. A branch is cut when some vertex's partial spectrum can no
//! longer extend to `d(v)` consecutive colors, or when the edges left cannot
//! cover the colors still unused. The search is deterministic, and it reports
//! [`SearchOutcome::Absent`] only after exhausting the space; a truncated run
//! is always [`SearchOutcome::BudgetExceeded`].

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bounds::{diameter_upper_bound, BoundsError};
use crate::coloring::{Color, EdgeColoring};
use crate::graph::MeshGraph;

/// Instances up to this many edges are searched by default.
pub const DEFAULT_MAX_EDGES: usize = 16;
pub const DEFAULT_MAX_NODES: u64 = 500_000_000;
pub const DEFAULT_TIME_CAP: Duration = Duration::from_secs(120);

// colors are tracked in a u128 bitmask per vertex
const MAX_PALETTE: Color = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Larger instances are refused outright.
    pub max_edges: usize,
    /// Cap on color assignments tried.
    pub max_nodes: u64,
    pub time_cap: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_edges: DEFAULT_MAX_EDGES, max_nodes: DEFAULT_MAX_NODES, time_cap: Some(DEFAULT_TIME_CAP) }
    }
}

impl SearchBudget {
    pub fn with_max_edges(max_edges: usize) -> Self {
        SearchBudget { max_edges, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetLimit {
    Edges { edges: usize, max_edges: usize },
    Nodes(u64),
    Time(Duration),
}

impl fmt::Display for BudgetLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetLimit::Edges { edges, max_edges } => {
                write!(f, "graph has {edges} edges, budget allows {max_edges}")
            }
            BudgetLimit::Nodes(n) => write!(f, "node cap of {n} reached"),
            BudgetLimit::Time(d) => write!(f, "time cap of {d:?} reached"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EdgeColoring),
    /// Exhaustive search proved there is no interval `t`-coloring.
    Absent,
    /// The search stopped early; nothing is claimed.
    BudgetExceeded(BudgetLimit),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(BudgetLimit),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("palette size must be between 1 and {MAX_PALETTE}, got {0}")]
    BadPalette(Color),
    #[error("graph has no interval coloring with at most {0} colors")]
    NotColorable(Color),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

struct Searcher {
    t: Color,
    order: Vec<usize>,
    // endpoints (vertex ids) per edge id
    ends: Vec<(usize, usize)>,
    degree: Vec<u32>,
    mask: Vec<u128>,
    colors: Vec<Color>,
    uses: Vec<u32>,
    missing: usize,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
}

enum Step {
    Done,
    Exhausted,
    Stop(BudgetLimit),
}

impl Searcher {
    fn new(graph: &MeshGraph, t: Color, budget: SearchBudget) -> Self {
        let ends = graph
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (graph.vertex_id(a).unwrap(), graph.vertex_id(b).unwrap())
            })
            .collect();
        let degree = (0..graph.vertex_count()).map(|v| graph.incident_by_id(v).len() as u32).collect();
        Searcher {
            t,
            order: bfs_edge_order(graph),
            ends,
            degree,
            mask: vec![0; graph.vertex_count()],
            colors: vec![0; graph.edge_count()],
            uses: vec![0; t as usize + 1],
            missing: t as usize,
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    /// Could vertex `v` take `color` and still finish as an interval?
    fn fits(&self, v: usize, color: Color) -> bool {
        let bit = 1u128 << color;
        let mask = self.mask[v];
        if mask & bit != 0 {
            return false;
        }
        let mask = mask | bit;
        let lo = mask.trailing_zeros();
        let hi = 127 - mask.leading_zeros();
        hi - lo < self.degree[v]
    }

    fn assign(&mut self, e: usize, color: Color) {
        let (a, b) = self.ends[e];
        for v in [a, b] {
            self.mask[v] |= 1u128 << color;
        }
        self.colors[e] = color;
        if self.uses[color as usize] == 0 {
            self.missing -= 1;
        }
        self.uses[color as usize] += 1;
    }

    fn unassign(&mut self, e: usize, color: Color) {
        let (a, b) = self.ends[e];
        for v in [a, b] {
            self.mask[v] &= !(1u128 << color);
        }
        self.colors[e] = 0;
        self.uses[color as usize] -= 1;
        if self.uses[color as usize] == 0 {
            self.missing += 1;
        }
    }

    fn descend(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return if self.missing == 0 { Step::Done } else { Step::Exhausted };
        }
        let e = self.order[depth];
        let (a, b) = self.ends[e];
        let remaining_after = self.order.len() - depth - 1;
        for color in 1..=self.t {
            if !(self.fits(a, color) && self.fits(b, color)) {
                continue;
            }
            let fresh = usize::from(self.uses[color as usize] == 0);
            if self.missing - fresh > remaining_after {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Step::Stop(BudgetLimit::Nodes(self.budget.max_nodes));
            }
            if self.nodes.is_multiple_of(4096) {
                if let Some(cap) = self.budget.time_cap {
                    if self.started.elapsed() > cap {
                        return Step::Stop(BudgetLimit::Time(cap));
                    }
                }
            }
            self.assign(e, color);
            match self.descend(depth + 1) {
                Step::Exhausted => self.unassign(e, color),
                done_or_stop => return done_or_stop,
            }
        }
        Step::Exhausted
    }
}

/// Edge ids in BFS discovery order from vertex id 0.
fn bfs_edge_order(g: &MeshGraph) -> Vec<usize> {
    let mut seen_v = vec![false; g.vertex_count()];
    let mut seen_e = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut queue = VecDeque::from([0]);
    seen_v[0] = true;
    while let Some(x) = queue.pop_front() {
        let xv = g.vertices()[x];
        for &e in g.incident_by_id(x) {
            if !seen_e[e] {
                seen_e[e] = true;
                order.push(e);
            }
            let y = g.vertex_id(g.edges()[e].other(xv).unwrap()).unwrap();
            if !seen_v[y] {
                seen_v[y] = true;
                queue.push_back(y);
            }
        }
    }
    order
}

/// Decide whether `graph` has an interval `t`-coloring.
pub fn find_interval_coloring(
    graph: &Arc<MeshGraph>,
    t: Color,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    if t == 0 || t > MAX_PALETTE {
        return Err(SearchError::BadPalette(t));
    }
    if graph.edge_count() > budget.max_edges {
        return Ok(SearchOutcome::BudgetExceeded(BudgetLimit::Edges {
            edges: graph.edge_count(),
            max_edges: budget.max_edges,
        }));
    }
    if !graph.is_connected() {
        return Err(SearchError::Disconnected);
    }
    // a vertex needs d(v) distinct colors, and every color needs an edge
    if (t as usize) < graph.max_degree() || t as usize > graph.edge_count() {
        return Ok(SearchOutcome::Absent);
    }
    let mut s = Searcher::new(graph, t, *budget);
    match s.descend(0) {
        Step::Done => {
            let coloring = EdgeColoring::new(Arc::clone(graph), s.colors, t)
                .expect("search assigns every edge a color in 1..=t");
            Ok(SearchOutcome::Found(coloring))
        }
        Step::Exhausted => Ok(SearchOutcome::Absent),
        Step::Stop(limit) => Ok(SearchOutcome::BudgetExceeded(limit)),
    }
}

fn exists(graph: &Arc<MeshGraph>, t: Color, budget: &SearchBudget) -> Result<bool, SearchError> {
    match find_interval_coloring(graph, t, budget)? {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::Absent => Ok(false),
        SearchOutcome::BudgetExceeded(limit) => Err(SearchError::BudgetExceeded(limit)),
    }
}

/// Least `t` with an interval `t`-coloring, scanning upward from `Δ`.
pub fn exact_min_colors(graph: &Arc<MeshGraph>, budget: &SearchBudget) -> Result<Color, SearchError> {
    let upper = diameter_upper_bound(graph)?;
    let delta = graph.max_degree().max(1) as Color;
    for t in delta..=upper {
        if exists(graph, t, budget)? {
            return Ok(t);
        }
    }
    Err(SearchError::NotColorable(upper))
}

/// Greatest `t` with an interval `t`-coloring, scanning downward from the
/// diameter bound `d(G)(Δ(G) − 1) + 1`.
pub fn exact_max_colors(graph: &Arc<MeshGraph>, budget: &SearchBudget) -> Result<Color, SearchError> {
    let upper = diameter_upper_bound(graph)?;
    let delta = graph.max_degree().max(1) as Color;
    for t in (delta..=upper).rev() {
        if exists(graph, t, budget)? {
            return Ok(t);
        }
    }
    Err(SearchError::NotColorable(upper))
}

/// Every `t` in `Δ..=d(G)(Δ(G) − 1) + 1` admitting an interval `t`-coloring.
pub fn feasible_palettes(graph: &Arc<MeshGraph>, budget: &SearchBudget) -> Result<Vec<Color>, SearchError> {
    let upper = diameter_upper_bound(graph)?;
    let delta = graph.max_degree().max(1) as Color;
    let mut out = Vec::new();
    for t in delta..=upper {
        if exists(graph, t, budget)? {
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_interval;
    use crate::graph::{build_cylinder, build_even_cycle, build_torus};

    fn arc(g: MeshGraph) -> Arc<MeshGraph> {
        Arc::new(g)
    }

    #[test]
    fn c4_three_colors() {
        let g = arc(build_even_cycle(4).unwrap());
        let SearchOutcome::Found(c) = find_interval_coloring(&g, 3, &SearchBudget::default()).unwrap() else {
            panic!("C_4 has an interval 3-coloring")
        };
        assert!(verify_interval(&c).interval);
        // around the cycle in canonical order (1,2),(1,4),(2,3),(3,4)
        let mut around = [c.colors()[0], c.colors()[2], c.colors()[3], c.colors()[1]];
        around.sort();
        assert_eq!(around, [1, 2, 2, 3]);
    }

    #[test]
    fn c4_four_colors_absent() {
        let g = arc(build_even_cycle(4).unwrap());
        assert_eq!(find_interval_coloring(&g, 4, &SearchBudget::default()).unwrap(), SearchOutcome::Absent);
    }

    #[test]
    fn c6_four_colors() {
        let g = arc(build_even_cycle(6).unwrap());
        let out = find_interval_coloring(&g, 4, &SearchBudget::default()).unwrap();
        let SearchOutcome::Found(c) = out else { panic!("expected a coloring") };
        assert!(verify_interval(&c).interval);
    }

    #[test]
    fn palette_below_degree_is_absent() {
        let g = arc(build_cylinder(2, 2).unwrap());
        assert_eq!(find_interval_coloring(&g, 2, &SearchBudget::default()).unwrap(), SearchOutcome::Absent);
    }

    #[test]
    fn edge_budget_refuses() {
        let g = arc(build_torus(2, 2).unwrap());
        let out = find_interval_coloring(&g, 8, &SearchBudget::default()).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExceeded(BudgetLimit::Edges { edges: 32, max_edges: 16 }));
        assert!(matches!(exact_max_colors(&g, &SearchBudget::default()), Err(SearchError::BudgetExceeded(_))));
    }

    #[test]
    fn node_budget_is_not_absence() {
        let g = arc(build_cylinder(2, 2).unwrap());
        let tiny = SearchBudget { max_edges: 16, max_nodes: 3, time_cap: None };
        let out = find_interval_coloring(&g, 7, &tiny).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExceeded(BudgetLimit::Nodes(3)));
    }

    #[test]
    fn exact_values_on_cycles() {
        let b = SearchBudget::default();
        let c4 = arc(build_even_cycle(4).unwrap());
        assert_eq!(exact_min_colors(&c4, &b).unwrap(), 2);
        assert_eq!(exact_max_colors(&c4, &b).unwrap(), 3);
        let c6 = arc(build_even_cycle(6).unwrap());
        assert_eq!(exact_max_colors(&c6, &b).unwrap(), 4);
    }

    #[test]
    fn deterministic() {
        let g = arc(build_cylinder(2, 2).unwrap());
        let b = SearchBudget::default();
        let first = find_interval_coloring(&g, 6, &b).unwrap();
        let second = find_interval_coloring(&g, 6, &b).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn bad_palette() {
        let g = arc(build_even_cycle(4).unwrap());
        assert_eq!(find_interval_coloring(&g, 0, &SearchBudget::default()), Err(SearchError::BadPalette(0)));
    }
}
