//! Bounds on the number of colors in interval edge colorings of cylinders and
//! tori, tabulated per instance.

use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::Color;
use crate::constructions::{ConstructionError, MeshFamily};
use crate::graph::{GraphError, MeshGraph};
use crate::search::{exact_max_colors, exact_min_colors, SearchBudget, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("diameter bound needs a bipartite graph")]
    NotBipartite,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("empty range {0}")]
    EmptyRange(String),
}

/// `d(G)(Δ(G) − 1) + 1`, an upper bound on the palette of any interval
/// coloring of a bipartite graph.
pub fn diameter_upper_bound(g: &MeshGraph) -> Result<Color, BoundsError> {
    if !g.is_bipartite() {
        return Err(BoundsError::NotBipartite);
    }
    let d = g.diameter()? as Color;
    let delta = g.max_degree() as Color;
    Ok(d * delta.saturating_sub(1) + 1)
}

/// `3m + 3n − 2`: the diameter bound for a cylinder whose maximum degree is 4.
pub fn cylinder_upper_bound(m: u32, n: u32) -> Color {
    3 * m + 3 * n - 2
}

/// Palette size achieved by the explicit construction for the family. The
/// construction is built and verified before the value is returned.
pub fn lower_bound(family: MeshFamily, m: u32, n: u32) -> Result<Color, BoundsError> {
    let built = family.construct(m, n)?;
    Ok(built.claimed_t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub family: &'static str,
    pub m: u32,
    pub n: u32,
    pub delta: u32,
    pub diameter: u32,
    /// `w(G) = Δ(G)`, as known for these families.
    pub w_claimed: u32,
    #[serde(rename = "lower_W")]
    pub lower: Color,
    #[serde(rename = "upper_W")]
    pub upper: Color,
    pub w_exact: Option<Color>,
    #[serde(rename = "W_exact")]
    pub big_w_exact: Option<Color>,
}

impl BoundsRow {
    pub fn compute(family: MeshFamily, m: u32, n: u32, oracle: Option<&SearchBudget>) -> Result<Self, BoundsError> {
        let graph = Arc::new(family.build_graph(m, n)?);
        let delta = graph.max_degree() as u32;
        let (w_exact, big_w_exact) = match oracle {
            Some(budget) if graph.edge_count() <= budget.max_edges => {
                (oracle_value(exact_min_colors(&graph, budget))?, oracle_value(exact_max_colors(&graph, budget))?)
            }
            _ => (None, None),
        };
        Ok(BoundsRow {
            family: family.name(),
            m,
            n,
            delta,
            diameter: graph.diameter()? as u32,
            w_claimed: delta,
            lower: lower_bound(family, m, n)?,
            upper: diameter_upper_bound(&graph)?,
            w_exact,
            big_w_exact,
        })
    }

    /// Bounds hold: `lower <= upper`, and any oracle values sit where they should.
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper
            && self.w_exact.is_none_or(|w| w == self.w_claimed)
            && self.big_w_exact.is_none_or(|big| self.lower <= big && big <= self.upper)
    }
}

// a blown budget leaves the column empty; anything else is a real error
fn oracle_value(r: Result<Color, SearchError>) -> Result<Option<Color>, BoundsError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(SearchError::BudgetExceeded(_)) => Ok(None),
        Err(SearchError::Bounds(e)) => Err(e),
        Err(other) => Err(BoundsError::Graph(GraphError::InvalidParameter(other.to_string()))),
    }
}

/// One row per `(m, n)` in the given ranges, `m` outermost.
pub fn bounds_table(
    family: MeshFamily,
    ms: RangeInclusive<u32>,
    ns: RangeInclusive<u32>,
    oracle: Option<&SearchBudget>,
) -> Result<Vec<BoundsRow>, BoundsError> {
    for (name, r) in [("m", &ms), ("n", &ns)] {
        if r.is_empty() {
            return Err(BoundsError::EmptyRange(format!("{name} = {}..{}", r.start(), r.end())));
        }
    }
    let mut rows = Vec::new();
    for m in ms {
        for n in ns.clone() {
            rows.push(BoundsRow::compute(family, m, n, oracle)?);
        }
    }
    Ok(rows)
}

/// CSV with a header row and the `BoundsRow` columns in declaration order.
pub fn write_csv<W: Write>(rows: &[BoundsRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
