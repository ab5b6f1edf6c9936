//! Edge colorings and the interval-coloring verifier.
//!
//! An interval edge `t`-coloring is a proper edge coloring with colors
//! `1..=t`, every color used at least once, where the colors at every vertex `v`
//! form `d(v)` consecutive integers.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, GraphError, GridVertex, MeshGraph};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} colors for a graph with {expected} edges")]
    NotTotal { expected: usize, got: usize },
    #[error("edge {0} has no color")]
    MissingEdge(Edge),
    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("edge {edge} has color {color}, outside 1..={t}")]
    OutOfPalette { edge: Edge, color: Color, t: Color },
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("coloring uses no colors")]
    NoColors,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A total assignment of colors to the edges of a graph, with a declared
/// palette size `t`.
///
/// Colors are indexed by edge id (the position of the edge in
/// [`MeshGraph::edges`]). [`EdgeColoring::new`] enforces `1 <= color <= t`;
/// [`EdgeColoring::unchecked`] skips that check so damaged colorings read from
/// disk can still be diagnosed by [`verify_interval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    graph: Arc<MeshGraph>,
    colors: Vec<Color>,
    t: Color,
}

impl EdgeColoring {
    pub fn new(graph: Arc<MeshGraph>, colors: Vec<Color>, t: Color) -> Result<Self, ColoringError> {
        let c = Self::unchecked(graph, colors, t)?;
        if let Some((id, &color)) = c.colors.iter().enumerate().find(|(_, &x)| x == 0 || x > t) {
            return Err(ColoringError::OutOfPalette { edge: c.graph.edges()[id], color, t });
        }
        Ok(c)
    }

    /// Like [`EdgeColoring::new`] but accepts colors outside `1..=t`.
    pub fn unchecked(graph: Arc<MeshGraph>, colors: Vec<Color>, t: Color) -> Result<Self, ColoringError> {
        if t == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        if colors.len() != graph.edge_count() {
            return Err(ColoringError::NotTotal { expected: graph.edge_count(), got: colors.len() });
        }
        Ok(EdgeColoring { graph, colors, t })
    }

    /// Build from `(edge, color)` pairs; every edge must appear exactly once.
    pub fn from_pairs(
        graph: Arc<MeshGraph>,
        pairs: impl IntoIterator<Item = (Edge, Color)>,
        t: Color,
    ) -> Result<Self, ColoringError> {
        let mut colors: Vec<Option<Color>> = vec![None; graph.edge_count()];
        for (edge, color) in pairs {
            let id = graph.edge_id(&edge).ok_or(ColoringError::UnknownEdge(edge))?;
            colors[id] = Some(color);
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(id, c)| c.ok_or(ColoringError::MissingEdge(graph.edges()[id])))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(graph, colors, t)
    }

    pub fn graph(&self) -> &MeshGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<MeshGraph> {
        &self.graph
    }

    pub fn palette_size(&self) -> Color {
        self.t
    }

    /// Colors indexed by edge id.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_of(&self, e: &Edge) -> Option<Color> {
        self.graph.edge_id(e).map(|id| self.colors[id])
    }

    /// `(edge, color)` in canonical edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, Color)> + '_ {
        self.graph.edges().iter().copied().zip(self.colors.iter().copied())
    }

    pub fn is_within_palette(&self) -> bool {
        self.colors.iter().all(|&c| (1..=self.t).contains(&c))
    }

    /// Copy with the color of edge `id` replaced; the palette is not re-checked.
    pub fn with_color(&self, id: usize, color: Color) -> EdgeColoring {
        let mut colors = self.colors.clone();
        colors[id] = color;
        EdgeColoring { graph: Arc::clone(&self.graph), colors, t: self.t }
    }

    /// The mirrored coloring `c ↦ t + 1 − c`.
    pub fn reversed(&self) -> Result<EdgeColoring, ColoringError> {
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                (self.t + 1).checked_sub(c).filter(|&r| r >= 1).ok_or_else(|| {
                    ColoringError::OutOfPalette { edge: self.graph.edges()[0], color: c, t: self.t }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        EdgeColoring::new(Arc::clone(&self.graph), colors, self.t)
    }

    /// Shift colors so the smallest used color is 1 and set `t` to the span of
    /// used colors.
    pub fn normalized(&self) -> Result<EdgeColoring, ColoringError> {
        let lo = *self.colors.iter().min().ok_or(ColoringError::NoColors)?;
        let hi = *self.colors.iter().max().ok_or(ColoringError::NoColors)?;
        if lo == 0 {
            return Err(ColoringError::OutOfPalette { edge: self.graph.edges()[0], color: 0, t: self.t });
        }
        let colors = self.colors.iter().map(|&c| c - lo + 1).collect();
        EdgeColoring::new(Arc::clone(&self.graph), colors, hi - lo + 1)
    }

    /// Pull this coloring back along a vertex relabeling: edge `(a, b)` of
    /// `target` receives the color of `(map(a), map(b))` in `self`.
    pub fn pull_back(
        &self,
        target: Arc<MeshGraph>,
        map: impl Fn(GridVertex) -> GridVertex,
    ) -> Result<EdgeColoring, ColoringError> {
        let colors = target
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                let image = Edge::new(map(a), map(b))?;
                self.color_of(&image).ok_or(ColoringError::UnknownEdge(image))
            })
            .collect::<Result<Vec<_>, _>>()?;
        EdgeColoring::unchecked(target, colors, self.t)
    }
}

/// The set `S(v)` of colors on edges incident to `v`.
pub fn spectrum(c: &EdgeColoring, v: GridVertex) -> Result<BTreeSet<Color>, GraphError> {
    let ids = c.graph().incident_edges(v)?;
    Ok(ids.iter().map(|&e| c.colors[e]).collect())
}

/// True iff no two edges sharing a vertex have the same color.
pub fn is_proper(c: &EdgeColoring) -> bool {
    let g = c.graph();
    (0..g.vertex_count()).all(|vid| {
        let ids = g.incident_by_id(vid);
        let distinct: BTreeSet<Color> = ids.iter().map(|&e| c.colors[e]).collect();
        distinct.len() == ids.len()
    })
}

/// True iff the set of used colors is exactly `{1, …, t}`.
pub fn is_surjective(c: &EdgeColoring) -> bool {
    let used: BTreeSet<Color> = c.colors.iter().copied().collect();
    used.len() == c.t as usize && used.iter().copied().eq(1..=c.t)
}

/// Diagnosis of one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSpectrum {
    pub vertex: GridVertex,
    pub degree: usize,
    pub colors: Vec<Color>,
    pub min: Option<Color>,
    pub max: Option<Color>,
    /// No two incident edges share a color.
    pub proper: bool,
    /// Colors lie in `1..=t`.
    pub within_palette: bool,
    /// Colors are exactly `min, min+1, …, min+degree−1`, inside the palette.
    pub is_interval: bool,
}

impl VertexSpectrum {
    pub fn is_violation(&self) -> bool {
        !(self.proper && self.is_interval)
    }
}

/// Full per-vertex diagnosis of a coloring. Produced for any coloring, valid
/// or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub palette_size: Color,
    pub proper: bool,
    pub surjective: bool,
    pub interval: bool,
    /// Colors of `1..=t` that no edge uses.
    pub missing_colors: Vec<Color>,
    /// Used colors outside `1..=t`.
    pub stray_colors: Vec<Color>,
    pub vertices: Vec<VertexSpectrum>,
}

impl SpectrumReport {
    pub fn violations(&self) -> impl Iterator<Item = &VertexSpectrum> {
        self.vertices.iter().filter(|s| s.is_violation())
    }

    pub fn first_violation(&self) -> Option<&VertexSpectrum> {
        self.violations().next()
    }

    pub fn spectrum_of(&self, v: GridVertex) -> Option<&VertexSpectrum> {
        self.vertices.iter().find(|s| s.vertex == v)
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "t = {}  proper = {}  surjective = {}  interval = {}",
            self.palette_size, self.proper, self.surjective, self.interval
        )?;
        if !self.missing_colors.is_empty() {
            writeln!(f, "unused colors: {:?}", self.missing_colors)?;
        }
        if !self.stray_colors.is_empty() {
            writeln!(f, "colors outside 1..={}: {:?}", self.palette_size, self.stray_colors)?;
        }
        writeln!(f, "{:<6} {:<6} {:<4} {:<24} status", "layer", "ring", "deg", "spectrum")?;
        for s in &self.vertices {
            let status = match (s.proper, s.within_palette, s.is_interval) {
                (false, _, _) => "conflict",
                (true, false, _) => "off-palette",
                (true, true, false) => "gap",
                (true, true, true) => "ok",
            };
            let colors = s.colors.iter().map(Color::to_string).collect::<Vec<_>>().join(",");
            writeln!(f, "{:<6} {:<6} {:<4} {:<24} {}", s.vertex.layer, s.vertex.ring, s.degree, colors, status)?;
        }
        Ok(())
    }
}

/// Check the interval-coloring definition and report every vertex.
pub fn verify_interval(c: &EdgeColoring) -> SpectrumReport {
    let g = c.graph();
    let t = c.t;
    let vertices: Vec<VertexSpectrum> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(vid, &vertex)| {
            let ids = g.incident_by_id(vid);
            let mut set: Vec<Color> = ids.iter().map(|&e| c.colors[e]).collect();
            set.sort_unstable();
            set.dedup();
            let degree = ids.len();
            let proper = set.len() == degree;
            let min = set.first().copied();
            let max = set.last().copied();
            let within_palette = set.iter().all(|&x| (1..=t).contains(&x));
            let is_interval = proper
                && within_palette
                && match (min, max) {
                    (Some(lo), Some(hi)) => (hi - lo) as usize + 1 == degree,
                    _ => degree == 0,
                };
            VertexSpectrum {
                vertex,
                degree,
                colors: set,
                min,
                max,
                proper,
                within_palette,
                is_interval,
            }
        })
        .collect();

    let mut used = vec![false; t as usize + 1];
    let mut stray = BTreeSet::new();
    for &x in &c.colors {
        match used.get_mut(x as usize) {
            Some(slot) if x >= 1 => *slot = true,
            _ => {
                stray.insert(x);
            }
        }
    }
    let missing_colors: Vec<Color> = (1..=t).filter(|&x| !used[x as usize]).collect();
    let stray_colors: Vec<Color> = stray.into_iter().collect();
    let proper = vertices.iter().all(|s| s.proper);
    let surjective = missing_colors.is_empty() && stray_colors.is_empty();
    let interval = proper && surjective && vertices.iter().all(|s| s.is_interval);
    SpectrumReport { palette_size: t, proper, surjective, interval, missing_colors, stray_colors, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_even_cycle, build_path};

    fn c4(colors: [Color; 4], t: Color) -> EdgeColoring {
        // edges of C_4 in canonical order: (1,2), (1,4), (2,3), (3,4)
        let g = Arc::new(build_even_cycle(4).unwrap());
        let v = |j| GridVertex::new(1, j);
        let around = [(1, 2), (2, 3), (3, 4), (4, 1)];
        let pairs = around.iter().zip(colors).map(|(&(a, b), c)| (Edge::new(v(a), v(b)).unwrap(), c));
        EdgeColoring::from_pairs(g, pairs, t).unwrap()
    }

    #[test]
    fn alternating_cycle() {
        let c = c4([1, 2, 1, 2], 2);
        for j in 1..=4 {
            assert_eq!(spectrum(&c, GridVertex::new(1, j)).unwrap(), BTreeSet::from([1, 2]));
        }
        assert!(verify_interval(&c).interval);
    }

    #[test]
    fn monochrome_is_improper() {
        let c = c4([1, 1, 1, 1], 1);
        assert!(!is_proper(&c));
        let r = verify_interval(&c);
        assert!(!r.proper && !r.interval);
        assert_eq!(r.violations().count(), 4);
    }

    #[test]
    fn unused_color_breaks_surjectivity() {
        let c = c4([1, 2, 1, 2], 3);
        assert!(is_proper(&c));
        assert!(!is_surjective(&c));
        let r = verify_interval(&c);
        assert_eq!(r.missing_colors, vec![3]);
        assert!(!r.interval);
    }

    #[test]
    fn one_two_three_two() {
        // x1: (1,2)=1, (4,1)=2; x2: 1, 2; x3: 2, 3; x4: 3, 2
        let c = c4([1, 2, 3, 2], 3);
        let r = verify_interval(&c);
        assert!(r.proper && r.surjective && r.interval);
        let spectra: Vec<Vec<Color>> = r.vertices.iter().map(|s| s.colors.clone()).collect();
        assert_eq!(spectra, vec![vec![1, 2], vec![1, 2], vec![2, 3], vec![2, 3]]);
    }

    #[test]
    fn gap_spectrum() {
        let c = c4([1, 3, 1, 3], 3);
        let r = verify_interval(&c);
        assert!(r.proper);
        assert!(!r.interval);
        assert_eq!(r.first_violation().unwrap().colors, vec![1, 3]);
    }

    #[test]
    fn shifted_window_is_rejected_until_normalized() {
        let g = Arc::new(build_even_cycle(4).unwrap());
        let shifted = EdgeColoring::new(g, vec![2, 3, 3, 2], 3).unwrap();
        let r = verify_interval(&shifted);
        assert!(r.proper && !r.surjective && !r.interval);
        let norm = shifted.normalized().unwrap();
        assert_eq!(norm.palette_size(), 2);
        assert!(verify_interval(&norm).interval);
    }

    #[test]
    fn palette_checks() {
        let g = Arc::new(build_even_cycle(4).unwrap());
        assert!(matches!(
            EdgeColoring::new(Arc::clone(&g), vec![1, 2, 0, 1], 2),
            Err(ColoringError::OutOfPalette { .. })
        ));
        assert!(matches!(
            EdgeColoring::new(Arc::clone(&g), vec![1, 2, 1], 2),
            Err(ColoringError::NotTotal { .. })
        ));
        let stray = EdgeColoring::unchecked(g, vec![1, 2, 3, 1], 2).unwrap();
        let r = verify_interval(&stray);
        assert_eq!(r.stray_colors, vec![3]);
        assert!(!r.interval);
        assert!(r.violations().any(|s| !s.within_palette));
    }

    #[test]
    fn isolated_vertex_is_trivially_interval() {
        let g = Arc::new(build_path(1).unwrap());
        let c = EdgeColoring::unchecked(g, vec![], 1).unwrap();
        let r = verify_interval(&c);
        assert!(r.vertices[0].is_interval);
        assert!(!r.surjective);
    }

    #[test]
    fn reversal_preserves_interval() {
        let c = c4([1, 2, 3, 2], 3);
        let r = c.reversed().unwrap();
        assert_eq!(r.colors(), &[3, 2, 2, 1]);
        assert!(verify_interval(&r).interval);
    }

    #[test]
    fn unknown_vertex() {
        let c = c4([1, 2, 1, 2], 2);
        assert!(spectrum(&c, GridVertex::new(2, 1)).is_err());
    }
}
