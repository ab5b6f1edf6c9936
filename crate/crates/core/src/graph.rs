//! Grid-addressed graphs: paths, even cycles, bipartite cylinders `P_m × C_2n`
//! and bipartite tori `C_2m × C_2n`.
//!
//! Every graph in this module has a full rectangular vertex set
//! `{1..layers} × {1..ring_len}`; a vertex `x_j^(i)` is written
//! `GridVertex { layer: i, ring: j }`. Labels are 1-based throughout the
//! public interface. One-dimensional graphs (paths and cycles) live on a single
//! layer.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {0} does not belong to the graph")]
    InvalidVertex(GridVertex),
    #[error("loop at vertex {0}")]
    Loop(GridVertex),
    #[error("edge {0} listed more than once")]
    DuplicateEdge(Edge),
    #[error("graph is disconnected; diameter is not finite")]
    Disconnected,
    #[error("edge list does not match the {0} family with the given parameters")]
    FamilyMismatch(String),
}

/// A vertex `x_ring^(layer)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridVertex {
    pub layer: u32,
    pub ring: u32,
}

impl GridVertex {
    pub const fn new(layer: u32, ring: u32) -> Self {
        GridVertex { layer, ring }
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}^({})", self.ring, self.layer)
    }
}

/// An undirected edge with endpoints stored in lexicographic `(layer, ring)` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: GridVertex,
    v: GridVertex,
}

impl Edge {
    pub fn new(a: GridVertex, b: GridVertex) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(a)),
        }
    }

    pub fn endpoints(&self) -> (GridVertex, GridVertex) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: GridVertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: GridVertex) -> Option<GridVertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    /// Swap the roles of layer and ring in both endpoints.
    pub fn transposed(&self) -> Edge {
        let t = |x: GridVertex| GridVertex::new(x.ring, x.layer);
        Edge::new(t(self.u), t(self.v)).expect("transposition preserves distinctness")
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `P_m`
    Path { m: u32 },
    /// `C_2n`
    EvenCycle { n: u32 },
    /// `C(m, 2n) = P_m × C_2n`
    Cylinder { m: u32, n: u32 },
    /// `T(2m, 2n) = C_2m × C_2n`
    Torus { m: u32, n: u32 },
    /// Cartesian product of two single-layer graphs, with no closed-form family.
    Product,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::EvenCycle { .. } => "cycle",
            Family::Cylinder { .. } => "cylinder",
            Family::Torus { .. } => "torus",
            Family::Product => "product",
        }
    }

    /// `(m, n)` as they appear in the family notation; absent entries are `None`.
    pub fn params(&self) -> (Option<u32>, Option<u32>) {
        match *self {
            Family::Path { m } => (Some(m), None),
            Family::EvenCycle { n } => (None, Some(n)),
            Family::Cylinder { m, n } | Family::Torus { m, n } => (Some(m), Some(n)),
            Family::Product => (None, None),
        }
    }

    /// `(layers, ring_len)` of the canonical graph, or `None` for products and
    /// parameters too large to index.
    pub fn grid_shape(&self) -> Option<(u32, u32)> {
        match *self {
            Family::Path { m } => Some((1, m)),
            Family::EvenCycle { n } => Some((1, n.checked_mul(2)?)),
            Family::Cylinder { m, n } => Some((m, n.checked_mul(2)?)),
            Family::Torus { m, n } => Some((m.checked_mul(2)?, n.checked_mul(2)?)),
            Family::Product => None,
        }
    }

    pub fn from_parts(name: &str, m: Option<u32>, n: Option<u32>) -> Result<Self, GraphError> {
        let need = |x: Option<u32>, what: &str| {
            x.ok_or_else(|| GraphError::InvalidParameter(format!("family {name} requires {what}")))
        };
        match name {
            "path" => Ok(Family::Path { m: need(m, "m")? }),
            "cycle" => Ok(Family::EvenCycle { n: need(n, "n")? }),
            "cylinder" => Ok(Family::Cylinder { m: need(m, "m")?, n: need(n, "n")? }),
            "torus" => Ok(Family::Torus { m: need(m, "m")?, n: need(n, "n")? }),
            "product" => Ok(Family::Product),
            other => Err(GraphError::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path { m } => write!(f, "P_{m}"),
            Family::EvenCycle { n } => write!(f, "C_{}", 2 * n),
            Family::Cylinder { m, n } => write!(f, "C({m},{})", 2 * n),
            Family::Torus { m, n } => write!(f, "T({},{})", 2 * m, 2 * n),
            Family::Product => write!(f, "product"),
        }
    }
}

/// A finite simple graph on the full grid `{1..layers} × {1..ring_len}`.
///
/// Immutable after construction. Edges are kept sorted, so an edge id (its
/// position in [`MeshGraph::edges`]) is stable and reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshGraph {
    family: Family,
    layers: u32,
    ring_len: u32,
    vertices: Vec<GridVertex>,
    edges: Vec<Edge>,
    // edge ids incident to each vertex, indexed by vertex id
    incidence: Vec<Vec<usize>>,
}

impl MeshGraph {
    /// Build a graph from its grid shape and an edge list, checking simplicity.
    pub fn from_edges(
        family: Family,
        layers: u32,
        ring_len: u32,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        if layers == 0 || ring_len == 0 {
            return Err(GraphError::InvalidParameter(format!(
                "grid shape {layers}x{ring_len} is empty"
            )));
        }
        let vertices: Vec<GridVertex> = (1..=layers)
            .flat_map(|i| (1..=ring_len).map(move |j| GridVertex::new(i, j)))
            .collect();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let in_range = |x: GridVertex| {
            (1..=layers).contains(&x.layer) && (1..=ring_len).contains(&x.ring)
        };
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (id, e) in edges.iter().enumerate() {
            let (a, b) = e.endpoints();
            for x in [a, b] {
                if !in_range(x) {
                    return Err(GraphError::InvalidVertex(x));
                }
                incidence[((x.layer - 1) * ring_len + (x.ring - 1)) as usize].push(id);
            }
        }
        Ok(MeshGraph { family, layers, ring_len, vertices, edges, incidence })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    pub fn ring_len(&self) -> u32 {
        self.ring_len
    }

    /// Vertices in lexicographic `(layer, ring)` order.
    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: GridVertex) -> bool {
        (1..=self.layers).contains(&v.layer) && (1..=self.ring_len).contains(&v.ring)
    }

    /// Dense id of `v` in `0..vertex_count()`.
    pub fn vertex_id(&self, v: GridVertex) -> Result<usize, GraphError> {
        if self.contains(v) {
            Ok(((v.layer - 1) * self.ring_len + (v.ring - 1)) as usize)
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Position of `e` in [`MeshGraph::edges`].
    pub fn edge_id(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    /// Ids of the edges incident to `v`.
    pub fn incident_edges(&self, v: GridVertex) -> Result<&[usize], GraphError> {
        Ok(&self.incidence[self.vertex_id(v)?])
    }

    pub(crate) fn incident_by_id(&self, vid: usize) -> &[usize] {
        &self.incidence[vid]
    }

    pub fn neighbors(&self, v: GridVertex) -> Result<Vec<GridVertex>, GraphError> {
        let ids = self.incident_edges(v)?;
        Ok(ids.iter().filter_map(|&e| self.edges[e].other(v)).collect())
    }

    pub fn degree(&self, v: GridVertex) -> Result<usize, GraphError> {
        Ok(self.incident_edges(v)?.len())
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Breadth-first distances from vertex id `src`; unreachable vertices get `None`.
    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            let xv = self.vertices[x];
            for &e in &self.incidence[x] {
                let y = self.vertex_id(self.edges[e].other(xv).unwrap()).unwrap();
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    /// Largest shortest-path distance over all vertex pairs, by BFS from every vertex.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for src in 0..self.vertex_count() {
            for d in self.bfs(src) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// A proper 2-coloring of the vertices (indexed by vertex id), if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for root in 0..self.vertex_count() {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                let xv = self.vertices[x];
                for &e in &self.incidence[x] {
                    let y = self.vertex_id(self.edges[e].other(xv).unwrap()).unwrap();
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

fn param(ok: bool, msg: impl FnOnce() -> String) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(msg()))
    }
}

fn v(layer: u32, ring: u32) -> GridVertex {
    GridVertex::new(layer, ring)
}

fn e(a: GridVertex, b: GridVertex) -> Edge {
    Edge::new(a, b).expect("builders never produce loops")
}

/// The path `P_m` on vertices `x_1^(1) … x_m^(1)`.
pub fn build_path(m: u32) -> Result<MeshGraph, GraphError> {
    param(m >= 1, || format!("path needs m >= 1, got {m}"))?;
    let edges = (1..m).map(|j| e(v(1, j), v(1, j + 1)));
    MeshGraph::from_edges(Family::Path { m }, 1, m, edges)
}

/// The cycle on `k` vertices; `k` must be even and at least 4.
pub fn build_even_cycle(k: u32) -> Result<MeshGraph, GraphError> {
    param(k >= 4 && k.is_multiple_of(2), || format!("cycle length must be even and >= 4, got {k}"))?;
    let edges = (1..k).map(|j| e(v(1, j), v(1, j + 1))).chain([e(v(1, 1), v(1, k))]);
    MeshGraph::from_edges(Family::EvenCycle { n: k / 2 }, 1, k, edges)
}

/// Cartesian product of two single-layer graphs: `(u1, u2)` becomes
/// `x_{u2}^(u1)`, so the first factor indexes layers and the second indexes ring
/// positions.
pub fn cartesian_product(g1: &MeshGraph, g2: &MeshGraph) -> Result<MeshGraph, GraphError> {
    for g in [g1, g2] {
        param(g.layers == 1, || {
            format!("product factors must be single-layer graphs, {} has {} layers", g.family, g.layers)
        })?;
    }
    let (rows, cols) = (g1.ring_len, g2.ring_len);
    let mut edges = Vec::with_capacity(rows as usize * g2.edge_count() + cols as usize * g1.edge_count());
    for i in 1..=rows {
        for f in g2.edges() {
            let (a, b) = f.endpoints();
            edges.push(e(v(i, a.ring), v(i, b.ring)));
        }
    }
    for j in 1..=cols {
        for f in g1.edges() {
            let (a, b) = f.endpoints();
            edges.push(e(v(a.ring, j), v(b.ring, j)));
        }
    }
    MeshGraph::from_edges(Family::Product, rows, cols, edges)
}

/// Ring edges of layer `i` on a ring of length `ring_len`: `(x_j, x_{j+1})` and
/// the closing edge `(x_1, x_ring_len)`.
fn ring_edges(i: u32, ring_len: u32) -> impl Iterator<Item = Edge> {
    (1..ring_len)
        .map(move |j| e(v(i, j), v(i, j + 1)))
        .chain(std::iter::once(e(v(i, 1), v(i, ring_len))))
}

/// The bipartite cylinder `C(m, 2n)`, from its explicit ring and rung edge lists.
pub fn build_cylinder(m: u32, n: u32) -> Result<MeshGraph, GraphError> {
    param(m >= 1, || format!("cylinder needs m >= 1, got {m}"))?;
    param(n >= 2, || format!("cylinder needs n >= 2, got {n}"))?;
    let ring = 2 * n;
    let rings = (1..=m).flat_map(|i| ring_edges(i, ring));
    let rungs = (1..=ring).flat_map(|j| (1..m).map(move |i| e(v(i, j), v(i + 1, j))));
    MeshGraph::from_edges(Family::Cylinder { m, n }, m, ring, rings.chain(rungs))
}

/// The bipartite torus `T(2m, 2n)`, from its explicit ring and rung edge lists.
pub fn build_torus(m: u32, n: u32) -> Result<MeshGraph, GraphError> {
    param(m >= 2, || format!("torus needs m >= 2, got {m}"))?;
    param(n >= 2, || format!("torus needs n >= 2, got {n}"))?;
    let (layers, ring) = (2 * m, 2 * n);
    let rings = (1..=layers).flat_map(|i| ring_edges(i, ring));
    let rungs = (1..=ring).flat_map(|j| {
        (1..layers)
            .map(move |i| e(v(i, j), v(i + 1, j)))
            .chain(std::iter::once(e(v(1, j), v(layers, j))))
    });
    MeshGraph::from_edges(Family::Torus { m, n }, layers, ring, rings.chain(rungs))
}

/// Rebuild the canonical graph for a named family.
pub fn build_family(family: Family) -> Result<MeshGraph, GraphError> {
    match family {
        Family::Path { m } => build_path(m),
        Family::EvenCycle { n } => build_even_cycle(2 * n),
        Family::Cylinder { m, n } => build_cylinder(m, n),
        Family::Torus { m, n } => build_torus(m, n),
        Family::Product => Err(GraphError::InvalidParameter(
            "product graphs have no canonical builder".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_sizes() {
        for (m, edges) in [(1, 0), (2, 1), (5, 4)] {
            let g = build_path(m).unwrap();
            assert_eq!(g.vertex_count(), m as usize);
            assert_eq!(g.edge_count(), edges);
        }
        assert!(matches!(build_path(0), Err(GraphError::InvalidParameter(_))));
    }

    #[test]
    fn even_cycles() {
        let c4 = build_even_cycle(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!(c4.vertices().iter().all(|&x| c4.degree(x).unwrap() == 2));

        let c6 = build_even_cycle(6).unwrap();
        let sides = c6.bipartition().unwrap();
        assert_eq!(sides.iter().filter(|&&s| s).count(), 3);
        assert_eq!(sides.iter().filter(|&&s| !s).count(), 3);

        assert!(build_even_cycle(5).is_err());
        assert!(build_even_cycle(2).is_err());
    }

    #[test]
    fn product_sizes() {
        let p1 = build_path(1).unwrap();
        let p2 = build_path(2).unwrap();
        let c4 = build_even_cycle(4).unwrap();

        let g = cartesian_product(&p1, &c4).unwrap();
        assert_eq!(g.edges(), c4.edges());

        let g = cartesian_product(&p2, &c4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));

        let g = cartesian_product(&c4, &c4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 32));
        assert!(g.is_regular());
        assert_eq!(g.max_degree(), 4);

        let cyl = build_cylinder(2, 2).unwrap();
        assert!(cartesian_product(&cyl, &c4).is_err());
    }

    #[test]
    fn cylinder_degrees() {
        let g = build_cylinder(1, 2).unwrap();
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.edges(), build_even_cycle(4).unwrap().edges());

        let g = build_cylinder(2, 2).unwrap();
        assert_eq!((g.min_degree(), g.max_degree()), (3, 3));
        assert!(g.is_regular());

        let g = build_cylinder(3, 2).unwrap();
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.degree(v(2, 1)).unwrap(), 4);
        assert!(!g.is_regular());

        assert!(build_cylinder(0, 2).is_err());
        assert!(build_cylinder(2, 1).is_err());
    }

    #[test]
    fn torus_counts() {
        for (m, n, verts, edges) in [(2, 2, 16, 32), (2, 3, 24, 48)] {
            let g = build_torus(m, n).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (verts, edges));
            assert!(g.vertices().iter().all(|&x| g.degree(x).unwrap() == 4));
        }
        assert!(build_torus(1, 3).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(build_even_cycle(4).unwrap().diameter().unwrap(), 2);
        // oracle: BFS by hand over C_4 x C_4 gives 2 + 2
        assert_eq!(build_torus(2, 2).unwrap().diameter().unwrap(), 4);
        assert_eq!(build_path(4).unwrap().diameter().unwrap(), 3);
        let disconnected = MeshGraph::from_edges(Family::Product, 1, 3, [e(v(1, 1), v(1, 2))]).unwrap();
        assert_eq!(disconnected.diameter(), Err(GraphError::Disconnected));
    }

    #[test]
    fn simplicity_checks() {
        assert!(matches!(Edge::new(v(1, 1), v(1, 1)), Err(GraphError::Loop(_))));
        let dup = [e(v(1, 1), v(1, 2)), e(v(1, 2), v(1, 1))];
        assert!(matches!(
            MeshGraph::from_edges(Family::Product, 1, 2, dup),
            Err(GraphError::DuplicateEdge(_))
        ));
        let out = [e(v(1, 1), v(1, 3))];
        assert!(matches!(
            MeshGraph::from_edges(Family::Product, 1, 2, out),
            Err(GraphError::InvalidVertex(_))
        ));
    }

    #[test]
    fn edge_canonical_order() {
        let a = Edge::new(v(2, 1), v(1, 4)).unwrap();
        assert_eq!(a.endpoints(), (v(1, 4), v(2, 1)));
        assert_eq!(a, Edge::new(v(1, 4), v(2, 1)).unwrap());
        assert_eq!(a.transposed().endpoints(), (v(1, 2), v(4, 1)));
    }
}
