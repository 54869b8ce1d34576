//! Finite truncations of the projection complex and of the quasi-tree of
//! spaces, with BFS metrics and hyperbolicity diagnostics.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::projections::{AxiomReport, ProjectionSystem};

pub const DEFAULT_VERTEX_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    ProjectionComplex { k: i64 },
    QuasiTreeOfSpaces { k: i64, depth: u32 },
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Coset(usize),
    Point { coset: usize, point: GroupElement },
}

impl VertexLabel {
    pub fn coset(&self) -> Option<usize> {
        match self {
            VertexLabel::Coset(c) | VertexLabel::Point { coset: c, .. } => Some(*c),
        }
    }
}

/// An undirected simple graph with labelled vertices.
#[derive(Clone, Debug)]
pub struct TruncGraph {
    kind: GraphKind,
    labels: Vec<VertexLabel>,
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    points: HashMap<GroupElement, usize>,
}

impl TruncGraph {
    pub fn new(kind: GraphKind) -> Self {
        TruncGraph {
            kind,
            labels: Vec::new(),
            names: Vec::new(),
            adj: Vec::new(),
            edges: BTreeSet::new(),
            points: HashMap::new(),
        }
    }

    /// Plain graph on `n` vertices, for diagnostics on hand-made graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = TruncGraph::new(GraphKind::Plain);
        for v in 0..n {
            g.add_vertex(VertexLabel::Coset(v), v.to_string());
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, label: VertexLabel, name: String) -> usize {
        let id = self.labels.len();
        if let VertexLabel::Point { point, .. } = &label {
            self.points.insert(point.clone(), id);
        }
        self.labels.push(label);
        self.names.push(name);
        self.adj.push(Vec::new());
        id
    }

    /// Adds `{u, v}`; self-loops and duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return false;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        true
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn point_vertex(&self, p: &GroupElement) -> Option<usize> {
        self.points.get(p).copied()
    }

    pub fn coset_vertex(&self, coset: usize) -> Option<usize> {
        self.labels.iter().position(|l| *l == VertexLabel::Coset(coset))
    }

    /// BFS distances from `src`, skipping vertices flagged in `blocked`.
    fn bfs_masked(&self, src: usize, blocked: Option<&[bool]>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        if blocked.is_some_and(|b| b[src]) {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() && !blocked.is_some_and(|b| b[v]) {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn bfs(&self, src: usize) -> Vec<Option<u32>> {
        self.bfs_masked(src, None)
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        self.bfs(u)[v]
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(|d| d.is_some())
    }

    /// All-pairs distances; requires a connected graph under the vertex limit.
    pub fn all_pairs(&self, limit: usize) -> Result<Vec<Vec<u32>>> {
        if self.vertex_count() > limit {
            return Err(Error::CapacityExceeded {
                what: "all-pairs distance table",
                limit,
            });
        }
        (0..self.vertex_count())
            .map(|u| {
                self.bfs(u)
                    .into_iter()
                    .map(|d| d.ok_or(Error::Disconnected))
                    .collect()
            })
            .collect()
    }

    /// Graphviz export with vertices coloured by coset.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 10] = [
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
            "#17becf",
        ];
        let mut s = String::from("graph G {\n  node [style=filled, fontname=\"Helvetica\"];\n");
        for (v, label) in self.labels.iter().enumerate() {
            let colour = PALETTE[label.coset().unwrap_or(0) % PALETTE.len()];
            let _ = writeln!(s, "  v{v} [label=\"{}\", fillcolor=\"{colour}\"];", self.names[v]);
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  v{u} -- v{v};");
        }
        s.push_str("}\n");
        s
    }

    /// Distance table as tab-separated text, one row per unordered pair.
    pub fn distances_tsv(&self, limit: usize) -> Result<String> {
        let d = self.all_pairs(limit)?;
        let mut s = String::from("u\tv\tdistance\n");
        for (u, row) in d.iter().enumerate() {
            for (v, dist) in row.iter().enumerate().skip(u + 1) {
                let _ = writeln!(s, "{}\t{}\t{}", self.names[u], self.names[v], dist);
            }
        }
        Ok(s)
    }
}

fn require_axioms(report: &AxiomReport) -> Result<()> {
    if report.p1_violations > 0 {
        return Err(Error::AxiomsFailed(format!(
            "{} Behrstock violations above bound {}",
            report.p1_violations, report.p1_bound
        )));
    }
    Ok(())
}

/// Default edge threshold `4 * P1 + 1`, at least 1.
pub fn default_k(report: &AxiomReport) -> i64 {
    (4 * report.p1_constant + 1).max(1)
}

/// `{X, Z}` is an edge iff `d_Y(X, Z) <= k` for every other coset `Y`.
pub fn build_projection_complex(ps: &ProjectionSystem<'_>, report: &AxiomReport, k: i64) -> Result<TruncGraph> {
    require_axioms(report)?;
    let mut graph = TruncGraph::new(GraphKind::ProjectionComplex { k });
    for (i, c) in ps.cosets().iter().enumerate() {
        graph.add_vertex(VertexLabel::Coset(i), c.to_string());
    }
    for (x, z) in complex_edges(ps, k) {
        graph.add_edge(x, z);
    }
    Ok(graph)
}

fn complex_edges(ps: &ProjectionSystem<'_>, k: i64) -> Vec<(usize, usize)> {
    let n = ps.cosets().len();
    let mut out = Vec::new();
    for x in 0..n {
        for z in (x + 1)..n {
            let ok = (0..n)
                .filter(|&y| y != x && y != z)
                .all(|y| ps.distance(y, x, z).is_some_and(|d| d <= k));
            if ok {
                out.push((x, z));
            }
        }
    }
    out
}

/// Each coset contributes its points within `depth` of the representative in
/// the word metric of `T`; projection-complex edges become complete bipartite
/// joins between the two mutual projections.
pub fn build_quasi_tree_of_spaces(
    ps: &ProjectionSystem<'_>,
    report: &AxiomReport,
    k: i64,
    depth: u32,
) -> Result<TruncGraph> {
    require_axioms(report)?;
    let metric = ps.projector().metric();
    if depth > metric.radius() {
        return Err(Error::CapacityExceeded {
            what: "quasi-tree depth",
            limit: metric.radius() as usize,
        });
    }
    let local = metric.ball(depth);
    let mut graph = TruncGraph::new(GraphKind::QuasiTreeOfSpaces { k, depth });
    for (ci, c) in ps.cosets().iter().enumerate() {
        for t in &local {
            let p = c.rep().mul(t);
            let name = format!("{c}: {p}");
            graph.add_vertex(VertexLabel::Point { coset: ci, point: p }, name);
        }
    }
    for c in ps.cosets() {
        for t in &local {
            let p = c.rep().mul(t);
            let u = graph.point_vertex(&p).expect("inserted above");
            for s in metric.generators() {
                if let Some(v) = graph.point_vertex(&p.mul(s)) {
                    graph.add_edge(u, v);
                }
            }
        }
    }
    for (x, y) in complex_edges(ps, k) {
        let (Some(px), Some(py)) = (ps.projection(x, y), ps.projection(y, x)) else {
            continue;
        };
        for a in &px {
            for b in &py {
                if let (Some(u), Some(v)) = (graph.point_vertex(a), graph.point_vertex(b)) {
                    graph.add_edge(u, v);
                }
            }
        }
    }
    Ok(graph)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delta {
    /// `2 delta`, an integer for graph metrics.
    pub twice: u32,
    pub witness: Option<[usize; 4]>,
}

impl Delta {
    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

/// Four-point hyperbolicity constant by exhaustive scan of 4-subsets.
pub fn hyperbolicity_delta(graph: &TruncGraph, limit: usize) -> Result<Delta> {
    let d = graph.all_pairs(limit)?;
    let n = graph.vertex_count();
    let mut best = Delta {
        twice: 0,
        witness: None,
    };
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                for w in (z + 1)..n {
                    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
                    s.sort_unstable();
                    let defect = s[2] - s[1];
                    if defect > best.twice {
                        best = Delta {
                            twice: defect,
                            witness: Some([x, y, z, w]),
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bottleneck {
    pub delta: u32,
    pub holds: bool,
    /// A pair `(u, v)` joined by a path that avoids the ball around the midpoint.
    pub witness: Option<(usize, usize)>,
}

/// For every pair `u, v`, every `u`-`v` path meets `B(m, delta)`, where `m` is
/// the vertex at distance `floor(d(u, v) / 2)` from `u` on a BFS geodesic.
pub fn bottleneck_check(graph: &TruncGraph, delta: u32, limit: usize) -> Result<Bottleneck> {
    let n = graph.vertex_count();
    if n > limit {
        return Err(Error::CapacityExceeded {
            what: "bottleneck scan",
            limit,
        });
    }
    let table = graph.all_pairs(limit)?;
    let mut blocked = vec![false; n];
    for u in 0..n {
        let (dist, parent) = bfs_tree(graph, u);
        for v in (u + 1)..n {
            let d = dist[v];
            let mut m = v;
            for _ in 0..(d - d / 2) {
                m = parent[m];
            }
            for (b, &dm) in blocked.iter_mut().zip(&table[m]) {
                *b = dm <= delta;
            }
            if blocked[u] || blocked[v] {
                continue;
            }
            if graph.bfs_masked(u, Some(&blocked))[v].is_some() {
                return Ok(Bottleneck {
                    delta,
                    holds: false,
                    witness: Some((u, v)),
                });
            }
        }
    }
    Ok(Bottleneck {
        delta,
        holds: true,
        witness: None,
    })
}

fn bfs_tree(graph: &TruncGraph, src: usize) -> (Vec<u32>, Vec<usize>) {
    let n = graph.vertex_count();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[src] = 0;
    parent[src] = src;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

/// `d(x0, g^n x0)` for `n = 0..=n_max`, with `x0` the base point `e` (or the
/// coset `T` in the projection complex).
pub fn translation_growth(
    graph: &TruncGraph,
    ps: &ProjectionSystem<'_>,
    g: &GroupElement,
    n_max: u32,
) -> Result<Vec<u32>> {
    let e = g.mul(&g.inverse());
    let projector = ps.projector();
    let locate = |x: &GroupElement| -> Result<usize> {
        match graph.kind() {
            GraphKind::QuasiTreeOfSpaces { .. } | GraphKind::Plain => {
                graph.point_vertex(x).ok_or_else(|| Error::PointMissing(x.to_string()))
            }
            GraphKind::ProjectionComplex { .. } => {
                let c = projector.coset(x);
                ps.index_of(&c)
                    .and_then(|i| graph.coset_vertex(i))
                    .ok_or_else(|| Error::PointMissing(c.to_string()))
            }
        }
    };
    let src = locate(&e)?;
    let dist = graph.bfs(src);
    (0..=n_max as i64)
        .map(|n| {
            let v = locate(&g.pow(n))?;
            dist[v].ok_or(Error::Disconnected)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> TruncGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        TruncGraph::from_edges(n, &edges)
    }

    fn path(n: usize) -> TruncGraph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        TruncGraph::from_edges(n, &edges)
    }

    #[test]
    fn no_loops_or_duplicates() {
        let mut g = TruncGraph::from_edges(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.add_edge(1, 1));
    }

    #[test]
    fn delta_examples() {
        let tree = TruncGraph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]);
        assert_eq!(hyperbolicity_delta(&tree, 400).unwrap().twice, 0);
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        assert_eq!(hyperbolicity_delta(&TruncGraph::from_edges(5, &edges), 400).unwrap().twice, 0);
        assert_eq!(hyperbolicity_delta(&cycle(6), 400).unwrap().value(), 1.0);
        let split = TruncGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(hyperbolicity_delta(&split, 400), Err(Error::Disconnected)));
        assert!(matches!(
            hyperbolicity_delta(&path(10), 5),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn bottleneck_examples() {
        assert!(bottleneck_check(&path(7), 0, 400).unwrap().holds);
        let c = bottleneck_check(&cycle(12), 0, 400).unwrap();
        assert!(!c.holds);
        assert!(c.witness.is_some());
        assert!(bottleneck_check(&cycle(4), 1, 400).unwrap().holds);
    }

    #[test]
    fn tsv_and_dot_exports() {
        let g = path(3);
        let tsv = g.distances_tsv(10).unwrap();
        assert!(tsv.contains("0\t2\t2"));
        let dot = g.to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("v0 -- v1;"));
    }
}
