//! Multigraphs with stable vertex ids and the three primitive transformations
//! used by every construction in this crate: splitting off a pair of edges,
//! splitting off a path, and suppressing a vertex.
//!
//! Edge multiplicities live in an unordered-pair map; loops are counted per
//! vertex and never appear among a vertex's incident edges. Deleting a vertex
//! only marks it dead, so ids stay valid for certificates produced later.

mod format;

pub use format::{parse_dimacs, parse_edge_list, parse_graph, write_edge_list, FormatError};

use std::collections::BTreeMap;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not present")]
    MissingVertex(Vertex),
    #[error("no edge {0}-{1} left to use")]
    MissingEdge(Vertex, Vertex),
    #[error("edges {0}-{1} and {2}-{3} share no endpoint")]
    NotIncident(Vertex, Vertex, Vertex, Vertex),
    #[error("loops cannot be split off (at vertex {0})")]
    LoopSplit(Vertex),
    #[error("path must have at least two vertices")]
    EmptyPath,
    #[error("vertex {vertex} has {count} incident edges, suppression needs an even number")]
    OddDegree { vertex: Vertex, count: usize },
    #[error("pairing is not a perfect matching of the edges at {0}")]
    BadPairing(Vertex),
    #[error("operation requires a simple graph")]
    NotSimple,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    alive: Vec<bool>,
    adj: Vec<BTreeMap<Vertex, u32>>,
    loops: Vec<u32>,
}

impl MultiGraph {
    /// Graph on vertices `0..n` with no edges.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            alive: vec![true; n],
            adj: vec![BTreeMap::new(); n],
            loops: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = MultiGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = MultiGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = MultiGraph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// One past the largest vertex id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.alive.len()).filter(move |&v| self.alive[v])
    }

    pub fn vertex_list(&self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    pub fn order(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.alive.push(true);
        self.adj.push(BTreeMap::new());
        self.loops.push(0);
        self.alive.len() - 1
    }

    fn ensure(&mut self, v: Vertex) {
        while self.alive.len() <= v {
            self.add_vertex();
        }
    }

    /// Adds one edge; `u == v` adds a loop. Unknown ids are allocated.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.add_edges(u, v, 1);
    }

    pub fn add_edges(&mut self, u: Vertex, v: Vertex, k: u32) {
        if k == 0 {
            return;
        }
        self.ensure(u.max(v));
        debug_assert!(self.alive[u] && self.alive[v], "edge to a deleted vertex");
        if u == v {
            self.loops[u] += k;
        } else {
            *self.adj[u].entry(v).or_insert(0) += k;
            *self.adj[v].entry(u).or_insert(0) += k;
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.remove_edges(u, v, 1)
    }

    pub fn remove_edges(&mut self, u: Vertex, v: Vertex, k: u32) -> Result<(), GraphError> {
        if k == 0 {
            return Ok(());
        }
        if u == v {
            if !self.contains(u) || self.loops[u] < k {
                return Err(GraphError::MissingEdge(u, v));
            }
            self.loops[u] -= k;
            return Ok(());
        }
        if self.multiplicity(u, v) < k {
            return Err(GraphError::MissingEdge(u, v));
        }
        for (a, b) in [(u, v), (v, u)] {
            let m = self.adj[a].get_mut(&b).expect("checked above");
            *m -= k;
            if *m == 0 {
                self.adj[a].remove(&b);
            }
        }
        Ok(())
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if !self.contains(u) || !self.contains(v) {
            return 0;
        }
        if u == v {
            return self.loops[u];
        }
        self.adj[u].get(&v).copied().unwrap_or(0)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.multiplicity(u, v) > 0
    }

    pub fn loop_count(&self, v: Vertex) -> u32 {
        if self.contains(v) {
            self.loops[v]
        } else {
            0
        }
    }

    /// Degree with multiplicities; a loop counts twice.
    pub fn degree(&self, v: Vertex) -> usize {
        if !self.contains(v) {
            return 0;
        }
        self.adj[v].values().map(|&m| m as usize).sum::<usize>() + 2 * self.loops[v] as usize
    }

    /// Number of non-loop edge instances at `v`, i.e. `|E(v)|`.
    pub fn incident_count(&self, v: Vertex) -> usize {
        if !self.contains(v) {
            return 0;
        }
        self.adj[v].values().map(|&m| m as usize).sum()
    }

    /// Distinct neighbours with multiplicities, ascending by id.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.adj
            .get(v)
            .into_iter()
            .flat_map(|m| m.iter().map(|(&w, &k)| (w, k)))
    }

    pub fn neighbor_list(&self, v: Vertex) -> Vec<Vertex> {
        self.neighbors(v).map(|(w, _)| w).collect()
    }

    /// Every edge instance at `v` as an endpoint list (parallel edges repeat).
    pub fn incident_endpoints(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for (w, k) in self.neighbors(v) {
            for _ in 0..k {
                out.push(w);
            }
        }
        out
    }

    /// Total edge multiplicity, loops included.
    pub fn edge_count(&self) -> usize {
        let pairs: usize = self
            .vertices()
            .flat_map(|u| self.neighbors(u).filter(move |&(w, _)| w > u))
            .map(|(_, k)| k as usize)
            .sum();
        pairs + self.vertices().map(|v| self.loops[v] as usize).sum::<usize>()
    }

    /// `(u, v, multiplicity)` with `u < v`, then loops as `(v, v, count)`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, u32)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for (w, k) in self.neighbors(u) {
                if w > u {
                    out.push((u, w, k));
                }
            }
        }
        for v in self.vertices() {
            if self.loops[v] > 0 {
                out.push((v, v, self.loops[v]));
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.vertices()
            .all(|v| self.loops[v] == 0 && self.neighbors(v).all(|(_, k)| k == 1))
    }

    pub fn is_eulerian(&self) -> bool {
        self.vertices().all(|v| self.degree(v).is_multiple_of(2))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::MissingVertex(v));
        }
        let nbrs: Vec<Vertex> = self.adj[v].keys().copied().collect();
        for w in nbrs {
            self.adj[w].remove(&v);
        }
        self.adj[v].clear();
        self.loops[v] = 0;
        self.alive[v] = false;
        Ok(())
    }

    /// Splits off `e1` and `e2`, which must share an endpoint. The shared
    /// endpoint is taken as `e1.1 == e2.0` when possible, so `(u, v), (v, u)`
    /// splits two parallel edges at `v` into a loop at `u`.
    pub fn split_off(
        &mut self,
        e1: (Vertex, Vertex),
        e2: (Vertex, Vertex),
    ) -> Result<(), GraphError> {
        let (u, pivot, w) = if e1.1 == e2.0 {
            (e1.0, e1.1, e2.1)
        } else if e1.0 == e2.0 {
            (e1.1, e1.0, e2.1)
        } else if e1.1 == e2.1 {
            (e1.0, e1.1, e2.0)
        } else if e1.0 == e2.1 {
            (e1.1, e1.0, e2.0)
        } else {
            return Err(GraphError::NotIncident(e1.0, e1.1, e2.0, e2.1));
        };
        self.split_at(u, pivot, w)
    }

    /// Splits off `u–pivot` and `pivot–w`, producing `u–w`.
    pub fn split_at(&mut self, u: Vertex, pivot: Vertex, w: Vertex) -> Result<(), GraphError> {
        if u == pivot || w == pivot {
            return Err(GraphError::LoopSplit(pivot));
        }
        let need = if u == w { 2 } else { 1 };
        if self.multiplicity(u, pivot) < need {
            return Err(GraphError::MissingEdge(u, pivot));
        }
        if self.multiplicity(pivot, w) < 1 {
            return Err(GraphError::MissingEdge(pivot, w));
        }
        self.remove_edge(u, pivot)?;
        self.remove_edge(pivot, w)?;
        self.add_edge(u, w);
        Ok(())
    }

    /// Deletes the edges of `path` and adds one edge between its ends.
    /// A two-vertex path leaves the graph unchanged.
    pub fn split_off_path(&mut self, path: &[Vertex]) -> Result<(), GraphError> {
        if path.len() < 2 {
            return Err(GraphError::EmptyPath);
        }
        let mut demand: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
        for win in path.windows(2) {
            let (a, b) = (win[0], win[1]);
            if a == b {
                return Err(GraphError::LoopSplit(a));
            }
            *demand.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        for (&(a, b), &k) in &demand {
            if self.multiplicity(a, b) < k {
                return Err(GraphError::MissingEdge(a, b));
            }
        }
        for (&(a, b), &k) in &demand {
            self.remove_edges(a, b, k)?;
        }
        self.add_edge(path[0], path[path.len() - 1]);
        Ok(())
    }

    /// Suppresses `v`: each `(a, b)` in `pairing` splits off `a–v` and `v–b`.
    /// The pairing must use every non-loop edge at `v` exactly once.
    pub fn suppress(&mut self, v: Vertex, pairing: &[(Vertex, Vertex)]) -> Result<(), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::MissingVertex(v));
        }
        let count = self.incident_count(v);
        if count % 2 == 1 {
            return Err(GraphError::OddDegree { vertex: v, count });
        }
        let mut want: BTreeMap<Vertex, u32> = BTreeMap::new();
        for &(a, b) in pairing {
            *want.entry(a).or_insert(0) += 1;
            *want.entry(b).or_insert(0) += 1;
        }
        let have: BTreeMap<Vertex, u32> = self.neighbors(v).collect();
        if want != have {
            return Err(GraphError::BadPairing(v));
        }
        for &(a, b) in pairing {
            self.add_edge(a, b);
        }
        self.remove_vertex(v)
    }

    /// Pairwise sum of multiplicities over the union of vertex sets.
    pub fn union(&self, other: &MultiGraph) -> MultiGraph {
        let n = self.id_bound().max(other.id_bound());
        let mut g = MultiGraph::new(n);
        for v in 0..n {
            g.alive[v] = self.contains(v) || other.contains(v);
        }
        for h in [self, other] {
            for (u, v, k) in h.edges() {
                g.add_edges(u, v, k);
            }
        }
        g
    }

    /// `f(v|X)`: vertices of `X` other than `v` that are not adjacent to `v`.
    pub fn missing_count(&self, v: Vertex, target: &[Vertex]) -> usize {
        target
            .iter()
            .filter(|&&x| x != v && !self.adjacent(v, x))
            .count()
    }

    /// `f(v)` relative to all present vertices.
    pub fn missing_degree(&self, v: Vertex) -> usize {
        let others = self.order() - usize::from(self.contains(v));
        others - self.neighbors(v).filter(|&(w, _)| self.contains(w)).count()
    }

    /// Subgraph induced on `keep`; ids are preserved, other vertices become absent.
    pub fn induced(&self, keep: &[Vertex]) -> MultiGraph {
        let mut g = MultiGraph::new(self.id_bound());
        let mut mark = vec![false; self.id_bound()];
        for &v in keep {
            if self.contains(v) {
                mark[v] = true;
            }
        }
        for v in 0..self.id_bound() {
            g.alive[v] = mark[v];
        }
        for (u, v, k) in self.edges() {
            if mark[u] && mark[v] {
                g.add_edges(u, v, k);
            }
        }
        g
    }

    /// Simple graph with one edge for every adjacent pair.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut g = self.clone();
        for v in 0..g.id_bound() {
            g.loops[v] = 0;
            for m in g.adj[v].values_mut() {
                *m = 1;
            }
        }
        g
    }

    pub fn complement(&self) -> Result<MultiGraph, GraphError> {
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        let mut g = MultiGraph::new(self.id_bound());
        for v in 0..self.id_bound() {
            g.alive[v] = self.alive[v];
        }
        let vs = self.vertex_list();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Relabels present vertices onto `0..order()` in id order.
    pub fn compacted(&self) -> (MultiGraph, Vec<Vertex>) {
        let ids = self.vertex_list();
        let mut pos = vec![usize::MAX; self.id_bound()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = MultiGraph::new(ids.len());
        for (u, v, k) in self.edges() {
            g.add_edges(pos[u], pos[v], k);
        }
        (g, ids)
    }
}

/// `f(v|X)` for every `v` in a fixed host, against a fixed target set.
#[derive(Clone, Debug)]
pub struct MissingDegreeView<'g> {
    graph: &'g MultiGraph,
    target: Vec<Vertex>,
}

impl<'g> MissingDegreeView<'g> {
    pub fn new(graph: &'g MultiGraph, target: &[Vertex]) -> Self {
        let mut target = target.to_vec();
        target.sort_unstable();
        target.dedup();
        MissingDegreeView { graph, target }
    }

    pub fn get(&self, v: Vertex) -> usize {
        self.graph.missing_count(v, &self.target)
    }

    pub fn total(&self, over: &[Vertex]) -> usize {
        over.iter().map(|&v| self.get(v)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_path_of_three() {
        let mut g = MultiGraph::path(3);
        g.split_off((0, 1), (1, 2)).unwrap();
        assert_eq!(g.multiplicity(0, 2), 1);
        assert_eq!(g.degree(1), 0);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn split_triangle_doubles_pair() {
        let mut g = MultiGraph::complete(3);
        g.split_off((0, 1), (1, 2)).unwrap();
        assert_eq!(g.multiplicity(0, 2), 2);
        assert_eq!(g.degree(1), 0);
    }

    #[test]
    fn split_parallel_pair_makes_loop() {
        let mut g = MultiGraph::new(2);
        g.add_edges(0, 1, 2);
        g.split_off((0, 1), (1, 0)).unwrap();
        assert_eq!(g.loop_count(0), 1);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 0);
    }

    #[test]
    fn split_errors() {
        let mut g = MultiGraph::path(4);
        assert_eq!(
            g.split_off((0, 1), (2, 3)),
            Err(GraphError::NotIncident(0, 1, 2, 3))
        );
        assert_eq!(g.split_off((0, 2), (2, 3)), Err(GraphError::MissingEdge(0, 2)));
        let mut single = MultiGraph::path(2);
        assert_eq!(
            single.split_off((0, 1), (1, 0)),
            Err(GraphError::MissingEdge(0, 1))
        );
    }

    #[test]
    fn split_whole_p4() {
        let mut g = MultiGraph::path(4);
        g.split_off_path(&[0, 1, 2, 3]).unwrap();
        assert_eq!(g.edges(), vec![(0, 3, 1)]);
    }

    #[test]
    fn split_arc_of_c5() {
        let mut g = MultiGraph::cycle(5);
        g.split_off_path(&[0, 1, 2, 3]).unwrap();
        // replay as pairwise splits and compare
        let mut h = MultiGraph::cycle(5);
        h.split_off((0, 1), (1, 2)).unwrap();
        h.split_off((0, 2), (2, 3)).unwrap();
        assert_eq!(g, h);
        assert_eq!(g.multiplicity(0, 3), 1);
        assert_eq!(g.multiplicity(3, 4), 1);
        assert_eq!(g.multiplicity(4, 0), 1);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn one_edge_path_is_identity() {
        let mut g = MultiGraph::cycle(4);
        let before = g.clone();
        g.split_off_path(&[2, 3]).unwrap();
        assert_eq!(g, before);
    }

    #[test]
    fn path_reusing_edge_fails() {
        let mut g = MultiGraph::path(3);
        assert_eq!(
            g.split_off_path(&[0, 1, 2, 1]),
            Err(GraphError::MissingEdge(1, 2))
        );
    }

    #[test]
    fn suppress_star_center() {
        let mut g = MultiGraph::from_edges(3, &[(0, 1), (0, 2)]);
        g.suppress(0, &[(1, 2)]).unwrap();
        assert!(!g.contains(0));
        assert_eq!(g.edges(), vec![(1, 2, 1)]);
    }

    #[test]
    fn suppress_c4_vertex() {
        let mut g = MultiGraph::cycle(4);
        g.suppress(0, &[(1, 3)]).unwrap();
        assert_eq!(g.edges(), vec![(1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        for v in 1..4 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn suppress_double_edge_keeps_loops_elsewhere() {
        let mut g = MultiGraph::new(2);
        g.add_edges(0, 1, 2);
        g.add_edge(1, 1);
        g.suppress(0, &[(1, 1)]).unwrap();
        assert_eq!(g.loop_count(1), 2);
        assert_eq!(g.degree(1), 4);
    }

    #[test]
    fn suppress_errors() {
        let mut g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            g.suppress(0, &[(1, 2)]),
            Err(GraphError::OddDegree { vertex: 0, count: 3 })
        );
        let mut h = MultiGraph::cycle(4);
        assert_eq!(h.suppress(0, &[(1, 1)]), Err(GraphError::BadPairing(0)));
    }

    #[test]
    fn union_cases() {
        let g = MultiGraph::complete(3);
        assert_eq!(g.union(&MultiGraph::new(0)), g);
        let e = MultiGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(e.union(&e).multiplicity(0, 1), 2);
        let mut shifted = MultiGraph::new(6);
        for (u, v) in [(3, 4), (4, 5), (3, 5)] {
            shifted.add_edge(u, v);
        }
        let two = g.union(&shifted);
        assert_eq!(two.order(), 6);
        assert_eq!(two.edge_count(), 6);
        assert!(!two.adjacent(0, 3));
    }

    fn petersen() -> MultiGraph {
        let mut g = MultiGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[test]
    fn missing_counts() {
        let p = petersen();
        for v in p.vertices() {
            assert_eq!(p.missing_degree(v), 6);
        }
        assert_eq!(p.missing_count(0, &[]), 0);
        let view = MissingDegreeView::new(&p, &[0, 1, 2]);
        assert_eq!(view.get(0), 1);
        assert_eq!(view.get(7), 2);
        assert_eq!(view.get(8), 3);
    }

    #[test]
    fn c5_is_self_complementary() {
        let c = MultiGraph::cycle(5).complement().unwrap();
        assert_eq!(c.degree_sequence(), vec![2; 5]);
        let mut walk = vec![0];
        while walk.len() < 5 {
            let last = *walk.last().unwrap();
            let next = c
                .neighbor_list(last)
                .into_iter()
                .find(|w| !walk.contains(w))
                .unwrap();
            walk.push(next);
        }
        assert!(c.adjacent(walk[4], walk[0]));
    }

    #[test]
    fn complement_rejects_multigraph() {
        let mut g = MultiGraph::new(2);
        g.add_edges(0, 1, 2);
        assert_eq!(g.complement(), Err(GraphError::NotSimple));
    }

    #[test]
    fn induced_keeps_ids() {
        let g = MultiGraph::complete(5);
        let h = g.induced(&[1, 3, 4]);
        assert_eq!(h.order(), 3);
        assert!(h.adjacent(3, 4));
        assert!(!h.contains(0));
        assert_eq!(h.missing_degree(1), 0);
    }
}
