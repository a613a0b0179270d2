//! Maximum matching in general graphs and the structures built on it:
//! hypomatchability, the Gallai–Edmonds decomposition, clone graphs for
//! suppression legality, and the W/L decomposition search.

mod clone;
mod wl;

pub use clone::{
    nearly_well_suppressed, well_suppress_pairing, well_suppress_pairing_within, CloneGraph,
    MatchError,
};
pub use wl::{check_w_l, extract_w_l, WlError};

use std::collections::VecDeque;

use crate::multigraph::{MultiGraph, Vertex};

const NONE: usize = usize::MAX;

/// Edmonds' blossom algorithm on adjacency lists over `0..n`.
pub(crate) struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    pub(crate) fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Runs to completion; `mate[v]` is `usize::MAX` for exposed vertices.
    pub(crate) fn solve(mut self) -> Vec<usize> {
        for v in 0..self.adj.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(mut u) = self.find_path(v) {
                while u != NONE {
                    let pv = self.parent[u];
                    let ppv = self.mate[pv];
                    self.mate[u] = pv;
                    self.mate[pv] = u;
                    u = ppv;
                }
            }
        }
        self.mate
    }
}

pub(crate) fn mate_of(adj: &[Vec<usize>]) -> Vec<usize> {
    Blossom::new(adj).solve()
}

pub(crate) fn matching_size(adj: &[Vec<usize>]) -> usize {
    mate_of(adj).iter().filter(|&&m| m != NONE).count() / 2
}

fn compact_adj(g: &MultiGraph) -> (Vec<Vec<usize>>, Vec<Vertex>) {
    let (h, ids) = g.compacted();
    let adj = (0..ids.len())
        .map(|v| h.neighbor_list(v).into_iter().filter(|&w| w != v).collect())
        .collect();
    (adj, ids)
}

/// Maximum matching of the underlying simple graph, pairs `(u, v)` with `u < v`
/// sorted by `u`.
pub fn max_matching(g: &MultiGraph) -> Vec<(Vertex, Vertex)> {
    let (adj, ids) = compact_adj(g);
    let mate = mate_of(&adj);
    let mut out = Vec::new();
    for (i, &m) in mate.iter().enumerate() {
        if m != NONE && i < m {
            out.push((ids[i], ids[m]));
        }
    }
    out
}

pub fn has_perfect_matching(g: &MultiGraph) -> bool {
    let n = g.order();
    n.is_multiple_of(2) && 2 * max_matching(g).len() == n
}

/// Odd order and every single vertex deletion leaves a perfect matching.
pub fn is_hypomatchable(g: &MultiGraph) -> bool {
    let (adj, _) = compact_adj(g);
    let n = adj.len();
    if n % 2 == 0 {
        return false;
    }
    (0..n).all(|v| {
        let sub = without(&adj, v);
        2 * matching_size(&sub) == n - 1
    })
}

/// Adjacency lists with `v` isolated.
pub(crate) fn without(adj: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
    adj.iter()
        .enumerate()
        .map(|(u, l)| {
            if u == v {
                Vec::new()
            } else {
                l.iter().copied().filter(|&w| w != v).collect()
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiEdmonds {
    /// Vertices missed by some maximum matching.
    pub d: Vec<Vertex>,
    /// Neighbours of `d` outside it.
    pub a: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub matching_size: usize,
}

pub fn gallai_edmonds(g: &MultiGraph) -> GallaiEdmonds {
    let (adj, ids) = compact_adj(g);
    let n = adj.len();
    let nu = matching_size(&adj);
    let in_d: Vec<bool> = (0..n).map(|v| matching_size(&without(&adj, v)) == nu).collect();
    let mut in_a = vec![false; n];
    for v in 0..n {
        if in_d[v] {
            for &w in &adj[v] {
                if !in_d[w] {
                    in_a[w] = true;
                }
            }
        }
    }
    let pick = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&v| f(v)).map(|v| ids[v]).collect();
    GallaiEdmonds {
        d: pick(&|v| in_d[v]),
        a: pick(&|v| in_a[v]),
        c: pick(&|v| !in_d[v] && !in_a[v]),
        matching_size: nu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> MultiGraph {
        let mut g = MultiGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Largest matching by trying every subset of edges, for small graphs.
    fn brute_matching(g: &MultiGraph) -> usize {
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        fn go(edges: &[(usize, usize)], i: usize, used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(edges, i + 1, used);
            let (u, v) = edges[i];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + go(edges, i + 1, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        go(&edges, 0, &mut vec![false; g.id_bound()])
    }

    #[test]
    fn small_matchings() {
        assert_eq!(max_matching(&MultiGraph::cycle(4)).len(), 2);
        assert_eq!(max_matching(&MultiGraph::cycle(5)).len(), 2);
        let p = petersen();
        assert_eq!(max_matching(&p).len(), 5);
        assert_eq!(brute_matching(&p), 5);
    }

    #[test]
    fn hypomatchability() {
        assert!(is_hypomatchable(&MultiGraph::cycle(5)));
        assert!(!is_hypomatchable(&MultiGraph::cycle(4)));
        let mut k4m = MultiGraph::complete(4);
        k4m.remove_edge(0, 1).unwrap();
        k4m.remove_edge(2, 3).unwrap();
        assert!(!is_hypomatchable(&k4m));
        assert!(is_hypomatchable(&MultiGraph::new(1)));
        // star K_{1,2}: deleting a leaf leaves an edge, deleting the centre does not
        assert!(!is_hypomatchable(&MultiGraph::path(3)));
    }

    #[test]
    fn gallai_edmonds_of_star() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let ge = gallai_edmonds(&g);
        assert_eq!(ge.d, vec![1, 2, 3]);
        assert_eq!(ge.a, vec![0]);
        assert!(ge.c.is_empty());
        let c6 = gallai_edmonds(&MultiGraph::cycle(6));
        assert_eq!(c6.c.len(), 6);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn blossom_matches_brute_force(n in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut g = MultiGraph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            let m = max_matching(&g);
            let mut seen = vec![false; n];
            for &(u, v) in &m {
                prop_assert!(g.adjacent(u, v));
                prop_assert!(!seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
            }
            prop_assert_eq!(m.len(), brute_matching(&g));
        }
    }
}
