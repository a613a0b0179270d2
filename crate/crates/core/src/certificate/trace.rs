//! Split traces and their conversion into certificates by provenance replay.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Fingerprint, ImmersionCertificate, Pattern};
use crate::multigraph::{GraphError, MultiGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOp {
    /// `u–pivot` and `pivot–w` become `u–w`.
    SplitOff { u: Vertex, pivot: Vertex, w: Vertex },
    SplitPath(Vec<Vertex>),
    Suppress { v: Vertex, pairing: Vec<(Vertex, Vertex)> },
    DeleteEdge(Vertex, Vertex),
    DeleteVertex(Vertex),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitTrace {
    pub ops: Vec<TraceOp>,
}

impl SplitTrace {
    pub fn new() -> Self {
        SplitTrace::default()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: TraceOp) {
        self.ops.push(op);
    }

    pub fn split(&mut self, u: Vertex, pivot: Vertex, w: Vertex) {
        self.ops.push(TraceOp::SplitOff { u, pivot, w });
    }

    pub fn split_path(&mut self, path: &[Vertex]) {
        if path.len() > 2 {
            self.ops.push(TraceOp::SplitPath(path.to_vec()));
        }
    }

    pub fn extend(&mut self, other: SplitTrace) {
        self.ops.extend(other.ops);
    }

    /// Applies the trace to a copy of `g` with plain multigraph operations.
    pub fn replay(&self, g: &MultiGraph) -> Result<MultiGraph, ReplayError> {
        let mut h = g.clone();
        self.replay_into(&mut h)?;
        Ok(h)
    }

    pub fn replay_into(&self, h: &mut MultiGraph) -> Result<(), ReplayError> {
        for (step, op) in self.ops.iter().enumerate() {
            let res = match op {
                TraceOp::SplitOff { u, pivot, w } => h.split_at(*u, *pivot, *w),
                TraceOp::SplitPath(p) => h.split_off_path(p),
                TraceOp::Suppress { v, pairing } => h.suppress(*v, pairing),
                TraceOp::DeleteEdge(u, v) => h.remove_edge(*u, *v),
                TraceOp::DeleteVertex(v) => h.remove_vertex(*v),
            };
            res.map_err(|source| ReplayError::Op { step, source })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("trace step {step}: {source}")]
    Op { step: usize, source: GraphError },
    #[error("branch vertices {0} and {1} are not adjacent after replay")]
    NotComplete(Vertex, Vertex),
    #[error("branch vertex {0} listed twice")]
    Repeated(Vertex),
}

/// Every edge instance of the current graph together with the host walk it
/// stands for. Instances of a pair are used front to back.
#[derive(Clone, Debug, Default)]
pub struct WalkStore {
    pairs: BTreeMap<(Vertex, Vertex), Vec<Vec<Vertex>>>,
    loops: BTreeMap<Vertex, Vec<Vec<Vertex>>>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl WalkStore {
    pub fn from_graph(g: &MultiGraph) -> Self {
        let mut s = WalkStore::default();
        for (u, v, k) in g.edges() {
            for _ in 0..k {
                if u == v {
                    s.loops.entry(u).or_default().push(vec![u, u]);
                } else {
                    s.pairs.entry(key(u, v)).or_default().push(vec![u, v]);
                }
            }
        }
        s
    }

    fn push(&mut self, walk: Vec<Vertex>) {
        let (a, b) = (walk[0], walk[walk.len() - 1]);
        if a == b {
            self.loops.entry(a).or_default().push(walk);
        } else {
            self.pairs.entry(key(a, b)).or_default().push(walk);
        }
    }

    /// Takes the first instance of `from–to`, oriented to start at `from`.
    pub fn take(&mut self, from: Vertex, to: Vertex) -> Result<Vec<Vertex>, GraphError> {
        let k = key(from, to);
        let list = self
            .pairs
            .get_mut(&k)
            .filter(|l| !l.is_empty())
            .ok_or(GraphError::MissingEdge(from, to))?;
        let mut walk = list.remove(0);
        if list.is_empty() {
            self.pairs.remove(&k);
        }
        if walk[0] != from {
            walk.reverse();
        }
        Ok(walk)
    }

    fn count(&self, u: Vertex, v: Vertex) -> usize {
        self.pairs.get(&key(u, v)).map_or(0, Vec::len)
    }

    fn split(&mut self, u: Vertex, pivot: Vertex, w: Vertex) -> Result<(), GraphError> {
        if u == pivot || w == pivot {
            return Err(GraphError::LoopSplit(pivot));
        }
        let need = if u == w { 2 } else { 1 };
        if self.count(u, pivot) < need {
            return Err(GraphError::MissingEdge(u, pivot));
        }
        if self.count(pivot, w) < 1 {
            return Err(GraphError::MissingEdge(pivot, w));
        }
        let mut first = self.take(u, pivot)?;
        let second = self.take(pivot, w)?;
        first.extend_from_slice(&second[1..]);
        self.push(first);
        Ok(())
    }

    fn split_path(&mut self, path: &[Vertex]) -> Result<(), GraphError> {
        if path.len() < 2 {
            return Err(GraphError::EmptyPath);
        }
        let mut demand: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for w in path.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::LoopSplit(w[0]));
            }
            *demand.entry(key(w[0], w[1])).or_insert(0) += 1;
        }
        for (&(a, b), &k) in &demand {
            if self.count(a, b) < k {
                return Err(GraphError::MissingEdge(a, b));
            }
        }
        let mut walk = vec![path[0]];
        for w in path.windows(2) {
            let piece = self.take(w[0], w[1])?;
            walk.extend_from_slice(&piece[1..]);
        }
        self.push(walk);
        Ok(())
    }

    fn suppress(&mut self, v: Vertex, pairing: &[(Vertex, Vertex)]) -> Result<(), GraphError> {
        let mut want: BTreeMap<Vertex, usize> = BTreeMap::new();
        for &(a, b) in pairing {
            *want.entry(a).or_insert(0) += 1;
            *want.entry(b).or_insert(0) += 1;
        }
        let have: BTreeMap<Vertex, usize> = self
            .pairs
            .iter()
            .filter(|(&(a, b), l)| (a == v || b == v) && !l.is_empty())
            .map(|(&(a, b), l)| (if a == v { b } else { a }, l.len()))
            .collect();
        let total: usize = have.values().sum();
        if total % 2 == 1 {
            return Err(GraphError::OddDegree {
                vertex: v,
                count: total,
            });
        }
        if want != have {
            return Err(GraphError::BadPairing(v));
        }
        for &(a, b) in pairing {
            let mut first = self.take(a, v)?;
            let second = self.take(v, b)?;
            first.extend_from_slice(&second[1..]);
            self.push(first);
        }
        self.loops.remove(&v);
        Ok(())
    }

    fn delete_vertex(&mut self, v: Vertex) {
        self.pairs.retain(|&(a, b), _| a != v && b != v);
        self.loops.remove(&v);
    }

    pub fn apply(&mut self, op: &TraceOp) -> Result<(), GraphError> {
        match op {
            TraceOp::SplitOff { u, pivot, w } => self.split(*u, *pivot, *w),
            TraceOp::SplitPath(p) => self.split_path(p),
            TraceOp::Suppress { v, pairing } => self.suppress(*v, pairing),
            TraceOp::DeleteEdge(u, v) => {
                if u == v {
                    let l = self.loops.get_mut(u).filter(|l| !l.is_empty());
                    l.ok_or(GraphError::MissingEdge(*u, *v))?.remove(0);
                    Ok(())
                } else {
                    self.take(*u, *v).map(|_| ())
                }
            }
            TraceOp::DeleteVertex(v) => {
                self.delete_vertex(*v);
                Ok(())
            }
        }
    }
}

/// Replays `trace` on `g` while remembering, for every created edge, the host
/// walk it came from. The routes of the returned certificate are those walks
/// for the pairs of `branch`, shortcut to paths.
pub fn trace_to_certificate(
    g: &MultiGraph,
    trace: &SplitTrace,
    branch: &[Vertex],
) -> Result<ImmersionCertificate, ReplayError> {
    let mut store = WalkStore::from_graph(g);
    for (step, op) in trace.ops.iter().enumerate() {
        store
            .apply(op)
            .map_err(|source| ReplayError::Op { step, source })?;
    }
    for (i, &a) in branch.iter().enumerate() {
        if branch[..i].contains(&a) {
            return Err(ReplayError::Repeated(a));
        }
    }
    let mut routes = Vec::new();
    for i in 0..branch.len() {
        for j in i + 1..branch.len() {
            let walk = store
                .take(branch[i], branch[j])
                .map_err(|_| ReplayError::NotComplete(branch[i], branch[j]))?;
            routes.push(super::shortcut_walk(&walk));
        }
    }
    Ok(ImmersionCertificate {
        host: Fingerprint::of(g),
        pattern: Pattern::Clique(branch.len()),
        branch: branch.to_vec(),
        routes,
        strong: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;

    #[test]
    fn empty_trace_on_k3() {
        let g = MultiGraph::complete(3);
        let c = trace_to_certificate(&g, &SplitTrace::new(), &[0, 1, 2]).unwrap();
        assert_eq!(c.routes, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(verify(&g, &c).is_accept());
    }

    #[test]
    fn p3_split() {
        let g = MultiGraph::path(3);
        let mut t = SplitTrace::new();
        t.split(0, 1, 2);
        let c = trace_to_certificate(&g, &t, &[0, 2]).unwrap();
        assert_eq!(c.routes, vec![vec![0, 1, 2]]);
        assert!(verify(&g, &c).is_accept());
    }

    #[test]
    fn nested_splits_unwind() {
        let g = MultiGraph::path(5);
        let mut t = SplitTrace::new();
        t.split(0, 1, 2);
        t.split(4, 3, 2);
        t.split(0, 2, 4);
        let c = trace_to_certificate(&g, &t, &[0, 4]).unwrap();
        assert_eq!(c.routes, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn suppress_provenance() {
        let g = MultiGraph::cycle(4);
        let t = SplitTrace {
            ops: vec![TraceOp::Suppress {
                v: 0,
                pairing: vec![(1, 3)],
            }],
        };
        let c = trace_to_certificate(&g, &t, &[1, 2, 3]).unwrap();
        assert!(c.routes.contains(&vec![1, 0, 3]));
        assert!(verify(&g, &c).is_accept());
        assert_eq!(t.replay(&g).unwrap().edge_count(), 3);
    }

    #[test]
    fn incomplete_branch_rejected() {
        let g = MultiGraph::path(3);
        assert_eq!(
            trace_to_certificate(&g, &SplitTrace::new(), &[0, 2]),
            Err(ReplayError::NotComplete(0, 2))
        );
    }

    #[test]
    fn replay_error_points_at_step() {
        let g = MultiGraph::path(3);
        let mut t = SplitTrace::new();
        t.split(0, 1, 2);
        t.split(0, 1, 2);
        assert!(matches!(
            trace_to_certificate(&g, &t, &[0, 2]),
            Err(ReplayError::Op { step: 1, .. })
        ));
        assert!(matches!(t.replay(&g), Err(ReplayError::Op { step: 1, .. })));
    }
}
