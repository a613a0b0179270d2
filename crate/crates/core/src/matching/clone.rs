//! Clone graphs and suppression legality.
//!
//! Suppressing a centre `z` pairs the edges of `E(z)`. A pairing is *well*
//! when no pair has equal or adjacent ends and no two pairs have the same ends.
//! When every edge at `z` has multiplicity at most two, well pairings are
//! exactly perfect matchings in the complement of the clone graph: one vertex
//! per neighbour of `z`, plus a clone `v_c` for each double neighbour `v`,
//! adjacent to all double neighbours, to `N(v)`, and to the other clones.

use thiserror::Error;

use super::{is_hypomatchable, mate_of, NONE};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("edge {z}-{v} has multiplicity {mult}, at most 2 is supported")]
    Multiplicity { z: Vertex, v: Vertex, mult: u32 },
}

#[derive(Clone, Debug)]
pub struct CloneGraph {
    /// Host neighbour represented by each slot.
    pub slot: Vec<Vertex>,
    pub is_clone: Vec<bool>,
    /// Neighbours joined to the centre by a double edge.
    pub r: Vec<Vertex>,
    pub adj: Vec<Vec<usize>>,
}

impl CloneGraph {
    /// Clone graph of `z`, restricted to neighbours in `within` when given.
    pub fn build(
        gp: &MultiGraph,
        z: Vertex,
        within: Option<&[Vertex]>,
    ) -> Result<CloneGraph, MatchError> {
        let mut base = Vec::new();
        let mut r = Vec::new();
        for (v, m) in gp.neighbors(z) {
            if v == z || within.is_some_and(|w| !w.contains(&v)) {
                continue;
            }
            if m > 2 {
                return Err(MatchError::Multiplicity { z, v, mult: m });
            }
            base.push(v);
            if m == 2 {
                r.push(v);
            }
        }
        let nb = base.len();
        let mut slot = base.clone();
        slot.extend(r.iter().copied());
        let mut is_clone = vec![false; nb];
        is_clone.extend(std::iter::repeat_n(true, r.len()));
        let k = slot.len();
        let in_r = |v: Vertex| r.contains(&v);
        let mut adj = vec![Vec::new(); k];
        for a in 0..k {
            for b in a + 1..k {
                let (u, v) = (slot[a], slot[b]);
                let edge = match (is_clone[a], is_clone[b]) {
                    (false, false) => gp.adjacent(u, v),
                    (true, true) => true,
                    // clone of u against base v
                    (true, false) => in_r(v) || gp.adjacent(u, v),
                    (false, true) => in_r(u) || gp.adjacent(u, v),
                };
                if edge {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        Ok(CloneGraph {
            slot,
            is_clone,
            r,
            adj,
        })
    }

    pub fn len(&self) -> usize {
        self.slot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slot.is_empty()
    }

    /// The clone graph as a simple graph on `0..len()`.
    pub fn graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.len());
        for (a, l) in self.adj.iter().enumerate() {
            for &b in l {
                if a < b {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn complement_adj(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut m = vec![vec![true; k]; k];
        for (a, l) in self.adj.iter().enumerate() {
            m[a][a] = false;
            for &b in l {
                m[a][b] = false;
            }
        }
        (0..k)
            .map(|a| (0..k).filter(|&b| m[a][b]).collect())
            .collect()
    }

    pub fn complement(&self) -> MultiGraph {
        self.graph().complement().expect("clone graph is simple")
    }
}

/// A well pairing of the edges from `z` into `within`, read off a perfect
/// matching of the clone-graph complement. `None` means that complement has
/// no perfect matching; with two or more doubled neighbours a well pairing
/// may still exist (three doubled neighbours can pair cyclically).
pub fn well_suppress_pairing_within(
    gp: &MultiGraph,
    z: Vertex,
    within: Option<&[Vertex]>,
) -> Result<Option<Vec<(Vertex, Vertex)>>, MatchError> {
    let cg = CloneGraph::build(gp, z, within)?;
    if cg.len() % 2 == 1 {
        return Ok(None);
    }
    let mate = mate_of(&cg.complement_adj());
    if mate.contains(&NONE) {
        return Ok(None);
    }
    let mut pairs = Vec::new();
    for (a, &b) in mate.iter().enumerate() {
        if a < b {
            let (u, v) = (cg.slot[a], cg.slot[b]);
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    Ok(Some(pairs))
}

/// A pairing of all of `E(z)` that creates no loop and no parallel edge.
pub fn well_suppress_pairing(
    gp: &MultiGraph,
    z: Vertex,
) -> Result<Option<Vec<(Vertex, Vertex)>>, MatchError> {
    well_suppress_pairing_within(gp, z, None)
}

/// True when the complement of the clone graph of `z` is hypomatchable, so
/// that deleting any single edge at `z` leaves a well-suppressible centre.
pub fn nearly_well_suppressed(gp: &MultiGraph, z: Vertex) -> Result<bool, MatchError> {
    let cg = CloneGraph::build(gp, z, None)?;
    Ok(is_hypomatchable(&cg.complement()))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every pairing of the edge slots at `z`, checked against both rules.
    fn brute_well(gp: &MultiGraph, z: Vertex) -> bool {
        let ends = gp.incident_endpoints(z);
        fn go(gp: &MultiGraph, rest: &mut Vec<Vertex>, pairs: &mut Vec<(Vertex, Vertex)>) -> bool {
            if rest.is_empty() {
                return true;
            }
            let a = rest.remove(0);
            for i in 0..rest.len() {
                let b = rest[i];
                let p = (a.min(b), a.max(b));
                if a == b || gp.adjacent(a, b) || pairs.contains(&p) {
                    continue;
                }
                rest.remove(i);
                pairs.push(p);
                let ok = go(gp, rest, pairs);
                pairs.pop();
                rest.insert(i, b);
                if ok {
                    rest.insert(0, a);
                    return true;
                }
            }
            rest.insert(0, a);
            false
        }
        ends.len().is_multiple_of(2) && go(gp, &mut ends.clone(), &mut Vec::new())
    }

    fn assert_well(gp: &MultiGraph, z: Vertex, pairing: &[(Vertex, Vertex)]) {
        let mut h = gp.clone();
        let before: Vec<(Vertex, Vertex, u32)> = h.edges();
        h.suppress(z, pairing).unwrap();
        for (u, v, k) in h.edges() {
            assert_ne!(u, v, "loop created");
            let old = before
                .iter()
                .find(|e| e.0 == u && e.1 == v)
                .map_or(0, |e| e.2);
            assert!(k == old || (old == 0 && k == 1), "parallel edge {u}-{v}");
        }
    }

    #[test]
    fn independent_neighbourhood() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let p = well_suppress_pairing(&g, 0).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        assert_well(&g, 0, &p);
    }

    #[test]
    fn wheel_over_k4() {
        let g = MultiGraph::complete(5);
        assert_eq!(well_suppress_pairing(&g, 0).unwrap(), None);
        assert!(!brute_well(&g, 0));
    }

    #[test]
    fn double_edge_gadget() {
        let mut g = MultiGraph::new(4);
        g.add_edges(0, 1, 2);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        let p = well_suppress_pairing(&g, 0).unwrap().unwrap();
        assert_eq!(p, vec![(1, 2), (1, 3)]);
        assert_well(&g, 0, &p);
    }

    #[test]
    fn nearly_cases() {
        // neighbourhood inducing C5: complement is C5 again
        let mut g = MultiGraph::new(6);
        for i in 0..5 {
            g.add_edge(5, i);
            g.add_edge(i, (i + 1) % 5);
        }
        assert!(nearly_well_suppressed(&g, 5).unwrap());
        for i in 0..5 {
            let mut h = g.clone();
            h.remove_edge(5, i).unwrap();
            let p = well_suppress_pairing(&h, 5).unwrap().unwrap();
            assert_well(&h, 5, &p);
        }
        let even = MultiGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(!nearly_well_suppressed(&even, 0).unwrap());
        let single = MultiGraph::from_edges(2, &[(0, 1)]);
        assert!(nearly_well_suppressed(&single, 0).unwrap());
    }

    #[test]
    fn clones_never_pair_with_doubled_neighbours() {
        // {0,3},{3,4},{4,0} is well, but needs a clone matched to a doubled base
        let mut g = MultiGraph::new(6);
        for v in [0, 3, 4] {
            g.add_edges(5, v, 2);
        }
        assert!(brute_well(&g, 5));
        assert_eq!(well_suppress_pairing(&g, 5).unwrap(), None);
    }

    #[test]
    fn triple_edge_refused() {
        let mut g = MultiGraph::new(2);
        g.add_edges(0, 1, 3);
        assert!(matches!(
            well_suppress_pairing(&g, 0),
            Err(MatchError::Multiplicity { mult: 3, .. })
        ));
    }

    #[test]
    fn clone_graph_shape() {
        let mut g = MultiGraph::new(5);
        g.add_edges(0, 1, 2);
        g.add_edges(0, 2, 2);
        g.add_edge(0, 3);
        g.add_edge(0, 4);
        g.add_edge(3, 4);
        g.add_edge(1, 3);
        let cg = CloneGraph::build(&g, 0, None).unwrap();
        assert_eq!(cg.len(), 4 + 2);
        assert_eq!(cg.r, vec![1, 2]);
        // clone of 1 sees 1, 2, 3 and the other clone
        let c1 = 4;
        assert_eq!(cg.adj[c1], vec![0, 1, 2, 5]);
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matching_agrees_with_enumeration(
            mults in proptest::collection::vec(0u32..3, 5),
            bits in proptest::collection::vec(any::<bool>(), 10),
        ) {
            // centre 5 with neighbours 0..5, total |E(z)| at most 10
            let mut g = MultiGraph::new(6);
            for (v, &m) in mults.iter().enumerate() {
                g.add_edges(5, v, m);
            }
            let mut k = 0;
            for u in 0..5 {
                for v in u + 1..5 {
                    if bits[k] { g.add_edge(u, v); }
                    k += 1;
                }
            }
            prop_assume!(g.incident_count(5) <= 8);
            let found = well_suppress_pairing(&g, 5).unwrap();
            let exists = brute_well(&g, 5);
            // sound always; complete while at most one neighbour is doubled
            prop_assert!(!found.is_some() || exists);
            if mults.iter().filter(|&&m| m == 2).count() <= 1 {
                prop_assert_eq!(found.is_some(), exists);
            }
            if let Some(p) = found {
                assert_well(&g, 5, &p);
            }
        }
    }
}
