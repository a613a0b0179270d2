//! The ordered set `A = z_1, ..., z_p` grown around a high-degree vertex.

use crate::audit::{Anomaly, AuditLog};
use crate::multigraph::{MultiGraph, Vertex};

/// `z[0]` is the high-degree vertex. `r[i]` counts the members `z_0..=z_i`
/// outside `N(z_0)`; `z_0` counts itself, so `|N(z_0) ∩ A| = p - r[p-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASet {
    pub z: Vec<Vertex>,
    pub r: Vec<usize>,
    /// `N(z_0) ∖ A`, sorted.
    pub b: Vec<Vertex>,
}

impl ASet {
    pub fn p(&self) -> usize {
        self.z.len()
    }

    pub fn rp(&self) -> usize {
        *self.r.last().expect("A is never empty")
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.z.contains(&v)
    }

    fn single(g: &MultiGraph, z1: Vertex) -> ASet {
        ASet {
            z: vec![z1],
            r: vec![1],
            b: g.neighbor_list(z1).into_iter().filter(|&v| v != z1).collect(),
        }
    }

    /// Appends `v` as the next member, updating `r` and `B`.
    pub fn push(&mut self, g: &MultiGraph, v: Vertex) {
        let outside = !g.adjacent(self.z[0], v);
        let r = self.rp() + usize::from(outside);
        self.z.push(v);
        self.r.push(r);
        self.b.retain(|&x| x != v);
    }

    /// Checks `f(z_i | B) ≤ p + i + r_i` for every member after the first
    /// (1-based `i`) and the size bound `|B| ≥ d(z_1) - p + r_p`.
    pub fn audit(&self, g: &MultiGraph, log: &mut AuditLog) -> Result<(), Anomaly> {
        let p = self.p();
        for i in 1..p {
            let f = g.missing_count(self.z[i], &self.b);
            let bound = p + (i + 1) + self.r[i];
            log.check("mindeg.a-set-inequality", f <= bound, || {
                format!("f(z_{} | B) = {f} exceeds {bound}", i + 1)
            })?;
        }
        let d = g.neighbor_list(self.z[0]).len();
        log.check("mindeg.b-size", self.b.len() + p >= d + self.rp(), || {
            format!("|B| = {} below d(z_1) - p + r_p = {}", self.b.len(), d + self.rp() - p)
        })
    }
}

/// Greedy growth: repeatedly append the lowest-id vertex whose inequality
/// holds as the new last member, while `p < t - 1`. Members already present
/// only get slack when `B` shrinks and `p` grows, so only the newcomer is
/// tested.
pub fn grow_a_set(g: &MultiGraph, z1: Vertex, t: usize) -> ASet {
    extend_a_set(g, ASet::single(g, z1), t)
}

pub(crate) fn extend_a_set(g: &MultiGraph, mut a: ASet, t: usize) -> ASet {
    while a.p() + 1 < t {
        let p1 = a.p() + 1;
        let pick = g.vertices().find(|&v| {
            if a.contains(v) {
                return false;
            }
            let rest: Vec<Vertex> = a.b.iter().copied().filter(|&x| x != v).collect();
            let r = a.rp() + usize::from(!g.adjacent(a.z[0], v));
            g.missing_count(v, &rest) <= 2 * p1 + r
        });
        match pick {
            Some(v) => a.push(g, v),
            None => break,
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn complete_graph_reaches_t_minus_one() {
        for t in 2..5 {
            let g = MultiGraph::complete(7 * t + 1);
            let a = grow_a_set(&g, 0, t);
            assert_eq!(a.p(), t - 1);
            assert_eq!(a.z, (0..t).collect::<Vec<_>>()[..t - 1].to_vec());
            assert_eq!(a.rp(), 1);
            assert!(a.audit(&g, &mut AuditLog::new()).is_ok());
        }
    }

    #[test]
    fn star_stops_at_one() {
        let edges: Vec<_> = (1..30).map(|v| (0, v)).collect();
        let g = MultiGraph::from_edges(30, &edges);
        let a = grow_a_set(&g, 0, 3);
        assert_eq!(a.p(), 1);
        assert_eq!(a.b.len(), 29);
    }

    #[test]
    fn random_regular_audit() {
        let mut rng = gen::rng(7);
        for _ in 0..10 {
            let g = gen::random_mindeg(30, 16, 0.5, &mut rng).unwrap();
            let z1 = g.vertices().max_by_key(|&v| (g.degree(v), usize::MAX - v)).unwrap();
            let a = grow_a_set(&g, z1, 2);
            let mut log = AuditLog::new();
            a.audit(&g, &mut log).unwrap();
            // recount r by hand
            let outside = a.z.iter().filter(|&&z| !g.adjacent(a.z[0], z)).count();
            assert_eq!(a.rp(), outside);
        }
    }
}
