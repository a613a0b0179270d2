//! Immersion certificates and the independent verifier.
//!
//! A certificate lists one host vertex per pattern vertex and one host walk per
//! pattern edge. Pattern edges are always taken in lexicographic order of
//! `(i, j)` with `i < j`, so the routes vector lines up with
//! [`Pattern::edges`].

mod format;
mod trace;

pub use format::{parse_certificate, write_certificate, CertFormatError};
pub use trace::{trace_to_certificate, ReplayError, SplitTrace, TraceOp, WalkStore};

use std::collections::BTreeMap;
use std::fmt;

use crate::multigraph::{MultiGraph, Vertex};

/// Cheap summary of a host so that a certificate for another graph fails fast.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub degrees: Vec<usize>,
    pub hash: u64,
}

impl Fingerprint {
    pub fn of(g: &MultiGraph) -> Self {
        // FNV-1a over the sorted edge multiset
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        let mut edges = g.edges();
        edges.sort_unstable();
        for (u, v, k) in edges {
            for word in [u as u64, v as u64, k as u64] {
                for byte in word.to_le_bytes() {
                    hash ^= byte as u64;
                    hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        Fingerprint {
            order: g.order(),
            degrees: g.degree_sequence(),
            hash,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Clique(usize),
    Graph {
        order: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl Pattern {
    pub fn order(&self) -> usize {
        match self {
            Pattern::Clique(t) => *t,
            Pattern::Graph { order, .. } => *order,
        }
    }

    /// Normalised edge list: `i < j`, sorted, duplicates kept.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Pattern::Clique(t) => {
                let mut out = Vec::with_capacity(t * t.saturating_sub(1) / 2);
                for i in 0..*t {
                    for j in i + 1..*t {
                        out.push((i, j));
                    }
                }
                out
            }
            Pattern::Graph { edges, .. } => {
                let mut out: Vec<(usize, usize)> =
                    edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                out.sort_unstable();
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmersionCertificate {
    pub host: Fingerprint,
    pub pattern: Pattern,
    pub branch: Vec<Vertex>,
    pub routes: Vec<Vec<Vertex>>,
    pub strong: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Fingerprint,
    BranchCount { expected: usize, found: usize },
    BranchAbsent { pattern: usize, host: Vertex },
    BranchCollision { first: usize, second: usize, host: Vertex },
    RouteCount { expected: usize, found: usize },
    SelfLoopPattern { edge: (usize, usize) },
    Endpoints { route: usize, edge: (usize, usize) },
    NotAdjacent { route: usize, u: Vertex, v: Vertex },
    Overused { u: Vertex, v: Vertex, used: u32, available: u32 },
    StrongInterior { route: usize, vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Fingerprint => write!(f, "host fingerprint does not match"),
            Violation::BranchCount { expected, found } => {
                write!(f, "expected {expected} branch vertices, found {found}")
            }
            Violation::BranchAbsent { pattern, host } => {
                write!(f, "branch vertex {host} (pattern {pattern}) is not in the host")
            }
            Violation::BranchCollision {
                first,
                second,
                host,
            } => write!(f, "pattern vertices {first} and {second} both map to {host}"),
            Violation::RouteCount { expected, found } => {
                write!(f, "expected {expected} routes, found {found}")
            }
            Violation::SelfLoopPattern { edge } => {
                write!(f, "pattern edge {edge:?} is a loop")
            }
            Violation::Endpoints { route, edge } => write!(
                f,
                "route {route} does not join the images of pattern edge {}-{}",
                edge.0, edge.1
            ),
            Violation::NotAdjacent { route, u, v } => {
                write!(f, "route {route} steps along {u}-{v}, which is not a host edge")
            }
            Violation::Overused {
                u,
                v,
                used,
                available,
            } => write!(f, "edge {u}-{v} used {used} times but has multiplicity {available}"),
            Violation::StrongInterior { route, vertex } => {
                write!(f, "route {route} passes through branch vertex {vertex}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Vec<Violation>),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Accept => &[],
            Verdict::Reject(v) => v,
        }
    }
}

/// Checks every condition of a (strong) immersion directly against `g`.
pub fn verify(g: &MultiGraph, cert: &ImmersionCertificate) -> Verdict {
    let mut bad = Vec::new();
    if Fingerprint::of(g) != cert.host {
        bad.push(Violation::Fingerprint);
    }
    let order = cert.pattern.order();
    if cert.branch.len() != order {
        bad.push(Violation::BranchCount {
            expected: order,
            found: cert.branch.len(),
        });
        return Verdict::Reject(bad);
    }
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, &h) in cert.branch.iter().enumerate() {
        if !g.contains(h) {
            bad.push(Violation::BranchAbsent {
                pattern: i,
                host: h,
            });
        }
        if let Some(&j) = owner.get(&h) {
            bad.push(Violation::BranchCollision {
                first: j,
                second: i,
                host: h,
            });
        } else {
            owner.insert(h, i);
        }
    }
    let pedges = cert.pattern.edges();
    if pedges.len() != cert.routes.len() {
        bad.push(Violation::RouteCount {
            expected: pedges.len(),
            found: cert.routes.len(),
        });
        return Verdict::Reject(bad);
    }
    let mut usage: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
    for (r, (&(i, j), route)) in pedges.iter().zip(&cert.routes).enumerate() {
        if i == j || i >= order || j >= order {
            bad.push(Violation::SelfLoopPattern { edge: (i, j) });
            continue;
        }
        let (a, b) = (cert.branch[i], cert.branch[j]);
        let ends_ok = route.len() >= 2
            && ((route[0] == a && route[route.len() - 1] == b)
                || (route[0] == b && route[route.len() - 1] == a));
        if !ends_ok {
            bad.push(Violation::Endpoints {
                route: r,
                edge: (i, j),
            });
        }
        for w in route.windows(2) {
            let (u, v) = (w[0], w[1]);
            if u == v || !g.adjacent(u, v) {
                bad.push(Violation::NotAdjacent { route: r, u, v });
            } else {
                *usage.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        if cert.strong && route.len() > 2 {
            for &x in &route[1..route.len() - 1] {
                if owner.contains_key(&x) {
                    bad.push(Violation::StrongInterior {
                        route: r,
                        vertex: x,
                    });
                }
            }
        }
    }
    for (&(u, v), &used) in &usage {
        let available = g.multiplicity(u, v);
        if used > available {
            bad.push(Violation::Overused {
                u,
                v,
                used,
                available,
            });
        }
    }
    if bad.is_empty() {
        Verdict::Accept
    } else {
        Verdict::Reject(bad)
    }
}

/// Removes closed subwalks so every route becomes a path. Only ever drops
/// edge uses, so disjointness and strongness carry over.
pub fn normalize_routes(
    g: &MultiGraph,
    cert: &ImmersionCertificate,
) -> Result<ImmersionCertificate, Verdict> {
    let verdict = verify(g, cert);
    if !verdict.is_accept() {
        return Err(verdict);
    }
    let mut out = cert.clone();
    for route in &mut out.routes {
        *route = shortcut_walk(route);
    }
    Ok(out)
}

/// Cuts a walk at the first repeat of each vertex: `a,b,c,b,d -> a,b,d`.
pub fn shortcut_walk(walk: &[Vertex]) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::with_capacity(walk.len());
    let mut pos: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in walk {
        if let Some(&p) = pos.get(&v) {
            for dropped in path.drain(p + 1..) {
                pos.remove(&dropped);
            }
        } else {
            pos.insert(v, path.len());
            path.push(v);
        }
    }
    path
}

impl ImmersionCertificate {
    /// Certificate for `K_t` built from a clique already present in `g`.
    pub fn from_clique(g: &MultiGraph, clique: &[Vertex]) -> Self {
        let t = clique.len();
        let mut routes = Vec::new();
        for i in 0..t {
            for j in i + 1..t {
                routes.push(vec![clique[i], clique[j]]);
            }
        }
        ImmersionCertificate {
            host: Fingerprint::of(g),
            pattern: Pattern::Clique(t),
            branch: clique.to_vec(),
            routes,
            strong: true,
        }
    }

    pub fn is_path_form(&self) -> bool {
        self.routes.iter().all(|r| {
            let mut seen = r.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// True when no route interior meets a branch vertex.
    pub fn interiors_avoid_branch(&self) -> bool {
        self.routes.iter().all(|r| {
            r.len() <= 2 || r[1..r.len() - 1].iter().all(|x| !self.branch.contains(x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_identity() -> (MultiGraph, ImmersionCertificate) {
        let g = MultiGraph::complete(3);
        let c = ImmersionCertificate::from_clique(&g, &[0, 1, 2]);
        (g, c)
    }

    #[test]
    fn accepts_identity_on_k3() {
        let (g, c) = k3_identity();
        assert_eq!(verify(&g, &c), Verdict::Accept);
    }

    #[test]
    fn c5_hosts_k2_strongly() {
        let g = MultiGraph::cycle(5);
        let c = ImmersionCertificate::from_clique(&g, &[0, 1]);
        assert!(c.strong);
        assert!(verify(&g, &c).is_accept());
    }

    #[test]
    fn k4_shared_edge_rejected() {
        let g = MultiGraph::complete(4);
        let mut c = ImmersionCertificate::from_clique(&g, &[0, 1, 2, 3]);
        c.strong = false;
        // route for 0-2 detours through 0-1, which is also the 0-1 route
        c.routes[1] = vec![0, 1, 2];
        let v = verify(&g, &c);
        assert!(v.violations().contains(&Violation::Overused {
            u: 0,
            v: 1,
            used: 2,
            available: 1
        }));
    }

    #[test]
    fn strong_flag_checks_interiors() {
        let g = MultiGraph::complete(4);
        let mut c = ImmersionCertificate::from_clique(&g, &[0, 1, 2]);
        c.routes[1] = vec![0, 3, 1, 2];
        c.routes[0] = vec![0, 1];
        c.routes[2] = vec![1, 2];
        // 1-2 used twice
        assert!(!verify(&g, &c).is_accept());
        c.routes[2] = vec![1, 3, 2];
        c.routes[1] = vec![0, 2];
        assert!(verify(&g, &c).is_accept());
        c.routes[1] = vec![0, 3, 1, 0, 2];
        c.strong = false;
        assert!(!verify(&g, &c).is_accept());
    }

    #[test]
    fn walk_shortcut() {
        assert_eq!(shortcut_walk(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(shortcut_walk(&[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        assert_eq!(shortcut_walk(&[0, 1, 2, 0, 4, 2, 5]), vec![0, 4, 2, 5]);
    }

    #[test]
    fn normalization_keeps_verification() {
        let mut g = MultiGraph::new(5);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 1), (1, 4)] {
            g.add_edge(u, v);
        }
        let c = ImmersionCertificate {
            host: Fingerprint::of(&g),
            pattern: Pattern::Clique(2),
            branch: vec![0, 4],
            routes: vec![vec![0, 1, 2, 3, 1, 4]],
            strong: true,
        };
        assert!(verify(&g, &c).is_accept());
        let n = normalize_routes(&g, &c).unwrap();
        assert_eq!(n.routes, vec![vec![0, 1, 4]]);
        assert!(n.is_path_form());
        assert!(verify(&g, &n).is_accept());
    }

    #[test]
    fn mutations_rejected() {
        let (g, c) = k3_identity();
        let mut dropped = c.clone();
        dropped.routes.pop();
        assert!(!verify(&g, &dropped).is_accept());
        let mut collide = c.clone();
        collide.branch[1] = 0;
        assert!(!verify(&g, &collide).is_accept());
        let mut stale = c.clone();
        stale.host.hash ^= 1;
        assert_eq!(verify(&g, &stale), Verdict::Reject(vec![Violation::Fingerprint]));
    }
}
