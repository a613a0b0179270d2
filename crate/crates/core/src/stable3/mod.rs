//! Strong `K_{2⌊n/5⌋}` immersions in graphs with no stable set of size three.
//!
//! The graph is trimmed to `5s` vertices. Each level finds an induced
//! five-cycle, recurses on the other `5(s - 1)` vertices and joins two cycle
//! vertices to the inner branch set. A level can also stop early on a large
//! clique. Edges are deleted only where the five-cycle search would
//! otherwise get stuck, and only when no stable triple appears.

mod sets;

pub use sets::{choose_full_pair, extend_nonneighbour_sets, link_branch_pair, Stable3State};

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::audit::{Anomaly, AuditLog};
use crate::certificate::{trace_to_certificate, verify, Fingerprint, ImmersionCertificate, ReplayError, SplitTrace};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Debug, Error)]
pub enum Stable3Error {
    #[error("input must be simple")]
    NotSimple,
    #[error("stable set {0:?} of size three")]
    StableTriple([Vertex; 3]),
    #[error("{order} vertices, need at least 5")]
    TooSmall { order: usize },
    #[error(transparent)]
    Anomaly(#[from] Anomaly),
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

impl Stable3Error {
    pub fn anomaly(&self) -> Option<&Anomaly> {
        match self {
            Stable3Error::Anomaly(a) => Some(a),
            _ => None,
        }
    }
}

/// Three pairwise non-adjacent vertices, lexicographically first.
pub fn find_stable_triple(g: &MultiGraph) -> Option<[Vertex; 3]> {
    let vs = g.vertex_list();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            if g.adjacent(a, b) {
                continue;
            }
            if let Some(&c) = vs[j + 1..].iter().find(|&&c| !g.adjacent(a, c) && !g.adjacent(b, c)) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

pub fn is_stable3_free(g: &MultiGraph) -> bool {
    find_stable_triple(g).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C5Search {
    /// `a_1 .. a_5` in cycle order.
    Cycle([Vertex; 5]),
    /// The graph is a disjoint union of these cliques.
    Cliques(Vec<Vec<Vertex>>),
    /// This edge was deleted without creating a stable triple; search again.
    EdgeDeleted(Vertex, Vertex),
}

fn closed_nbhd(g: &MultiGraph, v: Vertex) -> BTreeSet<Vertex> {
    let mut s: BTreeSet<Vertex> = g.neighbors(v).map(|(w, _)| w).collect();
    s.insert(v);
    s
}

/// One step of the five-cycle search on a graph with no stable triple.
///
/// Takes the first edge `a_1 a_2` whose ends have different closed
/// neighbourhoods, oriented so `a_3 ∈ N(a_2) ∖ N[a_1]` exists. Then `a_4`
/// misses `a_1, a_2` and `a_5` misses `a_2, a_3`. If `a_4` does not exist
/// then deleting `a_1 a_2` creates no stable triple, and likewise `a_2 a_3`
/// for `a_5`.
pub fn find_induced_c5(g: &mut MultiGraph) -> C5Search {
    let first = g.edges().into_iter().find_map(|(u, v, _)| {
        let (nu, nv) = (closed_nbhd(g, u), closed_nbhd(g, v));
        if nu == nv {
            None
        } else if let Some(&w) = nv.difference(&nu).next() {
            Some((u, v, w))
        } else {
            Some((v, u, *nu.difference(&nv).next().unwrap()))
        }
    });
    let Some((a1, a2, a3)) = first else {
        return C5Search::Cliques(components(g));
    };
    let missing_both = |g: &MultiGraph, x: Vertex, y: Vertex| {
        g.vertices().find(|&w| w != x && w != y && !g.adjacent(w, x) && !g.adjacent(w, y))
    };
    let Some(a4) = missing_both(g, a1, a2) else {
        g.remove_edge(a1, a2).expect("edge exists");
        return C5Search::EdgeDeleted(a1.min(a2), a1.max(a2));
    };
    let Some(a5) = missing_both(g, a2, a3) else {
        g.remove_edge(a2, a3).expect("edge exists");
        return C5Search::EdgeDeleted(a2.min(a3), a2.max(a3));
    };
    C5Search::Cycle([a1, a2, a3, a4, a5])
}

fn components(g: &MultiGraph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.id_bound()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = Vec::new();
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            comp.push(u);
            for (w, _) in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn is_clique(g: &MultiGraph, vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v)))
}

fn is_induced_c5(g: &MultiGraph, c: &[Vertex; 5]) -> bool {
    (0..5).all(|k| g.adjacent(c[k], c[(k + 1) % 5]) && !g.adjacent(c[k], c[(k + 2) % 5]))
}

/// How a recursion level produced its branch set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelExit {
    /// Five vertices: any edge.
    Edge,
    /// Disjoint union of at most two cliques: the larger one.
    TwoCliques,
    /// A cycle vertex with too many non-neighbours: they form a clique with
    /// the two cycle vertices opposite it.
    NonNeighbourClique,
    /// Inner branch set plus two cycle vertices.
    Cycle,
}

#[derive(Clone, Debug)]
pub struct Stable3Outcome {
    pub certificate: ImmersionCertificate,
    /// Outermost level first.
    pub levels: Vec<LevelExit>,
    pub deleted: Vec<(Vertex, Vertex)>,
    pub extension_moves: usize,
}

struct Ctx<'a> {
    trace: SplitTrace,
    deleted: Vec<(Vertex, Vertex)>,
    used: BTreeSet<(Vertex, Vertex)>,
    levels: Vec<LevelExit>,
    moves: usize,
    log: &'a mut AuditLog,
}

/// Strong `K_{2⌊n/5⌋}` immersion, verified against both the edge-reduced
/// graph and `g`.
pub fn strong_immersion_stable3(g: &MultiGraph, log: &mut AuditLog) -> Result<Stable3Outcome, Stable3Error> {
    if !g.is_simple() {
        return Err(Stable3Error::NotSimple);
    }
    if let Some(triple) = find_stable_triple(g) {
        return Err(Stable3Error::StableTriple(triple));
    }
    let n = g.order();
    let s = n / 5;
    if s == 0 {
        return Err(Stable3Error::TooSmall { order: n });
    }
    let keep: Vec<Vertex> = g.vertex_list().into_iter().take(5 * s).collect();
    let mut ctx = Ctx {
        trace: SplitTrace::new(),
        deleted: Vec::new(),
        used: BTreeSet::new(),
        levels: Vec::new(),
        moves: 0,
        log,
    };
    let mut branch = level(g.induced(&keep), s, &mut ctx)?;
    branch.sort_unstable();
    let log = ctx.log;

    let mut reduced = g.clone();
    for &(u, v) in &ctx.deleted {
        reduced.remove_edge(u, v).expect("deleted edges come from g");
    }
    let mut cert = trace_to_certificate(&reduced, &ctx.trace, &branch)?;
    cert.strong = true;
    let on_reduced = verify(&reduced, &cert);
    log.check("stable3.verifies-on-reduced", on_reduced.is_accept(), || {
        format!("{:?}", on_reduced.violations())
    })?;
    cert.host = Fingerprint::of(g);
    let on_input = verify(g, &cert);
    log.check("stable3.verifies-on-input", on_input.is_accept(), || {
        format!("{:?}", on_input.violations())
    })?;
    log.check("stable3.order", cert.branch.len() == 2 * s, || {
        format!("branch set of {} vertices, expected {}", cert.branch.len(), 2 * s)
    })?;
    Ok(Stable3Outcome {
        certificate: cert,
        levels: ctx.levels,
        deleted: ctx.deleted,
        extension_moves: ctx.moves,
    })
}

/// Branch set of a strong `K_{2s}` immersion in `g`, which has exactly `5s`
/// vertices and no stable triple.
fn level(mut g: MultiGraph, s: usize, ctx: &mut Ctx) -> Result<Vec<Vertex>, Stable3Error> {
    let want = 2 * s;
    if s == 1 {
        let e = g.edges().first().map(|&(u, v, _)| vec![u, v]);
        ctx.log.check("stable3.base-edge", e.is_some(), || "five vertices and no edge".into())?;
        ctx.levels.push(LevelExit::Edge);
        return Ok(e.unwrap());
    }
    let cycle = loop {
        match find_induced_c5(&mut g) {
            C5Search::Cycle(c) => break c,
            C5Search::EdgeDeleted(u, v) => {
                let triple = g.vertices().find(|&w| w != u && w != v && !g.adjacent(w, u) && !g.adjacent(w, v));
                ctx.log.check("stable3.deletion-keeps-free", triple.is_none(), || {
                    format!("deleting {u}-{v} leaves {triple:?} non-adjacent to both")
                })?;
                ctx.deleted.push((u, v));
            }
            C5Search::Cliques(parts) => {
                let big = parts.iter().max_by_key(|p| p.len()).cloned().unwrap_or_default();
                ctx.log.check(
                    "stable3.two-cliques",
                    parts.len() <= 2 && parts.iter().all(|p| is_clique(&g, p)) && big.len() >= want,
                    || format!("components {parts:?} are not two cliques with one of order {want}"),
                )?;
                ctx.levels.push(LevelExit::TwoCliques);
                return Ok(big[..want].to_vec());
            }
        }
    };
    ctx.log.check("stable3.induced-cycle", is_induced_c5(&g, &cycle), || {
        format!("{cycle:?} is not an induced five-cycle")
    })?;
    let rest: Vec<Vertex> = g.vertices().filter(|v| !cycle.contains(v)).collect();
    let t = s - 1;
    let mut st = Stable3State::new(&g, cycle, rest, t);
    if let Some(k) = (0..5).find(|&k| st.nonnbr[k].len() > 2 * t) {
        let mut clique: Vec<Vertex> = st.nonnbr[k].iter().copied().collect();
        clique.extend([cycle[(k + 2) % 5], cycle[(k + 3) % 5]]);
        clique.sort_unstable();
        ctx.log.check("stable3.nonneighbour-clique", is_clique(&g, &clique) && clique.len() >= want, || {
            format!("{clique:?} is not a clique of order {want}")
        })?;
        ctx.levels.push(LevelExit::NonNeighbourClique);
        return Ok(clique[..want].to_vec());
    }
    ctx.levels.push(LevelExit::Cycle);
    let inner = level(g.induced(&st.rest), t, ctx)?;
    st.set_branch(inner);
    ctx.moves += extend_nonneighbour_sets(&mut st, ctx.log)?;
    choose_full_pair(&mut st, ctx.log)?;
    let trace = link_branch_pair(&g, &st, ctx.log)?;
    let mut fresh = true;
    for e in sets::trace_edges(&trace) {
        fresh &= ctx.used.insert(e);
    }
    ctx.log.check("stable3.levels-edge-disjoint", fresh, || {
        "a linking edge was already used by another level".into()
    })?;
    ctx.trace.extend(trace);
    let mut branch = st.branch.clone();
    branch.extend([st.cycle[0], st.cycle[2]]);
    Ok(branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::{immersion_search, SearchBudget, SearchOutcome};
    use proptest::prelude::*;

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
    fn stable_triples() {
        assert!(is_stable3_free(&MultiGraph::cycle(5)));
        assert_eq!(find_stable_triple(&MultiGraph::cycle(6)), Some([0, 2, 4]));
        assert!(!is_stable3_free(&petersen()));
        assert!(is_stable3_free(&petersen().complement().unwrap()));
    }

    #[test]
    fn c5_finds_itself() {
        let mut g = MultiGraph::cycle(5);
        let C5Search::Cycle(c) = find_induced_c5(&mut g) else {
            panic!("no cycle");
        };
        assert!(is_induced_c5(&g, &c));
    }

    #[test]
    fn two_cliques_are_reported() {
        let mut g = gen::disjoint_union(&MultiGraph::complete(4), &MultiGraph::complete(4));
        match find_induced_c5(&mut g) {
            C5Search::Cliques(parts) => assert_eq!(parts, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bridge_between_triangles_is_deleted() {
        let mut g = gen::disjoint_union(&MultiGraph::complete(3), &MultiGraph::complete(3));
        g.add_edge(2, 3);
        assert!(is_stable3_free(&g));
        assert_eq!(find_induced_c5(&mut g), C5Search::EdgeDeleted(2, 3));
        assert!(is_stable3_free(&g));
        assert!(matches!(find_induced_c5(&mut g), C5Search::Cliques(_)));
    }

    #[test]
    fn random_cotriangle_cycles_are_induced() {
        for seed in 0..30 {
            let mut g = gen::cotriangle(15, 0.5, &mut gen::rng(seed));
            let edges = g.edge_count();
            let mut steps = 0;
            loop {
                match find_induced_c5(&mut g) {
                    C5Search::Cycle(c) => {
                        assert!(is_induced_c5(&g, &c));
                        break;
                    }
                    C5Search::EdgeDeleted(..) => {
                        steps += 1;
                        assert!(is_stable3_free(&g));
                    }
                    C5Search::Cliques(parts) => {
                        assert!(parts.len() <= 2);
                        break;
                    }
                }
            }
            assert_eq!(g.edge_count() + steps, edges);
        }
    }

    #[test]
    fn c5_gives_an_edge() {
        let mut log = AuditLog::new();
        let out = strong_immersion_stable3(&MultiGraph::cycle(5), &mut log).unwrap();
        assert_eq!(out.certificate.branch.len(), 2);
        assert_eq!(out.levels, vec![LevelExit::Edge]);
    }

    #[test]
    fn small_and_unfit_inputs_are_rejected() {
        let mut log = AuditLog::new();
        assert!(matches!(
            strong_immersion_stable3(&MultiGraph::complete(4), &mut log),
            Err(Stable3Error::TooSmall { order: 4 })
        ));
        assert!(matches!(
            strong_immersion_stable3(&MultiGraph::cycle(7), &mut log),
            Err(Stable3Error::StableTriple(_))
        ));
    }

    #[test]
    fn cocktail_party_on_ten_vertices() {
        let g = gen::cocktail(5);
        let mut log = AuditLog::new();
        let out = strong_immersion_stable3(&g, &mut log).unwrap();
        let cert = &out.certificate;
        assert_eq!(cert.branch.len(), 4);
        assert!(verify(&g, cert).is_accept());
        assert!(cert.interiors_avoid_branch());
        // the oracle agrees a strong K4 exists
        let found = immersion_search(&g, 4, true, &SearchBudget::default());
        assert!(matches!(found, SearchOutcome::Found(_)));
    }

    #[test]
    fn linking_run_on_a_cycle_level() {
        // C5 blown up by K2 has no stable triple and no large clique
        let g = gen::blow_up(&MultiGraph::cycle(5), 2);
        let mut log = AuditLog::new();
        let out = strong_immersion_stable3(&g, &mut log).unwrap();
        assert_eq!(out.certificate.branch.len(), 4);
        assert!(verify(&g, &out.certificate).is_accept());
        assert!(out.certificate.interiors_avoid_branch());
    }

    #[test]
    fn fifteen_vertex_cotriangles_give_strong_k6() {
        let mut cycle_levels = 0;
        for seed in 0..100 {
            let g = gen::cotriangle(15, 0.4, &mut gen::rng(seed));
            let mut log = AuditLog::new();
            let out = strong_immersion_stable3(&g, &mut log).unwrap();
            assert_eq!(out.certificate.branch.len(), 6);
            assert!(verify(&g, &out.certificate).is_accept());
            assert!(out.certificate.interiors_avoid_branch());
            cycle_levels += out.levels.iter().filter(|&&l| l == LevelExit::Cycle).count();
            if out.levels[0] == LevelExit::Cycle {
                assert!(log.count("stable3.two-full-sets") >= 1);
                assert!(log.count("stable3.helpers-suffice") >= 1);
            }
        }
        assert!(cycle_levels > 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn certificates_verify_strongly(seed in any::<u64>(), n in 5usize..32, p in 0.1f64..0.9) {
            let g = gen::cotriangle(n, p, &mut gen::rng(seed));
            let mut log = AuditLog::new();
            let out = strong_immersion_stable3(&g, &mut log).unwrap();
            prop_assert_eq!(out.certificate.branch.len(), 2 * (n / 5));
            prop_assert!(verify(&g, &out.certificate).is_accept());
            prop_assert!(out.certificate.interiors_avoid_branch());
            prop_assert_eq!(log.count("stable3.deletion-keeps-free"), out.deleted.len());
        }
    }
}
