//! Clique immersions from minimum degree.
//!
//! The driver works on a simple eulerian graph `G` whose degree shortfall
//! below `7t` sums to less than `7t`. Around a vertex `z_1` of degree at
//! least `7t` it grows an ordered set `A`, then suppresses the members of
//! `A` from last to first while keeping the graph outside `A` simple. If all
//! of `A` goes, the smaller graph has the same degrees and the driver starts
//! over on it. If some `z_q` is stuck, its neighbourhood yields either a
//! complete bipartite subgraph or a set `W` of nearly universal vertices;
//! `A` plus part of `W` is then completed to `K_t` inside `N(z_1)`, by the
//! dense-set lemma when `|A| ≤ t/2` and by [`link::main_linking`] otherwise.

mod aset;
mod complete;
mod extract;
pub mod link;
mod suppress;

pub use aset::{grow_a_set, ASet};
pub use complete::{kt_from_bipartite, kt_from_multipartite, routes_to_trace, MultipartiteRoute};
pub use extract::{extract_w, WOutcome};
pub use link::{factor_colour, main_linking, near_one_factorization, planted_link_state, LinkState};
pub use suppress::{FailureWitness, RoundOutcome, SuppressionState};

use std::collections::VecDeque;

use thiserror::Error;

use crate::audit::{anomaly, Anomaly, AuditLog};
use crate::certificate::{trace_to_certificate, verify, ImmersionCertificate, ReplayError, SplitTrace, TraceOp};
use crate::dense::{immersion_by_average, immersion_on_set, DenseError};
use crate::matching::{max_matching, MatchError};
use crate::multigraph::{GraphError, MultiGraph, Vertex};
use crate::oracle::{immersion_search, SearchBudget, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MindegError {
    #[error("input must be simple")]
    NotSimple,
    #[error("minimum degree {found} below {need}")]
    MinDegree { found: usize, need: usize },
    #[error("graph is not eulerian or its shortfall {deficiency} below 7t is not under {limit}")]
    NotDeficientEulerian { deficiency: usize, limit: usize },
    #[error("no vertex of degree {need} (maximum {max})")]
    NoHighDegree { max: usize, need: usize },
    #[error("sides {a} and {b} too small for t = {t}")]
    SidesTooSmall { a: usize, b: usize, t: usize },
    #[error("parts do not form a complete multipartite graph carrying K_t")]
    NotMultipartite,
    #[error("linking needs t/2 < p <= t, got p = {p}, t = {t}")]
    LinkCase { p: usize, t: usize },
    #[error("no member of A left to suppress")]
    Exhausted,
    #[error("search budget exhausted")]
    Budget,
    #[error(transparent)]
    Anomaly(#[from] Anomaly),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Dense(DenseError),
}

impl From<DenseError> for MindegError {
    fn from(e: DenseError) -> Self {
        match e {
            DenseError::Anomaly(a) => MindegError::Anomaly(a),
            other => MindegError::Dense(other),
        }
    }
}

impl MindegError {
    pub fn anomaly(&self) -> Option<&Anomaly> {
        match self {
            MindegError::Anomaly(a) => Some(a),
            _ => None,
        }
    }
}

/// `Σ_v max(0, t - d(v))`.
pub fn deficiency(g: &MultiGraph, t: usize) -> usize {
    g.vertices().map(|v| t.saturating_sub(g.degree(v))).sum()
}

fn is_deficient_eulerian(g: &MultiGraph, t: usize) -> bool {
    g.is_eulerian() && deficiency(g, 7 * t) < 7 * t
}

/// A vertex of maximum degree (lowest id on ties) if that degree is at
/// least `7t`.
pub fn find_high_degree(g: &MultiGraph, t: usize) -> Result<Vertex, MindegError> {
    let best = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), usize::MAX - v))
        .ok_or(MindegError::NoHighDegree { max: 0, need: 7 * t })?;
    let d = g.degree(best);
    if d >= 7 * t {
        Ok(best)
    } else if is_deficient_eulerian(g, t) {
        Err(anomaly("mindeg.high-degree-exists", format!("maximum degree {d} below 7t = {}", 7 * t)).into())
    } else {
        Err(MindegError::NoHighDegree { max: d, need: 7 * t })
    }
}

/// Deletes edges until every degree is even: first a maximum matching among
/// the odd vertices, then shortest paths between the remaining ones. The
/// result must still fall short of `7t` by less than `7t` in total.
pub fn eulerian_stand_in(g: &MultiGraph, t: usize) -> Result<(MultiGraph, SplitTrace), MindegError> {
    if !g.is_simple() {
        return Err(MindegError::NotSimple);
    }
    let mut h = g.clone();
    let mut trace = SplitTrace::new();
    let odd: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) % 2 == 1).collect();
    for (u, v) in max_matching(&h.induced(&odd)) {
        h.remove_edge(u, v)?;
        trace.push(TraceOp::DeleteEdge(u, v));
    }
    loop {
        let odd: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) % 2 == 1).collect();
        let Some(&s) = odd.first() else { break };
        let path = bfs_to_odd(&h, s).ok_or_else(|| {
            anomaly("mindeg.stand-in-path", format!("odd vertex {s} has no odd partner in its component"))
        })?;
        for w in path.windows(2) {
            h.remove_edge(w[0], w[1])?;
            trace.push(TraceOp::DeleteEdge(w[0], w[1]));
        }
    }
    let def = deficiency(&h, 7 * t);
    if !is_deficient_eulerian(&h, t) {
        return Err(MindegError::NotDeficientEulerian {
            deficiency: def,
            limit: 7 * t,
        });
    }
    Ok((h, trace))
}

fn bfs_to_odd(h: &MultiGraph, s: Vertex) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; h.id_bound()];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in h.neighbor_list(u) {
            if prev[w] != usize::MAX {
                continue;
            }
            prev[w] = u;
            if h.degree(w) % 2 == 1 {
                let mut path = vec![w];
                let mut x = w;
                while x != s {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct MindegOptions {
    /// Return a clique found by greedy search before running the machinery.
    pub shortcut: bool,
    /// Budget for the exhaustive fallback.
    pub budget: SearchBudget,
}

impl Default for MindegOptions {
    fn default() -> Self {
        MindegOptions {
            shortcut: false,
            budget: SearchBudget {
                nodes: 2_000_000,
                seconds: 20.0,
                max_order: 16,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MindegExit {
    Trivial,
    Clique,
    /// `|A| ≤ t/2`: the dense-set lemma on `N(z_1) ∪ M`.
    Dense,
    /// `|A| > t/2`: staged linking.
    Linking,
    Bipartite,
    /// No usable `W`: clique search inside the stuck neighbourhood.
    Fallback,
}

#[derive(Clone, Debug)]
pub struct MindegOutcome {
    pub certificate: ImmersionCertificate,
    pub exit: MindegExit,
    /// Graphs visited, counting the starting one.
    pub levels: usize,
    pub rounds: usize,
    pub restarts: usize,
}

/// Lowest-id greedy clique of size `t`, tried from every start vertex.
pub(crate) fn greedy_clique(g: &MultiGraph, t: usize) -> Option<Vec<Vertex>> {
    for s in g.vertices() {
        let mut c = vec![s];
        for v in g.neighbor_list(s) {
            if c.len() == t {
                break;
            }
            if v != s && c.iter().all(|&u| g.adjacent(u, v)) {
                c.push(v);
            }
        }
        if c.len() == t {
            c.sort_unstable();
            return Some(c);
        }
    }
    None
}

/// `K_t` in a simple graph of minimum degree at least `7t + 7`.
pub fn mindeg_immersion(
    g: &MultiGraph,
    t: usize,
    opts: &MindegOptions,
    log: &mut AuditLog,
) -> Result<MindegOutcome, MindegError> {
    if !g.is_simple() {
        return Err(MindegError::NotSimple);
    }
    let need = 7 * t + 7;
    let found = g.min_degree().unwrap_or(0);
    if found < need {
        return Err(MindegError::MinDegree { found, need });
    }
    let (h, pre) = eulerian_stand_in(g, t)?;
    log.note("mindeg.stand-in");
    let (mut out, tail) = run(&h, t, opts, log)?;
    let mut full = pre;
    full.extend(tail);
    out.certificate = certify(g, &full, &out.certificate.branch, log)?;
    Ok(out)
}

/// `K_t` in a simple eulerian graph whose shortfall below `7t` sums to less
/// than `7t`.
pub fn mindeg_on_eulerian(
    g: &MultiGraph,
    t: usize,
    opts: &MindegOptions,
    log: &mut AuditLog,
) -> Result<MindegOutcome, MindegError> {
    if !g.is_simple() {
        return Err(MindegError::NotSimple);
    }
    if !is_deficient_eulerian(g, t) {
        return Err(MindegError::NotDeficientEulerian {
            deficiency: deficiency(g, 7 * t),
            limit: 7 * t,
        });
    }
    let (mut out, trace) = run(g, t, opts, log)?;
    out.certificate = certify(g, &trace, &out.certificate.branch, log)?;
    Ok(out)
}

fn certify(
    g: &MultiGraph,
    trace: &SplitTrace,
    branch: &[Vertex],
    log: &mut AuditLog,
) -> Result<ImmersionCertificate, MindegError> {
    let cert = trace_to_certificate(g, trace, branch)?;
    let verdict = verify(g, &cert);
    log.check("mindeg.certificate-verifies", verdict.is_accept(), || {
        format!("{:?}", verdict.violations())
    })?;
    Ok(cert)
}

fn placeholder(branch: Vec<Vertex>) -> ImmersionCertificate {
    ImmersionCertificate {
        host: crate::certificate::Fingerprint::of(&MultiGraph::new(0)),
        pattern: crate::certificate::Pattern::Clique(branch.len()),
        branch,
        routes: Vec::new(),
        strong: false,
    }
}

/// The construction proper. Returns the branch set (inside a placeholder
/// certificate) and the trace relative to `g`.
fn run(
    g: &MultiGraph,
    t: usize,
    opts: &MindegOptions,
    log: &mut AuditLog,
) -> Result<(MindegOutcome, SplitTrace), MindegError> {
    let mut stats = MindegOutcome {
        certificate: placeholder(Vec::new()),
        exit: MindegExit::Trivial,
        levels: 1,
        rounds: 0,
        restarts: 0,
    };
    if t <= 1 {
        let branch = g.vertices().take(t).collect();
        stats.certificate = placeholder(branch);
        return Ok((stats, SplitTrace::new()));
    }
    if opts.shortcut {
        if let Some(c) = greedy_clique(g, t) {
            stats.exit = MindegExit::Clique;
            stats.certificate = placeholder(c);
            return Ok((stats, SplitTrace::new()));
        }
    }
    let mut trace = SplitTrace::new();
    let mut cur = g.clone();
    'levels: loop {
        log.check("mindeg.level-deficient-eulerian", cur.is_simple() && is_deficient_eulerian(&cur, t), || {
            format!("level {} lost simplicity, parity or degree", stats.levels)
        })?;
        let z1 = find_high_degree(&cur, t)?;
        let mut a = grow_a_set(&cur, z1, t);
        a.audit(&cur, log)?;
        loop {
            let mut st = SuppressionState::new(&cur, a.clone(), t);
            st.rescan(log)?;
            let witness = loop {
                match st.round(log)? {
                    RoundOutcome::Witness(w) => break Some(w),
                    _ => {
                        stats.rounds += 1;
                        if st.q == 0 {
                            break None;
                        }
                    }
                }
            };
            let Some(w) = witness else {
                log.note("mindeg.level-recursion");
                trace.extend(st.trace);
                cur = st.graph;
                stats.levels += 1;
                continue 'levels;
            };
            let p = a.p();
            match extract_w(&w, t, log)? {
                WOutcome::Bipartite { side_a, side_b } => {
                    let inner = st.graph.induced(&w.x);
                    let (tail, branch) = kt_from_bipartite(&inner, &side_a, &side_b, t)?;
                    trace.extend(st.trace);
                    trace.extend(tail);
                    stats.exit = MindegExit::Bipartite;
                    stats.certificate = placeholder(branch);
                    return Ok((stats, trace));
                }
                WOutcome::W(ws) if ws.is_empty() => {
                    let (tail, branch) = fallback(&st.graph, &w.x, t, opts, log)?;
                    trace.extend(st.trace);
                    trace.extend(tail);
                    stats.exit = MindegExit::Fallback;
                    stats.certificate = placeholder(branch);
                    return Ok((stats, trace));
                }
                WOutcome::W(ws) => {
                    audit_w_claim(&cur, &a, &ws, log)?;
                    if ws.len() + p < t {
                        for &v in &ws {
                            a.push(&cur, v);
                        }
                        a = aset::extend_a_set(&cur, a, t);
                        a.audit(&cur, log)?;
                        log.note("mindeg.a-set-regrown");
                        stats.restarts += 1;
                        continue;
                    }
                    let hat: Vec<Vertex> = ws[..t - p].to_vec();
                    let (tail, branch, exit) = complete_on_m(&cur, &a, &hat, log)?;
                    trace.extend(tail);
                    stats.exit = exit;
                    stats.certificate = placeholder(branch);
                    return Ok((stats, trace));
                }
            }
        }
    }
}

/// `f_G(v | B) ≤ |W| + 2p + r_p` on `W`.
fn audit_w_claim(g: &MultiGraph, a: &ASet, w: &[Vertex], log: &mut AuditLog) -> Result<(), Anomaly> {
    let bound = w.len() + 2 * a.p() + a.rp();
    for &v in w {
        let f = g.missing_count(v, &a.b);
        log.check("mindeg.w-missing-in-b", f <= bound, || format!("f({v} | B) = {f} exceeds {bound}"))?;
    }
    Ok(())
}

/// Completes `M = A ∪ Â` inside `H = G[M ∪ (B ∖ Â)]`.
fn complete_on_m(
    g: &MultiGraph,
    a: &ASet,
    hat: &[Vertex],
    log: &mut AuditLog,
) -> Result<(SplitTrace, Vec<Vertex>, MindegExit), MindegError> {
    let (p, rp) = (a.p(), a.rp());
    let t = p + hat.len();
    let order: Vec<Vertex> = a.z.iter().chain(hat).copied().collect();
    let outside: Vec<Vertex> = a.b.iter().copied().filter(|v| !hat.contains(v)).collect();
    let mut u = order.clone();
    u.extend_from_slice(&outside);
    let h = g.induced(&u);
    let link = LinkState::new(h.clone(), order.clone(), outside, p, rp);
    link.check_initial(log)?;
    if 2 * p <= t {
        let f: Vec<usize> = order.iter().map(|&z| h.missing_degree(z)).collect();
        let sum: usize = f.iter().sum();
        let max = f.iter().copied().max().unwrap_or(0);
        log.check("mindeg.dense-sum", sum <= 3 * t * t, || format!("sum {sum} exceeds 3t^2 = {}", 3 * t * t))?;
        log.check("mindeg.dense-max", max <= 3 * t + rp, || format!("max {max} exceeds 3t + r_p = {}", 3 * t + rp))?;
        log.check("mindeg.dense-order", h.order() >= 7 * t + rp, || {
            format!("|U| = {} below 7t + r_p = {}", h.order(), 7 * t + rp)
        })?;
        let out = immersion_on_set(&h, &order, log)?;
        Ok((out.trace, out.branch, MindegExit::Dense))
    } else {
        let done = main_linking(link, log)?;
        Ok((done.trace, done.order, MindegExit::Linking))
    }
}

/// Clique search inside `G_q[X]` when no nonempty `W` was found.
fn fallback(
    gq: &MultiGraph,
    x: &[Vertex],
    t: usize,
    opts: &MindegOptions,
    log: &mut AuditLog,
) -> Result<(SplitTrace, Vec<Vertex>), MindegError> {
    let inner = gq.induced(x);
    if let Ok((size, out)) = immersion_by_average(&inner, &mut AuditLog::new()) {
        if size >= t {
            log.note("mindeg.exit-fallback-dense");
            return Ok((out.trace, out.branch[..t].to_vec()));
        }
    }
    match immersion_search(&inner, t, false, &opts.budget) {
        SearchOutcome::Found(cert) => {
            log.note("mindeg.exit-fallback-oracle");
            Ok((routes_to_trace(&cert), cert.branch))
        }
        _ => Err(anomaly(
            "mindeg.multipartite-exit",
            format!("no K_{t} found in the stuck neighbourhood of {} vertices", x.len()),
        )
        .into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn deficiency_examples() {
        assert_eq!(deficiency(&MultiGraph::complete(8), 1), 0);
        assert_eq!(find_high_degree(&MultiGraph::complete(8), 1).unwrap(), 0);
        assert_eq!(deficiency(&MultiGraph::cycle(4), 3), 4);
    }

    #[test]
    fn no_high_degree_in_regular_graph() {
        // 12-regular eulerian circulant on 30 vertices, t = 2 needs degree 14
        let mut g = MultiGraph::new(30);
        for v in 0..30 {
            for d in 1..=6 {
                g.add_edge(v, (v + d) % 30);
            }
        }
        assert!(g.is_eulerian());
        assert!(matches!(
            find_high_degree(&g, 2),
            Err(MindegError::NoHighDegree { max: 12, need: 14 })
        ));
    }

    #[test]
    fn stand_in_keeps_degrees_high() {
        let mut rng = gen::rng(5);
        for _ in 0..5 {
            let g = gen::random_mindeg(36, 21, 0.6, &mut rng).unwrap();
            let (h, trace) = eulerian_stand_in(&g, 2).unwrap();
            assert!(h.is_eulerian() && h.is_simple());
            assert_eq!(trace.replay(&g).unwrap(), h);
            assert!(deficiency(&h, 14) < 14);
        }
    }

    #[test]
    fn complete_graph_certificate() {
        let g = MultiGraph::complete(22);
        let mut log = AuditLog::new();
        let out = mindeg_immersion(&g, 2, &MindegOptions::default(), &mut log).unwrap();
        assert_eq!(out.certificate.branch.len(), 2);
        assert!(verify(&g, &out.certificate).is_accept());
        let short = MindegOptions {
            shortcut: true,
            ..MindegOptions::default()
        };
        let out = mindeg_immersion(&g, 2, &short, &mut AuditLog::new()).unwrap();
        assert_eq!(out.exit, MindegExit::Clique);
    }

    #[test]
    fn random_graphs_t2() {
        let mut rng = gen::rng(21);
        for _ in 0..5 {
            let g = gen::random_mindeg(40, 21, 0.6, &mut rng).unwrap();
            let mut log = AuditLog::new();
            let out = mindeg_immersion(&g, 2, &MindegOptions::default(), &mut log).unwrap();
            assert!(verify(&g, &out.certificate).is_accept());
            assert!(log.count("mindeg.outside-simple") >= 1);
        }
    }

    #[test]
    fn random_graphs_t3() {
        let mut rng = gen::rng(33);
        for _ in 0..3 {
            let g = gen::random_mindeg(44, 28, 0.75, &mut rng).unwrap();
            let mut log = AuditLog::new();
            let out = mindeg_immersion(&g, 3, &MindegOptions::default(), &mut log).unwrap();
            assert_eq!(out.certificate.branch.len(), 3);
            assert!(verify(&g, &out.certificate).is_accept());
        }
    }

    #[test]
    fn rejects_low_degree() {
        let g = MultiGraph::complete(10);
        assert!(matches!(
            mindeg_immersion(&g, 1, &MindegOptions::default(), &mut AuditLog::new()),
            Err(MindegError::MinDegree { found: 9, need: 14 })
        ));
    }
}
