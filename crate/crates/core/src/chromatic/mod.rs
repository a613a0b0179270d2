//! Clique immersions from chromatic number.
//!
//! Take an `ℓ`-critical subgraph with `ℓ = ⌈3.54t + 4⌉` and a vertex `v_0`
//! of least degree. In every `(ℓ-1)`-colouring of the rest, the
//! neighbourhood `N` of `v_0` sees every colour. Kempe exchanges push the
//! number of singleton colours of `N` to a local maximum. Two-coloured
//! chains between singletons `x_i` and doubletons `{y_j, y_j'}` are then
//! split off. Their outcome is recorded in a parity graph on `X ∪ Z`, with
//! one `z_j` per doubleton. Odd triangles of that graph are removed in two
//! layers, and one of four exits produces `K_t`:
//!
//! * a `z` of high degree in the first layer gives a clique on the `y`s;
//! * an `x` of high degree in the second layer does too;
//! * otherwise, after balancing swaps, the graph on `X ∪ {y_j}` is dense
//!   enough for the average-missing-degree lemma;
//! * when `t` singletons exist they already form a clique.

mod chains;
mod critical;
mod kempe;
mod methods;
mod parity;

pub use chains::{fix_chains, two_disjoint_paths, ChainFamily, DoublePair, PairType};
pub use critical::{critical_subgraph, is_critical};
pub use kempe::{greedy_coloring, maximize_singletons, ColoringState, Profile};
pub use methods::{corresponding_edges, split_method, Fragment, Method};
pub use parity::{Layer, ParityGraph};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::audit::{anomaly, Anomaly, AuditLog};
use crate::certificate::{trace_to_certificate, verify, Fingerprint, ImmersionCertificate, ReplayError, SplitTrace};
use crate::dense::{immersion_by_average, DenseError};
use crate::mindegree::{greedy_clique, mindeg_immersion, MindegError, MindegOptions};
use crate::multigraph::{GraphError, MultiGraph, Vertex};
use crate::oracle::{exact_chromatic, k_coloring, ChiOutcome, SearchBudget, SearchOutcome};

use chains::path_in;
use methods::{edge_images, host_vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChromaticError {
    #[error("input must be simple")]
    NotSimple,
    #[error("chromatic number {chi} below {need}")]
    ChromaticTooLow { chi: usize, need: usize },
    #[error("search budget exhausted")]
    Budget,
    #[error(transparent)]
    Anomaly(#[from] Anomaly),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Dense(DenseError),
    #[error(transparent)]
    Mindeg(MindegError),
}

impl From<DenseError> for ChromaticError {
    fn from(e: DenseError) -> Self {
        match e {
            DenseError::Anomaly(a) => ChromaticError::Anomaly(a),
            other => ChromaticError::Dense(other),
        }
    }
}

impl From<MindegError> for ChromaticError {
    fn from(e: MindegError) -> Self {
        match e {
            MindegError::Anomaly(a) => ChromaticError::Anomaly(a),
            MindegError::Budget => ChromaticError::Budget,
            other => ChromaticError::Mindeg(other),
        }
    }
}

impl ChromaticError {
    pub fn anomaly(&self) -> Option<&Anomaly> {
        match self {
            ChromaticError::Anomaly(a) => Some(a),
            _ => None,
        }
    }
}

/// `⌈3.54t + 4⌉`.
pub fn threshold(t: usize) -> usize {
    (354 * t + 400).div_ceil(100)
}

#[derive(Clone, Debug)]
pub struct ChromaticOptions {
    /// Return a clique found by greedy search before running the machinery.
    pub shortcut: bool,
    /// Budget for every exact colouring call.
    pub budget: SearchBudget,
}

impl Default for ChromaticOptions {
    fn default() -> Self {
        ChromaticOptions {
            shortcut: false,
            budget: SearchBudget {
                nodes: 20_000_000,
                seconds: 60.0,
                max_order: 16,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChromaticExit {
    Trivial,
    Clique,
    /// `v_0` has degree at least `7t + 7`: the minimum-degree construction.
    MinDegree,
    /// A `Z` vertex of degree at least `t` in the first layer.
    ZDegree,
    /// An `X` vertex of degree at least `t` in the second layer.
    XDegree,
    /// The average-missing-degree lemma on `X ∪ {y_j}`.
    Dense,
    /// `t` singletons, joined by their chains.
    Singletons,
}

#[derive(Clone, Debug)]
pub struct ChromaticOutcome {
    pub certificate: ImmersionCertificate,
    pub exit: ChromaticExit,
    /// `ℓ`.
    pub level: usize,
    pub critical_order: usize,
    /// `|N|`.
    pub nbhd: usize,
    pub alpha: usize,
    pub beta: usize,
    pub kempe_moves: usize,
    /// Doubleton pairs per type: straight, crossed, tangled.
    pub pair_types: [usize; 3],
    pub first_triangles: usize,
    pub second_triangles: usize,
    /// Non-adjacent pairs of the dense-exit graph, when it was built.
    pub missing: Option<usize>,
}

impl ChromaticOutcome {
    fn bare(level: usize) -> Self {
        ChromaticOutcome {
            certificate: ImmersionCertificate::from_clique(&MultiGraph::new(0), &[]),
            exit: ChromaticExit::Trivial,
            level,
            critical_order: 0,
            nbhd: 0,
            alpha: 0,
            beta: 0,
            kempe_moves: 0,
            pair_types: [0; 3],
            first_triangles: 0,
            second_triangles: 0,
            missing: None,
        }
    }
}

/// `K_t` in a simple graph of chromatic number at least `⌈3.54t + 4⌉`.
pub fn chromatic_immersion(
    g: &MultiGraph,
    t: usize,
    opts: &ChromaticOptions,
    log: &mut AuditLog,
) -> Result<ChromaticOutcome, ChromaticError> {
    if !g.is_simple() {
        return Err(ChromaticError::NotSimple);
    }
    let level = threshold(t);
    let chi = match exact_chromatic(g, &opts.budget) {
        ChiOutcome::Exact(k) => k,
        ChiOutcome::Exhausted { .. } => return Err(ChromaticError::Budget),
    };
    if chi < level {
        return Err(ChromaticError::ChromaticTooLow { chi, need: level });
    }
    let mut out = ChromaticOutcome::bare(level);
    if t <= 1 {
        let branch: Vec<Vertex> = g.vertices().take(t).collect();
        out.certificate = certify(g, &SplitTrace::new(), &branch, log)?;
        return Ok(out);
    }
    if opts.shortcut {
        if let Some(c) = greedy_clique(g, t) {
            out.exit = ChromaticExit::Clique;
            out.certificate = certify(g, &SplitTrace::new(), &c, log)?;
            return Ok(out);
        }
    }

    let gstar = critical_subgraph(g, level, &opts.budget)?;
    out.critical_order = gstar.order();
    let v0 = gstar
        .vertices()
        .min_by_key(|&v| (gstar.degree(v), v))
        .expect("critical graph is nonempty");
    let d0 = gstar.degree(v0);
    out.nbhd = d0;
    if d0 >= 7 * t + 7 {
        log.note("chromatic.exit-min-degree");
        let mopts = MindegOptions {
            shortcut: false,
            budget: opts.budget,
        };
        let inner = mindeg_immersion(&gstar, t, &mopts, log)?;
        let cert = ImmersionCertificate {
            host: Fingerprint::of(g),
            ..inner.certificate
        };
        let verdict = verify(g, &cert);
        log.check("chromatic.certificate-verifies", verdict.is_accept(), || {
            format!("{:?}", verdict.violations())
        })?;
        out.exit = ChromaticExit::MinDegree;
        out.certificate = cert;
        return Ok(out);
    }

    let nbhd = gstar.neighbor_list(v0);
    let mut host = gstar.clone();
    host.remove_vertex(v0)?;
    let colouring = match k_coloring(&host, level - 1, &opts.budget) {
        SearchOutcome::Found(c) => c,
        SearchOutcome::NotFound => {
            return Err(anomaly("chromatic.critical", format!("deleting {v0} left chromatic number {level}")).into())
        }
        SearchOutcome::Exhausted => return Err(ChromaticError::Budget),
    };
    let mut state = ColoringState::new(host, colouring, level - 1, nbhd);
    out.kempe_moves = maximize_singletons(&mut state, log)?;
    let prof = state.profile();
    let (alpha, beta) = (prof.alpha(), prof.beta());
    out.alpha = alpha;
    out.beta = beta;
    // every colour of N is a singleton, a doubleton, or used three times
    log.check("chromatic.colour-count", 3 * (level - 1) <= d0 + 2 * alpha + beta, || {
        format!("ℓ - 1 = {} colours but |N| = {d0}, α = {alpha}, β = {beta}", level - 1)
    })?;
    log.check("chromatic.alpha-beta-lower", 100 * (2 * alpha + beta) >= 262 * t + 300, || {
        format!("2α + β = {} below 2.62t + 3", 2 * alpha + beta)
    })?;

    let fam = fix_chains(&state, &prof)?;
    log.note("chromatic.chains-edge-disjoint");
    out.pair_types = [
        fam.count(PairType::Straight),
        fam.count(PairType::Crossed),
        fam.count(PairType::Tangled),
    ];
    let mut run = Pipeline::build(&state, prof, fam, log)?;
    run.pg
        .extract_triangles()
        .map_err(|e| anomaly("chromatic.triangles-maximal", e))?;
    run.check_disjoint_images(log)?;
    out.first_triangles = run.pg.first.len();
    out.second_triangles = run.pg.second.len();

    let (exit, branch) = if let Some(b) = run.exit_z_degree(t, log)? {
        (ChromaticExit::ZDegree, b)
    } else if let Some(b) = run.exit_x_degree(t, log)? {
        (ChromaticExit::XDegree, b)
    } else {
        match run.exit_dense(t, log, &mut out.missing)? {
            Some(b) => (ChromaticExit::Dense, b),
            None if alpha >= t => {
                log.note("chromatic.exit-singletons");
                let b: Vec<Vertex> = run.prof.singles[..t].to_vec();
                (ChromaticExit::Singletons, b)
            }
            None => {
                return Err(anomaly(
                    "chromatic.some-exit",
                    format!("no exit succeeded with α = {alpha}, β = {beta}, |N| = {d0}, t = {t}"),
                )
                .into())
            }
        }
    };
    out.exit = exit;
    out.certificate = certify(g, &run.trace, &branch, log)?;
    Ok(out)
}

fn certify(
    g: &MultiGraph,
    trace: &SplitTrace,
    branch: &[Vertex],
    log: &mut AuditLog,
) -> Result<ImmersionCertificate, ChromaticError> {
    let mut b = branch.to_vec();
    b.sort_unstable();
    let cert = trace_to_certificate(g, trace, &b)?;
    let verdict = verify(g, &cert);
    log.check("chromatic.certificate-verifies", verdict.is_accept(), || {
        format!("{:?}", verdict.violations())
    })?;
    Ok(cert)
}

/// State after the chains are split off.
struct Pipeline {
    prof: Profile,
    fam: ChainFamily,
    pg: ParityGraph,
    /// `G` with every split so far applied.
    work: MultiGraph,
    trace: SplitTrace,
    /// Triangles of either family already split.
    done: BTreeSet<[usize; 3]>,
}

impl Pipeline {
    fn build(state: &ColoringState, prof: Profile, fam: ChainFamily, log: &mut AuditLog) -> Result<Self, ChromaticError> {
        let (alpha, beta) = (prof.alpha(), prof.beta());
        let primed_end = |i: usize, j: usize| *fam.mixed[&(i, j)].last().unwrap() == prof.doubles[j].1;
        let pg = ParityGraph::from_chains(alpha, beta, &fam, primed_end);
        let mut run = Pipeline {
            prof,
            pg,
            work: state.graph.clone(),
            trace: SplitTrace::new(),
            done: BTreeSet::new(),
            fam: fam.clone(),
        };
        let n = state.graph.id_bound();
        let (mut g1, mut g2) = (MultiGraph::new(n), MultiGraph::new(n));
        let straight: Vec<Vec<Vertex>> = fam.doubles.values().flat_map(|d| d.paths.clone()).collect();
        for p in fam.singles.values().chain(fam.mixed.values()).chain(straight.iter()) {
            run.split(p)?;
            g1.add_edge(p[0], *p.last().unwrap());
        }
        for d in fam.doubles.values() {
            for &(u, v) in &d.edges {
                g2.add_edge(u, v);
            }
        }
        let union = g1.union(&g2);
        let immersed = union
            .edges()
            .iter()
            .all(|&(u, v, k)| run.work.multiplicity(u, v) >= k);
        log.check("chromatic.produced-immersed", immersed, || {
            "the produced and tangled edges are not all present after splitting".into()
        })?;
        let singles = &run.prof.singles;
        let clique = (0..alpha).all(|i| (i + 1..alpha).all(|j| g1.adjacent(singles[i], singles[j])));
        log.check("chromatic.singletons-joined", clique, || "produced edges miss a pair of singletons".into())?;
        for (u, v) in run.pg.edges_within(Layer::First) {
            let images = edge_images(&run.prof, &run.pg, u, v);
            let ok = images.iter().all(|&(a, b)| g1.adjacent(a, b));
            log.check("chromatic.parity-labels", ok, || {
                format!("label of {u}-{v} disagrees with the produced edges {images:?}")
            })?;
        }
        Ok(run)
    }

    fn split(&mut self, path: &[Vertex]) -> Result<(), ChromaticError> {
        if path.len() > 2 {
            self.work.split_off_path(path)?;
            self.trace.split_path(path);
        }
        Ok(())
    }

    fn check_disjoint_images(&self, log: &mut AuditLog) -> Result<(), ChromaticError> {
        let mut seen = BTreeSet::new();
        let mut ok = true;
        for &tri in self.pg.first.iter().chain(&self.pg.second) {
            for (u, v) in corresponding_edges(&self.prof, &self.pg, tri) {
                ok &= seen.insert((u.min(v), u.max(v)));
            }
        }
        log.check("chromatic.corresponding-disjoint", ok, || {
            "two triangles share a corresponding edge".into()
        })?;
        Ok(())
    }

    fn apply(&mut self, kind: Method, tri: [usize; 3], log: &mut AuditLog) -> Result<(), ChromaticError> {
        if !self.done.insert(tri) {
            return Ok(());
        }
        let frag = split_method(kind, tri, &self.pg, &self.prof)?;
        let want = if kind == Method::A { 3 } else if kind == Method::B { 1 } else { 2 };
        log.check("chromatic.method-edge-count", frag.paths.len() == want, || {
            format!("method {kind:?} produced {} edges", frag.paths.len())
        })?;
        for p in &frag.paths {
            self.split(p)?;
        }
        Ok(())
    }

    fn triangle_with(&self, family: &[[usize; 3]], a: usize, b: usize) -> Result<[usize; 3], ChromaticError> {
        family
            .iter()
            .copied()
            .find(|tri| tri.contains(&a) && tri.contains(&b))
            .ok_or_else(|| anomaly("chromatic.layer-triangle", format!("edge {a}-{b} is in no removed triangle")).into())
    }

    /// Joins `y_a` and `y_b` for `Z` vertices `a < b` inside a tangled pair.
    fn tangled_link(&mut self, a: usize, b: usize) -> Result<(), ChromaticError> {
        let (i, j) = (a - self.pg.alpha, b - self.pg.alpha);
        let edges = self.fam.doubles[&(i.min(j), i.max(j))].edges.clone();
        let (ya, yb) = (host_vertex(&self.prof, &self.pg, a), host_vertex(&self.prof, &self.pg, b));
        let path = path_in(&edges, ya, yb)
            .ok_or_else(|| anomaly("chromatic.chain-doubletons", format!("no chain {ya}-{yb} in a tangled pair")))?;
        self.split(&path)
    }

    /// Makes the current `y`s of `zs` pairwise adjacent, given that every
    /// pair is even in the inner layer `inner`, or lies in a removed
    /// triangle, or is tangled.
    fn clique_on(&mut self, zs: &[usize], inner: Layer, log: &mut AuditLog) -> Result<Vec<Vertex>, ChromaticError> {
        for (p, &a) in zs.iter().enumerate() {
            for &b in &zs[p + 1..] {
                match self.pg.layer(a, b) {
                    Layer::Absent => self.tangled_link(a, b)?,
                    Layer::First => {
                        let tri = self.triangle_with(&self.pg.first.clone(), a, b)?;
                        self.apply(Method::A, tri, log)?;
                    }
                    Layer::Second if inner == Layer::Inner => {
                        let tri = self.triangle_with(&self.pg.second.clone(), a, b)?;
                        self.apply(Method::B, tri, log)?;
                    }
                    _ => {
                        log.check("chromatic.high-degree-even", !self.pg.odd(a, b), || {
                            format!("{a}-{b} is odd after swapping")
                        })?;
                    }
                }
            }
        }
        let branch: Vec<Vertex> = zs.iter().map(|&z| host_vertex(&self.prof, &self.pg, z)).collect();
        let joined = branch
            .iter()
            .enumerate()
            .all(|(p, &u)| branch[p + 1..].iter().all(|&v| self.work.adjacent(u, v)));
        log.check("chromatic.high-degree-clique", joined, || format!("{branch:?} not pairwise joined"))?;
        Ok(branch)
    }

    /// Splits the neighbours of `v` within `layer` by parity, checks that
    /// each class is even inside and odd across, and swaps the odd class.
    fn even_up(&mut self, v: usize, layer: Layer, claim: &'static str, log: &mut AuditLog) -> Result<Vec<usize>, ChromaticError> {
        let nbrs: Vec<usize> = self.pg.zs().filter(|&w| w != v && self.pg.within(v, w, layer)).collect();
        let (odd, even): (Vec<usize>, Vec<usize>) = nbrs.iter().partition(|&&w| self.pg.odd(v, w));
        for (p, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[p + 1..] {
                if self.pg.within(a, b, layer) {
                    let across = odd.contains(&a) != odd.contains(&b);
                    log.check(claim, self.pg.odd(a, b) == across, || {
                        format!("{a}-{b} has the wrong parity for a maximal triangle family")
                    })?;
                }
            }
        }
        self.pg.swap(&odd);
        let mut all = odd;
        all.extend(even);
        all.sort_unstable();
        Ok(all)
    }

    fn exit_z_degree(&mut self, t: usize, log: &mut AuditLog) -> Result<Option<Vec<Vertex>>, ChromaticError> {
        let Some(z) = self.pg.zs().find(|&z| self.pg.degree_within(z, Layer::Second, true) >= t) else {
            log.note("chromatic.z-degree-below-t");
            return Ok(None);
        };
        log.note("chromatic.exit-z-degree");
        let m = self.even_up(z, Layer::Second, "chromatic.z-degree-structure", log)?;
        Ok(Some(self.clique_on(&m[..t], Layer::Second, log)?))
    }

    fn exit_x_degree(&mut self, t: usize, log: &mut AuditLog) -> Result<Option<Vec<Vertex>>, ChromaticError> {
        let Some(x) = (0..self.pg.alpha).find(|&x| self.pg.degree_within(x, Layer::Inner, true) >= t) else {
            log.note("chromatic.x-degree-below-t");
            return Ok(None);
        };
        log.note("chromatic.exit-x-degree");
        let m = self.even_up(x, Layer::Inner, "chromatic.x-degree-structure", log)?;
        Ok(Some(self.clique_on(&m[..t], Layer::Inner, log)?))
    }

    fn exit_dense(&mut self, t: usize, log: &mut AuditLog, missing_out: &mut Option<usize>) -> Result<Option<Vec<Vertex>>, ChromaticError> {
        let (alpha, beta) = (self.pg.alpha, self.pg.beta);
        self.pg.balance_swaps();
        let (zz_even, zz_odd) = self.pg.inner_zz_counts();
        let (xz_even, xz_odd) = self.pg.inner_xz_counts();
        log.check("chromatic.balanced", xz_even >= xz_odd && zz_even >= zz_odd, || {
            format!("even/odd after balancing: Z {zz_even}/{zz_odd}, X-Z {xz_even}/{xz_odd}")
        })?;
        for tri in self.pg.first.clone() {
            self.apply(Method::A, tri, log)?;
        }
        for tri in self.pg.second.clone() {
            self.apply(Method::C, tri, log)?;
        }
        let tangled: Vec<(usize, usize)> = self
            .fam
            .doubles
            .iter()
            .filter(|(_, d)| d.kind == PairType::Tangled)
            .map(|(&k, _)| k)
            .collect();
        for (i, j) in tangled {
            self.tangled_link(alpha + i, alpha + j)?;
        }
        let verts: Vec<Vertex> = (0..alpha + beta).map(|v| host_vertex(&self.prof, &self.pg, v)).collect();
        let hat = self.work.induced(&verts).underlying_simple();
        let n = verts.len();
        let missing = (0..n)
            .map(|i| (i + 1..n).filter(|&j| !hat.adjacent(verts[i], verts[j])).count())
            .sum::<usize>();
        *missing_out = Some(missing);
        let x_complete = (0..alpha).all(|i| (i + 1..alpha).all(|j| hat.adjacent(verts[i], verts[j])));
        log.check("chromatic.dense-x-complete", x_complete, || "singletons are not pairwise joined".into())?;
        let by_layers = xz_odd + zz_odd + self.pg.second.len();
        log.check("chromatic.missing-by-layers", missing <= by_layers, || {
            format!("{missing} missing pairs, layers allow {by_layers}")
        })?;
        let bound = alpha * beta + alpha * t + beta * t;
        log.check("chromatic.missing-edge-bound", 4 * missing <= bound, || {
            format!("{missing} missing pairs exceed (αβ + αt + βt)/4 = {bound}/4")
        })?;
        let (reach, dense) = match immersion_by_average(&hat, log) {
            Ok(r) => r,
            Err(DenseError::TooSparse { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if reach < t {
            log.note("chromatic.dense-short");
            return Ok(None);
        }
        log.note("chromatic.exit-dense");
        self.trace.extend(dense.trace);
        Ok(Some(dense.branch[..t].to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn join_cycles(k: usize) -> MultiGraph {
        let c5 = MultiGraph::cycle(5);
        let mut g = c5.clone();
        for _ in 1..k {
            g = gen::join(&g, &c5);
        }
        g
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(1), 8);
        assert_eq!(threshold(2), 12);
        assert_eq!(threshold(3), 15);
        assert_eq!(threshold(10), 40);
    }

    #[test]
    fn complete_graph_full_pipeline_and_shortcut() {
        let g = MultiGraph::complete(12);
        let mut log = AuditLog::new();
        let out = chromatic_immersion(&g, 2, &ChromaticOptions::default(), &mut log).unwrap();
        assert!(verify(&g, &out.certificate).is_accept());
        assert_eq!(out.certificate.branch.len(), 2);
        assert_eq!(out.alpha, 11);
        let opts = ChromaticOptions {
            shortcut: true,
            ..ChromaticOptions::default()
        };
        let out = chromatic_immersion(&g, 2, &opts, &mut AuditLog::new()).unwrap();
        assert_eq!(out.exit, ChromaticExit::Clique);
    }

    #[test]
    fn lexicographic_c5_degenerate() {
        let g = gen::blow_up(&MultiGraph::cycle(5), 4);
        let out = chromatic_immersion(&g, 1, &ChromaticOptions::default(), &mut AuditLog::new()).unwrap();
        assert_eq!(out.exit, ChromaticExit::Trivial);
        assert_eq!(out.certificate.branch.len(), 1);
    }

    #[test]
    fn low_chromatic_number_rejected() {
        let g = join_cycles(3);
        assert!(matches!(
            chromatic_immersion(&g, 2, &ChromaticOptions::default(), &mut AuditLog::new()),
            Err(ChromaticError::ChromaticTooLow { chi: 9, need: 12 })
        ));
    }

    #[test]
    fn joined_cycles_use_doubletons() {
        for (k, t) in [(4, 2), (5, 3)] {
            let g = join_cycles(k);
            let mut log = AuditLog::new();
            let out = chromatic_immersion(&g, t, &ChromaticOptions::default(), &mut log).unwrap();
            assert!(verify(&g, &out.certificate).is_accept());
            assert!(out.beta > 0, "k = {k}");
            assert!(log.count("chromatic.parity-labels") > 0);
            assert_eq!(log.count("chromatic.chains-edge-disjoint"), 1);
        }
    }

    #[test]
    fn random_dense_graphs() {
        let mut rng = gen::rng(21);
        let mut exits = BTreeSet::new();
        let mut done = 0;
        while done < 6 {
            let g = gen::gnp(30, 0.8, &mut rng);
            let mut log = AuditLog::new();
            match chromatic_immersion(&g, 2, &ChromaticOptions::default(), &mut log) {
                Ok(out) => {
                    assert!(verify(&g, &out.certificate).is_accept());
                    exits.insert(format!("{:?}", out.exit));
                    done += 1;
                }
                Err(ChromaticError::ChromaticTooLow { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(!exits.is_empty());
    }
}
