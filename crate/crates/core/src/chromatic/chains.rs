//! Two-coloured chains between the singleton and doubleton vertices of `N`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::kempe::{require, ColoringState, Profile};
use super::ChromaticError;
use crate::certificate::shortcut_walk;
use crate::multigraph::Vertex;

/// How the two chains of a doubleton pair `(y_i, y_i')`, `(y_j, y_j')` meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairType {
    /// Edge-disjoint chains `y_i–y_j` and `y_i'–y_j'`.
    Straight,
    /// Edge-disjoint chains `y_i–y_j'` and `y_i'–y_j`.
    Crossed,
    /// All four are joined but no two edge-disjoint chains exist.
    Tangled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePair {
    pub kind: PairType,
    /// For `Straight` and `Crossed`: the two chains, each starting on the
    /// `i` side.
    pub paths: Vec<Vec<Vertex>>,
    /// For `Tangled`: an edge-minimal subgraph joining all four ends.
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFamily {
    /// `(i, j)`, `i < j`, to a chain `x_i … x_j`.
    pub singles: BTreeMap<(usize, usize), Vec<Vertex>>,
    /// `(i, j)` to a chain from `x_i` ending at `y_j` or `y_j'`.
    pub mixed: BTreeMap<(usize, usize), Vec<Vertex>>,
    /// `(i, j)`, `i < j`, over doubleton indices.
    pub doubles: BTreeMap<(usize, usize), DoublePair>,
}

impl ChainFamily {
    /// Every edge of every member, tagged with its owner.
    fn tagged_edges(&self) -> Vec<((Vertex, Vertex), String)> {
        let mut out = Vec::new();
        let add_path = |p: &[Vertex], tag: String, out: &mut Vec<_>| {
            for w in p.windows(2) {
                out.push((ordered(w[0], w[1]), tag.clone()));
            }
        };
        for (k, p) in &self.singles {
            add_path(p, format!("a{k:?}"), &mut out);
        }
        for (k, p) in &self.mixed {
            add_path(p, format!("b{k:?}"), &mut out);
        }
        for (k, d) in &self.doubles {
            for p in &d.paths {
                add_path(p, format!("c{k:?}"), &mut out);
            }
            for &(u, v) in &d.edges {
                out.push((ordered(u, v), format!("c{k:?}")));
            }
        }
        out
    }

    /// Full scan: no edge of the host is used twice.
    pub fn edge_disjoint(&self) -> Result<(), String> {
        let mut owner: BTreeMap<(Vertex, Vertex), String> = BTreeMap::new();
        for (e, tag) in self.tagged_edges() {
            if let Some(prev) = owner.insert(e, tag.clone()) {
                return Err(format!("edge {e:?} used by {prev} and {tag}"));
            }
        }
        Ok(())
    }

    pub fn count(&self, kind: PairType) -> usize {
        self.doubles.values().filter(|d| d.kind == kind).count()
    }
}

pub(crate) fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Shortest path from `from` to the nearest of `targets` in the subgraph
/// induced by colours `a` and `b`; neighbours are explored in id order.
fn chain(st: &ColoringState, a: usize, b: usize, from: Vertex, targets: &[Vertex]) -> Option<Vec<Vertex>> {
    let g = &st.graph;
    let mut prev = vec![usize::MAX; g.id_bound()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u != from && targets.contains(&u) {
            let mut path = vec![u];
            let mut x = u;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbor_list(u) {
            let c = st.color[w];
            if prev[w] == usize::MAX && (c == a || c == b) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Fixes one chain or chain pair per colour pair.
pub fn fix_chains(st: &ColoringState, prof: &Profile) -> Result<ChainFamily, ChromaticError> {
    let col = |v: Vertex| st.color[v];
    let mut fam = ChainFamily {
        singles: BTreeMap::new(),
        mixed: BTreeMap::new(),
        doubles: BTreeMap::new(),
    };
    let xs = &prof.singles;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let p = chain(st, col(xs[i]), col(xs[j]), xs[i], &[xs[j]]);
            require(p.is_some(), "chromatic.chain-singletons", || {
                format!("no chain from {} to {}", xs[i], xs[j])
            })?;
            fam.singles.insert((i, j), p.unwrap());
        }
    }
    for (i, &x) in xs.iter().enumerate() {
        for (j, &(y, y2)) in prof.doubles.iter().enumerate() {
            let p = chain(st, col(x), col(y), x, &[y, y2]);
            require(p.is_some(), "chromatic.chain-singleton-doubleton", || {
                format!("no chain from {x} to {{{y}, {y2}}}")
            })?;
            fam.mixed.insert((i, j), p.unwrap());
        }
    }
    let ys = &prof.doubles;
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            fam.doubles.insert((i, j), double_pair(st, ys[i], ys[j])?);
        }
    }
    fam.edge_disjoint()
        .map_err(|e| crate::audit::anomaly("chromatic.chains-edge-disjoint", e))?;
    Ok(fam)
}

/// Edges of the subgraph induced by the colours of `yi` and `yj`.
fn two_colour_edges(st: &ColoringState, a: usize, b: usize) -> Vec<(Vertex, Vertex)> {
    st.graph
        .edges()
        .into_iter()
        .filter(|&(u, v, _)| {
            let (cu, cv) = (st.color[u], st.color[v]);
            (cu == a && cv == b) || (cu == b && cv == a)
        })
        .map(|(u, v, _)| (u, v))
        .collect()
}

fn double_pair(
    st: &ColoringState,
    (yi, yi2): (Vertex, Vertex),
    (yj, yj2): (Vertex, Vertex),
) -> Result<DoublePair, ChromaticError> {
    let edges = two_colour_edges(st, st.color[yi], st.color[yj]);
    let paths = two_disjoint_paths(&edges, [yi, yi2], [yj, yj2]);
    if let Some(mut paths) = paths {
        paths.sort_by_key(|p| p[0] != yi);
        let kind = if *paths[0].last().unwrap() == yj {
            PairType::Straight
        } else {
            PairType::Crossed
        };
        return Ok(DoublePair { kind, paths, edges: Vec::new() });
    }
    let ends = [yi, yi2, yj, yj2];
    require(connected(&edges, &ends), "chromatic.chain-doubletons", || {
        format!("{yi}, {yi2}, {yj}, {yj2} are not joined by chains")
    })?;
    // greedy deletion down to an edge-minimal joining subgraph
    let mut keep = edges.clone();
    let mut idx = 0;
    while idx < keep.len() {
        let e = keep.remove(idx);
        if !connected(&keep, &ends) {
            keep.insert(idx, e);
            idx += 1;
        }
    }
    keep.sort_unstable();
    Ok(DoublePair {
        kind: PairType::Tangled,
        paths: Vec::new(),
        edges: keep,
    })
}

pub(crate) fn connected(edges: &[(Vertex, Vertex)], ends: &[Vertex]) -> bool {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut seen = BTreeSet::from([ends[0]]);
    let mut stack = vec![ends[0]];
    while let Some(u) = stack.pop() {
        for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    ends.iter().all(|e| seen.contains(e))
}

/// Shortest path from `from` to `to` over `edges`, neighbours in id order.
pub(crate) fn path_in(edges: &[(Vertex, Vertex)], from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[&x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in adj.get(&u).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(u);
                queue.push_back(w);
            }
        }
    }
    None
}

struct Arc {
    to: usize,
    cap: i32,
    rev: usize,
}

/// Unit-capacity max flow from `{s1, s2}` to `{t1, t2}` over undirected
/// `edges`. Returns two edge-disjoint paths, each from a source to a sink,
/// when the flow value is two.
pub fn two_disjoint_paths(
    edges: &[(Vertex, Vertex)],
    sources: [Vertex; 2],
    sinks: [Vertex; 2],
) -> Option<Vec<Vec<Vertex>>> {
    let mut ids: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).chain(sources).chain(sinks).collect();
    ids.sort_unstable();
    ids.dedup();
    let idx = |v: Vertex| ids.binary_search(&v).unwrap();
    let n = ids.len() + 2;
    let (s, t) = (n - 2, n - 1);
    let mut arcs: Vec<Vec<Arc>> = (0..n).map(|_| Vec::new()).collect();
    let link = |arcs: &mut Vec<Vec<Arc>>, u: usize, v: usize, cu: i32, cv: i32| {
        let (ru, rv) = (arcs[v].len(), arcs[u].len());
        arcs[u].push(Arc { to: v, cap: cu, rev: ru });
        arcs[v].push(Arc { to: u, cap: cv, rev: rv });
    };
    for &(u, v) in edges {
        link(&mut arcs, idx(u), idx(v), 1, 1);
    }
    for &a in &sources {
        link(&mut arcs, s, idx(a), 1, 0);
    }
    for &b in &sinks {
        link(&mut arcs, idx(b), t, 1, 0);
    }
    let mut value = 0;
    while value < 2 {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::from([s]);
        let mut reached = false;
        while let Some(u) = queue.pop_front() {
            if u == t {
                reached = true;
                break;
            }
            for (k, a) in arcs[u].iter().enumerate() {
                if a.cap > 0 && a.to != s && prev[a.to].is_none() {
                    prev[a.to] = Some((u, k));
                    queue.push_back(a.to);
                }
            }
        }
        if !reached {
            break;
        }
        let mut v = t;
        while v != s {
            let (u, k) = prev[v].unwrap();
            arcs[u][k].cap -= 1;
            let r = arcs[u][k].rev;
            arcs[v][r].cap += 1;
            v = u;
        }
        value += 1;
    }
    if value < 2 {
        return None;
    }
    // net flow along each undirected edge: a host arc with capacity 0 is used forward
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        for a in &arcs[u] {
            let host_edge = u < ids.len() && a.to < ids.len();
            if host_edge && a.cap == 0 {
                out_arcs[u].push(a.to);
            }
        }
    }
    for list in &mut out_arcs {
        list.sort_unstable();
    }
    let mut paths = Vec::new();
    for &a in &sources {
        let mut walk = vec![a];
        let mut u = idx(a);
        let sink_idx: Vec<usize> = sinks.iter().map(|&b| idx(b)).collect();
        let end_at = |u: usize, used_out: &Vec<Vec<usize>>| sink_idx.contains(&u) && {
            // a sink whose sink arc carries flow and has no outgoing flow left
            used_out[u].is_empty()
        };
        while !end_at(u, &out_arcs) {
            let next = out_arcs[u].remove(0);
            walk.push(ids[next]);
            u = next;
        }
        paths.push(shortcut_walk(&walk));
    }
    Some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    #[test]
    fn single_alternating_path() {
        // x_0 = 0 (colour 0), x_1 = 3 (colour 1), path 0-1-2-3 alternating
        let g = MultiGraph::path(4);
        let st = ColoringState::new(g, vec![0, 1, 0, 1], 2, vec![0, 3]);
        let prof = st.profile();
        assert_eq!(prof.singles, vec![0, 3]);
        let fam = fix_chains(&st, &prof).unwrap();
        assert_eq!(fam.singles[&(0, 1)], vec![0, 1, 2, 3]);
    }

    /// Independent recount of the flow value by brute force over pairs of
    /// edge-disjoint simple paths.
    fn brute_value(edges: &[(Vertex, Vertex)], s: [Vertex; 2], t: [Vertex; 2]) -> usize {
        fn all_paths(edges: &[(Vertex, Vertex)], from: Vertex, to: Vertex) -> Vec<Vec<usize>> {
            fn go(edges: &[(Vertex, Vertex)], u: Vertex, to: Vertex, used: &mut Vec<usize>, seen: &mut Vec<Vertex>, out: &mut Vec<Vec<usize>>) {
                if u == to {
                    out.push(used.clone());
                    return;
                }
                for (k, &(a, b)) in edges.iter().enumerate() {
                    let w = if a == u { b } else if b == u { a } else { continue };
                    if seen.contains(&w) {
                        continue;
                    }
                    used.push(k);
                    seen.push(w);
                    go(edges, w, to, used, seen, out);
                    seen.pop();
                    used.pop();
                }
            }
            let mut out = Vec::new();
            go(edges, from, to, &mut Vec::new(), &mut vec![from], &mut out);
            out
        }
        let mut best = 0;
        for (a, b) in [(t[0], t[1]), (t[1], t[0])] {
            let p1 = all_paths(edges, s[0], a);
            let p2 = all_paths(edges, s[1], b);
            if !p1.is_empty() || !p2.is_empty() {
                best = best.max(1);
            }
            for x in &p1 {
                for y in &p2 {
                    if x.iter().all(|e| !y.contains(e)) {
                        return 2;
                    }
                }
            }
        }
        best
    }

    #[test]
    fn disjoint_pair_flow() {
        // 4-cycle y_i=0, y_j=1, y_i'=2, y_j'=3 with edges 0-1, 1-2, 2-3, 3-0
        let edges = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
        let p = two_disjoint_paths(&edges, [0, 2], [1, 3]).unwrap();
        assert_eq!(brute_value(&edges, [0, 2], [1, 3]), 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p[0][0], 0);
        assert_eq!(p[1][0], 2);
    }

    #[test]
    fn bottleneck_gives_value_one() {
        // both sides hang off a single bridge 4-5
        let edges = vec![(0, 4), (2, 4), (4, 5), (5, 1), (5, 3)];
        assert!(two_disjoint_paths(&edges, [0, 2], [1, 3]).is_none());
        assert_eq!(brute_value(&edges, [0, 2], [1, 3]), 1);
        assert!(connected(&edges, &[0, 1, 2, 3]));
    }

    #[test]
    fn flow_matches_brute_force() {
        let mut rng = crate::gen::rng(9);
        for _ in 0..200 {
            let g = crate::gen::gnp(7, 0.35, &mut rng);
            let edges: Vec<(Vertex, Vertex)> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
            let got = two_disjoint_paths(&edges, [0, 1], [2, 3]);
            let want = brute_value(&edges, [0, 1], [2, 3]);
            assert_eq!(got.is_some(), want == 2, "{edges:?}");
            if let Some(paths) = got {
                let mut used = BTreeSet::new();
                for p in &paths {
                    assert!([0, 1].contains(&p[0]) && [2, 3].contains(p.last().unwrap()));
                    for w in p.windows(2) {
                        let e = ordered(w[0], w[1]);
                        assert!(edges.contains(&e));
                        assert!(used.insert(e));
                    }
                }
                assert_ne!(paths[0].last(), paths[1].last());
            }
        }
    }

    /// Doubletons `{0, 2}` (colour 0) and `{1, 3}` (colour 1).
    fn doubleton_state(edges: &[(Vertex, Vertex)], n: usize, colours: Vec<usize>) -> ColoringState {
        let g = MultiGraph::from_edges(n, edges);
        ColoringState::new(g, colours, 2, vec![0, 1, 2, 3])
    }

    #[test]
    fn straight_and_tangled_types() {
        let st = doubleton_state(&[(0, 1), (2, 3)], 4, vec![0, 1, 0, 1]);
        let prof = st.profile();
        assert_eq!(prof.doubles, vec![(0, 2), (1, 3)]);
        let fam = fix_chains(&st, &prof).unwrap();
        let d = &fam.doubles[&(0, 1)];
        assert_eq!(d.kind, PairType::Straight);
        assert_eq!(d.paths, vec![vec![0, 1], vec![2, 3]]);

        let st = doubleton_state(&[(0, 3), (2, 1)], 4, vec![0, 1, 0, 1]);
        let fam = fix_chains(&st, &st.profile()).unwrap();
        assert_eq!(fam.doubles[&(0, 1)].kind, PairType::Crossed);

        // a star through 4 (colour 1) and 5 (colour 0): flow value one
        let edges = [(0, 4), (2, 4), (4, 5), (5, 1), (5, 3)];
        let st = doubleton_state(&edges, 6, vec![0, 1, 0, 1, 1, 0]);
        let fam = fix_chains(&st, &st.profile()).unwrap();
        let d = &fam.doubles[&(0, 1)];
        assert_eq!(d.kind, PairType::Tangled);
        assert_eq!(d.edges.len(), 5);
        assert_eq!(brute_value(&d.edges, [0, 2], [1, 3]), 1);
        assert!(connected(&d.edges, &[0, 1, 2, 3]));
    }

    #[test]
    fn missing_chain_is_an_anomaly() {
        let st = doubleton_state(&[(0, 1)], 4, vec![0, 1, 0, 1]);
        let err = fix_chains(&st, &st.profile()).unwrap_err();
        assert!(err.to_string().contains("chromatic.chain-doubletons"));
    }
}
