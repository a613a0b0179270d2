use std::collections::VecDeque;

use super::{Meter, SearchBudget, SearchOutcome};
use crate::certificate::{Fingerprint, ImmersionCertificate, Pattern};
use crate::multigraph::{MultiGraph, Vertex};

struct Search<'a> {
    n: usize,
    cap: Vec<u32>,
    ids: &'a [Vertex],
    strong: bool,
    is_branch: Vec<bool>,
    meter: Meter,
}

impl Search<'_> {
    fn c(&self, u: usize, v: usize) -> u32 {
        self.cap[u * self.n + v]
    }

    fn adjust(&mut self, u: usize, v: usize, up: bool) {
        let (a, b) = (u * self.n + v, v * self.n + u);
        if up {
            self.cap[a] += 1;
            self.cap[b] += 1;
        } else {
            self.cap[a] -= 1;
            self.cap[b] -= 1;
        }
    }

    fn residual_degree(&self, v: usize) -> u32 {
        self.cap[v * self.n..(v + 1) * self.n].iter().sum()
    }

    /// Routes `pairs[k..]`, writing chosen paths into `routes`.
    fn route(&mut self, pairs: &[(usize, usize)], k: usize, routes: &mut [Vec<usize>]) -> bool {
        if k == pairs.len() {
            return true;
        }
        // every endpoint still needs one unit of residual capacity per pending pair
        let mut need = vec![0u32; self.n];
        for &(a, b) in &pairs[k..] {
            need[a] += 1;
            need[b] += 1;
        }
        for v in 0..self.n {
            if need[v] > 0 && self.residual_degree(v) < need[v] {
                return false;
            }
        }
        let (a, b) = pairs[k];
        let mut path = vec![a];
        let mut on_path = vec![false; self.n];
        on_path[a] = true;
        for len in 1..self.n {
            if self.paths_of_len(a, b, len, &mut path, &mut on_path, pairs, k, routes) {
                return true;
            }
            if self.meter.out {
                return false;
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn paths_of_len(
        &mut self,
        cur: usize,
        target: usize,
        left: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        pairs: &[(usize, usize)],
        k: usize,
        routes: &mut [Vec<usize>],
    ) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if left == 1 {
            if self.c(cur, target) == 0 {
                return false;
            }
            path.push(target);
            self.adjust(cur, target, false);
            let ok = self.route(pairs, k + 1, routes);
            self.adjust(cur, target, true);
            if ok {
                routes[k] = path.clone();
            }
            path.pop();
            return ok;
        }
        for next in 0..self.n {
            if next == target || on_path[next] || self.c(cur, next) == 0 {
                continue;
            }
            if self.strong && self.is_branch[next] {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            self.adjust(cur, next, false);
            let ok = self.paths_of_len(next, target, left - 1, path, on_path, pairs, k, routes);
            self.adjust(cur, next, true);
            on_path[next] = false;
            path.pop();
            if ok {
                return true;
            }
            if self.meter.out {
                return false;
            }
        }
        false
    }
}

fn distances(n: usize, cap: &[u32], src: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; n];
    d[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for v in 0..n {
            if cap[u * n + v] > 0 && d[v] == usize::MAX {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// Exhaustive search for a (strong) `K_t` immersion.
///
/// Branch sets are drawn from vertices of degree at least `t - 1` in
/// lexicographic order; for each, the pattern edges are routed longest
/// distance first over simple paths of increasing length, with backtracking.
pub fn immersion_search(
    g: &MultiGraph,
    t: usize,
    strong: bool,
    budget: &SearchBudget,
) -> SearchOutcome<ImmersionCertificate> {
    let (h, ids) = g.compacted();
    let n = ids.len();
    let make = |branch: Vec<Vertex>, routes: Vec<Vec<Vertex>>| ImmersionCertificate {
        host: Fingerprint::of(g),
        pattern: Pattern::Clique(branch.len()),
        branch,
        routes,
        strong,
    };
    if t == 0 {
        return SearchOutcome::Found(make(vec![], vec![]));
    }
    if t > budget.max_order {
        return SearchOutcome::Exhausted;
    }
    let mut cap = vec![0u32; n * n];
    for (u, v, k) in h.edges() {
        if u != v {
            cap[u * n + v] = k;
            cap[v * n + u] = k;
        }
    }
    let candidates: Vec<usize> = (0..n)
        .filter(|&v| h.incident_count(v) + 1 >= t)
        .collect();
    if candidates.len() < t {
        return SearchOutcome::NotFound;
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|s| distances(n, &cap, s)).collect();
    let mut search = Search {
        n,
        cap,
        ids: &ids,
        strong,
        is_branch: vec![false; n],
        meter: Meter::new(budget),
    };
    let mut combo: Vec<usize> = (0..t).collect();
    loop {
        let chosen: Vec<usize> = combo.iter().map(|&i| candidates[i]).collect();
        let connected = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| dist[a][b] != usize::MAX));
        if connected {
            let mut pairs = Vec::new();
            for i in 0..t {
                for j in i + 1..t {
                    pairs.push((i, j));
                }
            }
            // longest current distance first, ties by pattern order
            pairs.sort_by_key(|&(i, j)| std::cmp::Reverse(dist[chosen[i]][chosen[j]]));
            let host_pairs: Vec<(usize, usize)> =
                pairs.iter().map(|&(i, j)| (chosen[i], chosen[j])).collect();
            for &v in &chosen {
                search.is_branch[v] = true;
            }
            let mut routes = vec![Vec::new(); host_pairs.len()];
            let ok = search.route(&host_pairs, 0, &mut routes);
            for &v in &chosen {
                search.is_branch[v] = false;
            }
            if ok {
                let mut ordered = vec![Vec::new(); host_pairs.len()];
                let mut slot = 0;
                let mut index = vec![vec![0usize; t]; t];
                for i in 0..t {
                    for j in i + 1..t {
                        index[i][j] = slot;
                        slot += 1;
                    }
                }
                for (r, &(i, j)) in pairs.iter().enumerate() {
                    ordered[index[i][j]] = routes[r].iter().map(|&x| search.ids[x]).collect();
                }
                let branch = chosen.iter().map(|&x| search.ids[x]).collect();
                return SearchOutcome::Found(make(branch, ordered));
            }
            if search.meter.out {
                return SearchOutcome::Exhausted;
            }
        }
        // next combination
        let m = candidates.len();
        let mut i = t;
        loop {
            if i == 0 {
                return SearchOutcome::NotFound;
            }
            i -= 1;
            if combo[i] < m - t + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..t {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;

    fn cocktail(m: usize) -> MultiGraph {
        let mut g = MultiGraph::complete(2 * m);
        for i in 0..m {
            g.remove_edge(2 * i, 2 * i + 1).unwrap();
        }
        g
    }

    #[test]
    fn k4_identity() {
        let g = MultiGraph::complete(4);
        let c = immersion_search(&g, 4, true, &SearchBudget::default())
            .found()
            .unwrap();
        assert_eq!(c.branch, vec![0, 1, 2, 3]);
        assert!(verify(&g, &c).is_accept());
    }

    #[test]
    fn c5_hosts_k3_but_not_k4() {
        // a cycle is a subdivision of K3
        let g = MultiGraph::cycle(5);
        let c = immersion_search(&g, 3, true, &SearchBudget::default())
            .found()
            .unwrap();
        assert!(verify(&g, &c).is_accept());
        assert_eq!(
            immersion_search(&g, 4, false, &SearchBudget::default()),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn cocktail_four_hosts_k7() {
        let g = cocktail(4);
        for t in [6, 7] {
            let c = immersion_search(&g, t, false, &SearchBudget::default())
                .found()
                .unwrap();
            assert!(verify(&g, &c).is_accept());
        }
        // K8 would need degree 7 at every vertex
        assert_eq!(
            immersion_search(&g, 8, false, &SearchBudget::default()),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn strong_searches() {
        // a bowtie hosts K3 inside one triangle
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert!(immersion_search(&g, 3, true, &SearchBudget::default()).is_found());
        let c6 = MultiGraph::cycle(6);
        let c = immersion_search(&c6, 3, true, &SearchBudget::default())
            .found()
            .unwrap();
        assert!(verify(&c6, &c).is_accept());
        assert_eq!(
            immersion_search(&c6, 4, false, &SearchBudget::default()),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn budget_is_a_separate_outcome() {
        let g = cocktail(5);
        assert_eq!(
            immersion_search(&g, 9, false, &SearchBudget::nodes(10)),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn multigraph_capacity_used() {
        let mut g = MultiGraph::new(3);
        g.add_edges(0, 1, 2);
        g.add_edges(1, 2, 2);
        // 0-2 goes through 1 on the second copies
        let c = immersion_search(&g, 3, false, &SearchBudget::default())
            .found()
            .unwrap();
        assert!(verify(&g, &c).is_accept());
    }
}
