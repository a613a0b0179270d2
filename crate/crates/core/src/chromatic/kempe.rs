//! Colourings of `G` seen from the neighbourhood `N` of the deleted vertex,
//! and Kempe exchanges that raise the number of singleton colours.

use std::collections::VecDeque;

use crate::audit::{anomaly, AuditLog};
use crate::multigraph::{MultiGraph, Vertex};
use crate::oracle::is_proper;

use super::ChromaticError;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringState {
    pub graph: MultiGraph,
    /// Colour per id, `usize::MAX` on absent ids.
    pub color: Vec<usize>,
    pub k: usize,
    /// Neighbourhood of the deleted vertex, sorted.
    pub nbhd: Vec<Vertex>,
}

/// Singleton and doubleton colours of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    /// `x_i`, sorted by id.
    pub singles: Vec<Vertex>,
    /// `(y_i, y_i')` with `y_i < y_i'`, sorted by `y_i`.
    pub doubles: Vec<(Vertex, Vertex)>,
}

impl Profile {
    pub fn alpha(&self) -> usize {
        self.singles.len()
    }

    pub fn beta(&self) -> usize {
        self.doubles.len()
    }
}

impl ColoringState {
    pub fn new(graph: MultiGraph, color: Vec<usize>, k: usize, mut nbhd: Vec<Vertex>) -> Self {
        nbhd.sort_unstable();
        ColoringState { graph, color, k, nbhd }
    }

    pub fn is_proper(&self) -> bool {
        is_proper(&self.graph, &self.color, self.k)
    }

    /// Members of `N` per colour.
    pub fn counts(&self) -> Vec<Vec<Vertex>> {
        let mut by = vec![Vec::new(); self.k];
        for &v in &self.nbhd {
            by[self.color[v]].push(v);
        }
        by
    }

    pub fn singleton_count(&self) -> usize {
        self.counts().iter().filter(|c| c.len() == 1).count()
    }

    pub fn all_colours_in_nbhd(&self) -> bool {
        self.counts().iter().all(|c| !c.is_empty())
    }

    pub fn profile(&self) -> Profile {
        let by = self.counts();
        let mut singles: Vec<Vertex> = by.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        singles.sort_unstable();
        let mut doubles: Vec<(Vertex, Vertex)> =
            by.iter().filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect();
        doubles.sort_unstable();
        Profile { singles, doubles }
    }

    /// The component of `start` in the subgraph induced by colours `a` and
    /// `b`, sorted.
    pub fn kempe_component(&self, start: Vertex, a: usize, b: usize) -> Vec<Vertex> {
        let g = &self.graph;
        let mut seen = vec![false; g.id_bound()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for (w, _) in g.neighbors(u) {
                let c = self.color[w];
                if !seen[w] && (c == a || c == b) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    /// Exchanges colours `a` and `b` on `comp`.
    pub fn exchange(&mut self, comp: &[Vertex], a: usize, b: usize) {
        for &v in comp {
            let c = self.color[v];
            self.color[v] = if c == a {
                b
            } else if c == b {
                a
            } else {
                c
            };
        }
    }
}

/// Local search over Kempe exchanges: any exchange on a two-colour
/// component meeting `N` that raises the singleton count is applied, until
/// none does. Returns the number of exchanges made.
pub fn maximize_singletons(state: &mut ColoringState, log: &mut AuditLog) -> Result<usize, ChromaticError> {
    log.check("chromatic.colouring-proper", state.is_proper(), || {
        "initial colouring is not proper".into()
    })?;
    log.check("chromatic.nbhd-all-colours", state.all_colours_in_nbhd(), || {
        "a colour is missing from N, so the deleted vertex could be coloured".into()
    })?;
    let mut moves = 0;
    loop {
        let Some((comp, a, b)) = improving_move(state) else {
            break;
        };
        state.exchange(&comp, a, b);
        moves += 1;
        log.check("chromatic.nbhd-all-colours", state.all_colours_in_nbhd(), || {
            format!("exchanging {a}/{b} emptied a colour of N")
        })?;
    }
    log.check("chromatic.colouring-proper", state.is_proper(), || {
        "colouring is not proper after exchanges".into()
    })?;
    Ok(moves)
}

fn improving_move(state: &ColoringState) -> Option<(Vec<Vertex>, usize, usize)> {
    let base = state.singleton_count();
    for a in 0..state.k {
        for b in a + 1..state.k {
            let mut done = vec![false; state.graph.id_bound()];
            for &u in &state.nbhd {
                let c = state.color[u];
                if (c != a && c != b) || done[u] {
                    continue;
                }
                let comp = state.kempe_component(u, a, b);
                for &v in &comp {
                    done[v] = true;
                }
                let mut trial = state.clone();
                trial.exchange(&comp, a, b);
                if trial.singleton_count() > base {
                    return Some((comp, a, b));
                }
            }
        }
    }
    None
}

/// Colour of every present vertex in a proper greedy colouring, for tests
/// and generators.
pub fn greedy_coloring(g: &MultiGraph) -> (Vec<usize>, usize) {
    let mut color = vec![NONE; g.id_bound()];
    let mut k = 0;
    for v in g.vertices() {
        let used: Vec<usize> = g.neighbors(v).map(|(w, _)| color[w]).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        color[v] = c;
        k = k.max(c + 1);
    }
    (color, k)
}

pub(crate) fn require(ok: bool, claim: &'static str, detail: impl FnOnce() -> String) -> Result<(), ChromaticError> {
    if ok {
        Ok(())
    } else {
        Err(anomaly(claim, detail()).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn clique_neighbourhood_is_all_singletons() {
        let g = MultiGraph::complete(5);
        let color = vec![0, 1, 2, 3, 4];
        let mut st = ColoringState::new(g, color, 5, vec![0, 1, 2, 3, 4]);
        let before = st.clone();
        assert_eq!(maximize_singletons(&mut st, &mut AuditLog::new()).unwrap(), 0);
        assert_eq!(st, before);
        assert_eq!(st.profile().alpha(), 5);
    }

    /// Colour 0 on `N`-vertices 0 and 1, colour 1 on 2 and 3, colour 2 on 4.
    /// In the 0/1 subgraph vertex 1 is cut off from 2 and 3, so exchanging
    /// its component leaves colour 0 a singleton.
    fn gadget() -> ColoringState {
        let mut g = MultiGraph::new(8);
        for (u, v) in [(0, 5), (1, 4), (2, 6), (6, 3), (2, 7), (0, 2)] {
            g.add_edge(u, v);
        }
        let color = vec![0, 0, 1, 1, 2, 2, 0, 2];
        ColoringState::new(g, color, 3, vec![0, 1, 2, 3, 4])
    }

    #[test]
    fn exchange_creates_singleton() {
        let mut st = gadget();
        assert!(st.is_proper());
        assert_eq!(st.singleton_count(), 1);
        let moves = maximize_singletons(&mut st, &mut AuditLog::new()).unwrap();
        assert!(moves >= 1);
        assert!(st.is_proper());
        assert!(st.all_colours_in_nbhd());
        // recount by hand from the final colouring
        let mut per = [0usize; 3];
        for v in 0..5 {
            per[st.color[v]] += 1;
        }
        let singles = per.iter().filter(|&&c| c == 1).count();
        assert_eq!(singles, st.singleton_count());
        assert!(singles >= 2);
    }

    #[test]
    fn fixpoint_is_stable() {
        let mut st = gadget();
        maximize_singletons(&mut st, &mut AuditLog::new()).unwrap();
        let snap = st.clone();
        assert_eq!(maximize_singletons(&mut st, &mut AuditLog::new()).unwrap(), 0);
        assert_eq!(st, snap);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn kempe_exchange_keeps_colouring_proper(seed in any::<u64>(), n in 4usize..14, pick in any::<usize>()) {
            let mut rng = gen::rng(seed);
            let g = gen::gnp(n, 0.4, &mut rng);
            let (color, k) = greedy_coloring(&g);
            let k = k.max(2);
            let mut st = ColoringState::new(g, color, k, Vec::new());
            prop_assert!(st.is_proper());
            let v = pick % n;
            let a = st.color[v];
            let b = (a + 1 + pick / n % (k - 1)) % k;
            let comp = st.kempe_component(v, a, b);
            st.exchange(&comp, a, b);
            prop_assert!(st.is_proper());
        }
    }
}
