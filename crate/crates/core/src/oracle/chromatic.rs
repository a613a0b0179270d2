use super::{Meter, SearchBudget, SearchOutcome};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiOutcome {
    Exact(usize),
    Exhausted { lower: usize, upper: usize },
}

impl ChiOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ChiOutcome::Exact(k) => Some(*k),
            ChiOutcome::Exhausted { .. } => None,
        }
    }
}

struct Dsatur {
    n: usize,
    adj: Vec<Vec<usize>>,
    color: Vec<usize>,
    // nbr_colors[v][c] = number of coloured neighbours of v with colour c
    nbr_colors: Vec<Vec<u32>>,
    sat: Vec<usize>,
    best: usize,
    best_coloring: Vec<usize>,
    first_only: bool,
    meter: Meter,
}

const NONE: usize = usize::MAX;

impl Dsatur {
    fn set(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.nbr_colors[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.nbr_colors[w][c] += 1;
        }
    }

    fn unset(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            self.nbr_colors[w][c] -= 1;
            if self.nbr_colors[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.n {
            if self.color[v] != NONE {
                continue;
            }
            let free_deg = self.adj[v].iter().filter(|&&w| self.color[w] == NONE).count();
            let key = (self.sat[v], free_deg, usize::MAX - v);
            if best.is_none_or(|b| key > (b.0, b.1, usize::MAX - b.2)) {
                best = Some((key.0, key.1, v));
            }
        }
        best.map(|b| b.2)
    }

    fn branch(&mut self, used: usize, colored: usize) {
        if used >= self.best || !self.meter.tick() {
            return;
        }
        if colored == self.n {
            self.best = used;
            self.best_coloring = self.color.clone();
            return;
        }
        let v = self.pick().expect("uncoloured vertex remains");
        if self.sat[v] >= self.best {
            return;
        }
        for c in 0..=used.min(self.best - 1) {
            if c == used && used + 1 >= self.best {
                break;
            }
            if self.nbr_colors[v][c] > 0 {
                continue;
            }
            self.set(v, c);
            self.branch(used.max(c + 1), colored + 1);
            self.unset(v);
            if self.meter.out || (self.first_only && !self.best_coloring.is_empty()) {
                return;
            }
        }
    }
}

fn greedy_clique(adj: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut matrix = vec![false; n * n];
    for (u, list) in adj.iter().enumerate() {
        for &w in list {
            matrix[u * n + w] = true;
        }
    }
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand: Vec<usize> = adj[start].clone();
        while !cand.is_empty() {
            // candidate with most neighbours among the other candidates
            let &pick = cand
                .iter()
                .max_by_key(|&&c| {
                    let d = cand.iter().filter(|&&o| matrix[c * n + o]).count();
                    (d, usize::MAX - c)
                })
                .unwrap();
            clique.push(pick);
            cand.retain(|&o| o != pick && matrix[pick * n + o]);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Exact chromatic number with an optimal colouring (indexed by host id,
/// `usize::MAX` for absent ids).
pub fn chromatic_with_coloring(
    g: &MultiGraph,
    budget: &SearchBudget,
) -> (ChiOutcome, Vec<usize>) {
    let (h, ids) = g.compacted();
    let n = ids.len();
    let mut full = vec![NONE; g.id_bound()];
    if n == 0 {
        return (ChiOutcome::Exact(0), full);
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| h.neighbor_list(v).into_iter().filter(|&w| w != v).collect())
        .collect();
    let mut s = Dsatur {
        n,
        adj,
        color: vec![NONE; n],
        nbr_colors: vec![vec![0; n + 1]; n],
        sat: vec![0; n],
        best: n + 1,
        best_coloring: Vec::new(),
        first_only: false,
        meter: Meter::new(budget),
    };
    let clique = greedy_clique(&s.adj, n);
    let lower = clique.len();
    // fixing the clique colours breaks colour symmetry
    for (c, &v) in clique.iter().enumerate() {
        s.set(v, c);
    }
    s.branch(lower, lower);
    let outcome = if s.meter.out {
        if s.best_coloring.is_empty() {
            ChiOutcome::Exhausted { lower, upper: n }
        } else {
            ChiOutcome::Exhausted {
                lower,
                upper: s.best,
            }
        }
    } else {
        ChiOutcome::Exact(s.best)
    };
    if !s.best_coloring.is_empty() {
        for (i, &v) in ids.iter().enumerate() {
            full[v] = s.best_coloring[i];
        }
    }
    (outcome, full)
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn k_coloring(g: &MultiGraph, k: usize, budget: &SearchBudget) -> SearchOutcome<Vec<usize>> {
    let (h, ids) = g.compacted();
    let n = ids.len();
    if n == 0 {
        return SearchOutcome::Found(vec![NONE; g.id_bound()]);
    }
    if k == 0 {
        return SearchOutcome::NotFound;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| h.neighbor_list(v).into_iter().filter(|&w| w != v).collect())
        .collect();
    let clique = greedy_clique(&adj, n);
    if clique.len() > k {
        return SearchOutcome::NotFound;
    }
    let mut s = Dsatur {
        n,
        adj,
        color: vec![NONE; n],
        nbr_colors: vec![vec![0; n + 1]; n],
        sat: vec![0; n],
        best: k + 1,
        best_coloring: Vec::new(),
        first_only: true,
        meter: Meter::new(budget),
    };
    for (c, &v) in clique.iter().enumerate() {
        s.set(v, c);
    }
    s.branch(clique.len(), clique.len());
    if !s.best_coloring.is_empty() {
        let mut full = vec![NONE; g.id_bound()];
        for (i, &v) in ids.iter().enumerate() {
            full[v] = s.best_coloring[i];
        }
        SearchOutcome::Found(full)
    } else if s.meter.out {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::NotFound
    }
}

pub fn exact_chromatic(g: &MultiGraph, budget: &SearchBudget) -> ChiOutcome {
    chromatic_with_coloring(g, budget).0
}

/// True when `coloring` is proper on `g` and uses colours below `k`.
pub fn is_proper(g: &MultiGraph, coloring: &[usize], k: usize) -> bool {
    g.vertices().all(|v| {
        coloring[v] < k && g.neighbors(v).all(|(w, _)| w == v || coloring[w] != coloring[v])
    })
}

#[allow(dead_code)]
pub(crate) fn color_classes(g: &MultiGraph, coloring: &[usize], k: usize) -> Vec<Vec<Vertex>> {
    let mut classes = vec![Vec::new(); k];
    for v in g.vertices() {
        classes[coloring[v]].push(v);
    }
    classes
}
