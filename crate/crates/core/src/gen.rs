//! Graph generators used by the CLI and the test suites.
//!
//! Random families take an explicit RNG so that every instance is a pure
//! function of its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::multigraph::{MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("minimum degree {d} impossible on {n} vertices")]
    DegreeTooLarge { n: usize, d: usize },
    #[error("{0}")]
    BadParam(String),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> MultiGraph {
    MultiGraph::complete(n)
}

/// `K_{m×2}`: vertices `2i, 2i+1` form the i-th non-adjacent pair.
pub fn cocktail(m: usize) -> MultiGraph {
    let mut g = MultiGraph::complete(2 * m);
    for i in 0..m {
        g.remove_edge(2 * i, 2 * i + 1).unwrap();
    }
    g
}

/// Complete multipartite graph with the given part sizes, parts laid out
/// consecutively.
pub fn complete_multipartite(parts: &[usize]) -> MultiGraph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let mut g = MultiGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random simple graph with minimum degree at least `d`: `G(n, p)` followed by
/// a repair pass joining each deficient vertex to random non-neighbours.
pub fn random_mindeg(n: usize, d: usize, p: f64, rng: &mut impl Rng) -> Result<MultiGraph, GenError> {
    if n > 0 && d >= n {
        return Err(GenError::DegreeTooLarge { n, d });
    }
    let mut g = gnp(n, p.clamp(0.0, 1.0), rng);
    for v in 0..n {
        if g.degree(v) >= d {
            continue;
        }
        let mut others: Vec<Vertex> = (0..n).filter(|&w| w != v && !g.adjacent(v, w)).collect();
        others.shuffle(rng);
        // prefer partners that are themselves short of degree
        others.sort_by_key(|&w| g.degree(w) >= d);
        for w in others {
            if g.degree(v) >= d {
                break;
            }
            g.add_edge(v, w);
        }
    }
    Ok(g)
}

/// Mycielskian: a copy `u'` for every `u`, joined to `N(u)`, plus an apex
/// joined to all copies.
pub fn mycielskian(g: &MultiGraph) -> MultiGraph {
    let (g, _) = g.compacted();
    let n = g.order();
    let mut h = MultiGraph::new(2 * n + 1);
    for (u, v, _) in g.edges() {
        h.add_edge(u, v);
        h.add_edge(n + u, v);
        h.add_edge(u, n + v);
    }
    for u in 0..n {
        h.add_edge(n + u, 2 * n);
    }
    h
}

/// The Mycielski graph `M_k`: `M_2 = K_2`, `M_3 = C_5`, `M_4` the Grötzsch graph.
pub fn mycielski(k: usize) -> Result<MultiGraph, GenError> {
    if k < 2 {
        return Err(GenError::BadParam("mycielski needs k >= 2".into()));
    }
    let mut g = MultiGraph::complete(2);
    for _ in 2..k {
        g = mycielskian(&g);
    }
    Ok(g)
}

/// Random triangle-free graph by scanning shuffled pairs and inserting each
/// with probability `p` unless it would close a triangle.
pub fn triangle_free(n: usize, p: f64, rng: &mut impl Rng) -> MultiGraph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(rng);
    let mut g = MultiGraph::new(n);
    for (u, v) in pairs {
        if !rng.gen_bool(p.clamp(0.0, 1.0)) {
            continue;
        }
        let closes = g.neighbors(u).any(|(w, _)| g.adjacent(w, v));
        if !closes {
            g.add_edge(u, v);
        }
    }
    g
}

/// Complement of a random triangle-free graph: no stable set of size three.
pub fn cotriangle(n: usize, p: f64, rng: &mut impl Rng) -> MultiGraph {
    triangle_free(n, p, rng)
        .complement()
        .expect("generated graph is simple")
}

/// Lexicographic product `G[K_k]`.
pub fn blow_up(g: &MultiGraph, k: usize) -> MultiGraph {
    let (g, _) = g.compacted();
    let n = g.order();
    let mut h = MultiGraph::new(n * k);
    for u in 0..n {
        for a in 0..k {
            for b in a + 1..k {
                h.add_edge(u * k + a, u * k + b);
            }
        }
    }
    for (u, v, _) in g.edges() {
        for a in 0..k {
            for b in 0..k {
                h.add_edge(u * k + a, v * k + b);
            }
        }
    }
    h
}

/// `G(n, p)` with a clique planted on `k` random vertices.
pub fn planted_clique(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> MultiGraph {
    let mut g = gnp(n, p, rng);
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(rng);
    let clique = &vs[..k.min(n)];
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !g.adjacent(u, v) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `K_n` minus a perfect (or near-perfect) matching on its first `2m` vertices.
pub fn complete_minus_matching(n: usize, m: usize) -> MultiGraph {
    let mut g = MultiGraph::complete(n);
    for i in 0..m.min(n / 2) {
        g.remove_edge(2 * i, 2 * i + 1).unwrap();
    }
    g
}

/// Disjoint union with `h` shifted past the ids of `g`.
pub fn disjoint_union(g: &MultiGraph, h: &MultiGraph) -> MultiGraph {
    let (g, _) = g.compacted();
    let (h, _) = h.compacted();
    let off = g.order();
    let mut out = MultiGraph::new(off + h.order());
    for (u, v, k) in g.edges() {
        out.add_edges(u, v, k);
    }
    for (u, v, k) in h.edges() {
        out.add_edges(u + off, v + off, k);
    }
    out
}

/// Join: disjoint union plus every edge between the two sides.
pub fn join(g: &MultiGraph, h: &MultiGraph) -> MultiGraph {
    let off = g.compacted().0.order();
    let mut out = disjoint_union(g, h);
    let total = out.order();
    for u in 0..off {
        for v in off..total {
            out.add_edge(u, v);
        }
    }
    out
}
