//! Splitting off the corresponding edges of an odd triangle.
//!
//! The corresponding edges of a triangle are the produced edges behind its
//! three auxiliary edges. Rather than matching each picture case by hand,
//! the required pairs are routed by exhaustive search over edge-disjoint
//! paths in those (at most six) edges; an unroutable triangle is reported.

use super::kempe::Profile;
use super::parity::ParityGraph;
use super::ChromaticError;
use crate::audit::anomaly;
use crate::certificate::SplitTrace;
use crate::multigraph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// All-`Z` triangle: the three edges between its `y` vertices.
    A,
    /// `x z_j z_k` triangle: the edge `y_j y_k`.
    B,
    /// `x z_j z_k` triangle: two of `x y_j`, `y_j y_k`, `y_k x`.
    C,
}

/// Paths to split and the edges they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub paths: Vec<Vec<Vertex>>,
}

impl Fragment {
    pub fn produced(&self) -> Vec<(Vertex, Vertex)> {
        self.paths.iter().map(|p| (p[0], *p.last().unwrap())).collect()
    }

    pub fn trace(&self) -> SplitTrace {
        let mut tr = SplitTrace::new();
        for p in &self.paths {
            if p.len() > 2 {
                tr.split_path(p);
            }
        }
        tr
    }
}

/// Current `(y_j, y_j')` for the `Z` vertex `v`.
pub fn current_pair(prof: &Profile, pg: &ParityGraph, v: usize) -> (Vertex, Vertex) {
    let j = v - pg.alpha;
    let (y, y2) = prof.doubles[j];
    if pg.flip[j] {
        (y2, y)
    } else {
        (y, y2)
    }
}

/// Host vertex standing for an auxiliary vertex: `x_i`, or the current `y_j`.
pub fn host_vertex(prof: &Profile, pg: &ParityGraph, v: usize) -> Vertex {
    if pg.is_z(v) {
        current_pair(prof, pg, v).0
    } else {
        prof.singles[v]
    }
}

/// Produced edges behind the auxiliary edge `uv`.
pub fn edge_images(prof: &Profile, pg: &ParityGraph, u: usize, v: usize) -> Vec<(Vertex, Vertex)> {
    let (u, v) = if pg.is_z(u) && !pg.is_z(v) { (v, u) } else { (u, v) };
    let odd = pg.odd(u, v);
    let (b, b2) = current_pair(prof, pg, v);
    if !pg.is_z(u) {
        let x = prof.singles[u];
        return vec![(x, if odd { b2 } else { b })];
    }
    let (a, a2) = current_pair(prof, pg, u);
    if odd {
        vec![(a, b2), (a2, b)]
    } else {
        vec![(a, b), (a2, b2)]
    }
}

pub fn corresponding_edges(prof: &Profile, pg: &ParityGraph, tri: [usize; 3]) -> Vec<(Vertex, Vertex)> {
    let [a, b, c] = tri;
    let mut out = edge_images(prof, pg, a, b);
    out.extend(edge_images(prof, pg, b, c));
    out.extend(edge_images(prof, pg, a, c));
    out
}

pub fn split_method(
    kind: Method,
    tri: [usize; 3],
    pg: &ParityGraph,
    prof: &Profile,
) -> Result<Fragment, ChromaticError> {
    let all_z = tri.iter().all(|&v| pg.is_z(v));
    let one_x = !pg.is_z(tri[0]) && pg.is_z(tri[1]) && pg.is_z(tri[2]);
    let fits = match kind {
        Method::A => all_z,
        Method::B | Method::C => one_x,
    };
    if !fits || !pg.triangle_odd(tri) {
        return Err(anomaly("chromatic.figure-case", format!("{tri:?} is not an odd triangle for method {kind:?}")).into());
    }
    let edges = corresponding_edges(prof, pg, tri);
    let h = |v: usize| host_vertex(prof, pg, v);
    let [a, b, c] = tri;
    let options: Vec<Vec<(Vertex, Vertex)>> = match kind {
        Method::A => vec![vec![(h(a), h(b)), (h(b), h(c)), (h(c), h(a))]],
        Method::B => vec![vec![(h(b), h(c))]],
        Method::C => vec![
            vec![(h(a), h(b)), (h(b), h(c))],
            vec![(h(a), h(b)), (h(a), h(c))],
            vec![(h(b), h(c)), (h(a), h(c))],
        ],
    };
    for demands in options {
        if let Some(paths) = route(&edges, &demands) {
            return Ok(Fragment { paths });
        }
    }
    Err(anomaly(
        "chromatic.figure-case",
        format!("corresponding edges {edges:?} of {tri:?} match no case for method {kind:?}"),
    )
    .into())
}

/// Edge-disjoint paths for every demand, shortest choices first.
fn route(edges: &[(Vertex, Vertex)], demands: &[(Vertex, Vertex)]) -> Option<Vec<Vec<Vertex>>> {
    fn paths(edges: &[(Vertex, Vertex)], used: &[bool], from: Vertex, to: Vertex) -> Vec<(Vec<Vertex>, Vec<usize>)> {
        fn go(
            edges: &[(Vertex, Vertex)],
            used: &[bool],
            to: Vertex,
            walk: &mut Vec<Vertex>,
            ids: &mut Vec<usize>,
            out: &mut Vec<(Vec<Vertex>, Vec<usize>)>,
        ) {
            let u = *walk.last().unwrap();
            if u == to {
                out.push((walk.clone(), ids.clone()));
                return;
            }
            for (k, &(p, q)) in edges.iter().enumerate() {
                if used[k] || ids.contains(&k) {
                    continue;
                }
                let w = if p == u {
                    q
                } else if q == u {
                    p
                } else {
                    continue;
                };
                if walk.contains(&w) {
                    continue;
                }
                walk.push(w);
                ids.push(k);
                go(edges, used, to, walk, ids, out);
                ids.pop();
                walk.pop();
            }
        }
        let mut out = Vec::new();
        go(edges, used, to, &mut vec![from], &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }
    fn solve(edges: &[(Vertex, Vertex)], used: &mut Vec<bool>, demands: &[(Vertex, Vertex)], acc: &mut Vec<Vec<Vertex>>) -> bool {
        let Some(&(s, t)) = demands.first() else {
            return true;
        };
        for (walk, ids) in paths(edges, used, s, t) {
            for &k in &ids {
                used[k] = true;
            }
            acc.push(walk);
            if solve(edges, used, &demands[1..], acc) {
                return true;
            }
            acc.pop();
            for &k in &ids {
                used[k] = false;
            }
        }
        false
    }
    let mut used = vec![false; edges.len()];
    let mut acc = Vec::new();
    solve(edges, &mut used, demands, &mut acc).then_some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    fn host(edges: &[(Vertex, Vertex)], n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, edges)
    }

    fn replay(frag: &Fragment, edges: &[(Vertex, Vertex)], n: usize) -> MultiGraph {
        frag.trace().replay(&host(edges, n)).unwrap()
    }

    /// `Z` only: `y_i, y_i' = 0, 1`, `y_j, y_j' = 2, 3`, `y_k, y_k' = 4, 5`.
    fn type_one(odd: [bool; 3]) -> (ParityGraph, Profile) {
        let mut pg = ParityGraph::new(0, 3);
        pg.insert(0, 1, odd[0]);
        pg.insert(1, 2, odd[1]);
        pg.insert(0, 2, odd[2]);
        let prof = Profile {
            singles: vec![],
            doubles: vec![(0, 1), (2, 3), (4, 5)],
        };
        (pg, prof)
    }

    #[test]
    fn method_a_on_both_type_one_cases() {
        // all three odd: the six-cycle case, three length-two splits
        let (pg, prof) = type_one([true, true, true]);
        let edges = corresponding_edges(&prof, &pg, [0, 1, 2]);
        let mut sorted: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(0, 3), (0, 5), (1, 2), (1, 4), (2, 5), (3, 4)]);
        let frag = split_method(Method::A, [0, 1, 2], &pg, &prof).unwrap();
        assert_eq!(frag.paths.len(), 3);
        assert!(frag.paths.iter().all(|p| p.len() == 3));
        let g = replay(&frag, &edges, 6);
        for (u, v) in [(0, 2), (2, 4), (0, 4)] {
            assert!(g.adjacent(u, v));
        }
        // one odd edge: two direct edges and one longer path
        let (pg, prof) = type_one([false, true, false]);
        let edges = corresponding_edges(&prof, &pg, [0, 1, 2]);
        let frag = split_method(Method::A, [0, 1, 2], &pg, &prof).unwrap();
        assert_eq!(frag.paths.len(), 3);
        let g = replay(&frag, &edges, 6);
        for (u, v) in [(0, 2), (2, 4), (0, 4)] {
            assert!(g.adjacent(u, v));
        }
    }

    #[test]
    fn even_triangle_is_rejected() {
        let (pg, prof) = type_one([false, false, false]);
        assert!(split_method(Method::A, [0, 1, 2], &pg, &prof).is_err());
    }

    /// `x = 0`, `y_j, y_j' = 1, 2`, `y_k, y_k' = 3, 4`; parities of
    /// `x z_j`, `x z_k`, `z_j z_k`.
    fn type_two(odd: [bool; 3]) -> (ParityGraph, Profile) {
        let mut pg = ParityGraph::new(1, 2);
        pg.insert(0, 1, odd[0]);
        pg.insert(0, 2, odd[1]);
        pg.insert(1, 2, odd[2]);
        let prof = Profile {
            singles: vec![0],
            doubles: vec![(1, 2), (3, 4)],
        };
        (pg, prof)
    }

    #[test]
    fn methods_b_and_c_on_all_type_two_cases() {
        for odd in [[false, false, true], [true, true, true], [false, true, false], [true, false, false]] {
            let (pg, prof) = type_two(odd);
            let edges = corresponding_edges(&prof, &pg, [0, 1, 2]);
            assert_eq!(edges.len(), 4);

            let frag = split_method(Method::B, [0, 1, 2], &pg, &prof).unwrap();
            assert_eq!(frag.produced(), vec![(1, 3)]);
            assert!(replay(&frag, &edges, 5).adjacent(1, 3));

            let frag = split_method(Method::C, [0, 1, 2], &pg, &prof).unwrap();
            assert_eq!(frag.paths.len(), 2, "{odd:?}");
            let g = replay(&frag, &edges, 5);
            let got = [(0, 1), (1, 3), (0, 3)].iter().filter(|&&(u, v)| g.adjacent(u, v)).count();
            assert!(got >= 2, "{odd:?}");
        }
    }

    #[test]
    fn swapped_labels_still_route() {
        let (mut pg, prof) = type_one([true, true, true]);
        pg.swap(&[1]);
        assert!(pg.triangle_odd([0, 1, 2]));
        let frag = split_method(Method::A, [0, 1, 2], &pg, &prof).unwrap();
        let edges = corresponding_edges(&prof, &pg, [0, 1, 2]);
        let g = replay(&frag, &edges, 6);
        // z_j now stands for 3
        for (u, v) in [(0, 3), (3, 4), (0, 4)] {
            assert!(g.adjacent(u, v));
        }
    }
}
