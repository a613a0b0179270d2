//! Clique immersions in complete bipartite and complete multipartite graphs.

use super::link::factor_colour;
use super::MindegError;
use crate::certificate::{ImmersionCertificate, SplitTrace};
use crate::multigraph::{MultiGraph, Vertex};
use crate::oracle::{immersion_search, SearchBudget, SearchOutcome};

/// `K_t` on the `t` lowest vertices of `side_a`. The pair `(i, j)` is routed
/// through the `c`-th lowest vertex of `side_b`, where `c` is the colour of
/// `ij` in a proper edge colouring of `K_t`, so no `a–b` edge is used twice.
pub fn kt_from_bipartite(
    g: &MultiGraph,
    side_a: &[Vertex],
    side_b: &[Vertex],
    t: usize,
) -> Result<(SplitTrace, Vec<Vertex>), MindegError> {
    if side_a.len() < t || side_b.len() < t {
        return Err(MindegError::SidesTooSmall {
            a: side_a.len(),
            b: side_b.len(),
            t,
        });
    }
    let mut a = side_a.to_vec();
    a.sort_unstable();
    a.truncate(t);
    let mut b = side_b.to_vec();
    b.sort_unstable();
    let mut trace = SplitTrace::new();
    for i in 0..t {
        for j in i + 1..t {
            if g.adjacent(a[i], a[j]) {
                continue;
            }
            let hub = b[factor_colour(t, i, j)];
            trace.split(a[i], hub, a[j]);
        }
    }
    Ok((trace, a))
}

/// Turns the routes of a certificate into path splits on its host.
pub fn routes_to_trace(cert: &ImmersionCertificate) -> SplitTrace {
    let mut trace = SplitTrace::new();
    for route in &cert.routes {
        trace.split_path(route);
    }
    trace
}

/// How [`kt_from_multipartite`] found its clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipartiteRoute {
    OnePerPart,
    Bipartite,
    Oracle,
}

/// `K_t` in a complete multipartite subgraph with the given parts: one
/// vertex per part when there are `t` parts, else a grouping of the parts
/// into two sides of size at least `t`, else exhaustive search.
pub fn kt_from_multipartite(
    g: &MultiGraph,
    parts: &[Vec<Vertex>],
    t: usize,
    budget: &SearchBudget,
) -> Result<(SplitTrace, Vec<Vertex>, MultipartiteRoute), MindegError> {
    for (i, p) in parts.iter().enumerate() {
        for q in &parts[i + 1..] {
            if p.iter().any(|&u| q.iter().any(|&v| !g.adjacent(u, v))) {
                return Err(MindegError::NotMultipartite);
            }
        }
    }
    if parts.len() >= t {
        let mut branch: Vec<Vertex> = parts.iter().take(t).map(|p| p[0]).collect();
        branch.sort_unstable();
        return Ok((SplitTrace::new(), branch, MultipartiteRoute::OnePerPart));
    }
    let k = parts.len();
    for mask in 1u64..(1u64 << k).saturating_sub(1) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, p) in parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.extend_from_slice(p);
            } else {
                right.extend_from_slice(p);
            }
        }
        if left.len() >= t && right.len() >= t {
            let (trace, branch) = kt_from_bipartite(g, &left, &right, t)?;
            return Ok((trace, branch, MultipartiteRoute::Bipartite));
        }
    }
    let all: Vec<Vertex> = parts.iter().flatten().copied().collect();
    let sub = g.induced(&all);
    match immersion_search(&sub, t, false, budget) {
        SearchOutcome::Found(cert) => {
            Ok((routes_to_trace(&cert), cert.branch.clone(), MultipartiteRoute::Oracle))
        }
        SearchOutcome::NotFound => Err(MindegError::NotMultipartite),
        SearchOutcome::Exhausted => Err(MindegError::Budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{trace_to_certificate, verify};
    use crate::gen;

    fn check(g: &MultiGraph, trace: &SplitTrace, branch: &[Vertex], t: usize) {
        assert_eq!(branch.len(), t);
        let cert = trace_to_certificate(g, trace, branch).unwrap();
        assert!(verify(g, &cert).is_accept());
    }

    #[test]
    fn bipartite_t2_is_one_split() {
        let g = gen::complete_multipartite(&[2, 2]);
        let (trace, branch) = kt_from_bipartite(&g, &[0, 1], &[2, 3], 2).unwrap();
        assert_eq!(trace.len(), 1);
        check(&g, &trace, &branch, 2);
    }

    #[test]
    fn bipartite_up_to_ten() {
        for t in 2..=10 {
            let g = gen::complete_multipartite(&[t, t]);
            let a: Vec<_> = (0..t).collect();
            let b: Vec<_> = (t..2 * t).collect();
            let (trace, branch) = kt_from_bipartite(&g, &a, &b, t).unwrap();
            check(&g, &trace, &branch, t);
        }
    }

    #[test]
    fn k33_against_oracle() {
        let g = gen::complete_multipartite(&[3, 3]);
        let (trace, branch) = kt_from_bipartite(&g, &[0, 1, 2], &[3, 4, 5], 3).unwrap();
        check(&g, &trace, &branch, 3);
        assert!(immersion_search(&g, 3, false, &SearchBudget::default()).is_found());
    }

    #[test]
    fn small_sides_rejected() {
        let g = gen::complete_multipartite(&[2, 3]);
        assert!(matches!(
            kt_from_bipartite(&g, &[0, 1], &[2, 3, 4], 3),
            Err(MindegError::SidesTooSmall { .. })
        ));
    }

    #[test]
    fn multipartite_routes() {
        let budget = SearchBudget::default();
        let k4 = gen::complete(4);
        let parts: Vec<Vec<Vertex>> = (0..4).map(|v| vec![v]).collect();
        let (tr, br, how) = kt_from_multipartite(&k4, &parts, 3, &budget).unwrap();
        assert_eq!(how, MultipartiteRoute::OnePerPart);
        check(&k4, &tr, &br, 3);

        let g = gen::complete_multipartite(&[3, 3]);
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let (tr, br, how) = kt_from_multipartite(&g, &parts, 3, &budget).unwrap();
        assert_eq!(how, MultipartiteRoute::Bipartite);
        check(&g, &tr, &br, 3);

        let oct = gen::cocktail(3);
        let parts = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        let (tr, br, how) = kt_from_multipartite(&oct, &parts, 4, &budget).unwrap();
        assert_eq!(how, MultipartiteRoute::Oracle);
        check(&oct, &tr, &br, 4);
    }
}
