//! Search for the W/L decomposition of a graph whose complement has neither a
//! perfect matching nor is hypomatchable.
//!
//! The empty set always satisfies the four conditions, so the search looks
//! for the largest `W` it can certify: candidates from the Gallai–Edmonds
//! decomposition of the complement, a greedy common-neighbourhood build, and
//! full enumeration on small inputs. Every candidate is rechecked by
//! [`check_w_l`] before it is returned.

use thiserror::Error;

use super::{gallai_edmonds, has_perfect_matching, is_hypomatchable};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("complement has a perfect matching")]
    ComplementMatchable,
    #[error("complement is hypomatchable")]
    ComplementHypomatchable,
    #[error("graph must be simple")]
    NotSimple,
    #[error("no candidate passed verification: {0}")]
    NoCandidate(String),
}

const ENUMERATION_LIMIT: usize = 16;
const SUBSET_BUDGET: usize = 400_000;

/// Verifies the four conditions independently of how `w` and `l` were found.
pub fn check_w_l(h: &MultiGraph, t: usize, w: &[Vertex], l: &[Vertex]) -> Result<(), String> {
    if w.iter().any(|x| l.contains(x)) {
        return Err("W and L intersect".into());
    }
    if w.len() + 1 > t.max(1) && !w.is_empty() {
        return Err(format!("|W| = {} exceeds t - 1 = {}", w.len(), t.saturating_sub(1)));
    }
    if l.len() + 2 * w.len() < h.order() {
        return Err(format!(
            "|L| = {} below |V| - 2|W| = {}",
            l.len(),
            h.order() as isize - 2 * w.len() as isize
        ));
    }
    let all = h.vertex_list();
    for &v in w {
        if !h.contains(v) {
            return Err(format!("{v} is not a vertex"));
        }
        let f = h.missing_count(v, &all);
        if f > w.len() {
            return Err(format!("f({v}) = {f} exceeds |W| = {}", w.len()));
        }
        for &u in l {
            if !h.adjacent(u, v) {
                return Err(format!("{v} in W misses {u} in L"));
            }
        }
    }
    Ok(())
}

fn common_neighbourhood(h: &MultiGraph, w: &[Vertex]) -> Vec<Vertex> {
    h.vertices()
        .filter(|v| !w.contains(v) && w.iter().all(|&x| h.adjacent(x, *v)))
        .collect()
}

fn try_candidate(h: &MultiGraph, t: usize, w: &[Vertex]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let mut w = w.to_vec();
    w.sort_unstable();
    let l = common_neighbourhood(h, &w);
    check_w_l(h, t, &w, &l).ok().map(|_| (w, l))
}

/// Largest-`W` decomposition found by the verified search.
pub fn extract_w_l(h: &MultiGraph, t: usize) -> Result<(Vec<Vertex>, Vec<Vertex>), WlError> {
    if !h.is_simple() {
        return Err(WlError::NotSimple);
    }
    let comp = h.complement().map_err(|_| WlError::NotSimple)?;
    if has_perfect_matching(&comp) {
        return Err(WlError::ComplementMatchable);
    }
    if is_hypomatchable(&comp) {
        return Err(WlError::ComplementHypomatchable);
    }
    let all = h.vertex_list();
    let f = |v: Vertex| h.missing_count(v, &all);
    let ge = gallai_edmonds(&comp);
    let top = t.saturating_sub(1).min(all.len());

    for s in (1..=top).rev() {
        let eligible: Vec<Vertex> = all.iter().copied().filter(|&v| f(v) <= s).collect();
        if eligible.len() < s {
            continue;
        }
        // the Tutte set of the complement and its low-f part
        if ge.a.len() == s {
            if let Some(found) = try_candidate(h, t, &ge.a) {
                return Ok(found);
            }
        }
        let tutte_low: Vec<Vertex> = ge.a.iter().copied().filter(|&v| f(v) <= s).collect();
        if tutte_low.len() >= s {
            if let Some(found) = try_candidate(h, t, &tutte_low[..s]) {
                return Ok(found);
            }
        }
        // greedy: grow W keeping the common neighbourhood as large as possible
        let mut w: Vec<Vertex> = Vec::new();
        while w.len() < s {
            let next = eligible
                .iter()
                .copied()
                .filter(|v| !w.contains(v))
                .max_by_key(|&v| {
                    let mut ext = w.clone();
                    ext.push(v);
                    (common_neighbourhood(h, &ext).len(), usize::MAX - v)
                });
            match next {
                Some(v) => w.push(v),
                None => break,
            }
        }
        if w.len() == s {
            if let Some(found) = try_candidate(h, t, &w) {
                return Ok(found);
            }
        }
        if all.len() <= ENUMERATION_LIMIT {
            if let Some(found) = enumerate(h, t, &eligible, s) {
                return Ok(found);
            }
        }
    }
    try_candidate(h, t, &[]).ok_or_else(|| {
        WlError::NoCandidate(format!("gallai-edmonds a={:?} d={:?}", ge.a, ge.d))
    })
}

fn enumerate(
    h: &MultiGraph,
    t: usize,
    pool: &[Vertex],
    s: usize,
) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let m = pool.len();
    let mut idx: Vec<usize> = (0..s).collect();
    let mut tried = 0;
    loop {
        let w: Vec<Vertex> = idx.iter().map(|&i| pool[i]).collect();
        if let Some(found) = try_candidate(h, t, &w) {
            return Some(found);
        }
        tried += 1;
        if tried > SUBSET_BUDGET {
            return None;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < m - s + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest valid W by trying every subset.
    fn brute_best(h: &MultiGraph, t: usize) -> usize {
        let vs = h.vertex_list();
        let n = vs.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let w: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            if w.len() > best && try_candidate(h, t, &w).is_some() {
                best = w.len();
            }
        }
        best
    }

    #[test]
    fn complete_graph_gives_empty_w() {
        let h = MultiGraph::complete(5);
        // every vertex has f = 0; W = {v} also works but L must avoid W
        let (w, l) = extract_w_l(&h, 3).unwrap();
        assert!(check_w_l(&h, 3, &w, &l).is_ok());
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn precondition_errors() {
        let h = MultiGraph::new(4);
        assert_eq!(extract_w_l(&h, 2), Err(WlError::ComplementMatchable));
        let c5 = MultiGraph::cycle(5);
        assert_eq!(extract_w_l(&c5, 2), Err(WlError::ComplementHypomatchable));
    }

    #[test]
    fn split_graph() {
        // clique {0,1,2} joined to an independent set {3..8}
        let mut h = MultiGraph::new(9);
        for u in 0..3 {
            for v in u + 1..9 {
                h.add_edge(u, v);
            }
        }
        let comp = h.complement().unwrap();
        assert!(!has_perfect_matching(&comp) && !is_hypomatchable(&comp));
        for t in 1..6 {
            let (w, l) = extract_w_l(&h, t).unwrap();
            assert!(check_w_l(&h, t, &w, &l).is_ok());
            assert_eq!(w.len(), brute_best(&h, t), "t = {t}");
        }
    }

    #[test]
    fn checker_catches_violations() {
        let h = MultiGraph::path(4);
        assert!(check_w_l(&h, 3, &[1], &[0, 2, 3]).is_err());
        assert!(check_w_l(&h, 3, &[], &[0, 1]).is_err());
        assert!(check_w_l(&h, 3, &[], &[0, 1, 2, 3]).is_ok());
    }
}
