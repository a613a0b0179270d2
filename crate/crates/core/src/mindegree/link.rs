//! Completing `M = z_1, ..., z_t` to a clique by length-two splits through
//! `M̄`, for the case where more than half of `M` comes from `A`.
//!
//! Stage 1 joins `z_{q+1}, ..., z_p` to `Â = z_{p+1}, ..., z_t`, stage 2
//! joins `z_1, ..., z_q` to `Â` twice, stage 3 completes `A`. The spare copy
//! of the stage-2 bipartite graph then yields the clique on `Â`: an edge of
//! colour `c` in a proper colouring of `K_q` is split through `z_{c+1}`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::MindegError;
use crate::audit::{anomaly, AuditLog};
use crate::certificate::SplitTrace;
use crate::multigraph::{MultiGraph, Vertex};

/// Colour of the edge `ij` of `K_q` in the colouring `(i + j) mod q`.
pub fn factor_colour(q: usize, i: usize, j: usize) -> usize {
    (i + j) % q
}

/// Proper edge colouring of `K_q` with `q` colours, as colour classes of
/// pairs `(i, j)`, `i < j`. Classes may be empty when `q ≤ 2`.
pub fn near_one_factorization(q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut classes = vec![Vec::new(); q];
    for i in 0..q {
        for j in i + 1..q {
            classes[factor_colour(q, i, j)].push((i, j));
        }
    }
    classes
}

#[derive(Clone, Debug)]
pub struct LinkState {
    pub graph: MultiGraph,
    /// `z_1, ..., z_t`; the first `p` form `A`.
    pub order: Vec<Vertex>,
    pub outside: Vec<Vertex>,
    pub p: usize,
    pub rp: usize,
    pub trace: SplitTrace,
    pub links: usize,
}

impl LinkState {
    pub fn new(graph: MultiGraph, order: Vec<Vertex>, outside: Vec<Vertex>, p: usize, rp: usize) -> Self {
        LinkState {
            graph,
            order,
            outside,
            p,
            rp,
            trace: SplitTrace::new(),
            links: 0,
        }
    }

    pub fn t(&self) -> usize {
        self.order.len()
    }

    pub fn q(&self) -> usize {
        self.t() - self.p
    }

    /// `f(z_i | M̄)` for the 1-based position `i`.
    pub fn f(&self, i: usize) -> usize {
        self.graph.missing_count(self.order[i - 1], &self.outside)
    }

    /// Initial missing-degree bounds: `2p + i` on `A`, `t + 2p + r_p` on
    /// `Â`, and `|M̄| ≥ 6t + r_p`.
    pub fn check_initial(&self, log: &mut AuditLog) -> Result<(), MindegError> {
        let (t, p, rp) = (self.t(), self.p, self.rp);
        log.check("mindeg.link-outside-size", self.outside.len() >= 6 * t + rp, || {
            format!("|M̄| = {} below 6t + r_p = {}", self.outside.len(), 6 * t + rp)
        })?;
        for i in 1..=t {
            let bound = if i <= p { 2 * p + i } else { t + 2 * p + rp };
            let f = self.f(i);
            log.check("mindeg.link-initial-bound", f <= bound, || {
                format!("f(z_{i} | M̄) = {f} exceeds {bound}")
            })?;
        }
        Ok(())
    }

    /// Splits `z_i w z_j` for the lowest common neighbour `w ∈ M̄`.
    pub fn link(&mut self, i: usize, j: usize, log: &mut AuditLog) -> Result<Vertex, MindegError> {
        let (t, rp) = (self.t(), self.rp);
        let (fi, fj) = (self.f(i), self.f(j));
        log.check("mindeg.link-precondition", fi + fj < 6 * t + rp, || {
            format!("f(z_{i}) + f(z_{j}) = {} not below 6t + r_p = {}", fi + fj, 6 * t + rp)
        })?;
        log.check("mindeg.link-outside-size", 6 * t + rp <= self.outside.len(), || {
            format!("|M̄| = {} below 6t + r_p", self.outside.len())
        })?;
        let (zi, zj) = (self.order[i - 1], self.order[j - 1]);
        let w = self
            .outside
            .iter()
            .copied()
            .find(|&w| self.graph.adjacent(zi, w) && self.graph.adjacent(w, zj))
            .ok_or_else(|| anomaly("mindeg.link-common-neighbour", format!("z_{i} and z_{j} share no neighbour in M̄")))?;
        self.graph.split_at(zi, w, zj)?;
        self.trace.split(zi, w, zj);
        self.links += 1;
        log.check("mindeg.link-growth", self.f(i) <= fi + 1 && self.f(j) <= fj + 1, || {
            format!("link through {w} raised f by more than one")
        })?;
        Ok(w)
    }

    fn stage_bound(&self, label: &'static str, bound: impl Fn(usize) -> Option<usize>, log: &mut AuditLog) -> Result<(), MindegError> {
        for i in 1..=self.t() {
            if let Some(b) = bound(i) {
                let f = self.f(i);
                log.check(label, f <= b, || format!("f(z_{i} | M̄) = {f} exceeds {b}"))?;
            }
        }
        Ok(())
    }
}

/// Runs the three stages and the colouring finish. The returned state's
/// trace makes `order` a clique in its graph.
pub fn main_linking(mut st: LinkState, log: &mut AuditLog) -> Result<LinkState, MindegError> {
    let (t, p) = (st.t(), st.p);
    if 2 * p <= t || p > t {
        return Err(MindegError::LinkCase { p, t });
    }
    let q = t - p;
    let rp = st.rp;
    st.check_initial(log)?;

    for s in (q + 1..=p).rev() {
        for i in p + 1..=t {
            st.link(s, i, log)?;
        }
    }
    st.stage_bound(
        "mindeg.link-stage1-bound",
        |i| {
            Some(if i <= q {
                2 * p + i
            } else if i <= p {
                2 * p + i + q
            } else {
                t + 2 * p + rp + (p - q)
            })
        },
        log,
    )?;

    for s in (1..=q).rev() {
        for i in p + 1..=t {
            st.link(s, i, log)?;
            st.link(s, i, log)?;
        }
    }
    st.stage_bound("mindeg.link-stage2-bound", |i| (i <= p).then_some(2 * t + i), log)?;

    for s in (1..=p).rev() {
        for i in (1..s).rev() {
            st.link(s, i, log)?;
        }
    }

    for (c, class) in near_one_factorization(q).into_iter().enumerate() {
        let hub = st.order[c];
        for (a, b) in class {
            let (za, zb) = (st.order[p + a], st.order[p + b]);
            st.graph.split_at(za, hub, zb)?;
            st.trace.split(za, hub, zb);
        }
    }
    let complete = (0..t).all(|i| (i + 1..t).all(|j| st.graph.adjacent(st.order[i], st.order[j])));
    log.check("mindeg.link-complete", complete, || "M is not a clique after linking".into())?;
    Ok(st)
}

/// A random graph on `M ∪ M̄` meeting the initial bounds with equality:
/// each `z_i` misses exactly its allowance of `M̄`. `M̄` has `6t + r_p + extra`
/// vertices; inside `M` and inside `M̄` edges appear with probability 1/2.
pub fn planted_link_state(t: usize, p: usize, rp: usize, extra: usize, rng: &mut impl Rng) -> LinkState {
    let m_out = 6 * t + rp + extra;
    let n = t + m_out;
    let mut g = MultiGraph::new(n);
    let outside: Vec<Vertex> = (t..n).collect();
    for u in 0..n {
        for v in u + 1..n {
            let both_in = v < t;
            let both_out = u >= t;
            if (both_in || both_out) && rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    for i in 1..=t {
        let allowance = if i <= p { 2 * p + i } else { t + 2 * p + rp };
        let mut pool = outside.clone();
        pool.shuffle(rng);
        let missing = &pool[..allowance.min(m_out)];
        for &w in &outside {
            if !missing.contains(&w) {
                g.add_edge(i - 1, w);
            }
        }
    }
    LinkState::new(g, (0..t).collect(), outside, p, rp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{trace_to_certificate, verify};
    use crate::gen;

    fn proper(q: usize) -> bool {
        let classes = near_one_factorization(q);
        let mut seen = vec![vec![false; q]; q];
        let mut edges = 0;
        for class in &classes {
            let mut used = vec![false; q];
            for &(a, b) in class {
                if used[a] || used[b] || seen[a][b] {
                    return false;
                }
                used[a] = true;
                used[b] = true;
                seen[a][b] = true;
                edges += 1;
            }
        }
        classes.len() == q && edges == q * q.saturating_sub(1) / 2
    }

    #[test]
    fn factorization_small_cases() {
        assert_eq!(near_one_factorization(3).iter().filter(|c| !c.is_empty()).count(), 3);
        assert!(near_one_factorization(3).iter().all(|c| c.len() <= 1));
        let two = near_one_factorization(2);
        assert_eq!(two.iter().filter(|c| !c.is_empty()).count(), 1);
        for class in near_one_factorization(7) {
            // a perfect matching of K7 minus one vertex
            assert_eq!(class.len(), 3);
        }
        for q in 1..=64 {
            assert!(proper(q), "q = {q}");
        }
    }

    /// `z_1 = 0` sees all of `M̄ = 2..15`, `z_2 = 1` sees `seen`.
    fn pair_state(seen: &[Vertex]) -> LinkState {
        let mut g = MultiGraph::new(15);
        for w in 2..15 {
            g.add_edge(0, w);
        }
        for &w in seen {
            g.add_edge(1, w);
        }
        LinkState::new(g, vec![0, 1], (2..15).collect(), 1, 1)
    }

    #[test]
    fn link_choices() {
        let mut log = AuditLog::new();
        let mut st = pair_state(&(2..15).collect::<Vec<_>>());
        assert_eq!(st.link(1, 2, &mut log).unwrap(), 2);
        assert!(st.graph.adjacent(0, 1));
        // one common neighbour; f sum 12 is one below 6t + r_p = 13
        let mut st = pair_state(&[9]);
        assert_eq!(st.link(1, 2, &mut log).unwrap(), 9);
        // f sum 13 violates the precondition
        let mut st = pair_state(&[]);
        let err = st.link(1, 2, &mut log).unwrap_err();
        assert!(err.to_string().contains("mindeg.link-precondition"));
    }

    #[test]
    fn degenerate_q_zero() {
        let mut rng = gen::rng(3);
        let st = planted_link_state(2, 2, 1, 0, &mut rng);
        let h = st.graph.clone();
        let out = main_linking(st, &mut AuditLog::new()).unwrap();
        assert_eq!(out.links, 1);
        let cert = trace_to_certificate(&h, &out.trace, &out.order).unwrap();
        assert!(verify(&h, &cert).is_accept());
    }

    #[test]
    fn planted_instances_complete() {
        let mut rng = gen::rng(11);
        for (t, p) in [(3, 2), (4, 3), (5, 3), (6, 4)] {
            for rp in 1..=p {
                let st = planted_link_state(t, p, rp, rp % 2, &mut rng);
                let h = st.graph.clone();
                let mut log = AuditLog::new();
                let out = main_linking(st, &mut log).unwrap();
                let cert = trace_to_certificate(&h, &out.trace, &out.order).unwrap();
                assert!(verify(&h, &cert).is_accept(), "t = {t}, p = {p}");
                assert!(log.count("mindeg.link-precondition") > 0);
            }
        }
    }

    #[test]
    fn rejects_case_one() {
        let mut rng = gen::rng(1);
        let st = planted_link_state(4, 2, 1, 0, &mut rng);
        assert!(matches!(main_linking(st, &mut AuditLog::new()), Err(MindegError::LinkCase { .. })));
    }
}
