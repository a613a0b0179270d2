//! Turning a failure witness into a set `W` of low missing degree, or into a
//! complete bipartite subgraph large enough to carry `K_t` directly.

use super::suppress::FailureWitness;
use super::MindegError;
use crate::audit::AuditLog;
use crate::matching::{extract_w_l, CloneGraph};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WOutcome {
    /// `|W| ≤ t - 1` and `f_{G_q[X]}(v) ≤ |W| + |R|` on `W`; may be empty.
    W(Vec<Vertex>),
    /// Every vertex of `side_a` is adjacent to every vertex of `side_b`, both
    /// of size at least `t`.
    Bipartite {
        side_a: Vec<Vertex>,
        side_b: Vec<Vertex>,
    },
}

fn check_w(inner: &MultiGraph, w: &[Vertex], r: usize, t: usize) -> bool {
    let all = inner.vertex_list();
    w.len() < t.max(1) && w.iter().all(|&v| inner.missing_count(v, &all) <= w.len() + r)
}

/// Largest `s ≤ t - 1` with at least `s` vertices of missing degree at most
/// `s + |R|` in `inner`; returns the lowest `s` such ids.
fn by_threshold(inner: &MultiGraph, r: usize, t: usize) -> Vec<Vertex> {
    let all = inner.vertex_list();
    for s in (1..t).rev() {
        let low: Vec<Vertex> = all
            .iter()
            .copied()
            .filter(|&v| inner.missing_count(v, &all) <= s + r)
            .collect();
        if low.len() >= s {
            return low[..s].to_vec();
        }
    }
    Vec::new()
}

/// Runs the W/L decomposition on the clone graph with parameter `|R| + t`.
/// A returned `W` of size `t` or more, together with its common
/// neighbourhood, is a complete bipartite subgraph of `G_q[X]`. Otherwise
/// the larger of that `W` and the threshold candidate is returned.
pub fn extract_w(
    witness: &FailureWitness,
    t: usize,
    log: &mut AuditLog,
) -> Result<WOutcome, MindegError> {
    let inner = witness.local.induced(&witness.x);
    let r = witness.r.len();
    let cg = CloneGraph::build(&witness.local, witness.z, Some(&witness.x))?;
    let h = cg.graph();
    let from_wl = match extract_w_l(&h, r + t) {
        Ok((w_slots, l_slots)) => {
            let base = |slots: &[usize]| -> Vec<Vertex> {
                let mut v: Vec<Vertex> = slots
                    .iter()
                    .filter(|&&s| !cg.is_clone[s])
                    .map(|&s| cg.slot[s])
                    .collect();
                v.sort_unstable();
                v
            };
            let (w, l) = (base(&w_slots), base(&l_slots));
            if w.len() >= t {
                log.check("mindeg.bipartite-other-side", l.len() >= t, || {
                    format!("|L| = {} below t = {t}", l.len())
                })?;
                let complete = w.iter().all(|&a| l.iter().all(|&b| inner.adjacent(a, b)));
                log.check("mindeg.bipartite-complete", complete, || {
                    "W and L are not fully joined".into()
                })?;
                log.note("mindeg.exit-bipartite");
                return Ok(WOutcome::Bipartite { side_a: w, side_b: l });
            }
            w
        }
        Err(e) => {
            // the witness guarantees the preconditions
            return Err(crate::audit::anomaly("mindeg.clone-complement-shape", e.to_string()).into());
        }
    };
    let threshold = by_threshold(&inner, r, t);
    let w = if threshold.len() > from_wl.len() { threshold } else { from_wl };
    log.check("mindeg.w-missing-bound", check_w(&inner, &w, r, t), || {
        format!("W = {w:?} violates f(v) ≤ |W| + |R| = {}", w.len() + r)
    })?;
    Ok(WOutcome::W(w))
}
