//! Non-neighbour sets around an induced five-cycle and the splits that join
//! two cycle vertices to every branch vertex of the inner immersion.
//!
//! Cycle positions are `0..5` with `cycle[k]` adjacent to `cycle[k ± 1]`.

use std::collections::BTreeSet;

use crate::audit::{anomaly, AuditLog};
use crate::certificate::{SplitTrace, TraceOp};
use crate::multigraph::{MultiGraph, Vertex};

use super::Stable3Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stable3State {
    pub cycle: [Vertex; 5],
    /// Vertices off the cycle.
    pub rest: Vec<Vertex>,
    /// Branch vertices of the inner immersion.
    pub branch: Vec<Vertex>,
    /// `rest` minus `branch`.
    pub spare: Vec<Vertex>,
    /// Non-neighbours of `cycle[k]` in `rest`.
    pub nonnbr: [BTreeSet<Vertex>; 5],
    /// Extended sets: `nonnbr[k] ⊆ ext[k]`, at most `2t` each, and
    /// `ext[k]`, `ext[k + 2]` disjoint.
    pub ext: [BTreeSet<Vertex>; 5],
    /// Half the inner clique order.
    pub t: usize,
}

fn at(k: usize) -> usize {
    k % 5
}

impl Stable3State {
    pub fn new(g: &MultiGraph, cycle: [Vertex; 5], rest: Vec<Vertex>, t: usize) -> Self {
        let nonnbr: [BTreeSet<Vertex>; 5] = std::array::from_fn(|k| {
            rest.iter().copied().filter(|&u| !g.adjacent(cycle[k], u)).collect()
        });
        Stable3State {
            cycle,
            spare: rest.clone(),
            rest,
            branch: Vec::new(),
            ext: nonnbr.clone(),
            nonnbr,
            t,
        }
    }

    pub fn set_branch(&mut self, mut branch: Vec<Vertex>) {
        branch.sort_unstable();
        self.spare = self.rest.iter().copied().filter(|v| branch.binary_search(v).is_err()).collect();
        self.branch = branch;
    }

    /// `ext[k] ∩ ext[k + 1]`.
    pub fn shared(&self, k: usize) -> BTreeSet<Vertex> {
        self.ext[at(k)].intersection(&self.ext[at(k + 1)]).copied().collect()
    }

    /// Members of `ext[k]` in neither neighbouring set.
    pub fn own(&self, k: usize) -> BTreeSet<Vertex> {
        self.ext[at(k)]
            .iter()
            .copied()
            .filter(|v| !self.ext[at(k + 4)].contains(v) && !self.ext[at(k + 1)].contains(v))
            .collect()
    }

    /// Branch vertices not adjacent to `cycle[k]`.
    pub fn missing(&self, k: usize) -> Vec<Vertex> {
        self.branch.iter().copied().filter(|v| self.nonnbr[at(k)].contains(v)).collect()
    }

    pub fn deficient(&self, k: usize) -> bool {
        self.ext[at(k)].len() < 2 * self.t
    }

    /// Relabels so that position `r` becomes position 0.
    pub fn rotate(&mut self, r: usize) {
        self.cycle = std::array::from_fn(|k| self.cycle[at(k + r)]);
        self.nonnbr = std::array::from_fn(|k| self.nonnbr[at(k + r)].clone());
        self.ext = std::array::from_fn(|k| self.ext[at(k + r)].clone());
    }

    fn constraints_hold(&self) -> bool {
        (0..5).all(|k| {
            self.nonnbr[k].is_subset(&self.ext[k])
                && self.ext[k].len() <= 2 * self.t
                && self.ext[k].is_disjoint(&self.ext[at(k + 2)])
        })
    }
}

/// Grows `ext` until neither move applies: an uncovered vertex joins a
/// deficient set, or a deficient set takes a vertex from the private part
/// of a neighbouring set. Returns the number of moves.
pub fn extend_nonneighbour_sets(st: &mut Stable3State, log: &mut AuditLog) -> Result<usize, Stable3Error> {
    log.check("stable3.extension-constraints", st.constraints_hold(), || {
        format!("initial non-neighbour sets {:?} violate the caps", st.nonnbr)
    })?;
    let mut moves = 0;
    'grow: loop {
        let uncovered = st.rest.iter().copied().find(|v| st.ext.iter().all(|s| !s.contains(v)));
        if let Some(v) = uncovered {
            if let Some(k) = (0..5).find(|&k| st.deficient(k)) {
                st.ext[k].insert(v);
                moves += 1;
                continue;
            }
        }
        for k in 0..5 {
            if !st.deficient(k) {
                continue;
            }
            let from = st.own(k + 4).union(&st.own(k + 1)).next().copied();
            if let Some(v) = from {
                st.ext[k].insert(v);
                moves += 1;
                continue 'grow;
            }
        }
        break;
    }
    log.check("stable3.extension-constraints", st.constraints_hold(), || {
        format!("extended sets {:?} violate the caps", st.ext)
    })?;
    let mut parts: Vec<BTreeSet<Vertex>> = (0..5).map(|k| st.own(k)).collect();
    parts.extend((0..5).map(|k| st.shared(k)));
    let total: usize = parts.iter().map(BTreeSet::len).sum();
    let union: BTreeSet<Vertex> = parts.iter().flatten().copied().collect();
    log.check("stable3.ten-sets-disjoint", total == union.len(), || {
        format!("private and shared parts overlap: {parts:?}")
    })?;
    if (0..5).any(|k| st.deficient(k)) {
        log.check("stable3.sets-cover-rest", union.len() == st.rest.len(), || {
            format!("{} of {} vertices covered with a deficient set left", union.len(), st.rest.len())
        })?;
    }
    for k in 0..5 {
        if st.deficient(k) {
            log.check(
                "stable3.deficient-neighbours-private-empty",
                st.own(k + 4).is_empty() && st.own(k + 1).is_empty(),
                || format!("set {k} is deficient but a neighbouring private part is non-empty"),
            )?;
        }
    }
    Ok(moves)
}

/// Finds `k` with `ext[k]` and `ext[k + 2]` both full and rotates it to 0.
pub fn choose_full_pair(st: &mut Stable3State, log: &mut AuditLog) -> Result<usize, Stable3Error> {
    let full = |k: usize| st.ext[at(k)].len() == 2 * st.t;
    let k = (0..5).find(|&k| full(k) && full(k + 2));
    log.check("stable3.two-full-sets", k.is_some(), || {
        let sizes: Vec<usize> = st.ext.iter().map(BTreeSet::len).collect();
        format!("no two full sets two apart, sizes {sizes:?}, t = {}", st.t)
    })?;
    let k = k.unwrap();
    st.rotate(k);
    Ok(k)
}

/// Splits joining `cycle[0]` and `cycle[2]` to every branch vertex and to
/// each other. Requires `ext[0]` and `ext[2]` full. Every path uses edges
/// between the cycle and `rest`, or the two cycle edges at `cycle[1]`.
pub fn link_branch_pair(g: &MultiGraph, st: &Stable3State, log: &mut AuditLog) -> Result<SplitTrace, Stable3Error> {
    let c = st.cycle;
    let t2 = 2 * st.t;
    let in_spare = |set: &BTreeSet<Vertex>| -> Vec<Vertex> {
        st.spare.iter().copied().filter(|v| set.contains(v)).collect()
    };
    // helpers for cycle[0] sit in ext[2], helpers for cycle[2] in ext[0]
    let helpers_first = in_spare(&st.ext[2]);
    let helpers_third = in_spare(&st.ext[0]);
    let missing_first = st.missing(0);
    let missing_third = st.missing(2);
    let branch_in = |k: usize| st.branch.iter().filter(|v| st.ext[k].contains(v)).count();
    log.check(
        "stable3.helper-count",
        helpers_third.len() + branch_in(0) == t2 && helpers_first.len() + branch_in(2) == t2,
        || "a full extended set is not split between branch and spare vertices".into(),
    )?;
    log.check(
        "stable3.helpers-suffice",
        helpers_first.len() >= missing_first.len() && helpers_third.len() >= missing_third.len(),
        || {
            format!(
                "helpers {}/{} against missing {}/{}",
                helpers_first.len(),
                helpers_third.len(),
                missing_first.len(),
                missing_third.len()
            )
        },
    )?;
    let adj = |u: Vertex, v: Vertex| g.adjacent(u, v);
    log.check(
        "stable3.helpers-adjacent",
        helpers_first.iter().all(|&x| adj(x, c[0]) && adj(x, c[4]) && (adj(x, c[1]) || adj(x, c[3])))
            && helpers_third.iter().all(|&x| adj(x, c[2]) && adj(x, c[3]) && (adj(x, c[1]) || adj(x, c[4]))),
        || "a helper misses a required cycle neighbour".into(),
    )?;

    let forced = |ok: bool, v: Vertex| {
        if ok {
            Ok(())
        } else {
            Err(Stable3Error::from(anomaly(
                "stable3.forced-adjacency",
                format!("branch vertex {v} would close a stable triple with the cycle"),
            )))
        }
    };
    let mut trace = SplitTrace::new();
    for (&v, &x) in missing_first.iter().zip(&helpers_first) {
        forced(adj(v, c[3]) && (adj(v, c[1]) || adj(v, c[4])), v)?;
        let via = if adj(v, c[4]) {
            c[4]
        } else if adj(x, c[1]) {
            c[1]
        } else {
            c[3]
        };
        trace.split_path(&[v, via, x, c[0]]);
    }
    for (&v, &x) in missing_third.iter().zip(&helpers_third) {
        forced(adj(v, c[0]) && adj(v, c[4]) && (adj(v, c[1]) || adj(v, c[3])), v)?;
        let via = if adj(v, c[3]) {
            c[3]
        } else if adj(x, c[1]) {
            c[1]
        } else {
            c[4]
        };
        trace.split_path(&[v, via, x, c[2]]);
    }
    trace.split_path(&[c[0], c[1], c[2]]);

    let mut seen = BTreeSet::new();
    let rest: BTreeSet<Vertex> = st.rest.iter().copied().collect();
    let fresh = trace_edges(&trace)
        .into_iter()
        .all(|e| seen.insert(e) && !(rest.contains(&e.0) && rest.contains(&e.1)));
    log.check("stable3.link-edges-disjoint", fresh, || {
        "linking paths reuse an edge or touch an edge inside the rest".into()
    })?;
    Ok(trace)
}

/// Host edges consumed by the path splits of `trace`, normalised `u < v`.
pub(crate) fn trace_edges(trace: &SplitTrace) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for op in &trace.ops {
        if let TraceOp::SplitPath(p) = op {
            out.extend(p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))));
        }
    }
    out
}
