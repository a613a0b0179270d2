//! Clique immersions in dense graphs.
//!
//! [`immersion_on_set`] completes a branch set `M` whose total missing degree
//! is small. It first splits off every path `v w v'` with `v, v'` in `M`
//! non-adjacent and `w` outside `M`; the remaining missing pairs are joined by
//! 4-edge paths `v w u w' v'` through a vertex `u` of `M` that is adjacent to
//! every other branch vertex, each `u` having a budget
//! `h(u) = max(0, ⌊(n - t - b - f(u) + 1) / 2⌋)`.
//!
//! [`immersion_by_average`] picks `t = min(⌊n/2⌋, ⌊n - 2γ⌋)` from the
//! average missing degree `γ` and the `t` vertices of least missing degree.

use thiserror::Error;

use crate::audit::{anomaly, Anomaly, AuditLog};
use crate::certificate::SplitTrace;
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("missing-degree sum {sum} exceeds bound {bound}")]
    Precondition { sum: i64, bound: i64 },
    #[error("average missing degree {sum}/{n} exceeds n/2")]
    TooSparse { sum: usize, n: usize },
    #[error("input must be simple")]
    NotSimple,
    #[error("branch set has a repeated or absent vertex")]
    BadBranchSet,
    #[error(transparent)]
    Anomaly(#[from] Anomaly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOutcome {
    pub branch: Vec<Vertex>,
    pub trace: SplitTrace,
    pub short_splits: usize,
    pub long_splits: usize,
}

fn f_all(g: &MultiGraph, v: Vertex) -> usize {
    g.missing_degree(v)
}

/// Left and right side of the admission inequality, as signed integers.
pub fn admission_sums(g: &MultiGraph, m: &[Vertex]) -> (i64, i64, usize) {
    let n = g.order() as i64;
    let t = m.len() as i64;
    let b = m.iter().map(|&v| f_all(g, v)).max().unwrap_or(0);
    let sum: i64 = m.iter().map(|&v| f_all(g, v) as i64).sum();
    (sum, (n - t - b as i64) * t, b)
}

/// Builds a trace that makes `m` a clique, given that the total missing
/// degree on `m` is at most `(n - t - b) t`.
pub fn immersion_on_set(
    g: &MultiGraph,
    m: &[Vertex],
    log: &mut AuditLog,
) -> Result<DenseOutcome, DenseError> {
    if !g.is_simple() {
        return Err(DenseError::NotSimple);
    }
    let mut branch = m.to_vec();
    branch.sort_unstable();
    if branch.windows(2).any(|w| w[0] == w[1]) || branch.iter().any(|&v| !g.contains(v)) {
        return Err(DenseError::BadBranchSet);
    }
    let (sum, bound, b) = admission_sums(g, &branch);
    if sum > bound {
        return Err(DenseError::Precondition { sum, bound });
    }
    let n = g.order();
    let t = branch.len();
    let mut in_m = vec![false; g.id_bound()];
    for &v in &branch {
        in_m[v] = true;
    }
    let outside: Vec<Vertex> = g.vertices().filter(|&v| !in_m[v]).collect();
    let mut work = g.clone();
    let mut trace = SplitTrace::new();
    let mut short_splits = 0;

    // short paths: common neighbours outside M only disappear over time, so
    // one pass over the pairs reaches the fixpoint
    for i in 0..t {
        for j in i + 1..t {
            let (v, vp) = (branch[i], branch[j]);
            if work.adjacent(v, vp) {
                continue;
            }
            let w = outside
                .iter()
                .copied()
                .find(|&w| work.adjacent(v, w) && work.adjacent(w, vp));
            if let Some(w) = w {
                let (fv, fvp, edges) = (f_all(&work, v), f_all(&work, vp), work.edge_count());
                work.split_at(v, w, vp).expect("edges checked");
                trace.split(v, w, vp);
                short_splits += 1;
                log.check(
                    "dense.short-split-preserves-f",
                    f_all(&work, v) == fv && f_all(&work, vp) == fvp,
                    || format!("f changed at {v} or {vp} after splitting through {w}"),
                )?;
                log.check("dense.short-split-shrinks", work.edge_count() + 1 == edges, || {
                    "edge count did not drop by one".into()
                })?;
            }
        }
    }
    // fixpoint: no short path remains
    for i in 0..t {
        for j in i + 1..t {
            let (v, vp) = (branch[i], branch[j]);
            let open = !work.adjacent(v, vp)
                && outside
                    .iter()
                    .any(|&w| work.adjacent(v, w) && work.adjacent(w, vp));
            if open {
                return Err(anomaly("dense.short-split-fixpoint", format!("{v}-{vp} still splittable")).into());
            }
        }
    }

    let mut missing: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            if !work.adjacent(branch[i], branch[j]) {
                missing.push((branch[i], branch[j]));
            }
        }
    }
    let in_x = |v: Vertex, missing: &[(Vertex, Vertex)]| missing.iter().any(|&(a, c)| a == v || c == v);
    let ys: Vec<Vertex> = branch.iter().copied().filter(|&v| !in_x(v, &missing)).collect();
    let slack = n as i64 - t as i64 - b as i64;
    let budget = |work: &MultiGraph, u: Vertex| -> i64 {
        let val = slack - f_all(work, u) as i64 + 1;
        if val <= 0 {
            0
        } else {
            val / 2
        }
    };
    let total_budget = |work: &MultiGraph| -> i64 { ys.iter().map(|&u| budget(work, u)).sum() };
    let mbar_len = outside.len();
    let mut long_splits = 0;
    let mut r = missing.len() as i64;
    let mut hsum = total_budget(&work);
    log.check("dense.budget-covers-missing", hsum >= r, || {
        format!("budget {hsum} below {r} missing pairs")
    })?;
    for &(v, vp) in &missing {
        let u = ys
            .iter()
            .copied()
            .find(|&u| budget(&work, u) >= 1)
            .ok_or_else(|| anomaly("dense.budget-vertex-exists", format!("no budget left for {v}-{vp}")))?;
        let fo = |x: Vertex, w: &MultiGraph| w.missing_count(x, &outside);
        log.check(
            "dense.long-split-common-neighbour",
            fo(u, &work) + fo(v, &work) < mbar_len && fo(u, &work) + fo(vp, &work) < mbar_len,
            || format!("outside missing degrees too large for {u} with {v}, {vp}"),
        )?;
        let common = |a: Vertex, c: Vertex, skip: Option<Vertex>| {
            outside
                .iter()
                .copied()
                .find(|&w| Some(w) != skip && work.adjacent(a, w) && work.adjacent(w, c))
        };
        let w = common(v, u, None)
            .ok_or_else(|| anomaly("dense.long-split-common-neighbour", format!("{v},{u}")))?;
        let wp = common(vp, u, None)
            .ok_or_else(|| anomaly("dense.long-split-common-neighbour", format!("{vp},{u}")))?;
        log.check("dense.long-split-distinct-middles", w != wp, || {
            format!("{v} and {vp} share the neighbour {w}")
        })?;
        let path = [v, w, u, wp, vp];
        work.split_off_path(&path).expect("edges checked");
        trace.split_path(&path);
        long_splits += 1;
        let new_hsum = total_budget(&work);
        r -= 1;
        log.check("dense.long-split-budget-step", new_hsum == hsum - 1 && new_hsum >= r, || {
            format!("budget went {hsum} -> {new_hsum} with {r} pairs left")
        })?;
        hsum = new_hsum;
    }
    for i in 0..t {
        for j in i + 1..t {
            if !work.adjacent(branch[i], branch[j]) {
                return Err(anomaly("dense.clique-completed", format!("{}-{}", branch[i], branch[j])).into());
            }
        }
    }
    Ok(DenseOutcome {
        branch,
        trace,
        short_splits,
        long_splits,
    })
}

/// `t = min(⌊n/2⌋, ⌊n - 2γ⌋)` for a graph with total missing degree `sum`.
pub fn average_order(n: usize, sum: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let by_gamma = (n * n).saturating_sub(2 * sum) / n;
    (n / 2).min(by_gamma)
}

/// The `t` vertices of least missing degree, ties to the lower id.
pub fn least_missing(g: &MultiGraph, t: usize) -> Vec<Vertex> {
    let mut vs: Vec<(usize, Vertex)> = g.vertices().map(|v| (f_all(g, v), v)).collect();
    vs.sort_unstable();
    let mut m: Vec<Vertex> = vs.into_iter().take(t).map(|(_, v)| v).collect();
    m.sort_unstable();
    m
}

pub fn immersion_by_average(
    g: &MultiGraph,
    log: &mut AuditLog,
) -> Result<(usize, DenseOutcome), DenseError> {
    if !g.is_simple() {
        return Err(DenseError::NotSimple);
    }
    let n = g.order();
    let sum: usize = g.vertices().map(|v| f_all(g, v)).sum();
    if 2 * sum > n * n {
        return Err(DenseError::TooSparse { sum, n });
    }
    let t = average_order(n, sum);
    let m = least_missing(g, t);
    let (msum, bound, b) = admission_sums(g, &m);
    if 2 * b <= n - t {
        log.note("dense.average-small-max");
    } else {
        log.note("dense.average-large-max");
        log.check(
            "dense.average-outside-at-least-max",
            g.vertices().filter(|v| !m.contains(v)).all(|w| f_all(g, w) >= b),
            || "an outside vertex has missing degree below the branch maximum".into(),
        )?;
    }
    log.check("dense.average-admission", msum <= bound, || {
        format!("sum {msum} above bound {bound} with t = {t}, b = {b}")
    })?;
    let out = immersion_on_set(g, &m, log)?;
    Ok((t, out))
}
