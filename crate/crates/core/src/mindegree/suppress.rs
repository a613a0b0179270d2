//! Controlled suppression of `z_p, z_{p-1}, ...` with a multi-edge registry.
//!
//! Outside `A` the working graph stays simple apart from doubled edges to
//! members of `A`, each vertex outside `A` is doubled to at most one member
//! over the whole run, and few vertices are ever doubled at all. Every round
//! ends with a full rescan of those properties.

use super::aset::ASet;
use super::MindegError;
use crate::audit::AuditLog;
use crate::certificate::{SplitTrace, TraceOp};
use crate::matching::{nearly_well_suppressed, well_suppress_pairing_within, CloneGraph};
use crate::multigraph::{MultiGraph, Vertex};

#[derive(Clone, Debug)]
pub struct SuppressionState {
    pub t: usize,
    pub a: ASet,
    /// Number of members not yet suppressed.
    pub q: usize,
    /// The current graph `G_q`.
    pub graph: MultiGraph,
    in_a: Vec<bool>,
    /// Outside vertices that ever carried a doubled edge, with its other end.
    partner: Vec<Option<Vertex>>,
    /// Operations taking the starting graph to `graph`.
    pub trace: SplitTrace,
}

/// `z_q` could not be suppressed: the star of `z_q` into `X` has neither a
/// well pairing nor a nearly well one.
#[derive(Clone, Debug)]
pub struct FailureWitness {
    pub z: Vertex,
    pub q: usize,
    /// Neighbours of `z_q` outside `A`, sorted.
    pub x: Vec<Vertex>,
    /// Members of `X` joined to `z_q` by a doubled edge.
    pub r: Vec<Vertex>,
    /// `G_q[X ∪ {z_q}]`.
    pub local: MultiGraph,
}

#[derive(Clone, Debug)]
pub enum RoundOutcome {
    Well,
    /// Suppressed after splitting `z_s z_q v`.
    Nearly { s: Vertex, v: Vertex },
    Witness(FailureWitness),
}

impl SuppressionState {
    pub fn new(g: &MultiGraph, a: ASet, t: usize) -> SuppressionState {
        let mut in_a = vec![false; g.id_bound()];
        for &z in &a.z {
            in_a[z] = true;
        }
        SuppressionState {
            t,
            q: a.p(),
            a,
            graph: g.clone(),
            in_a,
            partner: vec![None; g.id_bound()],
            trace: SplitTrace::new(),
        }
    }

    pub fn outside(&self) -> Vec<Vertex> {
        self.graph.vertices().filter(|&v| !self.in_a[v]).collect()
    }

    fn current(&self) -> Vertex {
        self.a.z[self.q - 1]
    }

    /// Pairs the edges from `z` into `A` so that equal ends meet only when
    /// unavoidable.
    fn pair_rest(&self, z: Vertex) -> Vec<(Vertex, Vertex)> {
        let mut ends: Vec<Vertex> = Vec::new();
        for (u, k) in self.graph.neighbors(z) {
            if u != z && self.in_a[u] {
                ends.extend(std::iter::repeat_n(u, k as usize));
            }
        }
        ends.sort_unstable();
        let half = ends.len() / 2;
        (0..half).map(|i| (ends[i], ends[i + half])).collect()
    }

    fn record_doubles(&mut self) {
        for v in self.outside() {
            for (u, k) in self.graph.neighbors(v) {
                if k >= 2 && self.in_a[u] && self.partner[v].is_none() {
                    self.partner[v] = Some(u);
                }
            }
        }
    }

    /// One suppression attempt at `z_q`.
    pub fn round(&mut self, log: &mut AuditLog) -> Result<RoundOutcome, MindegError> {
        if self.q == 0 {
            return Err(MindegError::Exhausted);
        }
        let z = self.current();
        let x: Vec<Vertex> = self
            .graph
            .neighbor_list(z)
            .into_iter()
            .filter(|&v| v != z && !self.in_a[v])
            .collect();
        let r: Vec<Vertex> = x
            .iter()
            .copied()
            .filter(|&v| self.graph.multiplicity(z, v) == 2)
            .collect();

        if let Some(pairs) = well_suppress_pairing_within(&self.graph, z, Some(&x))? {
            let mut pairing = pairs;
            pairing.extend(self.pair_rest(z));
            self.apply_suppress(z, pairing)?;
            log.note("mindeg.round-well");
            self.finish_round(log)?;
            return Ok(RoundOutcome::Well);
        }

        let mut local_ids = x.clone();
        local_ids.push(z);
        let local = self.graph.induced(&local_ids);
        if nearly_well_suppressed(&local, z)? {
            let v = x
                .iter()
                .copied()
                .find(|&v| self.partner[v].is_none())
                .ok_or_else(|| {
                    crate::audit::anomaly(
                        "mindeg.untouched-vertex-exists",
                        format!("every neighbour of z_{} outside A carried a doubled edge", self.q),
                    )
                })?;
            let s = self.a.z[..self.q - 1]
                .iter()
                .copied()
                .find(|&zs| self.graph.adjacent(zs, z))
                .ok_or_else(|| {
                    crate::audit::anomaly(
                        "mindeg.earlier-neighbour-exists",
                        format!("z_{} has an odd star into X but no earlier neighbour", self.q),
                    )
                })?;
            let rest: Vec<Vertex> = x.iter().copied().filter(|&u| u != v).collect();
            let pairs = well_suppress_pairing_within(&self.graph, z, Some(&rest))?
                .ok_or_else(|| {
                    crate::audit::anomaly(
                        "mindeg.nearly-pairing",
                        format!("no pairing after removing {v}"),
                    )
                })?;
            self.graph.split_at(s, z, v)?;
            self.trace.split(s, z, v);
            let mut pairing = pairs;
            pairing.extend(self.pair_rest(z));
            self.apply_suppress(z, pairing)?;
            log.note("mindeg.round-nearly");
            self.finish_round(log)?;
            return Ok(RoundOutcome::Nearly { s, v });
        }

        self.audit_witness(&x, &r, log)?;
        Ok(RoundOutcome::Witness(FailureWitness {
            z,
            q: self.q,
            x,
            r,
            local,
        }))
    }

    fn apply_suppress(&mut self, z: Vertex, pairing: Vec<(Vertex, Vertex)>) -> Result<(), MindegError> {
        self.graph.suppress(z, &pairing)?;
        self.trace.push(TraceOp::Suppress { v: z, pairing });
        Ok(())
    }

    fn finish_round(&mut self, log: &mut AuditLog) -> Result<(), MindegError> {
        self.q -= 1;
        self.record_doubles();
        self.rescan(log)
    }

    /// Full check of the registry against the current graph.
    pub fn rescan(&self, log: &mut AuditLog) -> Result<(), MindegError> {
        let (p, q) = (self.a.p(), self.q);
        let out = self.outside();
        for &v in &out {
            for (u, k) in self.graph.neighbors(v) {
                if u == v {
                    log.check("mindeg.outside-loopless", false, || format!("loop at {v}"))?;
                }
                if !self.in_a[u] {
                    log.check("mindeg.outside-simple", k <= 1, || {
                        format!("{v}-{u} has multiplicity {k}")
                    })?;
                } else if k >= 2 {
                    log.check("mindeg.double-multiplicity", k == 2, || {
                        format!("{v}-{u} has multiplicity {k}")
                    })?;
                    log.check("mindeg.one-partner", self.partner[v] == Some(u), || {
                        format!("{v} doubled to {u}, registry says {:?}", self.partner[v])
                    })?;
                }
            }
        }
        log.note("mindeg.outside-simple");
        // doubled edges per remaining member
        let rp = self.a.rp();
        let rq = if q >= 1 { self.a.r[q - 1] } else { 1 };
        for (j, &z) in self.a.z[..q].iter().enumerate() {
            let doubled = out.iter().filter(|&&v| self.graph.multiplicity(z, v) >= 2).count();
            let cap = if j == 0 { p - q } else { rp - rq };
            log.check("mindeg.doubled-edge-budget", doubled <= cap, || {
                format!("z_{} has {doubled} doubled edges, budget {cap}", j + 1)
            })?;
        }
        let touched = out.iter().filter(|&&v| self.partner[v].is_some()).count();
        log.check("mindeg.untouched-count", touched <= p - q, || {
            format!("{touched} outside vertices touched, at most {} allowed", p - q)
        })?;
        Ok(())
    }

    /// The size bounds that make the witness usable.
    fn audit_witness(&self, x: &[Vertex], r: &[Vertex], log: &mut AuditLog) -> Result<(), MindegError> {
        let (p, q, t) = (self.a.p(), self.q, self.t);
        let rp = self.a.rp();
        let rq = self.a.r[q - 1];
        let r_cap = if q == 1 { p - 1 } else { rp - rq };
        log.check("mindeg.witness-doubled-bound", r.len() <= r_cap, || {
            format!("|R| = {} exceeds {r_cap}", r.len())
        })?;
        let b_missing = self.a.b.iter().filter(|v| !x.contains(v)).count();
        let b_cap = if q == 1 { 0 } else { p + q + rq };
        log.check("mindeg.witness-b-coverage", b_missing <= b_cap, || {
            format!("|B \\ X| = {b_missing} exceeds {b_cap}")
        })?;
        log.check("mindeg.witness-size", x.len() >= 2 * r.len() + 3 * t, || {
            format!("|X| - 2|R| = {} below 3t = {}", x.len() as isize - 2 * r.len() as isize, 3 * t)
        })?;
        log.check("mindeg.witness-not-suppressible", {
            let cg = CloneGraph::build(&self.graph, self.current(), Some(x))?;
            !crate::matching::has_perfect_matching(&cg.complement())
        }, || "clone complement has a perfect matching".into())?;
        Ok(())
    }
}
