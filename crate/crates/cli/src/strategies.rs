use clap::ValueEnum;

use immersion::audit::{Anomaly, AuditLog};
use immersion::certificate::{trace_to_certificate, verify, ImmersionCertificate};
use immersion::chromatic::{chromatic_immersion, threshold, ChromaticOptions};
use immersion::dense::{immersion_by_average, immersion_on_set, least_missing, DenseError};
use immersion::mindegree::{mindeg_immersion, MindegOptions};
use immersion::multigraph::{MultiGraph, Vertex};
use immersion::oracle::{exact_chromatic, immersion_search, ChiOutcome, SearchBudget, SearchOutcome};
use immersion::stable3::{is_stable3_free, strong_immersion_stable3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Dense,
    Mindeg,
    Chromatic,
    Stable3,
    Oracle,
    Auto,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Dense => "dense",
            Strategy::Mindeg => "mindeg",
            Strategy::Chromatic => "chromatic",
            Strategy::Stable3 => "stable3",
            Strategy::Oracle => "oracle",
            Strategy::Auto => "auto",
        }
    }
}

pub struct Found {
    pub cert: ImmersionCertificate,
    pub exit: String,
}

pub enum Failure {
    /// Precondition not met or nothing found.
    Reject(String),
    Anomaly(Anomaly),
}

impl Failure {
    fn reject(e: impl ToString) -> Self {
        Failure::Reject(e.to_string())
    }
}

pub struct Request {
    pub t: Option<usize>,
    pub strong: bool,
    pub budget: SearchBudget,
}

pub type Attempt = Result<Found, Failure>;

pub fn run(g: &MultiGraph, strategy: Strategy, req: &Request, log: &mut AuditLog) -> Attempt {
    let found = match strategy {
        Strategy::Dense => dense(g, req, log),
        Strategy::Mindeg => mindeg(g, req, log),
        Strategy::Chromatic => chromatic(g, req, log),
        Strategy::Stable3 => stable3(g, log),
        Strategy::Oracle => oracle(g, req),
        Strategy::Auto => unreachable!("auto is expanded by the caller"),
    }?;
    finish(g, found, req, log)
}

/// Re-verifies, in strong mode when asked for.
fn finish(g: &MultiGraph, mut found: Found, req: &Request, log: &mut AuditLog) -> Attempt {
    if req.strong && !found.cert.strong {
        if !found.cert.interiors_avoid_branch() {
            return Err(Failure::Reject("certificate found, but a route passes through a branch vertex".into()));
        }
        found.cert.strong = true;
    }
    let verdict = verify(g, &found.cert);
    log.check("certificate-verifies", verdict.is_accept(), || {
        format!("{:?}", verdict.violations())
    })
    .map_err(Failure::Anomaly)?;
    Ok(found)
}

fn dense(g: &MultiGraph, req: &Request, log: &mut AuditLog) -> Attempt {
    let out = match req.t {
        Some(t) => immersion_on_set(g, &least_missing(g, t), log),
        None => immersion_by_average(g, log).map(|(_, out)| out),
    };
    let out = out.map_err(|e| match e {
        DenseError::Anomaly(a) => Failure::Anomaly(a),
        other => Failure::reject(other),
    })?;
    let cert = trace_to_certificate(g, &out.trace, &out.branch).map_err(Failure::reject)?;
    Ok(Found {
        cert,
        exit: format!("short {} long {}", out.short_splits, out.long_splits),
    })
}

fn mindeg(g: &MultiGraph, req: &Request, log: &mut AuditLog) -> Attempt {
    let t = match req.t {
        Some(t) => t,
        None => {
            let d = g.min_degree().unwrap_or(0);
            if d < 14 {
                return Err(Failure::Reject(format!("minimum degree {d} is below 14, the bound for t = 1")));
            }
            (d - 7) / 7
        }
    };
    let opts = MindegOptions {
        shortcut: false,
        budget: req.budget,
    };
    match mindeg_immersion(g, t, &opts, log) {
        Ok(out) => Ok(Found {
            cert: out.certificate,
            exit: format!("{:?}", out.exit),
        }),
        Err(e) => Err(match e.anomaly() {
            Some(a) => Failure::Anomaly(a.clone()),
            None => Failure::reject(e),
        }),
    }
}

/// Largest `t` with `⌈3.54t + 4⌉ ≤ χ`.
pub fn chromatic_order(chi: usize) -> usize {
    (0..).take_while(|&t| threshold(t) <= chi).last().unwrap_or(0)
}

fn chromatic(g: &MultiGraph, req: &Request, log: &mut AuditLog) -> Attempt {
    let t = match req.t {
        Some(t) => t,
        None => match exact_chromatic(g, &req.budget) {
            ChiOutcome::Exact(chi) if chromatic_order(chi) >= 1 => chromatic_order(chi),
            ChiOutcome::Exact(chi) => {
                return Err(Failure::Reject(format!("chromatic number {chi} is below 8, the bound for t = 1")))
            }
            ChiOutcome::Exhausted { .. } => return Err(Failure::Reject("chromatic number not settled within budget".into())),
        },
    };
    let opts = ChromaticOptions {
        shortcut: false,
        budget: req.budget,
    };
    match chromatic_immersion(g, t, &opts, log) {
        Ok(out) => Ok(Found {
            cert: out.certificate,
            exit: format!("{:?}", out.exit),
        }),
        Err(e) => Err(match e.anomaly() {
            Some(a) => Failure::Anomaly(a.clone()),
            None => Failure::reject(e),
        }),
    }
}

fn stable3(g: &MultiGraph, log: &mut AuditLog) -> Attempt {
    match strong_immersion_stable3(g, log) {
        Ok(out) => Ok(Found {
            cert: out.certificate,
            exit: format!("levels {:?}", out.levels),
        }),
        Err(e) => Err(match e.anomaly() {
            Some(a) => Failure::Anomaly(a.clone()),
            None => Failure::reject(e),
        }),
    }
}

fn oracle(g: &MultiGraph, req: &Request) -> Attempt {
    if let Some(t) = req.t {
        return match immersion_search(g, t, req.strong, &req.budget) {
            SearchOutcome::Found(cert) => Ok(Found {
                cert,
                exit: "search".into(),
            }),
            SearchOutcome::NotFound => Err(Failure::Reject(format!("no K{t} immersion"))),
            SearchOutcome::Exhausted => Err(Failure::Reject("search budget exhausted".into())),
        };
    }
    let mut best = None;
    for t in 1..=g.order().min(req.budget.max_order) {
        match immersion_search(g, t, req.strong, &req.budget) {
            SearchOutcome::Found(cert) => best = Some(cert),
            _ => break,
        }
    }
    best.map(|cert| Found {
        cert,
        exit: "search".into(),
    })
    .ok_or_else(|| Failure::Reject("no clique immersion found".into()))
}

/// Largest clique found greedily from each start vertex, lowest ids first.
pub fn greedy_max_clique(g: &MultiGraph) -> Vec<Vertex> {
    let mut best = Vec::new();
    for s in g.vertices() {
        let mut c = vec![s];
        for v in g.neighbor_list(s) {
            if v != s && !c.contains(&v) && c.iter().all(|&u| g.adjacent(u, v)) {
                c.push(v);
            }
        }
        if c.len() > best.len() {
            best = c;
        }
    }
    best.sort_unstable();
    best
}

pub struct AutoRun {
    pub attempts: Vec<(String, Attempt)>,
    /// Index of the winning attempt.
    pub best: Option<usize>,
}

/// Every applicable strategy in turn; the largest certified order wins,
/// earlier strategies on ties.
pub fn auto(g: &MultiGraph, req: &Request, log: &mut AuditLog) -> AutoRun {
    let mut attempts: Vec<(String, Attempt)> = Vec::new();
    let clique = greedy_max_clique(g);
    if !clique.is_empty() {
        let found = Found {
            cert: ImmersionCertificate::from_clique(g, &clique),
            exit: "greedy clique".into(),
        };
        attempts.push(("clique".into(), finish(g, found, req, log)));
    }
    let sub = Request { t: None, ..*req };
    attempts.push(("dense".into(), run(g, Strategy::Dense, &sub, log)));
    if g.min_degree().unwrap_or(0) >= 14 {
        attempts.push(("mindeg".into(), run(g, Strategy::Mindeg, &sub, log)));
    }
    if let ChiOutcome::Exact(chi) = exact_chromatic(g, &req.budget) {
        if chi >= threshold(1) {
            attempts.push(("chromatic".into(), run(g, Strategy::Chromatic, &sub, log)));
        }
    }
    if g.order() >= 5 && is_stable3_free(g) {
        attempts.push(("stable3".into(), run(g, Strategy::Stable3, &sub, log)));
    }
    let order = |a: &Attempt| a.as_ref().map(|f| f.cert.branch.len()).unwrap_or(0);
    let best_so_far = attempts.iter().map(|(_, a)| order(a)).max().unwrap_or(0);
    for t in best_so_far + 1..=g.order().min(req.budget.max_order) {
        let at = Request { t: Some(t), ..*req };
        let a = run(g, Strategy::Oracle, &at, log);
        let stop = a.is_err();
        attempts.push(("oracle".into(), a));
        if stop {
            break;
        }
    }
    let mut best: Option<usize> = None;
    for (i, (_, a)) in attempts.iter().enumerate() {
        if a.is_ok() && best.is_none_or(|b| order(a) > order(&attempts[b].1)) {
            best = Some(i);
        }
    }
    AutoRun { attempts, best }
}
