use serde::Serialize;

use immersion::audit::AuditLog;
use immersion::certificate::Fingerprint;
use immersion::multigraph::MultiGraph;

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub order: usize,
    pub edges: usize,
    pub hash: String,
}

impl InputInfo {
    pub fn of(path: &str, g: &MultiGraph) -> Self {
        InputInfo {
            path: path.to_string(),
            order: g.order(),
            edges: g.edge_count(),
            hash: format!("{:016x}", Fingerprint::of(g).hash),
        }
    }
}

#[derive(Serialize)]
pub struct Parameters {
    pub t: Option<usize>,
    pub strong: bool,
    pub seed: u64,
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Certificate {
        order: usize,
        strong: bool,
        exit: String,
        path: String,
    },
    None {
        reason: String,
    },
    Anomaly {
        claim: String,
        detail: String,
    },
}

#[derive(Serialize)]
pub struct ClaimCount {
    pub claim: String,
    pub passed: usize,
}

pub fn claims(log: &AuditLog) -> Vec<ClaimCount> {
    log.claims()
        .map(|(claim, passed)| ClaimCount {
            claim: claim.to_string(),
            passed,
        })
        .collect()
}

#[derive(Serialize)]
pub struct AttemptSummary {
    pub strategy: String,
    pub order: Option<usize>,
    pub note: String,
}

/// Everything a `find` run produced. Wall time is left out unless asked
/// for, so reruns with the same seed are byte-identical.
#[derive(Serialize)]
pub struct RunReport {
    pub input: InputInfo,
    pub strategy: String,
    pub parameters: Parameters,
    pub outcome: Outcome,
    pub claims: Vec<ClaimCount>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<AttemptSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}
