//! Certificate text format.
//!
//! ```text
//! host 5 10 2,2,2,2,2 9f3a0c1d2e4b5a67
//! pattern clique 2
//! branch 0 1
//! routes 1
//! 0 1
//! strong true
//! ```
//!
//! `host` carries vertex count, edge count, degree sequence and edge hash (hex).
//! A general pattern is written `pattern graph <order> i-j i-j ...`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Fingerprint, ImmersionCertificate, Pattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing field `{0}`")]
    Missing(&'static str),
}

fn err(line: usize, msg: impl Into<String>) -> CertFormatError {
    CertFormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn write_certificate(cert: &ImmersionCertificate) -> String {
    let mut out = String::new();
    let degs: Vec<String> = cert.host.degrees.iter().map(|d| d.to_string()).collect();
    let edges: usize = cert.host.degrees.iter().sum::<usize>() / 2;
    writeln!(
        out,
        "host {} {} {} {:016x}",
        cert.host.order,
        edges,
        if degs.is_empty() { "-".to_string() } else { degs.join(",") },
        cert.host.hash
    )
    .unwrap();
    match &cert.pattern {
        Pattern::Clique(t) => writeln!(out, "pattern clique {t}").unwrap(),
        Pattern::Graph { order, edges } => {
            let list: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(out, "pattern graph {order} {}", list.join(" ")).unwrap();
        }
    }
    let branch: Vec<String> = cert.branch.iter().map(|v| v.to_string()).collect();
    writeln!(out, "branch {}", branch.join(" ")).unwrap();
    writeln!(out, "routes {}", cert.routes.len()).unwrap();
    for r in &cert.routes {
        let seq: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", seq.join(" ")).unwrap();
    }
    writeln!(out, "strong {}", cert.strong).unwrap();
    out
}

fn nums(line: usize, toks: &[&str]) -> Result<Vec<usize>, CertFormatError> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| err(line, format!("bad integer {t:?}"))))
        .collect()
}

pub fn parse_certificate(text: &str) -> Result<ImmersionCertificate, CertFormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut it = lines.into_iter();
    let mut field = |name: &'static str| -> Result<(usize, Vec<&str>), CertFormatError> {
        let (no, l) = it.next().ok_or(CertFormatError::Missing(name))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.first() != Some(&name) {
            return Err(err(no, format!("expected `{name}`")));
        }
        Ok((no, toks[1..].to_vec()))
    };

    let (no, h) = field("host")?;
    if h.len() != 4 {
        return Err(err(no, "host needs order, edges, degrees, hash"));
    }
    let order: usize = h[0].parse().map_err(|_| err(no, "bad order"))?;
    let degrees = if h[2] == "-" {
        Vec::new()
    } else {
        nums(no, &h[2].split(',').collect::<Vec<_>>())?
    };
    let hash = u64::from_str_radix(h[3], 16).map_err(|_| err(no, "bad hash"))?;
    let host = Fingerprint {
        order,
        degrees,
        hash,
    };

    let (no, p) = field("pattern")?;
    let pattern = match p.first() {
        Some(&"clique") if p.len() == 2 => {
            Pattern::Clique(p[1].parse().map_err(|_| err(no, "bad clique order"))?)
        }
        Some(&"graph") if p.len() >= 2 => {
            let order = p[1].parse().map_err(|_| err(no, "bad pattern order"))?;
            let mut edges = Vec::new();
            for e in &p[2..] {
                let (a, b) = e.split_once('-').ok_or_else(|| err(no, "edge must be i-j"))?;
                let ab = nums(no, &[a, b])?;
                edges.push((ab[0], ab[1]));
            }
            Pattern::Graph { order, edges }
        }
        _ => return Err(err(no, "pattern must be `clique t` or `graph n ...`")),
    };

    let (no, b) = field("branch")?;
    let branch = nums(no, &b)?;

    let (no, r) = field("routes")?;
    let count = match r.as_slice() {
        [c] => c.parse::<usize>().map_err(|_| err(no, "bad route count"))?,
        _ => return Err(err(no, "expected `routes <count>`")),
    };
    let mut routes = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, l) = it.next().ok_or(CertFormatError::Missing("routes"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        routes.push(nums(no, &toks)?);
    }

    let (no, s) = {
        let (no, l) = it.next().ok_or(CertFormatError::Missing("strong"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.first() != Some(&"strong") {
            return Err(err(no, "expected `strong`"));
        }
        (no, toks[1..].to_vec())
    };
    let strong = match s.as_slice() {
        ["true"] => true,
        ["false"] => false,
        _ => return Err(err(no, "strong must be true or false")),
    };
    if let Some((no, _)) = it.next() {
        return Err(err(no, "trailing content"));
    }
    Ok(ImmersionCertificate {
        host,
        pattern,
        branch,
        routes,
        strong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    #[test]
    fn round_trip() {
        let g = MultiGraph::complete(4);
        let c = ImmersionCertificate::from_clique(&g, &[3, 1, 2]);
        let text = write_certificate(&c);
        assert!(text.starts_with("host 4 6 3,3,3,3 "));
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }

    #[test]
    fn graph_pattern_round_trip() {
        let g = MultiGraph::cycle(4);
        let c = ImmersionCertificate {
            host: Fingerprint::of(&g),
            pattern: Pattern::Graph {
                order: 3,
                edges: vec![(0, 1), (1, 2)],
            },
            branch: vec![0, 1, 2],
            routes: vec![vec![0, 1], vec![1, 2]],
            strong: false,
        };
        assert_eq!(parse_certificate(&write_certificate(&c)).unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_certificate(""), Err(CertFormatError::Missing("host")));
        assert!(parse_certificate("host 1 0 0 zz\n").is_err());
    }
}
