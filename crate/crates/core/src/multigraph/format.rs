//! Text formats: the native edge list and DIMACS `p edge`.

use std::fmt::Write as _;

use thiserror::Error;

use super::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header")]
    MissingHeader,
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| syntax(line, format!("not a nonnegative integer: {tok:?}")))
        })
        .collect()
}

/// Parses `n m` followed by `u v [mult]` lines. `m` counts edge instances,
/// so a line with multiplicity 3 contributes 3.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph, FormatError> {
    let mut graph: Option<(MultiGraph, usize)> = None;
    let mut seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums = numbers(lineno, body)?;
        match &mut graph {
            None => {
                if nums.len() != 2 {
                    return Err(syntax(lineno, "header must be `n m`"));
                }
                graph = Some((MultiGraph::new(nums[0]), nums[1]));
            }
            Some((g, _)) => {
                let (u, v, k) = match nums.as_slice() {
                    [u, v] => (*u, *v, 1),
                    [u, v, k] => (*u, *v, *k),
                    _ => return Err(syntax(lineno, "edge line must be `u v [mult]`")),
                };
                let n = g.id_bound();
                if u >= n || v >= n {
                    return Err(syntax(lineno, format!("vertex out of range 0..{n}")));
                }
                if k == 0 {
                    return Err(syntax(lineno, "multiplicity must be positive"));
                }
                g.add_edges(u, v, k as u32);
                seen += k;
            }
        }
    }
    let (g, declared) = graph.ok_or(FormatError::MissingHeader)?;
    if declared != seen {
        return Err(FormatError::EdgeCount {
            declared,
            found: seen,
        });
    }
    Ok(g)
}

/// Parses DIMACS `p edge n m` / `e u v` with 1-based ids. Repeated edges are
/// collapsed, loops are refused, so the result is always simple.
pub fn parse_dimacs(text: &str) -> Result<MultiGraph, FormatError> {
    let mut graph: Option<MultiGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(syntax(lineno, "second problem line"));
                }
                let kind = toks.next();
                if kind != Some("edge") && kind != Some("col") {
                    return Err(syntax(lineno, "expected `p edge n m`"));
                }
                let rest: Vec<&str> = toks.collect();
                let nums = numbers(lineno, &rest.join(" "))?;
                if nums.len() != 2 {
                    return Err(syntax(lineno, "expected `p edge n m`"));
                }
                graph = Some(MultiGraph::new(nums[0]));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(FormatError::MissingHeader)?;
                let rest: Vec<&str> = toks.collect();
                let nums = numbers(lineno, &rest.join(" "))?;
                let [u, v] = nums.as_slice() else {
                    return Err(syntax(lineno, "expected `e u v`"));
                };
                let n = g.id_bound();
                if *u == 0 || *v == 0 || *u > n || *v > n {
                    return Err(syntax(lineno, format!("vertex out of range 1..={n}")));
                }
                if u == v {
                    return Err(syntax(lineno, "loops are not allowed in DIMACS input"));
                }
                if !g.adjacent(u - 1, v - 1) {
                    g.add_edge(u - 1, v - 1);
                }
            }
            Some(other) => return Err(syntax(lineno, format!("unknown line type {other:?}"))),
        }
    }
    graph.ok_or(FormatError::MissingHeader)
}

/// DIMACS if the first meaningful line starts with `c` or `p`, else edge list.
pub fn parse_graph(text: &str) -> Result<MultiGraph, FormatError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('p') || l.starts_with("c ") || l == "c" => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

/// Writes the edge-list form. Deleted vertices are kept as isolated ids.
pub fn write_edge_list(g: &MultiGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.id_bound(), g.edge_count()).unwrap();
    for (u, v, k) in g.edges() {
        if k == 1 {
            writeln!(out, "{u} {v}").unwrap();
        } else {
            writeln!(out, "{u} {v} {k}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let mut g = MultiGraph::cycle(4);
        g.add_edge(0, 1);
        g.add_edge(2, 2);
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_multiplicity() {
        let g = parse_edge_list("# two vertices\n2 3\n0 1 3 # triple\n").unwrap();
        assert_eq!(g.multiplicity(0, 1), 3);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(parse_edge_list(""), Err(FormatError::MissingHeader));
        assert!(matches!(
            parse_edge_list("2 1\n0 5\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("3 2\n0 1\n"),
            Err(FormatError::EdgeCount {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn dimacs() {
        let g = parse_graph("c triangle\np edge 3 4\ne 1 2\ne 2 3\ne 3 1\ne 2 1\n").unwrap();
        assert_eq!(g, MultiGraph::complete(3));
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
    }
}
