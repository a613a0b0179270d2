//! Vertex-critical subgraphs.

use super::ChromaticError;
use crate::multigraph::{MultiGraph, Vertex};
use crate::oracle::{chromatic_with_coloring, k_coloring, ChiOutcome, SearchBudget, SearchOutcome};

/// An induced subgraph with chromatic number exactly `level` in which every
/// vertex deletion lowers the chromatic number. Ids are preserved; vertices
/// are dropped highest id first.
pub fn critical_subgraph(
    g: &MultiGraph,
    level: usize,
    budget: &SearchBudget,
) -> Result<MultiGraph, ChromaticError> {
    let chi = exact(g, budget)?;
    if chi < level {
        return Err(ChromaticError::ChromaticTooLow { chi, need: level });
    }
    let mut h = g.clone();
    let mut chi = chi;
    // each deletion costs at most one colour
    while chi > level {
        let v = *h.vertex_list().last().expect("chromatic number above zero");
        h.remove_vertex(v)?;
        chi = exact(&h, budget)?;
    }
    if level == 0 {
        return Ok(h);
    }
    let order: Vec<Vertex> = h.vertex_list().into_iter().rev().collect();
    for v in order {
        let mut without = h.clone();
        without.remove_vertex(v)?;
        match k_coloring(&without, level - 1, budget) {
            SearchOutcome::Found(_) => {}
            SearchOutcome::NotFound => h = without,
            SearchOutcome::Exhausted => return Err(ChromaticError::Budget),
        }
    }
    Ok(h)
}

fn exact(g: &MultiGraph, budget: &SearchBudget) -> Result<usize, ChromaticError> {
    match chromatic_with_coloring(g, budget).0 {
        ChiOutcome::Exact(k) => Ok(k),
        ChiOutcome::Exhausted { .. } => Err(ChromaticError::Budget),
    }
}

/// True when `g` has chromatic number `level` and every vertex deletion
/// lowers it.
pub fn is_critical(g: &MultiGraph, level: usize, budget: &SearchBudget) -> Result<bool, ChromaticError> {
    if exact(g, budget)? != level {
        return Ok(false);
    }
    for v in g.vertices() {
        let mut without = g.clone();
        without.remove_vertex(v)?;
        if exact(&without, budget)? >= level {
            return Ok(false);
        }
    }
    Ok(true)
}
