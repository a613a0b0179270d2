//! Brute-force ground truth: clique immersion search and exact chromatic number.
//!
//! Both searches are bounded by a [`SearchBudget`]; running out of budget is
//! its own outcome and is never reported as a negative answer.

mod chromatic;
mod immersion;

pub use chromatic::{chromatic_with_coloring, exact_chromatic, is_proper, k_coloring, ChiOutcome};
pub use immersion::immersion_search;

use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub nodes: u64,
    pub seconds: f64,
    pub max_order: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            nodes: 20_000_000,
            seconds: 60.0,
            max_order: 16,
        }
    }
}

impl SearchBudget {
    pub fn nodes(nodes: u64) -> Self {
        SearchBudget {
            nodes,
            ..SearchBudget::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Node and wall-clock accounting shared by both searches.
pub(crate) struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
    pub(crate) out: bool,
}

impl Meter {
    pub(crate) fn new(b: &SearchBudget) -> Self {
        let deadline = if b.seconds > 0.0 && b.seconds.is_finite() {
            Some(Instant::now() + Duration::from_secs_f64(b.seconds))
        } else {
            None
        };
        Meter {
            nodes: 0,
            limit: b.nodes,
            deadline,
            out: false,
        }
    }

    /// Counts one node; returns false once the budget is gone.
    pub(crate) fn tick(&mut self) -> bool {
        if self.out {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.out = true;
        } else if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.out = true;
                }
            }
        }
        !self.out
    }
}
