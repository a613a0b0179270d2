//! Constructive clique immersions.
//!
//! Every construction in this crate produces a [`certificate::SplitTrace`] on
//! its input graph plus a branch set; [`certificate::trace_to_certificate`]
//! turns that into routes and [`certificate::verify`] checks them from scratch.

pub mod audit;
pub mod certificate;
pub mod dense;
pub mod multigraph;
pub mod oracle;
pub mod gen;
pub mod matching;
pub mod mindegree;
pub mod chromatic;
pub mod stable3;
pub mod suite;
