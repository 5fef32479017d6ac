//! Desk-scale short lists with short programs: bipartite-graph combinators,
//! an online matcher with discards, and a toy universal machine that runs the
//! whole pipeline against a brute-force complexity oracle.

pub mod cli;
pub mod combinators;
pub mod error;
pub mod graph;
pub mod label;
pub mod matching;
pub mod shortlist;
pub mod verify;

pub use label::BitLabel;
