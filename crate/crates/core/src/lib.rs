//! LOCAL-model graph coloring: a simulator for round-based distributed
//! algorithms on bounded-degree graphs, the greedy / Brooks / Vizing
//! coloring algorithms built on augmenting machinery, matching stages,
//! finite labeling games, and brute-force oracles to audit all of it.

pub mod brooks;
pub mod error;
pub mod games;
pub mod graph;
pub mod greedy;
pub mod matching;
pub mod oracle;
pub mod sim;
pub mod vizing;

pub use error::{Error, Result};
