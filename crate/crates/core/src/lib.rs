//! Reconfiguration of independent sets and vertex covers under token
//! jumping, token sliding and token addition/removal.
//!
//! The crate bundles exact brute-force solvers, an XP algorithm for vertex
//! cover reconfiguration parameterized by `μ = |S| - k`, compilers from
//! SAT, NCL and perfect matching reconfiguration into independent set
//! reconfiguration, independent oracles for the source problems, and text
//! formats for all of them.

pub mod bounds;
pub mod budget;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracles;
pub mod reductions;
pub mod xp;

pub use budget::Budget;
pub use error::{Error, Resource, Result};
pub use graph::{Graph, Kind, ReconfigInstance, ReconfigSequence, Rule, RuleKind, Verdict, VertexSet};
