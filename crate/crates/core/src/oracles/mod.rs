//! Independent brute-force deciders for the source problems of the
//! reductions: SAT, NCL reachability and perfect matching reconfiguration.

pub mod ncl;
pub mod pmr;
pub mod sat;

pub use ncl::{ncl_reachable, ncl_valid_configs, NclConfig, NclEdge, NclMachine, NclVertexType};
pub use pmr::{enumerate_perfect_matchings, pmr_reachable};
pub use sat::{sat_decide, Assignment, CnfFormula, Literal, SatMode};
