//! Perfect matching reconfiguration as token moves on the line graph.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigInstance, Rule, RuleKind, VertexSet};
use crate::matching::Matching;

fn image(edges: &[(usize, usize)], m: &Matching) -> Result<VertexSet> {
    VertexSet::from_ids(
        edges.len(),
        m.pairs().iter().map(|p| edges.binary_search(p).expect("matching edges are graph edges")),
    )
}

/// Instance on the line graph of `g` whose sets are the edge indices of
/// `ms` and `mt`; a flip is a move of two tokens.
pub fn pmr_to_isr(g: &Graph, ms: &Matching, mt: &Matching, rule_kind: RuleKind) -> Result<ReconfigInstance> {
    for (name, m) in [("start", ms), ("target", mt)] {
        if !m.is_perfect_for(g) {
            return Err(Error::pre(format!("{name} matching is not a perfect matching of the graph")));
        }
    }
    let (lg, edges) = g.line_graph();
    let start = image(&edges, ms)?;
    let target = image(&edges, mt)?;
    ReconfigInstance::new(lg, Kind::IndependentSet, start, target, Rule::new(rule_kind, 2)?)
}
