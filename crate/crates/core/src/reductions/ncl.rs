//! Constraint-logic machines compiled into token reconfiguration.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigInstance, Rule, RuleKind, VertexSet};
use crate::oracles::{NclConfig, NclMachine, NclVertexType};

use super::{GadgetAnnotation, GadgetTag, Provenance};

/// Edge gadget `e` occupies ids `2k·e .. 2k·e + 2k`. Position 0 is the
/// connector shared with `e.u`, position `2k − 1` the one shared with `e.v`.
fn cycle_id(k: usize, edge: usize, pos: usize) -> usize {
    2 * k * edge + pos
}

/// Connector of edge `edge` at endpoint `x`.
fn connector(m: &NclMachine, k: usize, edge: usize, x: usize) -> usize {
    if m.edges()[edge].u == x {
        cycle_id(k, edge, 0)
    } else {
        cycle_id(k, edge, 2 * k - 1)
    }
}

/// Internal vertices of each gadget, each with the connectors it touches.
fn internals(m: &NclMachine, k: usize) -> Vec<Vec<Vec<usize>>> {
    (0..m.vertex_count())
        .map(|x| {
            let inc = m.incident(x);
            let con = |i: usize| connector(m, k, i, x);
            match m.vertex_type(x) {
                NclVertexType::And => {
                    let heavy = *inc.iter().find(|&&i| m.edges()[i].weight == 2).expect("AND has a weight-2 edge");
                    let light: Vec<usize> = inc.iter().filter(|&&i| i != heavy).map(|&i| con(i)).collect();
                    vec![vec![con(heavy)], light]
                }
                NclVertexType::Or => inc.iter().map(|&i| vec![con(i)]).collect(),
            }
        })
        .collect()
}

fn token_set(m: &NclMachine, k: usize, cfg: &NclConfig, internal_ids: &[Vec<usize>], touch: &[Vec<Vec<usize>>], n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for (i, e) in m.edges().iter().enumerate() {
        // Pointing at u leaves the u-connector free.
        let offset = if cfg.head(i) == e.u { 1 } else { 0 };
        for j in 0..k {
            set.insert(cycle_id(k, i, offset + 2 * j));
        }
    }
    for x in 0..m.vertex_count() {
        let slot = touch[x]
            .iter()
            .position(|cs| cs.iter().all(|&c| !set.contains(c)))
            .ok_or_else(|| Error::Internal(format!("no free internal vertex at vertex {}", x + 1)))?;
        set.insert(internal_ids[x][slot]);
    }
    Ok(set)
}

/// Builds the token instance whose reachability matches that of `cs` and
/// `ct` in the machine; the rule moves `k` tokens at a time.
pub fn ncl_to_isr(m: &NclMachine, cs: &NclConfig, ct: &NclConfig, k: usize, rule_kind: RuleKind) -> Result<(ReconfigInstance, GadgetAnnotation)> {
    if k < 2 {
        return Err(Error::pre(format!("gadget size k = {k} is below 2")));
    }
    for (name, c) in [("start", cs), ("target", ct)] {
        if !c.is_valid(m) {
            return Err(Error::pre(format!("{name} configuration is not valid for the machine")));
        }
    }
    let mut ann = GadgetAnnotation::default();
    let mut edges = Vec::new();
    for i in 0..m.edges().len() {
        for pos in 0..2 * k {
            let tag = if pos == 0 || pos == 2 * k - 1 { GadgetTag::Connector } else { GadgetTag::Internal };
            ann.push(tag, Provenance::NclEdge { edge: i, position: pos });
            edges.push((cycle_id(k, i, pos), cycle_id(k, i, (pos + 1) % (2 * k))));
        }
    }
    let touch = internals(m, k);
    let mut internal_ids = Vec::with_capacity(m.vertex_count());
    for (x, gadget) in touch.iter().enumerate() {
        let ids: Vec<usize> = (0..gadget.len()).map(|index| ann.push(GadgetTag::Internal, Provenance::NclVertex { vertex: x, index })).collect();
        for (a, &ia) in ids.iter().enumerate() {
            for &c in &gadget[a] {
                edges.push((ia, c));
            }
            for &ib in &ids[a + 1..] {
                edges.push((ia, ib));
            }
        }
        internal_ids.push(ids);
    }
    let n = ann.len();
    let g = Graph::new(n, edges)?;
    let start = token_set(m, k, cs, &internal_ids, &touch, n)?;
    let target = token_set(m, k, ct, &internal_ids, &touch, n)?;
    let inst = ReconfigInstance::new(g, Kind::IndependentSet, start, target, Rule::new(rule_kind, k)?)?;
    Ok((inst, ann))
}

/// Checks that `set` holds exactly `k` tokens on each edge gadget and one
/// on the internal vertices of each vertex gadget.
pub fn token_decomposition(ann: &GadgetAnnotation, set: &VertexSet, k: usize) -> bool {
    let mut edge_tokens: Vec<usize> = Vec::new();
    let mut vertex_tokens: Vec<usize> = Vec::new();
    for t in &ann.tags {
        match t.origin {
            Provenance::NclEdge { edge, .. } if edge >= edge_tokens.len() => edge_tokens.resize(edge + 1, 0),
            Provenance::NclVertex { vertex, .. } if vertex >= vertex_tokens.len() => vertex_tokens.resize(vertex + 1, 0),
            _ => {}
        }
    }
    for v in set {
        if v >= ann.len() {
            return false;
        }
        match ann.origin(v) {
            Provenance::NclEdge { edge, .. } => edge_tokens[edge] += 1,
            Provenance::NclVertex { vertex, .. } => vertex_tokens[vertex] += 1,
            _ => return false,
        }
    }
    edge_tokens.iter().all(|&c| c == k) && vertex_tokens.iter().all(|&c| c == 1)
}

/// Orientation read off a token set: an edge points at `u` exactly when
/// its u-connector is free.
pub fn decode_config(m: &NclMachine, k: usize, set: &VertexSet) -> Result<NclConfig> {
    let heads = m
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| if set.contains(cycle_id(k, i, 0)) { e.v } else { e.u })
        .collect();
    NclConfig::from_heads(m, heads)
}
