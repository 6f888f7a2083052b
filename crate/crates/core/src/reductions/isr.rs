use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigInstance, Rule, VertexSet};
use crate::oracles::CnfFormula;

use super::{GadgetAnnotation, GadgetTag, Provenance};

/// Compiles a sandwiched E3-CNF formula into an ISR instance under k-TJ
/// that is a yes-instance iff the formula has a mixed satisfying
/// assignment.
///
/// A variable with `a` occurrences becomes the cycle `t¹ f¹ t² f² … tᵃ fᵃ`
/// (an edge when `a = 1`) and each clause a triangle of literal vertices.
/// The literal vertex of occurrence `j` is joined to `tʲ` if negative and
/// to `fʲ` if positive. Occurrences are numbered in clause order. `mu - 1`
/// isolated pad vertices are appended and `k = |I| - mu`.
pub fn inte3sat_to_isr(phi: &CnfFormula, mu: usize) -> Result<(ReconfigInstance, GadgetAnnotation)> {
    if mu == 0 {
        return Err(Error::pre("mu must be at least 1"));
    }
    if !phi.is_e3() {
        return Err(Error::pre("formula is not E3-CNF"));
    }
    if !phi.is_sandwiched() {
        return Err(Error::pre("formula is not sandwiched"));
    }
    let occ = phi.occurrences();
    if let Some(x) = (1..=phi.variable_count()).find(|&x| occ[x] == 0) {
        return Err(Error::pre(format!("variable {x} never occurs")));
    }

    let mut ann = GadgetAnnotation::default();
    // base[x]: id of t¹ of variable x; tʲ = base + 2(j-1), fʲ = tʲ + 1.
    let mut base = vec![0; phi.variable_count() + 1];
    let mut edges = Vec::new();
    for x in 1..=phi.variable_count() {
        base[x] = ann.len();
        for j in 1..=occ[x] {
            ann.push(GadgetTag::TrueVertex, Provenance::Variable { var: x, occurrence: j });
            ann.push(GadgetTag::FalseVertex, Provenance::Variable { var: x, occurrence: j });
        }
        let a = occ[x];
        for j in 0..a {
            let t = base[x] + 2 * j;
            edges.push((t, t + 1));
            if a >= 2 {
                edges.push((t + 1, base[x] + 2 * ((j + 1) % a)));
            }
        }
    }

    let mut seen = vec![0; phi.variable_count() + 1];
    let mut start = Vec::new();
    let mut target = Vec::new();
    for (c, clause) in phi.clauses().iter().enumerate() {
        let first = ann.len();
        let mut neg_pick = None;
        let mut pos_pick = None;
        for (p, &l) in clause.iter().enumerate() {
            let tag = if l.is_positive() { GadgetTag::PositiveVertex } else { GadgetTag::NegativeVertex };
            let v = ann.push(tag, Provenance::Clause { clause: c, position: p, literal: l });
            seen[l.var()] += 1;
            let t = base[l.var()] + 2 * (seen[l.var()] - 1);
            edges.push((v, if l.is_positive() { t + 1 } else { t }));
            if l.is_positive() {
                pos_pick.get_or_insert(v);
            } else {
                neg_pick.get_or_insert(v);
            }
        }
        edges.extend([(first, first + 1), (first + 1, first + 2), (first, first + 2)]);
        start.push(neg_pick.expect("sandwiched"));
        target.push(pos_pick.expect("sandwiched"));
    }
    for v in 0..ann.len() {
        match ann.tag(v) {
            GadgetTag::FalseVertex => start.push(v),
            GadgetTag::TrueVertex => target.push(v),
            _ => {}
        }
    }
    for i in 0..mu - 1 {
        let v = ann.push(GadgetTag::Pad, Provenance::Pad { index: i });
        start.push(v);
        target.push(v);
    }

    let n = ann.len();
    let g = Graph::new(n, edges)?;
    let s = VertexSet::from_ids(n, start)?;
    let t = VertexSet::from_ids(n, target)?;
    let k = s.len() - mu;
    let inst = ReconfigInstance::new(g, Kind::IndependentSet, s, t, Rule::tj(k)?)?;
    Ok((inst, ann))
}
