use std::collections::{HashSet, VecDeque};

use crate::budget::Budget;
use crate::error::{Error, Resource, Result};
use crate::graph::Graph;
use crate::matching::Matching;

/// Largest vertex count `enumerate_perfect_matchings` accepts.
pub const PM_ENUMERATION_LIMIT: usize = 16;

/// All perfect matchings, by backtracking on the lowest uncovered vertex.
pub fn enumerate_perfect_matchings(g: &Graph) -> Result<Vec<Matching>> {
    let n = g.vertex_count();
    if n > PM_ENUMERATION_LIMIT {
        return Err(Error::Budget(Resource::States(PM_ENUMERATION_LIMIT)));
    }
    let mut out = Vec::new();
    if n % 2 == 1 {
        return Ok(out);
    }
    fn rec(g: &Graph, covered: &mut [bool], pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        let Some(u) = covered.iter().position(|&c| !c) else {
            out.push(Matching::new(pairs.iter().copied()));
            return;
        };
        covered[u] = true;
        for &v in g.neighbors(u) {
            if !covered[v] {
                covered[v] = true;
                pairs.push((u, v));
                rec(g, covered, pairs, out);
                pairs.pop();
                covered[v] = false;
            }
        }
        covered[u] = false;
    }
    rec(g, &mut vec![false; n], &mut Vec::new(), &mut out);
    Ok(out)
}

/// Matchings one flip away: swap two matched edges `ab`, `cd` for `ac`,
/// `bd` (or `ad`, `bc`) when those are edges.
fn flips(g: &Graph, m: &Matching) -> Vec<Matching> {
    let p = m.pairs();
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let ((a, b), (c, d)) = (p[i], p[j]);
            for (x, y) in [((a, c), (b, d)), ((a, d), (b, c))] {
                if g.has_edge(x.0, x.1) && g.has_edge(y.0, y.1) {
                    let rest = p.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &e)| e);
                    out.push(Matching::new(rest.chain([x, y])));
                }
            }
        }
    }
    out
}

/// BFS over perfect matchings where adjacent ones differ in exactly four edges.
pub fn pmr_reachable(g: &Graph, ms: &Matching, mt: &Matching, budget: &Budget) -> Result<bool> {
    for (name, m) in [("source", ms), ("target", mt)] {
        if !m.is_perfect_for(g) {
            return Err(Error::Infeasible(format!("{name} is not a perfect matching")));
        }
    }
    let mut meter = budget.meter();
    let mut seen = HashSet::from([ms.clone()]);
    let mut queue = VecDeque::from([ms.clone()]);
    while let Some(m) = queue.pop_front() {
        if m == *mt {
            return Ok(true);
        }
        for f in flips(g, &m) {
            debug_assert_eq!(f.symmetric_difference_len(&m), 4);
            if seen.insert(f.clone()) {
                meter.charge(1)?;
                queue.push_back(f);
            }
        }
    }
    Ok(false)
}
