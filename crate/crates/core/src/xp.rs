//! XP algorithm for vertex cover reconfiguration under k-TJ, parameterized
//! by `μ = |S| - k`.
//!
//! Nodes of the clique-compressed graph are the `μ`-subsets of `V(G)`; two
//! nodes `X`, `Y` are joined when some vertex cover of size exactly `|S|`
//! contains `X ∪ Y`. `S` reaches `T` iff a `μ`-subset of `S` reaches a
//! `μ`-subset of `T` in that graph.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Resource, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::konig_cover_between;

/// The compressed graph with explicit node and edge lists.
#[derive(Debug, Clone)]
pub struct CliqueCompressedGraph {
    pub mu: usize,
    pub cover_size: usize,
    pub nodes: Vec<VertexSet>,
    /// Unordered pairs `(i, j)`, `i < j`, of node indices.
    pub edges: Vec<(usize, usize)>,
}

impl CliqueCompressedGraph {
    pub fn node_index(&self, x: &VertexSet) -> Option<usize> {
        self.nodes.binary_search(x).ok()
    }

    /// Component label per node.
    pub fn components(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut label = vec![usize::MAX; self.nodes.len()];
        let mut next = 0;
        for root in 0..self.nodes.len() {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn connected(&self, x: &VertexSet, y: &VertexSet) -> bool {
        match (self.node_index(x), self.node_index(y)) {
            (Some(i), Some(j)) => {
                let c = self.components();
                c[i] == c[j]
            }
            _ => false,
        }
    }
}

/// Smallest vertex cover of `G - z`, found by guessing its trace on
/// `S' ∩ T'` and solving the bipartite residue exactly.
///
/// `s` and `t` must be vertex covers of `g`; they only steer the
/// decomposition and do not affect the answer. With `limit` set, stops at
/// the first cover no larger than it.
fn min_cover_avoiding(g: &Graph, z: &VertexSet, s: &VertexSet, t: &VertexSet, limit: Option<usize>) -> Option<VertexSet> {
    let keep = z.complement();
    let sp = s.intersection(&keep);
    let tp = t.intersection(&keep);
    let core = sp.intersection(&tp);
    let left = sp.difference(&tp);
    let right = tp.difference(&sp);
    let core_ids = core.to_vec();
    assert!(core_ids.len() < 63, "guess space too large");

    let mut best: Option<VertexSet> = None;
    for mask in 0u64..(1u64 << core_ids.len()) {
        let mut a = g.empty_set();
        for (i, &v) in core_ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.insert(v);
            }
        }
        let abar = core.difference(&a);
        // A covers G'[S'∩T'] iff the rest of the core is independent.
        if !g.is_independent_set(&abar) {
            continue;
        }
        let mut forced = g.open_neighborhood(&abar);
        forced.intersect_with(&keep);
        forced.difference_with(&core);
        let b = konig_cover_between(g, &left.difference(&forced), &right.difference(&forced));
        let size = a.len() + forced.len() + b.len();
        if best.as_ref().is_some_and(|w| w.len() <= size) {
            continue;
        }
        let mut w = a;
        w.union_with(&forced);
        w.union_with(&b);
        best = Some(w);
        if limit.is_some_and(|l| size <= l) {
            break;
        }
    }
    best
}

fn target_size(g: &Graph, z: &VertexSet, cover_size: usize) -> Option<usize> {
    let t = cover_size.checked_sub(z.len())?;
    (t <= g.vertex_count() - z.len()).then_some(t)
}

/// Whether some vertex cover of size exactly `cover_size` contains `x ∪ y`.
pub fn clique_edge_oracle(g: &Graph, x: &VertexSet, y: &VertexSet, cover_size: usize, s: &VertexSet, t: &VertexSet) -> bool {
    debug_assert!(g.is_vertex_cover(s) && g.is_vertex_cover(t));
    let z = x.union(y);
    let Some(tp) = target_size(g, &z, cover_size) else {
        return false;
    };
    min_cover_avoiding(g, &z, s, t, Some(tp)).is_some_and(|w| w.len() <= tp)
}

/// A vertex cover of size exactly `cover_size` containing `x ∪ y`, padded
/// with the lowest free ids.
pub fn clique_edge_witness(g: &Graph, x: &VertexSet, y: &VertexSet, cover_size: usize, s: &VertexSet, t: &VertexSet) -> Option<VertexSet> {
    let z = x.union(y);
    let tp = target_size(g, &z, cover_size)?;
    let mut w = min_cover_avoiding(g, &z, s, t, None)?;
    if w.len() > tp {
        return None;
    }
    w.union_with(&z);
    let mut v = 0;
    while w.len() < cover_size {
        w.insert(v);
        v += 1;
    }
    Some(w)
}

fn check_inputs(g: &Graph, s: &VertexSet, t: &VertexSet, mu: usize) -> Result<()> {
    g.check_set(s)?;
    g.check_set(t)?;
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(s.len(), t.len()));
    }
    if !g.is_vertex_cover(s) || !g.is_vertex_cover(t) {
        return Err(Error::pre("s and t must be vertex covers"));
    }
    if mu >= s.len() {
        return Err(Error::pre(format!("mu = {mu} leaves k = |s| - mu < 1 (|s| = {})", s.len())));
    }
    Ok(())
}

fn subsets_of_size(n: usize, mu: usize, budget: &Budget) -> Result<Vec<VertexSet>> {
    if mu > n {
        return Ok(Vec::new());
    }
    let count = (0..mu).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128).map(|p| p / (i as u128 + 1)));
    if count.map_or(true, |c| c > budget.max_states as u128) {
        return Err(Error::Budget(Resource::States(budget.max_states)));
    }
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..mu).collect();
    loop {
        out.push(VertexSet::of(n, &pick));
        // Advance to the next combination in lexicographic order.
        let Some(i) = (0..mu).rev().find(|&i| pick[i] < n - mu + i) else {
            return Ok(out);
        };
        pick[i] += 1;
        for j in i + 1..mu {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Lexicographically smallest `mu`-subset of `s`.
fn anchor(s: &VertexSet, mu: usize) -> VertexSet {
    VertexSet::of(s.universe(), &s.iter().take(mu).collect::<Vec<_>>())
}

pub fn build_clique_compressed_graph(g: &Graph, s: &VertexSet, t: &VertexSet, mu: usize, budget: &Budget) -> Result<CliqueCompressedGraph> {
    check_inputs(g, s, t, mu)?;
    let nodes = subsets_of_size(g.vertex_count(), mu, budget)?;
    let cover_size = s.len();
    let edges: Vec<(usize, usize)> = (0..nodes.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let nodes = &nodes;
            (i + 1..nodes.len())
                .filter(move |&j| clique_edge_oracle(g, &nodes[i], &nodes[j], cover_size, s, t))
                .map(move |j| (i, j))
        })
        .collect();
    Ok(CliqueCompressedGraph {
        mu,
        cover_size,
        nodes,
        edges,
    })
}

/// Reusable solver for many queries on one graph, cover size and `μ`.
///
/// Edge truth does not depend on which covers steer the decomposition, so
/// components are computed once and shared by later queries.
pub struct XpVcrSolver<'g> {
    g: &'g Graph,
    cover_size: usize,
    mu: usize,
    budget: Budget,
    nodes: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    components: Option<Vec<usize>>,
}

impl<'g> XpVcrSolver<'g> {
    pub fn new(g: &'g Graph, cover_size: usize, mu: usize, budget: &Budget) -> Self {
        XpVcrSolver {
            g,
            cover_size,
            mu,
            budget: *budget,
            nodes: Vec::new(),
            index: HashMap::new(),
            components: None,
        }
    }

    pub fn solve(&mut self, s: &VertexSet, t: &VertexSet) -> Result<bool> {
        check_inputs(self.g, s, t, self.mu)?;
        if s.len() != self.cover_size {
            return Err(Error::SizeMismatch(self.cover_size, s.len()));
        }
        if self.mu == 0 || s.intersection_len(t) >= self.mu {
            return Ok(true);
        }
        if self.components.is_none() {
            self.compute_components(s, t)?;
        }
        let c = self.components.as_ref().expect("computed");
        let (x, y) = (self.index[&anchor(s, self.mu)], self.index[&anchor(t, self.mu)]);
        Ok(c[x] == c[y])
    }

    /// BFS over clique-nodes, testing edges from each dequeued node to the
    /// still-unlabelled ones only.
    fn compute_components(&mut self, s: &VertexSet, t: &VertexSet) -> Result<()> {
        let (g, cover_size) = (self.g, self.cover_size);
        self.nodes = subsets_of_size(g.vertex_count(), self.mu, &self.budget)?;
        self.index = self.nodes.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let nodes = &self.nodes;
        // Nodes in no cover of the right size are isolated.
        let alive: Vec<bool> = nodes
            .par_iter()
            .map(|x| clique_edge_oracle(g, x, x, cover_size, s, t))
            .collect();
        let mut label = vec![usize::MAX; nodes.len()];
        let mut unlabelled: Vec<usize> = (0..nodes.len()).filter(|&i| alive[i]).collect();
        let mut next = 0;
        for (i, l) in label.iter_mut().enumerate() {
            if !alive[i] {
                *l = next;
                next += 1;
            }
        }
        let started = std::time::Instant::now();
        while let Some(root) = unlabelled.pop() {
            label[root] = next;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if started.elapsed() > self.budget.max_time {
                    return Err(Error::Budget(Resource::Time(self.budget.max_time)));
                }
                let hits: Vec<bool> = unlabelled
                    .par_iter()
                    .map(|&v| clique_edge_oracle(g, &nodes[u], &nodes[v], cover_size, s, t))
                    .collect();
                let mut rest = Vec::with_capacity(unlabelled.len());
                for (&v, hit) in unlabelled.iter().zip(hits) {
                    if hit {
                        label[v] = next;
                        queue.push_back(v);
                    } else {
                        rest.push(v);
                    }
                }
                unlabelled = rest;
            }
            next += 1;
        }
        self.components = Some(label);
        Ok(())
    }
}

/// One-shot XP decision: can `s` reach `t` under `(|s| - mu)`-TJ?
pub fn xp_vcr_solve(g: &Graph, s: &VertexSet, t: &VertexSet, mu: usize, budget: &Budget) -> Result<bool> {
    check_inputs(g, s, t, mu)?;
    XpVcrSolver::new(g, s.len(), mu, budget).solve(s, t)
}
