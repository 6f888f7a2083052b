//! Bipartite matching (Hopcroft–Karp) and König vertex covers.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// Two-coloring of a graph: every edge joins `left` to `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.left.universe() == g.vertex_count()
            && self.right.universe() == g.vertex_count()
            && self.left.is_disjoint(&self.right)
            && self.left.union(&self.right).len() == g.vertex_count()
            && g.edges().iter().all(|&(u, v)| self.left.contains(u) != self.left.contains(v))
    }
}

/// A set of vertex-disjoint edges, each stored as `(min, max)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Matching {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Edges of `g`, pairwise disjoint.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        self.pairs.iter().all(|&(u, v)| {
            let ok = g.has_edge(u, v) && !seen[u] && !seen[v];
            seen[u] = true;
            seen[v] = true;
            ok
        })
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        self.is_valid_for(g) && 2 * self.len() == g.vertex_count()
    }

    pub fn symmetric_difference_len(&self, other: &Matching) -> usize {
        let common = self.pairs.iter().filter(|p| other.pairs.binary_search(p).is_ok()).count();
        self.len() + other.len() - 2 * common
    }
}

/// BFS 2-coloring from the lowest uncolored id; that vertex goes left.
pub fn bipartition_of(g: &Graph) -> Option<Bipartition> {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(true);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut left = g.empty_set();
    for (v, s) in side.iter().enumerate() {
        if *s == Some(true) {
            left.insert(v);
        }
    }
    let right = left.complement();
    Some(Bipartition { left, right })
}

/// Hopcroft–Karp restricted to edges between `left` and `right`.
/// Returns the mate array indexed by vertex id.
fn hopcroft_karp(g: &Graph, left: &VertexSet, right: &VertexSet) -> Vec<usize> {
    let n = g.vertex_count();
    let lefts: Vec<usize> = left.to_vec();
    let mut mate = vec![NONE; n];
    let mut dist = vec![NONE; n];
    loop {
        // Layering phase.
        let mut queue = VecDeque::new();
        for &u in &lefts {
            if mate[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !right.contains(v) {
                    continue;
                }
                let w = mate[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return mate;
        }
        for &u in &lefts {
            if mate[u] == NONE {
                augment(g, right, u, &mut mate, &mut dist);
            }
        }
    }
}

fn augment(g: &Graph, right: &VertexSet, u: usize, mate: &mut [usize], dist: &mut [usize]) -> bool {
    for &v in g.neighbors(u) {
        if !right.contains(v) {
            continue;
        }
        let w = mate[v];
        if w == NONE || (dist[w] == dist[u] + 1 && augment(g, right, w, mate, dist)) {
            mate[u] = v;
            mate[v] = u;
            return true;
        }
    }
    dist[u] = NONE;
    false
}

fn matching_from_mates(left: &VertexSet, mate: &[usize]) -> Matching {
    Matching::new(left.iter().filter(|&u| mate[u] != NONE).map(|u| (u, mate[u])))
}

/// Maximum matching of the edges running between two disjoint sets.
pub fn maximum_matching_between(g: &Graph, left: &VertexSet, right: &VertexSet) -> Matching {
    let mate = hopcroft_karp(g, left, right);
    matching_from_mates(left, &mate)
}

pub fn maximum_matching(g: &Graph, bp: &Bipartition) -> Matching {
    maximum_matching_between(g, &bp.left, &bp.right)
}

/// König cover of the bipartite subgraph between `left` and `right`.
pub fn konig_cover_between(g: &Graph, left: &VertexSet, right: &VertexSet) -> VertexSet {
    let mate = hopcroft_karp(g, left, right);
    // Alternating reachability from unmatched left vertices.
    let mut reached = g.empty_set();
    let mut queue = VecDeque::new();
    for u in left {
        if mate[u] == NONE {
            reached.insert(u);
            queue.push_back(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !right.contains(v) || reached.contains(v) {
                continue;
            }
            reached.insert(v);
            let w = mate[v];
            if w != NONE && !reached.contains(w) {
                reached.insert(w);
                queue.push_back(w);
            }
        }
    }
    let mut cover = left.difference(&reached);
    cover.union_with(&right.intersection(&reached));
    cover
}

pub fn konig_min_vertex_cover(g: &Graph, bp: &Bipartition) -> VertexSet {
    konig_cover_between(g, &bp.left, &bp.right)
}

/// Whether the edges between `a` and `b` contain a matching saturating both.
pub fn has_perfect_matching_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    if a.len() != b.len() {
        return false;
    }
    maximum_matching_between(g, a, b).len() == a.len()
}

/// True if some augmenting path exists for `m` in the bipartite graph.
pub fn has_augmenting_path(g: &Graph, bp: &Bipartition, m: &Matching) -> bool {
    let mut mate = vec![NONE; g.vertex_count()];
    for &(u, v) in m.pairs() {
        mate[u] = v;
        mate[v] = u;
    }
    let mut seen = g.empty_set();
    let mut queue = VecDeque::new();
    for u in &bp.left {
        if mate[u] == NONE {
            seen.insert(u);
            queue.push_back(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if seen.contains(v) || mate[u] == v {
                continue;
            }
            seen.insert(v);
            if mate[v] == NONE {
                return true;
            }
            let w = mate[v];
            if !seen.contains(w) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    false
}
