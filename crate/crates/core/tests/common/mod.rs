//! Graph and formula generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use rekonfig::oracles::{CnfFormula, Literal};
use rekonfig::{Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, mask: u64) -> Graph {
    let p = pairs(n);
    Graph::new(n, (0..p.len()).filter(|&i| mask >> i & 1 == 1).map(|i| p[i])).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = VertexSet::of(n, &[0]);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen.len() == n
}

/// Every connected graph on `0..n`, labelled.
pub fn connected_labelled(n: usize) -> Vec<Graph> {
    let m = n * n.saturating_sub(1) / 2;
    (0..1u64 << m).map(|mask| from_mask(n, mask)).filter(is_connected).collect()
}

/// Adjacency bitmask: bit `u·n + v` for each ordered adjacent pair.
fn code(n: usize, adj: &[u64], perm: &[usize]) -> u64 {
    let mut c = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                c |= 1 << (a * n + b);
            }
        }
    }
    c
}

/// Minimum code over relabelings that list vertices by degree; equal for
/// isomorphic graphs because the degree order is itself invariant.
fn canonical(n: usize, adj: &[u64]) -> u64 {
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    // Positions available to each degree class.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (pos, &v) in order.iter().enumerate() {
        match classes.last_mut() {
            Some(c) if deg[order[c[0]]] == deg[v] => c.push(pos),
            _ => classes.push(vec![pos]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0; n];
    fn rec(ci: usize, classes: &[Vec<usize>], order: &[usize], perm: &mut Vec<usize>, n: usize, adj: &[u64], best: &mut u64) {
        if ci == classes.len() {
            *best = (*best).min(code(n, adj, perm));
            return;
        }
        let slots = &classes[ci];
        let mut targets = slots.clone();
        heap(&mut targets, slots.len(), &mut |t| {
            for (k, &pos) in slots.iter().enumerate() {
                perm[order[pos]] = t[k];
            }
            rec(ci + 1, classes, order, perm, n, adj, best);
        });
    }
    rec(0, &classes, &order, &mut perm, n, adj, &mut best);
    best
}

/// Heap's algorithm.
fn heap(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k {
        heap(a, k - 1, f);
        let j = if k % 2 == 0 { i } else { 0 };
        if i + 1 < k {
            a.swap(j, k - 1);
        }
    }
}

/// One representative of every isomorphism class of graphs on `n` vertices.
pub fn all_unlabelled(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Vec<u64>> = vec![vec![]];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for r in &reps {
            for nb in 0..1u64 << (size - 1) {
                let mut adj = r.clone();
                for (u, a) in adj.iter_mut().enumerate() {
                    if nb >> u & 1 == 1 {
                        *a |= 1 << (size - 1);
                    }
                }
                adj.push(nb);
                if seen.insert(canonical(size, &adj)) {
                    next.push(adj);
                }
            }
        }
        reps = next;
    }
    reps.iter()
        .map(|adj| Graph::new(n, (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)))).unwrap())
        .collect()
}

pub fn connected_unlabelled(n: usize) -> Vec<Graph> {
    all_unlabelled(n).into_iter().filter(is_connected).collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    Graph::new(n, pairs(n).into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

/// Random bipartite graph with sides `0..a` and `a..a+b`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, a: usize, b: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::new(a + b, e).unwrap()
}

/// Random E3 formula in which every clause mixes polarities and every
/// variable occurs.
pub fn random_sandwiched(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Option<CnfFormula> {
    for _ in 0..100 {
        let mut clauses = Vec::new();
        for _ in 0..m {
            let mut c: Vec<Literal> = (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=n);
                    if rng.gen_bool(0.5) {
                        Literal::pos(v)
                    } else {
                        Literal::neg(v)
                    }
                })
                .collect();
            if c.iter().all(|l| l.is_positive()) || c.iter().all(|l| !l.is_positive()) {
                let i = rng.gen_range(0..3);
                c[i] = c[i].negated();
            }
            c.shuffle(rng);
            clauses.push(c);
        }
        let phi = CnfFormula::new(n, clauses).unwrap();
        if phi.occurrences()[1..].iter().all(|&a| a > 0) {
            return Some(phi);
        }
    }
    None
}

/// Random E3 formula, any polarities.
pub fn random_e3(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=n);
                    if rng.gen_bool(0.5) {
                        Literal::pos(v)
                    } else {
                        Literal::neg(v)
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}
