//! Brute-force ground truth: feasible-set enumeration, exact optimum,
//! breadth-first search over reconfiguration graphs, and TAR values.

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigInstance, ReconfigSequence, Rule, RuleKind, VertexSet};
use crate::matching::has_perfect_matching_between;

/// Feasible families at most this large are built up front and linked.
pub const EXPLICIT_STATE_LIMIT: usize = 10_000;

/// Greedy clique cover size of `cand`: an upper bound on any independent
/// subset of it.
pub(crate) fn clique_cover_bound(g: &Graph, cand: &VertexSet) -> usize {
    let mut rest = cand.clone();
    let mut cliques = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut common = rest.intersection(g.neighbor_set(v));
        while let Some(w) = common.first() {
            rest.remove(w);
            common.intersect_with(g.neighbor_set(w));
        }
        cliques += 1;
    }
    cliques
}

struct Frame {
    remaining: VertexSet,
}

/// Lazy lexicographic enumeration of independent sets of one size inside
/// a candidate set.
pub struct IndependentSets<'g> {
    g: &'g Graph,
    size: usize,
    stack: Vec<Frame>,
    chosen: Vec<usize>,
    emit_empty: bool,
    deadline: Option<Instant>,
    steps: u32,
    timed_out: bool,
}

impl<'g> IndependentSets<'g> {
    pub fn within(g: &'g Graph, candidates: &VertexSet, size: usize) -> Self {
        let mut it = IndependentSets {
            g,
            size,
            stack: Vec::new(),
            chosen: Vec::new(),
            emit_empty: size == 0,
            deadline: None,
            steps: 0,
            timed_out: false,
        };
        if size > 0 && clique_cover_bound(g, candidates) >= size {
            it.stack.push(Frame {
                remaining: candidates.clone(),
            });
        }
        it
    }

    pub fn new(g: &'g Graph, size: usize) -> Self {
        IndependentSets::within(g, &VertexSet::full(g.vertex_count()), size)
    }

    /// Stop early, as if exhausted, once `deadline` passes.
    pub(crate) fn until(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    /// Whether iteration ended because of the deadline.
    pub(crate) fn timed_out(&self) -> bool {
        self.timed_out
    }
}

impl Iterator for IndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.emit_empty {
            self.emit_empty = false;
            return Some(self.g.empty_set());
        }
        loop {
            self.steps = self.steps.wrapping_add(1);
            if self.steps % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
                self.timed_out = true;
                self.stack.clear();
                return None;
            }
            let depth = self.chosen.len();
            let frame = self.stack.last_mut()?;
            let next = if depth + frame.remaining.len() < self.size {
                None
            } else {
                frame.remaining.first()
            };
            let Some(v) = next else {
                self.stack.pop();
                self.chosen.pop();
                continue;
            };
            frame.remaining.remove(v);
            if depth + 1 == self.size {
                let mut out = VertexSet::from_ids(self.g.vertex_count(), self.chosen.iter().copied())
                    .expect("ids in range");
                out.insert(v);
                return Some(out);
            }
            let cand = frame.remaining.difference(self.g.neighbor_set(v));
            if depth + 1 + clique_cover_bound(self.g, &cand) >= self.size {
                self.chosen.push(v);
                self.stack.push(Frame { remaining: cand });
            }
        }
    }
}

/// Every feasible set of exactly `size` vertices, in lexicographic order.
///
/// Independent sets are produced lazily; vertex covers are the sorted
/// complements of independent sets of size `n - size`.
pub fn enumerate_feasible(g: &Graph, kind: Kind, size: usize) -> Box<dyn Iterator<Item = VertexSet> + '_> {
    let n = g.vertex_count();
    if size > n {
        return Box::new(std::iter::empty());
    }
    match kind {
        Kind::IndependentSet => Box::new(IndependentSets::new(g, size)),
        Kind::VertexCover => {
            let mut all: Vec<VertexSet> = IndependentSets::new(g, n - size).map(|s| s.complement()).collect();
            all.sort();
            Box::new(all.into_iter())
        }
    }
}

/// The feasible family, or `None` once it exceeds `cap`.
pub(crate) fn feasible_family(g: &Graph, kind: Kind, size: usize, cap: usize, meter: &mut Meter) -> Result<Option<Vec<VertexSet>>> {
    let n = g.vertex_count();
    if size > n {
        return Ok(Some(Vec::new()));
    }
    let is_size = match kind {
        Kind::IndependentSet => size,
        Kind::VertexCover => n - size,
    };
    let mut out = Vec::new();
    let mut sets = IndependentSets::new(g, is_size).until(meter.deadline());
    for s in sets.by_ref() {
        if out.len() == cap {
            return Ok(None);
        }
        meter.tick()?;
        out.push(match kind {
            Kind::IndependentSet => s,
            Kind::VertexCover => s.complement(),
        });
    }
    if sets.timed_out() {
        return Err(meter.time_error());
    }
    out.sort();
    Ok(Some(out))
}

pub fn max_independent_set(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let mut meter = budget.meter();
    let mut best = g.empty_set();
    let mut current = Vec::new();
    mis_branch(g, VertexSet::full(g.vertex_count()), &mut current, &mut best, &mut meter)?;
    Ok(best)
}

fn mis_branch(g: &Graph, cand: VertexSet, current: &mut Vec<usize>, best: &mut VertexSet, meter: &mut Meter) -> Result<()> {
    meter.charge(1)?;
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = VertexSet::from_ids(g.vertex_count(), current.iter().copied())?;
        }
        return Ok(());
    }
    if current.len() + clique_cover_bound(g, &cand) <= best.len() {
        return Ok(());
    }
    // Branch on the candidate with most candidate neighbours.
    let v = cand
        .iter()
        .max_by_key(|&v| (g.neighbor_set(v).intersection_len(&cand), std::cmp::Reverse(v)))
        .expect("non-empty");
    let mut without_v = cand.clone();
    without_v.remove(v);
    current.push(v);
    mis_branch(g, without_v.difference(g.neighbor_set(v)), current, best, meter)?;
    current.pop();
    mis_branch(g, without_v, current, best, meter)
}

/// Some independent set of exactly `size` vertices inside `cand`, by
/// metered branch and bound.
pub(crate) fn independent_set_within(g: &Graph, cand: &VertexSet, size: usize, budget: &Budget) -> Result<Option<VertexSet>> {
    fn rec(g: &Graph, cand: VertexSet, acc: &mut Vec<usize>, size: usize, meter: &mut Meter) -> Result<bool> {
        meter.charge(1)?;
        if acc.len() == size {
            return Ok(true);
        }
        if acc.len() + clique_cover_bound(g, &cand) < size {
            return Ok(false);
        }
        let mut rest = cand.clone();
        for v in cand.iter() {
            rest.remove(v);
            acc.push(v);
            if rec(g, rest.difference(g.neighbor_set(v)), acc, size, meter)? {
                return Ok(true);
            }
            acc.pop();
        }
        Ok(false)
    }
    let mut meter = budget.meter();
    let mut acc = Vec::new();
    if rec(g, cand.clone(), &mut acc, size, &mut meter)? {
        return Ok(Some(VertexSet::from_ids(g.vertex_count(), acc)?));
    }
    Ok(None)
}

pub fn min_vertex_cover(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    Ok(max_independent_set(g, budget)?.complement())
}

/// Outcome of an exact reachability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub reachable: bool,
    pub shortest: Option<ReconfigSequence>,
    pub explored_states: usize,
}

/// Calls `f` on every `j`-subset of `items`, in lexicographic order.
fn for_each_combination(items: &[usize], j: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(items: &[usize], j: usize, from: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if acc.len() == j {
            return f(acc);
        }
        let need = j - acc.len();
        for i in from..items.len() {
            if items.len() - i < need {
                break;
            }
            acc.push(items[i]);
            rec(items, j, i + 1, acc, f)?;
            acc.pop();
        }
        Ok(())
    }
    rec(items, j, 0, &mut Vec::with_capacity(j), f)
}

/// All feasible sets adjacent to `a` under `rule`, generated by swaps
/// of `j <= k` vertices rather than by scanning the whole family.
pub(crate) fn swap_neighbors(g: &Graph, kind: Kind, rule: Rule, a: &VertexSet, out: &mut Vec<VertexSet>, meter: &mut Meter) -> Result<()> {
    let members = a.to_vec();
    let outside = a.complement();
    for j in 1..=rule.k().min(members.len()) {
        for_each_combination(&members, j, &mut |r| {
            meter.tick()?;
            let removed = VertexSet::from_ids(g.vertex_count(), r.iter().copied())?;
            let base = a.difference(&removed);
            let mut emit = |added: VertexSet| {
                if rule.kind() == RuleKind::TokenSliding && !has_perfect_matching_between(g, &removed, &added) {
                    return;
                }
                out.push(base.union(&added));
            };
            match kind {
                Kind::IndependentSet => {
                    let allowed = outside.difference(&g.closed_neighborhood(&base));
                    let mut sets = IndependentSets::within(g, &allowed, j).until(meter.deadline());
                    for added in sets.by_ref() {
                        emit(added);
                    }
                    if sets.timed_out() {
                        return Err(meter.time_error());
                    }
                }
                Kind::VertexCover => {
                    if !g.is_independent_set(&removed) {
                        return Ok(());
                    }
                    let forced = g.open_neighborhood(&removed).intersection(&outside);
                    if forced.len() > j {
                        return Ok(());
                    }
                    let free: Vec<usize> = outside.difference(&forced).to_vec();
                    for_each_combination(&free, j - forced.len(), &mut |extra| {
                        meter.tick()?;
                        let mut added = forced.clone();
                        for &v in extra {
                            added.insert(v);
                        }
                        emit(added);
                        Ok(())
                    })?;
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn binomial_f64(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rough count of swap candidates per state, for choosing a linker.
fn swap_cost(n: usize, size: usize, k: usize) -> f64 {
    (1..=k.min(size)).map(|j| binomial_f64(size, j) * binomial_f64(n - size, j.min(n - size))).sum()
}

/// Breadth-first search from `start`; `None` if `target` is unreachable.
fn bfs_path(
    start: &VertexSet,
    target: &VertexSet,
    meter: &mut Meter,
    mut neighbors: impl FnMut(&VertexSet, &mut Vec<VertexSet>) -> Result<()>,
) -> Result<(Option<Vec<VertexSet>>, usize)> {
    let mut index: HashMap<VertexSet, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    let mut parent = vec![usize::MAX];
    index.insert(start.clone(), 0);
    meter.charge(1)?;
    let mut queue = VecDeque::from([0usize]);
    let mut buf = Vec::new();
    let mut hit = (start == target).then_some(0);
    while let (None, Some(i)) = (hit, queue.pop_front()) {
        buf.clear();
        let current = states[i].clone();
        neighbors(&current, &mut buf)?;
        for b in buf.drain(..) {
            if index.contains_key(&b) {
                continue;
            }
            meter.charge(1)?;
            let id = states.len();
            index.insert(b.clone(), id);
            let done = b == *target;
            states.push(b);
            parent.push(i);
            if done {
                hit = Some(id);
                break;
            }
            queue.push_back(id);
        }
    }
    let explored = states.len();
    Ok((
        hit.map(|mut i| {
            let mut path = vec![states[i].clone()];
            while parent[i] != usize::MAX {
                i = parent[i];
                path.push(states[i].clone());
            }
            path.reverse();
            path
        }),
        explored,
    ))
}

pub fn solve_exact(inst: &ReconfigInstance, want_shortest: bool, budget: &Budget) -> Result<SolveResult> {
    let g = inst.graph();
    let (kind, rule) = (inst.kind(), inst.rule());
    let size = inst.start().len();
    let mut meter = budget.meter();

    let family = if inst.start() == inst.target() {
        None
    } else {
        feasible_family(g, kind, size, EXPLICIT_STATE_LIMIT.min(budget.max_states), &mut meter)?
    };
    let scan = family
        .as_ref()
        .is_some_and(|f| (f.len() as f64) < swap_cost(g.vertex_count(), size, rule.k()));

    // Clock for neighbor generation; `meter` itself belongs to the search.
    let mut inner = budget.meter();
    let (path, explored) = match (&family, scan) {
        (Some(family), true) => bfs_path(inst.start(), inst.target(), &mut meter, |a, out| {
            for b in family {
                inner.tick()?;
                if b != a && rule.adjacent(g, a, b)? {
                    out.push(b.clone());
                }
            }
            Ok(())
        })?,
        _ => bfs_path(inst.start(), inst.target(), &mut meter, |a, out| swap_neighbors(g, kind, rule, a, out, &mut inner))?,
    };
    let reachable = path.is_some();
    let shortest = match path {
        Some(p) if want_shortest => Some(ReconfigSequence::new(p)?),
        _ => None,
    };
    Ok(SolveResult {
        reachable,
        shortest,
        explored_states: explored,
    })
}

/// Explicit reconfiguration graph on all feasible sets of one size.
#[derive(Debug, Clone)]
pub struct ReconfigurationGraph {
    states: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl ReconfigurationGraph {
    pub fn build(g: &Graph, kind: Kind, size: usize, rule: Rule, budget: &Budget) -> Result<Self> {
        let mut meter = budget.meter();
        let states = feasible_family(g, kind, size, budget.max_states, &mut meter)?
            .ok_or(Error::Budget(crate::error::Resource::States(budget.max_states)))?;
        let index: HashMap<VertexSet, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut adjacency = vec![Vec::new(); states.len()];
        if (states.len() as f64) < 2.0 * swap_cost(g.vertex_count(), size, rule.k()) {
            for i in 0..states.len() {
                for j in i + 1..states.len() {
                    meter.tick()?;
                    if rule.adjacent(g, &states[i], &states[j])? {
                        adjacency[i].push(j);
                        adjacency[j].push(i);
                    }
                }
            }
        } else {
            let mut buf = Vec::new();
            for (i, s) in states.iter().enumerate() {
                buf.clear();
                swap_neighbors(g, kind, rule, s, &mut buf, &mut meter)?;
                meter.charge(buf.len())?;
                adjacency[i] = buf.iter().map(|b| index[b]).collect();
                adjacency[i].sort_unstable();
            }
        }
        Ok(ReconfigurationGraph {
            states,
            index,
            adjacency,
        })
    }

    pub fn states(&self) -> &[VertexSet] {
        &self.states
    }

    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Component label per state.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.states.len()];
        let mut next = 0;
        for root in 0..self.states.len() {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
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
}

/// Value of a TAR optimisation and a walk attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TarResult {
    pub value: usize,
    pub witness: ReconfigSequence,
}

/// Largest `θ` such that `i` and `j` are joined through independent sets
/// of size at least `θ` by single additions and removals.
pub fn solve_tar_maxmin(g: &Graph, i: &VertexSet, j: &VertexSet, budget: &Budget) -> Result<TarResult> {
    g.check_set(i)?;
    g.check_set(j)?;
    if !g.is_independent_set(i) || !g.is_independent_set(j) {
        return Err(Error::pre("TAR endpoints must be independent sets"));
    }
    let mut meter = budget.meter();
    for theta in (0..=i.len().min(j.len())).rev() {
        let (path, _) = bfs_path(i, j, &mut meter, |a, out| {
            if a.len() > theta {
                for v in a {
                    let mut b = a.clone();
                    b.remove(v);
                    out.push(b);
                }
            }
            let blocked = g.closed_neighborhood(a);
            for v in 0..g.vertex_count() {
                if !blocked.contains(v) {
                    let mut b = a.clone();
                    b.insert(v);
                    out.push(b);
                }
            }
            Ok(())
        })?;
        if let Some(p) = path {
            return Ok(TarResult {
                value: theta,
                witness: ReconfigSequence::new(p)?,
            });
        }
    }
    Err(Error::Internal("removal to the empty set always connects".into()))
}

/// Smallest `θ` such that `s` and `t` are joined through vertex covers of
/// size at most `θ` by single additions and removals.
pub fn solve_tar_minmax(g: &Graph, s: &VertexSet, t: &VertexSet, budget: &Budget) -> Result<TarResult> {
    g.check_set(s)?;
    g.check_set(t)?;
    if !g.is_vertex_cover(s) || !g.is_vertex_cover(t) {
        return Err(Error::pre("TAR endpoints must be vertex covers"));
    }
    let mut meter = budget.meter();
    for theta in s.len().max(t.len())..=g.vertex_count() {
        let (path, _) = bfs_path(s, t, &mut meter, |a, out| {
            if a.len() < theta {
                for v in 0..g.vertex_count() {
                    if !a.contains(v) {
                        let mut b = a.clone();
                        b.insert(v);
                        out.push(b);
                    }
                }
            }
            for v in a {
                // Removing v is safe iff all its neighbours stay covered.
                if g.neighbor_set(v).is_subset(a) {
                    let mut b = a.clone();
                    b.remove(v);
                    out.push(b);
                }
            }
            Ok(())
        })?;
        if let Some(p) = path {
            return Ok(TarResult {
                value: theta,
                witness: ReconfigSequence::new(p)?,
            });
        }
    }
    Err(Error::Internal("the full vertex set always connects".into()))
}
