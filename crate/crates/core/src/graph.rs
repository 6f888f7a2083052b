//! Simple undirected graphs, vertex sets, and the token jumping / token
//! sliding adjacency relations.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matching::has_perfect_matching_between;

const WORD: usize = 64;

/// A subset of `0..universe`, stored as a bitset.
///
/// Two sets compare equal only if they share a universe and members.
/// Ordering is lexicographic on the ascending member lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set, rejecting ids outside the universe.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Result<Self> {
        let mut s = VertexSet::new(universe);
        for v in ids {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Like [`VertexSet::from_ids`] but panics on out-of-range ids.
    pub fn of(universe: usize, ids: &[usize]) -> Self {
        VertexSet::from_ids(universe, ids.iter().copied()).expect("vertex id in range")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / WORD, v % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn check_same(&self, other: &VertexSet) {
        assert_eq!(
            self.universe, other.universe,
            "vertex sets over different universes"
        );
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        self.check_same(other);
        VertexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> VertexSet {
        let mut c = VertexSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        c.trim();
        c
    }

    fn trim(&mut self) {
        let tail = self.universe % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_same(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        self.check_same(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    /// Same members, re-homed in a universe at least as large.
    pub fn extended(&self, universe: usize) -> VertexSet {
        assert!(universe >= self.universe);
        let mut s = VertexSet::new(universe);
        for v in self.iter() {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.universe.cmp(&other.universe))
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Simple undirected graph on `0..vertex_count`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph, symmetrizing and deduplicating the edge list.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(vertex_count: usize, edges: I) -> Result<Graph> {
        let mut rows = vec![VertexSet::new(vertex_count); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let adjacency: Vec<Vec<usize>> = rows.iter().map(VertexSet::to_vec).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            adjacency,
            rows,
            edge_count,
        })
    }

    pub fn empty(vertex_count: usize) -> Graph {
        Graph::new(vertex_count, std::iter::empty()).expect("edgeless graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.rows[u].contains(v)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn vertex_set(&self, ids: &[usize]) -> Result<VertexSet> {
        VertexSet::from_ids(self.vertex_count(), ids.iter().copied())
    }

    pub(crate) fn check_set(&self, x: &VertexSet) -> Result<()> {
        if x.universe() != self.vertex_count() {
            return Err(Error::UniverseMismatch {
                expected: self.vertex_count(),
                found: x.universe(),
            });
        }
        Ok(())
    }

    /// `N(x)`: vertices adjacent to some member of `x`, members excluded.
    pub fn open_neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in x {
            out.union_with(&self.rows[v]);
        }
        out.difference_with(x);
        out
    }

    /// `N[x] = N(x) ∪ x`.
    pub fn closed_neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut out = x.clone();
        for v in x {
            out.union_with(&self.rows[v]);
        }
        out
    }

    pub fn is_independent_set(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| self.rows[v].is_disjoint(x))
    }

    pub fn is_vertex_cover(&self, x: &VertexSet) -> bool {
        (0..self.vertex_count())
            .filter(|&v| !x.contains(v))
            .all(|v| self.rows[v].is_subset(x))
    }

    /// The graph plus `extra` isolated vertices appended at the end.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        let n = self.vertex_count() + extra;
        Graph::new(n, self.edges()).expect("extension keeps edges valid")
    }

    /// Line graph and, for each of its vertices, the edge of `self` it stands for.
    pub fn line_graph(&self) -> (Graph, Vec<(usize, usize)>) {
        let edges = self.edges();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut links = Vec::new();
        for inc in &incident {
            for (a, &i) in inc.iter().enumerate() {
                for &j in &inc[a + 1..] {
                    links.push((i, j));
                }
            }
        }
        let lg = Graph::new(edges.len(), links).expect("line graph is simple");
        (lg, edges)
    }
}

pub fn new_graph(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(vertex_count, edges.iter().copied())
}

pub fn is_independent_set(g: &Graph, x: &VertexSet) -> bool {
    g.is_independent_set(x)
}

pub fn is_vertex_cover(g: &Graph, x: &VertexSet) -> bool {
    g.is_vertex_cover(x)
}

pub fn closed_neighborhood(g: &Graph, x: &VertexSet) -> VertexSet {
    g.closed_neighborhood(x)
}

pub fn line_graph(g: &Graph) -> (Graph, Vec<(usize, usize)>) {
    g.line_graph()
}

/// Feasibility notion of a reconfiguration problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    IndependentSet,
    VertexCover,
}

impl Kind {
    pub fn is_feasible(self, g: &Graph, x: &VertexSet) -> bool {
        match self {
            Kind::IndependentSet => g.is_independent_set(x),
            Kind::VertexCover => g.is_vertex_cover(x),
        }
    }

    pub fn dual(self) -> Kind {
        match self {
            Kind::IndependentSet => Kind::VertexCover,
            Kind::VertexCover => Kind::IndependentSet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    TokenJumping,
    TokenSliding,
}

/// `k`-TJ or `k`-TS, `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    kind: RuleKind,
    k: usize,
}

impl Rule {
    pub fn new(kind: RuleKind, k: usize) -> Result<Rule> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        Ok(Rule { kind, k })
    }

    pub fn tj(k: usize) -> Result<Rule> {
        Rule::new(RuleKind::TokenJumping, k)
    }

    pub fn ts(k: usize) -> Result<Rule> {
        Rule::new(RuleKind::TokenSliding, k)
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn adjacent(&self, g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        match self.kind {
            RuleKind::TokenJumping => adjacent_ktj(a, b, self.k),
            RuleKind::TokenSliding => adjacent_kts(g, a, b, self.k),
        }
    }
}

fn check_pair(a: &VertexSet, b: &VertexSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if a.universe() != b.universe() {
        return Err(Error::UniverseMismatch {
            expected: a.universe(),
            found: b.universe(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// `|a △ b| <= 2k`.
pub fn adjacent_ktj(a: &VertexSet, b: &VertexSet, k: usize) -> Result<bool> {
    check_pair(a, b, k)?;
    Ok(a.symmetric_difference_len(b) <= 2 * k)
}

/// k-TJ plus a perfect matching in `g` between `a \ b` and `b \ a`.
pub fn adjacent_kts(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Result<bool> {
    check_pair(a, b, k)?;
    g.check_set(a)?;
    if a.symmetric_difference_len(b) > 2 * k {
        return Ok(false);
    }
    Ok(has_perfect_matching_between(g, &a.difference(b), &b.difference(a)))
}

/// A reconfiguration problem instance; invariants are checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigInstance {
    graph: Graph,
    kind: Kind,
    start: VertexSet,
    target: VertexSet,
    rule: Rule,
}

impl ReconfigInstance {
    pub fn new(graph: Graph, kind: Kind, start: VertexSet, target: VertexSet, rule: Rule) -> Result<Self> {
        graph.check_set(&start)?;
        graph.check_set(&target)?;
        if start.len() != target.len() {
            return Err(Error::SizeMismatch(start.len(), target.len()));
        }
        for (name, x) in [("start", &start), ("target", &target)] {
            if !kind.is_feasible(&graph, x) {
                return Err(Error::Infeasible(format!("{name} set {x:?} is not feasible for {kind:?}")));
            }
        }
        Ok(ReconfigInstance {
            graph,
            kind,
            start,
            target,
            rule,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn start(&self) -> &VertexSet {
        &self.start
    }

    pub fn target(&self) -> &VertexSet {
        &self.target
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn with_rule(&self, rule: Rule) -> ReconfigInstance {
        ReconfigInstance { rule, ..self.clone() }
    }

    /// Same question on complemented sets with the dual feasibility kind.
    pub fn complemented(&self) -> ReconfigInstance {
        ReconfigInstance {
            graph: self.graph.clone(),
            kind: self.kind.dual(),
            start: self.start.complement(),
            target: self.target.complement(),
            rule: self.rule,
        }
    }
}

/// Ordered list of sets; length is the number of transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigSequence {
    steps: Vec<VertexSet>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<VertexSet>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::pre("a sequence has at least one step"));
        }
        Ok(ReconfigSequence { steps })
    }

    pub fn steps(&self) -> &[VertexSet] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<VertexSet> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.steps.len() == 1
    }

    pub fn first(&self) -> &VertexSet {
        &self.steps[0]
    }

    pub fn last(&self) -> &VertexSet {
        self.steps.last().expect("non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    WrongUniverse,
    StartMismatch,
    TargetMismatch,
    WrongSize,
    Infeasible,
    NotAdjacent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// First violation; `index` is the offending step.
    Reject { index: usize, reason: RejectReason },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

pub fn verify_sequence(inst: &ReconfigInstance, seq: &ReconfigSequence) -> Verdict {
    let reject = |index, reason| Verdict::Reject { index, reason };
    let g = inst.graph();
    let steps = seq.steps();
    if let Some(i) = steps.iter().position(|x| x.universe() != g.vertex_count()) {
        return reject(i, RejectReason::WrongUniverse);
    }
    if steps[0] != *inst.start() {
        return reject(0, RejectReason::StartMismatch);
    }
    for (i, x) in steps.iter().enumerate() {
        if x.len() != inst.start().len() {
            return reject(i, RejectReason::WrongSize);
        }
        if !inst.kind().is_feasible(g, x) {
            return reject(i, RejectReason::Infeasible);
        }
        if i > 0 && !inst.rule().adjacent(g, &steps[i - 1], x).unwrap_or(false) {
            return reject(i, RejectReason::NotAdjacent);
        }
    }
    if seq.last() != inst.target() {
        return reject(steps.len() - 1, RejectReason::TargetMismatch);
    }
    Verdict::Accept
}
