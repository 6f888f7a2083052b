use std::collections::{HashSet, VecDeque};

use crate::budget::Budget;
use crate::error::{Error, Resource, Result};

/// Largest edge count `ncl_valid_configs` will enumerate.
pub const NCL_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NclVertexType {
    /// Incident weights 1, 1, 2.
    And,
    /// Incident weights 2, 2, 2.
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NclEdge {
    pub u: usize,
    pub v: usize,
    pub weight: u8,
}

impl NclEdge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple weighted constraint graph whose vertices are all AND or OR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NclMachine {
    types: Vec<NclVertexType>,
    edges: Vec<NclEdge>,
    incident: Vec<Vec<usize>>,
}

impl NclMachine {
    /// Vertex types are inferred from incident weights.
    pub fn new(vertex_count: usize, edges: Vec<NclEdge>) -> Result<NclMachine> {
        let mut incident = vec![Vec::new(); vertex_count];
        let mut seen = HashSet::new();
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: e.u.max(e.v),
                    vertex_count,
                });
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            if !matches!(e.weight, 1 | 2) {
                return Err(Error::pre(format!("edge {} has weight {}", i + 1, e.weight)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::pre(format!("edge {} duplicates an earlier edge", i + 1)));
            }
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        let mut types = Vec::with_capacity(vertex_count);
        for (x, inc) in incident.iter().enumerate() {
            let mut w: Vec<u8> = inc.iter().map(|&i| edges[i].weight).collect();
            w.sort_unstable();
            types.push(match w.as_slice() {
                [2, 2, 2] => NclVertexType::Or,
                [1, 1, 2] => NclVertexType::And,
                _ => return Err(Error::pre(format!("vertex {} has incident weights {w:?}, neither AND nor OR", x + 1))),
            });
        }
        Ok(NclMachine {
            types,
            edges,
            incident,
        })
    }

    pub fn from_triples(vertex_count: usize, edges: &[(usize, usize, u8)]) -> Result<NclMachine> {
        NclMachine::new(vertex_count, edges.iter().map(|&(u, v, weight)| NclEdge { u, v, weight }).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.types.len()
    }

    pub fn edges(&self) -> &[NclEdge] {
        &self.edges
    }

    pub fn vertex_type(&self, x: usize) -> NclVertexType {
        self.types[x]
    }

    /// Incident edge indices of `x`, in edge-list order.
    pub fn incident(&self, x: usize) -> &[usize] {
        &self.incident[x]
    }

    fn in_weight(&self, x: usize, head_is_v: impl Fn(usize) -> bool) -> u32 {
        self.incident[x]
            .iter()
            .filter(|&&i| (self.edges[i].v == x) == head_is_v(i))
            .map(|&i| self.edges[i].weight as u32)
            .sum()
    }

    fn mask_valid(&self, mask: u64) -> bool {
        (0..self.vertex_count()).all(|x| self.in_weight(x, |i| mask >> i & 1 == 1) >= 2)
    }
}

/// An orientation: the head (pointed-to endpoint) of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NclConfig {
    heads: Vec<usize>,
}

impl NclConfig {
    pub fn from_heads(m: &NclMachine, heads: Vec<usize>) -> Result<NclConfig> {
        if heads.len() != m.edges().len() {
            return Err(Error::SizeMismatch(m.edges().len(), heads.len()));
        }
        for (i, (&h, e)) in heads.iter().zip(m.edges()).enumerate() {
            if h != e.u && h != e.v {
                return Err(Error::pre(format!("head {} of edge {} is not an endpoint", h + 1, i + 1)));
            }
        }
        Ok(NclConfig { heads })
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn head(&self, edge: usize) -> usize {
        self.heads[edge]
    }

    /// Total weight of edges pointing into `x`.
    pub fn in_weight(&self, m: &NclMachine, x: usize) -> u32 {
        m.incident(x)
            .iter()
            .filter(|&&i| self.heads[i] == x)
            .map(|&i| m.edges()[i].weight as u32)
            .sum()
    }

    pub fn is_valid(&self, m: &NclMachine) -> bool {
        self.heads.len() == m.edges().len() && (0..m.vertex_count()).all(|x| self.in_weight(m, x) >= 2)
    }

    /// Bit `i` set iff edge `i` points at its second endpoint.
    fn to_mask(&self, m: &NclMachine) -> u64 {
        self.heads
            .iter()
            .zip(m.edges())
            .enumerate()
            .fold(0, |acc, (i, (&h, e))| acc | (((h == e.v) as u64) << i))
    }

    fn from_mask(m: &NclMachine, mask: u64) -> NclConfig {
        NclConfig {
            heads: m
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| if mask >> i & 1 == 1 { e.v } else { e.u })
                .collect(),
        }
    }

    pub fn reversed(&self, m: &NclMachine, edge: usize) -> NclConfig {
        let mut heads = self.heads.clone();
        heads[edge] = m.edges()[edge].other(heads[edge]);
        NclConfig { heads }
    }
}

/// All valid orientations, ordered by the bitmask "edge i points at its
/// second endpoint".
pub fn ncl_valid_configs(m: &NclMachine) -> Result<Vec<NclConfig>> {
    let e = m.edges().len();
    if e > NCL_ENUMERATION_LIMIT {
        return Err(Error::Budget(Resource::States(1 << NCL_ENUMERATION_LIMIT)));
    }
    Ok((0..1u64 << e)
        .filter(|&mask| m.mask_valid(mask))
        .map(|mask| NclConfig::from_mask(m, mask))
        .collect())
}

/// BFS over valid configurations under single edge reversals.
pub fn ncl_reachable(m: &NclMachine, cs: &NclConfig, ct: &NclConfig, budget: &Budget) -> Result<bool> {
    for (name, c) in [("source", cs), ("target", ct)] {
        if !c.is_valid(m) {
            return Err(Error::Infeasible(format!("{name} configuration is not valid")));
        }
    }
    if m.edges().len() > 64 {
        return Err(Error::pre("at most 64 edges supported"));
    }
    let (s, t) = (cs.to_mask(m), ct.to_mask(m));
    let mut meter = budget.meter();
    let mut seen = HashSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            return Ok(true);
        }
        for i in 0..m.edges().len() {
            let y = x ^ (1 << i);
            if !seen.contains(&y) && m.mask_valid(y) {
                meter.charge(1)?;
                seen.insert(y);
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}
