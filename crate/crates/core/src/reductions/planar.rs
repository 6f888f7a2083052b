//! Crossover gadget insertion, turning a drawn instance with good
//! crossings into a planar one with a matching plane drawing.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigInstance, Rule};

use super::drawing::{crossings, DrawnEdge, Drawing, EdgeRole, Point};

/// Gadget vertex roles; the discriminant is the offset inside a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossoverRole {
    U1,
    U2,
    V1,
    V2,
    W1,
    W2,
    W3,
    W4,
}

impl CrossoverRole {
    pub const ALL: [CrossoverRole; 8] = [
        CrossoverRole::U1,
        CrossoverRole::U2,
        CrossoverRole::V1,
        CrossoverRole::V2,
        CrossoverRole::W1,
        CrossoverRole::W2,
        CrossoverRole::W3,
        CrossoverRole::W4,
    ];
}

use CrossoverRole::*;

/// Gadget edges by role; `U1`..`V2` are the primed attachment vertices.
pub const CROSSOVER_EDGES: [(CrossoverRole, CrossoverRole); 12] = [
    (U1, W1),
    (U1, W4),
    (U2, W2),
    (U2, W3),
    (V1, W1),
    (V1, W2),
    (V2, W3),
    (V2, W4),
    (W1, W2),
    (W2, W3),
    (W3, W4),
    (W4, W1),
];

/// Tokens added to the start side and to the target side.
pub const START_TOKENS: [CrossoverRole; 3] = [W1, U2, V2];
pub const TARGET_TOKENS: [CrossoverRole; 3] = [W3, U1, V1];

/// The 8-vertex gadget on its own, vertex `i` playing role `ALL[i]`.
pub fn crossover_gadget() -> Graph {
    Graph::new(8, CROSSOVER_EDGES.iter().map(|&(a, b)| (a as usize, b as usize))).expect("gadget is simple")
}

/// Offset of a role from the crossing point, in multiples of the two
/// edge directions.
fn placement(role: CrossoverRole) -> (i64, i64) {
    match role {
        U1 => (-2, 0),
        U2 => (2, 0),
        V1 => (0, -2),
        V2 => (0, 2),
        W1 => (-1, -1),
        W2 => (1, -1),
        W3 => (1, 1),
        W4 => (-1, 1),
    }
}

/// Result of planarization: the new instance and a crossing-free drawing.
#[derive(Debug, Clone)]
pub struct Planarized {
    pub instance: ReconfigInstance,
    pub drawing: Drawing,
    pub crossing_count: usize,
}

/// Scale applied to the input grid so gadgets fit between grid lines.
pub const SCALE: i64 = 6;

fn unit(a: Point, b: Point) -> Point {
    Point::new((b.x - a.x).signum(), (b.y - a.y).signum())
}

/// Replaces every crossing by a crossover gadget.
///
/// Each crossed edge must be a variable-gadget edge with one endpoint in
/// the start set and one in the target set; since start and target are
/// maximum, every maximum independent set then takes exactly one endpoint.
///
/// Verdicts are not always kept. The gadget alone has independence number
/// four (`U1 U2 V1 V2`), so where two edges cross twice one gadget can hold
/// four tokens while the other holds two, and with `k = |I*| - mu` a no
/// instance may become a yes instance.
pub fn planarize(inst: &ReconfigInstance, drawing: &Drawing) -> Result<Planarized> {
    let xs = crossings(drawing)?;
    if xs.is_empty() {
        return Ok(Planarized {
            instance: inst.clone(),
            drawing: drawing.clone(),
            crossing_count: 0,
        });
    }
    let (s, t) = (inst.start(), inst.target());
    let n = inst.graph().vertex_count();
    let good = |e: &DrawnEdge| {
        e.role == EdgeRole::VariableCycle && s.contains(e.u) != s.contains(e.v) && t.contains(e.u) != t.contains(e.v) && s.contains(e.u) != t.contains(e.u)
    };
    for c in &xs {
        for e in [&drawing.edges[c.edges.0], &drawing.edges[c.edges.1]] {
            if !good(e) {
                return Err(Error::pre(format!("crossing at ({}, {}) is not good: edge {}-{}", c.point.x, c.point.y, e.u, e.v)));
            }
        }
    }

    // Per crossed edge, oriented start side first: the scaled polyline and
    // its crossings as (segment, distance, crossing, is_u_side).
    let mut cut: Vec<Vec<(usize, i64, usize, bool)>> = vec![Vec::new(); drawing.edges.len()];
    let oriented = |e: &DrawnEdge| -> Vec<Point> {
        let mut p: Vec<Point> = e.path.iter().map(|p| p.scaled(SCALE)).collect();
        if !s.contains(e.u) {
            p.reverse();
        }
        p
    };
    let mut dirs = vec![(Point::new(0, 0), Point::new(0, 0)); xs.len()];
    for (ci, c) in xs.iter().enumerate() {
        let p = c.point.scaled(SCALE);
        for (side, ei) in [(true, c.edges.0), (false, c.edges.1)] {
            let path = oriented(&drawing.edges[ei]);
            let seg = path
                .windows(2)
                .position(|w| unit(w[0], p) == unit(w[0], w[1]) && unit(p, w[1]) == unit(w[0], w[1]) && p != w[0] && p != w[1])
                .ok_or_else(|| Error::Internal("crossing not on its edge".into()))?;
            let d = unit(path[seg], path[seg + 1]);
            if d.x != 0 && d.y != 0 {
                return Err(Error::pre("crossing on a diagonal segment"));
            }
            let dist = (p.x - path[seg].x).abs() + (p.y - path[seg].y).abs();
            cut[ei].push((seg, dist, ci, side));
            if side {
                dirs[ci].0 = d;
            } else {
                dirs[ci].1 = d;
            }
        }
    }

    let gadget_id = |ci: usize, role: CrossoverRole| n + 8 * ci + role as usize;
    let mut positions: Vec<Point> = drawing.positions.iter().map(|p| p.scaled(SCALE)).collect();
    for (ci, c) in xs.iter().enumerate() {
        let p = c.point.scaled(SCALE);
        let (du, dv) = dirs[ci];
        for role in CrossoverRole::ALL {
            let (a, b) = placement(role);
            positions.push(p.offset(du, a).offset(dv, b));
        }
    }

    let mut edges = Vec::new();
    for (ei, e) in drawing.edges.iter().enumerate() {
        if cut[ei].is_empty() {
            edges.push(DrawnEdge {
                u: e.u,
                v: e.v,
                role: e.role,
                path: e.path.iter().map(|p| p.scaled(SCALE)).collect(),
            });
            continue;
        }
        let path = oriented(e);
        let (from, to) = if s.contains(e.u) { (e.u, e.v) } else { (e.v, e.u) };
        cut[ei].sort_unstable();
        let mut prev = (from, 0usize);
        for &(seg, _, ci, side) in &cut[ei] {
            let (enter, leave) = if side { (U1, U2) } else { (V1, V2) };
            let a = gadget_id(ci, enter);
            let mut pts = vec![positions[prev.0]];
            pts.extend_from_slice(&path[prev.1 + 1..=seg]);
            pts.push(positions[a]);
            edges.push(DrawnEdge { u: prev.0, v: a, role: EdgeRole::Attachment, path: pts });
            prev = (gadget_id(ci, leave), seg);
        }
        let mut pts = vec![positions[prev.0]];
        pts.extend_from_slice(&path[prev.1 + 1..]);
        edges.push(DrawnEdge { u: prev.0, v: to, role: EdgeRole::Attachment, path: pts });
    }
    for ci in 0..xs.len() {
        for &(a, b) in &CROSSOVER_EDGES {
            let (u, v) = (gadget_id(ci, a), gadget_id(ci, b));
            edges.push(DrawnEdge { u, v, role: EdgeRole::Gadget, path: vec![positions[u], positions[v]] });
        }
    }
    for e in &mut edges {
        // Drop repeated points left by cutting at segment ends.
        e.path.dedup();
    }

    let total = n + 8 * xs.len();
    let g = Graph::new(total, edges.iter().map(|e| (e.u, e.v)))?;
    let mut start = s.extended(total);
    let mut target = t.extended(total);
    for ci in 0..xs.len() {
        for r in START_TOKENS {
            start.insert(gadget_id(ci, r));
        }
        for r in TARGET_TOKENS {
            target.insert(gadget_id(ci, r));
        }
    }
    let mu = s.len() - inst.rule().k();
    let k = start.len() - mu;
    let rule = Rule::new(inst.rule().kind(), k)?;
    let instance = ReconfigInstance::new(g, Kind::IndependentSet, start, target, rule)?;
    let drawing = Drawing {
        positions,
        edges,
        rows: drawing.rows * SCALE,
        columns: drawing.columns * SCALE,
    };
    Ok(Planarized {
        instance,
        drawing,
        crossing_count: xs.len(),
    })
}
