//! Grid drawing of compiled SAT instances and exact crossing detection.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::ReconfigInstance;

use super::{GadgetAnnotation, GadgetTag, Provenance};

/// Grid point; `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Point {
        Point { x, y }
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn scaled(self, s: i64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn offset(self, d: Point, times: i64) -> Point {
        Point::new(self.x + d.x * times, self.y + d.y * times)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    VariableCycle,
    Triangle,
    Literal,
    Gadget,
    Attachment,
}

/// An edge drawn as a polyline from `u`'s position to `v`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnEdge {
    pub u: usize,
    pub v: usize,
    pub role: EdgeRole,
    pub path: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub positions: Vec<Point>,
    pub edges: Vec<DrawnEdge>,
    pub rows: i64,
    pub columns: i64,
}

impl Drawing {
    /// Polyline endpoints sit on their vertices and all points lie on the
    /// `columns × rows` grid.
    pub fn is_consistent(&self) -> bool {
        let inside = |p: &Point| (1..=self.columns).contains(&p.x) && (1..=self.rows).contains(&p.y);
        self.positions.iter().all(inside)
            && self.edges.iter().all(|e| {
                e.path.len() >= 2
                    && e.path[0] == self.positions[e.u]
                    && *e.path.last().unwrap() == self.positions[e.v]
                    && e.path.iter().all(inside)
            })
    }
}

/// Two edges crossing at an interior point of both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Indices into `Drawing::edges`, first < second.
    pub edges: (usize, usize),
    pub endpoints: ((usize, usize), (usize, usize)),
    pub point: Point,
}

/// Lays out an instance produced by `inte3sat_to_isr` with `mu = 1` on a
/// grid of `2n + 3` rows and `6m` columns.
///
/// Clause `i` (0-based) puts its literals at columns `6i + 1, 6i + 3,
/// 6i + 5` on row 2; the literal at column `c` has its `t` at `(c, 3)` and
/// its `f` at `(c + 1, 3)`. Cycle edges of variable `p` detour through row
/// `2p + 2`, and the closing edge `fᵃ tⁱ` through row `2p + 3`.
pub fn grid_draw(inst: &ReconfigInstance, ann: &GadgetAnnotation) -> Result<Drawing> {
    let g = inst.graph();
    let n = g.vertex_count();
    let foreign = || Error::pre("instance does not come from inte3sat_to_isr with mu = 1");
    if ann.len() != n {
        return Err(foreign());
    }
    let mut clause_of: Vec<Option<(usize, usize, bool)>> = vec![None; n];
    let mut var_of: Vec<Option<(usize, usize, bool)>> = vec![None; n];
    let mut occurrences: HashMap<usize, Vec<i64>> = HashMap::new();
    let (mut vars, mut clauses) = (0, 0);
    for v in 0..n {
        match (ann.tag(v), ann.origin(v)) {
            (GadgetTag::PositiveVertex | GadgetTag::NegativeVertex, Provenance::Clause { clause, position, literal }) => {
                clause_of[v] = Some((clause, position, literal.is_positive()));
                occurrences.entry(literal.var()).or_default().push(6 * clause as i64 + 2 * position as i64 + 1);
                clauses = clauses.max(clause + 1);
            }
            (GadgetTag::TrueVertex | GadgetTag::FalseVertex, Provenance::Variable { var, occurrence }) => {
                var_of[v] = Some((var, occurrence, ann.tag(v) == GadgetTag::TrueVertex));
                vars = vars.max(var);
            }
            _ => return Err(foreign()),
        }
    }
    let column = |var: usize, occ: usize| -> Result<i64> {
        occurrences.get(&var).and_then(|c| c.get(occ - 1)).copied().ok_or_else(foreign)
    };
    let mut positions = Vec::with_capacity(n);
    for v in 0..n {
        positions.push(match (clause_of[v], var_of[v]) {
            (Some((c, p, _)), _) => Point::new(6 * c as i64 + 2 * p as i64 + 1, 2),
            (_, Some((x, j, is_true))) => Point::new(column(x, j)? + (!is_true) as i64, 3),
            _ => unreachable!(),
        });
    }

    let mut edges = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let (pu, pv) = (positions[u], positions[v]);
        let (role, path) = match (clause_of[u], clause_of[v], var_of[u], var_of[v]) {
            (Some((cu, _, _)), Some((cv, _, _)), _, _) if cu == cv => {
                let path = if (pv.x - pu.x).abs() == 4 {
                    vec![pu, Point::new(pu.x, 1), Point::new(pv.x, 1), pv]
                } else {
                    vec![pu, pv]
                };
                (EdgeRole::Triangle, path)
            }
            (Some(_), None, _, Some(_)) | (None, Some(_), Some(_), _) => (EdgeRole::Literal, vec![pu, pv]),
            (None, None, Some((xu, ju, tu)), Some((xv, jv, tv))) if xu == xv && tu != tv => {
                // Orient as (tʲ, fʲ') to classify.
                let (jt, jf, pt, pf) = if tu { (ju, jv, pu, pv) } else { (jv, ju, pv, pu) };
                let row = 2 * xu as i64 + 2;
                let mut path = if jt == jf {
                    vec![pt, pf]
                } else if jt == jf + 1 {
                    vec![pf, Point::new(pf.x, row), Point::new(pt.x, row), pt]
                } else if jt == 1 && jf == occurrences[&xu].len() {
                    vec![pf, Point::new(pf.x, row + 1), Point::new(pt.x, row + 1), pt]
                } else {
                    return Err(foreign());
                };
                if path[0] != pu {
                    path.reverse();
                }
                (EdgeRole::VariableCycle, path)
            }
            _ => return Err(foreign()),
        };
        edges.push(DrawnEdge { u, v, role, path });
    }
    let d = Drawing {
        positions,
        edges,
        rows: 2 * vars as i64 + 3,
        columns: 6 * clauses as i64,
    };
    if !d.is_consistent() {
        return Err(Error::Internal("grid drawing left the grid".into()));
    }
    Ok(d)
}

fn cross(a: Point, b: Point) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(b.sub(a), c.sub(a)).signum()
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

enum Contact {
    None,
    Proper(Point),
    Touch(Vec<Point>),
}

fn contact(a: Point, b: Point, c: Point, d: Point) -> Result<Contact> {
    if a.x.max(b.x) < c.x.min(d.x) || c.x.max(d.x) < a.x.min(b.x) || a.y.max(b.y) < c.y.min(d.y) || c.y.max(d.y) < a.y.min(b.y) {
        return Ok(Contact::None);
    }
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        // a + t (b - a) with t = cross(c - a, d - c) / cross(b - a, d - c).
        let (r, s) = (b.sub(a), d.sub(c));
        let den = cross(r, s);
        let num = cross(c.sub(a), s);
        let (nx, ny) = (a.x as i128 * den + num * r.x as i128, a.y as i128 * den + num * r.y as i128);
        if nx % den != 0 || ny % den != 0 {
            return Err(Error::pre("crossing lies off the integer grid"));
        }
        return Ok(Contact::Proper(Point::new((nx / den) as i64, (ny / den) as i64)));
    }
    let mut touches = Vec::new();
    for (s0, s1, p) in [(a, b, c), (a, b, d), (c, d, a), (c, d, b)] {
        if on_segment(s0, s1, p) && !touches.contains(&p) {
            touches.push(p);
        }
    }
    Ok(if touches.is_empty() { Contact::None } else { Contact::Touch(touches) })
}

/// Proper crossings of a drawing, in edge order.
///
/// Any other contact between two edges (overlap, or a touch away from a
/// shared endpoint vertex) makes the drawing degenerate and is an error.
pub fn crossings(d: &Drawing) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for (i, e) in d.edges.iter().enumerate() {
        for (j, f) in d.edges.iter().enumerate().skip(i + 1) {
            let shared: Vec<Point> = [e.u, e.v]
                .iter()
                .filter(|w| **w == f.u || **w == f.v)
                .map(|&w| d.positions[w])
                .collect();
            for s in e.path.windows(2) {
                for t in f.path.windows(2) {
                    match contact(s[0], s[1], t[0], t[1])? {
                        Contact::None => {}
                        Contact::Proper(point) => out.push(Crossing {
                            edges: (i, j),
                            endpoints: ((e.u, e.v), (f.u, f.v)),
                            point,
                        }),
                        Contact::Touch(points) => {
                            if let Some(p) = points.iter().find(|p| !shared.contains(p)) {
                                return Err(Error::pre(format!(
                                    "edges {}-{} and {}-{} touch at ({}, {})",
                                    e.u, e.v, f.u, f.v, p.x, p.y
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
