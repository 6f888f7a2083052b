//! Line-oriented text formats. Vertex, variable and edge ids are 1-based
//! on disk and 0-based in memory. Lines whose first token is `c` are
//! comments everywhere.
//!
//! ```text
//! p reconfig <n> <m> <is|vc> <ktj|kts> <k>
//! e <u> <v>          (m times)
//! s <ids..>
//! t <ids..>
//! ```
//!
//! Certificates are `v <ids..>` lines, one per step. CNF is DIMACS.
//! NCL machines are `p ncl <n> <m>`, `e <u> <v> <1|2>` lines, then
//! optional `config s` / `config t` sections of `a <u> <v>` arcs, one per
//! edge, pointing from `u` to `v`. PMR instances are `p pmr <n> <m>`,
//! `e <u> <v>` lines and `s` / `t` lines naming edges by file position.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Kind, ReconfigInstance, ReconfigSequence, Rule, RuleKind, VertexSet};
use crate::matching::Matching;
use crate::oracles::{CnfFormula, Literal, NclConfig, NclEdge, NclMachine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The text does not follow the grammar.
    Syntax,
    /// Well-formed text describing an invalid object.
    Semantic,
}

/// Parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax,
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Semantic,
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn number<T: FromStr>(&self, what: &str) -> PResult<T> {
        self.text.parse().map_err(|_| self.syntax(format!("expected {what}, found `{}`", self.text)))
    }

    /// A 1-based id in `1..=bound`, returned 0-based.
    fn id(&self, bound: usize, what: &str) -> PResult<usize> {
        let x: usize = self.number(what)?;
        if x == 0 || x > bound {
            return Err(self.semantic(format!("{what} {x} is outside 1..={bound}")));
        }
        Ok(x - 1)
    }
}

/// Non-comment, non-blank lines split into tokens with positions.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut toks = Vec::new();
        let mut rest = raw;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            toks.push(Token {
                text: &tail[..len],
                line: i + 1,
                column: raw[..offset + start].chars().count() + 1,
            });
            offset += start + len;
            rest = &tail[len..];
        }
        if toks.first().is_some_and(|t| t.text != "c") {
            out.push(toks);
        }
    }
    out
}

fn end_of(text: &str) -> Token<'_> {
    Token {
        text: "",
        line: text.lines().count().max(1),
        column: 1,
    }
}

fn expect_arity(line: &[Token<'_>], n: usize) -> PResult<()> {
    if line.len() != n {
        let at = line.get(n).unwrap_or(&line[line.len() - 1]);
        return Err(at.syntax(format!("`{}` line takes {} fields, found {}", line[0].text, n - 1, line.len() - 1)));
    }
    Ok(())
}

fn header<'a>(all: &[Vec<Token<'a>>], text: &'a str, format: &str, fields: usize) -> PResult<Vec<Token<'a>>> {
    let first = all.first().ok_or_else(|| end_of(text).syntax(format!("missing `p {format}` header")))?;
    if first[0].text != "p" || first.get(1).map(|t| t.text) != Some(format) {
        return Err(first[0].syntax(format!("expected `p {format}` header")));
    }
    expect_arity(first, fields)?;
    Ok(first.clone())
}

fn id_list(toks: &[Token<'_>], n: usize, what: &str) -> PResult<Vec<usize>> {
    let mut ids = Vec::with_capacity(toks.len());
    for t in toks {
        let x = t.id(n, what)?;
        if ids.contains(&x) {
            return Err(t.semantic(format!("{what} {} listed twice", x + 1)));
        }
        ids.push(x);
    }
    Ok(ids)
}

fn edge_line(line: &[Token<'_>], n: usize, seen: &mut Vec<(usize, usize)>) -> PResult<(usize, usize)> {
    let u = line[1].id(n, "vertex")?;
    let v = line[2].id(n, "vertex")?;
    if u == v {
        return Err(line[2].semantic(format!("self-loop at vertex {}", u + 1)));
    }
    let key = (u.min(v), u.max(v));
    if seen.contains(&key) {
        return Err(line[0].semantic(format!("edge {} {} listed twice", u + 1, v + 1)));
    }
    seen.push(key);
    Ok((u, v))
}

fn write_ids(out: &mut String, tag: &str, set: impl IntoIterator<Item = usize>) {
    out.push_str(tag);
    for v in set {
        let _ = write!(out, " {}", v + 1);
    }
    out.push('\n');
}

pub fn parse_instance(text: &str) -> PResult<ReconfigInstance> {
    let all = lines(text);
    let h = header(&all, text, "reconfig", 7)?;
    let n: usize = h[2].number("vertex count")?;
    let m: usize = h[3].number("edge count")?;
    let kind = match h[4].text {
        "is" => Kind::IndependentSet,
        "vc" => Kind::VertexCover,
        other => return Err(h[4].syntax(format!("expected `is` or `vc`, found `{other}`"))),
    };
    let rule_kind = match h[5].text {
        "ktj" => RuleKind::TokenJumping,
        "kts" => RuleKind::TokenSliding,
        other => return Err(h[5].syntax(format!("expected `ktj` or `kts`, found `{other}`"))),
    };
    let k: usize = h[6].number("k")?;
    let rule = Rule::new(rule_kind, k).map_err(|e| h[6].semantic(e.to_string()))?;

    let mut edges = Vec::new();
    let mut seen = Vec::new();
    let mut sets: [Option<(VertexSet, Token<'_>)>; 2] = [None, None];
    for line in &all[1..] {
        match line[0].text {
            "e" => {
                expect_arity(line, 3)?;
                edges.push(edge_line(line, n, &mut seen)?);
            }
            tag @ ("s" | "t") => {
                let slot = &mut sets[(tag == "t") as usize];
                if slot.is_some() {
                    return Err(line[0].syntax(format!("second `{tag}` line")));
                }
                let ids = id_list(&line[1..], n, "vertex")?;
                *slot = Some((VertexSet::of(n, &ids), line[0]));
            }
            other => return Err(line[0].syntax(format!("unexpected line type `{other}`"))),
        }
    }
    let end = end_of(text);
    if edges.len() != m {
        return Err(end.semantic(format!("header announces {m} edges, found {}", edges.len())));
    }
    let [s, t] = sets;
    let (start, s_at) = s.ok_or_else(|| end.syntax("missing `s` line"))?;
    let (target, t_at) = t.ok_or_else(|| end.syntax("missing `t` line"))?;
    let g = Graph::new(n, edges).map_err(|e| h[0].semantic(e.to_string()))?;
    if start.len() != target.len() {
        return Err(t_at.semantic(format!("start has {} vertices, target has {}", start.len(), target.len())));
    }
    for (name, x, at) in [("start", &start, s_at), ("target", &target, t_at)] {
        if !kind.is_feasible(&g, x) {
            let what = if kind == Kind::IndependentSet { "an independent set" } else { "a vertex cover" };
            return Err(at.semantic(format!("{name} set is not {what}")));
        }
    }
    ReconfigInstance::new(g, kind, start, target, rule).map_err(|e| h[0].semantic(e.to_string()))
}

pub fn serialize_instance(inst: &ReconfigInstance) -> String {
    let g = inst.graph();
    let kind = match inst.kind() {
        Kind::IndependentSet => "is",
        Kind::VertexCover => "vc",
    };
    let rule = match inst.rule().kind() {
        RuleKind::TokenJumping => "ktj",
        RuleKind::TokenSliding => "kts",
    };
    let mut out = format!("p reconfig {} {} {kind} {rule} {}\n", g.vertex_count(), g.edge_count(), inst.rule().k());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    write_ids(&mut out, "s", inst.start());
    write_ids(&mut out, "t", inst.target());
    out
}

/// Parses `v` lines into sets over `vertex_count` vertices.
pub fn parse_certificate(text: &str, vertex_count: usize) -> PResult<ReconfigSequence> {
    let mut steps = Vec::new();
    for line in lines(text) {
        if line[0].text != "v" {
            return Err(line[0].syntax(format!("expected `v` line, found `{}`", line[0].text)));
        }
        let ids = id_list(&line[1..], vertex_count, "vertex")?;
        steps.push(VertexSet::of(vertex_count, &ids));
    }
    ReconfigSequence::new(steps).map_err(|_| end_of(text).syntax("certificate has no steps"))
}

pub fn serialize_certificate(seq: &ReconfigSequence) -> String {
    let mut out = String::new();
    for s in seq.steps() {
        write_ids(&mut out, "v", s);
    }
    out
}

/// DIMACS CNF; clauses may span lines and each ends with `0`.
pub fn parse_cnf(text: &str) -> PResult<CnfFormula> {
    let all = lines(text);
    let h = header(&all, text, "cnf", 4)?;
    let n: usize = h[2].number("variable count")?;
    let m: usize = h[3].number("clause count")?;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    let mut last = h[0];
    for t in all[1..].iter().flatten() {
        last = *t;
        let x: i64 = t.number("literal")?;
        if x == 0 {
            if cur.is_empty() {
                return Err(t.semantic("empty clause"));
            }
            clauses.push(std::mem::take(&mut cur));
            continue;
        }
        if x.unsigned_abs() as usize > n {
            return Err(t.semantic(format!("literal {x} names a variable beyond {n}")));
        }
        cur.push(Literal::from_dimacs(x).ok_or_else(|| t.syntax("bad literal"))?);
    }
    if !cur.is_empty() {
        return Err(last.syntax("last clause is missing its terminating 0"));
    }
    if clauses.len() != m {
        return Err(end_of(text).semantic(format!("header announces {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses).map_err(|e| h[0].semantic(e.to_string()))
}

pub fn serialize_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.variable_count(), phi.clause_count());
    for c in phi.clauses() {
        for l in c {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// An NCL machine with the configurations given in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NclFile {
    pub machine: NclMachine,
    pub start: Option<NclConfig>,
    pub target: Option<NclConfig>,
}

pub fn parse_ncl(text: &str) -> PResult<NclFile> {
    let all = lines(text);
    let h = header(&all, text, "ncl", 4)?;
    let n: usize = h[2].number("vertex count")?;
    let m: usize = h[3].number("edge count")?;
    let mut edges = Vec::new();
    let mut seen = Vec::new();
    let mut rest = all[1..].iter().peekable();
    while let Some(line) = rest.next_if(|l| l[0].text == "e") {
        expect_arity(line, 4)?;
        let (u, v) = edge_line(line, n, &mut seen)?;
        let weight: u8 = line[3].number("weight")?;
        if !matches!(weight, 1 | 2) {
            return Err(line[3].semantic(format!("weight must be 1 or 2, found {weight}")));
        }
        edges.push(NclEdge { u, v, weight });
    }
    if edges.len() != m {
        let at = rest.peek().map(|l| l[0]).unwrap_or_else(|| end_of(text));
        return Err(at.semantic(format!("header announces {m} edges, found {}", edges.len())));
    }
    let machine = NclMachine::new(n, edges).map_err(|e| h[0].semantic(e.to_string()))?;
    let mut configs: [Option<NclConfig>; 2] = [None, None];
    while let Some(line) = rest.next() {
        if line[0].text != "config" {
            return Err(line[0].syntax(format!("expected `config s` or `config t`, found `{}`", line[0].text)));
        }
        expect_arity(line, 2)?;
        let slot = match line[1].text {
            "s" => 0,
            "t" => 1,
            other => return Err(line[1].syntax(format!("unknown configuration `{other}`"))),
        };
        if configs[slot].is_some() {
            return Err(line[0].syntax(format!("second `config {}` section", line[1].text)));
        }
        let mut heads: Vec<Option<usize>> = vec![None; m];
        while let Some(arc) = rest.next_if(|l| l[0].text == "a") {
            expect_arity(arc, 3)?;
            let u = arc[1].id(n, "vertex")?;
            let v = arc[2].id(n, "vertex")?;
            let i = machine
                .edges()
                .iter()
                .position(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u))
                .ok_or_else(|| arc[0].semantic(format!("no edge between {} and {}", u + 1, v + 1)))?;
            if heads[i].replace(v).is_some() {
                return Err(arc[0].semantic(format!("edge {} {} oriented twice", u + 1, v + 1)));
            }
        }
        let heads: Vec<usize> = heads
            .iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| line[0].semantic(format!("edge {} has no orientation", i + 1))))
            .collect::<PResult<_>>()?;
        let cfg = NclConfig::from_heads(&machine, heads).map_err(|e| line[0].semantic(e.to_string()))?;
        if !cfg.is_valid(&machine) {
            return Err(line[0].semantic("configuration leaves some vertex with incoming weight below 2"));
        }
        configs[slot] = Some(cfg);
    }
    let [start, target] = configs;
    Ok(NclFile { machine, start, target })
}

pub fn serialize_ncl(file: &NclFile) -> String {
    let m = &file.machine;
    let mut out = format!("p ncl {} {}\n", m.vertex_count(), m.edges().len());
    for e in m.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight);
    }
    for (name, cfg) in [("s", &file.start), ("t", &file.target)] {
        if let Some(c) = cfg {
            let _ = writeln!(out, "config {name}");
            for (i, e) in m.edges().iter().enumerate() {
                let head = c.head(i);
                let _ = writeln!(out, "a {} {}", e.other(head) + 1, head + 1);
            }
        }
    }
    out
}

/// A bipartite-style matching instance; `edges` keeps the file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmrFile {
    pub graph: Graph,
    pub edges: Vec<(usize, usize)>,
    pub start: Matching,
    pub target: Matching,
}

pub fn parse_pmr(text: &str) -> PResult<PmrFile> {
    let all = lines(text);
    let h = header(&all, text, "pmr", 4)?;
    let n: usize = h[2].number("vertex count")?;
    let m: usize = h[3].number("edge count")?;
    let mut edges = Vec::new();
    let mut seen = Vec::new();
    let mut picks: [Option<(Vec<usize>, Token<'_>)>; 2] = [None, None];
    for line in &all[1..] {
        match line[0].text {
            "e" => {
                expect_arity(line, 3)?;
                edges.push(edge_line(line, n, &mut seen)?);
            }
            tag @ ("s" | "t") => {
                let slot = &mut picks[(tag == "t") as usize];
                if slot.is_some() {
                    return Err(line[0].syntax(format!("second `{tag}` line")));
                }
                *slot = Some((id_list(&line[1..], m, "edge")?, line[0]));
            }
            other => return Err(line[0].syntax(format!("unexpected line type `{other}`"))),
        }
    }
    let end = end_of(text);
    if edges.len() != m {
        return Err(end.semantic(format!("header announces {m} edges, found {}", edges.len())));
    }
    let graph = Graph::new(n, edges.iter().copied()).map_err(|e| h[0].semantic(e.to_string()))?;
    let [s, t] = picks;
    let mut out = Vec::new();
    for (name, p) in [("s", s), ("t", t)] {
        let (ids, at) = p.ok_or_else(|| end.syntax(format!("missing `{name}` line")))?;
        let mm = Matching::new(ids.iter().map(|&i| edges[i]));
        if !mm.is_perfect_for(&graph) {
            return Err(at.semantic(format!("`{name}` is not a perfect matching")));
        }
        out.push(mm);
    }
    let target = out.pop().expect("two matchings");
    let start = out.pop().expect("two matchings");
    Ok(PmrFile { graph, edges, start, target })
}

pub fn serialize_pmr(file: &PmrFile) -> String {
    let mut out = format!("p pmr {} {}\n", file.graph.vertex_count(), file.edges.len());
    for &(u, v) in &file.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for (tag, m) in [("s", &file.start), ("t", &file.target)] {
        let mut idx: Vec<usize> = m
            .pairs()
            .iter()
            .map(|&(a, b)| file.edges.iter().position(|&(u, v)| (u.min(v), u.max(v)) == (a, b)).expect("matching edge in file"))
            .collect();
        idx.sort_unstable();
        write_ids(&mut out, tag, idx);
    }
    out
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "semantic error",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "c the 4-cycle\np reconfig 4 4 is ktj 1\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ns 1 3\nt 2 4\n";

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(C4).unwrap();
        assert_eq!(inst.graph().edge_count(), 4);
        assert_eq!(inst.start().to_vec(), vec![0, 2]);
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn instance_errors() {
        let e = parse_instance(&C4.replace("t 2 4", "t 2")).unwrap_err();
        assert_eq!((e.kind, e.line), (ParseErrorKind::Semantic, 8));
        let e = parse_instance(&C4.replace("ktj", "kjt")).unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::Syntax, 2, 19));
        let e = parse_instance(&C4.replace("s 1 3", "s 1 2")).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic);
        let e = parse_instance(&C4.replace("e 4 1", "e 4 9")).unwrap_err();
        assert_eq!((e.line, e.column), (6, 5));
        assert!(parse_instance("").is_err());
    }

    #[test]
    fn certificates() {
        let seq = parse_certificate("v 1 3\nv 2 4\n", 4).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(parse_certificate(&serialize_certificate(&seq), 4).unwrap(), seq);
        assert_eq!(parse_certificate("", 4).unwrap_err().kind, ParseErrorKind::Syntax);
        assert!(parse_certificate("v 5\n", 4).is_err());
        assert_eq!(serialize_certificate(&parse_certificate("v\n", 4).unwrap()), "v\n");
    }

    #[test]
    fn cnf_round_trip() {
        let text = "p cnf 4 3\n1 -2 -4 0\n-1 -3 4 0\n2 3 -4 0\n";
        let phi = parse_cnf(text).unwrap();
        assert_eq!(phi.clause_count(), 3);
        assert_eq!(serialize_cnf(&phi), text);
        assert!(parse_cnf("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_cnf("p cnf 2 1\n1 2\n").is_err());
        assert_eq!(parse_cnf("c x\np cnf 2 1\n1\n-2 0\n").unwrap().clause_count(), 1);
    }

    #[test]
    fn ncl_round_trip() {
        let text = "p ncl 6 9\ne 1 2 2\ne 3 1 2\ne 4 1 2\ne 2 3 2\ne 2 5 2\ne 3 6 2\ne 5 4 1\ne 6 4 1\ne 6 5 1\nconfig s\na 1 2\na 3 1\na 4 1\na 2 3\na 2 5\na 3 6\na 5 4\na 6 4\na 6 5\n";
        let f = parse_ncl(text).unwrap();
        assert!(f.start.is_some() && f.target.is_none());
        assert_eq!(serialize_ncl(&f), text);
        let bad = text.replace("a 1 2\n", "a 2 1\n");
        assert_eq!(parse_ncl(&bad).unwrap_err().kind, ParseErrorKind::Semantic);
    }

    #[test]
    fn pmr_round_trip() {
        let text = "p pmr 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ns 1 3\nt 2 4\n";
        let f = parse_pmr(text).unwrap();
        assert_eq!(f.start, Matching::new([(0, 1), (2, 3)]));
        assert_eq!(serialize_pmr(&f), text);
        assert!(parse_pmr(&text.replace("s 1 3", "s 1 2")).is_err());
    }
}
