//! Formula and NCL compilers against independent checks.

mod common;

use rand::seq::SliceRandom;
use rand::Rng;

use rekonfig::oracles::{ncl_reachable, ncl_valid_configs, sat_decide, Assignment, CnfFormula, Literal, NclMachine, SatMode};
use rekonfig::reductions::{e3sat_to_inte3sat, e3sat_to_inte3sat_unchecked, replace_long_clause};
use rekonfig::Budget;

use common::*;

/// Pads with `x_i ∨ ¬x_j` and splits by repeated single replacements.
fn padded_then_split(phi: &CnfFormula) -> CnfFormula {
    let n = phi.variable_count();
    let mut clauses = Vec::new();
    for c in phi.clauses() {
        for i in 1..=n {
            for j in 1..=n {
                let mut d = c.clone();
                d.extend([Literal::pos(i), Literal::neg(j)]);
                clauses.push(d);
            }
        }
    }
    let mut psi = CnfFormula::new(n, clauses).unwrap();
    while psi.clauses().iter().any(|c| c.len() > 3) {
        psi = replace_long_clause(&psi).unwrap();
    }
    psi
}

#[test]
fn sandwiching_is_iterated_replacement() {
    let mut r = rng(21);
    for _ in 0..100 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=4);
        let phi = random_e3(&mut r, n, m);
        let out = e3sat_to_inte3sat_unchecked(&phi).unwrap();
        assert_eq!(out, padded_then_split(&phi));
        assert!(out.is_e3() && out.is_sandwiched());
    }
}

#[test]
fn single_replacement_keeps_satisfiability() {
    let mut r = rng(22);
    for _ in 0..300 {
        let n = r.gen_range(2..=5);
        let len = r.gen_range(4..=6);
        // One long clause with a same-sign pair, plus a few short ones.
        let mut clauses = vec![(0..len).map(|i| if i < 2 { Literal::pos(r.gen_range(1..=n)) } else { Literal::neg(r.gen_range(1..=n)) }).collect::<Vec<_>>()];
        for _ in 0..r.gen_range(0..4) {
            clauses.push(vec![Literal::pos(r.gen_range(1..=n)), Literal::neg(r.gen_range(1..=n)), Literal::neg(r.gen_range(1..=n))]);
        }
        clauses.shuffle(&mut r);
        let psi = CnfFormula::new(n, clauses).unwrap();
        let out = replace_long_clause(&psi).unwrap();
        assert_eq!(out.variable_count(), n + 1);
        assert_eq!(out.clause_count(), psi.clause_count() + 3);
        for mode in [SatMode::Any, SatMode::Mixed] {
            assert_eq!(sat_decide(&psi, mode).unwrap().is_some(), sat_decide(&out, mode).unwrap().is_some());
        }
    }
}

#[test]
fn sandwiching_preserves_satisfiability() {
    // Two variables, two clauses: 18 output variables, small enough to
    // enumerate in full.
    let lits = [Literal::pos(1), Literal::neg(1), Literal::pos(2), Literal::neg(2)];
    let mut formulas = Vec::new();
    for a in 0..64usize {
        for b in a..64 {
            let clause = |x: usize| vec![lits[x % 4], lits[x / 4 % 4], lits[x / 16]];
            let phi = CnfFormula::new(2, vec![clause(a), clause(b)]).unwrap();
            if [true, false].iter().all(|&v| !phi.evaluate(&Assignment::new(vec![v; 2]))) {
                formulas.push(phi);
            }
        }
    }
    let (mut sat, mut unsat) = (0, 0);
    for phi in &formulas {
        let out = e3sat_to_inte3sat(phi).unwrap();
        let want = sat_decide(phi, SatMode::Any).unwrap().is_some();
        assert_eq!(sat_decide(&out, SatMode::Mixed).unwrap().is_some(), want);
        if want {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    assert!(sat > 0 && unsat > 0);
}

/// Random machine on at most six vertices whose vertices are all AND or OR.
fn random_machine(r: &mut rand_chacha::ChaCha8Rng) -> Option<NclMachine> {
    let n = 2 * r.gen_range(1..=3);
    // Random 3-regular pairing; loops and repeats fail construction.
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    stubs.shuffle(r);
    let mut edges = Vec::new();
    for pair in stubs.chunks(2) {
        edges.push((pair[0], pair[1], 2u8));
    }
    // Make some vertices AND by lowering two of their edge weights.
    for v in 0..n {
        if r.gen_bool(0.4) {
            let mine: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].0 == v || edges[i].1 == v).collect();
            if let [_, b, c] = mine[..] {
                edges[b].2 = 1;
                edges[c].2 = 1;
            }
        }
    }
    NclMachine::from_triples(n, &edges).ok()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let root = find(parent, parent[x]);
        parent[x] = root;
    }
    parent[x]
}

#[test]
fn ncl_reachability_matches_union_find() {
    let mut r = rng(24);
    let mut machines = 0;
    while machines < 60 {
        let Some(m) = random_machine(&mut r) else { continue };
        let configs = ncl_valid_configs(&m).unwrap();
        if configs.is_empty() {
            continue;
        }
        machines += 1;
        let mut parent: Vec<usize> = (0..configs.len()).collect();
        for (i, c) in configs.iter().enumerate() {
            for e in 0..m.edges().len() {
                let d = c.reversed(&m, e);
                if let Some(j) = configs.iter().position(|x| *x == d) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        for _ in 0..10 {
            let i = r.gen_range(0..configs.len());
            let j = r.gen_range(0..configs.len());
            let same = find(&mut parent, i) == find(&mut parent, j);
            assert_eq!(ncl_reachable(&m, &configs[i], &configs[j], &Budget::default()).unwrap(), same);
        }
    }
}
