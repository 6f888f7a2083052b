use std::fmt;

use crate::error::{Error, Resource, Result};

/// Largest variable count `sat_decide` will enumerate.
pub const SAT_ENUMERATION_LIMIT: usize = 24;

/// Signed variable index, DIMACS style: `3` is x3, `-3` its negation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(i32);

impl Literal {
    pub fn pos(var: usize) -> Literal {
        assert!(var >= 1);
        Literal(var as i32)
    }

    pub fn neg(var: usize) -> Literal {
        assert!(var >= 1);
        Literal(-(var as i32))
    }

    pub fn from_dimacs(x: i64) -> Option<Literal> {
        (x != 0 && x.unsigned_abs() <= i32::MAX as u64).then(|| Literal(x as i32))
    }

    pub fn to_dimacs(self) -> i64 {
        self.0 as i64
    }

    /// 1-based variable index.
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negated(self) -> Literal {
        Literal(-self.0)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "¬x{}", self.var())
        }
    }
}

/// CNF formula over variables `1..=variable_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<CnfFormula> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::pre(format!("clause {} is empty", i + 1)));
            }
            if let Some(l) = c.iter().find(|l| l.var() > variable_count) {
                return Err(Error::pre(format!(
                    "clause {} mentions variable {} beyond {variable_count}",
                    i + 1,
                    l.var()
                )));
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    /// Shorthand from DIMACS integers; panics on malformed input.
    pub fn from_ints(variable_count: usize, clauses: &[&[i64]]) -> CnfFormula {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&x| Literal::from_dimacs(x).expect("nonzero literal")).collect())
            .collect();
        CnfFormula::new(variable_count, clauses).expect("well-formed formula")
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_e3(&self) -> bool {
        self.clauses.iter().all(|c| c.len() == 3)
    }

    /// Every clause has a positive and a negative literal, so both the
    /// all-true and the all-false assignment satisfy the formula.
    pub fn is_sandwiched(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.is_positive()) && c.iter().any(|l| !l.is_positive()))
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| a.value(l.var()) == l.is_positive()))
    }

    /// Occurrence count per variable, index 0 unused.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.variable_count + 1];
        for l in self.clauses.iter().flatten() {
            occ[l.var()] += 1;
        }
        occ
    }
}

/// Truth values for variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn from_mask(n: usize, mask: u64) -> Assignment {
        Assignment {
            values: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn is_mixed(&self) -> bool {
        self.values.iter().any(|&b| b) && self.values.iter().any(|&b| !b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatMode {
    Any,
    /// Neither all-true nor all-false.
    Mixed,
}

/// Exhaustive search; variable 1 is the fastest-varying bit, so the first
/// witness is deterministic.
pub fn sat_decide(phi: &CnfFormula, mode: SatMode) -> Result<Option<Assignment>> {
    let n = phi.variable_count();
    if n > SAT_ENUMERATION_LIMIT {
        return Err(Error::Budget(Resource::States(1 << SAT_ENUMERATION_LIMIT)));
    }
    let masks: Vec<(u64, u64)> = phi
        .clauses()
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, q), l| {
                let bit = 1u64 << (l.var() - 1);
                if l.is_positive() {
                    (p | bit, q)
                } else {
                    (p, q | bit)
                }
            })
        })
        .collect();
    let all = (1u64 << n) - 1;
    for a in 0..=all {
        if mode == SatMode::Mixed && (a == 0 || a == all) {
            continue;
        }
        if masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0) {
            return Ok(Some(Assignment::from_mask(n, a)));
        }
    }
    Ok(None)
}
