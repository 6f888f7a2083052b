use crate::error::{Error, Result};
use crate::oracles::{Assignment, CnfFormula, Literal};

/// Splits `clause` once: the first two positive literals `x ∨ y` become a
/// fresh `z` with `(x ∨ y ∨ ¬z)(¬x ∨ ¬x ∨ z)(¬y ∨ ¬y ∨ z)`; failing a
/// positive pair, the first two negative ones `¬x ∨ ¬y` become `¬z` with
/// `(¬x ∨ ¬y ∨ z)(x ∨ x ∨ ¬z)(y ∨ y ∨ ¬z)`. `z` takes the place of `x`.
fn split_clause(clause: &[Literal], z: usize) -> Option<[Vec<Literal>; 4]> {
    let pair = |positive: bool| {
        let idx: Vec<usize> = (0..clause.len()).filter(|&i| clause[i].is_positive() == positive).take(2).collect();
        (idx.len() == 2).then(|| (idx[0], idx[1]))
    };
    let (positive, (i, j)) = pair(true).map(|p| (true, p)).or_else(|| pair(false).map(|p| (false, p)))?;
    let (x, y) = (clause[i], clause[j]);
    let zl = if positive { Literal::pos(z) } else { Literal::neg(z) };
    let mut reduced = Vec::with_capacity(clause.len() - 1);
    for (k, &l) in clause.iter().enumerate() {
        if k == i {
            reduced.push(zl);
        } else if k != j {
            reduced.push(l);
        }
    }
    let zn = zl.negated();
    Some([
        reduced,
        vec![x, y, zn],
        vec![x.negated(), x.negated(), zl],
        vec![y.negated(), y.negated(), zl],
    ])
}

/// Applies one replacement to the leftmost clause of four or more literals.
pub fn replace_long_clause(psi: &CnfFormula) -> Result<CnfFormula> {
    if !psi.is_sandwiched() {
        return Err(Error::pre("formula is not sandwiched"));
    }
    let pos = psi
        .clauses()
        .iter()
        .position(|c| c.len() >= 4)
        .ok_or_else(|| Error::pre("no clause with four or more literals"))?;
    let z = psi.variable_count() + 1;
    let pieces = split_clause(&psi.clauses()[pos], z).ok_or_else(|| Error::Internal("long clause has no same-sign pair".into()))?;
    let mut clauses = psi.clauses()[..pos].to_vec();
    clauses.extend(pieces);
    clauses.extend_from_slice(&psi.clauses()[pos + 1..]);
    CnfFormula::new(z, clauses)
}

/// The padded sandwiched formula `∧_{h,i,j} (C_h ∨ x_i ∨ ¬x_j)`, each
/// clause split down to three literals, with no check that `phi` excludes
/// the all-true and all-false assignments.
pub fn e3sat_to_inte3sat_unchecked(phi: &CnfFormula) -> Result<CnfFormula> {
    if !phi.is_e3() {
        return Err(Error::pre("formula is not E3-CNF"));
    }
    let n = phi.variable_count();
    let mut next = n;
    let mut out = Vec::with_capacity(7 * phi.clause_count() * n * n);
    for c in phi.clauses() {
        for i in 1..=n {
            for j in 1..=n {
                let mut pending = c.clone();
                pending.extend([Literal::pos(i), Literal::neg(j)]);
                let mut tail = Vec::new();
                while pending.len() > 3 {
                    next += 1;
                    let [reduced, a, b, d] = split_clause(&pending, next).expect("mixed clause");
                    tail.splice(0..0, [a, b, d]);
                    pending = reduced;
                }
                out.push(pending);
                out.extend(tail);
            }
        }
    }
    CnfFormula::new(next, out)
}

/// E3-SAT to sandwiched E3-SAT: `phi` is satisfiable iff the output has a
/// mixed satisfying assignment. Requires that neither constant assignment
/// satisfies `phi`.
pub fn e3sat_to_inte3sat(phi: &CnfFormula) -> Result<CnfFormula> {
    let n = phi.variable_count();
    for value in [true, false] {
        if phi.evaluate(&Assignment::new(vec![value; n])) {
            return Err(Error::pre(format!("the all-{} assignment satisfies the formula", if value { "true" } else { "false" })));
        }
    }
    e3sat_to_inte3sat_unchecked(phi)
}
