//! Conversions between token addition/removal walks and token jumping
//! sequences, plus the threshold arithmetic that links their parameters.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, ReconfigSequence, VertexSet};

/// Expands each jump into single removals and additions. Independent sets
/// shed tokens before gaining; covers gain before shedding.
pub fn ktj_seq_to_tar_seq(g: &Graph, seq: &ReconfigSequence, kind: Kind) -> Result<ReconfigSequence> {
    let mut out = vec![seq.first().clone()];
    for w in seq.steps().windows(2) {
        let gone = w[0].difference(&w[1]);
        let new = w[1].difference(&w[0]);
        let mut cur = w[0].clone();
        let removals = |cur: &mut VertexSet, out: &mut Vec<VertexSet>| {
            for v in gone.to_vec().into_iter().rev() {
                cur.remove(v);
                out.push(cur.clone());
            }
        };
        let additions = |cur: &mut VertexSet, out: &mut Vec<VertexSet>| {
            for v in &new {
                cur.insert(v);
                out.push(cur.clone());
            }
        };
        match kind {
            Kind::IndependentSet => {
                removals(&mut cur, &mut out);
                additions(&mut cur, &mut out);
            }
            Kind::VertexCover => {
                additions(&mut cur, &mut out);
                removals(&mut cur, &mut out);
            }
        }
    }
    for (i, s) in out.iter().enumerate() {
        if !kind.is_feasible(g, s) {
            return Err(Error::Internal(format!("expanded step {i} is not feasible")));
        }
    }
    ReconfigSequence::new(out)
}

/// Turns an addition/removal walk between independent sets of size `s`
/// that never drops below `s − 1` into a single token jumping sequence.
pub fn tar_highval_to_tj(g: &Graph, seq: &ReconfigSequence) -> Result<ReconfigSequence> {
    let steps = seq.steps();
    let s = seq.first().len();
    if seq.last().len() != s {
        return Err(Error::SizeMismatch(s, seq.last().len()));
    }
    for (i, x) in steps.iter().enumerate() {
        g.check_set(x)?;
        if !g.is_independent_set(x) {
            return Err(Error::Infeasible(format!("step {i} is not an independent set")));
        }
        if x.len() + 1 < s {
            return Err(Error::pre(format!("step {i} has size {}, below {}", x.len(), s.saturating_sub(1))));
        }
    }
    let mut cur = steps[0].clone();
    let mut out = vec![cur.clone()];
    // Token lifted while the walk sits at size s − 1.
    let mut pending: Option<usize> = None;
    for (i, w) in steps.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if a.symmetric_difference_len(b) != 1 {
            return Err(Error::pre(format!("steps {i} and {} differ in more than one vertex", i + 1)));
        }
        if b.len() > a.len() {
            if let Some(u) = pending.take() {
                let v = b.difference(a).first().expect("one added vertex");
                cur.remove(u);
                cur.insert(v);
            }
        } else {
            let v = a.difference(b).first().expect("one removed vertex");
            if !cur.contains(v) {
                continue;
            }
            if b.len() >= s {
                let w = b.difference(&cur).first().expect("a spare vertex exists");
                cur.remove(v);
                cur.insert(w);
            } else {
                pending = Some(v);
            }
        }
        if out.last() != Some(&cur) {
            out.push(cur.clone());
        }
    }
    if &cur != seq.last() {
        return Err(Error::Internal("jumping sequence ended away from the target".into()));
    }
    ReconfigSequence::new(out)
}

/// `k` such that a jump sequence under k-TJ exists iff the walk optimum of
/// independent sets of size `size` reaches at least `threshold`.
pub fn maxmin_threshold_to_k(size: usize, threshold: usize) -> Result<usize> {
    if threshold >= size {
        return Err(Error::pre(format!("threshold {threshold} leaves no room below size {size}")));
    }
    Ok(size - threshold)
}

/// Cover dual: walk maximum at most `threshold` above covers of size `size`.
pub fn minmax_threshold_to_k(size: usize, threshold: usize) -> Result<usize> {
    if threshold <= size {
        return Err(Error::pre(format!("threshold {threshold} leaves no room above size {size}")));
    }
    Ok(threshold - size)
}
