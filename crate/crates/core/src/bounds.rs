//! Shortest-sequence length bound from intersecting families, greedy
//! coloring, and the constructive length-3 shortcut.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::independent_set_within;
use crate::graph::{Graph, ReconfigSequence, VertexSet};

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Upper bound on the length of a shortest k-TJ sequence with
/// `k = set_size - mu`.
///
/// A shortest sequence `I_0, ..., I_ℓ` has its even-indexed sets pairwise
/// meeting in fewer than `μ` vertices, so `⌊ℓ/2⌋ + 1` is at most the size of
/// such a family, which is at most `C(n, μ) / C(set_size, μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBound {
    pub n: usize,
    pub set_size: usize,
    pub mu: usize,
    pub binomial_bound: Ratio<BigUint>,
    pub max_length: BigUint,
    /// `(n / (set_size - mu))^mu`, the weaker closed form.
    pub loose_bound: Ratio<BigUint>,
}

impl LengthBound {
    /// Whether a sequence of this length is consistent with the bound.
    pub fn admits(&self, length: usize) -> bool {
        Ratio::from_integer(BigUint::from(length / 2 + 1)) <= self.binomial_bound
    }
}

pub fn shortest_length_bound(n: usize, set_size: usize, mu: usize) -> Result<LengthBound> {
    if mu >= set_size {
        return Err(Error::pre(format!("mu = {mu} must be below the set size {set_size}")));
    }
    if set_size > n {
        return Err(Error::pre(format!("set size {set_size} exceeds n = {n}")));
    }
    let binomial_bound = Ratio::new(binomial(n, mu), binomial(set_size, mu));
    let floor = binomial_bound.to_integer();
    let max_length = (floor - 1u32) * 2u32 + 1u32;
    let loose_bound = Ratio::new(BigUint::from(n), BigUint::from(set_size - mu)).pow(mu as i32);
    Ok(LengthBound {
        n,
        set_size,
        mu,
        binomial_bound,
        max_length,
        loose_bound,
    })
}

/// Decimal rendering of a rational, for display only.
pub fn ratio_to_f64(r: &Ratio<BigUint>) -> f64 {
    let (q, rem) = r.numer().div_rem(r.denom());
    q.to_f64().unwrap_or(f64::INFINITY) + rem.to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
}

/// Ascending ids, smallest free color; at most `Δ + 1` colors.
pub fn greedy_coloring(g: &Graph) -> Vec<usize> {
    greedy_coloring_within(g, &VertexSet::full(g.vertex_count()))
}

/// Greedy coloring of the subgraph induced by `within`; other vertices get
/// `usize::MAX`.
fn greedy_coloring_within(g: &Graph, within: &VertexSet) -> Vec<usize> {
    let mut color = vec![usize::MAX; g.vertex_count()];
    for v in within {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).filter(|&c| c != usize::MAX).collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("unbounded range");
    }
    color
}

/// Tries `⟨I, A ∪ I*, B ∪ I*, J⟩` with `A`, `B` the smallest `μ`-subsets of
/// `I`, `J` and `I*` an independent set of size `|I| - μ` avoiding `N[A ∪ B]`.
///
/// `None` means only that this shortcut does not apply.
pub fn find_simple_sequence(g: &Graph, i: &VertexSet, j: &VertexSet, mu: usize, budget: &Budget) -> Result<Option<ReconfigSequence>> {
    g.check_set(i)?;
    g.check_set(j)?;
    if i.len() != j.len() {
        return Err(Error::SizeMismatch(i.len(), j.len()));
    }
    if !g.is_independent_set(i) || !g.is_independent_set(j) {
        return Err(Error::pre("endpoints must be independent sets"));
    }
    if mu == 0 || 2 * mu > i.len() {
        return Err(Error::pre(format!("need 1 <= mu and 2 mu <= |I| (mu = {mu}, |I| = {})", i.len())));
    }
    if i == j {
        return Ok(Some(ReconfigSequence::new(vec![i.clone()])?));
    }
    let k = i.len() - mu;
    let first = |s: &VertexSet| VertexSet::of(g.vertex_count(), &s.iter().take(mu).collect::<Vec<_>>());
    let (a, b) = (first(i), first(j));
    let residue = g.closed_neighborhood(&a.union(&b)).complement();

    let color = greedy_coloring_within(g, &residue);
    let classes = residue.iter().map(|v| color[v]).max().map_or(0, |c| c + 1);
    let mut sizes = vec![0usize; classes];
    for v in &residue {
        sizes[color[v]] += 1;
    }
    let best = (0..classes).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)));
    let core = match best {
        Some(c) if sizes[c] >= k => {
            let picked: Vec<usize> = residue.iter().filter(|&v| color[v] == c).take(k).collect();
            Some(VertexSet::of(g.vertex_count(), &picked))
        }
        _ => independent_set_within(g, &residue, k, budget)?,
    };
    Ok(match core {
        Some(core) => Some(ReconfigSequence::new(vec![i.clone(), a.union(&core), b.union(&core), j.clone()])?),
        None => None,
    })
}
