//! Exact domination and partial domination numbers.
//!
//! Everything reduces to maximum coverage: `c[k]` is the largest `|N[S]|`
//! over `k`-subsets, and `γ_p(G) = min { k ≥ 1 : c[k] ≥ p·n }`. Both the
//! decision form (used by [`gamma_p`]) and the optimisation form (used by
//! [`coverage_profile`]) run the same include/exclude branch and bound. A
//! node is cut when the covered count plus the `r` largest marginal gains
//! among the remaining candidates, `r` being the remaining budget, cannot
//! beat the incumbent.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::proportion::Proportion;

/// A minimum-size set together with its cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub size: usize,
    pub witness: VertexSet,
}

/// `c[k]` = maximum coverage of a `k`-subset, for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageProfile {
    values: Vec<usize>,
}

impl CoverageProfile {
    pub fn from_values(values: Vec<usize>) -> Self {
        CoverageProfile { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Order of the graph the profile was computed for.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> usize {
        self.values[k.min(self.n())]
    }

    /// `min { k ≥ 1 : den·c[k] ≥ num·n }`.
    pub fn gamma_p(&self, p: Proportion) -> usize {
        gamma_p_from_profile(self, p, self.n())
    }

    /// Distinct proportions `c[k]/n`, `k ≥ 1`, in increasing order. `γ_p` is
    /// constant on each interval between consecutive breakpoints, so these
    /// are the only values of `p` worth probing.
    pub fn breakpoints(&self) -> Vec<Proportion> {
        let n = self.n() as u64;
        let mut out: Vec<Proportion> = self.values[1..]
            .iter()
            .map(|&c| Proportion::new(c as u64, n).expect("1 <= c[k] <= n"))
            .collect();
        out.dedup();
        out
    }

    /// Returns a description of the first violated structural property.
    pub fn check_invariants(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        let c = &self.values;
        if c.len() != n + 1 {
            return Err(format!("profile has {} entries for n = {n}", c.len()));
        }
        if c[0] != 0 {
            return Err(format!("c[0] = {}", c[0]));
        }
        let (delta, _) = g.max_degree();
        if c[1] != delta + 1 {
            return Err(format!("c[1] = {} but Δ+1 = {}", c[1], delta + 1));
        }
        if c[n] != n {
            return Err(format!("c[n] = {} != n", c[n]));
        }
        for k in 0..n {
            if c[k] < n && c[k + 1] < c[k] + 1 {
                return Err(format!("c[{}] = {} does not exceed c[{k}] = {}", k + 1, c[k + 1], c[k]));
            }
            if c[k] == n && c[k + 1] != n {
                return Err(format!("c[{}] = {} after reaching n", k + 1, c[k + 1]));
            }
            if c[k] > k * (delta + 1) {
                return Err(format!("c[{k}] = {} exceeds k(Δ+1)", c[k]));
            }
        }
        Ok(())
    }
}

pub fn gamma_p_from_profile(profile: &CoverageProfile, p: Proportion, n: usize) -> usize {
    (1..profile.values.len())
        .find(|&k| p.is_met_by(profile.values[k], n))
        .unwrap_or(n)
}

struct Search {
    order: Vec<usize>,
    closed: Vec<VertexSet>,
    best: usize,
    best_set: VertexSet,
    stop_at: usize,
    gains: Vec<usize>,
}

impl Search {
    fn new(g: &Graph, order: Vec<usize>, incumbent: usize, incumbent_set: VertexSet, stop_at: usize) -> Self {
        let closed = order.iter().map(|&v| g.closed(v)).collect();
        Search { order, closed, best: incumbent, best_set: incumbent_set, stop_at, gains: Vec::with_capacity(64) }
    }

    fn run(&mut self, picks: usize) {
        self.dfs(0, picks, VertexSet::EMPTY, VertexSet::EMPTY);
    }

    fn upper_bound(&mut self, pos: usize, picks_left: usize, covered: VertexSet) -> usize {
        self.gains.clear();
        self.gains.extend(
            self.closed[pos..]
                .iter()
                .map(|s| s.difference(covered).len())
                .filter(|&g| g > 0),
        );
        if self.gains.len() > picks_left {
            self.gains.select_nth_unstable_by(picks_left, |a, b| b.cmp(a));
            self.gains.truncate(picks_left);
        }
        covered.len() + self.gains.iter().sum::<usize>()
    }

    fn dfs(&mut self, pos: usize, picks_left: usize, covered: VertexSet, chosen: VertexSet) {
        let cov = covered.len();
        if cov > self.best {
            self.best = cov;
            self.best_set = chosen;
        }
        if self.best >= self.stop_at || picks_left == 0 || pos == self.order.len() {
            return;
        }
        if self.upper_bound(pos, picks_left, covered) <= self.best {
            return;
        }
        let gain = self.closed[pos].difference(covered);
        if !gain.is_empty() {
            let mut with = chosen;
            with.insert(self.order[pos]);
            self.dfs(pos + 1, picks_left - 1, covered.union(self.closed[pos]), with);
            if self.best >= self.stop_at {
                return;
            }
        }
        self.dfs(pos + 1, picks_left, covered, chosen);
    }
}

/// Greedy max-coverage picks until `target` vertices are covered or `limit`
/// picks are used. Ties go to the smaller index.
pub fn greedy(g: &Graph, target: usize, limit: usize) -> VertexSet {
    let mut covered = VertexSet::EMPTY;
    let mut chosen = VertexSet::EMPTY;
    while covered.len() < target && chosen.len() < limit {
        let best = (0..g.n())
            .filter(|&v| !chosen.contains(v))
            .max_by_key(|&v| (g.closed(v).difference(covered).len(), std::cmp::Reverse(v)));
        match best {
            Some(v) => {
                chosen.insert(v);
                covered = covered.union(g.closed(v));
            }
            None => break,
        }
    }
    chosen
}

/// Largest `|N[S]|` over sets with at most `k` members, with one maximiser.
pub fn max_coverage(g: &Graph, k: usize) -> (usize, VertexSet) {
    let n = g.n();
    let k = k.min(n);
    let seed = greedy(g, n, k);
    let seed_cov = g.coverage(seed).expect("greedy stays in range");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = Search::new(g, order, seed_cov, seed, n);
    search.run(k);
    (search.best, search.best_set)
}

/// `γ_p(G)` and a witness: the lexicographically smallest minimum
/// p-dominating set (vertices listed in increasing order).
pub fn gamma_p(g: &Graph, p: Proportion) -> Solution {
    let n = g.n();
    let target = p.required_coverage(n);
    let (delta, _) = g.max_degree();
    let lower = target.div_ceil(delta + 1).max(1);
    let upper = greedy(g, target, n).len();
    for k in lower..=upper {
        let mut search = Search::new(g, (0..n).collect(), target - 1, VertexSet::EMPTY, target);
        search.run(k);
        if search.best >= target {
            return Solution { size: k, witness: search.best_set };
        }
    }
    unreachable!("greedy found a p-dominating set of size {upper}")
}

/// `γ(G)`, i.e. `γ_1(G)`.
pub fn gamma(g: &Graph) -> Solution {
    gamma_p(g, Proportion::ONE)
}

pub fn coverage_profile(g: &Graph) -> CoverageProfile {
    let n = g.n();
    let mut values = Vec::with_capacity(n + 1);
    values.push(0);
    for k in 1..=n {
        let prev = values[k - 1];
        values.push(if prev == n { n } else { max_coverage(g, k).0 });
    }
    CoverageProfile { values }
}
