//! Sweeps over permutations: `γ_p(πG)` for every (or a sample of) `π`, and
//! classification into universal `γ_p`-fixers and doublers.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prism::{Permutation, PrismGraph};
use crate::proportion::Proportion;
use crate::solver;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 8;

/// All `n!` permutations in lexicographic order of their image vectors,
/// starting from the identity.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_image(cur).expect("lexicographic successor stays a bijection"))
    }
}

/// Advances to the lexicographic successor; false when `a` is the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("a[i+1] > a[i]");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

pub fn enumerate_permutations(n: usize, cap: usize) -> Result<LexPermutations> {
    if n > cap {
        return Err(Error::ExhaustiveCap { n, cap });
    }
    Ok(LexPermutations { next: Some((0..n).collect()) })
}

/// `count` permutations: the identity, then uniform Fisher–Yates shuffles
/// drawn from ChaCha8 seeded with `seed`.
pub fn sample_permutations(n: usize, count: usize, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(Permutation::identity(n));
    }
    for _ in 1..count {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(&mut rng);
        out.push(Permutation::from_image(image).expect("shuffle is a bijection"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl Mode {
    pub fn is_exhaustive(self) -> bool {
        matches!(self, Mode::Exhaustive)
    }

    /// Exhaustive up to `n = 7`, otherwise 1000 seeded samples.
    pub fn default_for(n: usize, seed: u64) -> Mode {
        if n <= 7 {
            Mode::Exhaustive
        } else {
            Mode::Sampled { count: 1000, seed }
        }
    }

    pub fn permutations(self, n: usize, cap: usize) -> Result<Vec<Permutation>> {
        match self {
            Mode::Exhaustive => Ok(enumerate_permutations(n, cap)?.collect()),
            Mode::Sampled { count, seed } => Ok(sample_permutations(n, count, seed)),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled { count, seed } => write!(f, "sampled({count}, seed {seed})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Fixer,
    Doubler,
    FixerAndDoubler,
    Neither,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub n: usize,
    pub p: Proportion,
    pub mode: Mode,
    /// `γ_p(G)` of the base graph.
    pub base_value: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub min: usize,
    pub max: usize,
    pub witness_min: Permutation,
    pub witness_max: Permutation,
}

impl SweepResult {
    pub fn total(&self) -> usize {
        self.histogram.values().sum()
    }

    pub fn classify(&self) -> Classification {
        let fixer = self.min == self.base_value && self.max == self.base_value;
        let doubler = self.min == 2 * self.base_value && self.max == 2 * self.base_value;
        match (fixer, doubler) {
            (true, true) => Classification::FixerAndDoubler,
            (true, false) => Classification::Fixer,
            (false, true) => Classification::Doubler,
            (false, false) => Classification::Neither,
        }
    }

    /// `γ_p(G) ≤ min ≤ max ≤ 2γ_p(G)`.
    pub fn within_sandwich(&self) -> bool {
        self.base_value <= self.min && self.min <= self.max && self.max <= 2 * self.base_value
    }
}

/// Classification with its provenance: only exhaustive sweeps establish a
/// universal property, sampled ones are evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub classification: Classification,
    pub universal: bool,
}

/// `γ_p(πG)` for one permutation.
pub fn prism_gamma_p(g: &Graph, pi: &Permutation, p: Proportion) -> Result<usize> {
    Ok(solver::gamma_p(PrismGraph::build(g, pi)?.graph(), p).size)
}

/// Evaluates `γ_p(πG)` over the permutations of `mode` in parallel. The
/// histogram and the witnesses (first permutation in sweep order attaining
/// each extreme) do not depend on scheduling.
pub fn sweep(g: &Graph, p: Proportion, mode: Mode, cap: usize) -> Result<SweepResult> {
    let perms = mode.permutations(g.n(), cap)?;
    if perms.is_empty() {
        return Err(Error::Precondition("sweep needs at least one permutation".into()));
    }
    let values = perms
        .par_iter()
        .map(|pi| prism_gamma_p(g, pi, p))
        .collect::<Result<Vec<usize>>>()?;
    let mut histogram = BTreeMap::new();
    for &v in &values {
        *histogram.entry(v).or_insert(0) += 1;
    }
    let min = *values.iter().min().expect("nonempty");
    let max = *values.iter().max().expect("nonempty");
    let first = |target: usize| perms[values.iter().position(|&v| v == target).expect("extreme attained")].clone();
    Ok(SweepResult {
        n: g.n(),
        p,
        mode,
        base_value: solver::gamma_p(g, p).size,
        histogram,
        min,
        max,
        witness_min: first(min),
        witness_max: first(max),
    })
}

pub fn classify(g: &Graph, p: Proportion, mode: Mode, cap: usize) -> Result<Verdict> {
    let result = sweep(g, p, mode, cap)?;
    Ok(Verdict { classification: result.classify(), universal: mode.is_exhaustive() })
}
