//! Brute-force reference for `γ_p`, kept independent of the solver: it
//! rebuilds closed neighborhoods from the edge list and enumerates every
//! subset by cardinality with no pruning.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::proportion::Proportion;
use crate::solver::{CoverageProfile, Solution};

pub const DEFAULT_ORACLE_CAP: usize = 16;

fn closed_masks(g: &Graph) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..g.n()).map(|v| 1u64 << v).collect();
    for (u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

fn covered(masks: &[u64], subset: u64) -> usize {
    let mut acc = 0u64;
    for (v, m) in masks.iter().enumerate() {
        if subset >> v & 1 == 1 {
            acc |= m;
        }
    }
    acc.count_ones() as usize
}

/// All `k`-subsets of `0..n` as bitmasks (Gosper's hack).
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::OracleCap { n: g.n(), cap })
    } else {
        Ok(())
    }
}

pub fn gamma_p_oracle(g: &Graph, p: Proportion, cap: usize) -> Result<Solution> {
    check_cap(g, cap)?;
    let n = g.n();
    let masks = closed_masks(g);
    for k in 0..=n {
        for s in subsets_of_size(n, k) {
            if p.den() as u128 * covered(&masks, s) as u128 >= p.num() as u128 * n as u128 {
                return Ok(Solution { size: k, witness: VertexSet::from_bits(s) });
            }
        }
    }
    unreachable!("the full vertex set covers every vertex")
}

pub fn profile_oracle(g: &Graph, cap: usize) -> Result<CoverageProfile> {
    check_cap(g, cap)?;
    let n = g.n();
    let masks = closed_masks(g);
    let values = (0..=n)
        .map(|k| subsets_of_size(n, k).map(|s| covered(&masks, s)).max().unwrap_or(0))
        .collect();
    Ok(CoverageProfile::from_values(values))
}
