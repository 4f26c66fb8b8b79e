//! Paired maximum-degree sets and the construction of `T`.
//!
//! `M` is an independent set of maximum-degree vertices in which every member
//! `v_r` has exactly one partner `v_s` with `|N(v_r) ∩ N(v_s)| = 1`. For a
//! permutation mapping `M` onto itself, [`find_t`] picks `|M|` vertices of
//! `M ∪ M'` whose closed neighborhoods in `πG` are pairwise disjoint.
//!
//! Conflicts among `M ∪ M'` come from three perfect matchings: partners in
//! copy 1, partners in copy 2, and the cross edges `v — π(v)'`. Every
//! candidate meets exactly two of them, so the conflict graph is a union of
//! cycles alternating copy-1 partner, cross, copy-2 partner, cross. The
//! construction walks each cycle taking every other vertex.

use serde::Serialize;

use super::claims::stepped_intervals;
use super::{describe, Certificate, Claim, Expectation, Target, VerificationReport};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::prism::{Permutation, PrismGraph};
use crate::proportion::Proportion;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairedMaxSet {
    members: VertexSet,
    /// `(v_r, v_s)` with `v_r < v_s`, ordered by `v_r`.
    pairs: Vec<(usize, usize)>,
}

impl PairedMaxSet {
    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

/// Builds the pairing by scanning all pairs of `M`.
pub fn check_prop7_preconditions(g: &Graph, m: VertexSet) -> Result<PairedMaxSet> {
    let unmet = |msg: String| Err(Error::Precondition(msg));
    if m.is_empty() {
        return unmet("M is empty".into());
    }
    if !g.is_independent(m)? {
        return unmet("M is not independent".into());
    }
    let (delta, _) = g.max_degree();
    if let Some(v) = m.iter().find(|&v| g.degree(v) != delta) {
        return unmet(format!("vertex {v} has degree {} < Δ = {delta}", g.degree(v)));
    }
    let mut pairs = Vec::new();
    for r in m.iter() {
        let mut partners = Vec::new();
        for s in m.iter().filter(|&s| s != r) {
            match g.neighbors(r).intersection(g.neighbors(s)).len() {
                0 => {}
                1 => partners.push(s),
                c => return unmet(format!("vertices {r} and {s} share {c} common neighbors")),
            }
        }
        match partners[..] {
            [s] => {
                if r < s {
                    pairs.push((r, s));
                }
            }
            [] => return unmet(format!("vertex {r} has no partner")),
            _ => return unmet(format!("vertex {r} has {} partners {partners:?}", partners.len())),
        }
    }
    Ok(PairedMaxSet { members: m, pairs })
}

/// The three admissible kinds of permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PermutationCase {
    /// `π = 1`
    Identity,
    /// `π(v_r) = v_s` and `π(v_s) = v_r` for every pair.
    PairSwap,
    /// `π ≠ 1`, `π(M) = M`, and some pair is not swapped.
    Permuted,
}

pub fn permutation_case(pairing: &PairedMaxSet, pi: &Permutation) -> Option<PermutationCase> {
    if pi.is_identity() {
        return Some(PermutationCase::Identity);
    }
    let all_swapped = pairing.pairs.iter().all(|&(r, s)| pi.apply(r) == s && pi.apply(s) == r);
    if all_swapped {
        return Some(PermutationCase::PairSwap);
    }
    (pi.apply_set(pairing.members) == pairing.members).then_some(PermutationCase::Permuted)
}

/// Selects `T ⊆ M ∪ M'` of size `|M|` with pairwise disjoint closed
/// neighborhoods in `πG`. Copy-2 vertices are indexed `n + v`.
///
/// Members are scanned in increasing order; a member `v_i` starts a walk when
/// neither `v_i` nor `v_i* = π(v_i)'` is in `T`. A walk adds `v_i`, then
/// `v_j*` for the partner `v_j` of `v_i`, then continues from the member `v_k`
/// whose `v_k*` is the copy-2 partner of `v_j*`, until it returns to a
/// vertex already decided. At most `|M|²` walk steps are taken.
pub fn find_t(g: &Graph, pairing: &PairedMaxSet, pi: &Permutation) -> Result<VertexSet> {
    if pi.n() != g.n() {
        return Err(Error::SizeMismatch { graph: g.n(), perm: pi.n() });
    }
    if permutation_case(pairing, pi).is_none() {
        return Err(Error::Precondition("π must fix M setwise (identity, pair swap or permuted case)".into()));
    }
    let n = g.n();
    let members = pairing.members.to_vec();
    let m = members.len();
    let star = |v: usize| n + pi.apply(v);
    let partner = |v: usize| pairing.partner(v).expect("every member is paired");
    let budget = m * m;
    let mut steps = 0;
    let mut t = VertexSet::EMPTY;
    for &start in &members {
        if t.contains(start) || t.contains(star(start)) {
            continue;
        }
        let mut cur = start;
        loop {
            steps += 1;
            if steps > budget {
                return Err(Error::ConstructionFailure { expected: m, partial: t });
            }
            t.insert(cur);
            let j = partner(cur);
            t.insert(star(j));
            let k = pi.preimage(partner(pi.apply(j)));
            if t.contains(k) || t.contains(star(k)) {
                break;
            }
            cur = k;
        }
        if t.len() == m {
            return Ok(t);
        }
    }
    Err(Error::ConstructionFailure { expected: m, partial: t })
}

/// Independent check of a candidate `T`: recomputes closed neighborhoods from
/// the prism's edge list and tests size, membership, non-adjacency and
/// pairwise disjointness.
pub fn audit_t(pr: &PrismGraph, pairing: &PairedMaxSet, t: VertexSet) -> std::result::Result<(), String> {
    let n = pr.n();
    let allowed = pairing.members.union(pairing.members.shifted(n));
    if t.len() != pairing.members.len() {
        return Err(format!("|T| = {} but |M| = {}", t.len(), pairing.members.len()));
    }
    if !t.is_subset(allowed) {
        return Err(format!("T = {t:?} leaves M ∪ M'"));
    }
    let edges: Vec<(usize, usize)> = pr.graph().edges().collect();
    let closed = |x: usize| -> Vec<usize> {
        let mut s = vec![x];
        s.extend(edges.iter().filter_map(|&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        }));
        s
    };
    let members = t.to_vec();
    for (idx, &a) in members.iter().enumerate() {
        let na = closed(a);
        for &b in &members[idx + 1..] {
            if edges.contains(&(a.min(b), a.max(b))) {
                return Err(format!("{a} and {b} are adjacent in πG"));
            }
            if let Some(x) = closed(b).iter().find(|x| na.contains(x)) {
                return Err(format!("{a} and {b} both dominate {x}"));
            }
        }
    }
    Ok(())
}

/// Runs [`find_t`], audits it, and checks `γ_p(πG) = i` on
/// `((i−1)(Δ+2)/(2n), i(Δ+2)/(2n)]` using `i`-subsets of `T` as witnesses
/// and the degree bound `|N[v]| ≤ Δ+2` as the matching lower bound; the
/// value is also compared with the solver directly.
pub fn verify_prop7(g: &Graph, m: VertexSet, pi: &Permutation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        Claim::Prop7,
        format!("{} M={:?}", describe(g), m.to_vec()),
        format!("pi = {:?}", pi.image()),
    );
    let pairing = match check_prop7_preconditions(g, m) {
        Ok(p) => p,
        Err(Error::Precondition(why)) => return Ok(report.unmet(why)),
        Err(e) => return Err(e),
    };
    let Some(case) = permutation_case(&pairing, pi) else {
        return Ok(report.unmet("π is not the identity, the pair swap, nor a permutation of M"));
    };
    report.notes.push(format!("case: {case:?}"));
    let t = find_t(g, &pairing, pi)?;
    report.notes.push(format!("T = {:?}", t.to_vec()));
    let pr = PrismGraph::build(g, pi)?;
    let (delta, _) = g.max_degree();
    let width = delta + 2;
    let n = g.n();
    if let Err(why) = audit_t(&pr, &pairing, t) {
        let p = Proportion::new((m.len() * width) as u64, 2 * n as u64)?;
        let cert = Certificate::record(g, pi, Target::Prism, p, Expectation::Equals(m.len()), why)?;
        return Ok(report.refuted(cert));
    }
    let ordered = t.to_vec();
    for i in 1..=ordered.len() {
        report.checks += 1;
        let prefix: VertexSet = ordered[..i].iter().copied().collect();
        let covered = pr.graph().coverage(prefix)?;
        let upper_ok = covered >= i * width;
        let lower_ok = (0..2 * n).all(|v| pr.graph().degree(v) < width);
        if !(upper_ok && lower_ok) {
            let p = Proportion::new((i * width) as u64, 2 * n as u64)?;
            let note = format!("witness covers {covered}, needs {}", i * width);
            let cert = Certificate::record(g, pi, Target::Prism, p, Expectation::Equals(i), note)?;
            return Ok(report.refuted(cert));
        }
    }
    let (checks, failure) = stepped_intervals(g, pi, ordered.len(), delta)?;
    report.checks += checks;
    Ok(match failure {
        Some(cert) => report.refuted(cert),
        None => report,
    })
}

/// Vertices `v1, v2, c, d1, d2` as `0..5`: `v1` and `v2` share the single
/// common neighbor `c`, and each has one private leaf.
pub fn gadget() -> Graph {
    Graph::from_edges(5, [(0, 2), (1, 2), (0, 3), (1, 4)]).expect("fixed edge list")
}
