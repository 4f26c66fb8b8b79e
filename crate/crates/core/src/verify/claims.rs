//! Checks for the statements about `γ_p(πG)` that only need the solver.

use serde::Serialize;

use super::{
    describe, interval_probes, over_permutations, Certificate, Claim, Expectation, Outcome, Target,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, VertexSet};
use crate::prism::{Permutation, PrismGraph};
use crate::proportion::Proportion;
use crate::solver;
use crate::sweep::Mode;

fn prop(num: usize, den: usize) -> Result<Proportion> {
    Proportion::new(num as u64, den as u64)
}

/// `(n + γ(G)) / (2n)`, the proportion dominated by a `γ`-set of `G` in `πG`.
pub fn gamma_threshold(g: &Graph) -> Result<(usize, Proportion)> {
    let gamma = solver::gamma(g).size;
    Ok((gamma, prop(g.n() + gamma, 2 * g.n())?))
}

/// For each probe `p` in `(lo, hi]`, asserts `γ_p(πG) = expected` directly
/// and through the profile. Returns the number of probes evaluated.
fn check_interval(
    g: &Graph,
    pi: &Permutation,
    prism: &Graph,
    profile: &solver::CoverageProfile,
    lo: (u64, u64),
    hi: Proportion,
    expected: usize,
) -> Result<Outcome> {
    let probes = interval_probes(lo, hi, prism.n())?;
    for &p in &probes {
        let direct = solver::gamma_p(prism, p).size;
        let via_profile = profile.gamma_p(p);
        if direct != expected || via_profile != expected {
            let note = format!("interval ({}/{}, {hi}]: profile gives {via_profile}", lo.0, lo.1);
            let cert = Certificate::record(g, pi, Target::Prism, p, Expectation::Equals(expected), note)?;
            return Ok((probes.len(), Some(cert)));
        }
    }
    Ok((probes.len(), None))
}

/// `γ = 1` graphs: `γ_p(πG)` is 1 up to `(n+1)/(2n)` and 2 above it, for
/// every `π` in `mode`.
pub fn verify_prop1(g: &Graph, mode: Mode, cap: usize) -> Result<VerificationReport> {
    let report = VerificationReport::new(Claim::Prop1, describe(g), mode.to_string());
    if !g.is_connected() || g.has_isolated_vertex() {
        return Ok(report.unmet("graph must be connected without isolated vertices"));
    }
    let gamma = solver::gamma(g).size;
    if gamma != 1 {
        return Ok(report.unmet(format!("γ(G) = {gamma}, not 1")));
    }
    let n = g.n();
    let step = prop(n + 1, 2 * n)?;
    let perms = mode.permutations(n, cap)?;
    let (checks, failure) = over_permutations(&perms, |pi| {
        let pr = PrismGraph::build(g, pi)?;
        let profile = solver::coverage_profile(pr.graph());
        let (a, low) = check_interval(g, pi, pr.graph(), &profile, (0, 1), step, 1)?;
        if low.is_some() {
            return Ok((a, low));
        }
        let (b, high) =
            check_interval(g, pi, pr.graph(), &profile, (step.num(), step.den()), Proportion::ONE, 2)?;
        Ok((a + b, high))
    })?;
    let mut report = VerificationReport { checks, ..report };
    report.notes.push(format!("step at p = {step}"));
    Ok(match failure {
        Some(cert) => report.refuted(cert),
        None => report,
    })
}

/// `γ_p(πG) ≤ γ(G)` at `p = (n+γ)/(2n)`; smaller `p` follow by monotonicity.
pub fn verify_prop2(g: &Graph, pi: &Permutation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::Prop2, describe(g), format!("pi = {:?}", pi.image()));
    let (gamma, p) = gamma_threshold(g)?;
    let pr = PrismGraph::build(g, pi)?;
    let value = solver::gamma_p(pr.graph(), p).size;
    report.checks = 1;
    if value > gamma {
        let cert = Certificate::record(g, pi, Target::Prism, p, Expectation::AtMost(gamma), "")?;
        return Ok(report.refuted(cert));
    }
    Ok(report)
}

/// Paths and cycles: `γ_{(n+γ)/(2n)}(πG) = γ(G) = ⌈n/3⌉` for every `π`.
pub fn verify_prop3(family: Family, n: usize, mode: Mode, cap: usize) -> Result<VerificationReport> {
    if !matches!(family, Family::Path | Family::Cycle) {
        return Err(Error::InvalidFamily("this check covers paths and cycles only".into()));
    }
    if n < 2 {
        return Err(Error::InvalidFamily(format!("n must be at least 2, got {n}")));
    }
    let g = Graph::generate(family, n)?;
    let report = VerificationReport::new(Claim::Prop3, format!("{family:?}({n})"), mode.to_string());
    let ceil = n.div_ceil(3);
    let (gamma, p) = gamma_threshold(&g)?;
    if gamma != ceil {
        let cert = Certificate::record(
            &g,
            &Permutation::identity(n),
            Target::Base,
            Proportion::ONE,
            Expectation::Equals(ceil),
            "γ(G) differs from ⌈n/3⌉",
        )?;
        return Ok(report.refuted(cert));
    }
    let perms = mode.permutations(n, cap)?;
    let (checks, failure) = over_permutations(&perms, |pi| {
        let value = solver::gamma_p(PrismGraph::build(&g, pi)?.graph(), p).size;
        let cert = (value != gamma)
            .then(|| Certificate::record(&g, pi, Target::Prism, p, Expectation::Equals(gamma), ""))
            .transpose()?;
        Ok((1, cert))
    })?;
    let mut report = VerificationReport { checks, ..report };
    report.notes.push(format!("γ = {gamma}, p = {p}"));
    Ok(match failure {
        Some(cert) => report.refuted(cert),
        None => report,
    })
}

/// `γ_{(n+γ)/(2n)}(πG) = 1` exactly when `γ(G) = 1`.
pub fn verify_remark(g: &Graph, pi: &Permutation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::Remark, describe(g), format!("pi = {:?}", pi.image()));
    let (gamma, p) = gamma_threshold(g)?;
    let value = solver::gamma_p(PrismGraph::build(g, pi)?.graph(), p).size;
    report.checks = 1;
    let left = value == 1;
    let right = gamma == 1;
    report.notes.push(format!("γ_p(πG) = {value} at p = {p}; γ(G) = {gamma}"));
    if left != right {
        let expected = if right { Expectation::Equals(1) } else { Expectation::NotEquals(1) };
        let cert = Certificate::record(g, pi, Target::Prism, p, expected, "sides of the biconditional disagree")?;
        return Ok(report.refuted(cert));
    }
    Ok(report)
}

/// One reading of which maximum-degree vertex `u_Δ` the condition refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop4Reading {
    /// The `u_Δ` used (for the existential reading: the first one satisfying
    /// the condition, else the first maximum-degree vertex).
    pub u: usize,
    /// `|N[u] ∩ N[u']|` in `πG`.
    pub i: usize,
    pub condition: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop4Evaluation {
    pub n: usize,
    pub gamma: usize,
    pub delta: usize,
    pub p: Proportion,
    pub prism_value: usize,
    /// `γ_p(πG) = 2`.
    pub left: bool,
    pub first_argmax: Prop4Reading,
    pub any_argmax: Prop4Reading,
    /// Some reading's condition holds but `γ_p(πG) ≠ 2`.
    pub sufficiency_violated: bool,
    /// `γ_p(πG) = 2` but some reading's condition fails.
    pub necessity_violated: bool,
}

/// `γ = 2`, or `γ ≥ 3` and `2Δ ≥ n + γ − 4 + i`.
fn prop4_condition(n: usize, gamma: usize, delta: usize, i: usize) -> bool {
    gamma == 2 || (gamma >= 3 && 2 * delta as i64 >= n as i64 + gamma as i64 - 4 + i as i64)
}

pub fn evaluate_prop4(g: &Graph, pi: &Permutation) -> Result<Prop4Evaluation> {
    let n = g.n();
    let (gamma, p) = gamma_threshold(g)?;
    let pr = PrismGraph::build(g, pi)?;
    let prism_value = solver::gamma_p(pr.graph(), p).size;
    let left = prism_value == 2;
    let (delta, argmax) = g.max_degree();
    let reading = |u: usize| -> Result<Prop4Reading> {
        let i = pr.compute_i(u)?;
        let condition = prop4_condition(n, gamma, delta, i);
        Ok(Prop4Reading { u, i, condition, agrees: condition == left })
    };
    let first = reading(argmax.iter().next().expect("n >= 1 so some vertex has degree Δ"))?;
    let mut any = first;
    for u in argmax.iter() {
        let r = reading(u)?;
        if r.condition {
            any = r;
            break;
        }
    }
    let cond_any = any.condition;
    let cond_first = first.condition;
    Ok(Prop4Evaluation {
        n,
        gamma,
        delta,
        p,
        prism_value,
        left,
        first_argmax: first,
        any_argmax: any,
        sufficiency_violated: !left && (cond_first || cond_any),
        necessity_violated: left && !(cond_first && cond_any),
    })
}

/// Evaluates the biconditional under both readings of `u_Δ`; it holds when
/// both agree with `γ_{(n+γ)/(2n)}(πG) = 2`.
pub fn verify_prop4(g: &Graph, pi: &Permutation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::Prop4, describe(g), format!("pi = {:?}", pi.image()));
    let eval = evaluate_prop4(g, pi)?;
    report.checks = 1;
    report.prop4 = Some(eval);
    if eval.first_argmax.agrees && eval.any_argmax.agrees {
        return Ok(report);
    }
    let (expected, note) = if eval.sufficiency_violated {
        (Expectation::Equals(2), "sufficiency: condition holds but γ_p(πG) ≠ 2")
    } else {
        (Expectation::NotEquals(2), "necessity: γ_p(πG) = 2 but the condition fails")
    };
    let cert = Certificate::record(g, pi, Target::Prism, eval.p, expected, note)?;
    Ok(report.refuted(cert))
}

/// Breakpoints of both step functions `p ↦ γ_p(G)` and `p ↦ γ_p(πG)`.
/// Both are constant between consecutive points, so checking these covers
/// every `p ∈ (0, 1]`.
pub fn sandwich_grid(g: &Graph, pr: &PrismGraph) -> Vec<Proportion> {
    let mut grid = solver::coverage_profile(g).breakpoints();
    grid.extend(solver::coverage_profile(pr.graph()).breakpoints());
    grid.sort();
    grid.dedup();
    grid
}

/// `γ_p(G) ≤ γ_p(πG) ≤ 2γ_p(G)` at each grid point; the default grid is
/// [`sandwich_grid`].
pub fn verify_prop5(g: &Graph, pi: &Permutation, grid: Option<&[Proportion]>) -> Result<VerificationReport> {
    sandwich(Claim::Prop5, g, pi, grid)
}

/// The domination case of the sandwich: `γ(G) ≤ γ(πG) ≤ 2γ(G)`.
pub fn verify_gu_bound(g: &Graph, pi: &Permutation) -> Result<VerificationReport> {
    sandwich(Claim::GuBound, g, pi, Some(&[Proportion::ONE]))
}

fn sandwich(claim: Claim, g: &Graph, pi: &Permutation, grid: Option<&[Proportion]>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim, describe(g), format!("pi = {:?}", pi.image()));
    let pr = PrismGraph::build(g, pi)?;
    let owned;
    let grid = match grid {
        Some(grid) => grid,
        None => {
            owned = sandwich_grid(g, &pr);
            &owned
        }
    };
    for &p in grid {
        report.checks += 1;
        let base = solver::gamma_p(g, p).size;
        let prism = solver::gamma_p(pr.graph(), p).size;
        let expected = if prism < base {
            Expectation::AtLeast(base)
        } else if prism > 2 * base {
            Expectation::AtMost(2 * base)
        } else {
            continue;
        };
        let note = format!("γ_p(G) = {base}");
        let cert = Certificate::record(g, pi, Target::Prism, p, expected, note)?;
        return Ok(report.refuted(cert));
    }
    Ok(report)
}

/// `M` is independent, all of maximum degree, with pairwise disjoint open
/// neighborhoods.
pub fn check_prop6_preconditions(g: &Graph, m: VertexSet) -> bool {
    if m.is_empty() || !g.is_independent(m).unwrap_or(false) {
        return false;
    }
    let (delta, _) = g.max_degree();
    let members = m.to_vec();
    members.iter().all(|&v| g.degree(v) == delta)
        && members
            .iter()
            .enumerate()
            .all(|(a, &u)| members[a + 1..].iter().all(|&v| g.neighbors(u).is_disjoint(g.neighbors(v))))
}

/// `γ_p(πG) = i` on `((i−1)(Δ+2)/(2n), i(Δ+2)/(2n)]` for `i = 1..=|M|`.
pub fn verify_prop6(g: &Graph, m: VertexSet, mode: Mode, cap: usize) -> Result<VerificationReport> {
    let report = VerificationReport::new(
        Claim::Prop6,
        format!("{} M={:?}", describe(g), m.to_vec()),
        mode.to_string(),
    );
    if !check_prop6_preconditions(g, m) {
        return Ok(report.unmet("M must be a nonempty independent set of maximum-degree vertices with disjoint neighborhoods"));
    }
    let (delta, _) = g.max_degree();
    let perms = mode.permutations(g.n(), cap)?;
    let (checks, failure) = over_permutations(&perms, |pi| stepped_intervals(g, pi, m.len(), delta))?;
    let report = VerificationReport { checks, ..report };
    Ok(match failure {
        Some(cert) => report.refuted(cert),
        None => report,
    })
}

/// Shared by the independent-set statements: the prism profile satisfies
/// `c_i = i(Δ+2)` for `i ≤ k`, and `γ_p(πG) = i` on the `i`-th interval.
pub(crate) fn stepped_intervals(g: &Graph, pi: &Permutation, k: usize, delta: usize) -> Result<Outcome> {
    let n = g.n();
    let pr = PrismGraph::build(g, pi)?;
    let profile = solver::coverage_profile(pr.graph());
    let width = delta + 2;
    let mut checks = 0;
    for i in 1..=k {
        checks += 1;
        if profile.get(i) != i * width {
            let p = prop(i * width, 2 * n)?;
            let note = format!("c_{i}(πG) = {} but i(Δ+2) = {}", profile.get(i), i * width);
            let cert = Certificate::record(g, pi, Target::Prism, p, Expectation::Equals(i), note)?;
            return Ok((checks, Some(cert)));
        }
        let lo = ((i - 1) as u64 * width as u64, 2 * n as u64);
        let hi = prop(i * width, 2 * n)?;
        let (c, failure) = check_interval(g, pi, pr.graph(), &profile, lo, hi, i)?;
        checks += c;
        if failure.is_some() {
            return Ok((checks, failure));
        }
    }
    Ok((checks, None))
}
