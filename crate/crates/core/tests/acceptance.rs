//! End-to-end acceptance checks. Run with
//! `cargo test -p prismdom --test acceptance`; prints one line per criterion
//! and exits non-zero if any fails.

use std::time::{Duration, Instant};

use prismdom::graph::{Density, SplitMix64};
use prismdom::io::{parse_edge_list, parse_permutation};
use prismdom::oracle::gamma_p_oracle;
use prismdom::solver::{self, gamma_p_from_profile};
use prismdom::sweep::{enumerate_permutations, sample_permutations, sweep, Classification, Mode};
use prismdom::verify::{
    audit_t, check_prop6_preconditions, check_prop7_preconditions, evaluate_prop4, find_t, gadget,
    permutation_case, verify_gu_bound, verify_prop1, verify_prop2, verify_prop3, verify_prop4,
    verify_prop5, verify_prop6, verify_prop7, PermutationCase, Verdict,
};
use prismdom::{Family, Graph, Permutation, PrismGraph, Proportion, VertexSet};

const CAP: usize = 8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn p(a: usize, b: usize) -> Proportion {
    Proportion::new(a as u64, b as u64).unwrap()
}

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Seeded random graphs: orders cycle through `1..=max_n`, densities through
/// 1/4, 1/2, 3/4.
fn seeded_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let density = Density::new(1 + (i / max_n % 3) as u64, 4).unwrap();
            Graph::random(n, rng.next_u64(), density).unwrap()
        })
        .collect()
}

/// Every labelled graph on `1..=4` vertices.
fn all_small_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

const PS: [(usize, usize); 6] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];

fn criterion_1() -> Outcome {
    let graphs = seeded_graphs(200, 10, 1);
    let mut checks = 0;
    for g in &graphs {
        for &(a, b) in &PS {
            let fast = solver::gamma_p(g, p(a, b)).size;
            let slow = gamma_p_oracle(g, p(a, b), 16).map_err(|e| e.to_string())?.size;
            ensure(fast == slow, || format!("{g:?} p={a}/{b}: solver {fast}, oracle {slow}"))?;
            checks += 1;
        }
    }
    Ok(format!("{} graphs, {checks} (G, p) pairs agree", graphs.len()))
}

fn criterion_2() -> Outcome {
    let graphs = all_small_graphs();
    let mut checks = 0;
    let mut pairs = 0;
    for g in &graphs {
        for pi in enumerate_permutations(g.n(), CAP).unwrap() {
            let r = verify_prop5(g, &pi, None).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("violation: {:?}", r.certificate))?;
            checks += r.checks;
            pairs += 1;
        }
    }
    Ok(format!("{} graphs, {pairs} (G, π), {checks} breakpoints, 0 violations", graphs.len()))
}

fn criterion_3() -> Outcome {
    let graphs = all_small_graphs();
    let mut pairs = 0;
    for g in &graphs {
        for pi in enumerate_permutations(g.n(), CAP).unwrap() {
            let r = verify_gu_bound(g, &pi).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("violation: {:?}", r.certificate))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (G, π) at p=1, 0 violations"))
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    for n in 4..=7 {
        for (name, g) in [("star", Graph::star(n).unwrap()), ("complete", Graph::complete(n).unwrap())] {
            let r = verify_prop1(&g, Mode::Exhaustive, CAP).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{name}({n}): {:?} {:?}", r.verdict, r.certificate))?;
            let step = p(n + 1, 2 * n);
            let below = [p(n + 1, 4 * n), step];
            let above = [p(4 * n + 5, 8 * n), Proportion::ONE];
            for q in below {
                let s = sweep(&g, q, Mode::Exhaustive, CAP).map_err(|e| e.to_string())?;
                ensure(s.total() == (1..=n).product::<usize>(), || "histogram total != n!".into())?;
                ensure(s.classify() == Classification::Fixer, || format!("{name}({n}) p={q}: {:?}", s.classify()))?;
            }
            for q in above {
                let s = sweep(&g, q, Mode::Exhaustive, CAP).map_err(|e| e.to_string())?;
                ensure(s.classify() == Classification::Doubler, || {
                    format!("{name}({n}) p={q}: {:?}", s.classify())
                })?;
            }
            lines.push(format!("{name}({n})"));
        }
    }
    Ok(format!("step at (n+1)/(2n), Fixer below, Doubler above for {}", lines.join(" ")))
}

fn criterion_5() -> Outcome {
    let mut checks = 0;
    for n in 3..=7 {
        for family in [Family::Path, Family::Cycle] {
            let g = Graph::generate(family, n).unwrap();
            let gamma = solver::gamma(&g).size;
            ensure(gamma == n.div_ceil(3), || format!("γ({family:?}({n})) = {gamma}"))?;
            let r = verify_prop3(family, n, Mode::Exhaustive, CAP).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{family:?}({n}): {:?}", r.certificate))?;
            checks += r.checks;
        }
    }
    Ok(format!("P_n, C_n for n=3..7: {checks} prisms at equality"))
}

fn criterion_6() -> Outcome {
    let graphs = seeded_graphs(100, 8, 6);
    let mut checks = 0;
    for (i, g) in graphs.iter().enumerate() {
        for pi in sample_permutations(g.n(), 50, i as u64) {
            let r = verify_prop2(g, &pi).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("violation: {:?}", r.certificate))?;
            checks += 1;
        }
    }
    Ok(format!("{} graphs × 50 π, {checks} checks, 0 violations", graphs.len()))
}

fn criterion_7() -> Outcome {
    let two_stars = Graph::star(4).unwrap().disjoint_union(&Graph::star(4).unwrap()).unwrap();
    let cases = [("cycle(6)", Graph::cycle(6).unwrap(), set(&[0, 3])), ("2×star(4)", two_stars, set(&[0, 4]))];
    let mut out = Vec::new();
    for (name, g, m) in cases {
        ensure(check_prop6_preconditions(&g, m), || format!("{name}: preconditions fail"))?;
        let (delta, _) = g.max_degree();
        let n = g.n();
        let mode = Mode::Sampled { count: 100, seed: 7 };
        for pi in sample_permutations(n, 100, 7) {
            let pr = PrismGraph::build(&g, &pi).unwrap();
            let profile = solver::coverage_profile(pr.graph());
            for i in 1..=m.len() {
                ensure(profile.get(i) == i * (delta + 2), || format!("{name} π={:?}: c_{i}", pi.image()))?;
            }
        }
        let r = verify_prop6(&g, m, mode, CAP).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{name}: {:?}", r.certificate))?;
        let bounds: Vec<String> = (1..=m.len()).map(|i| p(i * (delta + 2), 2 * n).to_string()).collect();
        out.push(format!("{name} steps at {}", bounds.join(", ")));
    }
    Ok(out.join("; "))
}

/// Permutations of the two-gadget graph that fix `M` setwise, are not the
/// identity, and do not swap every pair.
fn case_three_perms(g: &Graph, m: VertexSet, count: usize) -> Vec<Permutation> {
    let pairing = check_prop7_preconditions(g, m).unwrap();
    let members = m.to_vec();
    let others: Vec<usize> = (0..g.n()).filter(|v| !m.contains(*v)).collect();
    let on_m: Vec<Permutation> = enumerate_permutations(members.len(), CAP).unwrap().collect();
    let on_rest = sample_permutations(others.len(), count, 8);
    let mut out = Vec::new();
    for (idx, rest) in on_rest.iter().enumerate() {
        let inner = &on_m[idx % on_m.len()];
        let mut image = vec![0; g.n()];
        for (a, &v) in members.iter().enumerate() {
            image[v] = members[inner.apply(a)];
        }
        for (a, &v) in others.iter().enumerate() {
            image[v] = others[rest.apply(a)];
        }
        let pi = Permutation::from_image(image).unwrap();
        if permutation_case(&pairing, &pi) == Some(PermutationCase::Permuted) && !out.contains(&pi) {
            out.push(pi);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let single = gadget();
    let double = gadget().disjoint_union(&gadget()).unwrap();
    let mut summary = Vec::new();
    let mut case_three_total = 0;
    for (name, g, m, swap) in [
        ("gadget", single, set(&[0, 1]), Permutation::from_cycles(5, &[vec![0, 1]]).unwrap()),
        ("two-gadget", double, set(&[0, 1, 5, 6]), Permutation::from_cycles(10, &[vec![0, 1], vec![5, 6]]).unwrap()),
    ] {
        let pairing = check_prop7_preconditions(&g, m).map_err(|e| e.to_string())?;
        let mut perms = vec![Permutation::identity(g.n()), swap];
        let extra: Vec<Permutation> = if g.n() == 5 {
            // v1, v2 fixed; every non-identity arrangement of c, d1, d2
            enumerate_permutations(3, CAP)
                .unwrap()
                .skip(1)
                .map(|rest| {
                    let mut image = vec![0, 1, 0, 0, 0];
                    for a in 0..3 {
                        image[2 + a] = 2 + rest.apply(a);
                    }
                    Permutation::from_image(image).unwrap()
                })
                .collect()
        } else {
            case_three_perms(&g, m, 60)
        };
        ensure(extra.iter().all(|pi| permutation_case(&pairing, pi) == Some(PermutationCase::Permuted)), || {
            format!("{name}: generated permutation outside case (iii)")
        })?;
        case_three_total += extra.len();
        let n_extra = extra.len();
        perms.extend(extra);
        for pi in &perms {
            let t = find_t(&g, &pairing, pi).map_err(|e| format!("{name} π={:?}: {e}", pi.image()))?;
            ensure(t.len() == m.len(), || format!("{name}: |T| = {}", t.len()))?;
            let pr = PrismGraph::build(&g, pi).unwrap();
            audit_t(&pr, &pairing, t).map_err(|e| format!("{name} π={:?}: {e}", pi.image()))?;
            let r = verify_prop7(&g, m, pi).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{name} π={:?}: {:?} {:?}", pi.image(), r.verdict, r.certificate))?;
        }
        summary.push(format!("{name}: identity + swap + {n_extra} case-(iii)"));
    }
    ensure(case_three_total >= 20, || format!("only {case_three_total} case-(iii) permutations"))?;
    Ok(summary.join("; "))
}

fn criterion_9() -> Outcome {
    let g = parse_edge_list("5 5\n1 2\n3 4\n2 4\n1 3\n4 5\n", true).map_err(|e| e.to_string())?;
    let pi = parse_permutation("(2 3 4)", 5, true).map_err(|e| e.to_string())?;
    let pr = PrismGraph::build(&g, &pi).map_err(|e| e.to_string())?;
    let (v, e) = (pr.graph().n(), pr.graph().m());
    ensure((v, e) == (10, 15), || format!("prism has {v} vertices, {e} edges"))?;
    let gamma = solver::gamma(&g).size;
    let brute = gamma_p_oracle(&g, Proportion::ONE, 16).unwrap().size;
    ensure(gamma == 2 && brute == 2, || format!("γ = {gamma}, oracle {brute}"))?;
    Ok("prism 10 vertices / 15 edges, γ(G) = 2".into())
}

fn criterion_10() -> Outcome {
    let mut rng = SplitMix64::new(10);
    let mut graphs = Vec::new();
    let mut draws = 0u64;
    while graphs.len() < 500 {
        let n = 1 + (draws % 6) as usize;
        let density = Density::new(1 + draws / 6 % 3, 4).unwrap();
        let g = Graph::random(n, rng.next_u64(), density).unwrap();
        draws += 1;
        if g.is_connected() {
            graphs.push(g);
        }
    }
    let mut holds = [0usize; 2];
    let mut necessity = [0usize; 2];
    let mut sufficiency = [0usize; 2];
    let mut certificates = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        for pi in sample_permutations(g.n(), 20, gi as u64) {
            let e = evaluate_prop4(g, &pi).map_err(|e| e.to_string())?;
            for (slot, reading) in [e.first_argmax, e.any_argmax].into_iter().enumerate() {
                if reading.agrees {
                    holds[slot] += 1;
                } else if e.left {
                    necessity[slot] += 1;
                } else {
                    sufficiency[slot] += 1;
                }
            }
            let r = verify_prop4(g, &pi).map_err(|e| e.to_string())?;
            if r.verdict == Verdict::Counterexample {
                let cert = r.certificate.expect("counterexample carries a certificate");
                ensure(cert.reproduces().unwrap_or(false), || format!("certificate does not re-verify: {cert:?}"))?;
                certificates.push(cert);
            }
        }
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("prop4_certificates.json");
    std::fs::write(&path, serde_json::to_string_pretty(&certificates).unwrap()).map_err(|e| e.to_string())?;
    ensure(sufficiency == [0, 0], || format!("sufficiency violations {sufficiency:?}"))?;
    Ok(format!(
        "{} graphs × 20 π; first-argmax holds {} / necessity cex {}; any-argmax holds {} / necessity cex {}; \
         sufficiency cex 0; {} certificates re-verified, written to {}",
        graphs.len(),
        holds[0],
        necessity[0],
        holds[1],
        necessity[1],
        certificates.len(),
        path.display()
    ))
}

fn criterion_11() -> Outcome {
    let mut graphs = seeded_graphs(200, 10, 1);
    let small = all_small_graphs();
    for g in &small {
        for pi in enumerate_permutations(g.n(), CAP).unwrap() {
            graphs.push(PrismGraph::build(g, &pi).unwrap().graph().clone());
        }
    }
    graphs.extend(small);
    for g in &graphs {
        let profile = solver::coverage_profile(g);
        profile.check_invariants(g).map_err(|e| format!("{g:?}: {e}"))?;
        for q in profile.breakpoints() {
            let a = gamma_p_from_profile(&profile, q, g.n());
            let b = solver::gamma_p(g, q).size;
            ensure(a == b, || format!("{g:?} p={q}: profile {a}, solver {b}"))?;
        }
    }
    Ok(format!("{} graphs (incl. prisms of the n ≤ 4 corpus)", graphs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 oracle equivalence", Duration::from_secs(120), criterion_1),
        ("2 sandwich on all graphs n<=4", Duration::from_secs(300), criterion_2),
        ("3 domination sandwich n<=4", Duration::from_secs(300), criterion_3),
        ("4 gamma=1 step function, fixer/doubler", Duration::from_secs(600), criterion_4),
        ("5 sharpness on paths and cycles", Duration::from_secs(600), criterion_5),
        ("6 upper bound gamma(G)", Duration::from_secs(300), criterion_6),
        ("7 independent max-degree intervals", Duration::from_secs(120), criterion_7),
        ("8 construction of T", Duration::from_secs(120), criterion_8),
        ("9 prism figure reproduction", Duration::from_secs(5), criterion_9),
        ("10 max-degree biconditional", Duration::from_secs(600), criterion_10),
        ("11 profile invariants", Duration::from_secs(300), criterion_11),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg} but took {elapsed:.1?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
