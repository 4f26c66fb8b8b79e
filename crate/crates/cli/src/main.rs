mod args;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{Cli, Command, FamilyArgs, FamilyKind, ModeArgs, VerifyArgs};
use prismdom::graph::Density;
use prismdom::io::{format_edge_list, format_permutation, format_profile, parse_permutation, read_edge_list};
use prismdom::oracle::gamma_p_oracle;
use prismdom::sweep::{self, Mode};
use prismdom::verify::{self, Claim, Expectation, Verdict, VerificationReport};
use prismdom::{solver, Error, Family, Graph, Permutation, PrismGraph, Proportion, VertexSet};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_UNMET: u8 = 2;
const EXIT_USAGE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn family(kind: FamilyKind, seed: Option<u64>, density: Option<&str>) -> Result<Family, Error> {
    Ok(match kind {
        FamilyKind::Path => Family::Path,
        FamilyKind::Cycle => Family::Cycle,
        FamilyKind::Complete => Family::Complete,
        FamilyKind::Star => Family::Star,
        FamilyKind::Random => {
            let seed = seed.ok_or_else(|| Error::InvalidFamily("random graphs need --seed".into()))?;
            let density = density.ok_or_else(|| Error::InvalidFamily("random graphs need --density".into()))?;
            Family::Random { seed, density: density.parse::<Density>()? }
        }
    })
}

fn generate(args: &FamilyArgs) -> Result<Graph, Error> {
    Graph::generate(family(args.family, args.seed, args.density.as_deref())?, args.n)
}

/// `spec` may name a file holding a permutation.
fn permutation(spec: &str, n: usize, one_indexed: bool) -> Result<Permutation, Error> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        return parse_permutation(&text, n, one_indexed);
    }
    parse_permutation(spec, n, one_indexed)
}

fn vertex_set(vs: &[usize], n: usize, one_indexed: bool) -> Result<VertexSet, Error> {
    let off = one_indexed as usize;
    vs.iter()
        .map(|&v| match v.checked_sub(off) {
            Some(x) if x < n => Ok(x),
            _ => Err(Error::VertexOutOfRange { vertex: v, n }),
        })
        .collect()
}

fn show_set(s: VertexSet, one_indexed: bool) -> String {
    let off = one_indexed as usize;
    let items: Vec<String> = s.iter().map(|v| (v + off).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn label<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn verify_text(report: &VerificationReport, oi: bool) -> String {
    let off = oi as usize;
    let mut out = format!(
        "claim = {}\ninstance = {}\nmode = {}\nchecks = {}\n",
        label(&report.claim),
        report.instance,
        report.mode,
        report.checks
    );
    for note in &report.notes {
        out += &format!("note: {note}\n");
    }
    if let Some(c) = &report.certificate {
        let expected = match c.expected {
            Expectation::Equals(x) => format!("= {x}"),
            Expectation::NotEquals(x) => format!("!= {x}"),
            Expectation::AtMost(x) => format!("<= {x}"),
            Expectation::AtLeast(x) => format!(">= {x}"),
        };
        out += &format!(
            "certificate: {} at p = {}, computed {}, expected {}\n",
            label(&c.target),
            c.p,
            c.computed,
            expected
        );
        out += &format!("  pi = {}\n", format_permutation(&c.permutation, oi).trim_end());
        for w in &c.witnesses {
            let items: Vec<String> = w.iter().map(|v| (v + off).to_string()).collect();
            out += &format!("  witness {{{}}}\n", items.join(", "));
        }
        if !c.note.is_empty() {
            out += &format!("  {}\n", c.note);
        }
    }
    out + &format!("verdict = {}\n", label(&report.verdict))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(cli: &Cli, body: &T) {
    let doc = json!({ "config": cli, "index_base": 0, "result": body });
    println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
}

fn mode_from(all: bool, sample: Option<usize>, seed: u64, n: usize) -> Mode {
    match (all, sample) {
        (true, _) => Mode::Exhaustive,
        (false, Some(count)) => Mode::Sampled { count, seed },
        (false, None) => Mode::default_for(n, seed),
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let oi = cli.one_indexed;
    match &cli.command {
        Command::Gen { family, out } => {
            let g = generate(family)?;
            let text = format_edge_list(&g, oi);
            emit(out.as_deref(), &text)?;
            if out.is_some() {
                if cli.json {
                    print_json(cli, &json!({ "n": g.n(), "m": g.m() }));
                } else {
                    println!("{} {}", g.n(), g.m());
                }
            }
            Ok(0)
        }
        Command::Gamma { graph, p, oracle } => {
            let g = read_edge_list(graph, oi)?;
            let prop = p.as_deref().map(str::parse::<Proportion>).transpose()?;
            let sol = solver::gamma_p(&g, prop.unwrap_or(Proportion::ONE));
            if *oracle {
                let check = gamma_p_oracle(&g, prop.unwrap_or(Proportion::ONE), cli.oracle_cap)?;
                if check.size != sol.size {
                    eprintln!("oracle disagrees: solver {}, oracle {}", sol.size, check.size);
                    return Ok(EXIT_COUNTEREXAMPLE);
                }
            }
            if cli.json {
                print_json(cli, &json!({ "p": prop.unwrap_or(Proportion::ONE), "value": sol.size, "witness": sol.witness }));
            } else {
                let name = if prop.is_some() { "gamma_p" } else { "gamma" };
                println!("{name} = {}", sol.size);
                println!("witness = {}", show_set(sol.witness, oi));
            }
            Ok(0)
        }
        Command::Profile { graph } => {
            let g = read_edge_list(graph, oi)?;
            let profile = solver::coverage_profile(&g);
            if cli.json {
                print_json(cli, &profile);
            } else {
                print!("{}", format_profile(&profile));
            }
            Ok(0)
        }
        Command::Prism { graph, pi, out } => {
            let g = read_edge_list(graph, oi)?;
            let pi = permutation(pi, g.n(), oi)?;
            let pr = PrismGraph::build(&g, &pi)?;
            let h = pr.graph();
            match out {
                Some(path) => {
                    emit(Some(path), &format_edge_list(h, oi))?;
                    if cli.json {
                        print_json(cli, &json!({ "n": h.n(), "m": h.m() }));
                    } else {
                        println!("{} {}", h.n(), h.m());
                    }
                }
                None => {
                    println!("# prism under {}", pi.cycle_notation(oi));
                    print!("{}", format_edge_list(h, oi));
                }
            }
            Ok(0)
        }
        Command::Sweep { graph, p, mode } => {
            let g = read_edge_list(graph, oi)?;
            let p: Proportion = p.parse()?;
            let mode = sweep_mode(mode, &g, cli.cap)?;
            let result = sweep::sweep(&g, p, mode, cli.cap)?;
            let classification = result.classify();
            if !cli.json {
                let evidence = if mode.is_exhaustive() { "universal" } else { "sampled evidence only" };
                let mut out = format!(
                    "mode = {}\ngamma_p(G) = {}\nrange = {}..={}\n",
                    result.mode, result.base_value, result.min, result.max
                );
                for (value, count) in &result.histogram {
                    out += &format!("  {value}: {count}\n");
                }
                out += &format!(
                    "min at pi = {}\nmax at pi = {}\nclassification = {} ({evidence})\n",
                    format_permutation(&result.witness_min, oi).trim_end(),
                    format_permutation(&result.witness_max, oi).trim_end(),
                    label(&classification)
                );
                print!("{out}");
                return Ok(0);
            }
            print_json(
                cli,
                &json!({
                    "n": result.n,
                    "p": result.p,
                    "mode": result.mode,
                    "base_value": result.base_value,
                    "histogram": result.histogram,
                    "min": result.min,
                    "max": result.max,
                    "witness_min": result.witness_min,
                    "witness_max": result.witness_max,
                    "classification": classification,
                    "universal": mode.is_exhaustive(),
                    "evidence": if mode.is_exhaustive() { "all permutations" } else { "sampled evidence" },
                }),
            );
            Ok(0)
        }
        Command::Verify(args) => {
            let report = verify_claim(cli, args)?;
            if cli.json {
                print_json(cli, &report);
            } else {
                print!("{}", verify_text(&report, oi));
            }
            Ok(match report.verdict {
                Verdict::Holds => 0,
                Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
                Verdict::PreconditionsUnmet => EXIT_UNMET,
            })
        }
        Command::FindT { graph, m, pi } => {
            let g = read_edge_list(graph, oi)?;
            let m = vertex_set(m, g.n(), oi)?;
            let pi = permutation(pi, g.n(), oi)?;
            let pairing = match verify::check_prop7_preconditions(&g, m) {
                Ok(p) => p,
                Err(Error::Precondition(why)) => {
                    eprintln!("preconditions unmet: {why}");
                    return Ok(EXIT_UNMET);
                }
                Err(e) => return Err(e),
            };
            let case = verify::permutation_case(&pairing, &pi);
            let Some(case) = case else {
                eprintln!("preconditions unmet: π does not map M onto itself");
                return Ok(EXIT_UNMET);
            };
            let t = verify::find_t(&g, &pairing, &pi)?;
            let audit = verify::audit_t(&PrismGraph::build(&g, &pi)?, &pairing, t);
            if cli.json {
                print_json(cli, &json!({ "case": case, "pairs": pairing.pairs(), "t": t, "audit": audit }));
            } else {
                println!("case = {case:?}");
                println!("T = {}", show_set(t, oi));
                match &audit {
                    Ok(()) => println!("audit = ok"),
                    Err(why) => println!("audit = failed: {why}"),
                }
            }
            Ok(if audit.is_ok() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

fn sweep_mode(mode: &ModeArgs, g: &Graph, cap: usize) -> Result<Mode, Error> {
    match (mode.all, mode.sample) {
        (_, Some(count)) => Ok(Mode::Sampled { count, seed: mode.seed }),
        _ if g.n() > cap => Err(Error::ExhaustiveCap { n: g.n(), cap }),
        _ => Ok(Mode::Exhaustive),
    }
}

fn instance_graph(cli: &Cli, args: &VerifyArgs) -> Result<Graph, Error> {
    match (&args.graph, args.family) {
        (Some(path), _) => read_edge_list(path, cli.one_indexed),
        (None, Some(kind)) => {
            let n = args.n.ok_or_else(|| Error::InvalidFamily("--family needs --n".into()))?;
            let seed = args.graph_seed.unwrap_or(args.seed);
            Graph::generate(family(kind, Some(seed), args.density.as_deref())?, n)
        }
        (None, None) => Err(Error::InvalidInput("give --graph PATH or --family/--n".into())),
    }
}

fn verify_claim(cli: &Cli, args: &VerifyArgs) -> Result<VerificationReport, Error> {
    let claim: Claim = args.prop.parse().map_err(Error::InvalidInput)?;
    let oi = cli.one_indexed;
    let cap = cli.cap;
    if claim == Claim::Prop3 {
        let kind = args.family.ok_or_else(|| Error::InvalidInput("--prop 3 needs --family path|cycle".into()))?;
        let n = args.n.ok_or_else(|| Error::InvalidInput("--prop 3 needs --n".into()))?;
        let fam = family(kind, None, None)?;
        return verify::verify_prop3(fam, n, mode_from(args.all_pi, args.sample, args.seed, n), cap);
    }
    let g = instance_graph(cli, args)?;
    let n = g.n();
    let mode = mode_from(args.all_pi, args.sample, args.seed, n);
    let single = args.pi.as_deref().map(|s| permutation(s, n, oi)).transpose()?;
    let m = vertex_set(&args.m, n, oi)?;
    let grid = args.grid.iter().map(|s| s.parse::<Proportion>()).collect::<Result<Vec<_>, _>>()?;
    let grid = (!grid.is_empty()).then_some(grid);

    let per_pi = |pi: &Permutation| -> Result<VerificationReport, Error> {
        match claim {
            Claim::Prop2 => verify::verify_prop2(&g, pi),
            Claim::Prop4 => verify::verify_prop4(&g, pi),
            Claim::Prop5 => verify::verify_prop5(&g, pi, grid.as_deref()),
            Claim::Remark => verify::verify_remark(&g, pi),
            Claim::GuBound => verify::verify_gu_bound(&g, pi),
            Claim::Prop7 => verify::verify_prop7(&g, m, pi),
            Claim::Prop1 | Claim::Prop3 | Claim::Prop6 => unreachable!("handled as sweeps"),
        }
    };
    match claim {
        Claim::Prop1 => verify::verify_prop1(&g, mode, cap),
        Claim::Prop6 => {
            if m.is_empty() {
                return Err(Error::InvalidInput("--prop 6 needs --m".into()));
            }
            verify::verify_prop6(&g, m, mode, cap)
        }
        Claim::Prop7 if m.is_empty() => Err(Error::InvalidInput("--prop 7 needs --m".into())),
        _ => match single {
            Some(pi) => per_pi(&pi),
            None => verify::verify_for_all(&g, mode, cap, per_pi),
        },
    }
}
