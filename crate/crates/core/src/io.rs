//! Text formats: edge lists, permutations and coverage profiles.
//!
//! Edge list: first non-comment line `n m`, then `m` lines `u v` with
//! `u < v`. Lines starting with `#` are comments. With `one_indexed`, vertex
//! labels run `1..=n` on disk and `0..n` in memory.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prism::Permutation;
use crate::solver::CoverageProfile;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str, one_indexed: bool) -> Result<Graph> {
    let off = one_indexed as usize;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let nums = parse_pair(hline, header)?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        let (u, v) = parse_pair(lineno, line)?;
        if u < off || v < off {
            return Err(parse_err(lineno, "vertex labels start at 1 with --one-indexed"));
        }
        let (u, v) = (u - off, v - off);
        if u >= v {
            return Err(parse_err(lineno, format!("edge must satisfy u < v, got {} {}", u + off, v + off)));
        }
        if v >= n {
            return Err(parse_err(lineno, format!("vertex {} out of range for n = {n}", v + off)));
        }
        if edges.contains(&(u, v)) {
            return Err(parse_err(lineno, format!("duplicate edge {} {}", u + off, v + off)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges).map_err(|e| parse_err(hline, e.to_string()))
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(lineno, "expected two integers"))?;
        tok.parse().map_err(|_| parse_err(lineno, format!("not a non-negative integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(lineno, "expected exactly two integers"));
    }
    Ok(pair)
}

pub fn read_edge_list(path: &std::path::Path, one_indexed: bool) -> Result<Graph> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_edge_list(&text, one_indexed)
}

pub fn format_edge_list(g: &Graph, one_indexed: bool) -> String {
    let off = one_indexed as usize;
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + off, v + off).unwrap();
    }
    out
}

/// Parses `identity`, cycle notation such as `(2 3 4)(1 5)`, or a one-line
/// image `π(0) π(1) … π(n-1)`.
pub fn parse_permutation(spec: &str, n: usize, one_indexed: bool) -> Result<Permutation> {
    let spec = spec.trim();
    let off = one_indexed as usize;
    let bad = |msg: String| Error::InvalidPermutation(msg);
    if spec.eq_ignore_ascii_case("identity") || spec == "()" || spec.is_empty() {
        return Ok(Permutation::identity(n));
    }
    let label = |tok: &str| -> Result<usize> {
        let x: usize = tok.parse().map_err(|_| bad(format!("not an integer: {tok:?}")))?;
        x.checked_sub(off).ok_or_else(|| bad("labels start at 1 with --one-indexed".into()))
    };
    if spec.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = spec;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected '(' in {spec:?}")))?;
            let close = body.find(')').ok_or_else(|| bad(format!("unclosed cycle in {spec:?}")))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(label)
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    } else {
        let image = spec.split_whitespace().map(label).collect::<Result<Vec<_>>>()?;
        if image.len() != n {
            return Err(Error::SizeMismatch { graph: n, perm: image.len() });
        }
        Permutation::from_image(image)
    }
}

pub fn format_permutation(pi: &Permutation, one_indexed: bool) -> String {
    let off = one_indexed as usize;
    let parts: Vec<String> = pi.image().iter().map(|v| (v + off).to_string()).collect();
    parts.join(" ")
}

/// One `k c[k]` line per cardinality.
pub fn format_profile(profile: &CoverageProfile) -> String {
    let mut out = String::new();
    for (k, c) in profile.values().iter().enumerate() {
        writeln!(out, "{k} {c}").unwrap();
    }
    out
}
