//! Simple undirected graphs on at most 64 vertices with bitset adjacency.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::proportion::Proportion;

/// Bit width of [`VertexSet`]; also the largest supported graph order.
pub const MAX_VERTICES: usize = 64;

/// A subset of `0..64` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Shift every member by `offset` (used to address the second prism copy).
    pub fn shifted(self, offset: usize) -> Self {
        VertexSet(self.0 << offset)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} exceeds bitset width")));
        }
        Ok(vs.into_iter().collect())
    }
}

/// Immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are rejected, as are
    /// loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            m += 1;
        }
        Ok(Graph { n, adj, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.closed(v))
    }

    #[inline]
    pub(crate) fn closed(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    /// `N[S]` as a set.
    pub fn dominated_by(&self, s: VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(s.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(self.closed(v))))
    }

    /// `|N[S]|`; zero for the empty set.
    pub fn coverage(&self, s: VertexSet) -> Result<usize> {
        Ok(self.dominated_by(s)?.len())
    }

    pub fn is_dominating(&self, s: VertexSet) -> Result<bool> {
        Ok(self.coverage(s)? == self.n)
    }

    /// `|N[S]| / n >= p`, decided in integers.
    pub fn is_p_dominating(&self, s: VertexSet, p: Proportion) -> Result<bool> {
        Ok(p.is_met_by(self.coverage(s)?, self.n))
    }

    /// `Δ(G)` together with every vertex attaining it.
    pub fn max_degree(&self) -> (usize, VertexSet) {
        let delta = (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0);
        let argmax = (0..self.n).filter(|&v| self.degree(v) == delta).collect();
        (delta, argmax)
    }

    /// No two members of `s` are adjacent.
    pub fn is_independent(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| self.adj[v].is_disjoint(s)))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen.len() == self.n
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let off = self.n;
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(self.n + other.n, edges.collect::<Vec<_>>())
    }

    /// Induced subgraph on `0..k`, relabelled identically.
    pub fn restricted_prefix(&self, k: usize) -> Result<Graph> {
        let edges: Vec<_> = self.edges().filter(|&(_, v)| v < k).collect();
        Graph::from_edges(k, edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        Self::generate(Family::Path, n)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        Self::generate(Family::Cycle, n)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Self::generate(Family::Complete, n)
    }

    pub fn star(n: usize) -> Result<Graph> {
        Self::generate(Family::Star, n)
    }

    pub fn random(n: usize, seed: u64, density: Density) -> Result<Graph> {
        Self::generate(Family::Random { seed, density }, n)
    }

    /// Deterministic labelled member of a graph family.
    ///
    /// Path has edges `{i, i+1}`, cycle adds `{n-1, 0}` (requires `n >= 3`),
    /// star has center `0`. See [`Family::Random`] for the random scheme.
    pub fn generate(family: Family, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidFamily("n must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES });
        }
        let edges: Vec<(usize, usize)> = match family {
            Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
            Family::Cycle => {
                if n < 3 {
                    return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
                }
                (1..n).map(|i| (i - 1, i)).chain([(0, n - 1)]).collect()
            }
            Family::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
            Family::Star => (1..n).map(|i| (0, i)).collect(),
            Family::Random { seed, density } => {
                let mut rng = SplitMix64::new(seed);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if density.accepts(rng.next_u64()) {
                            edges.push((u, v));
                        }
                    }
                }
                edges
            }
        };
        Graph::from_edges(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Edge probability for random graphs: a fraction `num/den` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Density {
    num: u64,
    den: u64,
}

impl Density {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidFamily(format!("density {num}/{den} is not in [0,1]")));
        }
        Ok(Density { num, den })
    }

    pub fn half() -> Self {
        Density { num: 1, den: 2 }
    }

    /// `x / 2^64 < num / den`, evaluated exactly.
    fn accepts(self, x: u64) -> bool {
        (x as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Density {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("cannot parse density {s:?}; expected a/b"));
        let (a, b) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        Density::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
    }
}

/// Graph families accepted by [`Graph::generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    /// G(n, p) over the pairs `(u, v)`, `u < v`, visited in lexicographic
    /// order. Each pair consumes one output `x` of SplitMix64 seeded with
    /// `seed` and is kept iff `x * den < num * 2^64`.
    Random { seed: u64, density: Density },
}

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen for the random family because
/// it is a few lines in any language, so seeded instances port exactly.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}
