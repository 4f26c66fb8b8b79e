//! Prisms `πG`: two copies of `G` joined by the matching `v — π(v)'`.
//!
//! In the combined graph, copy-1 vertex `v` has index `v` and copy-2 vertex
//! `v'` has index `n + v`. The cross edges are `{v, n + π(v)}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// A bijection on `0..n` with its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect(), inverse: (0..n).collect() }
    }

    /// `image[v] = π(v)`; must be a bijection on `0..image.len()`.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut inverse = vec![usize::MAX; n];
        for (v, &w) in image.iter().enumerate() {
            if w >= n {
                return Err(Error::InvalidPermutation(format!("image {w} out of range for n = {n}")));
            }
            if inverse[w] != usize::MAX {
                return Err(Error::InvalidPermutation(format!("{w} is the image of two elements")));
            }
            inverse[w] = v;
        }
        Ok(Permutation { image, inverse })
    }

    /// Product of disjoint cycles, each `(a b c)` meaning `a ↦ b ↦ c ↦ a`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut seen = VertexSet::EMPTY;
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::InvalidPermutation(format!("cycle element {a} out of range for n = {n}")));
                }
                if seen.contains(a) {
                    return Err(Error::InvalidPermutation(format!("{a} appears in more than one cycle position")));
                }
                seen.insert(a);
                image[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_image(image)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn preimage(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation { image: self.inverse.clone(), inverse: self.image.clone() }
    }

    /// `{π(v) : v ∈ s}`.
    pub fn apply_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.image[v]).collect()
    }

    /// Non-trivial cycles in canonical form (each starting at its least
    /// element, cycles ordered by that element).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.image[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.image[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation such as `(1 2 3)`; `()` for the identity.
    pub fn cycle_notation(&self, one_indexed: bool) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let off = one_indexed as usize;
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| (v + off).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let image = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_image(image).map_err(serde::de::Error::custom)
    }
}

/// Which way [`PrismGraph::mirror_set`] translates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `v ↦ n + π(v)`
    ToCopy2,
    /// `n + w ↦ π⁻¹(w)`
    ToCopy1,
}

/// `πG` together with the `G` and `π` it was built from.
#[derive(Debug, Clone)]
pub struct PrismGraph {
    base: Graph,
    pi: Permutation,
    combined: Graph,
}

impl PrismGraph {
    pub fn build(base: &Graph, pi: &Permutation) -> Result<Self> {
        let n = base.n();
        if pi.n() != n {
            return Err(Error::SizeMismatch { graph: n, perm: pi.n() });
        }
        if 2 * n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES / 2 });
        }
        let edges = base
            .edges()
            .chain(base.edges().map(|(u, v)| (n + u, n + v)))
            .chain((0..n).map(|v| (v, n + pi.apply(v))));
        let combined = Graph::from_edges(2 * n, edges.collect::<Vec<_>>())?;
        Ok(PrismGraph { base: base.clone(), pi: pi.clone(), combined })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn graph(&self) -> &Graph {
        &self.combined
    }

    /// Order of the base graph; the prism has `2n` vertices.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn copy1(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn copy2(&self) -> VertexSet {
        VertexSet::full(self.n()).shifted(self.n())
    }

    /// Index of the mirror image `u'` of a copy-1 vertex.
    pub fn mirror(&self, u: usize) -> usize {
        self.n() + u
    }

    /// Translate a set living in one copy across the matching.
    pub fn mirror_set(&self, s: VertexSet, direction: Direction) -> Result<VertexSet> {
        let n = self.n();
        if let Some(v) = s.max() {
            if v >= 2 * n {
                return Err(Error::VertexOutOfRange { vertex: v, n: 2 * n });
            }
        }
        match direction {
            Direction::ToCopy2 => {
                if !s.is_subset(self.copy1()) {
                    return Err(Error::StraddlesCopies);
                }
                Ok(s.iter().map(|v| n + self.pi.apply(v)).collect())
            }
            Direction::ToCopy1 => {
                if !s.is_subset(self.copy2()) {
                    return Err(Error::StraddlesCopies);
                }
                Ok(s.iter().map(|w| self.pi.preimage(w - n)).collect())
            }
        }
    }

    /// `|N[u] ∩ N[u']|` in `πG` for a copy-1 vertex `u` and its mirror `u' = n + u`.
    pub fn compute_i(&self, u: usize) -> Result<usize> {
        if u >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n() });
        }
        let a = self.combined.closed(u);
        let b = self.combined.closed(self.mirror(u));
        Ok(a.intersection(b).len())
    }
}
