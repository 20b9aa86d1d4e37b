//! Vertex-weighted simple graphs backed by adjacency bitsets.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A set of vertices of one graph.
pub type VertexSet = FixedBitSet;

/// Builds a vertex set of capacity `n` from indices.
pub fn vertex_set(n: usize, vs: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vs {
        s.insert(v);
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<T = f64> {
    adj: Vec<VertexSet>,
    weights: Vec<T>,
}

impl<T: Scalar> WeightedGraph<T> {
    /// Validates and builds a graph. Weights must be non-negative.
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Vec<T>) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::InvalidGraph(format!("{} weights for {n} vertices", weights.len())));
        }
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidGraph(format!("vertex {v} has a negative weight")));
        }
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if adj[a].contains(b) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Self { adj, weights })
    }

    /// All weights one.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, vec![T::one(); n])
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>, weights: Vec<T>) -> Self {
        Self { adj, weights }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn weight(&self, v: usize) -> &T {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn adjacency(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.order() {
            out.extend(self.adj[a].ones().filter(|&b| b > a).map(|b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn empty_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn all(&self) -> VertexSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// `v` together with its neighbours.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok(())
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.ones().all(|v| {
            let mut rest = s.clone();
            rest.set(v, false);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.ones().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Subgraph induced by `keep`, with the map from new to old labels.
    pub fn induced(&self, keep: &VertexSet) -> (WeightedGraph<T>, Vec<usize>) {
        let old: Vec<usize> = keep.ones().filter(|&v| v < self.order()).collect();
        let mut new_of = vec![usize::MAX; self.order()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let m = old.len();
        let adj = old
            .iter()
            .map(|&v| {
                let mut s = FixedBitSet::with_capacity(m);
                for u in self.adj[v].ones() {
                    if new_of[u] != usize::MAX {
                        s.insert(new_of[u]);
                    }
                }
                s
            })
            .collect();
        let weights = old.iter().map(|&v| self.weights[v].clone()).collect();
        (WeightedGraph { adj, weights }, old)
    }

    pub fn with_weights(&self, weights: Vec<T>) -> Result<Self> {
        Self::new(self.order(), &self.edges(), weights)
    }

    pub fn map_weights<U: Scalar>(&self, f: impl Fn(&T) -> U) -> WeightedGraph<U> {
        WeightedGraph { adj: self.adj.clone(), weights: self.weights.iter().map(f).collect() }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        let mut weights = self.weights.clone();
        for v in 0..n {
            weights[perm[v]] = self.weights[v].clone();
            for u in self.adj[v].ones() {
                adj[perm[v]].insert(perm[u]);
            }
        }
        Self { adj, weights }
    }
}
