//! Anticommutation structure of a Hamiltonian.

use crate::graph::{VertexSet, WeightedGraph};
use crate::model::Hamiltonian;
use crate::scalar::Scalar;

/// One vertex per term, an edge per anticommuting pair, weight = coupling squared.
pub fn frustration_graph<T: Scalar>(h: &Hamiltonian<T>) -> WeightedGraph<T> {
    let m = h.len();
    let terms = h.terms();
    let mut adj = vec![VertexSet::with_capacity(m); m];
    for a in 0..m {
        for b in a + 1..m {
            if !terms[a].string.commutes_unchecked(&terms[b].string) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let weights = terms.iter().map(|t| t.coupling.clone() * t.coupling.clone()).collect();
    WeightedGraph::from_adjacency(adj, weights)
}
