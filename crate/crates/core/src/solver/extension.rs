use crate::error::{Error, Result};
use crate::frustration::frustration_graph;
use crate::graph::vertex_set;
use crate::model::Hamiltonian;
use crate::pauli::{Pauli, PauliString};
use crate::recognition::is_simplicial_clique;
use crate::scalar::Scalar;

/// A Hamiltonian enlarged by one ancilla qubit so that `Z` on the ancilla
/// anticommutes with exactly the terms of a simplicial clique.
#[derive(Clone, Debug)]
pub struct Extension<T = f64> {
    pub hamiltonian: Hamiltonian<T>,
    /// Term indices of the clique (unchanged by the extension).
    pub clique: Vec<usize>,
    /// The simplicial mode, `Z` on the ancilla.
    pub chi: PauliString,
}

/// Multiplies every clique term by `X` on a new last qubit.
pub fn simplicial_extension<T: Scalar>(h: &Hamiltonian<T>, clique: &[usize]) -> Result<Extension<T>> {
    let g = frustration_graph(h);
    for &v in clique {
        g.check_vertex(v)?;
    }
    let set = vertex_set(g.order(), clique.iter().copied());
    if clique.is_empty() || set.count_ones(..) != clique.len() || !g.is_clique(&set) {
        return Err(Error::NotAClique);
    }
    if !is_simplicial_clique(&g, &set) {
        return Err(Error::NotSimplicial);
    }
    let n = h.num_qubits();
    let ancilla = PauliString::from_ops(n + 1, &[(n, Pauli::X)])?;
    let terms = h
        .terms()
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let s = t.string.extended(n + 1);
            let s = if set.contains(j) { s.mul_unchecked(&ancilla).1 } else { s };
            (t.coupling.clone(), s)
        })
        .collect();
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    Ok(Extension {
        hamiltonian: Hamiltonian::new(n + 1, terms)?,
        clique: sorted,
        chi: PauliString::from_ops(n + 1, &[(n, Pauli::Z)])?,
    })
}
