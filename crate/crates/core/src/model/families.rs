//! Generators for the model families used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::model::Hamiltonian;
use crate::pauli::{Pauli, PauliString};
use crate::scalar::Scalar;

use Pauli::{X, Y, Z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

/// A named family with its structural parameters. Couplings are supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Three qubits, five terms, frustration graph a 5-cycle.
    FiveCycle,
    /// The five-cycle model plus a sixth term touching three of its terms.
    SixTerm,
    /// `N` cells of `k` staggered terms `X_m Y_{m+1} ... Y_{m+k-1}`.
    Chain { cells: usize, k: usize, boundary: Boundary },
    /// Two triangles of Pauli terms whose frustration graph has a claw.
    BackToBack,
    /// Arms of staggered terms joined at a complete graph on two vertices per arm.
    Junction { arms: Vec<usize>, k: usize },
}

impl Family {
    /// How many couplings [`generate_model`] expects. `None` means any count
    /// between one and the number of terms is accepted and repeated cyclically.
    pub fn coupling_count(&self) -> Option<usize> {
        match self {
            Family::FiveCycle => Some(5),
            Family::SixTerm => Some(6),
            Family::Chain { k, .. } => Some(*k),
            Family::BackToBack => Some(6),
            Family::Junction { .. } => None,
        }
    }
}

fn string(n: usize, ops: &[(usize, Pauli)]) -> PauliString {
    PauliString::from_ops(n, ops).expect("generator strings are valid")
}

fn check_count<T>(c: &[T], want: usize, what: &str) -> Result<()> {
    if c.len() != want {
        return Err(Error::InvalidArgument(format!("{what} needs {want} couplings, got {}", c.len())));
    }
    Ok(())
}

/// Builds a Hamiltonian of the given family.
pub fn generate_model<T: Scalar>(family: &Family, couplings: &[T]) -> Result<Hamiltonian<T>> {
    match family {
        Family::FiveCycle => {
            check_count(couplings, 5, "five-cycle model")?;
            five_cycle(couplings)
        }
        Family::SixTerm => {
            check_count(couplings, 6, "six-term model")?;
            six_term(couplings)
        }
        Family::Chain { cells, k, boundary } => chain(*cells, *k, couplings, *boundary),
        Family::BackToBack => {
            check_count(couplings, 6, "back-to-back model")?;
            back_to_back(couplings)
        }
        Family::Junction { arms, k } => {
            let g = junction_graph::<T>(arms, *k)?;
            if couplings.is_empty() || couplings.len() > g.order() {
                return Err(Error::InvalidArgument(format!(
                    "junction needs between 1 and {} couplings",
                    g.order()
                )));
            }
            let c = (0..g.order()).map(|i| couplings[i % couplings.len()].clone()).collect();
            realize_graph(&g, c)
        }
    }
}

fn five_cycle_strings() -> Vec<PauliString> {
    vec![
        string(3, &[(0, X), (1, X)]),
        string(3, &[(1, Z)]),
        string(3, &[(0, Y), (1, Y), (2, X)]),
        string(3, &[(0, Y), (1, Z)]),
        string(3, &[(0, X), (1, Z)]),
    ]
}

fn five_cycle<T: Scalar>(c: &[T]) -> Result<Hamiltonian<T>> {
    Hamiltonian::new(3, c.iter().cloned().zip(five_cycle_strings()).collect())
}

fn six_term<T: Scalar>(c: &[T]) -> Result<Hamiltonian<T>> {
    let mut s = five_cycle_strings();
    s.push(string(3, &[(0, Y), (1, Y), (2, Z)]));
    Hamiltonian::new(3, c.iter().cloned().zip(s).collect())
}

fn back_to_back<T: Scalar>(c: &[T]) -> Result<Hamiltonian<T>> {
    let s = vec![
        string(3, &[(1, Z)]),
        string(3, &[(0, Y), (1, X)]),
        string(3, &[(0, X), (1, Y)]),
        string(3, &[(0, Z), (2, Y)]),
        string(3, &[(0, Y), (2, X)]),
        string(3, &[(2, Z)]),
    ];
    Hamiltonian::new(3, c.iter().cloned().zip(s).collect())
}

/// Staggered chain on `cells * k` qubits with couplings `b[m mod k]`.
///
/// Open chains truncate the strings at the last qubit; this keeps the
/// interaction pattern of the untruncated chain on a smaller register.
pub fn chain<T: Scalar>(cells: usize, k: usize, b: &[T], boundary: Boundary) -> Result<Hamiltonian<T>> {
    if cells == 0 || k == 0 {
        return Err(Error::InvalidArgument("chain needs at least one cell and k >= 1".into()));
    }
    check_count(b, k, "chain")?;
    if boundary == Boundary::Periodic && cells < 2 {
        return Err(Error::InvalidArgument("periodic chain needs at least two cells".into()));
    }
    let n = cells * k;
    let mut terms = Vec::with_capacity(n);
    for m in 0..n {
        let mut ops = vec![(m, X)];
        for l in 1..k {
            match boundary {
                Boundary::Open if m + l < n => ops.push((m + l, Y)),
                Boundary::Open => {}
                Boundary::Periodic => ops.push(((m + l) % n, Y)),
            }
        }
        terms.push((b[m % k].clone(), string(n, &ops)));
    }
    Hamiltonian::new(n, terms)
}

/// Junction graph: a clique on `2 * arms.len()` hub vertices where hub pair
/// `(2a, 2a+1)` sits at positions 0 and 1 of arm `a`; arm vertices follow at
/// positions `2, 3, ...` and vertices of one arm are adjacent when their
/// positions differ by less than `k`.
pub fn junction_graph<T: Scalar>(arms: &[usize], k: usize) -> Result<WeightedGraph<T>> {
    if arms.is_empty() || k < 2 {
        return Err(Error::InvalidArgument("junction needs at least one arm and k >= 2".into()));
    }
    let hub = 2 * arms.len();
    let n = hub + arms.iter().sum::<usize>();
    let mut edges = Vec::new();
    for a in 0..hub {
        for b in a + 1..hub {
            edges.push((a, b));
        }
    }
    let mut next = hub;
    for (a, &len) in arms.iter().enumerate() {
        // (vertex, position) along this arm
        let mut line: Vec<(usize, usize)> = vec![(2 * a, 0), (2 * a + 1, 1)];
        for p in 0..len {
            line.push((next + p, p + 2));
        }
        next += len;
        for i in 0..line.len() {
            for j in i + 1..line.len() {
                let (u, pu) = line[i];
                let (v, pv) = line[j];
                if pv - pu < k && !(u < hub && v < hub) {
                    edges.push((u, v));
                }
            }
        }
    }
    WeightedGraph::unweighted(n, &edges)
}

/// One-qubit-per-vertex Pauli realization of an arbitrary graph: vertex `i`
/// becomes `X_i` times `Z_j` for every neighbour `j < i`.
pub fn realize_graph<T: Scalar, W: Scalar>(g: &WeightedGraph<W>, couplings: Vec<T>) -> Result<Hamiltonian<T>> {
    let n = g.order();
    if couplings.len() != n {
        return Err(Error::InvalidArgument(format!("{} couplings for {n} vertices", couplings.len())));
    }
    let terms = (0..n)
        .map(|i| {
            let mut ops = vec![(i, X)];
            ops.extend(g.neighbors(i).filter(|&j| j < i).map(|j| (j, Z)));
            (couplings[i].clone(), string(n, &ops))
        })
        .collect();
    Hamiltonian::new(n, terms)
}
