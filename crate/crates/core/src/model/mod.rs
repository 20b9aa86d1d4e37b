//! Hamiltonians, model families and the graph file format.

mod families;
mod graph_file;
mod hamiltonian;

pub use families::{chain, generate_model, junction_graph, realize_graph, Boundary, Family};
pub use graph_file::{read_graph, write_graph};
pub use hamiltonian::{Hamiltonian, Term};
