use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("operator sum exceeded {limit} terms")]
    TermLimit { limit: usize },

    #[error("dense conversion refused: {n} qubits exceeds cap of {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("vertex set is not a clique")]
    NotAClique,

    #[error("clique is not simplicial")]
    NotSimplicial,

    #[error("frustration graph is not even-hole and claw free: {0}")]
    NotFree(String),

    #[error("search budget of {budget} steps exhausted without a decision")]
    Undecided { budget: u64 },

    #[error("independence polynomial is degenerate: {0}")]
    DegeneratePolynomial(String),

    #[error("found {found} real roots (with multiplicity) but expected {expected}")]
    ComplexRoots { found: usize, expected: usize },

    #[error("root {index} is degenerate; modes need simple roots")]
    DegenerateRoot { index: usize },

    #[error("independence number {alpha} exceeds qubit count {n}")]
    AlphaExceedsQubits { alpha: usize, n: usize },

    #[error("normalization of mode {index} is not positive ({value})")]
    BadNormalization { index: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
