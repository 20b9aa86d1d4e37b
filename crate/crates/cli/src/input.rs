use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use freefermion::graph::WeightedGraph;
use freefermion::model::{generate_model, read_graph, realize_graph, Boundary, Family, Hamiltonian};
use freefermion::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    H5,
    H6,
    Chain,
    Junction,
    BackToBack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryArg {
    Open,
    Periodic,
}

/// Where the model comes from: a file, or a named family with couplings.
#[derive(Args, Clone, Debug, Serialize)]
pub struct ModelArgs {
    /// Hamiltonian file (`coupling P0 P1 ...` per line) or graph file (`p n` header).
    pub input: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    pub model: Option<ModelName>,
    /// Comma-separated couplings; decimals and fractions such as `2/3` are accepted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub couplings: Vec<String>,
    /// Unit cells of a chain.
    #[arg(long = "N")]
    pub cells: Option<usize>,
    /// Terms per cell of a chain or junction arm.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "open")]
    pub boundary: BoundaryArg,
    /// Arm lengths of a junction.
    #[arg(long, value_delimiter = ',')]
    pub arms: Vec<usize>,
    /// Draw random couplings from this seed when none are given.
    #[arg(long)]
    pub seed: Option<u64>,
}

pub enum Input {
    Hamiltonian(Hamiltonian<f64>),
    Graph(WeightedGraph<f64>),
}

impl Input {
    pub fn graph(&self) -> WeightedGraph<f64> {
        match self {
            Input::Hamiltonian(h) => freefermion::frustration::frustration_graph(h),
            Input::Graph(g) => g.clone(),
        }
    }

    /// Qubits of the Hamiltonian, or one per vertex for a bare graph.
    pub fn qubits(&self) -> usize {
        match self {
            Input::Hamiltonian(h) => h.num_qubits(),
            Input::Graph(g) => g.order(),
        }
    }

    /// The Hamiltonian itself, or a one-qubit-per-vertex realization of the
    /// graph with couplings `sqrt(weight)`.
    pub fn hamiltonian(&self) -> Result<Hamiltonian<f64>> {
        match self {
            Input::Hamiltonian(h) => Ok(h.clone()),
            Input::Graph(g) => realize_graph(g, g.weights().iter().map(|w| w.sqrt()).collect()),
        }
    }
}

/// What was actually run, after defaults and random draws are resolved.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedModel {
    pub input: Option<PathBuf>,
    pub family: Option<Family>,
    pub couplings: Vec<f64>,
    pub seed: Option<u64>,
}

fn parse_coupling(s: &str) -> Result<f64> {
    f64::parse_decimal(s)
        .or_else(|| freefermion::scalar::rational_from_decimal(s).map(|r| r.to_f64()))
        .ok_or_else(|| Error::InvalidArgument(format!("cannot read coupling {s:?}")))
}

pub fn random_couplings(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v: f64 = rng.gen_range(0.3..1.5);
            if rng.gen_bool(0.5) { -v } else { v }
        })
        .collect()
}

impl ModelArgs {
    pub fn family(&self) -> Result<Option<Family>> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("--{what} is required for this model")))
        };
        Ok(match self.model {
            None => None,
            Some(ModelName::H5) => Some(Family::FiveCycle),
            Some(ModelName::H6) => Some(Family::SixTerm),
            Some(ModelName::BackToBack) => Some(Family::BackToBack),
            Some(ModelName::Chain) => Some(Family::Chain {
                cells: need(self.cells, "N")?,
                k: need(self.k, "k")?,
                boundary: match self.boundary {
                    BoundaryArg::Open => Boundary::Open,
                    BoundaryArg::Periodic => Boundary::Periodic,
                },
            }),
            Some(ModelName::Junction) => {
                if self.arms.is_empty() {
                    return Err(Error::InvalidArgument("--arms is required for a junction".into()));
                }
                Some(Family::Junction { arms: self.arms.clone(), k: need(self.k, "k")? })
            }
        })
    }

    pub fn load(&self) -> Result<(Input, ResolvedModel)> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            let input = if looks_like_graph(&text) {
                Input::Graph(read_graph(&text)?)
            } else {
                Input::Hamiltonian(Hamiltonian::parse(&text)?)
            };
            let couplings = match &input {
                Input::Hamiltonian(h) => h.couplings(),
                Input::Graph(g) => g.weights().to_vec(),
            };
            let resolved = ResolvedModel { input: Some(path.clone()), family: None, couplings, seed: None };
            return Ok((input, resolved));
        }
        let family = self
            .family()?
            .ok_or_else(|| Error::InvalidArgument("give an input file or --model".into()))?;
        let count = match &family {
            Family::Junction { arms, k } => freefermion::model::junction_graph::<f64>(arms, *k)?.order(),
            f => f.coupling_count().unwrap_or(1),
        };
        let couplings = if !self.couplings.is_empty() {
            self.couplings.iter().map(|s| parse_coupling(s)).collect::<Result<Vec<_>>>()?
        } else if let Some(seed) = self.seed {
            random_couplings(seed, count)
        } else {
            vec![1.0; count]
        };
        let h = generate_model(&family, &couplings)?;
        let resolved = ResolvedModel { input: None, family: Some(family), couplings, seed: self.seed };
        Ok((Input::Hamiltonian(h), resolved))
    }
}

/// Graph files start with a `p n` line once comments are skipped.
fn looks_like_graph(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'))
        .is_some_and(|l| l.starts_with("p ") || l == "p")
}
