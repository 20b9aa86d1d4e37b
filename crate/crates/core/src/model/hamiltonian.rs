use std::fmt::Write as _;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::pauli::{OperatorSum, Pauli, PauliString, PauliTerm};
use crate::scalar::Scalar;

/// One weighted Pauli string of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<T = f64> {
    pub coupling: T,
    pub string: PauliString,
}

/// A sum of distinct, non-identity Pauli strings with real nonzero couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian<T = f64> {
    n: usize,
    terms: Vec<Term<T>>,
}

impl<T: Scalar> Hamiltonian<T> {
    /// Merges repeated strings, drops zero couplings and rejects identity terms.
    pub fn new(n: usize, terms: Vec<(T, PauliString)>) -> Result<Self> {
        let mut out: Vec<Term<T>> = Vec::new();
        for (c, s) in terms {
            if s.num_qubits() != n {
                return Err(Error::QubitMismatch(n, s.num_qubits()));
            }
            if s.is_identity() {
                return Err(Error::InvalidModel("identity term".into()));
            }
            match out.iter_mut().find(|t| t.string == s) {
                Some(t) => t.coupling = t.coupling.clone() + c,
                None => out.push(Term { coupling: c, string: s }),
            }
        }
        out.retain(|t| !t.coupling.is_zero());
        if out.is_empty() {
            return Err(Error::InvalidModel("no terms".into()));
        }
        Ok(Self { n, terms: out })
    }

    /// Reads lines of the form `coupling P q P q ...`, e.g. `0.5 X0 Y1`.
    /// `#` starts a comment. The register size is one past the largest qubit.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        let mut n = 0;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let c = tokens.next().unwrap();
            let coupling = T::parse_decimal(c).ok_or_else(|| err(format!("bad coupling {c:?}")))?;
            let mut ops = Vec::new();
            for tok in tokens {
                let mut chars = tok.chars();
                let p = chars
                    .next()
                    .and_then(Pauli::from_char)
                    .filter(|p| *p != Pauli::I)
                    .ok_or_else(|| err(format!("bad operator {tok:?}")))?;
                let q: usize = chars.as_str().parse().map_err(|_| err(format!("bad qubit in {tok:?}")))?;
                if ops.iter().any(|&(r, _)| r == q) {
                    return Err(err(format!("qubit {q} repeated")));
                }
                ops.push((q, p));
                n = n.max(q + 1);
            }
            if ops.is_empty() {
                return Err(err("identity term".into()));
            }
            raw.push((lineno, coupling, ops));
        }
        if raw.is_empty() {
            return Err(Error::InvalidModel("no terms".into()));
        }
        let mut terms = Vec::with_capacity(raw.len());
        for (line, c, ops) in raw {
            let s = PauliString::from_ops(n, &ops).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            terms.push((c, s));
        }
        Self::new(n, terms)
    }

    /// Text form readable by [`Hamiltonian::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.terms {
            let _ = writeln!(s, "{} {}", t.coupling, t.string);
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn couplings(&self) -> Vec<T> {
        self.terms.iter().map(|t| t.coupling.clone()).collect()
    }

    pub fn term_operator(&self, j: usize) -> PauliTerm {
        PauliTerm::hermitian(self.terms[j].string.clone())
    }

    /// Same strings, new couplings (all nonzero).
    pub fn with_couplings(&self, couplings: Vec<T>) -> Result<Self> {
        if couplings.len() != self.terms.len() {
            return Err(Error::InvalidArgument(format!(
                "{} couplings for {} terms",
                couplings.len(),
                self.terms.len()
            )));
        }
        if couplings.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidArgument("zero coupling".into()));
        }
        let terms = self
            .terms
            .iter()
            .zip(couplings)
            .map(|(t, c)| Term { coupling: c, string: t.string.clone() })
            .collect();
        Ok(Self { n: self.n, terms })
    }

    /// Appends terms on a register of `n >= num_qubits()` qubits.
    pub fn extended(&self, n: usize, extra: Vec<(T, PauliString)>) -> Result<Self> {
        let mut all: Vec<_> = self.terms.iter().map(|t| (t.coupling.clone(), t.string.extended(n))).collect();
        all.extend(extra);
        Self::new(n, all)
    }

    pub fn to_operator_sum(&self) -> OperatorSum<T> {
        let mut s = OperatorSum::zero(self.n);
        for t in &self.terms {
            s.add_term(t.string.clone(), num_complex::Complex::new(t.coupling.clone(), T::zero()));
        }
        s
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Hamiltonian<U> {
        Hamiltonian {
            n: self.n,
            terms: self.terms.iter().map(|t| Term { coupling: f(&t.coupling), string: t.string.clone() }).collect(),
        }
    }

    /// Exact copy; floating couplings convert without rounding.
    pub fn to_exact(&self) -> Hamiltonian<BigRational> {
        self.map_scalar(|c| c.to_rational())
    }

    pub fn to_f64(&self) -> Hamiltonian<f64> {
        self.map_scalar(|c| c.to_f64())
    }

    /// Largest coupling modulus.
    pub fn max_coupling(&self) -> f64 {
        self.terms.iter().map(|t| t.coupling.to_f64().abs()).fold(0.0, f64::max)
    }
}
