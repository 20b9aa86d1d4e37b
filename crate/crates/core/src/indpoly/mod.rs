//! Weighted independence polynomials and the single-particle energies they encode.

mod exact;
mod roots;
mod spectrum;

pub(crate) use exact::ExactPoly;
pub(crate) use roots::negated_roots_of;
pub use roots::{single_particle_energies, EnergyLevel, SingleParticleEnergies};
pub use spectrum::{free_spectrum, SpectrumLevel, MAX_EXPANDED_MODES};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::scalar::{CompensatedSum, Scalar};

/// Calls `f` on every independent set inside `within`, the empty set included.
pub fn for_each_independent_set<T: Scalar>(g: &WeightedGraph<T>, within: &VertexSet, mut f: impl FnMut(&[usize])) {
    fn rec<T: Scalar>(g: &WeightedGraph<T>, current: &mut Vec<usize>, cand: &VertexSet, f: &mut dyn FnMut(&[usize])) {
        f(current);
        for v in cand.ones() {
            let mut next = cand.clone();
            next.remove_range(..v + 1);
            next.difference_with(g.adjacency(v));
            current.push(v);
            rec(g, current, &next, f);
            current.pop();
        }
    }
    let mut cand = within.clone();
    cand.grow(g.order());
    rec(g, &mut Vec::new(), &cand, &mut f);
}

/// Largest independent set size.
pub fn independence_number<T: Scalar>(g: &WeightedGraph<T>) -> usize {
    let mut best = 0;
    for_each_independent_set(g, &g.all(), |s| best = best.max(s.len()));
    best
}

/// `P(x) = sum_k c_k x^k`, where `c_k` sums the weight products of the
/// independent sets of size `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependencePolynomial<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> IndependencePolynomial<T> {
    /// Trailing zero coefficients are dropped.
    pub fn from_coefficients(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `P(-u^2)`.
    pub fn at_minus_square(&self, u: &T) -> T {
        self.eval(&-(u.clone() * u.clone()))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * crate::scalar::from_usize::<T>(k))
            .collect::<Vec<_>>();
        Self::from_coefficients(if coeffs.is_empty() { vec![T::zero()] } else { coeffs })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|k| {
                self.coeffs.get(k).cloned().unwrap_or_else(T::zero) + other.coeffs.get(k).cloned().unwrap_or_else(T::zero)
            })
            .collect();
        Self::from_coefficients(c)
    }

    /// `w * x^shift * P(x)`.
    pub fn scaled_shift(&self, w: &T, shift: usize) -> Self {
        let mut c = vec![T::zero(); shift];
        c.extend(self.coeffs.iter().map(|v| v.clone() * w.clone()));
        Self::from_coefficients(c)
    }

    pub fn to_rational(&self) -> IndependencePolynomial<BigRational> {
        IndependencePolynomial { coeffs: self.coeffs.iter().map(|c| c.to_rational()).collect() }
    }

    pub fn to_f64(&self) -> IndependencePolynomial<f64> {
        IndependencePolynomial { coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect() }
    }
}

/// Independence polynomial of the subgraph induced by `within`.
pub fn independence_polynomial_within<T: Scalar>(g: &WeightedGraph<T>, within: &VertexSet) -> IndependencePolynomial<T> {
    let mut sums: Vec<CompensatedSum<T>> = vec![CompensatedSum::default()];
    for_each_independent_set(g, within, |s| {
        if sums.len() <= s.len() {
            sums.resize(s.len() + 1, CompensatedSum::default());
        }
        let mut w = T::one();
        for &v in s {
            w = w * g.weight(v).clone();
        }
        sums[s.len()].add(w);
    });
    IndependencePolynomial::from_coefficients(sums.iter().map(|s| s.value()).collect())
}

pub fn weighted_independence_polynomial<T: Scalar>(g: &WeightedGraph<T>) -> IndependencePolynomial<T> {
    independence_polynomial_within(g, &g.all())
}

/// `P_{G-W}` for a vertex set `W`.
pub fn polynomial_without<T: Scalar>(g: &WeightedGraph<T>, removed: &VertexSet) -> IndependencePolynomial<T> {
    let mut keep = g.all();
    keep.difference_with(removed);
    independence_polynomial_within(g, &keep)
}

/// Right side of the clique recurrence,
/// `P_{G-K}(x) + x * sum_{v in K} w_v P_{G - N[v]}(x)`.
pub fn clique_recurrence<T: Scalar>(g: &WeightedGraph<T>, clique: &[usize]) -> Result<IndependencePolynomial<T>> {
    for &v in clique {
        g.check_vertex(v)?;
    }
    let k = crate::graph::vertex_set(g.order(), clique.iter().copied());
    if k.count_ones(..) != clique.len() || !g.is_clique(&k) {
        return Err(Error::NotAClique);
    }
    let mut acc = polynomial_without(g, &k);
    for &v in clique {
        let term = polynomial_without(g, &g.closed_neighborhood(v));
        acc = acc.add(&term.scaled_shift(g.weight(v), 1));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceCheck {
    pub holds: bool,
    /// Largest coefficient difference relative to the largest coefficient.
    pub max_relative_deviation: f64,
}

/// Compares the polynomial with its clique expansion. Exact scalars must agree
/// exactly; floating ones to `1e-12` relative.
pub fn verify_clique_recurrence<T: Scalar>(g: &WeightedGraph<T>, clique: &[usize]) -> Result<RecurrenceCheck> {
    let direct = weighted_independence_polynomial(g);
    let rec = clique_recurrence(g, clique)?;
    let n = direct.coeffs.len().max(rec.coeffs.len());
    let scale = direct.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut exact_equal = true;
    let mut dev: f64 = 0.0;
    for k in 0..n {
        let a = direct.coeffs.get(k).cloned().unwrap_or_else(T::zero);
        let b = rec.coeffs.get(k).cloned().unwrap_or_else(T::zero);
        let diff = a - b;
        exact_equal &= diff.is_zero();
        dev = dev.max(diff.to_f64().abs() / scale);
    }
    let holds = if T::is_exact() { exact_equal } else { dev <= 1e-12 };
    Ok(RecurrenceCheck { holds, max_relative_deviation: dev })
}
