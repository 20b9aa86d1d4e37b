use crate::error::Result;
use crate::frustration::frustration_graph;
use crate::graph::{VertexSet, WeightedGraph};
use crate::indpoly::for_each_independent_set;
use crate::model::Hamiltonian;
use crate::pauli::{OperatorSum, Phase, PauliString};
use crate::scalar::Scalar;

/// Independent-set charges `Q^(k)` and the generating function
/// `T(u) = sum_k (-u)^k Q^(k)`.
#[derive(Clone, Debug)]
pub struct TransferOperator<T = f64> {
    n: usize,
    charges: Vec<OperatorSum<T>>,
}

impl<T: Scalar> TransferOperator<T> {
    pub fn new(h: &Hamiltonian<T>) -> Result<Self> {
        let g = frustration_graph(h);
        Self::within(h, &g, &g.all())
    }

    /// Charges built only from the terms in `set`, i.e. for the induced subgraph.
    pub fn within(h: &Hamiltonian<T>, g: &WeightedGraph<T>, set: &VertexSet) -> Result<Self> {
        let n = h.num_qubits();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for_each_independent_set(g, set, |s| sets.push(s.to_vec()));
        let alpha = sets.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut charges = vec![OperatorSum::zero(n); alpha + 1];
        let terms = h.terms();
        for s in sets {
            let mut phase = Phase::ONE;
            let mut string = PauliString::identity(n);
            let mut coeff = T::one();
            for &v in &s {
                let (p, next) = string.mul_unchecked(&terms[v].string);
                phase = phase * p;
                string = next;
                coeff = coeff * terms[v].coupling.clone();
            }
            // commuting Hermitian factors give a real phase
            debug_assert!(phase.exponent() % 2 == 0);
            charges[s.len()].add_term(string, phase.to_complex::<T>() * coeff);
        }
        Ok(Self { n, charges })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Independence number of the underlying graph.
    pub fn alpha(&self) -> usize {
        self.charges.len() - 1
    }

    pub fn charges(&self) -> &[OperatorSum<T>] {
        &self.charges
    }

    /// `Q^(k)`, zero beyond the independence number.
    pub fn charge(&self, k: usize) -> OperatorSum<T> {
        self.charges.get(k).cloned().unwrap_or_else(|| OperatorSum::zero(self.n))
    }

    /// `T(u)`.
    pub fn at(&self, u: &T) -> Result<OperatorSum<T>> {
        let mut acc = OperatorSum::zero(self.n);
        let mut power = T::one();
        let mu = -u.clone();
        for q in &self.charges {
            acc = acc.add(&q.scale_real(&power))?;
            power = power * mu.clone();
        }
        Ok(acc)
    }

    /// `T'(u) = sum_k k (-1)^k u^(k-1) Q^(k)`.
    pub fn derivative_at(&self, u: &T) -> Result<OperatorSum<T>> {
        let mut acc = OperatorSum::zero(self.n);
        let mut power = -T::one();
        let mut k = T::one();
        for q in self.charges.iter().skip(1) {
            acc = acc.add(&q.scale_real(&(power.clone() * k.clone())))?;
            power = power * -u.clone();
            k = k + T::one();
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_model, Family};
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn single_edge_charges() {
        let h = Hamiltonian::<BigRational>::parse("3 X0\n4 Z0").unwrap();
        let t = TransferOperator::new(&h).unwrap();
        assert_eq!(t.alpha(), 1);
        assert_eq!(t.charge(0), OperatorSum::identity(1));
        assert_eq!(t.charge(1), h.to_operator_sum());
        assert!(t.charge(2).is_zero());
    }

    #[test]
    fn first_charge_is_the_hamiltonian() {
        let h = generate_model(&Family::SixTerm, &[1, 2, 3, 4, 5, 6].map(rat)).unwrap();
        let t = TransferOperator::new(&h).unwrap();
        assert_eq!(t.charge(1), h.to_operator_sum());
        assert_eq!(t.alpha(), 2);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let h = generate_model(&Family::FiveCycle, &[1, 2, 3, 4, 5].map(rat)).unwrap();
        let t = TransferOperator::new(&h).unwrap();
        // T is a polynomial of degree 2, so the symmetric quotient is exact
        let u = BigRational::new(1.into(), 3.into());
        let d = BigRational::new(1.into(), 7.into());
        let q = t.at(&(u.clone() + d.clone())).unwrap().sub(&t.at(&(u.clone() - d.clone())).unwrap()).unwrap();
        let q = q.scale_real(&(rat(1) / (d * rat(2))));
        assert_eq!(q, t.derivative_at(&u).unwrap());
    }
}
