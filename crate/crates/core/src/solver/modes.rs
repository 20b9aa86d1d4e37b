use num_complex::Complex;
use serde::Serialize;

use super::{simplicial_extension, Extension, TransferOperator};
use crate::error::{Error, Result};
use crate::frustration::frustration_graph;
use crate::graph::vertex_set;
use crate::indpoly::{polynomial_without, single_particle_energies, weighted_independence_polynomial};
use crate::indpoly::{IndependencePolynomial, SingleParticleEnergies};
use crate::model::Hamiltonian;
use crate::pauli::{sum_operator_norm, OperatorSum};
use crate::recognition::classify;

/// Largest register for which checks fall back to dense operator norms.
pub const DENSE_CHECK_QUBITS: usize = 12;

/// One fermionic ladder operator `psi = T(-u) chi T(u) / N` with `u = 1/energy`.
#[derive(Clone, Debug)]
pub struct IncognitoMode {
    pub energy: f64,
    pub u: f64,
    pub normalization: f64,
    pub operator: OperatorSum<f64>,
}

impl IncognitoMode {
    pub fn adjoint(&self) -> OperatorSum<f64> {
        self.operator.adjoint()
    }
}

/// Modes of a free Hamiltonian together with what was needed to build them.
#[derive(Clone, Debug)]
pub struct ModeSet {
    pub extension: Extension<f64>,
    pub energies: SingleParticleEnergies,
    pub polynomial: IndependencePolynomial<f64>,
    /// Ascending in energy.
    pub modes: Vec<IncognitoMode>,
}

/// Builds the modes on the ancilla-extended Hamiltonian. Uses `clique` when
/// given, otherwise the first simplicial clique found.
pub fn incognito_modes(h: &Hamiltonian<f64>, clique: Option<&[usize]>, budget: u64) -> Result<ModeSet> {
    let g = frustration_graph(h);
    let report = classify(&g, budget)?;
    if !report.free {
        return Err(Error::NotFree(report.obstruction().unwrap_or_default()));
    }
    let clique = match clique {
        Some(c) => c.to_vec(),
        None => report.simplicial_cliques.first().cloned().ok_or(Error::NotSimplicial)?,
    };
    let ext = simplicial_extension(h, &clique)?;
    let poly = weighted_independence_polynomial(&g);
    let energies = single_particle_energies(&poly)?;
    if let Some(j) = energies.levels.iter().position(|l| l.multiplicity > 1) {
        return Err(Error::DegenerateRoot { index: j });
    }
    let without_clique = polynomial_without(&g, &vertex_set(g.order(), clique.iter().copied()));
    let dpoly = poly.derivative();
    let t = TransferOperator::new(&ext.hamiltonian)?;
    let chi = OperatorSum::from_term(&crate::pauli::PauliTerm::hermitian(ext.chi.clone()), 1.0);

    let mut modes = Vec::with_capacity(energies.levels.len());
    for (j, level) in energies.levels.iter().enumerate() {
        let u = 1.0 / level.energy;
        let x = -u * u;
        let n2 = 16.0 * u * u * without_clique.eval_f64(x) * dpoly.eval_f64(x);
        if !(n2 > 0.0) {
            return Err(Error::BadNormalization { index: j, value: n2 });
        }
        let norm = n2.sqrt();
        let op = t.at(&-u)?.mul(&chi)?.mul(&t.at(&u)?)?.scale(&Complex::new(1.0 / norm, 0.0));
        modes.push(IncognitoMode { energy: level.energy, u, normalization: norm, operator: op });
    }
    Ok(ModeSet { extension: ext, energies, polynomial: poly, modes })
}

/// Residual of each mode relation, measured as a dense operator norm when the
/// register is small and as the largest coefficient otherwise.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ModeChecks {
    /// `psi_j^2 = 0`.
    pub nilpotent: f64,
    /// `{psi_i, psi_j^dagger} = delta_ij`.
    pub canonical: f64,
    /// `{psi_i, psi_j} = 0`.
    pub mutual: f64,
    /// `[H, psi_j] = 2 e_j psi_j` and `[H, psi_j^dagger] = -2 e_j psi_j^dagger`.
    pub ladder: f64,
    /// `sum_j e_j [psi_j, psi_j^dagger] = H`.
    pub reconstruction: f64,
    /// `{psi_j, chi} = (4 / N_j) P_{G-K}(-u_j^2)`.
    pub chi_anticommutator: f64,
    /// `T(u_j) psi_j = 0` and `psi_j^dagger T(u_j) = 0`.
    pub annihilation: f64,
    /// `(u_j + u) T(u) psi_j = (u_j - u) psi_j T(u)` at a few `u`.
    pub exchange: f64,
    pub dense: bool,
}

impl ModeChecks {
    pub fn max(&self) -> f64 {
        [
            self.nilpotent,
            self.canonical,
            self.mutual,
            self.ladder,
            self.reconstruction,
            self.chi_anticommutator,
            self.annihilation,
            self.exchange,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `sum_j e_j [psi_j, psi_j^dagger]`.
pub fn reconstruct(modes: &[IncognitoMode]) -> Result<OperatorSum<f64>> {
    let n = modes.first().map(|m| m.operator.num_qubits()).ok_or_else(|| Error::InvalidArgument("no modes".into()))?;
    let mut acc = OperatorSum::zero(n);
    for m in modes {
        acc = acc.add(&m.operator.commutator(&m.adjoint())?.scale_real(&m.energy))?;
    }
    Ok(acc)
}

fn size(s: &OperatorSum<f64>, dense: bool) -> Result<f64> {
    if dense {
        sum_operator_norm(s, DENSE_CHECK_QUBITS)
    } else {
        Ok(s.max_abs())
    }
}

pub fn check_modes(set: &ModeSet) -> Result<ModeChecks> {
    let h = set.extension.hamiltonian.to_operator_sum();
    let n = h.num_qubits();
    let dense = n <= DENSE_CHECK_QUBITS;
    let mut c = ModeChecks { dense, ..Default::default() };
    let t = TransferOperator::new(&set.extension.hamiltonian)?;
    let g = frustration_graph(&set.extension.hamiltonian);
    let without = polynomial_without(&g, &vertex_set(g.order(), set.extension.clique.iter().copied()));
    let chi = OperatorSum::from_term(&crate::pauli::PauliTerm::hermitian(set.extension.chi.clone()), 1.0);
    let id = OperatorSum::<f64>::identity(n);
    for (i, mi) in set.modes.iter().enumerate() {
        let psi = &mi.operator;
        let dag = mi.adjoint();
        c.nilpotent = c.nilpotent.max(size(&psi.mul(psi)?, dense)?);
        for mj in &set.modes[i..] {
            let mut canon = psi.anticommutator(&mj.adjoint())?;
            if std::ptr::eq(mi, mj) {
                canon = canon.sub(&id)?;
            }
            c.canonical = c.canonical.max(size(&canon, dense)?);
            c.mutual = c.mutual.max(size(&psi.anticommutator(&mj.operator)?, dense)?);
        }
        let two_e = 2.0 * mi.energy;
        let up = h.commutator(psi)?.sub(&psi.scale_real(&two_e))?;
        let down = h.commutator(&dag)?.add(&dag.scale_real(&two_e))?;
        c.ladder = c.ladder.max(size(&up, dense)?).max(size(&down, dense)?);

        let expected = 4.0 / mi.normalization * without.eval_f64(-mi.u * mi.u);
        let ac = psi.anticommutator(&chi)?.sub(&id.scale_real(&expected))?;
        c.chi_anticommutator = c.chi_anticommutator.max(size(&ac, dense)?);

        let tu = t.at(&mi.u)?;
        let a1 = tu.mul(psi)?;
        let a2 = dag.mul(&tu)?;
        let scale = tu.l1_norm().max(1.0);
        c.annihilation = c.annihilation.max(size(&a1, dense)? / scale).max(size(&a2, dense)? / scale);

        for u in [0.3, -0.7, 1.1] {
            let tu = t.at(&u)?;
            let lhs = tu.mul(psi)?.scale_real(&(mi.u + u));
            let rhs = psi.mul(&tu)?.scale_real(&(mi.u - u));
            c.exchange = c.exchange.max(size(&lhs.sub(&rhs)?, dense)?);
        }
    }
    c.reconstruction = size(&reconstruct(&set.modes)?.sub(&h)?, dense)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_model, Family};
    use crate::recognition::find_simplicial_cliques;

    #[test]
    fn single_edge_reconstructs_exactly() {
        let h = Hamiltonian::<f64>::parse("3 X0\n4 Z0").unwrap();
        let set = incognito_modes(&h, None, 1000).unwrap();
        assert_eq!(set.modes.len(), 1);
        assert!((set.modes[0].energy - 5.0).abs() < 1e-12);
        let c = check_modes(&set).unwrap();
        assert!(c.max() < 1e-12, "{c:?}");
    }

    #[test]
    fn five_and_six_term_modes() {
        let h5 = generate_model(&Family::FiveCycle, &[0.9, -1.2, 0.7, 1.4, -0.6]).unwrap();
        let h6 = generate_model(&Family::SixTerm, &[0.9, -1.2, 0.7, 1.4, -0.6, 0.45]).unwrap();
        for h in [h5, h6] {
            for k in find_simplicial_cliques(&frustration_graph(&h), 1000).unwrap() {
                let set = incognito_modes(&h, Some(&k), 1000).unwrap();
                let c = check_modes(&set).unwrap();
                assert!(c.dense);
                assert!(c.max() < 1e-8, "{k:?} {c:?}");
            }
        }
    }

    #[test]
    fn refuses_repeated_energies() {
        let h = Hamiltonian::<f64>::parse("1 X0\n1 Z0\n1 X1\n1 Z1").unwrap();
        assert!(matches!(incognito_modes(&h, None, 1000), Err(Error::DegenerateRoot { .. })));
    }
}
