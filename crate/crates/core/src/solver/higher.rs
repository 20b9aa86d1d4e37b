use super::TransferOperator;
use crate::error::{Error, Result};
use crate::frustration::frustration_graph;
use crate::indpoly::{single_particle_energies, weighted_independence_polynomial};
use crate::model::Hamiltonian;
use crate::pauli::OperatorSum;
use crate::scalar::Scalar;

/// `H^(k)` from the single-particle energies:
/// `sum_j u_j^-k / d_u[P(-u^2)](u_j) * (T(-u_j) T'(u_j) - (-1)^k T(u_j) T'(-u_j))`.
/// `H^(1)` is the Hamiltonian itself. Needs simple roots.
pub fn higher_hamiltonian(h: &Hamiltonian<f64>, k: usize) -> Result<OperatorSum<f64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("higher Hamiltonians start at k = 1".into()));
    }
    let g = frustration_graph(h);
    let p = weighted_independence_polynomial(&g);
    let e = single_particle_energies(&p)?;
    if let Some(j) = e.levels.iter().position(|l| l.multiplicity > 1) {
        return Err(Error::DegenerateRoot { index: j });
    }
    let dp = p.derivative();
    let t = TransferOperator::new(h)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut acc = OperatorSum::zero(h.num_qubits());
    for l in &e.levels {
        let u = 1.0 / l.energy;
        // d/du P(-u^2) = -2u P'(-u^2)
        let du = -2.0 * u * dp.eval_f64(-u * u);
        let a = t.at(&-u)?.mul(&t.derivative_at(&u)?)?;
        let b = t.at(&u)?.mul(&t.derivative_at(&-u)?)?;
        let bracket = a.sub(&b.scale_real(&sign))?;
        acc = acc.add(&bracket.scale_real(&(u.powi(-(k as i32)) / du)))?;
    }
    Ok(acc)
}

/// `H^(k)` as the coefficient of `u^(k-1)` in `-T(-u) T'(u) / P(-u^2)`,
/// computed by power-series division. Works in any scalar type.
pub fn higher_hamiltonian_series<T: Scalar>(h: &Hamiltonian<T>, k: usize) -> Result<OperatorSum<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("higher Hamiltonians start at k = 1".into()));
    }
    let t = TransferOperator::new(h)?;
    let q = t.charges();
    let n = h.num_qubits();
    // 1/P(-u^2) = sum_m s_m u^m
    let p = weighted_independence_polynomial(&frustration_graph(h));
    let mut pc = vec![T::zero(); k];
    for (j, c) in p.coefficients().iter().enumerate() {
        if 2 * j < k {
            pc[2 * j] = if j % 2 == 0 { c.clone() } else { -c.clone() };
        }
    }
    let mut s = vec![T::zero(); k];
    s[0] = T::one() / pc[0].clone();
    for m in 1..k {
        let mut acc = T::zero();
        for i in 1..=m {
            acc = acc + pc[i].clone() * s[m - i].clone();
        }
        s[m] = -acc / pc[0].clone();
    }
    // -T(-u) T'(u) = sum_m A_m u^m, A_m = -sum_{a+b=m+1} b (-1)^b Q_a Q_b
    let mut out = OperatorSum::zero(n);
    for m in 0..k {
        let mut am = OperatorSum::zero(n);
        for b in 1..=(m + 1) {
            let a = m + 1 - b;
            if a >= q.len() || b >= q.len() {
                continue;
            }
            let mut w = crate::scalar::from_usize::<T>(b);
            if b % 2 == 1 {
                w = -w;
            }
            am = am.sub(&q[a].mul(&q[b])?.scale_real(&w))?;
        }
        out = out.add(&am.scale_real(&s[k - 1 - m]))?;
    }
    Ok(out)
}
