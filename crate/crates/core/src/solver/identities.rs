//! Residuals of the algebraic identities behind the solution. Each function
//! returns the residual operator or its size; zero means the identity holds.

use num_complex::Complex;
use serde::Serialize;

use super::{Extension, TransferOperator};
use crate::error::{Error, Result};
use crate::frustration::frustration_graph;
use crate::graph::vertex_set;
use crate::indpoly::weighted_independence_polynomial;
use crate::model::Hamiltonian;
use crate::pauli::{OperatorSum, PauliTerm};
use crate::recognition::is_simplicial_clique;
use crate::scalar::Scalar;

/// Largest coefficient of any `[Q^(r), Q^(s)]`.
pub fn charge_commutator_residual<T: Scalar>(t: &TransferOperator<T>) -> Result<f64> {
    let q = t.charges();
    let mut worst: f64 = 0.0;
    for r in 1..q.len() {
        for s in r + 1..q.len() {
            worst = worst.max(q[r].commutator(&q[s])?.max_abs());
        }
    }
    Ok(worst)
}

/// `T(u) T(-u) - P(-u^2) I`.
pub fn transfer_product_residual<T: Scalar>(h: &Hamiltonian<T>, u: &T) -> Result<OperatorSum<T>> {
    let t = TransferOperator::new(h)?;
    let p = weighted_independence_polynomial(&frustration_graph(h)).at_minus_square(u);
    t.at(u)?.mul(&t.at(&-u.clone())?)?.sub(&OperatorSum::scaled_identity(h.num_qubits(), p))
}

/// `T(u)(1 + u S) chi T(-u) - P(-u^2)(1 - u S) chi` with `S` the sum of the
/// clique terms of an extended Hamiltonian.
pub fn fundamental_identity_residual<T: Scalar>(ext: &Extension<T>, u: &T) -> Result<OperatorSum<T>> {
    let h = &ext.hamiltonian;
    let n = h.num_qubits();
    let t = TransferOperator::new(h)?;
    let p = weighted_independence_polynomial(&frustration_graph(h)).at_minus_square(u);
    let mut s = OperatorSum::zero(n);
    for &v in &ext.clique {
        s = s.add(&OperatorSum::from_term(&h.term_operator(v), h.terms()[v].coupling.clone()))?;
    }
    let chi = OperatorSum::from_term(&PauliTerm::hermitian(ext.chi.clone()), T::one());
    let id = OperatorSum::identity(n);
    let us = s.scale_real(u);
    let lhs = t.at(u)?.mul(&id.add(&us)?.mul(&chi)?)?.mul(&t.at(&-u.clone())?)?;
    let rhs = id.sub(&us)?.mul(&chi)?.scale(&Complex::new(p, T::zero()));
    lhs.sub(&rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceResidual {
    /// Terms multiplied from the left.
    pub left: f64,
    /// Terms multiplied from the right.
    pub right: f64,
}

impl RecurrenceResidual {
    pub fn max(&self) -> f64 {
        self.left.max(self.right)
    }
}

/// Compares `Q_G^(j)` with `Q_{G-K}^(j) + sum_{v in K} h_v Q_{G-R_v}^(j-1)`
/// order by order, in both multiplication orders.
fn recurrence<T: Scalar>(
    h: &Hamiltonian<T>,
    clique: &[usize],
    removed_for: impl Fn(usize) -> crate::graph::VertexSet,
) -> Result<RecurrenceResidual> {
    let g = frustration_graph(h);
    let full = TransferOperator::new(h)?;
    let kset = vertex_set(g.order(), clique.iter().copied());
    let mut rest = g.all();
    rest.difference_with(&kset);
    let minus_k = TransferOperator::within(h, &g, &rest)?;
    let parts: Vec<(OperatorSum<T>, TransferOperator<T>)> = clique
        .iter()
        .map(|&v| {
            let mut keep = g.all();
            keep.difference_with(&removed_for(v));
            Ok((OperatorSum::from_term(&h.term_operator(v), h.terms()[v].coupling.clone()), TransferOperator::within(h, &g, &keep)?))
        })
        .collect::<Result<_>>()?;
    let mut out = RecurrenceResidual { left: 0.0, right: 0.0 };
    for j in 0..=full.alpha() + 1 {
        let mut left = full.charge(j).sub(&minus_k.charge(j))?;
        let mut right = left.clone();
        if j > 0 {
            for (hv, tv) in &parts {
                left = left.sub(&hv.mul(&tv.charge(j - 1))?)?;
                right = right.sub(&tv.charge(j - 1).mul(hv)?)?;
            }
        }
        out.left = out.left.max(left.max_abs());
        out.right = out.right.max(right.max_abs());
    }
    Ok(out)
}

/// `T_G = T_{G-K} - u sum_{v in K} h_v T_{G - N[v]}` for any clique `K`.
pub fn clique_transfer_recurrence<T: Scalar>(h: &Hamiltonian<T>, clique: &[usize]) -> Result<RecurrenceResidual> {
    let g = frustration_graph(h);
    check_clique(h, clique)?;
    recurrence(h, clique, |v| g.closed_neighborhood(v))
}

/// `T_G = T_{G-K} - u sum_{v in K} h_v T_{G - K_v}` for a simplicial clique
/// `K`, where `K_v` is `v` together with its neighbours outside `K`.
pub fn simplicial_transfer_recurrence<T: Scalar>(h: &Hamiltonian<T>, clique: &[usize]) -> Result<RecurrenceResidual> {
    let g = frustration_graph(h);
    check_clique(h, clique)?;
    let kset = vertex_set(g.order(), clique.iter().copied());
    if !is_simplicial_clique(&g, &kset) {
        return Err(Error::NotSimplicial);
    }
    recurrence(h, clique, |v| {
        let mut kv = g.closed_neighborhood(v);
        kv.difference_with(&kset);
        kv.insert(v);
        kv
    })
}

fn check_clique<T: Scalar>(h: &Hamiltonian<T>, clique: &[usize]) -> Result<()> {
    let g = frustration_graph(h);
    for &v in clique {
        g.check_vertex(v)?;
    }
    let set = vertex_set(g.order(), clique.iter().copied());
    if set.count_ones(..) != clique.len() || !g.is_clique(&set) {
        return Err(Error::NotAClique);
    }
    Ok(())
}
