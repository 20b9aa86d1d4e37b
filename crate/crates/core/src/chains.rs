//! Staggered chains with `k` couplings repeated along the chain: the symmetric
//! polynomial recursion, its eigenvalue form, dispersion and gap scans.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::indpoly::{negated_roots_of, IndependencePolynomial};
use crate::scalar::{ratio_to_f64, rational_from_decimal, Scalar};

/// `cells` blocks of `k` terms with squared couplings `b2[0..k]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainSpec<T = f64> {
    pub cells: usize,
    pub k: usize,
    pub b2: Vec<T>,
}

impl<T: Scalar> ChainSpec<T> {
    pub fn new(cells: usize, b2: Vec<T>) -> Result<Self> {
        let k = b2.len();
        if cells == 0 {
            return Err(Error::InvalidArgument("chain needs at least one cell".into()));
        }
        if k < 2 {
            return Err(Error::InvalidArgument("chain needs k >= 2".into()));
        }
        if b2.iter().any(|b| b.is_negative()) {
            return Err(Error::InvalidArgument("squared couplings must be nonnegative".into()));
        }
        Ok(Self { cells, k, b2 })
    }

    pub fn with_cells(&self, cells: usize) -> Self {
        Self { cells, ..self.clone() }
    }
}

/// `b2[k-1] = last` and the other `k-1` entries equal, summing to one.
pub fn others_equal<T: Scalar>(k: usize, last: T) -> Vec<T> {
    let rest = (T::one() - last.clone()) / crate::scalar::from_usize::<T>(k - 1);
    let mut b = vec![rest; k];
    b[k - 1] = last;
    b
}

/// `e_0..e_k` of the given values.
pub fn elementary_symmetric<T: Scalar>(b: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); b.len() + 1];
    e[0] = T::one();
    for (i, x) in b.iter().enumerate() {
        for l in (1..=i + 1).rev() {
            e[l] = e[l].clone() + e[l - 1].clone() * x.clone();
        }
    }
    e
}

/// `P_N(x) = P_{N-1}(x) - sum_{l=1..k} (-x)^l e_l P_{N-l}(x)` with `P_0 = 1`
/// and `P_s = 0` for `s < 0`. Returns `P_0..P_N`.
fn polynomial_sequence<T: Scalar>(e: &[T], cells: usize) -> Vec<Vec<T>> {
    let k = e.len() - 1;
    let mut ps: Vec<Vec<T>> = vec![vec![T::one()]];
    for s in 1..=cells {
        let mut next = ps[s - 1].clone();
        next.resize(s + 1, T::zero());
        for l in 1..=k.min(s) {
            // (-x)^l e_l P_{s-l}
            let w = if l % 2 == 0 { e[l].clone() } else { -e[l].clone() };
            for (i, c) in ps[s - l].iter().enumerate() {
                next[i + l] = next[i + l].clone() - w.clone() * c.clone();
            }
        }
        ps.push(next);
    }
    ps
}

/// Weighted independence polynomial of the open chain, from the recursion.
pub fn chain_polynomial<T: Scalar>(spec: &ChainSpec<T>) -> IndependencePolynomial<T> {
    let e = elementary_symmetric(&spec.b2);
    let mut ps = polynomial_sequence(&e, spec.cells);
    IndependencePolynomial::from_coefficients(ps.pop().expect("sequence is nonempty"))
}

/// Banded Toeplitz matrix `R[s][s'] = e_l` for `s' = s - l + 1`, acting on
/// `v_s = eps^(2(s-1)) P_{s-1}(-1/eps^2)`; `R v = eps^2 v` at the roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionMatrix {
    pub size: usize,
    /// `e_0..e_k`.
    pub e: Vec<f64>,
}

impl RecursionMatrix {
    pub fn entry(&self, s: usize, t: usize) -> f64 {
        // t = s - l + 1
        if t > s + 1 {
            return 0.0;
        }
        self.e.get(s + 1 - t).copied().unwrap_or(0.0)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.size, self.size, |s, t| self.entry(s, t))
    }
}

pub fn recursion_matrix<T: Scalar>(spec: &ChainSpec<T>) -> RecursionMatrix {
    RecursionMatrix { size: spec.cells, e: elementary_symmetric(&spec.b2).iter().map(|x| x.to_f64()).collect() }
}

/// `v_1..v_{N+1}` at `eps`, rescaled as it goes (signs and ratios kept), and
/// the same recursion run on absolute values for a magnitude reference.
fn eigenvector(e: &[f64], cells: usize, eps: f64) -> (Vec<f64>, Vec<f64>) {
    let k = e.len() - 1;
    let e2 = eps * eps;
    let mut v = vec![1.0];
    let mut m = vec![1.0];
    for s in 1..=cells {
        // v_{s+1} = eps^2 v_s - sum_{l>=1} e_l v_{s+1-l}
        let mut x = e2 * v[s - 1];
        let mut y = e2 * m[s - 1];
        for l in 1..=k {
            if l <= s {
                x -= e[l] * v[s - l];
                y += e[l] * m[s - l];
            }
        }
        v.push(x);
        m.push(y);
        if y > 1e200 {
            v.iter_mut().for_each(|a| *a /= y);
            m.iter_mut().for_each(|a| *a /= y);
        }
    }
    (v, m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryCheck {
    /// `|v_{N+1}|` relative to the size of the terms that cancel in it.
    pub end_residual: f64,
    /// Largest `|(R v - eps^2 v)_s|` over `s = 1..N`, relative.
    pub interior_residual: f64,
    pub holds: bool,
}

/// Checks that `eps` makes `v` an eigenvector of the recursion matrix with
/// `v_{N+1} = 0`. The left boundary `v_0 = ... = v_{2-k} = 0` is built in.
pub fn verify_boundary<T: Scalar>(spec: &ChainSpec<T>, eps: f64) -> BoundaryCheck {
    let r = recursion_matrix(spec);
    let (v, m) = eigenvector(&r.e, spec.cells, eps);
    let n = spec.cells;
    let end_residual = v[n].abs() / m[n].max(f64::MIN_POSITIVE);
    let e2 = eps * eps;
    let mut interior: f64 = 0.0;
    for s in 0..n {
        let mut acc = 0.0;
        let mut mag = e2 * m[s];
        for t in 0..n {
            let a = r.entry(s, t);
            acc += a * v[t];
            mag += a.abs() * m[t];
        }
        interior = interior.max((acc - e2 * v[s]).abs() / mag.max(f64::MIN_POSITIVE));
    }
    BoundaryCheck { end_residual, interior_residual: interior, holds: end_residual < 1e-8 && interior < 1e-8 }
}

/// One root of the open chain with its standing-wave momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DispersionPoint {
    pub momentum: f64,
    pub energy: f64,
}

/// Floats are read as their shortest decimal form, so `0.3` means `3/10`;
/// exact binary expansions would blow up the recursion's denominators.
fn rational_e<T: Scalar>(spec: &ChainSpec<T>) -> Vec<BigRational> {
    let b: Vec<BigRational> = spec
        .b2
        .iter()
        .map(|b| {
            if T::is_exact() {
                b.to_rational()
            } else {
                rational_from_decimal(&b.to_f64().to_string()).unwrap_or_else(|| b.to_rational())
            }
        })
        .collect();
    elementary_symmetric(&b)
}

/// All `N` single-particle energies of the open chain, each labelled with the
/// momentum `p = pi (nodes + 1) / (N + 1)`, where `nodes` counts the sign
/// changes of `v_1..v_N`. Sorted by momentum.
pub fn dispersion<T: Scalar>(spec: &ChainSpec<T>) -> Result<Vec<DispersionPoint>> {
    let e = rational_e(spec);
    let p = polynomial_sequence(&e, spec.cells).pop().expect("sequence is nonempty");
    let mut c = p;
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() - 1 != spec.cells {
        return Err(Error::DegeneratePolynomial(format!(
            "chain polynomial has degree {} for {} cells",
            c.len() - 1,
            spec.cells
        )));
    }
    let ys = negated_roots_of(&c)?;
    let ef: Vec<f64> = e.iter().map(ratio_to_f64).collect();
    let n = spec.cells;
    let mut out: Vec<DispersionPoint> = ys
        .iter()
        .map(|&y| {
            let eps = 1.0 / y.sqrt();
            let (v, _) = eigenvector(&ef, n, eps);
            let mut nodes = 0;
            let mut last = 0.0;
            for &x in &v[..n] {
                if x != 0.0 {
                    if last != 0.0 && (x > 0.0) != (last > 0.0) {
                        nodes += 1;
                    }
                    last = x;
                }
            }
            DispersionPoint { momentum: std::f64::consts::PI * (nodes + 1) as f64 / (n + 1) as f64, energy: eps }
        })
        .collect();
    out.sort_by(|a, b| a.momentum.total_cmp(&b.momentum).then(a.energy.total_cmp(&b.energy)));
    Ok(out)
}

/// Smallest single-particle energy of the open chain.
pub fn min_energy<T: Scalar>(spec: &ChainSpec<T>) -> Result<f64> {
    let e = rational_e(spec);
    let mut c = polynomial_sequence(&e, spec.cells).pop().expect("sequence is nonempty");
    // vanishing couplings can lower the degree
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let ys = negated_roots_of(&c)?;
    // the largest y gives the smallest energy
    Ok(ys.last().map_or(f64::INFINITY, |y| 1.0 / y.sqrt()))
}

/// Gap estimates at one point of the coupling simplex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapPoint<T = f64> {
    pub b2: Vec<T>,
    pub gap: f64,
    pub gap_larger: f64,
    pub gapless: bool,
}

/// Allowance on the ratio test in [`gap_scan`].
pub const GAPLESS_SLACK: f64 = 0.1;

/// Minimum energy at `cells` and `larger` cells for every point of `grid`.
/// A point is flagged gapless when the minimum shrinks at least like `1/N`,
/// i.e. `gap_larger / gap < cells / larger + GAPLESS_SLACK`.
pub fn gap_scan<T: Scalar>(grid: &[Vec<T>], cells: usize, larger: usize) -> Result<Vec<GapPoint<T>>> {
    if cells == 0 || larger <= cells {
        return Err(Error::InvalidArgument("gap scan needs 0 < N < N'".into()));
    }
    grid.par_iter()
        .map(|b2| {
            let spec = ChainSpec::new(cells, b2.clone())?;
            let gap = min_energy(&spec)?;
            let gap_larger = min_energy(&spec.with_cells(larger))?;
            let gapless = gap_larger / gap < cells as f64 / larger as f64 + GAPLESS_SLACK;
            Ok(GapPoint { b2: b2.clone(), gap, gap_larger, gapless })
        })
        .collect()
}

/// `P_1 = 1 + e_1 x`, handy for checks.
pub fn single_cell_polynomial<T: Scalar>(b2: &[T]) -> IndependencePolynomial<T> {
    let e1 = b2.iter().fold(T::zero(), |a, b| a + b.clone());
    IndependencePolynomial::from_coefficients(vec![T::one(), e1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frustration::frustration_graph;
    use crate::indpoly::weighted_independence_polynomial;
    use crate::model::{chain, Boundary};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(elementary_symmetric(&[1.0, 1.0, 1.0]), vec![1.0, 3.0, 3.0, 1.0]);
        assert_eq!(elementary_symmetric(&[rat(4, 1)]), vec![rat(1, 1), rat(4, 1)]);
        assert_eq!(elementary_symmetric(&vec![rat(1, 4); 4])[1], rat(1, 1));
    }

    #[test]
    fn recursion_matches_enumeration() {
        let b = [rat(1, 2), rat(-2, 3), rat(3, 4), rat(5, 7)];
        for k in 2..=4 {
            for cells in 1..=4 {
                let b2: Vec<_> = b[..k].iter().map(|x| x * x).collect();
                let h = chain(cells, k, &b[..k], Boundary::Open).unwrap();
                let p = weighted_independence_polynomial(&frustration_graph(&h));
                assert_eq!(chain_polynomial(&ChainSpec::new(cells, b2).unwrap()), p, "N={cells} k={k}");
            }
        }
    }

    #[test]
    fn single_cell() {
        let spec = ChainSpec::new(1, vec![rat(1, 3), rat(2, 5), rat(1, 7)]).unwrap();
        assert_eq!(chain_polynomial(&spec), single_cell_polynomial(&spec.b2));
        let e1 = (1.0f64 / 3.0 + 0.4 + 1.0 / 7.0).sqrt();
        assert!(verify_boundary(&spec, e1).holds);
        assert!(!verify_boundary(&spec, e1 * 1.01).holds);
    }

    #[test]
    fn roots_satisfy_boundary_conditions() {
        let spec = ChainSpec::new(25, vec![0.3, 0.2, 0.4, 0.1]).unwrap();
        let d = dispersion(&spec).unwrap();
        assert_eq!(d.len(), 25);
        for pt in &d {
            let c = verify_boundary(&spec, pt.energy);
            assert!(c.holds, "{pt:?} {c:?}");
        }
        // momenta are a permutation of the standing-wave grid
        let mut m: Vec<f64> = d.iter().map(|p| p.momentum).collect();
        m.dedup();
        assert_eq!(m.len(), 25);
    }

    #[test]
    fn matrix_eigenvalues_are_squared_energies() {
        let spec = ChainSpec::new(6, vec![0.5, 0.3, 0.2]).unwrap();
        let r = recursion_matrix(&spec).to_dense();
        for pt in dispersion(&spec).unwrap() {
            let (v, _) = eigenvector(&recursion_matrix(&spec).e, 6, pt.energy);
            let v = nalgebra::DVector::from_column_slice(&v[..6]);
            let res = &r * &v - &v * pt.energy.powi(2);
            assert!(res.amax() < 1e-9 * v.amax(), "{res}");
        }
    }

    #[test]
    fn single_coupling_is_flat() {
        let spec = ChainSpec::new(8, vec![0.0, 0.0, 2.25]).unwrap();
        let d = dispersion(&spec).unwrap();
        assert!(d.iter().all(|p| (p.energy - 1.5).abs() < 1e-9));
    }

    #[test]
    fn scaling_couplings_scales_energies() {
        let a = ChainSpec::new(10, vec![0.2, 0.5, 0.3]).unwrap();
        let b = ChainSpec::new(10, vec![0.8, 2.0, 1.2]).unwrap();
        let (da, db) = (dispersion(&a).unwrap(), dispersion(&b).unwrap());
        for (x, y) in da.iter().zip(&db) {
            assert!((2.0 * x.energy - y.energy).abs() < 1e-9);
        }
    }

    #[test]
    fn cyclic_relabelling_is_invisible() {
        let a = ChainSpec::new(9, vec![rat(1, 10), rat(1, 5), rat(3, 10), rat(2, 5)]).unwrap();
        let b = ChainSpec::new(9, vec![rat(2, 5), rat(1, 10), rat(1, 5), rat(3, 10)]).unwrap();
        assert_eq!(chain_polynomial(&a), chain_polynomial(&b));
    }

    #[test]
    fn xy_chain_closes_its_gap() {
        let g = gap_scan(&[vec![0.5, 0.5]], 20, 40).unwrap();
        assert!(g[0].gapless, "{g:?}");
    }
}
