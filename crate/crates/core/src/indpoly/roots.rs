//! Real roots of `P(-y)` and the energies `1/sqrt(y)`.
//!
//! Roots are bracketed by exact sign evaluation on a logarithmic grid and
//! refined by bisection. When the grid misses roots (clusters, multiple
//! roots) the interval is split recursively using Taylor sign-change counts,
//! which are exact for polynomials with only real roots.

use serde::Serialize;

use super::{ExactPoly, IndependencePolynomial};
use crate::error::{Error, Result};
use crate::scalar::{ratio_to_f64, Scalar};

/// Roots closer than this (relative) are reported as one level.
const MERGE_TOL: f64 = 1e-9;
/// Width below which an interval still holding several roots is a cluster.
const CLUSTER_WIDTH: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub energy: f64,
    pub multiplicity: usize,
}

/// Distinct single-particle energies in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleParticleEnergies {
    pub levels: Vec<EnergyLevel>,
    /// Largest `|P(-1/e^2)|` over the returned energies.
    pub residual: f64,
}

impl SingleParticleEnergies {
    /// Energies repeated by multiplicity, ascending.
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().flat_map(|l| std::iter::repeat(l.energy).take(l.multiplicity)).collect()
    }

    pub fn count(&self) -> usize {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.levels.iter().all(|l| l.multiplicity == 1)
    }

    pub fn min(&self) -> Option<f64> {
        self.levels.first().map(|l| l.energy)
    }

    pub fn max(&self) -> Option<f64> {
        self.levels.last().map(|l| l.energy)
    }
}

struct Isolator<'a> {
    q: &'a ExactPoly,
    /// (root in y, multiplicity)
    found: Vec<(f64, usize)>,
}

impl Isolator<'_> {
    fn bisect(&self, mut a: f64, mut b: f64, mut sa: i8) -> f64 {
        for _ in 0..2000 {
            let mid = if b > 4.0 * a { (a * b).sqrt() } else { 0.5 * (a + b) };
            if mid <= a || mid >= b {
                break;
            }
            let sm = self.q.sign_at(mid);
            if sm == 0 {
                return mid;
            }
            if sm == sa {
                a = mid;
                sa = sm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Finds the `va - vb` roots in `(a, b]`.
    fn split(&mut self, a: f64, b: f64, va: usize, vb: usize) {
        let n = va - vb;
        if n == 0 {
            return;
        }
        let (sa, sb) = (self.q.sign_at(a), self.q.sign_at(b));
        if sb == 0 && n == 1 {
            self.found.push((b, 1));
            return;
        }
        if n == 1 && sa * sb < 0 {
            let r = self.bisect(a, b, sa);
            self.found.push((r, 1));
            return;
        }
        let mid = if b > 4.0 * a { (a * b).sqrt() } else { 0.5 * (a + b) };
        if (b - a) <= CLUSTER_WIDTH * b || mid <= a || mid >= b {
            self.found.push((mid, n));
            return;
        }
        let vm = self.q.taylor_sign_changes(mid);
        self.split(a, mid, va, vm);
        self.split(mid, b, vm, vb);
    }
}

/// Real roots `y > 0` of `P(-y)` with multiplicities, ascending.
fn negated_roots(q: &ExactPoly, c: &[num_rational::BigRational]) -> Result<Vec<(f64, usize)>> {
    let d = q.degree();
    // every root lies in [1/c_1, c_{d-1}/c_d]
    let lo = ratio_to_f64(&(c[0].clone() / c[1].clone())) * 0.5;
    let hi = ratio_to_f64(&(c[d - 1].clone() / c[d].clone())) * 2.0;
    let mut iso = Isolator { q, found: Vec::new() };

    // dense sign grids are cheap while the float filter certifies signs;
    // Taylor sign counts take over when they cannot separate every root
    let base = (8 * d).max(64);
    let mut separated = false;
    for m in [base, 4 * base, 16 * base, 64 * base] {
        let ratio = (hi / lo).ln() / m as f64;
        let mut grid: Vec<f64> = (0..=m).map(|i| if i == m { hi } else { lo * (ratio * i as f64).exp() }).collect();
        let mut signs: Vec<i8> = grid.iter().map(|&y| q.sign_at(y)).collect();
        // nudge off exact roots so every crossing shows up as a bracket
        for i in 0..grid.len() {
            if signs[i] == 0 {
                grid[i] *= 1.0 + 1e-11;
                signs[i] = q.sign_at(grid[i]);
            }
        }
        let brackets: Vec<usize> = (0..m).filter(|&i| signs[i] * signs[i + 1] < 0).collect();
        if brackets.len() == d {
            for i in brackets {
                let r = iso.bisect(grid[i], grid[i + 1], signs[i]);
                iso.found.push((r, 1));
            }
            separated = true;
            break;
        }
    }
    if !separated {
        let (va, vb) = (q.taylor_sign_changes(lo), q.taylor_sign_changes(hi));
        if va < vb + d {
            return Err(Error::ComplexRoots { found: va.saturating_sub(vb), expected: d });
        }
        iso.split(lo, hi, va, vb);
    }

    let mut roots = iso.found;
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for (y, k) in roots {
        match merged.last_mut() {
            Some((z, j)) if (y - *z).abs() <= MERGE_TOL * y => {
                *z = (*z * *j as f64 + y * k as f64) / (*j + k) as f64;
                *j += k;
            }
            _ => merged.push((y, k)),
        }
    }
    // clusters without a sign change may be complex pairs near the axis
    let mut real = 0;
    merged.retain(|&(y, k)| {
        let genuine = k % 2 == 1 || q.value_at(y).abs() <= 1e-9 * q.magnitude_at(y);
        if genuine {
            real += k;
        }
        genuine
    });
    if real != d {
        return Err(Error::ComplexRoots { found: real, expected: d });
    }
    Ok(merged)
}

/// Energies `e = 1/sqrt(y)` for the roots `x = -y` of `P`.
///
/// Fails when the polynomial has a negative coefficient or a root off the
/// negative real axis.
pub fn single_particle_energies<T: Scalar>(p: &IndependencePolynomial<T>) -> Result<SingleParticleEnergies> {
    let c: Vec<_> = p.coefficients().iter().map(|v| v.to_rational()).collect();
    let d = p.degree();
    if c[0] <= num_rational::BigRational::from_integer(0.into()) {
        return Err(Error::DegeneratePolynomial("constant term must be positive".into()));
    }
    let q = ExactPoly::negated_argument(&c);
    if !q.has_nonnegative_source() {
        return Err(Error::DegeneratePolynomial("negative coefficient".into()));
    }
    if d == 0 {
        return Ok(SingleParticleEnergies { levels: Vec::new(), residual: 0.0 });
    }
    let roots = negated_roots(&q, &c)?;
    let residual = roots.iter().map(|&(y, _)| q.value_at(y).abs()).fold(0.0, f64::max);
    let mut levels: Vec<EnergyLevel> =
        roots.iter().map(|&(y, k)| EnergyLevel { energy: 1.0 / y.sqrt(), multiplicity: k }).collect();
    levels.reverse();
    Ok(SingleParticleEnergies { levels, residual })
}

/// Roots `y` of `P(-y)` in ascending order, repeated by multiplicity.
pub(crate) fn negated_roots_of(c: &[num_rational::BigRational]) -> Result<Vec<f64>> {
    let q = ExactPoly::negated_argument(c);
    if q.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(negated_roots(&q, c)?.into_iter().flat_map(|(y, k)| std::iter::repeat(y).take(k)).collect())
}
