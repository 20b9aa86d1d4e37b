//! Pauli strings in symplectic form and sparse sums of them.
//!
//! A string with bit vectors `(x, z)` stands for the Hermitian operator
//! `i^{|x&z|} X^x Z^z`, so a set pair of bits on one qubit is `Y`. Qubit `q`
//! is bit `q` of a computational basis index.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Words = SmallVec<[u64; 2]>;

/// Single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex<T: Scalar>(self) -> Complex<T> {
        match self.0 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// A Hermitian Pauli string on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Words,
    z: Words,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = n.div_ceil(64).max(1);
        Self { n, x: SmallVec::from_elem(0, w), z: SmallVec::from_elem(0, w) }
    }

    /// Builds a string from `(qubit, pauli)` pairs. A qubit may appear once.
    pub fn from_ops(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n);
        let mut seen = vec![false; n];
        for &(q, p) in ops {
            if q >= n {
                return Err(Error::InvalidArgument(format!("qubit {q} out of range for {n} qubits")));
            }
            if seen[q] {
                return Err(Error::InvalidArgument(format!("qubit {q} repeated")));
            }
            seen[q] = true;
            s.set(q, p);
        }
        Ok(s)
    }

    /// Parses a dense label such as `XIZY`, qubit 0 first.
    pub fn from_label(label: &str) -> Result<Self> {
        let n = label.chars().count();
        let mut s = Self::identity(n);
        for (q, c) in label.chars().enumerate() {
            let p = Pauli::from_char(c)
                .ok_or_else(|| Error::InvalidArgument(format!("bad Pauli letter {c:?}")))?;
            s.set(q, p);
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> Pauli {
        let (w, b) = (q / 64, q % 64);
        match ((self.x[w] >> b) & 1, (self.z[w] >> b) & 1) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (1, 1) => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let (w, b) = (q / 64, q % 64);
        let (xb, zb) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&w| w == 0)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    /// Non-identity factors in qubit order.
    pub fn support(&self) -> Vec<(usize, Pauli)> {
        (0..self.n).map(|q| (q, self.get(q))).filter(|(_, p)| *p != Pauli::I).collect()
    }

    /// Same string on a larger register.
    pub fn extended(&self, n: usize) -> Self {
        assert!(n >= self.n);
        let mut s = Self::identity(n);
        for (q, p) in self.support() {
            s.set(q, p);
        }
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let mut parity = 0;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones() & 1;
        }
        parity == 0
    }

    /// `self * other = phase * result`.
    pub fn mul(&self, other: &Self) -> Result<(Phase, PauliString)> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> (Phase, PauliString) {
        let mut plus = 0i64;
        let mut minus = 0i64;
        let mut x = Words::with_capacity(self.x.len());
        let mut z = Words::with_capacity(self.x.len());
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            // Y X = -iZ, X Z = -iY, Z Y = -iX and the reverse orders give +i
            let p = (x1 & z1 & !x2 & z2) | (x1 & !z1 & x2 & z2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & z1 & x2 & !z2) | (x1 & !z1 & !x2 & z2) | (!x1 & z1 & x2 & z2);
            plus += p.count_ones() as i64;
            minus += m.count_ones() as i64;
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        (Phase::new(plus - minus), PauliString { n: self.n, x, z })
    }

    /// Dense `2^n x 2^n` matrix. Only meant for small registers.
    pub fn to_dense(&self, cap: usize) -> Result<DMatrix<Complex<f64>>> {
        if self.n > cap || self.n > 30 {
            return Err(Error::DenseCap { n: self.n, cap });
        }
        let mut m = DMatrix::zeros(1 << self.n, 1 << self.n);
        self.add_dense_into(&mut m, Complex::new(1.0, 0.0));
        Ok(m)
    }

    fn add_dense_into(&self, m: &mut DMatrix<Complex<f64>>, coeff: Complex<f64>) {
        let (x, z) = (self.x[0], self.z[0]);
        let base = coeff * Phase::new((x & z).count_ones() as i64).to_complex::<f64>();
        for c in 0..(1u64 << self.n) {
            let r = c ^ x;
            let v = if (z & c).count_ones() % 2 == 1 { -base } else { base };
            m[(r as usize, c as usize)] += v;
        }
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sup = self.support();
        if sup.is_empty() {
            return write!(f, "I");
        }
        for (k, (q, p)) in sup.into_iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p:?}{q}")?;
        }
        Ok(())
    }
}

/// A Pauli string with a phase, closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliTerm {
    pub phase: Phase,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(phase: Phase, string: PauliString) -> Self {
        Self { phase, string }
    }

    pub fn hermitian(string: PauliString) -> Self {
        Self { phase: Phase::ONE, string }
    }

    pub fn num_qubits(&self) -> usize {
        self.string.n
    }

    pub fn multiply(&self, other: &PauliTerm) -> Result<PauliTerm> {
        let (p, s) = self.string.mul(&other.string)?;
        Ok(PauliTerm { phase: self.phase * other.phase * p, string: s })
    }

    pub fn commutes(&self, other: &PauliTerm) -> Result<bool> {
        self.string.commutes(&other.string)
    }
}

/// Pruning and size limits carried by an [`OperatorSum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    /// Coefficients with modulus at or below this are dropped (floating types only).
    pub prune: f64,
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { prune: 1e-14, max_terms: 10_000_000 }
    }
}

/// Sparse complex linear combination of Pauli strings.
#[derive(Clone, Debug)]
pub struct OperatorSum<T = f64> {
    n: usize,
    terms: HashMap<PauliString, Complex<T>>,
    limits: Limits,
}

impl<T: Scalar> PartialEq for OperatorSum<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

fn modulus<T: Scalar>(c: &Complex<T>) -> f64 {
    c.re.to_f64().hypot(c.im.to_f64())
}

impl<T: Scalar> OperatorSum<T> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: HashMap::new(), limits: Limits::default() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, T::one())
    }

    pub fn scaled_identity(n: usize, c: T) -> Self {
        let mut s = Self::zero(n);
        s.add_term(PauliString::identity(n), Complex::new(c, T::zero()));
        s
    }

    pub fn from_term(term: &PauliTerm, coeff: T) -> Self {
        let mut s = Self::zero(term.num_qubits());
        s.add_term(term.string.clone(), term.phase.to_complex::<T>() * coeff);
        s
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
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

    /// Adds `coeff * string` in place, removing the entry if it cancels.
    pub fn add_term(&mut self, string: PauliString, coeff: Complex<T>) {
        assert_eq!(string.n, self.n, "qubit count mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(string) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex<T> {
        self.terms.get(s).cloned().unwrap_or_else(Complex::zero)
    }

    /// Coefficient of the identity string.
    pub fn identity_coefficient(&self) -> Complex<T> {
        self.coefficient(&PauliString::identity(self.n))
    }

    /// Terms sorted by string.
    pub fn terms(&self) -> Vec<(&PauliString, &Complex<T>)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex<T>)> {
        self.terms.iter()
    }

    fn prune(&mut self) -> Result<()> {
        let tol = self.limits.prune;
        self.terms.retain(|_, c| !T::negligible(modulus(c), tol));
        if self.terms.len() > self.limits.max_terms {
            return Err(Error::TermLimit { limit: self.limits.max_terms });
        }
        Ok(())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out.prune()?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_real(&-T::one()))
    }

    pub fn scale(&self, c: &Complex<T>) -> Self {
        let mut out = Self::zero(self.n).with_limits(self.limits);
        if c.is_zero() {
            return out;
        }
        for (s, v) in &self.terms {
            out.terms.insert(s.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn scale_real(&self, c: &T) -> Self {
        self.scale(&Complex::new(c.clone(), T::zero()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n).with_limits(self.limits);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                let (ph, s) = sa.mul_unchecked(sb);
                let c = ca.clone() * cb.clone() * ph.to_complex::<T>();
                out.add_term(s, c);
            }
            if out.terms.len() > self.limits.max_terms {
                return Err(Error::TermLimit { limit: self.limits.max_terms });
            }
        }
        out.prune()?;
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n).with_limits(self.limits);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                if sa.commutes_unchecked(sb) {
                    continue;
                }
                let (ph, s) = sa.mul_unchecked(sb);
                let two = T::one() + T::one();
                out.add_term(s, ca.clone() * cb.clone() * ph.to_complex::<T>() * two);
            }
        }
        out.prune()?;
        Ok(out)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n).with_limits(self.limits);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                if !sa.commutes_unchecked(sb) {
                    continue;
                }
                let (ph, s) = sa.mul_unchecked(sb);
                let two = T::one() + T::one();
                out.add_term(s, ca.clone() * cb.clone() * ph.to_complex::<T>() * two);
            }
        }
        out.prune()?;
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Largest coefficient modulus, zero for the empty sum.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(modulus).fold(0.0, f64::max)
    }

    /// Sum of coefficient moduli; bounds the operator norm from above.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(modulus).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.to_f64().abs() <= tol)
    }

    /// Same operator on a larger register.
    pub fn extended(&self, n: usize) -> Self {
        let mut out = Self::zero(n).with_limits(self.limits);
        for (s, c) in &self.terms {
            out.terms.insert(s.extended(n), c.clone());
        }
        out
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> OperatorSum<U> {
        OperatorSum {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), Complex::new(f(&c.re), f(&c.im)))).collect(),
            limits: self.limits,
        }
    }

    pub fn to_f64(&self) -> OperatorSum<f64> {
        let mut out = self.map_scalar(|v| v.to_f64());
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Dense matrix, refused above `cap` qubits.
    pub fn to_dense(&self, cap: usize) -> Result<DMatrix<Complex<f64>>> {
        if self.n > cap || self.n > 30 {
            return Err(Error::DenseCap { n: self.n, cap });
        }
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for (s, c) in &self.terms {
            s.add_dense_into(&mut m, Complex::new(c.re.to_f64(), c.im.to_f64()));
        }
        Ok(m)
    }
}

impl<T: Scalar> fmt::Display for OperatorSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms().into_iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "({} + {}i) {}", c.re, c.im, s)?;
        }
        Ok(())
    }
}

/// Largest singular value of a dense matrix.
pub fn operator_norm(m: &DMatrix<Complex<f64>>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Operator norm of a sparse sum through its dense form.
pub fn sum_operator_norm<T: Scalar>(s: &OperatorSum<T>, cap: usize) -> Result<f64> {
    if s.is_zero() {
        return Ok(0.0);
    }
    Ok(operator_norm(&s.to_dense(cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(label: &str) -> PauliString {
        PauliString::from_label(label).unwrap()
    }

    fn dense(label: &str) -> DMatrix<Complex<f64>> {
        p(label).to_dense(8).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn single_qubit_table() {
        let (ph, s) = p("X").mul(&p("Y")).unwrap();
        assert_eq!((ph, s), (Phase::I, p("Z")));
        let (ph, s) = p("X").mul(&p("Z")).unwrap();
        assert_eq!((ph, s), (Phase::MINUS_I, p("Y")));
        let (ph, s) = p("Y").mul(&p("Z")).unwrap();
        assert_eq!((ph, s), (Phase::I, p("X")));
        let (ph, s) = p("Z").mul(&p("Z")).unwrap();
        assert_eq!((ph, s), (Phase::ONE, p("I")));
    }

    #[test]
    fn dense_matrices_match_textbook() {
        let y = dense("Y");
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        let z = dense("Z");
        assert_eq!(z[(0, 0)], c(1.0, 0.0));
        assert_eq!(z[(1, 1)], c(-1.0, 0.0));
        // qubit 0 is the low bit: X on qubit 1 maps |00> to |10> = index 2
        let xi = dense("IX");
        assert_eq!(xi[(2, 0)], c(1.0, 0.0));
    }

    #[test]
    fn mismatched_registers_are_rejected() {
        assert_eq!(p("X").mul(&p("XX")).unwrap_err(), Error::QubitMismatch(1, 2));
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn from_ops_rejects_repeats() {
        assert!(PauliString::from_ops(3, &[(0, Pauli::X), (0, Pauli::Z)]).is_err());
        assert!(PauliString::from_ops(3, &[(3, Pauli::X)]).is_err());
    }

    #[test]
    fn wide_registers_use_several_words() {
        let mut ops = vec![(0, Pauli::X), (70, Pauli::Y), (129, Pauli::Z)];
        let a = PauliString::from_ops(130, &ops).unwrap();
        ops[1].1 = Pauli::X;
        let b = PauliString::from_ops(130, &ops).unwrap();
        assert!(!a.commutes(&b).unwrap());
        let (ph, s) = a.mul(&b).unwrap();
        // YX = -iZ on qubit 70
        assert_eq!(ph, Phase::MINUS_I);
        assert_eq!(s.support(), vec![(70, Pauli::Z)]);
    }

    #[test]
    fn dense_cap_is_enforced() {
        let s = OperatorSum::<f64>::identity(5);
        assert_eq!(s.to_dense(4).unwrap_err(), Error::DenseCap { n: 5, cap: 4 });
    }

    #[test]
    fn term_limit_is_enforced() {
        let mut a = OperatorSum::<f64>::zero(4).with_limits(Limits { prune: 1e-14, max_terms: 3 });
        for l in ["XIII", "IXII", "IIXI"] {
            a.add_term(p(l), c(1.0, 0.0));
        }
        assert!(matches!(a.mul(&a), Err(Error::TermLimit { .. })));
    }

    #[test]
    fn exact_sums_keep_tiny_values() {
        use num_rational::BigRational;
        let tiny = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 40));
        let a = OperatorSum::<BigRational>::scaled_identity(1, tiny.clone());
        let b = a.mul(&a).unwrap();
        assert_eq!(b.identity_coefficient().re, tiny.clone() * tiny);
        let f = OperatorSum::<f64>::scaled_identity(1, 1e-20);
        assert!(f.mul(&f).unwrap().is_zero());
    }

    fn pauli_string(n: usize) -> impl Strategy<Value = PauliString> {
        proptest::collection::vec(0u8..4, n).prop_map(|v| {
            let label: String = v.iter().map(|k| ['I', 'X', 'Y', 'Z'][*k as usize]).collect();
            PauliString::from_label(&label).unwrap()
        })
    }

    fn small_sum() -> impl Strategy<Value = OperatorSum<f64>> {
        proptest::collection::vec((pauli_string(3), -2.0f64..2.0, -2.0f64..2.0), 1..5).prop_map(|v| {
            let mut s = OperatorSum::zero(3);
            for (l, re, im) in v {
                s.add_term(l, c(re, im));
            }
            s
        })
    }

    fn dense_close(a: &DMatrix<Complex<f64>>, b: &DMatrix<Complex<f64>>) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-10)
    }

    proptest! {
        #[test]
        fn product_matches_dense(a in pauli_string(3), b in pauli_string(3)) {
            let (ph, s) = a.mul(&b).unwrap();
            let lhs = a.to_dense(3).unwrap() * b.to_dense(3).unwrap();
            let rhs = s.to_dense(3).unwrap() * ph.to_complex::<f64>();
            prop_assert!(dense_close(&lhs, &rhs));
        }

        #[test]
        fn commutation_matches_dense(a in pauli_string(3), b in pauli_string(3)) {
            let (da, db) = (a.to_dense(3).unwrap(), b.to_dense(3).unwrap());
            let comm = &da * &db - &db * &da;
            prop_assert_eq!(a.commutes(&b).unwrap(), comm.iter().all(|z| z.norm() < 1e-12));
        }

        #[test]
        fn strings_are_hermitian_involutions(a in pauli_string(3)) {
            let d = a.to_dense(3).unwrap();
            prop_assert!(dense_close(&d, &d.adjoint()));
            prop_assert!(dense_close(&(&d * &d), &DMatrix::identity(8, 8)));
        }

        #[test]
        fn sum_products_match_dense(a in small_sum(), b in small_sum()) {
            let (da, db) = (a.to_dense(3).unwrap(), b.to_dense(3).unwrap());
            prop_assert!(dense_close(&a.mul(&b).unwrap().to_dense(3).unwrap(), &(&da * &db)));
            prop_assert!(dense_close(&a.commutator(&b).unwrap().to_dense(3).unwrap(), &(&da * &db - &db * &da)));
            prop_assert!(dense_close(&a.anticommutator(&b).unwrap().to_dense(3).unwrap(), &(&da * &db + &db * &da)));
            prop_assert!(dense_close(&a.adjoint().to_dense(3).unwrap(), &da.adjoint()));
        }

        #[test]
        fn multiplication_is_associative(a in small_sum(), b in small_sum(), d in small_sum()) {
            let l = a.mul(&b).unwrap().mul(&d).unwrap();
            let r = a.mul(&b.mul(&d).unwrap()).unwrap();
            prop_assert!(l.sub(&r).unwrap().max_abs() < 1e-10);
        }
    }
}
