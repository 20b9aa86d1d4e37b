//! Numeric trait bundle shared by the exact and floating code paths.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A real scalar usable for couplings, weights and polynomial coefficients.
///
/// Floating types prune tiny values by magnitude; exact types only drop zeros.
pub trait Scalar:
    num_traits::Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Exact rational value. Panics on non-finite floats.
    fn to_rational(&self) -> BigRational;
    fn is_exact() -> bool;
    /// Parses a decimal literal such as `-1.25e-3`. Exact types keep every digit.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Whether a value with this magnitude should be dropped from a sum.
    fn negligible(magnitude: f64, tol: f64) -> bool {
        if Self::is_exact() {
            magnitude == 0.0
        } else {
            magnitude <= tol
        }
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }
    fn is_exact() -> bool {
        false
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        f64::from_str(s.trim()).ok().filter(|v| v.is_finite())
    }
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Option<Self> {
        let x = v as f32;
        x.is_finite().then_some(x)
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }
    fn is_exact() -> bool {
        false
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        f32::from_str(s.trim()).ok().filter(|v| v.is_finite())
    }
}

impl Scalar for BigRational {
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn is_exact() -> bool {
        true
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        rational_from_decimal(s)
    }
}

/// Converts a big rational to the nearest-ish double without overflowing on
/// large numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    // keep 64 significant bits of the quotient
    let shift = 64 - (nb - db);
    let q = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Parses `[-+]digits[.digits][e[-+]digits]` exactly, also accepting `p/q`.
pub fn rational_from_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -value } else { value })
}

/// Neumaier-compensated running sum. Exact scalars skip the compensation.
#[derive(Clone, Debug)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Scalar> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self { sum: T::zero(), carry: T::zero() }
    }
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn add(&mut self, x: T) {
        if T::is_exact() {
            self.sum = self.sum.clone() + x;
            return;
        }
        let t = self.sum.clone() + x.clone();
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.carry = self.carry.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.carry.clone()
    }
}

pub(crate) fn from_usize<T: Scalar>(k: usize) -> T {
    let mut acc = T::zero();
    let one = T::one();
    // small counts only
    for _ in 0..k {
        acc = acc + one.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        let r = rational_from_decimal("0.1").unwrap();
        assert_eq!(r, BigRational::new(1.into(), 10.into()));
        let r = rational_from_decimal("-2.5e-2").unwrap();
        assert_eq!(r, BigRational::new((-1).into(), 40.into()));
        assert_eq!(rational_from_decimal("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(rational_from_decimal("1.2.3").is_none());
        assert!(rational_from_decimal("").is_none());
        assert!(rational_from_decimal("e5").is_none());
    }

    #[test]
    fn huge_ratio_converts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((ratio_to_f64(&r) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::<f64>::default();
        for x in [1e16, 1.0, -1e16, 1.0] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
