//! Integer polynomials evaluated exactly at dyadic points.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::ratio_to_f64;

const UNIT: f64 = f64::EPSILON / 2.0;

/// `y = mantissa * 2^exp` for a positive finite double.
fn dyadic(y: f64) -> (BigInt, i64) {
    debug_assert!(y.is_finite() && y > 0.0);
    let bits = y.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    let tz = m.trailing_zeros() as i64;
    (BigInt::from(m >> tz), e + tz)
}

/// `Q(y) = P(-y)` scaled to integer coefficients, for a polynomial `P` with
/// rational coefficients. Sign queries are exact.
#[derive(Clone, Debug)]
pub(crate) struct ExactPoly {
    a: Vec<BigInt>,
    /// `a_k / 2^shift` as doubles, for the filtered fast path.
    af: Vec<f64>,
    denom: BigInt,
    shift: i64,
}

impl ExactPoly {
    /// Builds `Q(y) = P(-y)` from the coefficients of `P`.
    pub(crate) fn negated_argument(c: &[BigRational]) -> Self {
        let denom = c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let a: Vec<BigInt> = c
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let v = r.numer() * (&denom / r.denom());
                if k % 2 == 1 { -v } else { v }
            })
            .collect();
        let bits = a.iter().map(|v| v.bits()).max().unwrap_or(0) as i64;
        let shift = (bits - 900).max(0);
        let scale = BigInt::one() << shift as usize;
        let af = a.iter().map(|v| ratio_to_f64(&BigRational::new(v.clone(), scale.clone()))).collect();
        Self { a, af, denom, shift }
    }

    pub(crate) fn degree(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    /// Floating evaluation with a rigorous error bound, or `None` when the
    /// sign cannot be certified.
    fn filtered_sign(&self, y: f64) -> Option<i8> {
        let d = self.degree() as f64;
        let (v, mag, extra) = if y <= 1.0 {
            let mut v = 0.0;
            let mut mag = 0.0;
            for c in self.af.iter().rev() {
                v = v * y + c;
                mag = mag * y + c.abs();
            }
            (v, mag, 0.0)
        } else {
            // reversed polynomial in z = 1/y has the same sign for y > 0
            let z = 1.0 / y;
            let mut v = 0.0;
            let mut mag = 0.0;
            for c in self.af.iter() {
                v = v * z + c;
                mag = mag * z + c.abs();
            }
            (v, mag, d)
        };
        if !v.is_finite() || !mag.is_finite() {
            return None;
        }
        let bound = (4.0 * d + 4.0 + extra) * UNIT * mag * 1.01 + 1e-290;
        if v.abs() > bound {
            Some(if v > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    /// `q^d Q(p/q)` with `y = p/q`, `q` a power of two.
    fn homogeneous_value(&self, y: f64) -> (BigInt, i64) {
        let (m, e) = dyadic(y);
        let d = self.degree();
        let (p, s) = if e >= 0 { (m << e as usize, 0i64) } else { (m, -e) };
        let mut acc = self.a[d].clone();
        for k in (0..d).rev() {
            acc = acc * &p + (&self.a[k] << (s as usize * (d - k)));
        }
        (acc, s * d as i64)
    }

    /// Sign of `Q(y)` for `y > 0`.
    pub(crate) fn sign_at(&self, y: f64) -> i8 {
        if let Some(s) = self.filtered_sign(y) {
            return s;
        }
        match self.homogeneous_value(y).0.sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        }
    }

    /// `P(-y)` rounded to a double.
    pub(crate) fn value_at(&self, y: f64) -> f64 {
        let (v, s) = self.homogeneous_value(y);
        let den = &self.denom << s as usize;
        ratio_to_f64(&BigRational::new(v, den))
    }

    /// `sum_k |P_k| y^k`, the scale against which values near a root are judged.
    pub(crate) fn magnitude_at(&self, y: f64) -> f64 {
        let mut mag = 0.0;
        let log_power = if y <= 1.0 {
            for c in self.af.iter().rev() {
                mag = mag * y + c.abs();
            }
            0.0
        } else {
            let z = 1.0 / y;
            for c in self.af.iter() {
                mag = mag * z + c.abs();
            }
            self.degree() as f64 * y.ln()
        };
        let log_denom = ratio_to_f64(&BigRational::new(self.denom.clone(), BigInt::one() << self.shift as usize)).ln();
        (mag.ln() + log_power - log_denom).exp()
    }

    /// Sign changes in the Taylor coefficients of `Q` at `y`. For a polynomial
    /// with only real roots, `changes(a) - changes(b)` counts roots in `(a, b]`.
    pub(crate) fn taylor_sign_changes(&self, y: f64) -> usize {
        let (m, e) = dyadic(y);
        let d = self.degree();
        let (p, s) = if e >= 0 { (m << e as usize, 0usize) } else { (m, (-e) as usize) };
        let mut g: Vec<BigInt> = (0..=d).map(|k| &self.a[k] << (s * (d - k))).collect();
        for i in 0..d {
            for j in (i..d).rev() {
                let t = &p * &g[j + 1];
                g[j] += t;
            }
        }
        let mut changes = 0;
        let mut last = 0i8;
        for c in &g {
            let sgn = match c.sign() {
                Sign::Plus => 1,
                Sign::Minus => -1,
                Sign::NoSign => continue,
            };
            if last != 0 && sgn != last {
                changes += 1;
            }
            last = sgn;
        }
        changes
    }

    /// Whether every coefficient of `P` is non-negative.
    pub(crate) fn has_nonnegative_source(&self) -> bool {
        self.a.iter().enumerate().all(|(k, v)| v.is_zero() || (v.is_positive() == (k % 2 == 0)))
    }
}
