//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` is re-exported from `num` (always in lowest terms, positive
//! denominator). [`GaussianRational`] adds an exact imaginary part so that
//! polynomials with unit-circle roots such as `i` or `3/5 + 4/5 i` stay exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational scalar, always normalized.
pub type Rational = BigRational;

/// Build a `Rational` from an integer pair; panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(ratio(num, den), BigRational::zero())
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(ratio(re_num, re_den), ratio(im_num, im_den))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Exact squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.re * c, &self.im * c)
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Convert a rational to the nearest `f64` (good to a few ulps for desk-scale values).
pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale so the integer division keeps ~60 bits of quotient.
    let num = r.numer();
    let den = r.denom();
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64i64 + (den.bits() as i64 - num.bits() as i64).max(0);
    let scaled = (num << shift as u64) / den;
    let (sign, digits) = scaled.to_u64_digits();
    let mut mag = 0.0f64;
    for (i, d) in digits.iter().enumerate().rev() {
        let e = 64 * i as i64 - shift;
        mag += (*d as f64) * 2f64.powi(e as i32);
        if digits.len() - i > 2 {
            break;
        }
    }
    if sign == num::bigint::Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Round a rational to `digits` decimal places (half-away-from-zero), as text.
///
/// Used by the CLI so that exact results print deterministically.
pub fn rational_to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let pow10 = BigInt::from(10u32).pow(digits as u32);
    // round(|r| * 10^digits)
    let scaled = abs.numer() * &pow10;
    let twice = BigInt::from(2) * &scaled;
    let den = abs.denom();
    let q = &scaled / den;
    let rem_doubled = &twice - BigInt::from(2) * &q * den;
    let rounded = if rem_doubled >= den.clone() { q + 1 } else { q };
    let int_part = &rounded / &pow10;
    let frac_part = &rounded % &pow10;
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Short-circuit real-by-real products; the circle model is mostly real.
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn multiplication_and_conjugation() {
        let z = g(3, 5, 4, 5);
        assert_eq!((&z * &z.conj()).re, ratio(1, 1));
        assert!((&z * &z.conj()).im.is_zero());
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = g(2, 3, -1, 7);
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, GaussianRational::one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rational_to_f64(&ratio(1, 2)), 0.5);
        assert!((rational_to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rational_to_f64(&ratio(-7, 4)), -1.75);
        assert_eq!(rational_to_f64(&BigRational::zero()), 0.0);
        let big = BigRational::new(BigInt::from(1u32) << 200, BigInt::from(3));
        let expect = 2f64.powi(200) / 3.0;
        assert!((rational_to_f64(&big) / expect - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(rational_to_decimal(&ratio(1, 2), 4), "0.5000");
        assert_eq!(rational_to_decimal(&ratio(1, 3), 6), "0.333333");
        assert_eq!(rational_to_decimal(&ratio(2, 3), 6), "0.666667");
        assert_eq!(rational_to_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(rational_to_decimal(&ratio(5, 1), 0), "5");
    }
}
