//! Exact elements of Q and of quadratic fields Q(sqrt d).

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// The value `a + b*sqrt(d)`.
///
/// Canonical form: `b == 0` implies `d == 1`, so every rational number has a
/// single representation and mixes freely with any quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: i64,
}

/// Returns true when `d` is a nonzero squarefree integer.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let t = s.trim();
    BigRational::from_str(t)
        .ok()
        .filter(|r| !r.denom().is_zero())
        .ok_or_else(|| AlgebraError::BadRational(t.to_string()))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// Builds `a + b*sqrt(d)`, validating the radicand.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self, AlgebraError> {
        if !is_squarefree(d) {
            return Err(AlgebraError::BadRadicand(d));
        }
        if d == 1 {
            return Ok(Scalar::rational(a + b));
        }
        Ok(Scalar::canon(a, b, d))
    }

    fn canon(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: 1 }
        } else {
            Scalar { a, b, d }
        }
    }

    /// A rational scalar.
    pub fn rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: 1 }
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The fraction `n/m`; panics if `m == 0`.
    pub fn frac(n: i64, m: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i64) -> Result<Self, AlgebraError> {
        Scalar::new(BigRational::zero(), BigRational::one(), d)
    }

    /// Parses the rational and surd parts from `"num/den"` strings.
    pub fn parse(a: &str, b: &str, d: i64) -> Result<Self, AlgebraError> {
        Scalar::new(parse_rational(a)?, parse_rational(b)?, d)
    }

    /// Rational part.
    pub fn re(&self) -> &BigRational {
        &self.a
    }

    /// Surd coefficient.
    pub fn surd(&self) -> &BigRational {
        &self.b
    }

    /// Radicand (1 for rationals).
    pub fn radicand(&self) -> i64 {
        self.d
    }

    /// True for elements of Q.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Zero test.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Zero.
    pub fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }

    /// One.
    pub fn one() -> Self {
        Scalar::rational(BigRational::one())
    }

    fn common_d(&self, o: &Scalar) -> Result<i64, AlgebraError> {
        match (self.d, o.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(AlgebraError::FieldMismatch { left: x, right: y }),
        }
    }

    /// Checked sum.
    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, AlgebraError> {
        let d = self.common_d(o)?;
        Ok(Scalar::canon(&self.a + &o.a, &self.b + &o.b, d))
    }

    /// Checked difference.
    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, AlgebraError> {
        let d = self.common_d(o)?;
        Ok(Scalar::canon(&self.a - &o.a, &self.b - &o.b, d))
    }

    /// Checked product.
    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, AlgebraError> {
        let d = self.common_d(o)?;
        if self.b.is_zero() {
            return Ok(Scalar::canon(&self.a * &o.a, &self.a * &o.b, d));
        }
        if o.b.is_zero() {
            return Ok(Scalar::canon(&self.a * &o.a, &self.b * &o.a, d));
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Scalar::canon(a, b, d))
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    /// Galois conjugate `a - b sqrt d`.
    pub fn conj(&self) -> Scalar {
        Scalar::canon(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::canon(&self.a / &n, -(&self.b / &n), self.d))
    }

    /// Checked quotient.
    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, AlgebraError> {
        self.try_mul(&o.inv()?)
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Scalar, AlgebraError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Exact string form: `"p/q"` or `"p/q+r/s*sqrt(d)"`.
    pub fn to_exact_string(&self) -> String {
        if self.b.is_zero() {
            return fmt_rational(&self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        format!(
            "{}{}{}*sqrt({})",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs()),
            self.d
        )
    }

    /// Rational part and surd part as `"num/den"` strings.
    pub fn parts(&self) -> (String, String) {
        (fmt_rational(&self.a), fmt_rational(&self.b))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

// Operator forms panic on mixed fields; curves carry a single field so this
// only fires on internal bugs.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.try_sub(o).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::canon(-self.a.clone(), -self.b.clone(), self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_identity() {
        let x = Scalar::parse("2", "1", 5).unwrap();
        let y = Scalar::parse("2", "-1", 5).unwrap();
        assert_eq!(&x * &y, Scalar::int(-1));
    }

    #[test]
    fn halves_sum_to_one() {
        let h = Scalar::frac(1, 2);
        assert_eq!(&h + &h, Scalar::one());
    }

    #[test]
    fn inverse_of_root_two() {
        let r = Scalar::sqrt(2).unwrap();
        let expect = Scalar::parse("0", "1/2", 2).unwrap();
        assert_eq!(r.inv().unwrap(), expect);
        assert_eq!(Scalar::zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Scalar::sqrt(2).unwrap();
        let b = Scalar::sqrt(3).unwrap();
        assert_eq!(
            a.try_add(&b),
            Err(AlgebraError::FieldMismatch { left: 2, right: 3 })
        );
        assert!(a.try_add(&Scalar::one()).is_ok());
    }

    #[test]
    fn radicand_must_be_squarefree() {
        assert!(Scalar::sqrt(8).is_err());
        assert!(Scalar::sqrt(-3).is_ok());
        assert!(is_squarefree(-1));
    }

    #[test]
    fn exact_strings() {
        let x = Scalar::parse("11/4", "5/4", 5).unwrap();
        assert_eq!(x.to_exact_string(), "11/4+5/4*sqrt(5)");
        assert_eq!(Scalar::frac(-3, 6).to_exact_string(), "-1/2");
    }
}
