//! Sparse Laurent polynomials in one variable `t`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::AlgebraError;
use crate::poly::{KPoly, UPoly};
use crate::scalar::Scalar;

/// Finite sum `sum c_k t^k`, `k` in Z, with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})t^{}", c, k)?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    /// A constant.
    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c t^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        LaurentPoly::monomial(Scalar::one(), k)
    }

    /// `t - a`.
    pub fn t_minus(a: Scalar) -> Self {
        LaurentPoly::t_pow(1).sub(&LaurentPoly::constant(a))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut f = LaurentPoly::zero();
        for (k, c) in terms {
            f.add_term(k, &c);
        }
        f
    }

    /// Builds from integer coefficients of `t^lo, t^(lo+1), ...`.
    pub fn from_ints(lo: i64, c: &[i64]) -> Self {
        LaurentPoly::from_terms(c.iter().enumerate().map(|(i, &a)| (lo + i as i64, Scalar::int(a))))
    }

    /// `N(t) t^shift` for a field polynomial `N`.
    pub fn from_poly(n: &KPoly, shift: i64) -> Self {
        LaurentPoly::from_terms(
            n.coeffs().iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.get(&k) {
            Some(b) => b + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Zero test.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when there are no terms.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent (`deg`).
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest exponent (`ord_0`).
    pub fn bot(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of the top term.
    pub fn top_coeff(&self) -> Scalar {
        self.coeffs.values().next_back().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the bottom term.
    pub fn bot_coeff(&self) -> Scalar {
        self.coeffs.values().next().cloned().unwrap_or_else(Scalar::zero)
    }

    /// True when every exponent is zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    /// Radicand of the coefficient field (1 for Q).
    pub fn radicand(&self) -> i64 {
        self.coeffs.values().map(|c| c.radicand()).find(|&d| d != 1).unwrap_or(1)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (k, c) in &o.coeffs {
            f.add_term(*k, c);
        }
        f
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut f = LaurentPoly::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                f.add_term(i + j, &(a * b));
            }
        }
        f
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(k, a)| (*k, a * c)))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Nonnegative power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::constant(Scalar::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(
            self.coeffs.iter().map(|(k, c)| (k - 1, c * &Scalar::int(*k))),
        )
    }

    /// Substitution `t -> 1/t`.
    pub fn compose_inv_t(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// Substitution `t -> c t`.
    pub fn compose_scale(&self, c: &Scalar) -> Self {
        LaurentPoly::from_terms(
            self.coeffs.iter().map(|(k, a)| (*k, a * &c.pow(*k).expect("nonzero scale"))),
        )
    }

    /// Substitution `t -> t^d` for `d` nonzero.
    pub fn compose_power(&self, d: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (k * d, c.clone())).collect() }
    }

    /// Composition `P(self)` for a Laurent polynomial `P`; negative powers
    /// of `self` require `self` to be a monomial.
    pub fn substitute_into(&self, p: &LaurentPoly) -> Result<Self, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for (k, c) in p.terms() {
            let pw = if k >= 0 {
                self.pow(k as u32)
            } else {
                self.monomial_inverse()?.pow((-k) as u32)
            };
            out = out.add(&pw.scale(c));
        }
        Ok(out)
    }

    /// Inverse of a monomial.
    pub fn monomial_inverse(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.len() != 1 {
            return Err(AlgebraError::NotDivisible);
        }
        let (k, c) = self.coeffs.iter().next().expect("one term");
        Ok(LaurentPoly::monomial(c.inv()?, -k))
    }

    /// Value at `t = a`.
    pub fn eval(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        if a.is_zero() {
            if self.bot().is_some_and(|b| b < 0) {
                return Err(AlgebraError::EvalAtPole);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Scalar::zero();
        for (k, c) in &self.coeffs {
            acc = &acc + &(c * &a.pow(*k)?);
        }
        Ok(acc)
    }

    /// Splits `f = N(t) t^e` with `N(0) != 0`.
    pub fn numerator(&self) -> (KPoly, i64) {
        let Some(lo) = self.bot() else {
            return (KPoly::zero(), 0);
        };
        let hi = self.top().expect("nonzero");
        let c: Vec<Scalar> = (lo..=hi).map(|k| self.coeff(k)).collect();
        (UPoly::new(c), lo)
    }

    /// Exact quotient `f / g`.
    pub fn exact_div(&self, g: &Self) -> Result<Self, AlgebraError> {
        if g.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (nf, ef) = self.numerator();
        let (ng, eg) = g.numerator();
        let (q, r) = nf.divrem_k(&ng);
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(LaurentPoly::from_poly(&q, ef - eg))
    }

    /// Gcd of all exponents (0 for constants).
    pub fn exponent_gcd(&self) -> i64 {
        self.coeffs.keys().fold(0i64, |g, &k| num_integer::gcd(g, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_derivative() {
        let a = LaurentPoly::from_ints(0, &[-1, 1]);
        let b = LaurentPoly::from_ints(0, &[1, 1]);
        assert_eq!(a.mul(&b), LaurentPoly::from_ints(0, &[-1, 0, 1]));
        let f = LaurentPoly::from_ints(-1, &[2, -3, 0, 1]);
        let df = LaurentPoly::from_terms([(1, Scalar::int(2)), (-2, Scalar::int(-2))]);
        assert_eq!(f.derivative(), df);
    }

    #[test]
    fn inversion_of_variable() {
        let f = LaurentPoly::from_ints(1, &[-3, 0, 1]);
        let g = LaurentPoly::from_terms([(-3, Scalar::int(1)), (-1, Scalar::int(-3))]);
        assert_eq!(f.compose_inv_t(), g);
    }

    #[test]
    fn exact_division() {
        let u1 = LaurentPoly::from_ints(0, &[-1, 1]);
        assert_eq!(
            LaurentPoly::from_ints(0, &[-1, 0, 1]).exact_div(&u1).unwrap(),
            LaurentPoly::from_ints(0, &[1, 1])
        );
        // [(1/u - 1/2) - 1/2] u^2 / (u - 1) = -u
        let p = LaurentPoly::from_terms([(-1, Scalar::one()), (0, Scalar::int(-1))]);
        let q = p.mul(&LaurentPoly::t_pow(2)).exact_div(&u1).unwrap();
        assert_eq!(q, LaurentPoly::from_ints(1, &[-1]));
        assert_eq!(
            LaurentPoly::from_ints(0, &[1, 0, 1]).exact_div(&u1),
            Err(AlgebraError::NotDivisible)
        );
    }

    #[test]
    fn eval_at_pole() {
        let f = LaurentPoly::from_ints(-1, &[1, 1]);
        assert_eq!(f.eval(&Scalar::zero()), Err(AlgebraError::EvalAtPole));
        assert_eq!(f.eval(&Scalar::int(2)).unwrap(), Scalar::frac(3, 2));
    }
}
