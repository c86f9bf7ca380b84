//! Truncated power series over a ring with dynamic zero tests.
//!
//! A series is a coefficient vector `c[0], c[1], ...` standing for
//! `sum c[i] τ^i`; every operation truncates to a requested length.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{DynField, Ring};
use crate::quotient::Split;
use crate::scalar::Scalar;

/// Product truncated to `len` coefficients.
pub fn mul<R: Ring>(a: &[R], b: &[R], len: usize) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

/// Coefficient `i` or zero.
pub fn at<R: Ring>(a: &[R], i: usize) -> R {
    a.get(i).cloned().unwrap_or_else(R::zero)
}

/// Formal derivative.
pub fn derivative<R: Ring>(a: &[R]) -> Vec<R> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.times(&R::from_int(i as i64)))
        .collect()
}

/// Inverse of a series whose constant term is a unit.
pub fn inverse<R: DynField>(a: &[R], len: usize) -> Result<Vec<R>, Split> {
    let c0 = a[0].try_inv()?;
    let mut out = vec![R::zero(); len];
    if len == 0 {
        return Ok(out);
    }
    out[0] = c0.clone();
    for n in 1..len {
        let mut s = R::zero();
        for k in 1..=n {
            s = s.plus(&at(a, k).times(&out[n - k]));
        }
        out[n] = s.times(&c0).negate();
    }
    Ok(out)
}

/// `u^alpha` for a series with `u[0] = 1` and rational `alpha`.
pub fn power<R: Ring>(u: &[R], alpha: &Scalar, len: usize) -> Vec<R> {
    let mut f = vec![R::zero(); len];
    if len == 0 {
        return f;
    }
    f[0] = R::one();
    for n in 1..len {
        let mut s = R::zero();
        for k in 1..=n {
            let uk = at(u, k);
            if uk.is_zero() {
                continue;
            }
            // (alpha k - n + k) / n
            let w = &(&(alpha * &Scalar::int(k as i64)) - &Scalar::int((n - k) as i64))
                * &Scalar::frac(1, n as i64);
            s = s.plus(&R::from_scalar(&w).times(&uk).times(&f[n - k]));
        }
        f[n] = s;
    }
    f
}

/// Laurent series `τ^val * sum c[i] τ^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LSeries<R> {
    /// Valuation offset.
    pub val: i64,
    /// Coefficients from `τ^val` upward.
    pub c: Vec<R>,
}

impl<R: Ring> LSeries<R> {
    /// Coefficient of `τ^k`.
    pub fn coeff(&self, k: i64) -> R {
        if k < self.val {
            return R::zero();
        }
        at(&self.c, (k - self.val) as usize)
    }

    /// Exclusive upper bound of the known exponents.
    pub fn precision(&self) -> i64 {
        self.val + self.c.len() as i64
    }
}

/// Reversion data: a base series `B = c τ^n u(τ)` with `u(0) = 1` and the
/// local parameter `w = τ u^{1/n}`, so that `B = c w^n` exactly.
///
/// Returns `[w^k] H` for `k` in `lo..hi` via the Lagrange form
/// `[w^k] H = [τ^k] H v^k (1 + τ u'/(n u))` with `v = u^{-1/n}`.
pub fn reexpand<R: DynField>(
    u: &[R],
    n: i64,
    h: &LSeries<R>,
    hi: i64,
) -> Result<Vec<(i64, R)>, Split> {
    let lo = h.val;
    if hi <= lo {
        return Ok(Vec::new());
    }
    let len = (hi - lo) as usize;
    let inv_n = Scalar::frac(1, n);
    let du = derivative(u);
    let uinv = inverse(u, len)?;
    // L = 1 + τ u'/(n u)
    let q = mul(&du, &uinv, len);
    let mut l = vec![R::zero(); len];
    l[0] = R::one();
    for i in 1..len {
        l[i] = l[i].plus(&q[i - 1].times(&R::from_scalar(&inv_n)));
    }
    // HL with valuation lo
    let hl = mul(&h.c, &l, len);
    let v = power(u, &(-&inv_n), len);
    let vi = power(u, &inv_n, len);
    let mut out = Vec::with_capacity(len);
    // powers of v (k >= 0) and of 1/v (k < 0), built incrementally
    let mut pos: Vec<R> = vec![R::zero(); len];
    pos[0] = R::one();
    let mut pos_k = 0i64;
    let mut neg: Vec<R> = pos.clone();
    let mut neg_k = 0i64;
    let coef_at = |k: i64, pw: &[R]| {
        // [τ^k] τ^lo hl(τ) pw(τ) = sum_i hl[i] pw[k - lo - i]
        let top = (k - lo) as usize;
        let mut s = R::zero();
        for i in 0..=top.min(len - 1) {
            let p = at(pw, top - i);
            if !p.is_zero() && !hl[i].is_zero() {
                s = s.plus(&hl[i].times(&p));
            }
        }
        s
    };
    if lo < 0 {
        // need (1/v)^{|k|} for k from lo up to -1; descend from -1
        let mut negs: Vec<(i64, R)> = Vec::new();
        for k in (lo..0.min(hi)).rev() {
            while neg_k < -k {
                neg = mul(&neg, &vi, len);
                neg_k += 1;
            }
            negs.push((k, coef_at(k, &neg)));
        }
        negs.reverse();
        out.extend(negs);
    }
    for k in lo.max(0)..hi {
        while pos_k < k {
            pos = mul(&pos, &v, len);
            pos_k += 1;
        }
        out.push((k, coef_at(k, &pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let inv = inverse(&s(&[1, -1]), 5).unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn square_root_squared() {
        let u = s(&[1, 3, -2, 5]);
        let r = power(&u, &Scalar::frac(1, 2), 6);
        let sq = mul(&r, &r, 6);
        assert_eq!(&sq[..4], &u[..]);
        assert!(sq[4..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn reversion_of_shifted_square() {
        // B = τ^2 (1 + τ), H = τ^3: B = w^2 with w = τ sqrt(1+τ).
        // Then τ = w - w^2/2 + 5w^3/8 - ..., H = w^3 - 3/2 w^4 + ...
        let u = s(&[1, 1]);
        let h = LSeries { val: 3, c: s(&[1]) };
        let r = reexpand(&u, 2, &h, 6).unwrap();
        assert_eq!(r[0], (3, Scalar::one()));
        assert_eq!(r[1], (4, Scalar::frac(-3, 2)));
        // τ itself
        let t = LSeries { val: 1, c: s(&[1]) };
        let r = reexpand(&u, 2, &t, 4).unwrap();
        assert_eq!(r[1], (2, Scalar::frac(-1, 2)));
        assert_eq!(r[2], (3, Scalar::frac(5, 8)));
    }

    #[test]
    fn reversion_with_pole() {
        // B = τ^-1 (1 + τ) = w^-1, w = τ/(1+τ), τ = w/(1-w); H = τ^-2 = w^-2 (1-w)^2.
        let u = s(&[1, 1]);
        let h = LSeries { val: -2, c: s(&[1]) };
        let r = reexpand(&u, -1, &h, 2).unwrap();
        assert_eq!(r, alloc::vec![(-2, Scalar::one()), (-1, Scalar::int(-2)), (0, Scalar::one()), (1, Scalar::zero())]);
    }
}
