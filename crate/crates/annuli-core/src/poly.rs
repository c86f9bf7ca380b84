//! Dense univariate polynomials over abstract coefficient rings.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quotient::Split;
use crate::scalar::Scalar;

/// Commutative ring with unit containing the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Exact zero test (zero divisors are not zero).
    fn is_zero(&self) -> bool;
    /// Sum.
    fn plus(&self, o: &Self) -> Self;
    /// Difference.
    fn minus(&self, o: &Self) -> Self;
    /// Product.
    fn times(&self, o: &Self) -> Self;
    /// Additive inverse.
    fn negate(&self) -> Self;
    /// Image of a field scalar.
    fn from_scalar(s: &Scalar) -> Self;
    /// Image of an integer.
    fn from_int(n: i64) -> Self {
        Self::from_scalar(&Scalar::int(n))
    }
}

/// Ring in which every element is zero, a unit, or witnesses a splitting of
/// the underlying modulus.
pub trait DynField: Ring {
    /// `Ok(true)` for zero, `Ok(false)` for a unit.
    fn zero_test(&self) -> Result<bool, Split>;
    /// Inverse of a unit.
    fn try_inv(&self) -> Result<Self, Split>;
}

/// Integral domain with exact division.
pub trait Domain: Ring {
    /// `self / o` when it is exact.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

impl DynField for Scalar {
    fn zero_test(&self) -> Result<bool, Split> {
        Ok(self.is_zero())
    }
    fn try_inv(&self) -> Result<Self, Split> {
        Ok(self.inv().expect("inverse of zero scalar"))
    }
}

impl Domain for Scalar {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        self.try_div(o).ok()
    }
}

/// Polynomial `c[0] + c[1] x + ...` with no trailing exact zeros.
#[derive(Clone, PartialEq)]
pub struct UPoly<R> {
    c: Vec<R>,
}

/// Polynomial over the base field.
pub type KPoly = UPoly<Scalar>;

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:?})x^{}", a, k)?;
        }
        Ok(())
    }
}

impl<R: Ring> UPoly<R> {
    /// Human-readable form in the variable `var`, highest degree first.
    pub fn render(&self, var: &str) -> alloc::string::String
    where
        R: fmt::Display,
    {
        use alloc::format;
        if self.c.is_empty() {
            return "0".into();
        }
        let parts: Vec<alloc::string::String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| match k {
                0 => format!("({})", a),
                1 => format!("({})*{}", a, var),
                _ => format!("({})*{}^{}", a, var, k),
            })
            .collect();
        parts.join(" + ")
    }

    /// Builds from ascending coefficients.
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    /// The constant one.
    pub fn one() -> Self {
        UPoly::constant(R::one())
    }

    /// A constant.
    pub fn constant(a: R) -> Self {
        UPoly::new(vec![a])
    }

    /// `a x^k`.
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        UPoly::new(c)
    }

    /// The variable.
    pub fn x() -> Self {
        UPoly::monomial(R::one(), 1)
    }

    /// `x - a`.
    pub fn linear_root(a: &R) -> Self {
        UPoly::new(vec![a.negate(), R::one()])
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    /// Degree, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for zero.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    /// Zero test.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    /// Sum.
    pub fn plus(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect();
        UPoly::new(c)
    }

    /// Difference.
    pub fn minus(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect();
        UPoly::new(c)
    }

    /// Negation.
    pub fn negate(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| a.negate()).collect() }
    }

    /// Product.
    pub fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].plus(&a.times(b));
                }
            }
        }
        UPoly::new(c)
    }

    /// Multiplies every coefficient by `a`.
    pub fn scale(&self, a: &R) -> Self {
        UPoly::new(self.c.iter().map(|b| b.times(a)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = UPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &R) -> R {
        self.c.iter().rev().fold(R::zero(), |acc, b| acc.times(a).plus(b))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.times(&R::from_int(k as i64)))
            .collect();
        UPoly::new(c)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &Self) -> Self {
        let dm = m.c.len() - 1;
        if self.c.len() <= dm {
            return self.clone();
        }
        let mut c = self.c.clone();
        for k in (dm..c.len()).rev() {
            let a = c[k].clone();
            if a.is_zero() {
                continue;
            }
            for j in 0..dm {
                c[k - dm + j] = c[k - dm + j].minus(&a.times(&m.c[j]));
            }
            c[k] = R::zero();
        }
        c.truncate(dm);
        UPoly::new(c)
    }

    /// `f(x + a)`.
    pub fn taylor_shift(&self, a: &R) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].times(a);
                c[j] = c[j].plus(&t);
            }
        }
        UPoly::new(c)
    }

    /// Composition `f(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.c
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, b| acc.times(g).plus(&UPoly::constant(b.clone())))
    }

    /// Maps coefficients into another ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.c.iter().map(f).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.c.len() - 1;
        if self.c.len() <= db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut e = self.c.len() - db;
        while !r.is_zero() && r.c.len() > db {
            let k = r.c.len() - 1 - db;
            let lr = r.lc();
            r = r.scale(&lb).minus(&b.scale(&lr).shift(k));
            e -= 1;
        }
        let mut f = R::one();
        for _ in 0..e {
            f = f.times(&lb);
        }
        r.scale(&f)
    }
}

impl<R: DynField> UPoly<R> {
    /// Strips leading zeros; fails if a leading coefficient is a zero divisor.
    pub fn normalized(&self) -> Result<Self, Split> {
        let mut c = self.c.clone();
        while let Some(a) = c.last() {
            if a.zero_test()? {
                c.pop();
            } else {
                break;
            }
        }
        Ok(UPoly { c })
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Result<Self, Split> {
        let f = self.normalized()?;
        if f.is_zero() {
            return Ok(f);
        }
        let inv = f.lc().try_inv()?;
        Ok(f.scale(&inv))
    }

    /// Euclidean division.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self), Split> {
        let g = g.normalized()?;
        assert!(!g.is_zero(), "polynomial division by zero");
        let inv = g.lc().try_inv()?;
        let dg = g.c.len() - 1;
        let mut r = self.normalized()?;
        let mut q = vec![R::zero(); r.c.len().saturating_sub(dg)];
        while !r.is_zero() && r.c.len() > dg {
            let k = r.c.len() - 1 - dg;
            let a = r.lc().times(&inv);
            q[k] = a.clone();
            r = r.minus(&g.scale(&a).shift(k));
            r.c.truncate(dg + k);
            r = UPoly::new(r.c).normalized()?;
        }
        Ok((UPoly::new(q), r))
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, g: &Self) -> Result<Self, Split> {
        let mut a = self.normalized()?;
        let mut b = g.normalized()?;
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s f + t h = g`, g monic.
    pub fn ext_gcd(&self, h: &Self) -> Result<(Self, Self, Self), Split> {
        let (mut r0, mut r1) = (self.normalized()?, h.normalized()?);
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.minus(&q.times(&s1));
            let t = t0.minus(&q.times(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = r0.lc().try_inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Exact quotient, `None` if a remainder is left.
    pub fn div_exact(&self, g: &Self) -> Result<Option<Self>, Split> {
        let (q, r) = self.divrem(g)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Result<Self, Split> {
        let f = self.normalized()?;
        let g = f.gcd(&f.derivative())?;
        let (q, _) = f.divrem(&g)?;
        q.monic()
    }
}

impl Ring for KPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        UPoly::plus(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        UPoly::minus(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        UPoly::times(self, o)
    }
    fn negate(&self) -> Self {
        UPoly::negate(self)
    }
    fn from_scalar(s: &Scalar) -> Self {
        UPoly::constant(s.clone())
    }
}

impl Domain for KPoly {
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        self.div_exact(o).ok().flatten()
    }
}

/// Helpers for field polynomials, where splitting never happens.
impl KPoly {
    /// gcd over the base field.
    pub fn gcd_k(&self, g: &Self) -> Self {
        self.gcd(g).expect("field gcd cannot split")
    }

    /// Euclidean division over the base field.
    pub fn divrem_k(&self, g: &Self) -> (Self, Self) {
        self.divrem(g).expect("field division cannot split")
    }

    /// Monic associate over the base field.
    pub fn monic_k(&self) -> Self {
        self.monic().expect("field monic cannot split")
    }

    /// Squarefree part over the base field.
    pub fn squarefree_k(&self) -> Self {
        self.squarefree_part().expect("field squarefree cannot split")
    }

    /// Builds from integer coefficients (ascending).
    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&a| Scalar::int(a)).collect())
    }

    /// Removes the largest power of `x` dividing the polynomial.
    pub fn strip_x(&self) -> (Self, usize) {
        let k = self.c.iter().take_while(|a| a.is_zero()).count();
        (UPoly::new(self.c[k..].to_vec()), k)
    }

    /// Squarefree factorization `f = c * prod g_i^i` (Yun); returns `(g_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.deg().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic_k();
        let df = f.derivative();
        let a0 = f.gcd_k(&df);
        let mut b = f.divrem_k(&a0).0;
        let mut c = df.divrem_k(&a0).0;
        let mut d = c.minus(&b.derivative());
        let mut i = 1;
        while b.deg().unwrap_or(0) > 0 {
            let a = b.gcd_k(&d);
            b = b.divrem_k(&a).0;
            c = d.divrem_k(&a).0;
            if a.deg().unwrap_or(0) > 0 {
                out.push((a.monic_k(), i));
            }
            d = c.minus(&b.derivative());
            i += 1;
        }
        out
    }
}

/// Resultant by the subresultant pseudo-remainder sequence.
///
/// `Res(f, g) = lc(f)^deg g * prod g(a_i)` over the roots `a_i` of `f`.
pub fn resultant<R: Domain>(f: &UPoly<R>, g: &UPoly<R>) -> R {
    if f.is_zero() || g.is_zero() {
        return R::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = R::one();
    let (da, db) = (a.c.len() - 1, b.c.len() - 1);
    if da < db {
        core::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = s.negate();
        }
    }
    if b.c.len() == 1 {
        let mut acc = s;
        for _ in 0..(a.c.len() - 1) {
            acc = acc.times(&b.c[0]);
        }
        return acc;
    }
    let mut g_ = R::one();
    let mut h = R::one();
    loop {
        let (dea, deb) = (a.c.len() - 1, b.c.len() - 1);
        let delta = dea - deb;
        if dea % 2 == 1 && deb % 2 == 1 {
            s = s.negate();
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return R::zero();
        }
        let mut den = g_.clone();
        for _ in 0..delta {
            den = den.times(&h);
        }
        a = b;
        b = UPoly::new(
            r.c.iter()
                .map(|x| x.exact_div(&den).expect("subresultant division"))
                .collect(),
        );
        g_ = a.lc();
        if delta == 0 {
            // h unchanged
        } else {
            let mut num = R::one();
            for _ in 0..delta {
                num = num.times(&g_);
            }
            let mut hd = R::one();
            for _ in 0..delta - 1 {
                hd = hd.times(&h);
            }
            h = num.exact_div(&hd).expect("subresultant division");
        }
        if b.c.len() == 1 {
            let da = a.c.len() - 1;
            let mut num = R::one();
            for _ in 0..da {
                num = num.times(&b.c[0]);
            }
            let mut hd = R::one();
            for _ in 0..da - 1 {
                hd = hd.times(&h);
            }
            return s.times(&num.exact_div(&hd).expect("subresultant division"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> KPoly {
        KPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 0, 1]).gcd_k(&p(&[-1, 0, 1])), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 0, 2]).gcd_k(&p(&[-1, 0, 0, 1])), p(&[-1, 0, 0, 1]));
        assert_eq!(p(&[0, 1]).gcd_k(&p(&[1, 1])), p(&[1]));
        assert_eq!(p(&[2, 4]).gcd_k(&KPoly::zero()), p(&[1, 2]).monic_k());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), Scalar::int(1));
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-5, 1])), Scalar::int(-2));
        let f = p(&[1, 2, 3, 4]);
        assert_eq!(resultant(&f, &f), Scalar::zero());
    }

    #[test]
    fn resultant_symbolic_roots() {
        // Res_t(t - a, t - b) = a - b with a, b as polynomials in v.
        let a: UPoly<KPoly> = UPoly::new(vec![p(&[0, -1]), KPoly::one()]);
        let b: UPoly<KPoly> = UPoly::new(vec![p(&[-7]), KPoly::one()]);
        assert_eq!(resultant(&a, &b), p(&[-7, 1]));
    }

    #[test]
    fn squarefree_example() {
        let f = p(&[-1, 1]).pow(2).times(&p(&[1, 1, 1]));
        assert_eq!(f.squarefree_k(), p(&[-1, 0, 0, 1]));
        assert_eq!(p(&[1, -2, 1]).squarefree_k(), p(&[-1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, alloc::vec![(p(&[1, 1, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f = p(&[3, -1, 0, 2]);
        let a = Scalar::frac(1, 3);
        let g = f.taylor_shift(&a);
        assert_eq!(g.coeff(0), f.eval(&a));
        assert_eq!(g.coeff(1), f.derivative().eval(&a));
    }
}
