//! Residue rings `K[s]/(m)` for squarefree `m`, with dynamic splitting.
//!
//! Every operation either succeeds uniformly over all roots of `m` or
//! reports a [`Split`] carrying a nontrivial factorization of `m`; callers
//! restart on each factor (see [`split_run`]).

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::poly::{DynField, KPoly, Ring, UPoly};
use crate::scalar::Scalar;

/// Nontrivial factorization `m = factor * cofactor` found at a zero divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    /// Monic factor.
    pub factor: KPoly,
    /// Monic cofactor.
    pub cofactor: KPoly,
}

/// Residue class in `K[s]/(m)`.
///
/// Constants carry no modulus and adopt the one of the other operand.
#[derive(Clone, Debug)]
pub struct QElem {
    rep: KPoly,
    m: Option<Arc<KPoly>>,
}

impl PartialEq for QElem {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep
    }
}

impl QElem {
    /// Reduces `rep` modulo `m` (which must be monic).
    pub fn new(rep: KPoly, m: &Arc<KPoly>) -> Self {
        QElem { rep: rep.rem_monic(m), m: Some(m.clone()) }
    }

    /// The class of the generator `s`.
    pub fn generator(m: &Arc<KPoly>) -> Self {
        QElem::new(KPoly::x(), m)
    }

    /// A constant residue.
    pub fn constant(a: Scalar, m: &Arc<KPoly>) -> Self {
        QElem::new(KPoly::constant(a), m)
    }

    /// Representative of degree below `deg m`.
    pub fn rep(&self) -> &KPoly {
        &self.rep
    }

    /// The modulus, if attached.
    pub fn modulus(&self) -> Option<&Arc<KPoly>> {
        self.m.as_ref()
    }

    fn pick(&self, o: &Self) -> Option<Arc<KPoly>> {
        self.m.clone().or_else(|| o.m.clone())
    }

    /// Inverse with an explicit modulus check.
    pub fn inverse(&self) -> Result<Self, Split> {
        self.try_inv()
    }
}

impl Ring for QElem {
    fn zero() -> Self {
        QElem { rep: KPoly::zero(), m: None }
    }
    fn one() -> Self {
        QElem { rep: KPoly::one(), m: None }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        QElem { rep: self.rep.plus(&o.rep), m: self.pick(o) }
    }
    fn minus(&self, o: &Self) -> Self {
        QElem { rep: self.rep.minus(&o.rep), m: self.pick(o) }
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.pick(o);
        let p = self.rep.times(&o.rep);
        let rep = match &m {
            Some(m) => p.rem_monic(m),
            None => p,
        };
        QElem { rep, m }
    }
    fn negate(&self) -> Self {
        QElem { rep: self.rep.negate(), m: self.m.clone() }
    }
    fn from_scalar(s: &Scalar) -> Self {
        QElem { rep: KPoly::constant(s.clone()), m: None }
    }
}

impl DynField for QElem {
    fn zero_test(&self) -> Result<bool, Split> {
        if self.rep.is_zero() {
            return Ok(true);
        }
        let Some(m) = &self.m else {
            return Ok(false);
        };
        let g = self.rep.gcd_k(m);
        if g.deg() == Some(0) {
            Ok(false)
        } else {
            let cof = m.divrem_k(&g).0.monic_k();
            Err(Split { factor: g, cofactor: cof })
        }
    }

    fn try_inv(&self) -> Result<Self, Split> {
        assert!(!self.rep.is_zero(), "inverse of zero residue");
        let Some(m) = &self.m else {
            let c = self.rep.coeff(0).inv().expect("nonzero constant");
            return Ok(QElem { rep: KPoly::constant(c), m: None });
        };
        let (g, s, _) = self.rep.ext_gcd(m).expect("field gcd cannot split");
        if g.deg() == Some(0) {
            Ok(QElem::new(s, m))
        } else {
            let cof = m.divrem_k(&g).0.monic_k();
            Err(Split { factor: g, cofactor: cof })
        }
    }
}

/// Residue of `R[u]` modulo a monic polynomial, for towers of extensions.
#[derive(Clone, Debug)]
pub struct Ext<R: Ring> {
    rep: UPoly<R>,
    m: Option<Arc<UPoly<R>>>,
}

impl<R: Ring> PartialEq for Ext<R> {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep
    }
}

impl<R: Ring> Ext<R> {
    /// Reduces `rep` modulo the monic `m`.
    pub fn new(rep: UPoly<R>, m: &Arc<UPoly<R>>) -> Self {
        Ext { rep: rep.rem_monic(m), m: Some(m.clone()) }
    }

    /// The class of the generator `u`.
    pub fn generator(m: &Arc<UPoly<R>>) -> Self {
        Ext::new(UPoly::x(), m)
    }

    /// The class of a constant.
    pub fn constant(a: R, m: &Arc<UPoly<R>>) -> Self {
        Ext::new(UPoly::constant(a), m)
    }

    /// Representative of degree below `deg m`.
    pub fn rep(&self) -> &UPoly<R> {
        &self.rep
    }

    fn pick(&self, o: &Self) -> Option<Arc<UPoly<R>>> {
        self.m.clone().or_else(|| o.m.clone())
    }
}

impl<R: Ring> Ring for Ext<R> {
    fn zero() -> Self {
        Ext { rep: UPoly::zero(), m: None }
    }
    fn one() -> Self {
        Ext { rep: UPoly::one(), m: None }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Ext { rep: self.rep.plus(&o.rep), m: self.pick(o) }
    }
    fn minus(&self, o: &Self) -> Self {
        Ext { rep: self.rep.minus(&o.rep), m: self.pick(o) }
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.pick(o);
        let p = self.rep.times(&o.rep);
        let rep = match &m {
            Some(m) => p.rem_monic(m),
            None => p,
        };
        Ext { rep, m }
    }
    fn negate(&self) -> Self {
        Ext { rep: self.rep.negate(), m: self.m.clone() }
    }
    fn from_scalar(s: &Scalar) -> Self {
        Ext { rep: UPoly::constant(R::from_scalar(s)), m: None }
    }
}

/// Runs `f` over `K[s]/(m)`, restarting on each factor whenever `f` hits a
/// zero divisor. Results are returned in discovery order, which is
/// deterministic for a deterministic `f`.
pub fn split_run<T>(
    m: &KPoly,
    mut f: impl FnMut(&Arc<KPoly>) -> Result<T, Split>,
) -> Vec<(KPoly, T)> {
    let mut out = Vec::new();
    let mut work = alloc::vec![m.monic_k()];
    while let Some(g) = work.pop() {
        let ga = Arc::new(g.clone());
        match f(&ga) {
            Ok(v) => out.push((g, v)),
            Err(s) => {
                work.push(s.cofactor);
                work.push(s.factor);
            }
        }
    }
    out
}

/// gcd of two polynomials over `K[s]/(m)`; either a monic gcd or a split.
pub fn quotient_gcd(f: &UPoly<QElem>, g: &UPoly<QElem>) -> Result<UPoly<QElem>, Split> {
    f.gcd(g)
}

/// Lifts a field polynomial into `K[s]/(m)[u]`.
pub fn lift(f: &KPoly, m: &Arc<KPoly>) -> UPoly<QElem> {
    f.map(|a| QElem::constant(a.clone(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::KPoly;

    #[test]
    fn gcd_over_cube_root_ring() {
        let m = Arc::new(KPoly::from_ints(&[1, 1, 1]));
        let s = QElem::generator(&m);
        let u = UPoly::<QElem>::x();
        // u^2 - s u and u - s
        let f = u.times(&u).minus(&u.scale(&s));
        let g = u.minus(&UPoly::constant(s.clone()));
        let h = quotient_gcd(&f, &g).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn zero_divisor_splits() {
        let m = Arc::new(KPoly::from_ints(&[-1, 0, 1]));
        let s = QElem::generator(&m);
        let e = s.minus(&QElem::one());
        let err = e.try_inv().unwrap_err();
        assert_eq!(err.factor, KPoly::from_ints(&[-1, 1]));
        assert_eq!(err.cofactor, KPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let m = Arc::new(KPoly::from_ints(&[-2, 0, 1]));
        let s = QElem::generator(&m);
        let f = UPoly::new(alloc::vec![s.clone(), s.clone()]);
        let h = quotient_gcd(&f, &UPoly::zero()).unwrap();
        assert_eq!(h, UPoly::new(alloc::vec![QElem::one(), QElem::one()]));
    }

    #[test]
    fn split_run_visits_each_factor() {
        let m = KPoly::from_ints(&[-1, 0, 1]);
        let res = split_run(&m, |ma| {
            let s = QElem::generator(ma);
            s.minus(&QElem::one()).zero_test()
        });
        assert_eq!(res.len(), 2);
        let zero_on: Vec<_> = res.iter().filter(|(_, z)| *z).map(|(g, _)| g.clone()).collect();
        assert_eq!(zero_on, alloc::vec![KPoly::from_ints(&[-1, 1])]);
    }
}
