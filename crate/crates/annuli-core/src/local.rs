//! Local invariants: singular parameters, Puiseux data at finite points and
//! at the two places `t = 0`, `t = infinity`, Milnor numbers, codimensions,
//! place indices, hidden double points and the tangency analysis.
//!
//! Conjugate singular parameters are handled together over `K[s]/(g)`.
//! Branches are re-expanded in a local parameter `w` with `base = c w^n`
//! exactly, so no `n`-th roots of coefficients are ever needed.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curve::{exponent_profile, ParametricCurve};
use crate::error::LocalError;
use crate::laurent::LaurentPoly;
use crate::poly::{DynField, KPoly, Ring, UPoly};
use crate::quotient::{split_run, QElem, Split};
use crate::scalar::Scalar;
use crate::series::{self, LSeries};

/// Coordinate used as the base of a Puiseux expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    /// The x-coordinate (`phi`).
    X,
    /// The y-coordinate (`psi`).
    Y,
}

/// One of the two places at infinity of `C*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// `t -> 0`.
    Zero,
    /// `t -> infinity`.
    Infinity,
}

impl Place {
    /// Short name.
    pub fn name(self) -> &'static str {
        match self {
            Place::Zero => "0",
            Place::Infinity => "inf",
        }
    }
}

/// Truncation schedule: start at `initial`, double until `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncPolicy {
    /// First truncation order.
    pub initial: i64,
    /// Largest truncation order tried.
    pub cap: i64,
}

impl TruncPolicy {
    /// Default multiplier of `|p|+|q|+|r|+|s|` for the cap.
    pub const DEFAULT_MULTIPLIER: i64 = 16;

    /// `initial = 8`, `cap = multiplier * S` (never below `initial`).
    pub fn for_curve(c: &ParametricCurve, multiplier: i64) -> Self {
        let s = match exponent_profile(c) {
            Ok(pr) => pr.p().abs() + pr.q().abs() + pr.r().abs() + pr.s().abs(),
            Err(_) => 1,
        };
        let initial = 8;
        TruncPolicy { initial, cap: (multiplier * s).max(initial) }
    }

    fn orders(self) -> impl Iterator<Item = i64> {
        let cap = self.cap;
        core::iter::successors(Some(self.initial), move |&t| (t < cap).then(|| (2 * t).min(cap)))
    }
}

/// Conversion of coefficients to polynomial representatives.
trait Rep: DynField {
    fn rep_poly(&self) -> KPoly;
}

impl Rep for Scalar {
    fn rep_poly(&self) -> KPoly {
        KPoly::constant(self.clone())
    }
}

impl Rep for QElem {
    fn rep_poly(&self) -> KPoly {
        self.rep().clone()
    }
}

/// A singular parameter orbit: the roots of `factor`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    /// Monic squarefree factor whose roots are the parameters.
    pub factor: KPoly,
    /// Order of vanishing of `phi - phi(t_j)`.
    pub x_order: usize,
    /// Order of vanishing of `psi - psi(t_j)`.
    pub y_order: usize,
    /// Multiplicity `min(x_order, y_order)`.
    pub multiplicity: usize,
    /// Number of conjugate parameters (`deg factor`).
    pub orbit_degree: usize,
}

/// Taylor coefficients of `f(s + τ)` over `K[s]/(m)`, `len` terms.
pub(crate) fn taylor(f: &LaurentPoly, s: &QElem, len: usize) -> Result<Vec<QElem>, Split> {
    let (num, e) = f.numerator();
    let nq: UPoly<QElem> = num.map(QElem::from_scalar);
    let shifted = nq.taylor_shift(s);
    let mut fac = vec![QElem::zero(); len];
    if e >= 0 {
        let lin = UPoly::new(vec![s.clone(), QElem::one()]).pow(e as u32);
        for (i, c) in lin.coeffs().iter().enumerate().take(len) {
            fac[i] = c.clone();
        }
    } else {
        let sinv = s.try_inv()?;
        let mut b = sinv.clone();
        for _ in 1..(-e) {
            b = b.times(&sinv);
        }
        for j in 0..len {
            if j > 0 {
                // C(e, j) = C(e, j-1) (e - j + 1) / j
                let r = Scalar::frac(e - j as i64 + 1, j as i64);
                b = b.times(&sinv).times(&QElem::from_scalar(&r));
            }
            fac[j] = b.clone();
        }
    }
    Ok(series::mul(shifted.coeffs(), &fac, len))
}

fn first_nonzero<R: DynField>(a: &[R], from: usize) -> Result<Option<usize>, Split> {
    for (i, c) in a.iter().enumerate().skip(from) {
        if !c.zero_test()? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn span(c: &ParametricCurve) -> usize {
    let sp = |f: &LaurentPoly| (f.top().unwrap_or(0) - f.bot().unwrap_or(0)) as usize;
    sp(&c.phi).max(sp(&c.psi))
}

/// Parameters `t_j` in `C*` with `phi'(t_j) = psi'(t_j) = 0`, grouped in
/// conjugate orbits with equal x- and y-orders.
pub fn singular_parameters(c: &ParametricCurve) -> Vec<SingularPoint> {
    let (n1, _) = c.phi.derivative().numerator();
    let (n2, _) = c.psi.derivative().numerator();
    let g = n1.gcd_k(&n2);
    if g.deg().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let g = g.squarefree_k();
    let len = span(c) + 2;
    let mut res = Vec::new();
    for piece in split_rational_roots(&g) {
        res.extend(split_run(&piece, |m| {
        let s = QElem::generator(m);
        let x = taylor(&c.phi, &s, len)?;
        let y = taylor(&c.psi, &s, len)?;
        let xo = first_nonzero(&x, 1)?.unwrap_or(len);
        let yo = first_nonzero(&y, 1)?.unwrap_or(len);
        Ok((xo, yo))
        }));
    }
    res.into_iter()
        .map(|(f, (xo, yo))| SingularPoint {
            orbit_degree: f.deg().unwrap_or(0),
            factor: f,
            x_order: xo,
            y_order: yo,
            multiplicity: xo.min(yo),
        })
        .collect()
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_i64()?;
    if n == 0 || n > 1_000_000 {
        return None;
    }
    Some((1..=n).filter(|d| n % d == 0).collect())
}

/// Splits off the rational roots of `g` as linear factors (coefficients in Q
/// only); the remaining factor is returned last when nonconstant.
fn split_rational_roots(g: &KPoly) -> Vec<KPoly> {
    let cs = g.coeffs();
    if cs.len() <= 2 || !cs.iter().all(Scalar::is_rational) {
        return vec![g.clone()];
    }
    let den = cs.iter().fold(BigInt::one(), |a, c| a.lcm(c.re().denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| (c.re() * &den).to_integer()).collect();
    let low = ints.iter().find(|c| !c.is_zero()).expect("nonzero");
    let (Some(num), Some(dens)) = (small_divisors(low), small_divisors(ints.last().expect("nonzero")))
    else {
        return vec![g.clone()];
    };
    let mut rest = g.clone();
    let mut out = Vec::new();
    let mut cands = vec![Scalar::zero()];
    for a in &num {
        for b in &dens {
            for sgn in [1, -1] {
                let v = Scalar::frac(sgn * a, *b);
                if !cands.contains(&v) {
                    cands.push(v);
                }
            }
        }
    }
    for v in cands {
        if rest.deg().unwrap_or(0) >= 1 && rest.eval(&v).is_zero() {
            let lin = KPoly::new(vec![-&v, Scalar::one()]);
            rest = rest.divrem_k(&lin).0;
            out.push(lin);
        }
    }
    if rest.deg().unwrap_or(0) >= 1 {
        out.push(rest.monic_k());
    }
    out
}

/// A branch `other = sum a_k w^k` with `base = c w^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxBranch {
    /// Base coordinate.
    pub base: Coord,
    /// Ramification `n > 0` (order, or pole order, of the base).
    pub ramification: i64,
    /// Modulus of the coefficient ring (`None` for coefficients in K).
    pub modulus: Option<KPoly>,
    /// Nonzero coefficients `(k, a_k)` found up to the truncation.
    pub coefficients: Vec<(i64, KPoly)>,
    /// Exponent of the first nonzero coefficient.
    pub lead: i64,
    /// Characteristic exponents in base units (`other ~ base^{kappa/n}`).
    pub char_exponents: Vec<i64>,
    /// Characteristic pairs `(m_j, n_j)`.
    pub pairs: Vec<(i64, i64)>,
    /// Vanishing essential positions from the first position on.
    pub essential_zeros: usize,
    /// Vanishing essential positions after the leading exponent.
    pub essential_zeros_after_lead: usize,
    /// Truncation order used.
    pub truncation: i64,
    /// Whether the gcd chain reached 1.
    pub complete: bool,
    /// Order of the base in the local parameter (signed: negative at places).
    pub signed_n: i64,
}

impl PuiseuxBranch {
    /// Gcd chain `e_0 = n, e_1, ..., e_l = 1`.
    pub fn gcd_chain(&self) -> Vec<i64> {
        let mut e = vec![self.ramification];
        for (_, nj) in &self.pairs {
            let last = *e.last().expect("nonempty");
            e.push(last / nj);
        }
        e
    }

    /// `sum (kappa_j - 1)(e_{j-1} - e_j)`.
    pub fn sigma(&self) -> i64 {
        milnor_from_exponents(self.ramification, &self.char_exponents)
    }

    /// Characteristic pairs with a `(k, 2)` shape reported as `A_{k-1}`.
    pub fn label(&self) -> String {
        label_from_pairs(&self.pairs)
    }
}

/// `A_{m-1}` for a single pair `(m, 2)`, `smooth` for no pairs, otherwise the
/// pair list.
pub fn label_from_pairs(pairs: &[(i64, i64)]) -> String {
    match pairs {
        [] => String::from("smooth"),
        [(m, 2)] => alloc::format!("A_{}", m - 1),
        _ => {
            let parts: Vec<String> =
                pairs.iter().map(|(m, n)| alloc::format!("({},{})", m, n)).collect();
            parts.join("")
        }
    }
}

struct Scan {
    chars: Vec<i64>,
    nu: usize,
    nu_after_lead: usize,
    lead: Option<i64>,
    complete: bool,
    nonzero: Vec<i64>,
}

fn scan<R: DynField>(coeffs: &[(i64, R)], n: i64) -> Result<Scan, Split> {
    let mut e = n;
    let mut out = Scan {
        chars: Vec::new(),
        nu: 0,
        nu_after_lead: 0,
        lead: None,
        complete: n == 1,
        nonzero: Vec::new(),
    };
    for (k, a) in coeffs {
        if out.complete && out.lead.is_some() {
            break;
        }
        let zero = a.zero_test()?;
        let essential = k % e != 0;
        if zero {
            if essential && !out.complete {
                out.nu += 1;
                if out.lead.is_some() {
                    out.nu_after_lead += 1;
                }
            }
            continue;
        }
        out.nonzero.push(*k);
        if out.lead.is_none() {
            out.lead = Some(*k);
        }
        if essential && !out.complete {
            out.chars.push(*k);
            e = e.gcd(k);
            if e == 1 {
                out.complete = true;
            }
        }
    }
    Ok(out)
}

fn build_branch<R: Rep>(
    base: Coord,
    signed_n: i64,
    modulus: Option<KPoly>,
    coeffs: &[(i64, R)],
    sc: Scan,
    truncation: i64,
) -> PuiseuxBranch {
    let n = signed_n.abs();
    let sign = signed_n.signum();
    let kappa: Vec<i64> = sc.chars.iter().map(|k| k * sign).collect();
    let mut pairs = Vec::new();
    let mut e = n;
    for &k in &kappa {
        let e2 = e.gcd(&k);
        pairs.push((k / e2, e / e2));
        e = e2;
    }
    let nz: Vec<(i64, KPoly)> = coeffs
        .iter()
        .filter(|(k, _)| sc.nonzero.contains(k))
        .map(|(k, a)| (*k, a.rep_poly()))
        .collect();
    PuiseuxBranch {
        base,
        ramification: n,
        modulus,
        coefficients: nz,
        lead: sc.lead.unwrap_or(0),
        char_exponents: kappa,
        pairs,
        essential_zeros: sc.nu,
        essential_zeros_after_lead: sc.nu_after_lead,
        truncation,
        complete: sc.complete,
        signed_n,
    }
}

/// Base choice at a finite point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseChoice {
    /// Coordinate of minimal order (x on ties).
    Multiplicity,
    /// A fixed coordinate.
    Fixed(Coord),
}

fn point_branch(
    c: &ParametricCurve,
    m: &Arc<KPoly>,
    choice: BaseChoice,
    hi: i64,
) -> Result<Option<PuiseuxBranch>, Split> {
    let s = QElem::generator(m);
    let len = hi as usize + span(c) + 2;
    let mut x = taylor(&c.phi, &s, len)?;
    let mut y = taylor(&c.psi, &s, len)?;
    x[0] = QElem::zero();
    y[0] = QElem::zero();
    let xo = first_nonzero(&x, 1)?.unwrap_or(len);
    let yo = first_nonzero(&y, 1)?.unwrap_or(len);
    let base = match choice {
        BaseChoice::Multiplicity => {
            if xo <= yo {
                Coord::X
            } else {
                Coord::Y
            }
        }
        BaseChoice::Fixed(b) => b,
    };
    let (b, o, n) = match base {
        Coord::X => (x, y, xo),
        Coord::Y => (y, x, yo),
    };
    if n >= len {
        return Ok(None);
    }
    let cinv = b[n].try_inv()?;
    let u: Vec<QElem> = b[n..].iter().map(|a| a.times(&cinv)).collect();
    let h = LSeries { val: 1, c: o[1..].to_vec() };
    let coeffs = series::reexpand(&u, n as i64, &h, hi + 1)?;
    let sc = scan(&coeffs, n as i64)?;
    if !sc.complete {
        return Ok(None);
    }
    Ok(Some(build_branch(base, n as i64, Some((**m).clone()), &coeffs, sc, hi)))
}

/// Puiseux data at the roots of `factor` (one entry per split piece).
pub fn local_puiseux(
    c: &ParametricCurve,
    factor: &KPoly,
    choice: BaseChoice,
    policy: TruncPolicy,
) -> Result<Vec<(KPoly, PuiseuxBranch)>, LocalError> {
    let res = split_run(factor, |m| {
        for t in policy.orders() {
            if let Some(b) = point_branch(c, m, choice, t)? {
                return Ok(Ok(b));
            }
        }
        Ok(Err(LocalError::TruncationCap(policy.cap as usize)))
    });
    res.into_iter().map(|(f, r)| r.map(|b| (f, b))).collect()
}

fn at_place(f: &LaurentPoly, place: Place) -> LaurentPoly {
    match place {
        Place::Zero => f.clone(),
        Place::Infinity => f.compose_inv_t(),
    }
}

fn lseries(f: &LaurentPoly) -> LSeries<Scalar> {
    let lo = f.bot().unwrap_or(0);
    let hi = f.top().unwrap_or(0);
    LSeries { val: lo, c: (lo..=hi).map(|k| f.coeff(k)).collect() }
}

fn has_pole(f: &LaurentPoly) -> bool {
    f.bot().is_some_and(|b| b < 0)
}

/// Base coordinate at a place: the one with a pole, x preferred.
pub fn place_base(c: &ParametricCurve, place: Place) -> Result<Coord, LocalError> {
    if has_pole(&at_place(&c.phi, place)) {
        Ok(Coord::X)
    } else if has_pole(&at_place(&c.psi, place)) {
        Ok(Coord::Y)
    } else {
        Err(LocalError::NotProper(place.name()))
    }
}

/// Raw re-expansion at a place: `(signed n, lead coefficient of base, coefficients)`.
fn place_coeffs(
    c: &ParametricCurve,
    place: Place,
    base: Coord,
    hi_rel: i64,
) -> Result<(i64, Scalar, LSeries<Scalar>, Vec<(i64, Scalar)>), LocalError> {
    let (b, o) = match base {
        Coord::X => (at_place(&c.phi, place), at_place(&c.psi, place)),
        Coord::Y => (at_place(&c.psi, place), at_place(&c.phi, place)),
    };
    if !has_pole(&b) {
        return Err(LocalError::NotProper(place.name()));
    }
    let bs = lseries(&b);
    let n = bs.val;
    let lc = bs.c[0].clone();
    let inv = lc.inv().expect("nonzero lead");
    let u: Vec<Scalar> = bs.c.iter().map(|a| a * &inv).collect();
    let h = lseries(&o);
    let coeffs = series::reexpand(&u, n, &h, h.val + hi_rel).expect("field coefficients");
    Ok((n, lc, h, coeffs))
}

/// Puiseux branch at a place, base per [`place_base`] unless given.
pub fn branch_at_infinity(
    c: &ParametricCurve,
    place: Place,
    base: Option<Coord>,
    policy: TruncPolicy,
) -> Result<PuiseuxBranch, LocalError> {
    let base = match base {
        Some(b) => b,
        None => place_base(c, place)?,
    };
    for t in policy.orders() {
        let (n, _, _, coeffs) = place_coeffs(c, place, base, t)?;
        let sc = scan(&coeffs, -n).expect("field coefficients");
        if sc.complete {
            return Ok(build_branch(base, n, None, &coeffs, sc, t));
        }
    }
    Err(LocalError::TruncationCap(policy.cap as usize))
}

/// First Milnor formula, from the branch exponents:
/// `sum (v_j - 1)(n_j - 1) n_{j+1}...n_l`, i.e. `sum (v_j - 1)(e_{j-1} - e_j)`.
pub fn milnor_from_exponents(n: i64, exps: &[i64]) -> i64 {
    let mut e = n;
    let mut mu = 0;
    for &v in exps {
        let e2 = e.gcd(&v);
        mu += (v - 1) * (e - e2);
        e = e2;
    }
    mu
}

/// Second form, from characteristic pairs:
/// `sum (m_j n_{j+1}...n_l - 1)(n_j - 1) n_{j+1}...n_l`.
pub fn milnor_from_pairs(pairs: &[(i64, i64)]) -> i64 {
    let mut mu = 0;
    for j in 0..pairs.len() {
        let tail: i64 = pairs[j + 1..].iter().map(|p| p.1).product();
        let (m, n) = pairs[j];
        mu += (m * tail - 1) * (n - 1) * tail;
    }
    mu
}

/// Branch exponents `v_j = m_j n_{j+1}...n_l` recovered from pairs.
pub fn exponents_from_pairs(pairs: &[(i64, i64)]) -> (i64, Vec<i64>) {
    let n: i64 = pairs.iter().map(|p| p.1).product();
    let v = (0..pairs.len())
        .map(|j| pairs[j].0 * pairs[j + 1..].iter().map(|p| p.1).product::<i64>())
        .collect();
    (n.max(1), v)
}

/// Codimension `nu` of a finite-point branch.
pub fn codimension_nu(b: &PuiseuxBranch) -> Result<usize, LocalError> {
    if !b.complete {
        return Err(LocalError::IncompleteBranch);
    }
    Ok(b.essential_zeros)
}

/// Codimension at a place (positions after the leading term).
pub fn codimension_place(b: &PuiseuxBranch) -> Result<usize, LocalError> {
    if !b.complete {
        return Err(LocalError::IncompleteBranch);
    }
    Ok(b.essential_zeros_after_lead)
}

/// `ext nu_j = (n_j - 2) + nu_j` for a finite point.
pub fn ext_codim_point(n_j: i64, nu: i64) -> i64 {
    (n_j - 2) + nu
}

/// Data at one place.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceData {
    /// Which place.
    pub place: Place,
    /// Branch there.
    pub branch: PuiseuxBranch,
    /// `(P-1)(Q-1) - (gcd(P,|Q|) - 1)`.
    pub sigma_generic: i64,
    /// `sum (kappa_j - 1)(e_{j-1} - e_j)`.
    pub sigma_actual: i64,
    /// Intersection term used in the index (`max(ps, rq)` or the tangency count).
    pub intersection: i64,
    /// Index `i = 2 - sigma_actual - intersection`.
    pub index: i64,
    /// `2 delta_{place,max} = sigma_generic + intersection`.
    pub two_delta_max_place: i64,
    /// `2 delta = sigma_generic - sigma_actual`.
    pub two_delta: i64,
    /// Codimension at the place.
    pub nu: usize,
}

fn place_data(
    c: &ParametricCurve,
    place: Place,
    intersection: i64,
    policy: TruncPolicy,
) -> Result<PlaceData, LocalError> {
    let branch = branch_at_infinity(c, place, None, policy)?;
    let big_p = branch.ramification;
    let other = match branch.base {
        Coord::X => at_place(&c.psi, place),
        Coord::Y => at_place(&c.phi, place),
    };
    let big_q = -other.bot().unwrap_or(0);
    let g = big_p.gcd(&big_q);
    let sigma_generic = (big_p - 1) * (big_q - 1) - (g - 1);
    let sigma_actual = branch.sigma();
    let nu = codimension_place(&branch)?;
    Ok(PlaceData {
        place,
        sigma_generic,
        sigma_actual,
        intersection,
        index: 2 - sigma_actual - intersection,
        two_delta_max_place: sigma_generic + intersection,
        two_delta: sigma_generic - sigma_actual,
        nu,
        branch,
    })
}

/// Both places approach infinity along a common direction: `ps = rq` and
/// one coordinate has a pole at both places.
pub fn is_tangent((p, q, r, s): (i64, i64, i64, i64)) -> bool {
    p * s == r * q && ((p > 0 && r > 0) || (q > 0 && s > 0))
}

fn twist(c: &ParametricCurve) -> Result<(i64, i64, bool), LocalError> {
    let pr = exponent_profile(c).map_err(|_| LocalError::NotProper("constant component"))?;
    let (p, q, r, s) = pr.pqrs();
    Ok((p * s, r * q, is_tangent(pr.pqrs())))
}

/// Index and hidden double points at a place outside the tangent case.
pub fn place_index(
    c: &ParametricCurve,
    place: Place,
    policy: TruncPolicy,
) -> Result<PlaceData, LocalError> {
    let (ps, rq, tangent) = twist(c)?;
    if tangent {
        return Err(LocalError::TangentCase);
    }
    place_data(c, place, ps.max(rq), policy)
}

/// `2 delta` at a place outside the tangent case.
pub fn place_delta(c: &ParametricCurve, place: Place, policy: TruncPolicy) -> Result<i64, LocalError> {
    Ok(place_index(c, place, policy)?.two_delta)
}

/// Lattice of binomial conditions `alpha^a lambda^b = gamma` in `(C*)^2`.
#[derive(Clone, Debug)]
struct Binomials {
    rows: [(i64, i64, Scalar); 2],
    consistent: bool,
}

impl Binomials {
    fn new(p: i64, a_inf: Scalar, r: i64, a_0: Scalar) -> Self {
        Binomials { rows: [(p, 0, a_inf), (0, r, a_0)], consistent: true }
    }

    fn count(&self) -> i64 {
        if !self.consistent {
            return 0;
        }
        (self.rows[0].0 * self.rows[1].1).abs()
    }

    fn reduce(
        x: &mut (i64, i64, Scalar),
        y: &mut (i64, i64, Scalar),
        col: usize,
    ) {
        // Euclid on column `col` until y has a zero there; x keeps the gcd.
        let get = |r: &(i64, i64, Scalar)| if col == 0 { r.0 } else { r.1 };
        while get(y) != 0 {
            let q = Integer::div_floor(&get(x), &get(y));
            let gq = y.2.pow(-q).expect("nonzero gamma");
            x.0 -= q * y.0;
            x.1 -= q * y.1;
            x.2 = &x.2 * &gq;
            core::mem::swap(x, y);
        }
    }

    fn add(&mut self, a: i64, b: i64, gamma: Scalar) {
        if !self.consistent {
            return;
        }
        let mut new = (a, b, gamma);
        let [r0, r1] = &mut self.rows;
        Self::reduce(r0, &mut new, 0);
        Self::reduce(r1, &mut new, 1);
        if new.2 != Scalar::one() {
            self.consistent = false;
        }
    }
}

/// Tangency block for `ps = rq`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangencyData {
    /// Coordinate used as the common base at both places.
    pub base: Coord,
    /// Intersection count `I` of the two places (replaces `max(ps, rq)`).
    pub intersection: i64,
    /// Consecutive coinciding levels for the best pair of conjugates.
    pub u: usize,
    /// Coinciding levels with nonzero coefficients.
    pub nu_tan: usize,
    /// `2 delta_inf = 2 delta_max - (2 - i_0 - i_inf)`.
    pub two_delta_inf: i64,
    /// Data at `t = infinity` with the tangency intersection.
    pub infinity: PlaceData,
    /// Data at `t = 0` with the tangency intersection.
    pub zero: PlaceData,
    /// `A^{q~}` with `base ~ A other^{p/q}` at infinity (`q~ = q / gcd`).
    pub lead_power_inf: Scalar,
    /// Same quantity at `t = 0`.
    pub lead_power_zero: Scalar,
    /// Whether the two leading powers agree.
    pub leads_match: bool,
    /// Third summand of the tangency bound, as a fraction.
    pub third_term: (i64, i64),
}

fn coeff_of(list: &[(i64, Scalar)], k: i64) -> Option<Scalar> {
    list.iter().find(|(j, _)| *j == k).map(|(_, a)| a.clone())
}

/// Tangency analysis for `ps = rq`.
pub fn tangency_delta(
    c: &ParametricCurve,
    two_delta_max: i64,
    policy: TruncPolicy,
) -> Result<TangencyData, LocalError> {
    let pr = exponent_profile(c).map_err(|_| LocalError::NotProper("constant component"))?;
    let (p, q, r, s) = pr.pqrs();
    if !is_tangent((p, q, r, s)) {
        return Err(LocalError::TangentCase);
    }
    let base = if p > 0 && r > 0 {
        Coord::X
    } else if q > 0 && s > 0 {
        Coord::Y
    } else {
        return Err(LocalError::NotProper("no common pole"));
    };
    // pole orders of base / other at both places
    let (pb, po, rb, ro) = match base {
        Coord::X => (p, q, r, s),
        Coord::Y => (q, p, s, r),
    };
    let g = pb.gcd(&rb);
    let (pt, rt) = (pb / g, rb / g);
    let big_l = pb * rt;
    for t in policy.orders() {
        let (n_inf, a_inf, _, c_inf) = place_coeffs(c, Place::Infinity, base, t)?;
        let (n_0, a_0, _, c_0) = place_coeffs(c, Place::Zero, base, t)?;
        debug_assert_eq!((n_inf, n_0), (-pb, -rb));
        let lim_inf = c_inf.last().map(|x| x.0).unwrap_or(0) * rt;
        let lim_0 = c_0.last().map(|x| x.0).unwrap_or(0) * pt;
        let lim = lim_inf.min(lim_0);
        let lmin = (-po * rt).min(-ro * pt);
        let mut sys = Binomials::new(pb, a_inf.clone(), rb, a_0.clone());
        let mut prev = sys.count();
        let mut num = 0i64; // I * L
        let mut u = 0usize;
        let mut nu_tan = 0usize;
        let mut agreed_exps: Vec<(i64, i64)> = Vec::new();
        let mut first_diff: Option<i64> = None;
        let mut done = false;
        let mut level = lmin;
        while level <= lim {
            let ci = if level % rt == 0 { coeff_of(&c_inf, level / rt) } else { None };
            let di = if level % pt == 0 { coeff_of(&c_0, level / pt) } else { None };
            match (&ci, &di) {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => sys.consistent = false,
                (Some(x), Some(y)) => {
                    let gamma = y.try_div(x).expect("nonzero");
                    sys.add(level / rt, -(level / pt), gamma);
                }
            }
            let now = sys.count();
            num += (prev - now) * (-level);
            if now == 0 {
                first_diff = Some(level);
                done = true;
                break;
            }
            u += 1;
            if ci.is_some() {
                nu_tan += 1;
                agreed_exps.push((-level, big_l));
            }
            prev = now;
            level += 1;
        }
        if !done {
            continue;
        }
        if num % big_l != 0 {
            return Err(LocalError::NotProper("non-integral tangency count"));
        }
        let intersection = num / big_l;
        let inf = place_data(c, Place::Infinity, intersection, policy)?;
        let zero = place_data(c, Place::Zero, intersection, policy)?;
        let two_delta_inf = two_delta_max - (2 - inf.index - zero.index);
        // leading ratio base^{q~} / other^{p~}
        let gg = pb.gcd(&po);
        let (pp, qq) = (pb / gg, po / gg);
        let lead = |cl: &[(i64, Scalar)], a: &Scalar| {
            let b = cl.first().map(|x| x.1.clone()).expect("nonzero branch");
            a.pow(qq).expect("nonzero").try_div(&b.pow(pp).expect("nonzero")).expect("nonzero")
        };
        let lead_power_inf = lead(&c_inf, &a_inf);
        let lead_power_zero = lead(&c_0, &a_0);
        let third_term = tangency_third_term(
            p,
            q,
            &agreed_exps,
            first_diff.unwrap_or(lmin),
            (&c_inf, rt, pb / pb.gcd(&po)),
            (&c_0, pt, rb / rb.gcd(&ro)),
            big_l,
        );
        return Ok(TangencyData {
            base,
            intersection,
            u,
            nu_tan,
            two_delta_inf,
            infinity: inf,
            zero,
            leads_match: lead_power_inf == lead_power_zero,
            lead_power_inf,
            lead_power_zero,
            third_term,
        });
    }
    Err(LocalError::TruncationCap(policy.cap as usize))
}

fn reduce_frac(n: i64, d: i64) -> (i64, i64) {
    let g = n.gcd(&d).max(1);
    let s = if d < 0 { -1 } else { 1 };
    (s * n / g, s * d / g)
}

/// `2pq (sum w_j (v_j - 1)(v_{j+1}...v_l)^2 + max{u_inf/p~_1, u_0/r~_1})`
/// evaluated on the coinciding terms.
fn tangency_third_term(
    p: i64,
    q: i64,
    agreed: &[(i64, i64)],
    diff_level: i64,
    inf: (&[(i64, Scalar)], i64, i64),
    zero: (&[(i64, Scalar)], i64, i64),
    big_l: i64,
) -> (i64, i64) {
    // topological arrangement of coinciding exponents w/v
    let mut denom = 1i64;
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    for &(nn, dd) in agreed {
        let (a, b) = reduce_frac(nn, dd);
        if denom % b != 0 {
            let l = denom.lcm(&b);
            let vj = l / denom;
            pairs.push((a * l / b, vj));
            denom = l;
        }
    }
    let v_total: i64 = pairs.iter().map(|x| x.1).product::<i64>().max(1);
    let mut sum_num = 0i64;
    for j in 0..pairs.len() {
        let tail: i64 = pairs[j + 1..].iter().map(|x| x.1).product();
        sum_num += pairs[j].0 * (pairs[j].1 - 1) * tail * tail;
    }
    // first differing terms in x-units times v
    let next = |(cl, step, _): (&[(i64, Scalar)], i64, i64)| {
        cl.iter()
            .map(|(k, _)| k * step)
            .find(|l| *l >= diff_level)
            .map(|l| (-l * v_total, big_l))
            .unwrap_or((0, 1))
    };
    let (a1, b1) = next(inf);
    let (a2, b2) = next(zero);
    let mx = if a1 * b2 >= a2 * b1 { (a1, b1) } else { (a2, b2) };
    let total = (sum_num * mx.1 + mx.0, mx.1);
    reduce_frac(2 * p * q * total.0, total.1)
}
