//! Parametric curves `t -> (phi(t), psi(t))`, their exponent profiles,
//! type classification, handsome normal forms and the automorphism action.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{AlgebraError, CurveError};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// The map `t -> (phi(t), psi(t))` over Q(sqrt d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParametricCurve {
    /// x-component.
    pub phi: LaurentPoly,
    /// y-component.
    pub psi: LaurentPoly,
    /// Radicand of the coefficient field (1 for Q).
    pub d: i64,
}

impl ParametricCurve {
    /// Builds a curve and checks that all coefficients lie in Q(sqrt d).
    pub fn new(phi: LaurentPoly, psi: LaurentPoly, d: i64) -> Result<Self, AlgebraError> {
        for f in [&phi, &psi] {
            let e = f.radicand();
            if e != 1 && e != d {
                return Err(AlgebraError::FieldMismatch { left: d, right: e });
            }
        }
        Ok(ParametricCurve { phi, psi, d })
    }

    /// Builds a curve over the field generated by its coefficients.
    pub fn over_q(phi: LaurentPoly, psi: LaurentPoly) -> Self {
        let d = if phi.radicand() != 1 { phi.radicand() } else { psi.radicand() };
        ParametricCurve { phi, psi, d }
    }

    /// Fails with `ConstantComponent` unless both components are nonconstant.
    pub fn check_admissible(&self) -> Result<(), CurveError> {
        if self.phi.is_constant() {
            return Err(CurveError::ConstantComponent('x'));
        }
        if self.psi.is_constant() {
            return Err(CurveError::ConstantComponent('y'));
        }
        Ok(())
    }

    /// Point of the curve at a parameter value.
    pub fn eval(&self, t: &Scalar) -> Result<(Scalar, Scalar), AlgebraError> {
        Ok((self.phi.eval(t)?, self.psi.eval(t)?))
    }

    /// The curve with x and y exchanged.
    pub fn swapped(&self) -> Self {
        ParametricCurve { phi: self.psi.clone(), psi: self.phi.clone(), d: self.d }
    }

    /// The curve reparametrized by `t -> 1/t`.
    pub fn inverted(&self) -> Self {
        ParametricCurve {
            phi: self.phi.compose_inv_t(),
            psi: self.psi.compose_inv_t(),
            d: self.d,
        }
    }

    /// Applies an orientation change.
    pub fn oriented(&self, o: Orientation) -> Self {
        let c = if o.swap { self.swapped() } else { self.clone() };
        if o.invert {
            c.inverted()
        } else {
            c
        }
    }
}

/// Top and bottom exponents of both components with leading coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentProfile {
    /// deg phi.
    pub top_x: i64,
    /// ord_0 phi.
    pub bot_x: i64,
    /// deg psi.
    pub top_y: i64,
    /// ord_0 psi.
    pub bot_y: i64,
    /// Coefficient of `t^top_x` in phi.
    pub lead_top_x: Scalar,
    /// Coefficient of `t^bot_x` in phi.
    pub lead_bot_x: Scalar,
    /// Coefficient of `t^top_y` in psi.
    pub lead_top_y: Scalar,
    /// Coefficient of `t^bot_y` in psi.
    pub lead_bot_y: Scalar,
}

impl ExponentProfile {
    /// Signed pole order of x at `t = infinity`.
    pub fn p(&self) -> i64 {
        self.top_x
    }
    /// Signed pole order of y at `t = infinity`.
    pub fn q(&self) -> i64 {
        self.top_y
    }
    /// Signed pole order of x at `t = 0`.
    pub fn r(&self) -> i64 {
        -self.bot_x
    }
    /// Signed pole order of y at `t = 0`.
    pub fn s(&self) -> i64 {
        -self.bot_y
    }
    /// `gcd(p, q)`.
    pub fn p_prime(&self) -> i64 {
        self.p().gcd(&self.q())
    }
    /// `gcd(r, s)`.
    pub fn r_prime(&self) -> i64 {
        self.r().gcd(&self.s())
    }
    /// `(p, q, r, s)`.
    pub fn pqrs(&self) -> (i64, i64, i64, i64) {
        (self.p(), self.q(), self.r(), self.s())
    }
    /// `ps - rq`.
    pub fn twist(&self) -> i64 {
        self.p() * self.s() - self.r() * self.q()
    }
}

/// Top/bottom exponents of a curve.
pub fn exponent_profile(c: &ParametricCurve) -> Result<ExponentProfile, CurveError> {
    c.check_admissible()?;
    Ok(ExponentProfile {
        top_x: c.phi.top().expect("nonconstant"),
        bot_x: c.phi.bot().expect("nonconstant"),
        top_y: c.psi.top().expect("nonconstant"),
        bot_y: c.psi.bot().expect("nonconstant"),
        lead_top_x: c.phi.top_coeff(),
        lead_bot_x: c.phi.bot_coeff(),
        lead_top_y: c.psi.top_coeff(),
        lead_bot_y: c.psi.bot_coeff(),
    })
}

/// Row of the four-type table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    /// `0<p<q, 0<r<s, r' <= p'`, `min(q/p, s/r)` not an integer.
    PlusPlus,
    /// `0<q<p, 0<r<s, p+r <= q+s`.
    MixedPlusMinus,
    /// `0 < -r <= p`, `q, s > 0`, `q/p` not an integer.
    MinusPlus,
    /// `0 < -r <= p`, `0 < -q <= s`, `p-|r| <= s-|q|`.
    MinusMinus,
}

impl TypeTag {
    /// Short label.
    pub fn label(self) -> &'static str {
        match self {
            TypeTag::PlusPlus => "(+/+)",
            TypeTag::MixedPlusMinus => "(-+/+-)",
            TypeTag::MinusPlus => "(-/+)",
            TypeTag::MinusMinus => "(-/-)",
        }
    }

    const ALL: [TypeTag; 4] =
        [TypeTag::PlusPlus, TypeTag::MixedPlusMinus, TypeTag::MinusPlus, TypeTag::MinusMinus];
}

/// Exchange of coordinates and/or of the two places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Orientation {
    /// Exchange x and y.
    pub swap: bool,
    /// Apply `t -> 1/t` (after the swap).
    pub invert: bool,
}

impl Orientation {
    /// The four orientations in search order.
    pub const ALL: [Orientation; 4] = [
        Orientation { swap: false, invert: false },
        Orientation { swap: false, invert: true },
        Orientation { swap: true, invert: false },
        Orientation { swap: true, invert: true },
    ];

    /// Signed `(p, q, r, s)` seen through this orientation.
    pub fn view(self, (p, q, r, s): (i64, i64, i64, i64)) -> (i64, i64, i64, i64) {
        let (p, q, r, s) = if self.swap { (q, p, s, r) } else { (p, q, r, s) };
        if self.invert {
            (r, s, p, q)
        } else {
            (p, q, r, s)
        }
    }
}

fn divides(a: i64, b: i64) -> bool {
    a != 0 && b % a == 0
}

/// Whether the row `tag` holds for signed `(p, q, r, s)`.
pub fn row_holds(tag: TypeTag, (p, q, r, s): (i64, i64, i64, i64)) -> bool {
    match tag {
        TypeTag::PlusPlus => {
            let (pp, rr) = (p.gcd(&q), r.gcd(&s));
            0 < p && p < q && 0 < r && r < s && rr <= pp && {
                // min(q/p, s/r) is the smaller fraction
                let (n, m) = if q * r <= s * p { (q, p) } else { (s, r) };
                !divides(m, n)
            }
        }
        TypeTag::MixedPlusMinus => 0 < q && q < p && 0 < r && r < s && p + r <= q + s,
        TypeTag::MinusPlus => 0 < -r && -r <= p && q > 0 && s > 0 && !divides(p, q),
        TypeTag::MinusMinus => {
            0 < -r && -r <= p && 0 < -q && -q <= s && p - r.abs() <= s - q.abs()
        }
    }
}

/// Elementary moves of the automorphism group acting on curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `(x, y) -> (y, x)`.
    Swap,
    /// `t -> 1/t`.
    InvertT,
    /// `t -> c t`.
    ScaleT(Scalar),
    /// `y -> y + c x^l`.
    ShearY {
        /// Coefficient.
        c: Scalar,
        /// Power of x.
        l: u32,
    },
    /// `x -> x + c y^l`.
    ShearX {
        /// Coefficient.
        c: Scalar,
        /// Power of y.
        l: u32,
    },
    /// `(x, y) -> (a x + b y + e, c x + d y + f)` with `ad - bc != 0`.
    Affine {
        /// Row-major `[a, b, c, d]`.
        m: [Scalar; 4],
        /// Translation `[e, f]`.
        shift: [Scalar; 2],
    },
}

impl Move {
    /// Human-readable form.
    pub fn describe(&self) -> String {
        match self {
            Move::Swap => String::from("x <-> y"),
            Move::InvertT => String::from("t -> 1/t"),
            Move::ScaleT(c) => format!("t -> ({})t", c),
            Move::ShearY { c, l } => format!("y -> y + ({})x^{}", c, l),
            Move::ShearX { c, l } => format!("x -> x + ({})y^{}", c, l),
            Move::Affine { m, shift } => format!(
                "(x,y) -> (({})x + ({})y + ({}), ({})x + ({})y + ({}))",
                m[0], m[1], shift[0], m[2], m[3], shift[1]
            ),
        }
    }
}

/// Applies one elementary move.
pub fn apply_automorphism(c: &ParametricCurve, mv: &Move) -> ParametricCurve {
    let d = c.d;
    match mv {
        Move::Swap => c.swapped(),
        Move::InvertT => c.inverted(),
        Move::ScaleT(l) => ParametricCurve {
            phi: c.phi.compose_scale(l),
            psi: c.psi.compose_scale(l),
            d,
        },
        Move::ShearY { c: a, l } => ParametricCurve {
            phi: c.phi.clone(),
            psi: c.psi.add(&c.phi.pow(*l).scale(a)),
            d,
        },
        Move::ShearX { c: a, l } => ParametricCurve {
            phi: c.phi.add(&c.psi.pow(*l).scale(a)),
            psi: c.psi.clone(),
            d,
        },
        Move::Affine { m, shift } => {
            let lin = |a: &Scalar, b: &Scalar, e: &Scalar| {
                c.phi.scale(a).add(&c.psi.scale(b)).add(&LaurentPoly::constant(e.clone()))
            };
            ParametricCurve {
                phi: lin(&m[0], &m[1], &shift[0]),
                psi: lin(&m[2], &m[3], &shift[1]),
                d,
            }
        }
    }
}

/// Outcome of the primitivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    /// Not a composite through `t^d`.
    Primitive,
    /// Factors through `t -> t^d`.
    PowerCover(i64),
    /// Reserved for composites through non-monomial maps (not detected).
    Suspect,
}

/// Detects curves that factor through `t -> t^d`, `d > 1`.
pub fn detect_nonprimitive(c: &ParametricCurve) -> Primitivity {
    let g = c.phi.exponent_gcd().gcd(&c.psi.exponent_gcd());
    if g > 1 {
        Primitivity::PowerCover(g)
    } else {
        Primitivity::Primitive
    }
}

fn handsome_violation(
    (p, q, r, s): (i64, i64, i64, i64),
) -> Option<(bool, bool, i64)> {
    // Returns (shear target is y, use place t=0, power l).
    if 0 < p && p < q && divides(p, q) && (r <= 0 || (s > 0 && r < p)) {
        return Some((true, false, q / p));
    }
    if 0 < p && p == q && (r <= 0 || r <= s) {
        return Some((true, false, 1));
    }
    if 0 < q && q < p && 0 < r && r < s {
        if divides(q, p) && s < q {
            return Some((false, false, p / q));
        }
        if divides(r, s) && p < r {
            return Some((true, true, s / r));
        }
    }
    if r < 0 && 0 < p && q > 0 && s > 0 && divides(q, p) && s < q {
        return Some((false, false, p / q));
    }
    None
}

/// Shears `y -> y - c x^l` or `x -> x - c y^l` that lower the degree of a
/// component at some place, whether or not the curve is handsome.
pub fn degree_reducing_shears(c: &ParametricCurve) -> Result<Vec<Move>, CurveError> {
    let prof = exponent_profile(c)?;
    let mut out = Vec::new();
    for (place_zero, (a, b)) in [(false, (prof.p(), prof.q())), (true, (prof.r(), prof.s()))] {
        let lead = |f: &LaurentPoly| if place_zero { f.bot_coeff() } else { f.top_coeff() };
        for target_is_psi in [true, false] {
            let (src, dst, ps, pd) = if target_is_psi {
                (&c.phi, &c.psi, a, b)
            } else {
                (&c.psi, &c.phi, b, a)
            };
            if ps > 0 && pd > ps && divides(ps, pd) {
                let l = pd / ps;
                let coef = -&lead(dst).try_div(&lead(src).pow(l).expect("nonzero")).expect("nonzero");
                out.push(if target_is_psi {
                    Move::ShearY { c: coef, l: l as u32 }
                } else {
                    Move::ShearX { c: coef, l: l as u32 }
                });
            }
        }
    }
    Ok(out)
}

/// Next reducing move, if any: the first non-handsome pattern (in
/// orientation order) whose shear leaves both components nonconstant.
fn next_reduction(cur: &ParametricCurve) -> Result<Option<Move>, CurveError> {
    let prof = exponent_profile(cur)?;
    // a component regular at a place loses its value there
    for (is_x, f) in [(true, &cur.phi), (false, &cur.psi)] {
        if f.top() == Some(0) || f.bot() == Some(0) {
            let c = -&f.coeff(0);
            let shift = if is_x { [c, Scalar::zero()] } else { [Scalar::zero(), c] };
            let m = [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()];
            return Ok(Some(Move::Affine { m, shift }));
        }
    }
    for o in Orientation::ALL {
        let Some((target_y, at_zero, l)) = handsome_violation(o.view(prof.pqrs())) else {
            continue;
        };
        // Oriented roles back in original coordinates.
        let target_is_psi = target_y != o.swap;
        let place_zero = at_zero != o.invert;
        let (src, dst) = if target_is_psi { (&cur.phi, &cur.psi) } else { (&cur.psi, &cur.phi) };
        let (a, b) = if place_zero {
            (src.bot_coeff(), dst.bot_coeff())
        } else {
            (src.top_coeff(), dst.top_coeff())
        };
        let coef = -&b.try_div(&a.pow(l).expect("nonzero")).expect("nonzero");
        let mv = if target_is_psi {
            Move::ShearY { c: coef, l: l as u32 }
        } else {
            Move::ShearX { c: coef, l: l as u32 }
        };
        if apply_automorphism(cur, &mv).check_admissible().is_ok() {
            return Ok(Some(mv));
        }
    }
    Ok(None)
}

/// True unless one of the non-handsome patterns holds in some orientation.
pub fn is_handsome(c: &ParametricCurve) -> Result<bool, CurveError> {
    Ok(next_reduction(c)?.is_none())
}

/// Reduces a curve to handsome form by shears that kill a leading term.
pub fn reduce_to_handsome(
    c: &ParametricCurve,
) -> Result<(ParametricCurve, Vec<Move>), CurveError> {
    let prof = exponent_profile(c)?;
    let (p, q, r, s) = prof.pqrs();
    let cap = 4 * (p.abs() + q.abs() + r.abs() + s.abs()) as usize;
    let mut cur = c.clone();
    let mut log = Vec::new();
    for _ in 0..=cap {
        let Some(mv) = next_reduction(&cur)? else {
            return Ok((cur, log));
        };
        cur = apply_automorphism(&cur, &mv);
        log.push(mv);
    }
    Err(CurveError::NonTermination(cap))
}

/// Type tag together with the orientation that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Primary tag.
    pub tag: TypeTag,
    /// Every tag realized by some orientation (ties are kept, not resolved).
    pub admissible: Vec<TypeTag>,
    /// Orientation realizing the primary tag.
    pub orientation: Orientation,
    /// Handsome representative (before orientation).
    pub handsome: ParametricCurve,
    /// Moves applied to reach the handsome representative.
    pub log: Vec<Move>,
    /// Signed `(p, q, r, s)` in the realizing orientation.
    pub pqrs: (i64, i64, i64, i64),
}

/// Classifies a curve into one of the four types.
pub fn classify_type(c: &ParametricCurve) -> Result<Classification, CurveError> {
    if let Primitivity::PowerCover(d) = detect_nonprimitive(c) {
        return Err(CurveError::Unclassifiable(format!("multiply covered (t^{})", d)));
    }
    let (h, log) = reduce_to_handsome(c)?;
    let prof = exponent_profile(&h)?;
    let mut found: Vec<(TypeTag, Orientation)> = Vec::new();
    for tag in TypeTag::ALL {
        for o in Orientation::ALL {
            if row_holds(tag, o.view(prof.pqrs())) {
                found.push((tag, o));
                break;
            }
        }
    }
    let Some(&(tag, orientation)) = found.first() else {
        return Err(CurveError::Unclassifiable(format!(
            "no row matches (p,q,r,s) = {:?}",
            prof.pqrs()
        )));
    };
    Ok(Classification {
        tag,
        admissible: found.iter().map(|f| f.0).collect(),
        orientation,
        pqrs: orientation.view(prof.pqrs()),
        handsome: h,
        log,
    })
}

/// Exponent `k` of the residual polynomial shears.
pub fn shear_order(tag: TypeTag, (p, q, r, s): (i64, i64, i64, i64)) -> i64 {
    match tag {
        TypeTag::PlusPlus => Integer::div_floor(&q, &p).min(Integer::div_floor(&s, &r)),
        TypeTag::MinusPlus => Integer::div_floor(&q, &p),
        _ => 0,
    }
}

/// Dimension `sigma = p+q+r+s-1-eps-k` of the space of curves of this shape.
pub fn dim_curv(tag: TypeTag, pqrs: (i64, i64, i64, i64)) -> i64 {
    let (p, q, r, s) = pqrs;
    let eps = match tag {
        TypeTag::PlusPlus | TypeTag::MixedPlusMinus => 2,
        TypeTag::MinusPlus => 1,
        TypeTag::MinusMinus => 0,
    };
    // a nonempty quotient has nonnegative dimension
    (p + q + r + s - 1 - eps - shear_order(tag, pqrs)).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(lo, c)
    }

    #[test]
    fn power_cover() {
        let c = ParametricCurve::over_q(lp(2, &[1]), lp(4, &[1]));
        assert_eq!(detect_nonprimitive(&c), Primitivity::PowerCover(2));
        let c = ParametricCurve::over_q(lp(-2, &[1, 0, 0, 0, 1]), lp(6, &[1]));
        assert_eq!(detect_nonprimitive(&c), Primitivity::PowerCover(2));
    }

    #[test]
    fn plus_plus_non_handsome() {
        let c = ParametricCurve::over_q(lp(-1, &[1, 0, 0, 1]), lp(-1, &[1, 0, 0, 0, 0, 1]));
        assert!(!is_handsome(&c).unwrap());
    }

    #[test]
    fn shear_kills_top_term() {
        // x = t^2 + t^-1, y = t^4 + t^-2
        let c = ParametricCurve::over_q(lp(-1, &[1, 0, 0, 1]), lp(-2, &[1, 0, 0, 0, 0, 0, 1]));
        let (h, log) = reduce_to_handsome(&c).unwrap();
        assert_eq!(log[0], Move::ShearY { c: Scalar::int(-1), l: 2 });
        // then x -> x - y^2/4 leaves the hyperbola xy = -2
        assert_eq!(h.phi, lp(-1, &[1]));
        assert_eq!(h.psi, lp(1, &[-2]));
    }

    #[test]
    fn polynomial_shear_at_infinity() {
        let c = ParametricCurve::over_q(lp(2, &[1]), lp(1, &[1, 0, 0, 1]));
        let (h, log) = reduce_to_handsome(&c).unwrap();
        assert_eq!(log, [Move::ShearY { c: Scalar::int(-1), l: 2 }]);
        assert_eq!(h.psi.top(), Some(1));
    }

    #[test]
    fn handsome_plus_plus_keeps_identity_log() {
        // x = t^2 + t^-3, y = t^6 + t^-4: r > p, so handsome.
        let c = ParametricCurve::over_q(lp(-3, &[1, 0, 0, 0, 0, 1]), lp(-4, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert!(is_handsome(&c).unwrap());
        assert!(reduce_to_handsome(&c).unwrap().1.is_empty());
        let first = degree_reducing_shears(&c).unwrap();
        assert_eq!(first[0], Move::ShearY { c: Scalar::int(-1), l: 3 });
        let moved = apply_automorphism(&c, &first[0]);
        assert_eq!(moved.psi.bot(), Some(-9));
    }

    #[test]
    fn minus_plus_non_handsome() {
        // x = t^4 + t, y = t^2 + t^-1: r = -1, p = 4, q = 2, s = 1.
        let c = ParametricCurve::over_q(lp(1, &[1, 0, 0, 1]), lp(-1, &[1, 0, 0, 1]));
        assert!(!is_handsome(&c).unwrap());
    }

    #[test]
    fn shear_of_line() {
        let c = ParametricCurve::over_q(lp(1, &[1]), lp(1, &[1, 1]));
        let m = Move::Affine {
            m: [Scalar::one(), Scalar::zero(), Scalar::int(-1), Scalar::one()],
            shift: [Scalar::zero(), Scalar::zero()],
        };
        assert_eq!(apply_automorphism(&c, &m).psi, lp(2, &[1]));
    }
}
