//! Catalog of embeddings: generators for the families (a)-(w), the shared
//! Laurent recursion, the antisymmetric solver for family (j), tower
//! transformations and the table of expected finite singularities.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::curve::ParametricCurve;
use crate::error::CatalogError;
use crate::laurent::LaurentPoly;
use crate::local::milnor_from_exponents;
use crate::poly::KPoly;
use crate::scalar::Scalar;

/// Family letter plus named integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesId {
    /// Letter `a`..=`w`.
    pub letter: char,
    /// Parameters in the family's canonical order.
    pub params: Vec<(&'static str, i64)>,
}

impl SeriesId {
    /// Builds an id from values in the family's canonical order.
    pub fn new(letter: char, values: &[i64]) -> Result<Self, CatalogError> {
        let names = param_names(letter)?;
        if names.len() != values.len() {
            return Err(CatalogError::ExcludedParams(format!(
                "({}) expects parameters {:?}",
                letter, names
            )));
        }
        Ok(SeriesId { letter, params: names.iter().copied().zip(values.iter().copied()).collect() })
    }

    /// Value of a named parameter.
    pub fn get(&self, name: &str) -> i64 {
        self.params.iter().find(|(n, _)| *n == name).map(|p| p.1).unwrap_or(0)
    }

    /// `b(k=1,m=2)` style name.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return format!("{}", self.letter);
        }
        let ps: Vec<String> = self.params.iter().map(|(n, v)| format!("{}={}", n, v)).collect();
        format!("{}({})", self.letter, ps.join(","))
    }
}

/// Parameter names of a family.
pub fn param_names(letter: char) -> Result<&'static [&'static str], CatalogError> {
    Ok(match letter {
        'a' => &["m", "n", "k"],
        'b' => &["k", "m"],
        'c' | 'd' | 'e' | 'f' => &["k", "m", "n"],
        'g' | 'h' | 'i' | 'k' | 'p' => &["k"],
        'j' | 'o' | 'q' => &["m", "n"],
        'l' | 'm' => &["m", "n", "k", "l", "p"],
        'n' => &["m", "n", "k", "l"],
        'r' | 's' => &["n"],
        't' | 'u' | 'v' | 'w' => &[],
        _ => return Err(CatalogError::ExcludedParams(format!("unknown family {:?}", letter))),
    })
}

/// Family letters with their parameter constraints.
pub fn list() -> Vec<(char, &'static str)> {
    vec![
        ('a', "m>=1, gcd(m,n)=1, k>=0; b_k=1, other b_j=0"),
        ('b', "k>=1, m>=0, (k,m) not in {(1,0),(2,0),(1,1)}"),
        ('c', "k>=1, m>=1, n>=2, mn>=2"),
        ('d', "k>=1, m>=1, n>=2, mn>=3"),
        ('e', "k>=1, m>=1, n>=2, mn>=2"),
        ('f', "k>=1, m>=1, n>=2, mn>=4"),
        ('g', "k>=1"),
        ('h', "k>=1"),
        ('i', "k>=1"),
        ('j', "0<=m<=n, (m,n)!=(0,0)"),
        ('k', "k>=1"),
        ('l', "m,n,k,l>=0, ml-nk=1, p>=1"),
        ('m', "m,n,k,l>=0, ml-nk=1, p>=2"),
        ('n', "m,n,k,l>=0, ml-nk=1"),
        ('o', "m>=1, n>=0"),
        ('p', "k>=0"),
        ('q', "m>=2, n>=0"),
        ('r', "n>=0"),
        ('s', "n>=1"),
        ('t', "none"),
        ('u', "none"),
        ('v', "none"),
        ('w', "none"),
    ]
}

fn excluded(id: &SeriesId, why: &str) -> CatalogError {
    CatalogError::ExcludedParams(format!("{}: {}", id.label(), why))
}

/// Checks the parameter constraints of a family and that the curve tends
/// to infinity at both ends of the annulus.
pub fn validate(id: &SeriesId) -> Result<(), CatalogError> {
    family_constraints(id)?;
    let c = build(id)?;
    let pole = |top: bool| {
        let e = |f: &LaurentPoly| if top { f.top().unwrap_or(0) } else { -f.bot().unwrap_or(0) };
        e(&c.phi) > 0 || e(&c.psi) > 0
    };
    if !pole(true) {
        return Err(excluded(id, "finite limit as t -> infinity"));
    }
    if !pole(false) {
        return Err(excluded(id, "finite limit as t -> 0"));
    }
    Ok(())
}

fn family_constraints(id: &SeriesId) -> Result<(), CatalogError> {
    let g = |n: &str| id.get(n);
    let need = |ok: bool, why: &str| if ok { Ok(()) } else { Err(excluded(id, why)) };
    match id.letter {
        'a' => {
            need(g("m") >= 1, "m >= 1")?;
            need(g("m").gcd(&g("n")) == 1, "gcd(m,n) = 1")?;
            need(g("k") >= 0, "k >= 0")
        }
        'b' => {
            need(g("k") >= 1 && g("m") >= 0, "k >= 1, m >= 0")?;
            need(!matches!((g("k"), g("m")), (1, 0) | (2, 0) | (1, 1)), "(k,m) != (1,0),(2,0),(1,1)")
        }
        'c' | 'd' | 'e' | 'f' => {
            let min = match id.letter {
                'c' | 'e' => 2,
                'd' => 3,
                _ => 4,
            };
            need(g("k") >= 1 && g("m") >= 1 && g("n") >= 2, "k >= 1, m >= 1, n >= 2")?;
            need(g("m") * g("n") >= min, "mn lower bound")
        }
        'g' | 'h' | 'i' | 'k' => need(g("k") >= 1, "k >= 1"),
        'p' => need(g("k") >= 0, "k >= 0"),
        'j' => {
            need(0 <= g("m") && g("m") <= g("n"), "0 <= m <= n")?;
            need((g("m"), g("n")) != (0, 0), "(m,n) != (0,0)")
        }
        'l' | 'm' | 'n' => {
            need(["m", "n", "k", "l"].iter().all(|v| g(v) >= 0), "m, n, k, l >= 0")?;
            need(g("m") * g("l") - g("n") * g("k") == 1, "ml - nk = 1")?;
            match id.letter {
                'l' => need(g("p") >= 1, "p >= 1"),
                'm' => need(g("p") >= 2, "p >= 2"),
                _ => Ok(()),
            }
        }
        'o' => need(g("m") >= 1 && g("n") >= 0, "m >= 1, n >= 0"),
        'q' => need(g("m") >= 2 && g("n") >= 0, "m >= 2, n >= 0"),
        'r' => need(g("n") >= 0, "n >= 0"),
        's' => need(g("n") >= 1, "n >= 1"),
        't' | 'u' | 'v' | 'w' => Ok(()),
        _ => Err(excluded(id, "unknown family")),
    }
}

/// `[P(u) - P(1)] u^e / (u - 1)`.
pub fn recursion_step(p: &LaurentPoly, e: i64) -> LaurentPoly {
    let at1 = p.eval(&Scalar::one()).expect("nonzero point");
    let num = p.sub(&LaurentPoly::constant(at1)).shift(e);
    num.exact_div(&LaurentPoly::t_minus(Scalar::one())).expect("u = 1 is a root")
}

fn iterate(mut p: LaurentPoly, e: i64, times: i64) -> LaurentPoly {
    for _ in 0..times {
        p = recursion_step(&p, e);
    }
    p
}

/// The polynomial `Z` of degree `m+n+1` without constant term such that
/// `Z(t) - Z(1/t) = (t-1)^{2m+1} (t+1)^{2n+1} t^{-m-n-1}`.
pub fn solve_z(m: i64, n: i64) -> Result<KPoly, CatalogError> {
    if !(0 <= m && m <= n) || (m, n) == (0, 0) {
        return Err(CatalogError::ExcludedParams(format!("Z({},{}) needs 0 <= m <= n, (m,n) != (0,0)", m, n)));
    }
    let rhs = z_rhs(m, n);
    // rhs = sum_{j>0} c_j (t^j - t^{-j}); Z = sum_{j>0} c_j t^j
    let deg = (m + n + 1) as usize;
    let mut c = vec![Scalar::zero(); deg + 1];
    for (k, a) in rhs.terms() {
        if k > 0 {
            c[k as usize] = a.clone();
        }
    }
    Ok(KPoly::new(c))
}

/// Right side of the antisymmetry condition for `Z_{m,n}`.
pub fn z_rhs(m: i64, n: i64) -> LaurentPoly {
    let a = LaurentPoly::t_minus(Scalar::one()).pow((2 * m + 1) as u32);
    let b = LaurentPoly::t_minus(Scalar::int(-1)).pow((2 * n + 1) as u32);
    a.mul(&b).shift(-m - n - 1)
}

fn lin(root: Scalar) -> LaurentPoly {
    LaurentPoly::t_minus(root)
}

fn tm1(e: i64) -> LaurentPoly {
    lin(Scalar::one()).pow(e as u32)
}

fn mono(k: i64) -> LaurentPoly {
    LaurentPoly::t_pow(k)
}

fn over(phi: LaurentPoly, psi: LaurentPoly) -> ParametricCurve {
    let d = if phi.radicand() != 1 { phi.radicand() } else { psi.radicand() };
    ParametricCurve { phi, psi, d }
}

/// The curve of a catalog entry.
pub fn gen_series(id: &SeriesId) -> Result<ParametricCurve, CatalogError> {
    validate(id)?;
    build(id)
}

fn build(id: &SeriesId) -> Result<ParametricCurve, CatalogError> {
    family_constraints(id)?;
    let g = |n: &str| id.get(n);
    let one = Scalar::one();
    let t_t1 = LaurentPoly::from_ints(1, &[-1, 1]); // t(t-1)
    Ok(match id.letter {
        'a' => {
            let (m, n, k) = (g("m"), g("n"), g("k"));
            let mut y = mono(n);
            if k > 0 {
                y = y.add(&mono(-k * m));
            }
            over(mono(m), y)
        }
        'b' => over(t_t1, r_series(g("k"), g("m")).compose_inv_t()),
        'c' | 'd' | 'e' | 'f' => {
            let (k, m, n) = (g("k"), g("m"), g("n"));
            let (xe, start, step) = match id.letter {
                'c' => (m * n, mono(n), m * n + 1),
                'd' => (m * n - 1, mono(n), m * n),
                'e' => (m * n, mono(-n), m * n + 1),
                _ => (m * n - 1, mono(-n), m * n),
            };
            let x = mono(xe).mul(&tm1(1));
            over(x, iterate(start, step, k).compose_inv_t())
        }
        'g' => {
            let w1 = LaurentPoly::from_ints(1, &[3, -1]);
            over(mono(2).mul(&tm1(1)), iterate(w1, 3, g("k") - 1).compose_inv_t())
        }
        'h' | 'i' => {
            let s = if id.letter == 'h' { -1 } else { 1 };
            let x1 = LaurentPoly::from_ints(2, &[2, s]);
            over(mono(3).mul(&tm1(1)), iterate(x1, 4, g("k") - 1).compose_inv_t())
        }
        'j' => {
            let z = solve_z(g("m"), g("n"))?;
            over(LaurentPoly::from_poly(&z, 0), LaurentPoly::from_ints(-1, &[1, 0, 1]))
        }
        'k' => {
            let x = tm1(3).shift(-2);
            let y = x.pow(g("k") as u32).mul(&tm1(1).mul(&lin(Scalar::int(4))).shift(-1));
            over(x, y)
        }
        'l' => {
            let p = g("p");
            over(tm1(g("m")).shift(-p * g("n")), tm1(g("k")).shift(-p * g("l")))
        }
        'm' => {
            let p = g("p");
            over(tm1(p * g("m")).shift(-g("n")), tm1(p * g("k")).shift(-g("l")))
        }
        'n' => over(tm1(2 * g("m")).shift(-2 * g("n")), tm1(2 * g("k")).shift(-2 * g("l"))),
        'o' => {
            let (m, n) = (g("m"), g("n"));
            let y = tm1(4 * m).shift(1 - 2 * m);
            let x = y.pow(n as u32).mul(&tm1(2 * m).mul(&lin(-&one)).shift(-m));
            over(x, y)
        }
        'p' => {
            let x = tm1(4).shift(-3);
            let y = x.pow(g("k") as u32).mul(&tm1(2).mul(&lin(Scalar::int(3))).shift(-2));
            over(x, y)
        }
        'q' => {
            let (m, n) = (g("m"), g("n"));
            let y = tm1(4 * m - 2).shift(1 - 2 * m);
            let x = y.pow(n as u32).mul(&tm1(2 * m - 1).mul(&lin(-&one)).shift(-m));
            over(x, y)
        }
        'r' => {
            // e^{i pi/3} = (1 + sqrt(-3))/2
            let e = Scalar::new(
                num_rational::BigRational::new(1.into(), 2.into()),
                num_rational::BigRational::new(1.into(), 2.into()),
                -3,
            )
            .expect("squarefree");
            let y = tm1(6).shift(-3);
            let x = y.pow(g("n") as u32).mul(&tm1(3).mul(&lin(-&e)).shift(-2));
            over(x, y)
        }
        's' => {
            let n = g("n");
            let r2 = Scalar::sqrt(2).expect("squarefree");
            let a = LaurentPoly::from_terms([(0, one.clone()), (1, r2.clone()), (2, one.clone())]);
            let b = LaurentPoly::from_terms([(0, one.clone()), (1, -&r2), (2, one.clone())]);
            over(a.shift(2 * n), b.shift(-2 * n - 4))
        }
        't' => {
            let a = LaurentPoly::from_terms([(0, Scalar::frac(2, 3)), (1, one.clone()), (2, one.clone())]);
            let b = LaurentPoly::from_terms([(0, Scalar::frac(1, 3)), (1, Scalar::int(-1)), (2, one.clone())]);
            over(a.shift(4), b.shift(-8))
        }
        'u' | 'w' => {
            let x = tm1(2).mul(&lin(Scalar::int(-2))).shift(-1);
            let e = if id.letter == 'u' { 4 } else { 2 };
            let y = tm1(e).mul(&lin(Scalar::frac(-1, 2))).shift(-2);
            over(x, y)
        }
        'v' => {
            let r5 = Scalar::sqrt(5).expect("squarefree");
            let a = &Scalar::int(4) + &(&Scalar::int(2) * &r5);
            let b = &(&Scalar::int(11) + &(&Scalar::int(5) * &r5)) * &Scalar::frac(1, 4);
            let x = tm1(2).mul(&lin(-&a)).shift(-1);
            let y = tm1(4).mul(&lin(-&b)).shift(-2);
            over(x, y)
        }
        _ => return Err(excluded(id, "unknown family")),
    })
}

/// `R_{k,m}` of family (b), as a Laurent polynomial in `u`.
pub fn r_series(k: i64, m: i64) -> LaurentPoly {
    let r0 = LaurentPoly::from_terms([(-1, Scalar::one()), (0, Scalar::frac(-1, 2))]).pow((2 * m + 1) as u32);
    iterate(r0, 2, k)
}

/// Tower transformation modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerMode {
    /// `(phi, psi) -> (phi, phi psi + K)`.
    Forward,
    /// `(phi, psi) -> (phi, [psi - psi(t_1)] / phi)`.
    Reverse,
    /// `(phi, psi) -> (phi, (phi + 1/4) psi)` when `phi + 1/4` is a square.
    Mid,
}

/// Result of a tower move; `constant` is `K` for forward moves and
/// `psi(t_1)` for reverse moves.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerResult {
    /// Transformed curve.
    pub curve: ParametricCurve,
    /// Constant used.
    pub constant: Scalar,
}

/// Distinguished simple root `t_1` of `phi = c (t - t_1) t^j`.
pub fn distinguished_root(phi: &LaurentPoly) -> Option<Scalar> {
    let (num, _) = phi.numerator();
    let (num, _) = num.strip_x();
    if num.deg() != Some(1) {
        return None;
    }
    let c = num.coeffs();
    Some(-&c[0].try_div(&c[1]).ok()?)
}

/// Applies a tower move. `k` overrides the forward constant.
pub fn tower(c: &ParametricCurve, mode: TowerMode, k: Option<Scalar>) -> Result<TowerResult, CatalogError> {
    match mode {
        TowerMode::Forward => {
            let prod = c.phi.mul(&c.psi);
            let k = k.unwrap_or_else(|| {
                if prod.top().unwrap_or(0) <= 0 {
                    -&prod.coeff(0)
                } else {
                    Scalar::zero()
                }
            });
            Ok(TowerResult { curve: over(c.phi.clone(), prod.add(&LaurentPoly::constant(k.clone()))), constant: k })
        }
        TowerMode::Reverse => {
            let t1 = distinguished_root(&c.phi)
                .ok_or_else(|| CatalogError::ShapeMismatch("phi is not c (t - t1) t^j".into()))?;
            let v = c.psi.eval(&t1).map_err(|_| CatalogError::ShapeMismatch("t1 = 0".into()))?;
            let psi = c
                .psi
                .sub(&LaurentPoly::constant(v.clone()))
                .exact_div(&c.phi)
                .map_err(|_| CatalogError::ShapeMismatch("psi - psi(t1) not divisible by phi".into()))?;
            Ok(TowerResult { curve: over(c.phi.clone(), psi), constant: v })
        }
        TowerMode::Mid => {
            let f = &c.phi;
            let b = f.coeff(1);
            let ok = f.bot().unwrap_or(0) >= 0
                && f.top() == Some(2)
                && f.coeff(2) == Scalar::one()
                && &f.coeff(0) + &Scalar::frac(1, 4) == &(&b * &b) * &Scalar::frac(1, 4);
            if !ok {
                return Err(CatalogError::ShapeMismatch("phi + 1/4 is not a square".into()));
            }
            let sq = f.add(&LaurentPoly::constant(Scalar::frac(1, 4)));
            Ok(TowerResult { curve: over(f.clone(), sq.mul(&c.psi)), constant: Scalar::frac(1, 4) })
        }
    }
}

/// Family (b) built from `psi_0 = t - 1/2` by `m` mid moves and `k`
/// reverse moves (equal to the recursion up to `y -> (-1)^k y`).
pub fn series_b_by_towers(k: i64, m: i64) -> ParametricCurve {
    let mut c = over(LaurentPoly::from_ints(1, &[-1, 1]), LaurentPoly::from_terms([(0, Scalar::frac(-1, 2)), (1, Scalar::one())]));
    for _ in 0..m {
        c = tower(&c, TowerMode::Mid, None).expect("shape").curve;
    }
    for _ in 0..k {
        c = tower(&c, TowerMode::Reverse, None).expect("shape").curve;
    }
    c
}

/// `x = (t-1)^r (t+a) t^{-r}`, `y = (t-1)^{2r} t^{2-2r}`.
pub fn cusp_pair_family(r: i64, a: Scalar) -> ParametricCurve {
    over(tm1(r).mul(&lin(-&a)).shift(-r), tm1(2 * r).shift(2 - 2 * r))
}

/// `x = (t-1)^{4d} t^{-2}`, `y = (t-1)^{2d(2k+1)} (t+b) t^{-2k-1}`.
pub fn quartic_family(d: i64, k: i64, b: Scalar) -> ParametricCurve {
    over(tm1(4 * d).shift(-2), tm1(2 * d * (2 * k + 1)).mul(&lin(-&b)).shift(-2 * k - 1))
}

/// `x = (t-1)^2 (t+a) t^{-1}`, `y = (t-1)^2 (t+b) t^{-2}`; `(a, b) = (2, 1/2)`
/// is the three-cusp embedding (w).
pub fn three_cusp_family(a: Scalar, b: Scalar) -> ParametricCurve {
    over(tm1(2).mul(&lin(-&a)).shift(-1), tm1(2).mul(&lin(-&b)).shift(-2))
}

/// Rudolph's example in the form `x = t^2 + 2t^{-2}`, `y = 2t + t^{-2}`.
pub fn rudolph_inverse_square() -> ParametricCurve {
    over(LaurentPoly::from_ints(-2, &[2, 0, 0, 0, 1]), LaurentPoly::from_ints(-2, &[1, 0, 0, 2]))
}

/// Rudolph's example with three cusps: `x = t^2 + 2t^{-1}`, `y = 2t + t^{-2}`.
pub fn rudolph_three_cusp() -> ParametricCurve {
    over(LaurentPoly::from_ints(-1, &[2, 0, 0, 1]), LaurentPoly::from_ints(-2, &[1, 0, 0, 2]))
}

/// Points `(a, b) != (2, 1/2)` of the three-cusp family used as negative checks.
pub fn three_cusp_off_grid() -> Vec<(Scalar, Scalar)> {
    vec![
        (Scalar::int(1), Scalar::frac(1, 2)),
        (Scalar::int(3), Scalar::frac(1, 2)),
        (Scalar::int(2), Scalar::int(1)),
        (Scalar::int(2), Scalar::frac(1, 3)),
        (Scalar::int(3), Scalar::int(2)),
    ]
}

/// An expected finite singular point.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedPoint {
    /// Monic factor with the parameter(s) as roots; `None` when only the
    /// type and count are asserted.
    pub at: Option<KPoly>,
    /// Number of conjugate points.
    pub count: usize,
    /// Milnor number.
    pub mu: i64,
    /// Readable type.
    pub label: String,
}

/// Expected finite singularities of a catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedInvariants {
    /// Points with `mu > 0`.
    pub points: Vec<ExpectedPoint>,
    /// No finite singularity.
    pub smooth: bool,
    /// Asymptotics at the two places, as text.
    pub notes: &'static str,
}

fn at_rational(n: i64, d: i64) -> KPoly {
    KPoly::new(vec![Scalar::frac(-n, d), Scalar::one()])
}

fn a_k(at: KPoly, k: i64) -> Option<ExpectedPoint> {
    let count = at.deg().unwrap_or(0);
    (k > 0).then(|| ExpectedPoint { at: Some(at), count, mu: k, label: format!("A_{}", k) })
}

fn branch_point(at: KPoly, n: i64, exps: &[i64]) -> Option<ExpectedPoint> {
    let mu = milnor_from_exponents(n, exps);
    if mu == 0 {
        return None;
    }
    let e: Vec<String> = exps.iter().map(|v| format!("{}", v)).collect();
    let count = at.deg().unwrap_or(0);
    Some(ExpectedPoint { at: Some(at), count, mu, label: format!("n={} exps=[{}]", n, e.join(",")) })
}

/// Expected finite singularities and asymptotic notes.
pub fn expected_invariants(id: &SeriesId) -> Result<ExpectedInvariants, CatalogError> {
    validate(id)?;
    let g = |n: &str| id.get(n);
    let t1 = || at_rational(1, 1);
    let (pts, notes): (Vec<Option<ExpectedPoint>>, &'static str) = match id.letter {
        'a' | 'c' | 'd' | 'e' | 'f' | 'i' | 's' | 't' => (vec![], "smooth"),
        'b' => (vec![a_k(at_rational(1, 2), 2 * g("m"))], "inf: x~t^2; 0: x~t, y~t^-k"),
        'g' => (vec![a_k(at_rational(2, 3), 2)], "inf: x~t^3; 0: x~t^2"),
        'h' => (vec![a_k(at_rational(3, 4), 2)], "inf: x~t^4; 0: x~t^3"),
        'j' => (
            vec![a_k(t1(), 2 * g("m")), a_k(at_rational(-1, 1), 2 * g("n"))],
            "inf: y~t, x~y^(m+n+1); 0: y~1/t, x~1/y",
        ),
        'k' => (
            vec![branch_point(t1(), 3, &[3 * g("k") + 1]), a_k(at_rational(-2, 1), 2)],
            "inf: x~t, y~x^(k+1); 0: x~t^-2",
        ),
        'l' | 'm' | 'n' => {
            let p = match id.letter {
                'l' => 1,
                'm' => g("p"),
                _ => 2,
            };
            let (xo, yo) = (p * g("m"), p * g("k"));
            let pt = if xo >= 2 && yo >= 2 { branch_point(t1(), xo, &[yo, yo + 1]) } else { None };
            (vec![pt], "t=1 only")
        }
        'o' => {
            let (m, n) = (g("m"), g("n"));
            let v = 4 * m * n + 2 * m;
            (vec![branch_point(t1(), 4 * m, &[v, v + 2, v + 3])], "inf: y~t^(2m+1); 0: y~t^(1-2m)")
        }
        'p' => {
            let k = g("k");
            (
                vec![branch_point(t1(), 4, &[4 * k + 2, 4 * k + 3]), a_k(at_rational(-3, 1), 2)],
                "inf: x~t; 0: x~t^-3",
            )
        }
        'q' => {
            let (m, n) = (g("m"), g("n"));
            let v = (2 * m - 1) * (2 * n + 1);
            (vec![branch_point(t1(), 4 * m - 2, &[v, v + 2])], "tangent places, distinct leading coefficients")
        }
        'r' => {
            let n = g("n");
            (vec![branch_point(t1(), 6, &[6 * n + 3, 6 * n + 4])], "tangent places, A^3 = B^3")
        }
        'u' => (vec![a_k(t1(), 8)], "inf: x~t^2, y~x^(3/2); 0: x~1/t, y~x^2"),
        'v' => {
            // the second A_4 sits at t = -(3 + sqrt5)/2; its location is not asserted
            let second = ExpectedPoint { at: None, count: 1, mu: 4, label: "A_4".into() };
            (vec![a_k(t1(), 4), Some(second)], "inf: x~t^2, y~x^(3/2); 0: x~1/t, y~x^2")
        }
        'w' => (
            vec![a_k(t1(), 2), a_k(KPoly::from_ints(&[1, 1, 1]), 2)],
            "inf: y~t, x~y^2; 0: x~1/t, y~x^2",
        ),
        _ => return Err(excluded(id, "unknown family")),
    };
    let points: Vec<ExpectedPoint> = pts.into_iter().flatten().collect();
    Ok(ExpectedInvariants { smooth: points.is_empty(), points, notes })
}

/// Compares observed `(factor, mu)` data with the expectation: for each
/// Milnor number the point counts agree and the located expected factors
/// divide the observed ones.
pub fn matches_expected(exp: &ExpectedInvariants, observed: &[(KPoly, i64)]) -> bool {
    let mut mus: Vec<i64> = exp.points.iter().map(|p| p.mu).chain(observed.iter().map(|o| o.1)).collect();
    mus.sort_unstable();
    mus.dedup();
    mus.into_iter().all(|mu| {
        let want: usize = exp.points.iter().filter(|p| p.mu == mu).map(|p| p.count).sum();
        let got: usize = observed.iter().filter(|o| o.1 == mu).map(|o| o.0.deg().unwrap_or(0)).sum();
        let located = exp.points.iter().filter(|p| p.mu == mu).filter_map(|p| p.at.as_ref()).fold(KPoly::one(), |a, f| a.times(f));
        let seen = observed.iter().filter(|o| o.1 == mu).fold(KPoly::one(), |a, o| a.times(&o.0));
        want == got && seen.divrem_k(&located).1.is_zero()
    })
}

/// The verification grid: indices at most 4, exponent products at most 12.
pub fn grid() -> Vec<SeriesId> {
    let mut out = Vec::new();
    let mut push = |l: char, v: &[i64]| {
        if let Ok(id) = SeriesId::new(l, v) {
            if validate(&id).is_ok() {
                out.push(id);
            }
        }
    };
    for m in 1..=4 {
        for n in -4..=4i64 {
            for k in 0..=2 {
                if m * n.abs() <= 12 {
                    push('a', &[m, n, k]);
                }
            }
        }
    }
    for k in 1..=4 {
        for m in 0..=3 {
            push('b', &[k, m]);
        }
    }
    for l in ['c', 'd', 'e', 'f'] {
        for k in 1..=2 {
            for m in 1..=3 {
                for n in 2..=4 {
                    if m * n <= 6 {
                        push(l, &[k, m, n]);
                    }
                }
            }
        }
    }
    for l in ['g', 'h', 'i', 'k'] {
        for k in 1..=3 {
            push(l, &[k]);
        }
    }
    for k in 0..=3 {
        push('p', &[k]);
    }
    for n in 0..=4 {
        for m in 0..=n {
            push('j', &[m, n]);
        }
    }
    for m in 0..=4i64 {
        for n in 0..=4i64 {
            for k in 0..=4i64 {
                for l in 0..=4i64 {
                    if m * l - n * k != 1 {
                        continue;
                    }
                    for p in 1..=3 {
                        if p * (m + n + k + l) <= 12 {
                            push('l', &[m, n, k, l, p]);
                            push('m', &[m, n, k, l, p]);
                        }
                    }
                    if 2 * (m + n + k + l) <= 12 {
                        push('n', &[m, n, k, l]);
                    }
                }
            }
        }
    }
    for m in 1..=2 {
        for n in 0..=1 {
            push('o', &[m, n]);
        }
    }
    for m in 2..=3 {
        for n in 0..=1 {
            push('q', &[m, n]);
        }
    }
    for n in 0..=2 {
        push('r', &[n]);
    }
    for n in 1..=3 {
        push('s', &[n]);
    }
    for l in ['t', 'u', 'v', 'w'] {
        push(l, &[]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_examples() {
        let p = LaurentPoly::from_terms([(-1, Scalar::one()), (0, Scalar::frac(-1, 2))]);
        assert_eq!(recursion_step(&p, 2), LaurentPoly::from_ints(1, &[-1]));
        let n = 3;
        let m = 2;
        let s1 = recursion_step(&mono(n), m * n + 1);
        assert_eq!(s1, LaurentPoly::from_ints(m * n + 1, &[1, 1, 1]));
        let u1 = recursion_step(&mono(-n), m * n + 1);
        assert_eq!(u1, LaurentPoly::from_ints(m * n + 1 - n, &[-1, -1, -1]));
    }

    #[test]
    fn z_examples() {
        assert_eq!(solve_z(0, 1).unwrap(), KPoly::from_ints(&[0, 2, 1]));
        assert_eq!(solve_z(1, 1).unwrap(), KPoly::from_ints(&[0, -3, 0, 1]));
        assert!(solve_z(0, 0).is_err());
    }

    #[test]
    fn gen_examples() {
        let w = gen_series(&SeriesId::new('w', &[]).unwrap()).unwrap();
        assert_eq!(w.phi, LaurentPoly::from_ints(-1, &[2, -3, 0, 1]));
        assert!(gen_series(&SeriesId::new('b', &[1, 0]).unwrap()).is_err());
        let l = gen_series(&SeriesId::new('l', &[2, 1, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!(l.phi, LaurentPoly::from_ints(-1, &[1, -2, 1]));
        assert_eq!(l.psi, LaurentPoly::from_ints(-1, &[-1, 1]));
    }

    #[test]
    fn tower_examples() {
        let c = over(LaurentPoly::from_ints(1, &[-1, 1]), LaurentPoly::from_terms([(0, Scalar::frac(-1, 2)), (1, Scalar::one())]));
        let r = tower(&c, TowerMode::Reverse, None).unwrap();
        assert_eq!(r.curve.psi, mono(-1));
        let m = tower(&c, TowerMode::Mid, None).unwrap();
        assert_eq!(m.curve.psi, c.psi.pow(3));
        let f = tower(&r.curve, TowerMode::Forward, Some(r.constant.clone())).unwrap();
        assert_eq!(f.curve, c);
    }

    #[test]
    fn series_b_paths_agree() {
        for k in 1..=3 {
            for m in 0..=2 {
                let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
                let a = r_series(k, m).compose_inv_t();
                let b = series_b_by_towers(k, m).psi.scale(&sign);
                assert_eq!(a, b, "k={} m={}", k, m);
            }
        }
    }
}
