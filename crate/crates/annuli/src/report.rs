//! Machine-readable reports. Integers are exact; scalars and polynomials
//! are exact strings.

use annuli_core::catalog::{expected_invariants, gen_series, matches_expected, SeriesId};
use annuli_core::certify::{
    embedding_verdict, estimates_audit, regularity_check, BalanceLedger, EmbeddingReport, FiniteEntry,
    InfinityData, NotEmbeddingReason, Verdict,
};
use annuli_core::curve::{classify_type, exponent_profile, is_handsome, ParametricCurve};
use annuli_core::local::{Coord, PlaceData, TruncPolicy};
use annuli_core::{KPoly, LaurentPoly, LocalError};
use serde::Serialize;

/// Renders a Laurent polynomial in `t`.
pub fn render_laurent(f: &LaurentPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f.terms().rev().map(|(k, c)| format!("({})*t^{}", c, k)).collect();
    parts.join(" + ")
}

fn render(p: &KPoly) -> String {
    p.render("t")
}

fn coord(c: Coord) -> &'static str {
    match c {
        Coord::X => "x",
        Coord::Y => "y",
    }
}

/// The analyzed curve.
#[derive(Serialize)]
pub struct CurveText {
    /// Radicand of the field.
    pub d: i64,
    /// x-component.
    pub x: String,
    /// y-component.
    pub y: String,
}

impl CurveText {
    fn of(c: &ParametricCurve) -> Self {
        CurveText { d: c.d, x: render_laurent(&c.phi), y: render_laurent(&c.psi) }
    }
}

/// Signed exponents of the input curve.
#[derive(Serialize)]
pub struct ProfileReport {
    /// Pole order of x at infinity.
    pub p: i64,
    /// Pole order of y at infinity.
    pub q: i64,
    /// Pole order of x at zero.
    pub r: i64,
    /// Pole order of y at zero.
    pub s: i64,
}

/// Type and normalization.
#[derive(Serialize)]
pub struct ClassReport {
    /// Primary type.
    pub tag: String,
    /// Every admissible type.
    pub admissible: Vec<String>,
    /// Coordinates exchanged.
    pub swap: bool,
    /// `t -> 1/t` applied.
    pub invert: bool,
    /// Whether the input was already handsome.
    pub handsome: bool,
    /// Normalizing moves.
    pub moves: Vec<String>,
    /// `(p, q, r, s)` in the oriented frame.
    pub pqrs: (i64, i64, i64, i64),
}

/// One singular orbit.
#[derive(Serialize)]
pub struct PointReport {
    /// Monic factor whose roots are the parameters.
    pub factor: String,
    /// Number of conjugate points.
    pub orbit_degree: usize,
    /// `A_k` or characteristic pairs.
    pub label: String,
    /// Characteristic pairs `(m, n)`.
    pub pairs: Vec<(i64, i64)>,
    /// Milnor number.
    pub mu: i64,
    /// Milnor number from the pairs.
    pub mu_from_pairs: i64,
    /// `2 delta` of one point of the orbit.
    pub two_delta: i64,
    /// Base coordinate.
    pub base: &'static str,
    /// Order of the base coordinate.
    pub n: i64,
    /// Multiplicity.
    pub multiplicity: i64,
    /// Codimension.
    pub nu: i64,
    /// Codimension after the leading exponent.
    pub nu_prime: i64,
    /// External codimension.
    pub ext_nu: i64,
}

impl PointReport {
    fn of(f: &FiniteEntry) -> Self {
        PointReport {
            factor: render(&f.factor),
            orbit_degree: f.orbit_degree,
            label: f.label.clone(),
            pairs: f.pairs.clone(),
            mu: f.mu,
            mu_from_pairs: f.mu_from_pairs,
            two_delta: f.two_delta,
            base: coord(f.base),
            n: f.n,
            multiplicity: f.multiplicity,
            nu: f.nu,
            nu_prime: f.nu_prime,
            ext_nu: f.ext_nu,
        }
    }
}

/// Data at one place.
#[derive(Serialize)]
pub struct PlaceReport {
    /// `0` or `inf`.
    pub place: &'static str,
    /// Base coordinate.
    pub base: &'static str,
    /// Characteristic pairs of the branch.
    pub pairs: Vec<(i64, i64)>,
    /// Generic sum.
    pub sigma_generic: i64,
    /// Actual sum.
    pub sigma_actual: i64,
    /// Intersection term.
    pub intersection: i64,
    /// Index.
    pub index: i64,
    /// `2 delta` at the place.
    pub two_delta: i64,
    /// Codimension.
    pub nu: usize,
}

impl PlaceReport {
    fn of(p: &PlaceData) -> Self {
        PlaceReport {
            place: p.place.name(),
            base: coord(p.branch.base),
            pairs: p.branch.pairs.clone(),
            sigma_generic: p.sigma_generic,
            sigma_actual: p.sigma_actual,
            intersection: p.intersection,
            index: p.index,
            two_delta: p.two_delta,
            nu: p.nu,
        }
    }
}

/// Tangent-case extras.
#[derive(Serialize)]
pub struct TangencyReport {
    /// Intersection count of the two places.
    pub intersection: i64,
    /// Coinciding levels.
    pub coinciding: usize,
    /// Coinciding levels with nonzero coefficient.
    pub nu_tan: usize,
    /// Leading-coefficient power at infinity.
    pub lead_power_inf: String,
    /// Leading-coefficient power at zero.
    pub lead_power_zero: String,
    /// Whether they agree.
    pub leads_match: bool,
}

/// Balance ledger.
#[derive(Serialize)]
pub struct LedgerReport {
    /// `"2dmax = d1+...+dinf"`.
    pub summary: String,
    /// `2 delta_max`.
    pub two_delta_max: i64,
    /// Sum over finite points.
    pub finite_sum: i64,
    /// `2 delta_inf`.
    pub two_delta_inf: i64,
    /// Balance holds.
    pub balanced: bool,
    /// `i_0 + i_inf + finite_sum`.
    pub euler_sum: i64,
    /// `p'`.
    pub p_prime: i64,
    /// `r'`.
    pub r_prime: i64,
    /// Codimension at infinity.
    pub nu_inf: i64,
    /// Bound `E`.
    pub e_value: i64,
    /// Reserve `2 delta_max - E`.
    pub reserve: i64,
    /// Places.
    pub places: Vec<PlaceReport>,
    /// Tangent-case data.
    pub tangency: Option<TangencyReport>,
}

impl LedgerReport {
    fn of(l: &BalanceLedger) -> Self {
        let (z, i) = l.infinity.places();
        let tangency = match &l.infinity {
            InfinityData::Tangent(t) => Some(TangencyReport {
                intersection: t.intersection,
                coinciding: t.u,
                nu_tan: t.nu_tan,
                lead_power_inf: t.lead_power_inf.to_exact_string(),
                lead_power_zero: t.lead_power_zero.to_exact_string(),
                leads_match: t.leads_match,
            }),
            InfinityData::Places { .. } => None,
        };
        LedgerReport {
            summary: l.summary(),
            two_delta_max: l.two_delta_max,
            finite_sum: l.finite_sum,
            two_delta_inf: l.two_delta_inf,
            balanced: l.balanced,
            euler_sum: l.euler_sum,
            p_prime: l.p_prime,
            r_prime: l.r_prime,
            nu_inf: l.nu_inf,
            e_value: l.e_value,
            reserve: l.reserve,
            places: vec![PlaceReport::of(z), PlaceReport::of(i)],
            tangency,
        }
    }
}

/// Regularity condition.
#[derive(Serialize)]
pub struct RegularityReport {
    /// Sum of external codimensions.
    pub lhs: i64,
    /// Dimension of the space of curves.
    pub sigma: i64,
    /// `sigma - lhs`.
    pub margin: i64,
    /// `lhs <= sigma`.
    pub holds: bool,
}

/// One audited estimate.
#[derive(Serialize)]
pub struct AuditReport {
    /// Name.
    pub name: String,
    /// Left side.
    pub lhs: i64,
    /// Right side.
    pub rhs: i64,
    /// `pass`, `fail` or `nu-rule suspect`.
    pub status: &'static str,
}

/// Self-intersection witness.
#[derive(Serialize)]
pub struct WitnessReport {
    /// `g(v)`, `v = t t'`.
    pub v_factor: String,
    /// Coefficients of `H(u)` ascending, each a polynomial in `v` mod `g`.
    pub u_poly: Vec<String>,
    /// Readable form.
    pub description: String,
    /// Exact re-verification passed.
    pub verified: Option<bool>,
    /// Image point `(x, y)`.
    pub image: Option<(String, String)>,
}

/// Final verdict.
#[derive(Serialize)]
pub struct VerdictReport {
    /// `Embedding` or `NotEmbedding`.
    pub kind: &'static str,
    /// `PowerCover` or `SelfIntersection` for non-embeddings.
    pub reason: Option<&'static str>,
    /// Degree of the power cover.
    pub cover_degree: Option<i64>,
    /// Witness of a self-intersection.
    pub witness: Option<WitnessReport>,
}

/// Full analysis of one curve.
#[derive(Serialize)]
pub struct AnalysisReport {
    /// Input curve.
    pub curve: CurveText,
    /// Exponents of the input.
    pub profile: Option<ProfileReport>,
    /// Type and normalization, if a row applies.
    pub classification: Option<ClassReport>,
    /// Why classification failed.
    pub classification_error: Option<String>,
    /// Dimension of the space of curves.
    pub sigma: Option<i64>,
    /// Finite singular orbits.
    pub singular_locus: Vec<PointReport>,
    /// Balance ledger.
    pub ledger: Option<LedgerReport>,
    /// Regularity condition.
    pub regularity: Option<RegularityReport>,
    /// Estimates.
    pub audits: Vec<AuditReport>,
    /// Verdict.
    pub verdict: VerdictReport,
    /// Injectivity and balance agree.
    pub consistent: bool,
}

impl AnalysisReport {
    /// Whether the verdict is `Embedding`.
    pub fn is_embedding(&self) -> bool {
        self.verdict.kind == "Embedding"
    }
}

fn verdict_report(r: &EmbeddingReport) -> VerdictReport {
    match &r.verdict {
        Verdict::Embedding => VerdictReport { kind: "Embedding", reason: None, cover_degree: None, witness: None },
        Verdict::NotEmbedding(NotEmbeddingReason::PowerCover(d)) => VerdictReport {
            kind: "NotEmbedding",
            reason: Some("PowerCover"),
            cover_degree: Some(*d),
            witness: None,
        },
        Verdict::NotEmbedding(NotEmbeddingReason::SelfIntersection(w)) => {
            let cert = r.certificate.as_ref();
            let witness = w.as_ref().map(|w| WitnessReport {
                v_factor: w.v_factor.render("v"),
                u_poly: w.u_poly.iter().map(|c| c.render("v")).collect(),
                description: w.describe(),
                verified: cert.and_then(|c| c.witness_verified),
                image: cert.and_then(|c| c.image.clone()),
            });
            VerdictReport { kind: "NotEmbedding", reason: Some("SelfIntersection"), cover_degree: None, witness }
        }
    }
}

/// Runs the full analysis.
pub fn analyze(c: &ParametricCurve, policy: TruncPolicy) -> Result<AnalysisReport, LocalError> {
    analyze_with(c, policy).map(|(r, _)| r)
}

/// Runs the full analysis, also returning the underlying verdict.
pub fn analyze_with(
    c: &ParametricCurve,
    policy: TruncPolicy,
) -> Result<(AnalysisReport, EmbeddingReport), LocalError> {
    let profile = exponent_profile(c)
        .ok()
        .map(|p| ProfileReport { p: p.p(), q: p.q(), r: p.r(), s: p.s() });
    let (classification, classification_error) = match classify_type(c) {
        Ok(cl) => (
            Some(ClassReport {
                tag: cl.tag.label().into(),
                admissible: cl.admissible.iter().map(|t| t.label().to_string()).collect(),
                swap: cl.orientation.swap,
                invert: cl.orientation.invert,
                handsome: is_handsome(c).unwrap_or(false),
                moves: cl.log.iter().map(|m| m.describe()).collect(),
                pqrs: cl.pqrs,
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let rep = embedding_verdict(c, policy)?;
    let ledger = rep.ledger.as_ref();
    let out = AnalysisReport {
        curve: CurveText::of(c),
        profile,
        classification,
        classification_error,
        sigma: ledger.and_then(|l| l.sigma),
        singular_locus: ledger.map(|l| l.finite.iter().map(PointReport::of).collect()).unwrap_or_default(),
        ledger: ledger.map(LedgerReport::of),
        regularity: ledger.and_then(regularity_check).map(|r| RegularityReport {
            lhs: r.lhs,
            sigma: r.sigma,
            margin: r.margin,
            holds: r.holds,
        }),
        audits: ledger
            .map(|l| {
                estimates_audit(l)
                    .into_iter()
                    .map(|a| AuditReport { status: a.status(), name: a.name, lhs: a.lhs, rhs: a.rhs })
                    .collect()
            })
            .unwrap_or_default(),
        verdict: verdict_report(&rep),
        consistent: rep.consistent,
    };
    Ok((out, rep))
}

/// Outcome of verifying one catalog entry.
#[derive(Serialize)]
pub struct VerifyRecord {
    /// Entry label.
    pub id: String,
    /// `pass`, `fail`, `skipped` or `error`.
    pub status: &'static str,
    /// Failed checks or the exclusion reason.
    pub notes: Vec<String>,
    /// Ledger summary.
    pub ledger: Option<String>,
    /// Singularity labels.
    pub singularities: Vec<String>,
}

/// Verifies one catalog entry: embedding, balance, expected invariants,
/// audits and regularity.
pub fn verify_entry(id: &SeriesId, policy_multiplier: i64) -> VerifyRecord {
    let label = id.label();
    let c = match gen_series(id) {
        Ok(c) => c,
        Err(e) => {
            return VerifyRecord { id: label, status: "skipped", notes: vec![e.to_string()], ledger: None, singularities: vec![] }
        }
    };
    let policy = TruncPolicy::for_curve(&c, policy_multiplier);
    let (rep, raw) = match analyze_with(&c, policy) {
        Ok(r) => r,
        Err(e) => {
            return VerifyRecord { id: label, status: "error", notes: vec![e.to_string()], ledger: None, singularities: vec![] }
        }
    };
    let mut notes = Vec::new();
    if !rep.is_embedding() {
        notes.push(format!("verdict {:?}", rep.verdict.reason));
    }
    if !rep.consistent {
        notes.push("injectivity and balance disagree".into());
    }
    match &rep.ledger {
        Some(l) if l.balanced => {}
        Some(l) => notes.push(format!("unbalanced {}", l.summary)),
        None => notes.push("no ledger".into()),
    }
    let observed: Vec<(KPoly, i64)> = raw
        .ledger
        .as_ref()
        .map(|l| l.finite.iter().map(|f| (f.factor.clone(), f.mu)).collect())
        .unwrap_or_default();
    match expected_invariants(id) {
        Ok(exp) if matches_expected(&exp, &observed) => {}
        Ok(_) => notes.push("expected invariants not matched".into()),
        Err(e) => notes.push(e.to_string()),
    }
    for a in rep.audits.iter().filter(|a| a.status != "pass") {
        notes.push(format!("audit {}: {} <= {} ({})", a.name, a.lhs, a.rhs, a.status));
    }
    match &rep.regularity {
        Some(r) if r.holds => {}
        Some(r) => notes.push(format!("regularity {} > {}", r.lhs, r.sigma)),
        None => notes.push("regularity undefined".into()),
    }
    VerifyRecord {
        id: label,
        status: if notes.is_empty() { "pass" } else { "fail" },
        notes,
        ledger: rep.ledger.as_ref().map(|l| l.summary.clone()),
        singularities: rep.singular_locus.iter().map(|p| format!("{} x{}", p.label, p.orbit_degree)).collect(),
    }
}
