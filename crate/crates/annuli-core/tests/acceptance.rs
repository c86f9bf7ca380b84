//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons.
//!
//! Checks marked as known gaps are printed with an explanation and do not
//! fail this target; `tests/strict.rs` asserts them (ignored by default).

use std::time::{Duration, Instant};

use annuli_core::catalog::{
    cusp_pair_family, expected_invariants, gen_series, grid, matches_expected, quartic_family, r_series,
    recursion_step, rudolph_three_cusp, rudolph_inverse_square, series_b_by_towers, solve_z, three_cusp_family,
    three_cusp_off_grid, tower, z_rhs, SeriesId, TowerMode,
};
use annuli_core::certify::{
    delta_at_point, embedding_verdict, estimates_audit, injectivity_certificate, regularity_check, BalanceLedger,
    EmbeddingReport, InfinityData, Injectivity, NotEmbeddingReason, Verdict,
};
use annuli_core::curve::{apply_automorphism, detect_nonprimitive, Move, ParametricCurve, Primitivity};
use annuli_core::local::{
    exponents_from_pairs, local_puiseux, milnor_from_exponents, milnor_from_pairs, BaseChoice, TruncPolicy,
};
use annuli_core::{KPoly, LaurentPoly, Scalar};
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Check {
    what: String,
    ok: bool,
    gap: Option<&'static str>,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push(Check { what: what.into(), ok, gap: None });
    }

    fn known_gap(&mut self, what: impl Into<String>, ok: bool, why: &'static str) {
        self.checks.push(Check { what: what.into(), ok, gap: Some(why) });
    }

    fn timed(&mut self, elapsed: Duration, budget: f64) {
        let s = elapsed.as_secs_f64();
        self.check(format!("runtime {:.2} s < {} s", s, budget), s < budget);
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn hard_failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok && c.gap.is_none()).collect()
    }
}

fn policy(c: &ParametricCurve) -> TruncPolicy {
    TruncPolicy::for_curve(c, TruncPolicy::DEFAULT_MULTIPLIER)
}

fn series(letter: char, v: &[i64]) -> ParametricCurve {
    gen_series(&SeriesId::new(letter, v).unwrap()).unwrap()
}

fn report(c: &ParametricCurve) -> EmbeddingReport {
    embedding_verdict(c, policy(c)).expect("analysis succeeds")
}

fn t_minus(a: i64) -> KPoly {
    KPoly::linear_root(&Scalar::int(a))
}

fn orbit_count(l: &BalanceLedger, label: &str) -> usize {
    l.finite.iter().filter(|f| f.label == label).map(|f| f.orbit_degree).sum()
}

fn three_cusps(cr: &mut Criterion, name: &str, c: &ParametricCurve, gap: Option<&'static str>) {
    let r = report(c);
    let mut add = |what: String, ok: bool| match gap {
        Some(why) => cr.known_gap(what, ok, why),
        None => cr.check(what, ok),
    };
    add(format!("{}: Embedding", name), r.verdict == Verdict::Embedding);
    let Some(l) = r.ledger.as_ref() else {
        add(format!("{}: ledger present", name), false);
        return;
    };
    let mut degrees: Vec<usize> = l.finite.iter().map(|f| f.orbit_degree).collect();
    degrees.sort();
    add(format!("{}: three A_2 cusps, orbits {:?}", name, degrees), orbit_count(l, "A_2") == 3 && degrees == [1, 2]);
    add(
        format!("{}: ledger {} = {}+{}", name, l.two_delta_max, l.finite_sum, l.two_delta_inf),
        l.two_delta_max == 6 && l.finite_sum == 6 && l.two_delta_inf == 0 && l.balanced,
    );
    add(format!("{}: i_0+i_inf+sum 2delta = {}", name, l.euler_sum), l.euler_sum == 2);
}

fn criterion_1() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    let c = series('u', &[]);
    let r = report(&c);
    let l = r.ledger.as_ref().unwrap();
    cr.check(format!("2dmax = {}", l.two_delta_max), l.two_delta_max == 8);
    let single = l.finite.len() == 1 && l.finite[0].orbit_degree == 1;
    cr.check("single finite singularity", single);
    if single {
        let f = &l.finite[0];
        cr.check(format!("at t = 1 (factor {})", f.factor.render("t")), f.factor == t_minus(1));
        cr.check(format!("pairs {:?}", f.pairs), f.pairs == [(9, 2)]);
        cr.check(format!("mu = {} ({})", f.mu, f.label), f.mu == 8 && f.label == "A_8");
    }
    cr.check(format!("ledger {}", l.summary()), l.summary() == "8 = 8+0" && l.balanced);
    cr.check("Embedding", r.verdict == Verdict::Embedding);
    match regularity_check(l) {
        Some(g) => cr.check(format!("sigma = {}, margin {}", g.sigma, g.margin), g.sigma == 4 && g.margin == 0),
        None => cr.check("regularity defined", false),
    }
    cr.timed(t0.elapsed(), 1.0);
    cr
}

fn criterion_2() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    let c = series('v', &[]);
    let r = report(&c);
    let l = r.ledger.as_ref().unwrap();
    let a4 = orbit_count(l, "A_4");
    cr.check(format!("{} A_4 points, {} singular points in all", a4, l.finite.iter().map(|f| f.orbit_degree).sum::<usize>()),
        a4 == 2 && l.finite.len() == 2);
    cr.check(format!("ledger {}", l.summary()), l.summary() == "8 = 4+4+0" && l.balanced);
    cr.check("Embedding", r.verdict == Verdict::Embedding);
    cr.timed(t0.elapsed(), 2.0);
    cr
}

const RUDOLPH_GAP: &str = "x = t^2+2t^-2, y = 2t+t^-2 has no finite singular point and two parameters \
    with v = t t' a root of v^2 - 2 share an image point; the form x = t^2+2t^-1, y = 2t+t^-2 has \
    the three cusps";

fn criterion_3() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    three_cusps(&mut cr, "(w)", &series('w', &[]), None);
    three_cusps(&mut cr, "Rudolph x=t^2+2t^-2, y=2t+t^-2", &rudolph_inverse_square(), Some(RUDOLPH_GAP));
    three_cusps(&mut cr, "Rudolph x=t^2+2t^-1, y=2t+t^-2", &rudolph_three_cusp(), None);
    cr.timed(t0.elapsed(), 1.0);
    let r = report(&rudolph_inverse_square());
    if let Verdict::NotEmbedding(NotEmbeddingReason::SelfIntersection(Some(w))) = &r.verdict {
        cr.notes.push(format!("x=t^2+2t^-2 self-intersection: {}", w.describe()));
    }
    cr
}

fn criterion_4() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    let c = series('r', &[0]);
    cr.check(format!("field Q(sqrt({}))", c.d), c.d == -3);
    let r = report(&c);
    let l = r.ledger.as_ref().unwrap();
    let (p, _, rr, _) = l.pqrs;
    cr.check(format!("p = {}", p), p == 2);
    cr.check(format!("2dmax = {} = 8p^2-10p+2", l.two_delta_max), l.two_delta_max == 14 && l.two_delta_max == 8 * p * p - 10 * p + 2);
    let mu: i64 = l.finite.iter().map(|f| f.mu * f.orbit_degree as i64).sum();
    cr.check(format!("finite mu = {} = 8p^2-12p+4", mu), mu == 12 && mu == 8 * p * p - 12 * p + 4);
    cr.check(
        format!("2dinf = {} = gcd(p,r) nu_inf = {}*{}", l.two_delta_inf, p.gcd(&rr), l.nu_inf),
        l.two_delta_inf == 2 && l.nu_inf == 1 && p.gcd(&rr) * l.nu_inf == 2,
    );
    match &l.infinity {
        InfinityData::Tangent(t) => {
            cr.check("tangency branch active (ps = rq)", true);
            cr.check(
                format!("A^3 = B^3: {} = {}", t.lead_power_inf, t.lead_power_zero),
                t.leads_match && t.lead_power_inf == t.lead_power_zero,
            );
        }
        InfinityData::Places { .. } => cr.check("tangency branch active (ps = rq)", false),
    }
    cr.check(format!("ledger {}", l.summary()), l.balanced && r.verdict == Verdict::Embedding);
    cr.timed(t0.elapsed(), 2.0);
    cr
}

const S_GAP: &str = "for n = 2 the exponents are (p,q,r,s) = (6,-6,-4,8); 2dmax = 16 by the \
    general formula and by the place computation at infinity, while 3p = 18";

fn criterion_5() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    for n in 1..=3 {
        let c = series('s', &[n]);
        let r = report(&c);
        let l = r.ledger.as_ref().unwrap();
        let p = l.pqrs.0;
        cr.check(format!("(s) n={}: over Q(sqrt({})), smooth, Embedding", n, c.d), c.d == 2 && l.finite.is_empty() && r.verdict == Verdict::Embedding);
        cr.check(
            format!("(s) n={}: all at infinity, {} = {}", n, l.two_delta_max, l.two_delta_inf),
            l.balanced && l.two_delta_inf == l.two_delta_max,
        );
        let what = format!("(s) n={}: 2dinf = {} vs 3p = {}", n, l.two_delta_inf, 3 * p);
        if n == 2 {
            cr.known_gap(what, l.two_delta_inf == 3 * p, S_GAP);
        } else {
            cr.check(what, l.two_delta_inf == 3 * p);
        }
    }
    cr.timed(t0.elapsed(), 3.0);
    cr
}

fn criterion_6() -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    let mut cases = vec![
        ("cusp pair r=2 a=1".to_string(), cusp_pair_family(2, Scalar::int(1))),
        ("quartic d=1 k=0 b=1".to_string(), quartic_family(1, 0, Scalar::int(1))),
    ];
    for (a, b) in three_cusp_off_grid() {
        cases.push((format!("three-cusp family a={} b={}", a, b), three_cusp_family(a, b)));
    }
    for (name, c) in &cases {
        let r = report(c);
        let witnessed = matches!(&r.verdict, Verdict::NotEmbedding(NotEmbeddingReason::SelfIntersection(Some(_))));
        let verified = r.certificate.as_ref().and_then(|c| c.witness_verified) == Some(true);
        cr.check(format!("{}: SelfIntersection, witness re-verified", name), witnessed && verified);
    }
    cr.check(format!("{} fixtures", cases.len()), cases.len() == 7);
    cr.timed(t0.elapsed(), 5.0);
    cr
}

struct GridPoint {
    id: SeriesId,
    curve: ParametricCurve,
    report: EmbeddingReport,
    seconds: f64,
}

fn verify_point(id: &SeriesId) -> GridPoint {
    let curve = gen_series(id).unwrap();
    let t0 = Instant::now();
    let report = embedding_verdict(&curve, policy(&curve)).expect("analysis succeeds");
    GridPoint { id: id.clone(), curve, report, seconds: t0.elapsed().as_secs_f64() }
}

fn grid_failures(g: &GridPoint) -> Vec<String> {
    let mut bad = Vec::new();
    if detect_nonprimitive(&g.curve) != Primitivity::Primitive {
        bad.push("not primitive".into());
    }
    if g.report.verdict != Verdict::Embedding {
        bad.push(format!("{:?}", g.report.verdict));
    }
    let Some(l) = &g.report.ledger else {
        bad.push("no ledger".into());
        return bad;
    };
    if !l.balanced {
        bad.push(format!("unbalanced {}", l.summary()));
    }
    let observed: Vec<(KPoly, i64)> = l.finite.iter().map(|f| (f.factor.clone(), f.mu)).collect();
    if !matches_expected(&expected_invariants(&g.id).unwrap(), &observed) {
        bad.push("expected invariants".into());
    }
    for a in estimates_audit(l).iter().filter(|a| !a.holds) {
        bad.push(format!("audit {} {} <= {}", a.name, a.lhs, a.rhs));
    }
    if !regularity_check(l).is_some_and(|r| r.holds) {
        bad.push("regularity".into());
    }
    bad
}

/// Longest-processing-time makespan on `k` workers.
fn makespan(times: &[f64], k: usize) -> f64 {
    let mut sorted = times.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut load = vec![0.0f64; k];
    for t in sorted {
        let i = (0..k).min_by(|&a, &b| load[a].partial_cmp(&load[b]).unwrap()).unwrap();
        load[i] += t;
    }
    load.into_iter().fold(0.0, f64::max)
}

fn criterion_7(points: &mut Vec<GridPoint>) -> Criterion {
    let mut cr = Criterion::default();
    let ids = grid();
    let t0 = Instant::now();
    *points = ids.iter().map(verify_point).collect();
    let serial = t0.elapsed();
    let mut failing = 0;
    for g in points.iter() {
        let bad = grid_failures(g);
        if !bad.is_empty() {
            failing += 1;
            cr.notes.push(format!("{}: {}", g.id.label(), bad.join("; ")));
        }
    }
    cr.check(format!("{} grid instances, {} failing", points.len(), failing), failing == 0 && points.len() >= 150);
    cr.check(format!("single-threaded {:.1} s < 300 s", serial.as_secs_f64()), serial.as_secs_f64() < 300.0);
    let cpus = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    if cpus >= 4 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let t1 = Instant::now();
        let again: Vec<GridPoint> = pool.install(|| ids.par_iter().map(verify_point).collect());
        let wall = t1.elapsed().as_secs_f64();
        let same = again.iter().zip(points.iter()).all(|(a, b)| a.report == b.report);
        cr.check(format!("4 workers {:.1} s < 90 s, identical results", wall), wall < 90.0 && same);
    } else {
        let times: Vec<f64> = points.iter().map(|g| g.seconds).collect();
        cr.notes.push(format!(
            "host has {} CPU; 4-worker wall time not measured, scheduled makespan of measured per-point times {:.1} s",
            cpus,
            makespan(&times, 4)
        ));
    }
    let slowest = points.iter().max_by(|a, b| a.seconds.partial_cmp(&b.seconds).unwrap());
    if let Some(s) = slowest {
        cr.notes.push(format!("slowest instance {} at {:.2} s", s.id.label(), s.seconds));
    }
    cr
}

fn random_branch(rng: &mut StdRng) -> Option<ParametricCurve> {
    let n: i64 = rng.gen_range(2..=6);
    let count = rng.gen_range(1..=3);
    let mut exps: Vec<i64> = (0..count).map(|_| rng.gen_range(n + 1..=n + 14)).collect();
    exps.sort();
    exps.dedup();
    let g = exps.iter().fold(n, |g, e| g.gcd(e));
    if g != 1 {
        return None;
    }
    let x = LaurentPoly::t_minus(Scalar::one()).pow(n as u32);
    let mut y = LaurentPoly::zero();
    for e in exps {
        let mut a: i64 = rng.gen_range(-3..=3);
        if a == 0 {
            a = 1;
        }
        y = y.add(&LaurentPoly::t_minus(Scalar::one()).pow(e as u32).scale(&Scalar::int(a)));
    }
    Some(ParametricCurve::over_q(x, y))
}

fn criterion_8(points: &[GridPoint]) -> Criterion {
    let mut cr = Criterion::default();
    let t0 = Instant::now();
    let mut total = 0;
    let mut bad = 0;
    for g in points {
        for f in g.report.ledger.iter().flat_map(|l| l.finite.iter()) {
            let bound = 60.max(2 * f.mu as usize + 4);
            for (piece, d) in delta_at_point(&g.curve, &f.factor, bound) {
                total += 1;
                let ok = matches!(d, Ok(d) if 2 * d as i64 == f.mu_from_pairs && f.mu == f.mu_from_pairs);
                if !ok {
                    bad += 1;
                    cr.notes.push(format!("{} at {}: {:?} vs {}", g.id.label(), piece.render("t"), d, f.mu_from_pairs));
                }
            }
        }
    }
    cr.check(format!("{} grid singularities, {} mismatches", total, bad), bad == 0 && total > 0);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut random = 0;
    let mut rbad = 0;
    let one = t_minus(1);
    while random < 50 {
        let Some(c) = random_branch(&mut rng) else { continue };
        let branches = local_puiseux(&c, &one, BaseChoice::Fixed(annuli_core::local::Coord::X), policy(&c)).unwrap();
        let (_, b) = &branches[0];
        let mu = milnor_from_pairs(&b.pairs);
        if mu > 54 {
            continue;
        }
        random += 1;
        let deltas = delta_at_point(&c, &one, 60);
        let ok = deltas.len() == 1 && matches!(deltas[0].1, Ok(d) if 2 * d as i64 == mu);
        if !ok {
            rbad += 1;
            cr.notes.push(format!("random branch pairs {:?}: mu {} vs {:?}", b.pairs, mu, deltas[0].1));
        }
    }
    cr.check(format!("{} random cuspidal branches (n <= 6, truncation 60), {} mismatches", random, rbad), rbad == 0);
    cr.timed(t0.elapsed(), 30.0);
    cr
}

fn same_injectivity(a: &Injectivity, b: &Injectivity) -> bool {
    matches!(
        (a, b),
        (Injectivity::Injective, Injectivity::Injective)
            | (Injectivity::SelfIntersection(_), Injectivity::SelfIntersection(_))
    )
}

fn moves_for(i: usize) -> Vec<Move> {
    let s = |n, d| Scalar::frac(n, d);
    let cycle = match i % 5 {
        0 => Move::Swap,
        1 => Move::InvertT,
        2 => Move::ShearY { c: s(-2, 3), l: 1 },
        3 => Move::ShearX { c: s(3, 1), l: 1 },
        _ => Move::Affine { m: [s(1, 1), s(2, 1), s(-1, 1), s(1, 2)], shift: [s(5, 1), s(-1, 3)] },
    };
    vec![cycle, Move::ScaleT(s(-3, 2))]
}

fn criterion_9(points: &[GridPoint]) -> Criterion {
    let mut cr = Criterion::default();

    let mut fails = 0;
    let mut steps = 0;
    for k in 1..=4 {
        for m in 0..=3 {
            let mut p = LaurentPoly::from_terms([(-1, Scalar::one()), (0, Scalar::frac(-1, 2))]).pow((2 * m + 1) as u32);
            for _ in 0..k {
                let q = recursion_step(&p, 2);
                let at1 = p.eval(&Scalar::one()).unwrap();
                let lhs = q.mul(&LaurentPoly::t_minus(Scalar::one()));
                let rhs = p.sub(&LaurentPoly::constant(at1)).shift(2);
                steps += 1;
                fails += usize::from(lhs != rhs);
                p = q;
            }
            fails += usize::from(p != r_series(k, m));
        }
    }
    cr.check(format!("recursion exact division: {} steps, {} failures", steps, fails), fails == 0);

    let mut fails = 0;
    let mut count = 0;
    for n in 0..=4 {
        for m in 0..=n {
            if (m, n) == (0, 0) {
                continue;
            }
            count += 1;
            let z = LaurentPoly::from_poly(&solve_z(m, n).unwrap(), 0);
            let ok = z.sub(&z.compose_inv_t()) == z_rhs(m, n) && z.coeff(0).is_zero() && z.top() == Some(m + n + 1);
            fails += usize::from(!ok);
        }
    }
    cr.check(format!("Z(t) - Z(1/t) identity: {} cases, {} failures", count, fails), fails == 0);

    let mut fails = 0;
    let mut count = 0;
    for g in points {
        let c = &g.curve;
        if let Ok(back) = tower(c, TowerMode::Reverse, None) {
            count += 1;
            let fwd = tower(&back.curve, TowerMode::Forward, Some(back.constant.clone())).unwrap();
            fails += usize::from(&fwd.curve != c);
        }
        if tower(&ParametricCurve::over_q(c.phi.clone(), LaurentPoly::zero()), TowerMode::Reverse, None).is_ok() {
            count += 1;
            let k = Scalar::frac(7, 3);
            let up = tower(c, TowerMode::Forward, Some(k.clone())).unwrap();
            let down = tower(&up.curve, TowerMode::Reverse, None).unwrap();
            fails += usize::from(&down.curve != c || down.constant != k);
        }
    }
    for k in 1..=4 {
        for m in 0..=3 {
            let Ok(b) = gen_series(&SeriesId::new('b', &[k, m]).unwrap()) else { continue };
            count += 1;
            let t = series_b_by_towers(k, m);
            let sign = Scalar::int(if k % 2 == 0 { 1 } else { -1 });
            fails += usize::from(t.phi != b.phi || t.psi.scale(&sign) != b.psi);
        }
    }
    cr.check(format!("tower forward/reverse round trips: {} cases, {} failures", count, fails), fails == 0);

    let mut fails = 0;
    let mut count = 0;
    let negatives = [cusp_pair_family(2, Scalar::int(1)), quartic_family(1, 0, Scalar::int(1))];
    let curves = points.iter().map(|g| &g.curve).chain(negatives.iter());
    for (i, c) in curves.enumerate() {
        let base = injectivity_certificate(c).verdict;
        for mv in moves_for(i) {
            count += 1;
            let moved = injectivity_certificate(&apply_automorphism(c, &mv)).verdict;
            if !same_injectivity(&base, &moved) {
                fails += 1;
                cr.notes.push(format!("injectivity changed under {}", mv.describe()));
            }
        }
        if let Primitivity::Primitive = detect_nonprimitive(c) {
            for mv in annuli_core::curve::classify_type(c).map(|cl| cl.log).unwrap_or_default() {
                count += 1;
                let moved = injectivity_certificate(&apply_automorphism(c, &mv)).verdict;
                fails += usize::from(!same_injectivity(&base, &moved));
            }
        }
    }
    cr.check(format!("injectivity invariance: {} transformed curves, {} failures", count, fails), fails == 0);

    let mut fails = 0;
    let mut count = 0;
    for f in points.iter().flat_map(|g| g.report.ledger.iter().flat_map(|l| l.finite.iter())) {
        count += 1;
        let (n, exps) = exponents_from_pairs(&f.pairs);
        let a = milnor_from_exponents(n, &exps);
        fails += usize::from(a != milnor_from_pairs(&f.pairs) || a != f.mu);
    }
    cr.check(format!("both Milnor forms agree: {} singularities, {} failures", count, fails), fails == 0);
    cr
}

fn print(n: usize, cr: &Criterion, elapsed: Duration) {
    println!(
        "criterion {}: {} ({:.2} s)",
        n,
        if cr.passed() { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for c in &cr.checks {
        let mark = if c.ok { "ok" } else if c.gap.is_some() { "KNOWN GAP" } else { "FAILED" };
        println!("    [{}] {}", mark, c.what);
        if let (false, Some(why)) = (c.ok, c.gap) {
            println!("        {}", why);
        }
    }
    for note in &cr.notes {
        println!("    note: {}", note);
    }
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut points = Vec::new();
    let mut hard = 0;
    let mut run = |n: usize, f: &mut dyn FnMut() -> Criterion| {
        let t0 = Instant::now();
        let cr = f();
        print(n, &cr, t0.elapsed());
        hard += cr.hard_failures().len();
    };
    run(1, &mut criterion_1);
    run(2, &mut criterion_2);
    run(3, &mut criterion_3);
    run(4, &mut criterion_4);
    run(5, &mut criterion_5);
    run(6, &mut criterion_6);
    run(7, &mut || criterion_7(&mut points));
    run(8, &mut || criterion_8(&points));
    run(9, &mut || criterion_9(&points));
    if hard > 0 {
        eprintln!("{} check(s) failed", hard);
        std::process::exit(1);
    }
}
