//! Randomized invariants of the catalog machinery and local invariants.

use annuli_core::catalog::{
    cusp_pair_family, gen_series, quartic_family, recursion_step, solve_z, tower, z_rhs, SeriesId, TowerMode,
};
use annuli_core::certify::{delta_semigroup_oracle, injectivity_certificate, Injectivity};
use annuli_core::curve::{apply_automorphism, Move, ParametricCurve};
use annuli_core::local::{exponents_from_pairs, milnor_from_exponents, milnor_from_pairs};
use annuli_core::{LaurentPoly, Scalar};
use num_integer::Integer;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -6i64..=6, 1i64..=4), 1..6).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(k, a, b)| (k, Scalar::frac(a, b))).fold(
            Vec::<(i64, Scalar)>::new(),
            |mut acc, (k, c)| {
                match acc.iter_mut().find(|(j, _)| *j == k) {
                    Some(e) => e.1 = &e.1 + &c,
                    None => acc.push((k, c)),
                }
                acc
            },
        ))
    })
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    (1i64..=7, 1i64..=5, any::<bool>()).prop_map(|(a, b, neg)| Scalar::frac(if neg { -a } else { a }, b))
}

/// Strictly increasing branch exponents whose gcd chain drops to 1.
fn branch_exponents() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (2i64..=8, prop::collection::vec(1i64..=9, 1..5)).prop_filter_map("gcd chain must reach 1", |(n, steps)| {
        let mut e = n;
        let mut v = n;
        let mut exps = Vec::new();
        for s in steps {
            v += s;
            if e.gcd(&v) < e {
                exps.push(v);
                e = e.gcd(&v);
            }
            if e == 1 {
                return Some((n, exps));
            }
        }
        None
    })
}

fn pairs_of(n: i64, exps: &[i64]) -> Vec<(i64, i64)> {
    let mut e = n;
    exps.iter()
        .map(|&v| {
            let e2 = e.gcd(&v);
            let p = (v / e2, e / e2);
            e = e2;
            p
        })
        .collect()
}

fn same_kind(a: &Injectivity, b: &Injectivity) -> bool {
    matches!(
        (a, b),
        (Injectivity::Injective, Injectivity::Injective)
            | (Injectivity::SelfIntersection(_), Injectivity::SelfIntersection(_))
    )
}

fn sample_curves() -> Vec<ParametricCurve> {
    let mut out: Vec<ParametricCurve> = [('u', vec![]), ('w', vec![]), ('b', vec![1, 2]), ('j', vec![1, 1]), ('a', vec![2, 3, 1])]
        .into_iter()
        .map(|(l, v)| gen_series(&SeriesId::new(l, &v).unwrap()).unwrap())
        .collect();
    out.push(cusp_pair_family(2, Scalar::int(1)));
    out.push(quartic_family(1, 0, Scalar::int(1)));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recursion_divides_exactly(p in laurent(), e in -3i64..=3) {
        let q = recursion_step(&p, e);
        let at1 = p.eval(&Scalar::one()).unwrap();
        let lhs = q.mul(&LaurentPoly::t_minus(Scalar::one()));
        prop_assert_eq!(lhs, p.sub(&LaurentPoly::constant(at1)).shift(e));
    }

    #[test]
    fn z_antisymmetry(n in 0i64..=7, m in 0i64..=7) {
        prop_assume!(m <= n && (m, n) != (0, 0));
        let z = LaurentPoly::from_poly(&solve_z(m, n).unwrap(), 0);
        prop_assert_eq!(z.sub(&z.compose_inv_t()), z_rhs(m, n));
        prop_assert!(z.coeff(0).is_zero());
        prop_assert_eq!(z.top(), Some(m + n + 1));
    }

    #[test]
    fn tower_round_trips(t1 in nonzero_rational(), lc in nonzero_rational(), j in -3i64..=3, psi in laurent(), k in nonzero_rational()) {
        let phi = LaurentPoly::t_minus(t1).scale(&lc).shift(j);
        let c = ParametricCurve::over_q(phi, psi);
        let up = tower(&c, TowerMode::Forward, Some(k.clone())).unwrap();
        let down = tower(&up.curve, TowerMode::Reverse, None).unwrap();
        prop_assert_eq!(&down.curve, &c);
        prop_assert_eq!(down.constant, k);
        let back = tower(&c, TowerMode::Reverse, None).unwrap();
        let again = tower(&back.curve, TowerMode::Forward, Some(back.constant.clone())).unwrap();
        prop_assert_eq!(&again.curve, &c);
    }

    #[test]
    fn injectivity_is_invariant(i in 0usize..7, lambda in nonzero_rational(), a in nonzero_rational(), b in nonzero_rational(), kind in 0usize..4) {
        let c = &sample_curves()[i];
        let base = injectivity_certificate(c).verdict;
        let mv = match kind {
            0 => Move::ScaleT(lambda),
            1 => Move::ShearY { c: a, l: 1 },
            2 => Move::ShearX { c: a, l: 2 },
            _ => Move::Affine { m: [a.clone(), Scalar::one(), Scalar::zero(), b.clone()], shift: [b, a] },
        };
        let moved = injectivity_certificate(&apply_automorphism(c, &mv)).verdict;
        prop_assert!(same_kind(&base, &moved), "{:?} -> {:?} under {}", base, moved, mv.describe());
    }

    #[test]
    fn milnor_forms_agree((n, exps) in branch_exponents()) {
        let pairs = pairs_of(n, &exps);
        prop_assert_eq!(milnor_from_exponents(n, &exps), milnor_from_pairs(&pairs));
        prop_assert_eq!(exponents_from_pairs(&pairs), (n, exps));
    }

    #[test]
    fn oracle_matches_milnor((n, exps) in branch_exponents(), coeffs in prop::collection::vec(nonzero_rational(), 4)) {
        let mu = milnor_from_exponents(n, &exps);
        prop_assume!(mu <= 60);
        let len = 96usize;
        let mut x = vec![Scalar::zero(); len];
        x[n as usize] = Scalar::one();
        let mut y = vec![Scalar::zero(); len];
        for (v, a) in exps.iter().zip(coeffs.iter()) {
            y[*v as usize] = a.clone();
        }
        let delta = delta_semigroup_oracle(&x, &y, len).unwrap();
        prop_assert_eq!(2 * delta as i64, mu);
    }
}
