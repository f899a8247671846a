use num_rational::BigRational;
use proptest::prelude::*;

use thetaval::exact::{
    build_catalog, cospi, gamma, int, parse_expr, parse_theta_expr, perturbed, pi, rat, verify_identity, Expr, Status,
};
use thetaval::lostnotebook::p_residual;
use thetaval::modular::{modulus_from_q, nome, ModularTriple, Transform};
use thetaval::precision::{agm, const_pi, gamma_rational, ratio, Ball, Float, Mag, PrecCtx};
use thetaval::qseries::{
    f_neg_via, phi, phi_series, phi_series_terms, phi_via, pochhammer_inf, psi_via, theta_f, QPoint, QValue, Route,
};

fn ctx(bits: u32) -> PrecCtx {
    PrecCtx::new(bits).unwrap()
}

fn ball(mid: f64, rad: f64, c: PrecCtx) -> Ball {
    let r = Mag::from_float_up(&Float::from_f64(rad.abs()).unwrap());
    Ball::new(Float::from_f64(mid).unwrap(), r, c)
}

/// A point of `[mid - rad, mid + rad]`, exactly.
fn inside(mid: f64, rad: f64, t: f64) -> Float {
    Float::from_f64(mid).unwrap().add_exact(&Float::from_f64(rad.abs() * t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_encloses_every_point(
        am in -1e3f64..1e3, ar in 0f64..1.0, bm in -1e3f64..1e3, br in 0f64..1.0,
        s in -1f64..=1.0, t in -1f64..=1.0,
    ) {
        let c = ctx(64);
        let (a, b) = (ball(am, ar, c), ball(bm, br, c));
        let (x, y) = (inside(am, ar, s), inside(bm, br, t));
        prop_assert!((&a + &b).contains_float(&x.add_exact(&y)));
        prop_assert!((&a - &b).contains_float(&x.sub_exact(&y)));
        prop_assert!((&a * &b).contains_float(&x.mul_exact(&y)));
        if let Ok(q) = a.div(&b) {
            // x/y is not dyadic; check q·y overlaps x at a precision finer than q's radius
            let w = ctx(256);
            let yb = Ball::new(y.clone(), Mag::zero(), w);
            prop_assert!((&q.with_prec(w) * &yb).overlaps(&Ball::new(x, Mag::zero(), w)));
        }
    }

    #[test]
    fn sqrt_round_trip(m in 1e-6f64..1e6) {
        let c = ctx(128);
        let x = Ball::from_f64(m, c);
        prop_assert!(x.sqrt().unwrap().sqr().overlaps(&x));
        prop_assert!(x.nth_root(5).unwrap().pow_int(5).unwrap().overlaps(&x));
    }

    #[test]
    fn higher_precision_refines(q in 0.01f64..0.9) {
        let lo = phi(Ball::from_f64(q, ctx(128)), ctx(128)).unwrap();
        let hi = phi(Ball::from_f64(q, ctx(256)), ctx(256)).unwrap();
        prop_assert!(lo.overlaps(&hi));
        prop_assert!(hi.rad_log10() <= lo.rad_log10());
    }

    #[test]
    fn deterministic(q in -0.9f64..0.9) {
        let c = ctx(192);
        let a = phi(Ball::from_f64(q, c), c).unwrap();
        let b = phi(Ball::from_f64(q, c), c).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn triple_product_and_symmetry(a in -1.5f64..1.5, b in -1.5f64..1.5) {
        prop_assume!((a * b).abs() <= 0.8);
        let c = ctx(192);
        let (a, b) = (Ball::from_f64(a, c), Ball::from_f64(b, c));
        let ab = &a * &b;
        let series = theta_f(&a, &b, c).unwrap();
        prop_assert!(series.overlaps(&theta_f(&b, &a, c).unwrap()));
        let product = &(&pochhammer_inf(&-a.clone(), &ab, c).unwrap() * &pochhammer_inf(&-b.clone(), &ab, c).unwrap())
            * &pochhammer_inf(&ab, &ab, c).unwrap();
        prop_assert!(series.overlaps(&product));
    }

    #[test]
    fn routes_agree(q in -0.9f64..0.9) {
        let c = ctx(192);
        let q = Ball::from_f64(q, c);
        prop_assert!(phi_via(&q, Route::Series, c).unwrap().overlaps(&phi_via(&q, Route::Product, c).unwrap()));
        prop_assert!(psi_via(&q, Route::Series, c).unwrap().overlaps(&psi_via(&q, Route::Product, c).unwrap()));
        prop_assert!(f_neg_via(&q, Route::Series, c).unwrap().overlaps(&f_neg_via(&q, Route::Product, c).unwrap()));
    }

    #[test]
    fn special_cases_of_f(q in -0.8f64..0.8) {
        let c = ctx(160);
        let qb = Ball::from_f64(q, c);
        let q2 = qb.sqr();
        let q3 = &q2 * &qb;
        prop_assert!(theta_f(&qb, &qb, c).unwrap().overlaps(&phi(&qb, c).unwrap()));
        prop_assert!(theta_f(&qb, &q3, c).unwrap().overlaps(&psi_via(&qb, Route::Product, c).unwrap()));
        prop_assert!(theta_f(&-qb.clone(), &-q2, c).unwrap().overlaps(&f_neg_via(&qb, Route::Product, c).unwrap()));
    }

    #[test]
    fn agm_is_homogeneous(a in 0.01f64..100.0, b in 0.01f64..100.0, l in 0.01f64..50.0) {
        let c = ctx(128);
        let (a, b, l) = (Ball::from_f64(a, c), Ball::from_f64(b, c), Ball::from_f64(l, c));
        let scaled = agm(&(&a * &l), &(&b * &l), c).unwrap();
        prop_assert!(scaled.overlaps(&(&agm(&a, &b, c).unwrap() * &l)));
    }

    #[test]
    fn gamma_reflection(k in 1i64..48) {
        let c = ctx(192);
        let p = ratio(k, 48);
        let lhs = &gamma_rational(&p, c).unwrap() * &gamma_rational(&(ratio(1, 1) - &p), c).unwrap();
        let pi = const_pi(c);
        let rhs = pi.div(&(&pi * &Ball::from_ratio(&p, c)).sin()).unwrap();
        prop_assert!(lhs.overlaps(&rhs));
    }

    #[test]
    fn modulus_round_trip(x in 0.02f64..0.98) {
        let c = ctx(192);
        let x = Ball::from_f64(x, c);
        let back = modulus_from_q(&nome(&x, c).unwrap(), c).unwrap();
        prop_assert!(back.overlaps(&x));
    }

    #[test]
    fn transforms_keep_z_consistent(x in 0.05f64..0.95, chain in proptest::collection::vec(0usize..3, 1..=4)) {
        let c = ctx(192);
        let mut t = ModularTriple::from_x(&Ball::from_f64(x, c), c).unwrap();
        for k in chain {
            match t.transform(Transform::ALL[k], c) {
                Ok(n) => t = n,
                Err(_) => break,
            }
            prop_assert!(t.z.overlaps(&phi(&t.q, c).unwrap().sqr()));
        }
    }

    #[test]
    fn septic_p_is_uvw(q in 0.02f64..0.6) {
        let c = ctx(192);
        prop_assert!(p_residual(&QValue::Real(Ball::from_f64(q, c)), c).unwrap().contains_zero());
    }

    #[test]
    fn render_parse_round_trip(e in expr_strategy()) {
        let c = ctx(128);
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        // parsing folds literal arithmetic, so compare values and the re-rendered fixed point
        let again = parse_expr(&back.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), back.to_string());
        if let (Ok(a), Ok(b)) = (e.eval(c), back.eval(c)) {
            prop_assert!(a.overlaps(&b), "{} vs {}", text, back);
        }
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (1i64..30).prop_map(int),
        (-20i64..20, 1i64..9).prop_map(|(n, d)| rat(n, d)),
        Just(pi()),
        (1i64..16).prop_map(|k| gamma(k, 8)),
        (-6i64..7).prop_map(|k| cospi(k, 7)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            (inner.clone(), -3i64..4, 1i64..5).prop_map(|(a, n, d)| a.pow(n, d)),
            inner.prop_map(|a| -a),
        ]
    })
}

#[test]
fn catalog_texts_parse_back() {
    for e in &build_catalog().entries {
        assert_eq!(parse_expr(&e.rhs.to_string()).unwrap(), e.rhs, "{}", e.id);
        assert_eq!(parse_theta_expr(&e.lhs.to_string()).unwrap(), e.lhs, "{}", e.id);
    }
}

#[test]
fn agreement_is_monotone_in_precision() {
    let cat = build_catalog();
    for e in &cat.entries {
        let digits: Vec<u32> =
            [256, 512, 1024].iter().map(|&b| verify_identity(e, ctx(b)).unwrap().agreement_digits).collect();
        assert!(digits.windows(2).all(|w| w[0] <= w[1]), "{}: {digits:?}", e.id);
    }
}

#[test]
fn every_leaf_perturbation_is_caught() {
    let delta: BigRational = ratio(1, 1_000_000);
    for e in &build_catalog().entries {
        let n = e.rhs.leaves().len();
        assert!(n > 0, "{} has no leaves", e.id);
        for i in 0..n {
            let p = perturbed(e, i, &delta).unwrap();
            let status = verify_identity(&p, ctx(256)).map(|r| r.status).unwrap_or(Status::Unverified);
            assert_eq!(status, Status::Unverified, "{} leaf {i}", e.id);
        }
    }
}

proptest! {
    #[test]
    fn longer_truncation_stays_inside(q in -0.7f64..0.7, n in 3usize..30) {
        let c = ctx(256);
        let q = Ball::from_f64(q, c);
        let (short, tail) = phi_series_terms(&q, n, c).unwrap();
        // once the tail sinks to rounding level the two radii are both rounding noise
        prop_assume!(tail.tail_bound.log2() > -200.0);
        let (long, _) = phi_series_terms(&q, n + 10, c).unwrap();
        prop_assert!(short.contains(&long));
    }
}

#[test]
fn precision_refines_structured_points() {
    for k in [1, 2, 7] {
        let q = QPoint::pos(k, 1);
        let lo = phi_series(&q, ctx(128)).unwrap();
        let hi = phi_series(&q, ctx(512)).unwrap();
        assert!(lo.overlaps(&hi) && hi.rad_log10() < lo.rad_log10());
    }
}
