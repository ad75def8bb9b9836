use proptest::prelude::*;

use zkq_core::algebra::{
    int, is_member, rat, to_u_chart, to_v_chart, ChartId, HbarSeries, LaurentPoly, Monomial,
    Rational, Var,
};
use zkq_core::expr::{parse_poly, parse_series};
use zkq_core::invariants::{charge, height_at, width_at, BundleSpec, TruncationWindow, TABLE1_ROWS};
use zkq_core::moduli::{rebel_level, stratify, ModuliPoint};
use zkq_core::poisson::{poisson_bracket, PoissonStructure};
use zkq_core::star::{moyal_star, StarContext};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_filter_map("nonzero", |(p, q)| (p != 0).then(|| rat(p, q)))
}

fn poly(z: std::ops::RangeInclusive<i64>, u: u32, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((z, 0..=u, rational()), 0..=terms).prop_map(|ts| {
        let mut p = LaurentPoly::zero();
        for (l, i, c) in ts {
            p.add_term(Monomial::new(l, i), c);
        }
        p
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    poly(-3..=3, 3, 4)
}

fn global(k: u32) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0u32..=3, 0i64..=12, rational()), 0..=4).prop_map(move |ts| {
        let mut p = LaurentPoly::zero();
        for (i, l, c) in ts {
            p.add_term(Monomial::new(l.min(k as i64 * i as i64), i), c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn stored_coefficients_are_nonzero(a in laurent(), b in laurent()) {
        let prod = &a * &b;
        prop_assert!(prod.terms().all(|(_, c)| *c != int(0)));
    }

    #[test]
    fn chart_round_trip(f in laurent(), k in 1u32..=4) {
        prop_assert_eq!(to_u_chart(&to_v_chart(&f, k), k), f.clone());
        prop_assert_eq!(to_v_chart(&to_u_chart(&f, k), k), f);
    }

    #[test]
    fn global_is_u_and_v(f in poly(-6..=6, 3, 3), k in 1u32..=3) {
        let both = is_member(&f, ChartId::U, k) && is_member(&f, ChartId::V, k);
        prop_assert_eq!(is_member(&f, ChartId::Global(k), k), both);
    }

    #[test]
    fn partial_derivatives_commute(f in laurent(), a in 0u32..=3, b in 0u32..=3) {
        let zu = f.derive_n(Var::Z, a).derive_n(Var::U, b);
        let uz = f.derive_n(Var::U, b).derive_n(Var::Z, a);
        prop_assert_eq!(&zu, &uz);
        prop_assert_eq!(f.derive_zu(a, b), zu);
    }

    #[test]
    fn bracket_is_a_biderivation(s in global(1), f in laurent(), g in laurent(), h in laurent()) {
        let sigma = PoissonStructure::new(1, s).unwrap();
        let br = |x: &LaurentPoly, y: &LaurentPoly| poisson_bracket(&sigma, x, y, ChartId::UV);
        prop_assert_eq!(br(&f, &g), -br(&g, &f));
        prop_assert_eq!(br(&f, &(&g * &h)), &(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn moyal_is_associative(f in poly(-2..=2, 2, 2), g in poly(-2..=2, 2, 2), h in poly(-2..=2, 2, 2), c in rational()) {
        let lift = |p: &LaurentPoly| HbarSeries::from_poly(p.clone(), 3);
        let (f, g, h) = (lift(&f), lift(&g), lift(&h));
        let left = moyal_star(&moyal_star(&f, &g, &c, 3), &h, &c, 3);
        let right = moyal_star(&f, &moyal_star(&g, &h, &c, 3), &c, 3);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn first_order_term_is_the_bracket(s in global(1), f in laurent(), g in laurent()) {
        let sigma = PoissonStructure::new(1, s).unwrap();
        let ctx = StarContext::with_engine(sigma.clone(), 1, zkq_core::star::Engine::KontsevichOrder2);
        if let Ok(ctx) = ctx {
            let prod = ctx.star_poly(&f, &g);
            prop_assert_eq!(prod.coeff(0), &(&f * &g));
            prop_assert_eq!(prod.coeff(1), &poisson_bracket(&sigma, &f, &g, ChartId::UV));
        }
    }

    #[test]
    fn printer_round_trip(f in laurent(), g in laurent()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f.clone());
        let s = HbarSeries::from_coeffs(vec![f, g], 1);
        prop_assert_eq!(parse_series(&s.to_string(), 1).unwrap(), s);
    }

    #[test]
    fn rebel_level_is_projective(coeffs in prop::collection::vec(prop::option::of(rational()), 4), lambda in rational()) {
        prop_assume!(coeffs.iter().any(Option::is_some));
        let p1: Vec<Rational> = coeffs.into_iter().map(|c| c.unwrap_or_else(|| int(0))).collect();
        let p = ModuliPoint::new(1, 3, p1).unwrap();
        let su = PoissonStructure::new(1, LaurentPoly::u()).unwrap();
        let s0 = PoissonStructure::new(1, LaurentPoly::one()).unwrap();
        let q = p.scaled(&lambda).unwrap();
        prop_assert!(p.projectively_equal(&q));
        prop_assert_eq!(rebel_level(&q, &su).unwrap(), rebel_level(&p, &su).unwrap());
        prop_assert_eq!(rebel_level(&q, &s0).unwrap(), 0);
    }
}

#[test]
fn strata_partition_the_moduli_points() {
    for (k, j) in [(1u32, 2i64), (1, 3), (2, 3), (3, 4)] {
        let strata = stratify(k, j).unwrap();
        let m = (2 * j - k as i64 - 1) as usize;
        for mask in 1u32..(1 << m) {
            let p1 = (0..m).map(|t| int(i64::from(mask >> t & 1))).collect();
            let p = ModuliPoint::new(k, j, p1).unwrap();
            let hits = strata.iter().filter(|s| s.index == p.leading_zeros()).count();
            let excluded = p.is_endpoint() && strata.len() < m;
            assert_eq!(hits, usize::from(!excluded), "k={k} j={j} point {mask:b}");
        }
    }
}

#[test]
fn invariants_are_stable_past_the_window() {
    for row in TABLE1_ROWS {
        let b = BundleSpec::new(1, 3, parse_poly(row).unwrap()).unwrap();
        let t = charge(&b).unwrap();
        for margin in [2, 4] {
            let ww = TruncationWindow::default_width(1, 3).scaled(2).widened(margin);
            let wh = TruncationWindow::default_height(1, 3).scaled(2).widened(margin);
            assert_eq!(width_at(&b, &ww), t.width, "{row} width, margin {margin}");
            assert_eq!(height_at(&b, &wh), t.height, "{row} height, margin {margin}");
        }
    }
}

#[test]
fn symmetric_rows_agree() {
    let triple = |p: &str| charge(&BundleSpec::new(1, 3, parse_poly(p).unwrap()).unwrap()).unwrap();
    assert_eq!(triple("z^-1 u"), triple("z^2 u"));
    assert_eq!(triple("u"), triple("z u"));
    assert_eq!(triple("u^2"), triple("z^2 u^2"));
}

#[test]
fn instanton_charges_are_at_least_j() {
    for (k, j) in [(1u32, 2i64), (1, 3), (2, 2), (2, 4), (3, 3)] {
        for (i, l) in zkq_core::bundles::ext_window(k, j) {
            if i == 0 {
                continue;
            }
            let b = BundleSpec::new(k, j, LaurentPoly::monomial(l, i)).unwrap();
            let t = charge(&b).unwrap();
            assert!(t.charge as i64 >= j, "k={k} j={j} z^{l}u^{i}: {t:?}");
        }
    }
}
