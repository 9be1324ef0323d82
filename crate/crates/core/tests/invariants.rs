use dunklpoly::exactnum::{int, rat};
use dunklpoly::families::{explicit_poly, generate_monic, ChiharaParams};
use dunklpoly::{AffineMap, DunklOperator, Family, LaurentPoly, OperatorTerm, RatFunc, Rational, Sign};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != int(0))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=5, small_rational()), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    })
}

fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(small_rational(), 0..6).prop_map(LaurentPoly::from_coeffs)
}

fn affine_map() -> impl Strategy<Value = AffineMap> {
    (any::<bool>(), -3i64..=3).prop_map(|(minus, d)| {
        AffineMap::new(if minus { Sign::Minus } else { Sign::Plus }, int(d))
    })
}

/// Terms with polynomial coefficients so every action stays polynomial.
fn operator() -> impl Strategy<Value = DunklOperator> {
    prop::collection::vec((polynomial(), 0u32..3, affine_map()), 1..4).prop_map(|terms| {
        DunklOperator::new(
            terms
                .into_iter()
                .map(|(c, k, m)| OperatorTerm::new(RatFunc::from_laurent(&c), k, m)),
        )
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn reflection_is_an_involutive_ring_map(a in laurent(), b in laurent(), p in polynomial()) {
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!((&a * &b).reflect(), &a.reflect() * &b.reflect());
        let (even, odd) = p.even_odd_split();
        let in_square = |q: &LaurentPoly| {
            let mut out = LaurentPoly::zero();
            for (e, c) in q.terms() {
                out.add_term(2 * e, c.clone());
            }
            out
        };
        let (e2, o2) = (in_square(&even), &LaurentPoly::x() * &in_square(&odd));
        prop_assert_eq!(&e2 + &o2, p);
        prop_assert_eq!(e2.reflect(), e2);
        prop_assert_eq!(o2.reflect(), -o2);
    }

    #[test]
    fn product_rule(a in laurent(), b in laurent()) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_substitution_evaluates_pointwise(p in polynomial(), m in affine_map(), x in small_rational()) {
        prop_assert_eq!(p.compose_affine(&m).eval(&x), p.eval(&m.apply_to(&x)));
    }

    #[test]
    fn division_with_remainder(a in polynomial(), b in polynomial()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn ratfunc_reduction_is_canonical(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assume!(!q.is_zero() && !r.is_zero());
        let plain = RatFunc::new(p.clone(), q.clone()).unwrap();
        let padded = RatFunc::new(&p * &r, &q * &r).unwrap();
        prop_assert_eq!(&plain, &padded);
        prop_assert!(plain.cross_eq(&padded));
    }

    #[test]
    fn ratfunc_evaluation(p in polynomial(), q in polynomial(), x in small_rational()) {
        prop_assume!(!q.is_zero() && q.eval(&x) != int(0));
        let f = RatFunc::new(p.clone(), q.clone()).unwrap();
        prop_assert_eq!(f.eval(&x).unwrap(), p.eval(&x) / q.eval(&x));
    }

    #[test]
    fn composition_matches_sequential_application(a in operator(), b in operator(), f in polynomial()) {
        let composed = a.compose(&b).apply(&f).unwrap();
        let sequential = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }

    #[test]
    fn operators_are_linear(a in operator(), f in polynomial(), g in polynomial(), c in nonzero_rational()) {
        let lhs = a.apply(&(&f + &g.scale(&c))).unwrap();
        let rhs = &a.apply(&f).unwrap() + &a.apply(&g).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_squares_to_identity(f in laurent()) {
        let r = DunklOperator::reflection();
        prop_assert_eq!(r.compose(&r), DunklOperator::identity());
        prop_assert_eq!(r.apply_rational(&r.apply_rational(&f).to_laurent().unwrap()), RatFunc::from_laurent(&f));
    }

    #[test]
    fn chihara_closed_form_matches_recurrence(
        alpha in (0i64..8, 1i64..4),
        beta in (0i64..8, 1i64..4),
        gamma in (-5i64..=5, 1i64..6),
        n in 0usize..8,
    ) {
        let params = ChiharaParams::new(rat(alpha.0, alpha.1), rat(beta.0, beta.1), rat(gamma.0, gamma.1));
        let family = Family::Chihara(params);
        let rec = generate_monic(&family, n).unwrap();
        prop_assert_eq!(explicit_poly(&family, n).unwrap(), rec[n].clone());
        prop_assert!(rec.iter().enumerate().all(|(k, p)| p.is_monic() && p.degree() == Some(k as i64)));
    }

    #[test]
    fn symmetric_chihara_has_parity(alpha in (0i64..8, 1i64..4), beta in (0i64..8, 1i64..4), n in 0usize..10) {
        let params = ChiharaParams::new(rat(alpha.0, alpha.1), rat(beta.0, beta.1), int(0));
        let p = generate_monic(&Family::Chihara(params), n).unwrap().pop().unwrap();
        prop_assert_eq!(p.reflect(), if n % 2 == 0 { p.clone() } else { -p.clone() });
    }
}
