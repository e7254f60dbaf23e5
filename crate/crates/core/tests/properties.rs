mod common;

use dioph_curves::ec::{Curve, Order, Point};
use dioph_curves::families::{mixed_sign_family, z2z6_family, z2z6_family_t, z2z8_family};
use dioph_curves::search::{point_to_r, r_to_triples, scan, E1Context};
use dioph_curves::torsion::{classify_triple, halvable_two_torsion, lemma_3s_value, order_consistency};
use dioph_curves::{Rat, TorsionClass, Triple};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::q;

fn rat(num: i64, den: i64) -> impl Strategy<Value = Rat> {
    (-num..=num, 1..=den).prop_map(|(n, d)| Rat::frac(n, d))
}

fn nonzero_rat(num: i64, den: i64) -> impl Strategy<Value = Rat> {
    rat(num, den).prop_filter("nonzero", |r| !r.is_zero())
}

fn regular_triple() -> impl Strategy<Value = Triple> {
    (nonzero_rat(40, 15), rat(40, 15), any::<bool>()).prop_filter_map("degenerate", |(a, r, plus)| {
        let b = &(&r.square() - 1) / &a;
        let two_r = 2 * &r;
        let c = if plus { &(&a + &b) + &two_r } else { &(&a + &b) - &two_r };
        Triple::validate(a, b, c).ok()
    })
}

fn mixed_triple() -> impl Strategy<Value = Triple> {
    (nonzero_rat(20, 9), nonzero_rat(20, 9))
        .prop_filter_map("degenerate", |(u, t)| mixed_sign_family(&u, &t).ok())
}

fn any_triple() -> impl Strategy<Value = Triple> {
    prop_oneof![regular_triple(), mixed_triple()]
}

/// Independent of the library's square test.
fn is_square(r: &Rat) -> bool {
    let exact = |n: &BigInt| n.sqrt().pow(2) == *n;
    !r.is_negative() && exact(r.numer()) && exact(r.denom())
}

/// `i P' + j R' + k-th 2-torsion point`.
fn combo(curve: &Curve, tr: &Triple, (i, j, k): (i64, i64, usize)) -> Point {
    let pts = tr.canonical_points();
    let torsion = [Point::Identity, pts.a, pts.b, pts.c];
    let ip = curve.mul(i, &pts.p).unwrap();
    let jr = curve.mul(j, &pts.r).unwrap();
    curve.add(&curve.add(&ip, &jr).unwrap(), &torsion[k]).unwrap()
}

fn coeffs() -> impl Strategy<Value = (i64, i64, usize)> {
    (-2i64..=2, -2i64..=2, 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(tr in any_triple(), p in coeffs(), r in coeffs(), s in coeffs()) {
        let curve = tr.induced_curve();
        let (p, r, s) = (combo(&curve, &tr, p), combo(&curve, &tr, r), combo(&curve, &tr, s));
        prop_assert!(curve.on_curve(&p));
        prop_assert_eq!(curve.add(&p, &r).unwrap(), curve.add(&r, &p).unwrap());
        let left = curve.add(&curve.add(&p, &r).unwrap(), &s).unwrap();
        let right = curve.add(&p, &curve.add(&r, &s).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(curve.add(&p, &curve.negate(&p).unwrap()).unwrap().is_identity());
        prop_assert_eq!(curve.add(&p, &Point::Identity).unwrap(), p);
    }

    #[test]
    fn scalar_multiplication_is_linear(tr in any_triple(), m in -4i64..=4, n in -4i64..=4) {
        let curve = tr.induced_curve();
        let p = tr.canonical_points().p;
        let sum = curve.add(&curve.mul(m, &p).unwrap(), &curve.mul(n, &p).unwrap()).unwrap();
        prop_assert_eq!(curve.mul(m + n, &p).unwrap(), sum);
        prop_assert_eq!(curve.mul(m, &curve.mul(n, &p).unwrap()).unwrap(), curve.mul(m * n, &p).unwrap());
    }

    #[test]
    fn halves_double_back(tr in any_triple(), x in coeffs()) {
        let curve = tr.induced_curve();
        let x = combo(&curve, &tr, x);
        let twice = curve.double(&x).unwrap();
        prop_assume!(!twice.is_identity());
        let halves = curve.halves_of(&twice).unwrap();
        prop_assert_eq!(halves.len(), 4);
        prop_assert!(halves.contains(&x));
        for h in &halves {
            prop_assert_eq!(curve.double(h).unwrap(), twice.clone());
        }
    }

    #[test]
    fn two_torsion_halving_criterion(p in rat(30, 6), q in rat(30, 6), w in rat(30, 6)) {
        let Ok(curve) = Curve::factored(p.clone(), q.clone(), w.clone()) else {
            return Ok(());
        };
        let shifts = [p, q, w];
        let halvable = halvable_two_torsion(&curve).unwrap();
        for (i, pt) in curve.two_torsion().unwrap().iter().enumerate() {
            let others: Vec<&Rat> = (0..3).filter(|&k| k != i).map(|k| &shifts[k]).collect();
            let expected = others.iter().all(|s| is_square(&(*s - &shifts[i])));
            prop_assert_eq!(!curve.halves_of(pt).unwrap().is_empty(), expected);
            prop_assert_eq!(halvable.contains(pt), expected);
        }
    }

    #[test]
    fn j_is_invariant_under_translation_and_scaling(
        p in rat(20, 5), q in rat(20, 5), w in rat(20, 5), k in rat(20, 5), u in nonzero_rat(9, 7),
    ) {
        let Ok(curve) = Curve::factored(p.clone(), q.clone(), w.clone()) else {
            return Ok(());
        };
        let moved = Curve::factored(&p + &k, &q + &k, &w + &k).unwrap();
        prop_assert_eq!(moved.j_invariant(), curve.j_invariant());
        prop_assert!(moved.is_isomorphic_over_q(&curve));
        let scaled = curve.scaled(&u);
        prop_assert_eq!(scaled.j_invariant(), curve.j_invariant());
        prop_assert!(scaled.is_isomorphic_over_q(&curve));
    }

    #[test]
    fn quadratic_twists_are_not_isomorphic(p in rat(20, 5), q in rat(20, 5), w in rat(20, 5)) {
        let Ok(curve) = Curve::factored(p.clone(), q.clone(), w.clone()) else {
            return Ok(());
        };
        let j = curve.j_invariant();
        prop_assume!(!j.is_zero() && j != 1728);
        for d in [-1i64, 2, 3, -6] {
            let twist = Curve::factored(d * &p, d * &q, d * &w).unwrap();
            prop_assert_eq!(twist.j_invariant(), j.clone());
            prop_assert!(!twist.is_isomorphic_over_q(&curve));
        }
    }

    #[test]
    fn predicates_agree_with_orders(tr in any_triple()) {
        let rep = order_consistency(&tr);
        prop_assert!(rep.is_consistent(), "{:?}", rep.mismatches);
    }

    #[test]
    fn canonical_points_lie_on_the_curve(tr in any_triple()) {
        let curve = tr.induced_curve();
        let pts = tr.canonical_points();
        for (name, pt) in pts.all() {
            prop_assert!(curve.on_curve(pt), "{}", name);
        }
        prop_assert_eq!(curve.double(&pts.r).unwrap(), pts.s);
        prop_assert_eq!(tr.negated().induced_curve(), curve);
    }

    #[test]
    fn product_families_have_ab_minus_one(u in nonzero_rat(30, 11), t in nonzero_rat(30, 11)) {
        if let Ok(tr) = mixed_sign_family(&u, &t) {
            prop_assert_eq!(tr.a() * tr.b(), q("-1"));
        }
        if let Ok(tr) = z2z8_family(&t) {
            prop_assert_eq!(tr.a() * tr.b(), q("-1"));
        }
    }

    #[test]
    fn z2z6_families_have_three_torsion(r in nonzero_rat(30, 11)) {
        for tr in [z2z6_family(&r), z2z6_family_t(&r)].into_iter().flatten() {
            prop_assert!(lemma_3s_value(&tr).is_zero());
            prop_assert_eq!(tr.induced_curve().order_of(&tr.canonical_points().s).unwrap(), Order::Finite(3));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn z2z8_family_classifies(t in nonzero_rat(12, 7)) {
        if let Ok(tr) = z2z8_family(&t) {
            prop_assert_eq!(classify_triple(&tr).class, TorsionClass::Z2xZ8);
        }
    }
}

fn grid() -> Vec<Rat> {
    (-60..=60i64)
        .flat_map(|n| [1i64, 2, 3, 4, 5, 8].map(|d| Rat::frac(n, d)))
        .collect()
}

#[test]
fn z2z6_sign_grid() {
    let mut tested = 0;
    for r in grid() {
        let Ok(tr) = z2z6_family(&r) else { continue };
        let one = Rat::one();
        let half = Rat::frac(1, 2);
        assert_eq!((tr.a() * tr.b()).is_positive(), r > one || r < -&one, "r = {r}");
        assert_eq!((tr.b() * tr.c()).is_positive(), -&half < r && r < half, "r = {r}");
        assert!(!tr.all_same_sign(), "r = {r}");
        tested += 1;
    }
    assert!(tested > 300);
}

#[test]
fn z2z6t_sign_grid() {
    let mut tested = 0;
    for t in grid() {
        let Ok(tr) = z2z6_family_t(&t) else { continue };
        let (one, two) = (Rat::one(), Rat::from_int(2));
        assert_eq!((tr.a() * tr.c()).is_positive(), t > two || t < -&two, "t = {t}");
        assert_eq!((tr.b() * tr.c()).is_positive(), -&one < t && t < one, "t = {t}");
        assert!(!tr.all_same_sign(), "t = {t}");
        tested += 1;
    }
    assert!(tested > 300);
}

#[test]
fn negated_r_gives_isomorphic_curves() {
    let ctx = E1Context::new();
    let mut checked = 0;
    for pt in ctx.ladder(9) {
        let Ok(r) = point_to_r(&pt) else { continue };
        let (Ok(plus), Ok(minus)) = (r_to_triples(&r), r_to_triples(&-&r)) else { continue };
        assert_eq!(plus.len(), minus.len());
        for (p, m) in plus.iter().zip(&minus) {
            assert!(p.triple.induced_curve().is_isomorphic_over_q(&m.triple.induced_curve()));
            checked += 1;
        }
    }
    assert!(checked >= 8);
}

#[test]
fn ladder_heights_grow() {
    let ctx = E1Context::new();
    let heights: Vec<BigInt> = ctx
        .ladder(11)
        .iter()
        .map(|pt| {
            let r = point_to_r(pt).unwrap();
            r.numer().magnitude().max(r.denom().magnitude()).clone().into()
        })
        .collect();
    assert!(heights.windows(2).all(|w| w[0] < w[1]), "{heights:?}");
}

#[test]
fn emitted_candidates_have_order_four_and_first_factor_zero() {
    for rec in scan(11, true).iter().filter(|r| !r.skipped && r.all_positive == Some(true)) {
        let tr = rec.triple().unwrap().unwrap();
        assert_eq!(rec.s_order, Some(Order::Finite(4)));
        assert_eq!(rec.torsion, Some(TorsionClass::Z2xZ8));
        assert_eq!(dioph_curves::torsion::lemma_4s_zero_factor(&tr), Some(0));
    }
}

#[test]
fn fermat_extension_transports_to_the_induced_curve() {
    let tr = Triple::validate(q("1"), q("3"), q("8")).unwrap();
    let pt = Point::new(q("120"), q("6479"));
    assert!(tr.on_original_curve(&pt));
    let image = tr.transform_to_eprime(&pt).unwrap();
    assert_eq!(image, Point::new(q("2880"), q("155496")));
    assert!(tr.induced_curve().on_curve(&image));
}
