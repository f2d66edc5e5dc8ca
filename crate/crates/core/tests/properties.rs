use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use sigmaforge::cli::{parse_expr, Expr};
use sigmaforge::diffpoly::{DiffPoly, DifferenceRing};
use sigmaforge::hahn::Model;
use sigmaforge::instances::{
    GroupInstance, OrderedDifferenceGroup, RatFunc, ResidueDifferenceField, ResidueInstance,
};
use sigmaforge::rv::{ac, rv};
use sigmaforge::sample;

fn residue_instance() -> impl Strategy<Value = ResidueInstance> {
    prop::sample::select(ResidueInstance::ALL.to_vec())
}

fn group_instance() -> impl Strategy<Value = GroupInstance> {
    prop::sample::select(GroupInstance::ALL.to_vec())
}

fn residues(k: ResidueInstance, seed: u64) -> (RatFunc, RatFunc, RatFunc) {
    let mut rng = StdRng::seed_from_u64(seed);
    (
        sample::residue(&mut rng, k),
        sample::residue(&mut rng, k),
        sample::residue(&mut rng, k),
    )
}

fn arith_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..50).prop_map(|n| Expr::Int(BigInt::from(n))),
        (-2i64..4).prop_map(Expr::Var),
        Just(Expr::X),
        Just(Expr::Gen),
        (0i64..9).prop_map(|n| Expr::TPow(Box::new(Expr::int(n)))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -2i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (0u32..3, inner).prop_map(|(k, a)| Expr::Sigma(k, Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_field_laws(k in residue_instance(), seed in any::<u64>()) {
        let (a, b, c) = residues(k, seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
            prop_assert!((&b * &b.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn residue_sigma_is_a_field_endomorphism(k in residue_instance(), seed in any::<u64>()) {
        let (a, b, _) = residues(k, seed);
        let s = |x: &RatFunc| ResidueDifferenceField::sigma(&k, x);
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        if ResidueDifferenceField::is_inversive(&k) {
            prop_assert_eq!(ResidueDifferenceField::sigma_inv(&k, &s(&a)), Some(a));
        }
    }

    #[test]
    fn group_sigma_is_an_order_embedding(g in group_instance(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = sample::group_element(&mut rng, g);
        let b = sample::group_element(&mut rng, g);
        prop_assert_eq!(g.sigma(&(&a + &b)), &g.sigma(&a) + &g.sigma(&b));
        prop_assert_eq!(a.cmp(&b), g.sigma(&a).cmp(&g.sigma(&b)));
        if g.is_inversive() {
            prop_assert_eq!(g.sigma_inv(&g.sigma(&a)), Some(a));
        }
    }

    #[test]
    fn series_ring_laws(
        k in residue_instance(),
        g in group_instance(),
        seed in any::<u64>(),
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = sample::series(&mut rng, k, g, 3);
        let b = sample::series(&mut rng, k, g, 3);
        let c = sample::series(&mut rng, k, g, 3);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_exact_zero());
    }

    #[test]
    fn valuation_and_leading_terms_are_multiplicative(
        k in residue_instance(),
        g in group_instance(),
        seed in any::<u64>(),
    ) {
        let model = Model::new(k, g);
        let mut rng = StdRng::seed_from_u64(seed);
        let a = sample::nonzero_series(&mut rng, k, g, 3);
        let b = sample::nonzero_series(&mut rng, k, g, 3);
        let ab = &a * &b;
        let va = a.value().unwrap();
        let vb = b.value().unwrap();
        prop_assert_eq!(
            ab.value().unwrap().finite().cloned(),
            Some(va.finite().unwrap() + vb.finite().unwrap())
        );
        prop_assert_eq!(rv(&ab).unwrap(), rv(&a).unwrap().mul(&rv(&b).unwrap()));
        prop_assert_eq!(
            ac(&model.sigma(&a)).unwrap(),
            ResidueDifferenceField::sigma(&k, &ac(&a).unwrap())
        );
    }

    #[test]
    fn series_sigma_is_a_ring_endomorphism(
        k in residue_instance(),
        g in group_instance(),
        seed in any::<u64>(),
    ) {
        let model = Model::new(k, g);
        let mut rng = StdRng::seed_from_u64(seed);
        let a = sample::series(&mut rng, k, g, 3);
        let b = sample::series(&mut rng, k, g, 3);
        prop_assert_eq!(model.sigma(&(&a + &b)), &model.sigma(&a) + &model.sigma(&b));
        prop_assert_eq!(model.sigma(&(&a * &b)), &model.sigma(&a) * &model.sigma(&b));
        if model.is_inversive() {
            prop_assert_eq!(model.sigma_inv(&model.sigma(&a)).unwrap(), a);
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(seed in any::<u64>()) {
        let k = ResidueInstance::ShiftQ;
        let mut rng = StdRng::seed_from_u64(seed);
        let p = sample::diffpoly(&mut rng, &k, 2, 3, 3, |r| sample::residue(r, k));
        let q = sample::diffpoly(&mut rng, &k, 2, 3, 3, |r| sample::residue(r, k));
        let a = sample::residue(&mut rng, k);
        let pa = p.evaluate(&k, &a);
        let qa = q.evaluate(&k, &a);
        prop_assert_eq!(p.add(&k, &q).evaluate(&k, &a), &pa + &qa);
        prop_assert_eq!(p.mul(&k, &q).evaluate(&k, &a), &pa * &qa);
    }

    #[test]
    fn taylor_expansion_recovers_the_shifted_value(seed in any::<u64>()) {
        let k = ResidueInstance::ShiftQ;
        let mut rng = StdRng::seed_from_u64(seed);
        let p: DiffPoly<RatFunc> =
            sample::diffpoly(&mut rng, &k, 2, 3, 4, |r| sample::residue(r, k));
        let a = sample::residue(&mut rng, k);
        let h = sample::residue(&mut rng, k);
        let mut sum = p.evaluate(&k, &a);
        for j in p.derivative_support() {
            let mut hj = RatFunc::one();
            for (i, &e) in j.entries().iter().enumerate() {
                let s = k.sigma_pow(&h, i as i64).unwrap();
                hj = &hj * &DifferenceRing::pow(&k, &s, e);
            }
            sum = &sum + &(&p.taylor_coeff(&k, &j).evaluate(&k, &a) * &hj);
        }
        prop_assert_eq!(p.evaluate(&k, &(&a + &h)), sum);
    }

    #[test]
    fn printed_terms_parse_back(e in arith_expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed).unwrap(), e, "{}", printed);
    }
}
