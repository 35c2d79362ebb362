use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;

use lietype_core::coincidence::{decompose, generator_pool, GeneratorWord};
use lietype_core::cyclotomic::{
    eval_cyclo_product, factor_power_minus_one, factorize, CycloError, CycloProduct, IntPoly, MAX_FACTOR_BITS,
};
use lietype_core::orders::{order_factored, order_value, recognize_order, OrderError, PrimePower};
use lietype_core::reconstruct::{reconstruct, CharPolyFamily};
use lietype_core::weylchar::{charpolys, mu};
use lietype_core::{SemisimpleType, SimpleType};

fn simple_type() -> impl Strategy<Value = SimpleType> {
    prop_oneof![
        (1u32..=6).prop_map(SimpleType::a),
        (2u32..=5).prop_map(SimpleType::b),
        (4u32..=6).prop_map(SimpleType::d),
        Just(SimpleType::g2()),
        Just(SimpleType::f4()),
    ]
}

fn semisimple(max_factors: usize) -> impl Strategy<Value = SemisimpleType> {
    prop::collection::vec(simple_type(), 1..=max_factors).prop_map(SemisimpleType::new)
}

fn prime_power() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_multiplicative(a in semisimple(2), b in semisimple(2), q in prime_power()) {
        let ab = a.product(&b);
        prop_assert_eq!(order_value(&ab, q).unwrap(), order_value(&a, q).unwrap() * order_value(&b, q).unwrap());
    }

    #[test]
    fn factored_order_matches_direct_formula(t in semisimple(3), q in prime_power()) {
        let qb = BigUint::from(q);
        let direct = t.degrees().as_slice().iter().fold(qb.pow(t.positive_root_count() as u32), |acc, &d| {
            acc * (qb.pow(d) - 1u32)
        });
        let factored = order_factored(&t, q).unwrap();
        prop_assert_eq!(factored.value(), direct.clone());
        prop_assert_eq!(order_value(&t, q).unwrap(), direct);
    }

    #[test]
    fn recognized_orders_include_source(t in semisimple(2), q in prime_power()) {
        prop_assume!(t.rank() <= 6);
        let m = order_value(&t, q).unwrap();
        // Larger inputs are refused by the factorization size limit.
        prop_assume!(m.bits() <= MAX_FACTOR_BITS);
        let found = recognize_order(&m, t.rank()).unwrap();
        let pp = PrimePower::new(q).unwrap();
        prop_assert!(found.contains(&(t.clone(), pp)), "{} over {} not in {:?}", t, q, found);
        for (other, q2) in &found {
            prop_assert_eq!(&order_value(other, q2.value()).unwrap(), &m);
        }
    }

    #[test]
    fn reconstruction_round_trips(t in semisimple(3)) {
        prop_assume!(t.rank() <= 10);
        let family = CharPolyFamily::of_type(&t).unwrap();
        prop_assert_eq!(reconstruct(&family).unwrap(), t);
    }

    #[test]
    fn mu_is_additive(a in semisimple(2), b in semisimple(2), i in 1u32..=16) {
        prop_assert_eq!(mu(&a.product(&b), i), mu(&a, i) + mu(&b, i));
    }

    #[test]
    fn table_counts_multiply(a in semisimple(2), b in semisimple(1)) {
        prop_assume!(a.rank() + b.rank() <= 7);
        let ab = charpolys(&a.product(&b), None).unwrap();
        prop_assert_eq!(ab.group_order(), &(a.weyl_order() * b.weyl_order()));
        let total: BigUint = ab.entries().values().sum();
        prop_assert_eq!(&total, ab.group_order());
    }

    #[test]
    fn power_minus_one_factorization(n in 1u32..=60) {
        let product = factor_power_minus_one(n).unwrap();
        prop_assert_eq!(product.to_poly(), IntPoly::x_pow_minus_one(n as usize));
        let x = BigInt::from(3);
        prop_assert_eq!(eval_cyclo_product(&product, &x), BigInt::from(3).pow(n) - 1);
    }

    #[test]
    fn cyclo_product_round_trips_through_polynomials(pairs in prop::collection::btree_map(1u32..=24, 1u32..=3, 0..4)) {
        let p = CycloProduct::from_pairs(pairs).unwrap();
        prop_assert_eq!(CycloProduct::from_poly(&p.to_poly()).unwrap(), p);
    }

    #[test]
    fn factorization_multiplies_back(n in 2u64..u64::MAX) {
        let m = BigUint::from(n);
        let f = factorize(&m).unwrap();
        let back = f.iter().fold(BigUint::one(), |acc, (p, k)| acc * p.pow(*k));
        prop_assert_eq!(back, m);
    }

    #[test]
    fn decomposition_round_trips(letters in prop::collection::vec((0usize..64, any::<bool>()), 1..6)) {
        let pool = generator_pool(20);
        let word = GeneratorWord {
            letters: letters.iter().map(|&(k, s)| (pool[k % pool.len()], if s { 1 } else { -1 })).collect(),
        };
        let p = word.evaluate().unwrap();
        prop_assert!(p.is_valid());
        prop_assert_eq!(decompose(&p).unwrap().evaluate().unwrap(), p);
    }
}

#[test]
fn recognition_beyond_factorization_limit_is_refused() {
    let m = order_value(&"E6".parse().unwrap(), 49).unwrap();
    assert!(m.bits() > MAX_FACTOR_BITS);
    assert!(matches!(
        recognize_order(&m, 6),
        Err(OrderError::Arithmetic(CycloError::TooLarge { .. }))
    ));
}

#[test]
fn classical_c_matches_b() {
    for n in 3..=5 {
        for q in 2..=5 {
            let b: SemisimpleType = format!("B{n}").parse().unwrap();
            let c: SemisimpleType = format!("C{n}").parse().unwrap();
            assert_eq!(order_value(&b, q).unwrap(), order_value(&c, q).unwrap());
        }
    }
}
