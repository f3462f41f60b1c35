use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qbinsum::cyclo::{cyclotomic, expand, prime_power_form};
use qbinsum::qcomb::{binom, euler_phi, factorize, nu_p_binom, nu_p_int, qbinom, qbinom_factored};
use qbinsum::report::ReportRecord;
use qbinsum::sums::{
    alt_power_sum, alt_power_sum_filtered, digit_count, gjz_sum, pattern_sum, triple_sum, Filter, Mode, SumSpec,
    TripleFamily,
};
use qbinsum::verify::{verify_congruence, verify_identity, IdentityClaim};
use qbinsum::{CongruenceWitness, IntPoly};

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-1_000_000i64..=1_000_000, 0..=max_len).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn q_pow_minus_one(n: u64) -> IntPoly {
    &IntPoly::monomial(1, n as usize) - &IntPoly::one()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(65), b in poly(65), c in poly(20)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), IntPoly::zero());
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
    }

    #[test]
    fn karatsuba_agrees_with_schoolbook(a in poly(200), b in poly(200), t in 1usize..80) {
        prop_assert_eq!(a.mul_with_threshold(&b, t), a.mul_with_threshold(&b, usize::MAX));
    }

    #[test]
    fn div_exact_round_trip(a in poly(65), b in nonzero_poly(30)) {
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
        let w = CongruenceWitness::check(&a * &b, b.clone()).unwrap();
        prop_assert!(w.holds());
    }

    #[test]
    fn remainder_reported_when_not_divisible(a in nonzero_poly(20), b in nonzero_poly(20)) {
        let shifted = &(&a * &b) + &IntPoly::one();
        if let Ok(quot) = shifted.div_exact(&b) {
            prop_assert_eq!(&quot * &b, shifted);
        } else {
            prop_assert!(!CongruenceWitness::check(shifted, b).unwrap().holds());
        }
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(40), b in poly(40), x in -50i64..=50) {
        let x = BigInt::from(x);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!(a.eval(&BigInt::one()), a.eval_at_one());
    }

    #[test]
    fn canonical_form(c in prop::collection::vec(-5i64..=5, 0..30), pad in 0usize..5) {
        let mut padded = c.clone();
        padded.extend(std::iter::repeat_n(0, pad));
        let p = IntPoly::from_i64s(&padded);
        prop_assert_eq!(&p, &IntPoly::from_i64s(&c));
        prop_assert!(p.coeffs().last().is_none_or(|x| !x.is_zero()));
        prop_assert_eq!(p.is_zero(), p.degree().is_none());
    }

    #[test]
    fn text_forms_round_trip(a in poly(40)) {
        prop_assert_eq!(a.to_string().parse::<IntPoly>().unwrap(), a.clone());
        prop_assert_eq!(a.to_list_string().parse::<IntPoly>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), a);
    }

    #[test]
    fn cyclotomic_product_is_q_pow_minus_one(n in 1u64..=200) {
        let prod: IntPoly = (1..=n).filter(|d| n % d == 0).map(|d| cyclotomic(d).unwrap()).product();
        prop_assert_eq!(prod, q_pow_minus_one(n));
    }

    #[test]
    fn cyclotomic_prime_power_form(p in prop::sample::select(vec![2u64, 3, 5, 7]), alpha in 1u32..=6) {
        let d = p.pow(alpha);
        prop_assume!(d <= 20_000);
        prop_assert_eq!(cyclotomic(d).unwrap(), prime_power_form(p, alpha).unwrap());
    }

    #[test]
    fn cyclotomic_degree_and_value_at_one(d in 1u64..=200) {
        let phi = cyclotomic(d).unwrap();
        prop_assert_eq!(phi.degree(), Some(euler_phi(d).unwrap() as usize));
        let expected = match factorize(d).as_slice() {
            [] => BigInt::zero(),
            [(p, _)] => BigInt::from(*p),
            _ => BigInt::one(),
        };
        prop_assert_eq!(phi.eval_at_one(), expected);
    }

    #[test]
    fn qbinom_structure(n in 0u64..=40, k in 0u64..=40) {
        prop_assume!(k <= n);
        let k = k as i64;
        let g = qbinom(n, k);
        prop_assert_eq!(g.degree(), Some((k as u64 * (n - k as u64)) as usize));
        prop_assert_eq!(g.eval_at_one(), binom(n, k));
        prop_assert_eq!(expand(&qbinom_factored(n, n as i64 - k).unwrap()), g.clone());
        if n >= 1 && k >= 1 {
            let pascal = &qbinom(n - 1, k - 1) + &qbinom(n - 1, k).shift(k as usize);
            prop_assert_eq!(pascal, g);
        }
    }

    #[test]
    fn valuation_matches_integer_valuation(n in 0u64..=150, k in 0u64..=150, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(k <= n);
        prop_assert_eq!(nu_p_binom(n, k as i64, p).unwrap(), nu_p_int(&binom(n, k as i64), p).unwrap());
    }

    #[test]
    fn power_sum_reindexing(n in 1u64..=10, r in 1u64..=5) {
        let direct = (0..=2 * n as i64).fold(BigInt::zero(), |acc, k| {
            let t = num_traits::pow(binom(2 * n, k), r as usize);
            if k % 2 == 1 { acc - t } else { acc + t }
        });
        let mirrored = (0..=2 * n as i64).fold(BigInt::zero(), |acc, k| {
            let t = num_traits::pow(binom(2 * n, 2 * n as i64 - k), r as usize);
            if k % 2 == 1 { acc - t } else { acc + t }
        });
        prop_assert_eq!(alt_power_sum(n, r), direct.clone());
        prop_assert_eq!(direct, mirrored);
    }

    #[test]
    fn filtered_sums_partition(n in 1u64..=20, r in 1u64..=4, p in prop::sample::select(vec![2u64, 3, 5])) {
        let split = alt_power_sum_filtered(n, r, p, Filter::PDivides).unwrap()
            + alt_power_sum_filtered(n, r, p, Filter::PNotDivides).unwrap();
        prop_assert_eq!(split, alt_power_sum(n, r));
    }

    #[test]
    fn closed_forms(n in 1u64..=50) {
        for claim in [IdentityClaim::Eq1 { n }, IdentityClaim::Eq2 { n }] {
            let holds = verify_identity(&claim).unwrap().holds();
            prop_assert!(holds, "{:?}", claim);
        }
    }

    #[test]
    fn q_mode_specializes_to_integer_mode(
        n in 1u64..=4,
        r in 1u64..=3,
        ns in prop::collection::vec(1u64..=4, 1..=3),
        p in prop::sample::select(vec![2u64, 3]),
        alpha in 1u32..=3,
    ) {
        let power = SumSpec::Power { n, r };
        prop_assert_eq!(power.evaluate(Mode::Q).unwrap().at_one(), power.evaluate(Mode::Integer).unwrap().at_one());
        prop_assert_eq!(gjz_sum(&ns, Mode::Q).unwrap().at_one(), gjz_sum(&ns, Mode::Integer).unwrap().expect_integer());
        for family in [TripleFamily::SixFourTwo, TripleFamily::EightFourTwo] {
            let (rr, s, t) = (r.min(2), 1, 1);
            let q = triple_sum(family, n.min(2), rr, s, t, Mode::Q).at_one();
            prop_assert_eq!(q, triple_sum(family, n.min(2), rr, s, t, Mode::Integer).expect_integer());
        }
        let h = digit_count(p, 2 * n);
        let indices: BTreeSet<u32> = [alpha.min(h)].into();
        prop_assert_eq!(
            pattern_sum(n, r, p, &indices, Mode::Q).unwrap().at_one(),
            pattern_sum(n, r, p, &indices, Mode::Integer).unwrap().expect_integer()
        );
    }

    #[test]
    fn report_record_json_round_trip(a in poly(12), b in nonzero_poly(6)) {
        for dividend in [&a * &b, &(&a * &b) + &IntPoly::one()] {
            let record = verify_congruence(dividend, b.clone()).unwrap().to_record();
            let json = serde_json::to_string(&record).unwrap();
            prop_assert_eq!(serde_json::from_str::<ReportRecord>(&json).unwrap(), record);
        }
    }
}
