use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use stammer_core::expansions::{beta_expansion, hensel_digits, resum_field, resum_rational, Beta, BetaInput, QuadElem};
use stammer_core::numeric::{rat, Rational};

fn unit_rational() -> impl Strategy<Value = Rational> {
    (2i64..500).prop_flat_map(|d| (1..d).prop_map(move |n| rat(n, d)))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (2i64..60).prop_flat_map(|d| (1..d).prop_map(move |n| rat(n, d)))
}

proptest! {
    #[test]
    fn integer_base_resummation(xi in unit_rational(), b in 2u64..=12) {
        let e = beta_expansion(&BetaInput::Rational(xi.clone()), &Beta::Integer(b), 1200, 64).unwrap();
        let period = e.period.expect("rational orbit repeats");
        prop_assert!(e.digits.iter().all(|&d| (d as u64) < b));
        prop_assert_eq!(resum_rational(b, &e.digits, period).unwrap(), xi);
    }

    #[test]
    fn golden_resummation_and_orbit(a in small_rational(), bnum in -12i64..12, bden in 1i64..12) {
        let beta = Beta::golden();
        let Beta::Quadratic(k) = &beta else { unreachable!() };
        let x = QuadElem { a, b: rat(bnum, bden) };
        let frac = k.sub(&x, &QuadElem::rational(Rational::from_integer(k.floor(&x))));
        prop_assume!(!frac.is_zero());
        let e = beta_expansion(&BetaInput::Field(frac.clone()), &beta, 4000, 64).unwrap();
        let period = e.period.expect("orbit repeats");
        prop_assert_eq!(resum_field(k, &e.digits, period).unwrap(), frac.clone());
        // digits in {0, 1} = {0, …, ⌈β⌉ − 1}; remainders in [0, 1)
        let mut t = frac;
        for &d in &e.digits[..50] {
            prop_assert!(d <= 1);
            t = k.sub(&k.mul(&k.beta(), &t), &k.int(d as i64));
            prop_assert!(k.signum(&t) >= 0);
            prop_assert!(k.signum(&k.sub(&t, &k.int(1))) < 0);
        }
    }

    #[test]
    fn hensel_partial_sums(n in -1000i64..1000, d in 1i64..1000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        prop_assume!(n != 0);
        let alpha = rat(n, d);
        let h = hensel_digits(&alpha, p).unwrap();
        let pb = BigInt::from(p);
        let scaled = &alpha * Rational::from_integer(num_traits::pow(pb.clone(), h.m));
        let mut partial = BigInt::zero();
        let mut pk = BigInt::one();
        for j in 0..=64usize {
            partial += BigInt::from(h.digits.get(j + 1)) * &pk;
            pk *= &pb;
            let diff = &scaled - Rational::from_integer(partial.clone());
            prop_assert!(diff.is_zero() || diff.numer().mod_floor(&pk).is_zero());
        }
    }
}
