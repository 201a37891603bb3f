use hecke_core::zeta::{tensor_eigenvalue, tensor_spectrum, tensor_witness, zeta_us};
use hecke_core::{BigRat, CycNum};
use num_bigint::BigInt;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn prime_set() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::subsequence(PRIMES.to_vec(), 0..=4)
}

fn is_smooth(mut n: u64, primes: &[u64]) -> bool {
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

fn exponent(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_is_smooth_numbers_once(s in prime_set(), bound in 1u64..3000) {
        let spec = tensor_spectrum(&s, bound).unwrap();
        let brute: Vec<u64> = (1..=bound).filter(|&n| is_smooth(n, &s)).collect();
        prop_assert_eq!(spec.values(), brute);
        prop_assert!(spec.eigenvalues.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn rectangle_sums_factor(i in 0usize..6, j in 0usize..6, k in 1u32..5) {
        prop_assume!(i != j);
        let (p, q) = (PRIMES[i], PRIMES[j]);
        let spec = tensor_spectrum(&[p, q], p.pow(k) * q.pow(k)).unwrap();
        let inv_sq = |n: u64| BigRat::new(BigInt::from(1), BigInt::from(n) * BigInt::from(n));
        let rect: BigRat = spec
            .values()
            .into_iter()
            .filter(|&v| exponent(v, p) <= k && exponent(v, q) <= k)
            .map(inv_sq)
            .sum();
        let side = |r: u64| (0..=k).map(|e| inv_sq(r.pow(e))).sum::<BigRat>();
        prop_assert_eq!(rect, side(p) * side(q));
    }

    #[test]
    fn euler_product_factors(s in prime_set(), t in 1.5f64..4.0) {
        let whole = zeta_us(&s, t, 10).unwrap().closed_form;
        let parts: f64 = s.iter().map(|&p| zeta_us(&[p], t, 10).unwrap().closed_form).product();
        prop_assert!((whole - parts).abs() <= 1e-12 * whole);
    }

    #[test]
    fn partial_sums_increase_to_the_product(s in prime_set(), t in 1.5f64..4.0, b in 1u64..5000) {
        let small = zeta_us(&s, t, b).unwrap();
        let large = zeta_us(&s, t, 2 * b).unwrap();
        prop_assert!(small.partial_sum <= large.partial_sum + 1e-15);
        prop_assert!(large.partial_sum <= large.closed_form * (1.0 + 1e-12));
    }

    #[test]
    fn tensor_witnesses(ks in prop::collection::vec(0usize..4, 1..4)) {
        let primes = &PRIMES[..ks.len()];
        let expected: i64 = primes.iter().zip(&ks).map(|(&p, &k)| (p as i64).pow(k as u32)).product();
        let lambda = tensor_eigenvalue(primes, &tensor_witness(&ks)).unwrap();
        prop_assert_eq!(lambda, Some(CycNum::from_int(expected)));
    }
}
