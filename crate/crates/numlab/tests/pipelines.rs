use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortgf_core::calculus::coefficient;
use shortgf_core::num::rat;
use shortgf_core::{ExponentVector, ShortGf};
use shortgf_numlab::*;

/// Signed 4-tuples with `n_i² < 2^r` summing to `k`.
fn brute_r4(r: u32, k: i64) -> u64 {
    let top = 1i64 << r;
    let m = (k as f64).sqrt() as i64 + 1;
    let mut c = 0;
    for a in -m..=m {
        for b in -m..=m {
            for d in -m..=m {
                let rest = k - a * a - b * b - d * d;
                if rest < 0 || [a, b, d].iter().any(|x| x * x >= top) {
                    continue;
                }
                let e = (rest as f64).sqrt() as i64;
                if e * e == rest && rest < top {
                    c += if e == 0 { 1 } else { 2 };
                }
            }
        }
    }
    c
}

#[test]
fn r4_matches_brute_force_tuples() {
    let a = r4_coefficients(16, 40).unwrap();
    assert_eq!(a[0], 1);
    assert_eq!(a[1], 8);
    assert_eq!(a[12], 96);
    for k in 0..=40 {
        assert_eq!(a[k], brute_r4(16, k as i64), "k={k}");
    }
    let small = r4_coefficients(3, 40).unwrap();
    for k in 0..=40 {
        assert_eq!(small[k], brute_r4(3, k as i64), "r=3 k={k}");
    }
}

#[test]
fn jacobi_identity_up_to_200() {
    let a = r4_coefficients(16, 200).unwrap();
    for k in 1..=200u64 {
        assert_eq!(a[k as usize], jacobi_rhs(k), "k={k}");
    }
}

#[test]
fn sigma_recovery_up_to_200() {
    let a = r4_coefficients(16, 200).unwrap();
    for k in 1..=200u64 {
        assert_eq!(sigma_from_r4(k, &a).unwrap(), sigma(k), "k={k}");
    }
    assert_eq!(sigma_from_r4(12, &a).unwrap(), 28);
    assert_eq!(sigma_from_r4(16, &a).unwrap(), 31);
    let mut bad = a.clone();
    bad[5] += 1;
    assert!(sigma_from_r4(5, &bad).is_err());
}

#[test]
fn r4_cross_check_by_gf_product() {
    let r = 8;
    let sq = segment_set(SegmentKind::Squares, r).unwrap();
    // signed theta: 2·F(SQUARES) − 1
    let theta = sq.gf.scale(&rat(2)).sub(&ShortGf::monomial(ExponentVector(vec![BigInt::from(0)])));
    let t2 = theta.mul(&theta).normalize();
    let t4 = t2.mul(&t2).normalize();
    let dense = r4_coefficients(r, 60).unwrap();
    for k in 0..=60u64 {
        let c = coefficient(&t4, &ExponentVector(vec![BigInt::from(k)])).unwrap();
        assert_eq!(c, rat(dense[k as usize] as i64), "k={k}");
    }
}

#[test]
fn semiprimes_from_recovered_sigma() {
    let a = r4_coefficients(16, 200).unwrap();
    let primes = primes_below(20);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let n = p * q;
            if n > 200 {
                continue;
            }
            let s = sigma_from_r4(n, &a).unwrap();
            assert_eq!(factor_semiprime_from_sigma(n, s).unwrap(), (p, q));
        }
    }
    for n in [16u64, 12, 49, 30] {
        assert!(factor_semiprime_from_sigma(n, sigma(n)).is_err(), "n={n}");
    }
}

#[test]
fn square_roots_exhaustive_small() {
    for alpha in 0..=12 {
        for beta in 1..=12 {
            for gamma in 0..=12 {
                assert_eq!(
                    count_square_roots(alpha, beta, gamma).unwrap(),
                    count_square_roots_brute(alpha, beta, gamma),
                    "({alpha},{beta},{gamma})"
                );
            }
        }
    }
}

#[test]
fn square_roots_random_up_to_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..2000 {
        let (a, b, g) = (rng.gen_range(1..=200), rng.gen_range(1..=200), rng.gen_range(1..=200));
        assert_eq!(count_square_roots(a, b, g).unwrap(), count_square_roots_brute(a, b, g), "({a},{b},{g})");
    }
}

#[test]
fn prime_pi_matches_sieve() {
    let primes = primes_below(1 << 16);
    let sieve = |n: u64| primes.partition_point(|&p| p <= n) as u64;
    for n in 0..(1u64 << 12) {
        let r = (64 - n.leading_zeros()).max(1);
        assert_eq!(prime_pi(n, r).unwrap(), sieve(n), "n={n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let n = rng.gen_range(0..1u64 << 16);
        assert_eq!(prime_pi(n, 16).unwrap(), sieve(n), "n={n}");
    }
    assert_eq!(prime_pi((1 << 16) - 1, 16).unwrap(), segment_set(SegmentKind::Primes, 16).unwrap().points.len() as u64);
    assert!(prime_pi(16, 4).is_err());
}
