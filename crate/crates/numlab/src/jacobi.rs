use crate::segments::{is_prime, isqrt};
use shortgf_core::{Error, Result};

/// Coefficients `a(0..=kmax)` of `ϑ_r(t)^4` where `ϑ_r(t) = Σ_{n ∈ Z, n² < 2^r} t^{n²}`, by
/// dense convolution.
pub fn r4_coefficients(r: u32, kmax: usize) -> Result<Vec<u64>> {
    if r > 62 {
        return Err(Error::Invalid("r must be at most 62".into()));
    }
    let top = 1u64 << r;
    let mut theta = vec![0u64; kmax + 1];
    let mut n = 0u64;
    while n * n < top && (n * n) as usize <= kmax {
        theta[(n * n) as usize] += if n == 0 { 1 } else { 2 };
        n += 1;
    }
    let square = convolve(&theta, &theta);
    Ok(convolve(&square, &square))
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sum of divisors.
pub fn sigma(k: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            s += d;
            if d * d != k {
                s += k / d;
            }
        }
        d += 1;
    }
    s
}

/// `8 Σ_{d | k, 4 ∤ d} d` for `k ≥ 1`.
pub fn jacobi_rhs(k: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            let e = k / d;
            s += if d % 4 != 0 { d } else { 0 };
            s += if e != d && e % 4 != 0 { e } else { 0 };
        }
        d += 1;
    }
    8 * s
}

/// `σ(k)` from the four-square counts `a`, using `a(k) = 8 Σ_{d | k, 4 ∤ d} d` and
/// `σ(k) = a(k)/8 + 4 σ(k/4)` when `4 | k`.
pub fn sigma_from_r4(k: u64, a: &[u64]) -> Result<u64> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let ak = *a.get(k as usize).ok_or_else(|| Error::Invalid(format!("no coefficient for k={k}")))?;
    if ak % 8 != 0 {
        return Err(Error::Invalid(format!("a({k}) = {ak} is not divisible by 8")));
    }
    let rest = if k % 4 == 0 { 4 * sigma_from_r4(k / 4, a)? } else { 0 };
    Ok(ak / 8 + rest)
}

/// Recover `(p, q)` with `p < q` prime and `n = p q` from `σ(n) = 1 + p + q + n`.
pub fn factor_semiprime_from_sigma(n: u64, sigma_n: u64) -> Result<(u64, u64)> {
    let fail = || Error::Invalid(format!("{n} is not a product of two distinct primes with σ = {sigma_n}"));
    let s = sigma_n.checked_sub(n + 1).ok_or_else(fail)? as u128;
    let disc = (s * s).checked_sub(4 * n as u128).ok_or_else(fail)?;
    if disc > u64::MAX as u128 {
        return Err(fail());
    }
    let root = isqrt(disc as u64) as u128;
    if root * root != disc || (s + root) % 2 != 0 {
        return Err(fail());
    }
    let p = ((s - root) / 2) as u64;
    let q = ((s + root) / 2) as u64;
    if p == q || p as u128 * q as u128 != n as u128 || !is_prime(p) || !is_prime(q) {
        return Err(fail());
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let a = r4_coefficients(16, 8).unwrap();
        assert_eq!(a, vec![1, 8, 24, 32, 24, 48, 96, 64, 24]);
    }

    #[test]
    fn truncation_drops_large_squares() {
        // only n ∈ {−1, 0, 1} survive for r = 1
        let a = r4_coefficients(1, 5).unwrap();
        assert_eq!(a, vec![1, 8, 24, 32, 16, 0]);
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_semiprime_from_sigma(15, 24).unwrap(), (3, 5));
        assert_eq!(factor_semiprime_from_sigma(77, 96).unwrap(), (7, 11));
        assert!(factor_semiprime_from_sigma(16, 31).is_err());
        assert!(factor_semiprime_from_sigma(9, 13).is_err());
        assert!(factor_semiprime_from_sigma(10, 5).is_err());
    }

    #[test]
    fn sigma_small() {
        assert_eq!((1..=8).map(sigma).collect::<Vec<_>>(), vec![1, 3, 4, 7, 6, 12, 8, 15]);
        assert_eq!(jacobi_rhs(4), 24);
        assert_eq!(jacobi_rhs(9), 104);
    }
}
