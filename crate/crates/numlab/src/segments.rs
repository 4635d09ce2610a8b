use num_bigint::BigInt;
use shortgf_core::calculus::{evaluate_at_one, hadamard};
use shortgf_core::{Error, ExponentVector, GfTerm, LatticeBox, Result, ShortGf};
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Squares,
    Primes,
    Even,
    Custom(Vec<u64>),
}

/// The points of a language below `2^r` and their dense generating function.
#[derive(Clone, Debug)]
pub struct Segment {
    pub r: u32,
    pub kind: SegmentKind,
    pub points: Vec<u64>,
    pub gf: ShortGf,
}

pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Trial division; adequate for the sizes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n.max(2)];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub const MAX_SEGMENT_R: u32 = 24;

pub fn segment_set(kind: SegmentKind, r: u32) -> Result<Segment> {
    if r == 0 || r > MAX_SEGMENT_R {
        return Err(Error::Invalid(format!("segment width must be in 1..={MAX_SEGMENT_R}")));
    }
    let top = 1u64 << r;
    let points: Vec<u64> = match &kind {
        SegmentKind::Squares => (0..).map(|k: u64| k * k).take_while(|&v| v < top).collect(),
        SegmentKind::Primes => primes_below(top),
        SegmentKind::Even => (0..top).step_by(2).collect(),
        SegmentKind::Custom(v) => {
            let mut v: Vec<u64> = v.iter().copied().filter(|&x| x < top).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let evs: Vec<ExponentVector> = points.iter().map(|&p| ExponentVector(vec![BigInt::from(p)])).collect();
    let gf = ShortGf::from_point_set(evs.iter(), 1);
    Ok(Segment { r, kind, points, gf })
}

/// `(1 − t^{n+1}) / (1 − t)`.
pub fn interval_gf(n: u64) -> ShortGf {
    let one = shortgf_core::num::rat(1);
    let ev = |v: u64| ExponentVector(vec![BigInt::from(v)]);
    ShortGf::new(1, vec![GfTerm::new(one.clone(), ev(0), vec![ev(1)]), GfTerm::new(-one, ev(n + 1), vec![ev(1)])])
        .expect("well-formed")
}

/// `π(n)` as `(F(PRIMES_r) ⋆ (1 − t^{n+1})/(1 − t))(1)` with `n < 2^r`.
pub fn prime_pi(n: u64, r: u32) -> Result<u64> {
    if r > MAX_SEGMENT_R || n >> r != 0 {
        return Err(Error::Invalid(format!("need n < 2^r and r ≤ {MAX_SEGMENT_R}")));
    }
    let primes = segment_set(SegmentKind::Primes, r)?;
    let bx = LatticeBox::new(vec![BigInt::from(1u64 << r)]);
    let h = hadamard(&primes.gf, &interval_gf(n), &bx)?;
    let v = evaluate_at_one(&h)?;
    if !v.is_integer() {
        return Err(Error::Invalid(format!("non-integral count {v}")));
    }
    v.to_integer().to_u64().ok_or_else(|| Error::Overflow("count".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use shortgf_core::gf::expand;

    #[test]
    fn squares_r6() {
        assert_eq!(segment_set(SegmentKind::Squares, 6).unwrap().points, vec![0, 1, 4, 9, 16, 25, 36, 49]);
    }

    #[test]
    fn primes_r5() {
        let s = segment_set(SegmentKind::Primes, 5).unwrap();
        assert_eq!(s.points, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
    }

    #[test]
    fn even_matches_closed_form() {
        let r = 3;
        let s = segment_set(SegmentKind::Even, r).unwrap();
        assert_eq!(s.points, vec![0, 2, 4, 6]);
        let ev = |v: u64| ExponentVector(vec![BigInt::from(v)]);
        let one = shortgf_core::num::rat(1);
        let closed = ShortGf::new(
            1,
            vec![GfTerm::new(one.clone(), ev(0), vec![ev(2)]), GfTerm::new(-one, ev(1 << r), vec![ev(2)])],
        )
        .unwrap();
        let bx = LatticeBox::new(vec![BigInt::from(64)]);
        assert_eq!(expand(&s.gf, &bx).unwrap(), expand(&closed, &bx).unwrap());
    }

    #[test]
    fn small_pi_values() {
        assert_eq!(prime_pi(1, 4).unwrap(), 0);
        assert_eq!(prime_pi(100, 7).unwrap(), 25);
        assert_eq!(prime_pi(31, 5).unwrap(), 11);
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_below(2000);
        let trial: Vec<u64> = (0..2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, trial);
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(100), 10);
    }
}
