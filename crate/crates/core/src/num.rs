//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// Number of bits of `|v|`, i.e. `ceil(log2(|v| + 1))`; zero for zero.
pub fn bits(v: &Int) -> u64 {
    v.bits()
}

/// `ceil(log2 |v| + 1)` for `v != 0`; zero entries contribute nothing.
pub fn ceil_log2_plus1(v: &Int) -> u64 {
    let a = v.abs();
    if a.is_zero() {
        return 0;
    }
    if a.is_one() {
        return 1;
    }
    // ceil(log2 a) + 1; a power of two 2^k gives k + 1
    let k = (&a - 1u32).bits();
    k + 1
}

pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

pub fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

pub fn gcd_vec(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Scale a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    let g = gcd_vec(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let g = gcd_vec(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + rat_int(x) * y)
}

pub fn to_i64_vec(v: &[Int]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn sign(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn factorial(k: usize) -> Int {
    (1..=k).fold(Int::one(), |acc, i| acc * Int::from(i))
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut r = Int::one();
    for i in 0..k {
        r = r * Int::from(n - i) / Int::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_bits() {
        assert_eq!(ceil_log2_plus1(&int(1)), 1);
        assert_eq!(ceil_log2_plus1(&int(2)), 2);
        assert_eq!(ceil_log2_plus1(&int(3)), 3);
        assert_eq!(ceil_log2_plus1(&int(4)), 3);
        assert_eq!(ceil_log2_plus1(&int(5)), 4);
        assert_eq!(ceil_log2_plus1(&int(-8)), 4);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat_frac(1, 2), rat_frac(-3, 4)];
        assert_eq!(primitive(&v), ints(&[2, -3]));
    }
}
