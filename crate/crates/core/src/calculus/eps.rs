//! Truncated Laurent series in a formal parameter `ε` and evaluation of short GFs at `t = 1`.

use crate::error::{Error, Result};
use crate::gf::ShortGf;
use crate::num::{factorial, rat_int, Int, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `Σ_{k} coeffs[k] · ε^{low + k}`, tracked up to order `top` inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSeries {
    pub low: i64,
    pub top: i64,
    pub coeffs: Vec<Rat>,
}

impl EpsSeries {
    pub fn constant(c: Rat, top: i64) -> Self {
        let mut s = EpsSeries { low: 0, top, coeffs: vec![c] };
        s.truncate();
        s
    }

    /// `exp(α ε)` up to order `top`.
    pub fn exp(alpha: &Rat, top: i64) -> Self {
        let mut coeffs = Vec::new();
        let mut term = Rat::one();
        for k in 0..=top.max(0) {
            if k > 0 {
                term = term * alpha / Rat::from_integer(Int::from(k));
            }
            coeffs.push(term.clone());
        }
        EpsSeries { low: 0, top, coeffs }
    }

    /// `1 / (1 − exp(β ε)) = −(1/(βε)) Σ B_k (βε)^k / k!` (with `B_1 = −1/2`), up to order `top`.
    pub fn inv_one_minus_exp(beta: &Rat, top: i64, bern: &[Rat]) -> Self {
        assert!(!beta.is_zero());
        let len = (top + 2).max(0) as usize;
        let mut coeffs = Vec::with_capacity(len);
        let mut pow = Rat::one();
        for k in 0..len {
            coeffs.push(-(&bern[k] * &pow) / rat_int(&factorial(k)) / beta);
            pow = pow * beta;
        }
        EpsSeries { low: -1, top, coeffs }
    }

    pub fn mul(&self, other: &EpsSeries) -> EpsSeries {
        // accuracy of a product is limited by each factor's top shifted by the other's low order
        let top = (self.top + other.low).min(other.top + self.low);
        let low = self.low + other.low;
        let len = (top - low + 1).max(0) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        EpsSeries { low, top, coeffs }
    }

    pub fn coeff(&self, order: i64) -> Rat {
        let k = order - self.low;
        if k < 0 || order > self.top {
            return Rat::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Rat::zero)
    }

    fn truncate(&mut self) {
        let len = (self.top - self.low + 1).max(0) as usize;
        self.coeffs.truncate(len);
    }
}

/// Bernoulli numbers `B_0..B_k` with `B_1 = −1/2` (the `x/(e^x − 1)` convention).
pub fn bernoulli(k: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for m in 1..=k {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += rat_int(&crate::num::binomial(m + 1, j)) * bj;
        }
        b.push(-s / Rat::from_integer(Int::from(m + 1)));
    }
    b
}

const MAX_RESEEDS: u64 = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Generic integer vector `λ` with `⟨b, λ⟩ ≠ 0` for every denominator `b` of `f`.
pub(crate) fn generic_lambda(
    nvars: usize,
    vecs: &[&[Int]],
    seed: u64,
) -> Result<Vec<Int>> {
    for attempt in 0..MAX_RESEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9E37_79B9));
        let range = 64i64 << attempt.min(30);
        let lambda: Vec<Int> = (0..nvars).map(|_| Int::from(rng.gen_range(-range..=range))).collect();
        if vecs.iter().all(|b| !b.iter().zip(&lambda).map(|(x, y)| x * y).sum::<Int>().is_zero()) {
            return Ok(lambda);
        }
    }
    Err(Error::DegenerateDirection(MAX_RESEEDS as usize))
}

/// `lim_{t → 1} f(t)` via `t_j = exp(ε λ_j)`; equals `|supp f|` for a finite-support GF.
/// Fails if the singular parts do not cancel (the support is infinite).
pub fn evaluate_at_one(f: &ShortGf) -> Result<Rat> {
    evaluate_at_one_seeded(f, DEFAULT_SEED)
}

pub fn evaluate_at_one_seeded(f: &ShortGf, seed: u64) -> Result<Rat> {
    let dens: Vec<&[Int]> = f.terms.iter().flat_map(|t| t.denominators.iter().map(|b| b.0.as_slice())).collect();
    let lambda = generic_lambda(f.nvars, &dens, seed)?;
    let max_pole = f.terms.iter().map(|t| t.denominators.len()).max().unwrap_or(0);
    let bern = bernoulli(max_pole + 1);
    let mut total = vec![Rat::zero(); max_pole + 1]; // orders −max_pole..=0
    for t in &f.terms {
        let dot = |v: &[Int]| rat_int(&v.iter().zip(&lambda).map(|(x, y)| x * y).sum::<Int>());
        // each factor contributes ε^{-1}; the running product is tracked to order 0 overall
        let k = t.denominators.len() as i64;
        let mut s = EpsSeries::exp(&dot(&t.numerator.0), k);
        for b in &t.denominators {
            s = s.mul(&EpsSeries::inv_one_minus_exp(&dot(&b.0), k, &bern));
        }
        for (i, slot) in total.iter_mut().enumerate() {
            let order = i as i64 - max_pole as i64;
            *slot += &t.coeff * s.coeff(order);
        }
    }
    if total[..max_pole].iter().any(|c| !c.is_zero()) {
        return Err(Error::Invalid("pole at t = 1: support is not finite".into()));
    }
    Ok(total[max_pole].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{ExponentVector, GfTerm};
    use crate::num::{rat, rat_frac};

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(4);
        assert_eq!(b[1], rat_frac(-1, 2));
        assert_eq!(b[2], rat_frac(1, 6));
        assert_eq!(b[3], rat(0));
        assert_eq!(b[4], rat_frac(-1, 30));
    }

    #[test]
    fn geometric_block_counts() {
        // t^x (1 − t^{2^{2r}}) / (1 − t^{2^r}) with r = 3, x = 5
        let ev = |v: i64| ExponentVector::from_i64(&[v]);
        let f = ShortGf::new(
            1,
            vec![GfTerm::new(rat(1), ev(5), vec![ev(8)]), GfTerm::new(rat(-1), ev(5 + 64), vec![ev(8)])],
        )
        .unwrap();
        assert_eq!(evaluate_at_one(&f).unwrap(), rat(8));
        assert_eq!(evaluate_at_one_seeded(&f, 99).unwrap(), rat(8));
    }

    #[test]
    fn infinite_support_detected() {
        let ev = |v: i64| ExponentVector::from_i64(&[v]);
        let f = ShortGf::new(1, vec![GfTerm::new(rat(1), ev(0), vec![ev(1)])]).unwrap();
        assert!(evaluate_at_one(&f).is_err());
    }
}
