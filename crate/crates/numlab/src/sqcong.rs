use crate::segments::{interval_gf, segment_set, SegmentKind};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use shortgf_core::calculus::{evaluate_at_one, hadamard};
use shortgf_core::{Error, ExponentVector, GfTerm, LatticeBox, Result, ShortGf};

/// Number of `0 ≤ x ≤ γ` with `x² ≡ α (mod β)`, computed as
/// `(F(SQUARES_r) ⋆ (1 − t^{γ²+1})/(1 − t) ⋆ t^{α mod β}/(1 − t^β))(1)`.
pub fn count_square_roots(alpha: u64, beta: u64, gamma: u64) -> Result<u64> {
    if beta == 0 {
        return Err(Error::Invalid("β must be positive".into()));
    }
    // 2^r > γ² so that the segment holds every square up to γ²
    let r = 2 * (64 - gamma.leading_zeros());
    let r = r.max(2);
    let squares = segment_set(SegmentKind::Squares, r)?;
    let gamma_sq = gamma.checked_mul(gamma).ok_or_else(|| Error::Overflow("γ²".into()))?;
    let bx = LatticeBox::new(vec![BigInt::from(1u64 << r)]);
    let progression = ShortGf::new(
        1,
        vec![GfTerm::new(
            shortgf_core::num::rat(1),
            ExponentVector(vec![BigInt::from(alpha % beta)]),
            vec![ExponentVector(vec![BigInt::from(beta)])],
        )],
    )?;
    let bounded = hadamard(&squares.gf, &interval_gf(gamma_sq), &bx)?;
    let h = hadamard(&bounded, &progression, &bx)?;
    let v = evaluate_at_one(&h)?;
    if !v.is_integer() {
        return Err(Error::Invalid(format!("non-integral count {v}")));
    }
    v.to_integer().to_u64().ok_or_else(|| Error::Overflow("count".into()))
}

pub fn count_square_roots_brute(alpha: u64, beta: u64, gamma: u64) -> u64 {
    (0..=gamma).filter(|&x| (x * x) % beta == alpha % beta).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(count_square_roots(0, 1, 3).unwrap(), 4);
        assert_eq!(count_square_roots(1, 8, 10).unwrap(), 5);
        assert_eq!(count_square_roots_brute(1, 8, 10), 5);
    }

    #[test]
    fn gamma_power_of_two_boundary() {
        // x = γ = 4 must be counted: 16 ≡ 0 (mod 4)
        assert_eq!(count_square_roots(0, 4, 4).unwrap(), count_square_roots_brute(0, 4, 4));
        assert_eq!(count_square_roots(0, 4, 4).unwrap(), 3);
    }

    #[test]
    fn alpha_above_beta() {
        assert_eq!(count_square_roots(9, 5, 12).unwrap(), count_square_roots_brute(9, 5, 12));
    }
}
