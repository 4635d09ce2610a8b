use super::eps::evaluate_at_one;
use super::hadamard::{hadamard, monomial_hadamard};
use super::subst::substitute_with_limits;
use crate::error::{Error, Result};
use crate::gf::{expand, ExponentVector, LatticeBox, ShortGf};
use crate::num::{Int, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolMode {
    Intersect,
    Union,
    Minus,
}

/// Operands are checked to be 0/1 by oracle expansion when the box has at most this many points.
pub const VALIDATE_LIMIT: u64 = 1 << 16;

fn validate_zero_one(f: &ShortGf, bx: &LatticeBox) -> Result<()> {
    if bx.num_points() <= Int::from(VALIDATE_LIMIT) {
        expand(f, bx)?.check_zero_one()?;
    }
    Ok(())
}

/// `∩ = f ⋆ g`, `∪ = f + g − f ⋆ g`, `∖ = f − f ⋆ g` for GFs supported in `box`.
pub fn boolean_combine(f: &ShortGf, g: &ShortGf, bx: &LatticeBox, mode: BoolMode) -> Result<ShortGf> {
    validate_zero_one(f, bx)?;
    validate_zero_one(g, bx)?;
    let h = hadamard(f, g, bx)?;
    let bound = f.index_bound + g.index_bound;
    let strip = |x: &ShortGf| ShortGf { orientation: None, ..x.clone() };
    let out = match mode {
        BoolMode::Intersect => h,
        BoolMode::Union => strip(f).add(&strip(g)).sub(&h),
        BoolMode::Minus => strip(f).sub(&h),
    };
    Ok(out.bounded(bound))
}

/// `box ∖ f` using the box GF `Π (1 − t_j^{U_j}) / (1 − t_j)`.
pub fn complement_in_box(f: &ShortGf, bx: &LatticeBox) -> Result<ShortGf> {
    boolean_combine(&bx.gf(), f, bx, BoolMode::Minus)
}

/// `[t^{a0}] f` as `(f ⋆ t^{a0})(1)`.
pub fn coefficient(f: &ShortGf, a0: &ExponentVector) -> Result<Rat> {
    evaluate_at_one(&monomial_hadamard(f, a0)?)
}

/// `|supp f|` (for GFs) as `f(1)`.
pub fn count(f: &ShortGf) -> Result<Rat> {
    evaluate_at_one(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormResult {
    Empty,
    /// Coordinatewise maxima over the support and their maximum (the `∞`-norm).
    Max { coords: Vec<Int>, norm: Int },
}

/// Norm of a GF supported in `[0, 2^r)^n` by binary search with half-box intersections.
pub fn norm(f: &ShortGf, r: u32) -> Result<NormResult> {
    let n = f.nvars;
    let top = Int::one() << r;
    let full = LatticeBox::new(vec![top.clone(); n]);
    let nonempty = |lo: &[Int]| -> Result<bool> {
        let half = LatticeBox::with_bounds(lo.to_vec(), vec![top.clone(); n]);
        let h = boolean_combine(f, &half.gf(), &full, BoolMode::Intersect)?;
        Ok(evaluate_at_one(&h)?.is_positive())
    };
    let zeros = vec![Int::zero(); n];
    if !nonempty(&zeros)? {
        return Ok(NormResult::Empty);
    }
    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        // largest v with some support point having x_i ≥ v
        let (mut lo, mut hi) = (Int::zero(), &top - 1);
        while lo < hi {
            let mid: Int = (&lo + &hi + 1) >> 1;
            let mut bound = zeros.clone();
            bound[i] = mid.clone();
            if nonempty(&bound)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        coords.push(lo);
    }
    let norm = coords.iter().max().cloned().unwrap_or_default();
    Ok(NormResult::Max { coords, norm })
}

/// Is `a0 ∈ proj_x(supp f)` for `f` over `(x, y)` with `x` the first `a0.len()` variables?
pub fn proj_member(f: &ShortGf, a0: &ExponentVector) -> Result<bool> {
    let k = a0.len();
    if k == 0 || k > f.nvars {
        return Err(Error::Dimension { expected: f.nvars, got: k });
    }
    let v: Vec<Vec<Int>> = (0..k).map(|i| (0..f.nvars).map(|j| Int::from((i == j) as i64)).collect()).collect();
    let g = substitute_with_limits(f, &v)?;
    Ok(!coefficient(&g, a0)?.is_zero())
}
