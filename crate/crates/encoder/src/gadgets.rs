use num_bigint::BigInt;
use shortgf_core::calculus::{evaluate_at_one, hadamard, minkowski_oracle, substitute_with_limits};
use shortgf_core::gf::expand;
use shortgf_core::num::Rat;
use shortgf_core::{Error, ExponentVector, GfTerm, LatticeBox, Result, ShortGf};
use std::collections::BTreeSet;

fn one() -> Rat {
    Rat::from_integer(BigInt::from(1))
}

fn ev(v: Vec<BigInt>) -> ExponentVector {
    ExponentVector(v)
}

/// Number of `c ∈ [0, 2^r)` with `x + 2^r c ∈ supp(f2r)`: `(f2r ⋆ g_x)(1)` where
/// `g_x = t^x (1 − t^{2^{2r}}) / (1 − t^{2^r})`.
pub fn count_certificates(f2r: &ShortGf, x: u64, r: u32) -> Result<Rat> {
    if f2r.nvars != 1 {
        return Err(Error::Dimension { expected: 1, got: f2r.nvars });
    }
    if r == 0 || 2 * r > 62 || x >> r != 0 {
        return Err(Error::Invalid(format!("need 1 ≤ r ≤ 31 and x < 2^r, got r={r} x={x}")));
    }
    let step = BigInt::from(1) << r;
    let gx = ShortGf::new(
        1,
        vec![
            GfTerm::new(one(), ev(vec![BigInt::from(x)]), vec![ev(vec![step.clone()])]),
            GfTerm::new(-one(), ev(vec![BigInt::from(x) + (BigInt::from(1) << (2 * r))]), vec![ev(vec![step])]),
        ],
    )?;
    let bx = LatticeBox::new(vec![BigInt::from(1) << (2 * r)]);
    evaluate_at_one(&hadamard(f2r, &gx, &bx)?)
}

/// The Minkowski-sum gadget for pieces `p_1..p_k`:
/// `a = Σ p_i(t) u^i`, `b = (1 − u^k)/(1 − u)`, and the `u^k`-slice of `a ⊕ b`.
#[derive(Clone, Debug)]
pub struct MinkowskiGadget {
    pub k: usize,
    pub a: ShortGf,
    pub b: ShortGf,
    pub sum: ShortGf,
    /// `[(a ⊕ b) ⋆ u^k/(1 − t)]` with `u ← 1`.
    pub slice: ShortGf,
    /// Whether `supp(slice)` equals the union of the pieces' supports.
    pub matches_union: bool,
}

/// Builds the gadget for univariate pieces supported in `t_box`; the sum is computed by enumeration.
pub fn minkowski_gadget(pieces: &[ShortGf], t_box: &LatticeBox) -> Result<MinkowskiGadget> {
    let k = pieces.len();
    if k == 0 {
        return Err(Error::Invalid("need at least one piece".into()));
    }
    if t_box.dim() != 1 || pieces.iter().any(|p| p.nvars != 1) {
        return Err(Error::Invalid("pieces and box must be univariate".into()));
    }
    let lift = |v: &ExponentVector, u: i64| ev(vec![v.0[0].clone(), BigInt::from(u)]);
    let mut terms = Vec::new();
    let mut index = 0;
    for (i, p) in pieces.iter().enumerate() {
        index = index.max(p.index());
        for t in &p.terms {
            let dens = t.denominators.iter().map(|d| lift(d, 0)).collect();
            terms.push(GfTerm::new(t.coeff.clone(), lift(&t.numerator, i as i64 + 1), dens));
        }
    }
    let a = ShortGf::with_bound(2, index, terms)?;
    let u1 = ev(vec![BigInt::from(0), BigInt::from(1)]);
    let b = ShortGf::new(
        2,
        vec![
            GfTerm::new(one(), ev(vec![BigInt::from(0), BigInt::from(0)]), vec![u1.clone()]),
            GfTerm::new(-one(), ev(vec![BigInt::from(0), BigInt::from(k)]), vec![u1]),
        ],
    )?;
    let u_hi = BigInt::from(2 * k);
    let in_box = LatticeBox::with_bounds(vec![t_box.lo[0].clone(), BigInt::from(0)], vec![t_box.hi[0].clone(), u_hi.clone()]);
    let sum = minkowski_oracle(&a, &b, &in_box, &in_box)?;
    let g = ShortGf::new(
        2,
        vec![GfTerm::new(one(), ev(vec![BigInt::from(0), BigInt::from(k)]), vec![ev(vec![BigInt::from(1), BigInt::from(0)])])],
    )?;
    let extracted = hadamard(&sum, &g, &in_box)?;
    let slice = substitute_with_limits(&extracted, &vec![vec![BigInt::from(1), BigInt::from(0)]])?;
    let got = expand(&slice, t_box)?;
    let mut union = BTreeSet::new();
    for p in pieces {
        union.extend(expand(p, t_box)?.support());
    }
    let matches_union = got.is_zero_one() && got.support() == union;
    Ok(MinkowskiGadget { k, a, b, sum, slice, matches_union })
}
