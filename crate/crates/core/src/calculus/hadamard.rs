use super::subst::substitute_with_limits;
use crate::barvinok::polytope_gf_with_equalities;
use crate::error::{Error, Result};
use crate::gf::{canonicalize, ExpansionDirection, ExponentVector, GfTerm, LatticeBox, ShortGf};
use crate::num::Int;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn oriented(f: &ShortGf) -> Result<ShortGf> {
    let dir = f.orientation.clone().unwrap_or_else(|| ExpansionDirection::default_for(f.nvars));
    canonicalize(f, &dir)
}

fn apply_tau(tau: &[Vec<Int>], x: &[Int]) -> Vec<Int> {
    tau.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `C(t) = Σ_{x ∈ box} α_x β_{τ(x)} t^x` for `A = Σ α_x t^x` over `n` variables and
/// `B = Σ β_y s^y` over `m` variables, with `τ` an `m × n` integer matrix. Both operands are
/// expanded in their canonical (positive) orientation. Per pair of terms the lattice points
/// `(ζ, ξ) ≥ 0` with `a + Σ ζ_i b_i` in the box and `τ(a + Σ ζ_i b_i) = c + Σ ξ_j d_j` are
/// encoded by a Barvinok GF in `(w, v)`, followed by `w_i ← t^{b_i}`, `v_j ← 1`.
pub fn tau_hadamard(a: &ShortGf, b: &ShortGf, tau: &[Vec<Int>], bx: &LatticeBox) -> Result<ShortGf> {
    let n = a.nvars;
    let m = b.nvars;
    if tau.len() != m || tau.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid(format!("τ must be {m} × {n}")));
    }
    if bx.dim() != n {
        return Err(Error::Dimension { expected: n, got: bx.dim() });
    }
    let a = oriented(a)?;
    let b = oriented(b)?;
    let mut out = ShortGf::zero(n).bounded(a.index_bound + b.index_bound);
    for ta in &a.terms {
        let tau_a = apply_tau(tau, &ta.numerator.0);
        let tau_bs: Vec<Vec<Int>> = ta.denominators.iter().map(|bv| apply_tau(tau, &bv.0)).collect();
        for tb in &b.terms {
            let part = pair(ta, &tau_a, &tau_bs, tb, bx)?;
            out.terms.extend(part.terms);
        }
    }
    Ok(out)
}

/// Coefficientwise product restricted to `box` (τ = identity).
pub fn hadamard(f: &ShortGf, g: &ShortGf, bx: &LatticeBox) -> Result<ShortGf> {
    if f.nvars != g.nvars {
        return Err(Error::Dimension { expected: f.nvars, got: g.nvars });
    }
    let n = f.nvars;
    let id: Vec<Vec<Int>> = (0..n).map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect()).collect();
    tau_hadamard(f, g, &id, bx)
}

fn pair(ta: &GfTerm, tau_a: &[Int], tau_bs: &[Vec<Int>], tb: &GfTerm, bx: &LatticeBox) -> Result<ShortGf> {
    let n = ta.numerator.len();
    let m = tb.numerator.len();
    let p = ta.denominators.len();
    let q = tb.denominators.len();
    let coeff = &ta.coeff * &tb.coeff;
    if p == 0 && q <= 1 {
        // x = a is fixed; count ξ ≥ 0 with c + ξ d = τ(a) directly
        if !bx.contains(&ta.numerator) {
            return Ok(ShortGf::zero(n));
        }
        let diff: Vec<Int> = tau_a.iter().zip(&tb.numerator.0).map(|(x, c)| x - c).collect();
        let hit = if q == 0 { diff.iter().all(|x| x.is_zero()) } else { single_multiple(&diff, &tb.denominators[0].0) };
        return Ok(if hit {
            ShortGf::new(n, vec![GfTerm::monomial(coeff, ta.numerator.clone())])?
        } else {
            ShortGf::zero(n)
        });
    }
    let dim = p + q;
    let mut ineq = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..dim {
        let mut row = vec![Int::zero(); dim];
        row[i] = -Int::from(1);
        ineq.push(row);
        rhs.push(Int::zero());
    }
    for r in 0..n {
        let coef: Vec<Int> = (0..dim)
            .map(|i| if i < p { ta.denominators[i].0[r].clone() } else { Int::zero() })
            .collect();
        if coef.iter().all(|c| c.is_zero()) {
            let ar = &ta.numerator.0[r];
            if *ar < bx.lo[r] || *ar >= bx.hi[r] {
                return Ok(ShortGf::zero(n));
            }
            continue;
        }
        ineq.push(coef.clone());
        rhs.push(&bx.hi[r] - 1 - &ta.numerator.0[r]);
        ineq.push(coef.iter().map(|c| -c).collect());
        rhs.push(&ta.numerator.0[r] - &bx.lo[r]);
    }
    let mut eqs = Vec::new();
    let mut eq_rhs = Vec::new();
    for k in 0..m {
        let row: Vec<Int> = (0..dim)
            .map(|i| if i < p { tau_bs[i][k].clone() } else { -tb.denominators[i - p].0[k].clone() })
            .collect();
        eqs.push(row);
        eq_rhs.push(&tb.numerator.0[k] - &tau_a[k]);
    }
    let d = polytope_gf_with_equalities(&ineq, &rhs, &eqs, &eq_rhs, dim)?;
    if d.terms.is_empty() {
        return Ok(ShortGf::zero(n));
    }
    // (ζ, ξ) ↦ Σ ζ_i b_i
    let v: Vec<Vec<Int>> = (0..n)
        .map(|r| (0..dim).map(|i| if i < p { ta.denominators[i].0[r].clone() } else { Int::zero() }).collect())
        .collect();
    let c = substitute_with_limits(&d, &v)?;
    Ok(c.shift(&ta.numerator).scale(&coeff))
}

/// Is `diff = ξ d` for some integer `ξ ≥ 0`?
fn single_multiple(diff: &[Int], d: &[Int]) -> bool {
    let mut xi: Option<Int> = None;
    for (x, dv) in diff.iter().zip(d) {
        if dv.is_zero() {
            if !x.is_zero() {
                return false;
            }
            continue;
        }
        if !x.is_multiple_of(dv) {
            return false;
        }
        let k = x / dv;
        if k.is_negative() {
            return false;
        }
        match &xi {
            None => xi = Some(k),
            Some(prev) if *prev != k => return false,
            _ => {}
        }
    }
    true
}

/// The monomial-extraction special case: `β_{τ(a0)} t^{a0}`.
pub fn monomial_hadamard(f: &ShortGf, a0: &ExponentVector) -> Result<ShortGf> {
    hadamard(&ShortGf::monomial(a0.clone()), f, &LatticeBox::point(a0))
}
