//! Lattice-point generating functions of rational polytopes via Brion's theorem and Barvinok's
//! signed unimodular decomposition.

mod cone;
mod polyhedron;
mod triangulate;

pub use cone::{cone_gf, sign_decompose, SignedCone};
pub use polyhedron::{parse_polyhedron, Polyhedron, TangentCone};
pub use triangulate::triangulate;

use crate::error::{Error, Result};
use crate::gf::{ExponentVector, GfTerm, ShortGf};
use crate::linalg::integer_solutions;
use crate::lp::{maximize, LpResult};
use crate::num::{floor_rat, primitive_int, rat, rat_int, Int, Rat};
use cone::{decompose_dual, dual_generators, unimodular_term};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Vertices of a bounded full-dimensional polyhedron with their tangent cones.
pub fn vertex_cones(p: &Polyhedron) -> Result<Vec<(Vec<Rat>, TangentCone)>> {
    p.vertex_cones()
}

/// `F(P ∩ Z^n; t)` for a rational polytope `P`, of index at most `n`.
pub fn polytope_gf(p: &Polyhedron) -> Result<ShortGf> {
    let Some((rows, rhs)) = tighten(&p.a, &p.b) else {
        return Ok(ShortGf::zero(p.n).bounded(p.n));
    };
    lattice_gf(rows, rhs, p.n).map(|g| g.bounded(p.n))
}

/// `F(P ∩ Z^n; t)` for `P = {x : a x ≤ b, e x = f}` given integer data.
pub fn polytope_gf_with_equalities(
    a: &[Vec<Int>],
    b: &[Int],
    e: &[Vec<Int>],
    f: &[Int],
    n: usize,
) -> Result<ShortGf> {
    let Some((x0, basis)) = integer_solutions(e, f, n) else {
        return Ok(ShortGf::zero(n).bounded(n));
    };
    reparametrized_gf(a, b, &x0, &basis, n)
}

/// Integer-tighten rows: `a x ≤ b` with rational data becomes primitive integer `a' x ≤ ⌊b'⌋`.
/// Returns `None` if some zero row is violated.
pub(crate) fn tighten(a: &[Vec<Rat>], b: &[Rat]) -> Option<(Vec<Vec<Int>>, Vec<Int>)> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut seen = BTreeSet::new();
    for (row, bi) in a.iter().zip(b) {
        let l = row.iter().fold(bi.denom().clone(), |l, x| l.lcm(x.denom()));
        let ints: Vec<Int> = row.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
        let bb = bi * rat_int(&l);
        let g = ints.iter().fold(Int::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            if bb.is_negative() {
                return None;
            }
            continue;
        }
        let prim: Vec<Int> = ints.iter().map(|x| x / &g).collect();
        let bt = floor_rat(&(bb / rat_int(&g)));
        if seen.insert((prim.clone(), bt.clone())) {
            rows.push(prim);
            rhs.push(bt);
        }
    }
    Some((rows, rhs))
}

fn rat_rows(a: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    a.iter().map(|r| r.iter().map(rat_int).collect()).collect()
}

/// GF of `{x ∈ Z^n : a x ≤ b}` for primitive integer rows.
fn lattice_gf(a: Vec<Vec<Int>>, b: Vec<Int>, n: usize) -> Result<ShortGf> {
    let ar = rat_rows(&a);
    let br: Vec<Rat> = b.iter().map(rat_int).collect();
    // max s subject to a x + s ≤ b, s ≤ 1: decides emptiness and full-dimensionality at once
    let mut a_s: Vec<Vec<Rat>> = ar.iter().map(|r| {
        let mut r = r.clone();
        r.push(rat(1));
        r
    }).collect();
    let mut b_s = br.clone();
    let mut cap = vec![Rat::zero(); n];
    cap.push(rat(1));
    a_s.push(cap);
    b_s.push(rat(1));
    let mut obj = vec![Rat::zero(); n];
    obj.push(rat(1));
    let slack = match maximize(&a_s, &b_s, &obj) {
        LpResult::Infeasible => return Ok(ShortGf::zero(n)),
        LpResult::Unbounded => unreachable!("slack is capped"),
        LpResult::Optimal { value, .. } => value,
    };
    if slack.is_negative() {
        return Ok(ShortGf::zero(n));
    }
    check_bounded(&ar, &br, n)?;
    if slack.is_positive() {
        let p = Polyhedron::new(ar, br, n)?;
        return full_dim_gf(&p);
    }
    // implicit equalities: rows whose slack is identically zero on P
    let mut eq_rows = Vec::new();
    let mut eq_rhs = Vec::new();
    let mut ineq_rows = Vec::new();
    let mut ineq_rhs = Vec::new();
    for i in 0..a.len() {
        let neg: Vec<Rat> = ar[i].iter().map(|x| -x).collect();
        let implicit = match maximize(&ar, &br, &neg) {
            LpResult::Optimal { value, .. } => -value == br[i],
            _ => false,
        };
        if implicit {
            eq_rows.push(a[i].clone());
            eq_rhs.push(b[i].clone());
        } else {
            ineq_rows.push(a[i].clone());
            ineq_rhs.push(b[i].clone());
        }
    }
    let Some((x0, basis)) = integer_solutions(&eq_rows, &eq_rhs, n) else {
        return Ok(ShortGf::zero(n));
    };
    reparametrized_gf(&ineq_rows, &ineq_rhs, &x0, &basis, n)
}

/// GF of `{x0 + L λ : a (x0 + L λ) ≤ b}` computed in `λ`-space and mapped back by the
/// (injective) monomial substitution `s^λ ↦ t^{x0 + L λ}`.
fn reparametrized_gf(a: &[Vec<Int>], b: &[Int], x0: &[Int], basis: &[Vec<Int>], n: usize) -> Result<ShortGf> {
    let d = basis.len();
    if d == 0 {
        let ok = a.iter().zip(b).all(|(row, bi)| row.iter().zip(x0).map(|(p, q)| p * q).sum::<Int>() <= *bi);
        return Ok(if ok { ShortGf::monomial(ExponentVector(x0.to_vec())) } else { ShortGf::zero(n) });
    }
    let mut ra = Vec::with_capacity(a.len());
    let mut rb = Vec::with_capacity(a.len());
    for (row, bi) in a.iter().zip(b) {
        let coef: Vec<Int> = (0..d).map(|j| row.iter().zip(&basis[j]).map(|(p, q)| p * q).sum()).collect();
        let shift: Int = row.iter().zip(x0).map(|(p, q)| p * q).sum();
        let rhs = bi - shift;
        if coef.iter().all(|c| c.is_zero()) {
            if rhs.is_negative() {
                return Ok(ShortGf::zero(n));
            }
            continue;
        }
        let g = coef.iter().fold(Int::zero(), |g, x| g.gcd(x));
        ra.push(coef.iter().map(|c| c / &g).collect());
        rb.push(rhs.div_floor(&g));
    }
    let inner = lattice_gf(ra, rb, d)?;
    let map = |v: &ExponentVector| -> ExponentVector {
        ExponentVector((0..n).map(|r| (0..d).map(|j| &basis[j][r] * &v.0[j]).sum()).collect())
    };
    let x0v = ExponentVector(x0.to_vec());
    let terms = inner
        .terms
        .iter()
        .map(|t| GfTerm::new(t.coeff.clone(), map(&t.numerator).add(&x0v), t.denominators.iter().map(map).collect()))
        .collect();
    ShortGf::new(n, terms)
}

fn check_bounded(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Result<()> {
    for j in 0..n {
        for s in [1, -1] {
            let mut c = vec![Rat::zero(); n];
            c[j] = rat(s);
            if maximize(a, b, &c) == LpResult::Unbounded {
                return Err(Error::Unbounded);
            }
        }
    }
    Ok(())
}

/// Brion summation for a bounded full-dimensional polytope with primitive integer rows.
fn full_dim_gf(p: &Polyhedron) -> Result<ShortGf> {
    let n = p.n;
    let mut terms = Vec::new();
    for (v, tc) in p.vertex_cones_unchecked()? {
        // dual of {y : a_i y ≤ 0} is cone{−a_i}
        let mut dual: Vec<Vec<Int>> = Vec::new();
        for a in &tc.normals {
            let g = primitive_int(&a.iter().map(|x| -x).collect::<Vec<_>>());
            if !dual.contains(&g) {
                dual.push(g);
            }
        }
        let simplices = if dual.len() == n { vec![(0..n).collect()] } else { triangulate(&dual, n) };
        for s in simplices {
            let u: Vec<Vec<Int>> = s.iter().map(|&i| dual[i].clone()).collect();
            let mut parts = Vec::new();
            decompose_dual(u, 1, &mut parts)?;
            for (sign, uu) in parts {
                let gens = dual_generators(&uu);
                terms.push(unimodular_term(&v, &gens, sign));
            }
        }
    }
    ShortGf::new(n, terms)
}

/// `1 / Π (1 − t^{b_j})`: the generating function of the numerical semigroup `N⟨b_1, …, b_k⟩`.
pub fn semigroup_gf(b: &[Int]) -> Result<ShortGf> {
    if b.is_empty() || b.iter().any(|x| !x.is_positive()) {
        return Err(Error::Invalid("semigroup generators must be positive".into()));
    }
    let dens = b.iter().map(|x| ExponentVector(vec![x.clone()])).collect();
    ShortGf::new(1, vec![GfTerm::new(Rat::one(), ExponentVector(vec![Int::zero()]), dens)])
}
