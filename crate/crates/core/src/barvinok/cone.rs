//! Simplicial cones, Barvinok's signed decomposition, and unimodular cone generating functions.

use crate::error::{Error, Result};
use crate::gf::{ExponentVector, GfTerm, ShortGf};
use crate::linalg::{adjugate, column_hnf, det_int, inverse, to_rat_mat};
use crate::num::{ceil_rat, primitive, rat_int, Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `sign · [apex + cone(generators)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCone {
    pub apex: Vec<Rat>,
    pub generators: Vec<Vec<Int>>,
    pub sign: i32,
}

impl SignedCone {
    pub fn new(apex: Vec<Rat>, generators: Vec<Vec<Int>>, sign: i32) -> Self {
        SignedCone { apex, generators, sign }
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    pub fn index(&self) -> Int {
        det_int(&self.generators).abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.generators.len() == self.dim() && self.index().is_one()
    }
}

/// Rows of the primitive dual basis: `d_i · g_j = 0` for `i ≠ j` and `d_i · g_i > 0`.
pub(crate) fn dual_generators(gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    // columns of inverse(G^T) scaled; G^T has rows g_j, so inverse(rows g_j) has columns e_j-duals
    let inv = inverse(&to_rat_mat(gens)).expect("simplicial cone generators must be independent");
    let n = gens.len();
    (0..n)
        .map(|i| {
            let col: Vec<Rat> = (0..n).map(|r| inv[r][i].clone()).collect();
            primitive(&col)
        })
        .collect()
}

/// Decompose a simplicial cone into unimodular signed cones (identity of generating functions).
/// Works on the dual cone and dualizes back, so the dropped lower-dimensional dual pieces become
/// cones with lines, whose generating functions vanish.
pub fn sign_decompose(c: &SignedCone) -> Result<Vec<SignedCone>> {
    if c.generators.len() != c.dim() || det_int(&c.generators).is_zero() {
        return Err(Error::Invalid("sign_decompose needs a simplicial full-dimensional cone".into()));
    }
    if c.is_unimodular() {
        return Ok(vec![c.clone()]);
    }
    let dual = dual_generators(&c.generators);
    let mut out = Vec::new();
    decompose_dual(dual, c.sign, &mut out)?;
    Ok(out
        .into_iter()
        .map(|(s, u)| SignedCone::new(c.apex.clone(), dual_generators(&u), s))
        .collect())
}

const MAX_ENUM_INDEX: i128 = 50_000_000;

/// Barvinok recursion on a simplicial cone given by integer generators `u`; pushes
/// `(sign, unimodular generators)`.
pub(crate) fn decompose_dual(u: Vec<Vec<Int>>, sign: i32, out: &mut Vec<(i32, Vec<Vec<Int>>)>) -> Result<()> {
    let det = det_int(&u);
    if det.abs().is_one() {
        out.push((sign, u));
        return Ok(());
    }
    let (w, alpha) = short_vector(&u, &det)?;
    for i in 0..u.len() {
        if alpha[i] == 0 {
            continue;
        }
        let mut ki = u.clone();
        ki[i] = w.clone();
        let s = if alpha[i] > 0 { sign } else { -sign };
        decompose_dual(ki, s, out)?;
    }
    Ok(())
}

/// A nonzero lattice vector `w = Σ α_i u_i` minimizing `max |α_i|` over the nontrivial cosets of
/// `Z^n / (Σ Z u_i)`. Returns `w` and the integers `α_i · |det|`, normalized so some `α_i > 0`.
fn short_vector(u: &[Vec<Int>], det: &Int) -> Result<(Vec<Int>, Vec<i128>)> {
    let n = u.len();
    let d_abs = det.abs().to_i128().filter(|&d| d <= MAX_ENUM_INDEX).ok_or_else(|| {
        Error::Resource(format!("cone index {det} too large for parallelepiped enumeration"))
    })?;
    let h = column_hnf(u, n);
    let diag: Vec<i128> = (0..n).map(|i| h[i][i].to_i128().unwrap()).collect();
    // α = M^{-1} w with M the matrix whose columns are u_i; M^{-1} = adj(M)/det(M)
    let m_rows: Vec<Vec<Int>> = (0..n).map(|r| (0..n).map(|c| u[c][r].clone()).collect()).collect();
    let adj = adjugate(&m_rows);
    let dsign: i128 = if det.is_negative() { -1 } else { 1 };
    let adj_i: Vec<Vec<i128>> = adj
        .iter()
        .map(|row| row.iter().map(|v| v.to_i128().map(|x| x * dsign)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Overflow("adjugate entries".into()))?;
    let reduce = |x: i128| -> i128 {
        let r = x.rem_euclid(d_abs);
        if 2 * r > d_abs {
            r - d_abs
        } else {
            r
        }
    };
    let mut w = vec![0i128; n];
    let mut num = vec![0i128; n];
    let mut best: Option<(i128, Vec<i128>)> = None;
    loop {
        // advance odometer over 0 <= w_i < diag_i, updating num = adj · w incrementally
        let mut i = n;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            w[i] += 1;
            for r in 0..n {
                num[r] += adj_i[r][i];
            }
            if w[i] < diag[i] {
                break false;
            }
            for r in 0..n {
                num[r] -= adj_i[r][i] * w[i];
            }
            w[i] = 0;
        };
        if done {
            break;
        }
        let red: Vec<i128> = num.iter().map(|&x| reduce(x)).collect();
        let score = red.iter().map(|x| x.abs()).max().unwrap();
        if score == 0 {
            continue;
        }
        if best.as_ref().map_or(true, |(s, _)| score < *s) {
            best = Some((score, red));
        }
    }
    let (_, mut alpha) = best.expect("index > 1 has a nontrivial coset");
    if alpha.iter().all(|&a| a <= 0) {
        alpha.iter_mut().for_each(|a| *a = -*a);
    }
    let d = Int::from(d_abs);
    let wv: Vec<Int> = (0..n)
        .map(|r| {
            let s: Int = (0..n).map(|i| &u[i][r] * Int::from(alpha[i])).sum();
            debug_assert!((&s % &d).is_zero());
            s / &d
        })
        .collect();
    Ok((wv, alpha))
}

/// `sign · t^a / Π (1 − t^{g_i})` with `a` the lattice point of `apex + Σ [0,1) g_i`.
pub fn cone_gf(c: &SignedCone) -> Result<ShortGf> {
    if !c.is_unimodular() {
        return Err(Error::NotUnimodular(c.index().to_string()));
    }
    Ok(ShortGf::new(c.dim(), vec![unimodular_term(&c.apex, &c.generators, c.sign)])
        .expect("unimodular cone term is well-formed"))
}

pub(crate) fn unimodular_term(apex: &[Rat], gens: &[Vec<Int>], sign: i32) -> GfTerm {
    let n = apex.len();
    // β = G^{-1} apex with G's columns the generators
    let g_rows: Vec<Vec<Int>> = (0..n).map(|r| (0..n).map(|c| gens[c][r].clone()).collect()).collect();
    let inv = inverse(&to_rat_mat(&g_rows)).expect("unimodular");
    let mut a = vec![Int::zero(); n];
    for j in 0..n {
        let beta: Rat = (0..n).fold(Rat::zero(), |s, k| s + &inv[j][k] * &apex[k]);
        let cb = ceil_rat(&beta);
        for r in 0..n {
            a[r] += &cb * &gens[j][r];
        }
    }
    GfTerm::new(
        rat_int(&Int::from(sign)),
        ExponentVector(a),
        gens.iter().map(|g| ExponentVector(g.clone())).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{expand, LatticeBox};
    use crate::num::{int, ints, rat, rat_frac};
    use std::collections::BTreeMap;

    fn in_cone(gens: &[Vec<Int>], p: &[i64]) -> bool {
        let n = gens.len();
        let g_rows: Vec<Vec<Int>> = (0..n).map(|r| (0..n).map(|c| gens[c][r].clone()).collect()).collect();
        let inv = inverse(&to_rat_mat(&g_rows)).unwrap();
        (0..n).all(|j| (0..n).fold(Rat::zero(), |s, k| s + &inv[j][k] * rat(p[k])) >= Rat::zero())
    }

    /// Signed sum of the canonical expansions equals the brute-force indicator of the cone.
    fn check_decomposition(gens: Vec<Vec<Int>>, size: u64) -> usize {
        let c = SignedCone::new(vec![Rat::zero(); gens.len()], gens.clone(), 1);
        let parts = sign_decompose(&c).unwrap();
        let bx = LatticeBox::cube(gens.len(), size);
        let mut total = ShortGf::zero(gens.len());
        for p in &parts {
            assert!(p.is_unimodular());
            total = total.add(&cone_gf(p).unwrap());
        }
        let table = expand(&total, &bx).unwrap();
        let mut want = BTreeMap::new();
        for pt in bx.points() {
            let v: Vec<i64> = pt.to_i64().unwrap();
            if in_cone(&gens, &v) {
                want.insert(pt, rat(1));
            }
        }
        assert_eq!(table.entries, want);
        parts.len()
    }

    #[test]
    fn unimodular_is_identity() {
        let c = SignedCone::new(vec![rat(0), rat(0)], vec![ints(&[1, 0]), ints(&[0, 1])], 1);
        assert_eq!(sign_decompose(&c).unwrap(), vec![c]);
    }

    #[test]
    fn index_two_cone() {
        check_decomposition(vec![ints(&[1, 0]), ints(&[1, 2])], 6);
    }

    #[test]
    fn index_five_cone_small_output() {
        let k = check_decomposition(vec![ints(&[1, 0]), ints(&[1, 5])], 8);
        assert!(k <= 6, "{k} cones");
    }

    #[test]
    fn three_dim_cones() {
        check_decomposition(vec![ints(&[1, 0, 0]), ints(&[1, 3, 0]), ints(&[1, 1, 4])], 7);
        check_decomposition(vec![ints(&[2, 1, 0]), ints(&[0, 3, 1]), ints(&[1, 0, 5])], 7);
    }

    #[test]
    fn cone_gf_examples() {
        let c = SignedCone::new(vec![rat(0)], vec![ints(&[1])], 1);
        let f = cone_gf(&c).unwrap();
        assert_eq!(f.terms[0].numerator, ExponentVector::from_i64(&[0]));
        let c = SignedCone::new(vec![rat_frac(1, 2)], vec![ints(&[1])], 1);
        assert_eq!(cone_gf(&c).unwrap().terms[0].numerator, ExponentVector::from_i64(&[1]));
        let c = SignedCone::new(vec![rat(0), rat(0)], vec![ints(&[1, 0]), ints(&[0, 1])], 1);
        let t = expand(&cone_gf(&c).unwrap(), &LatticeBox::cube(2, 4)).unwrap();
        assert_eq!(t.entries.len(), 16);
        assert!(t.is_zero_one());
        let bad = SignedCone::new(vec![rat(0), rat(0)], vec![ints(&[1, 0]), ints(&[1, 2])], 1);
        assert!(cone_gf(&bad).is_err());
        let _ = int(0);
    }
}
