//! Monomial substitutions `t_j ← u^{V e_j}`, strict and with limits through collapsed factors.

use super::eps::{bernoulli, generic_lambda, EpsSeries, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::gf::{ExponentVector, GfTerm, ShortGf};
use crate::num::{factorial, rat_int, strs, Int, Rat};
use num_traits::{One, Zero};

/// Integer matrix with `rows` new variables and `cols` old variables.
pub type SubstMatrix = Vec<Vec<Int>>;

fn apply(v: &SubstMatrix, e: &ExponentVector) -> ExponentVector {
    ExponentVector(v.iter().map(|row| row.iter().zip(&e.0).map(|(a, b)| a * b).sum()).collect())
}

fn check_shape(f: &ShortGf, v: &SubstMatrix) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Invalid("substitution needs at least one new variable".into()));
    }
    if let Some(r) = v.iter().find(|r| r.len() != f.nvars) {
        return Err(Error::Dimension { expected: f.nvars, got: r.len() });
    }
    Ok(())
}

/// `q(u) = f(t(u))` with exponents mapped linearly; every denominator image must be nonzero.
pub fn substitute_monomials(f: &ShortGf, v: &SubstMatrix) -> Result<ShortGf> {
    check_shape(f, v)?;
    let mut terms = Vec::with_capacity(f.terms.len());
    for (i, t) in f.terms.iter().enumerate() {
        let mut dens = Vec::with_capacity(t.denominators.len());
        for b in &t.denominators {
            let img = apply(v, b);
            if img.is_zero() {
                return Err(Error::ZeroDenominatorImage { term: i, b: strs(&b.0) });
            }
            dens.push(img);
        }
        terms.push(GfTerm::new(t.coeff.clone(), apply(v, &t.numerator), dens));
    }
    ShortGf::with_bound(v.len(), f.index_bound, terms)
}

/// `f(t(u))` as a rational function even when some denominators map to `1 − u^0`.
/// Valid when the substituted function is regular (e.g. `f` has finite support). Each term is
/// perturbed by `t^e ↦ u^{Ve} exp(ε⟨μ, e⟩)` and the `ε^0` coefficient is kept; the index does not grow.
pub fn substitute_with_limits(f: &ShortGf, v: &SubstMatrix) -> Result<ShortGf> {
    substitute_with_limits_seeded(f, v, DEFAULT_SEED)
}

pub fn substitute_with_limits_seeded(f: &ShortGf, v: &SubstMatrix, seed: u64) -> Result<ShortGf> {
    check_shape(f, v)?;
    let m = v.len();
    let collapsed: Vec<&[Int]> = f
        .terms
        .iter()
        .flat_map(|t| t.denominators.iter())
        .filter(|b| apply(v, b).is_zero())
        .map(|b| b.0.as_slice())
        .collect();
    if collapsed.is_empty() {
        return substitute_monomials(f, v);
    }
    let mu = generic_lambda(f.nvars, &collapsed, seed)?;
    let dot = |e: &ExponentVector| rat_int(&e.0.iter().zip(&mu).map(|(a, b)| a * b).sum::<Int>());
    let max_c = f.index_bound.max(1);
    let bern = bernoulli(max_c + 1);
    let stirling = stirling2(max_c);
    let mut terms = Vec::new();
    for t in &f.terms {
        let mut kept = Vec::new();
        let mut coll = Vec::new();
        for b in &t.denominators {
            let img = apply(v, b);
            if img.is_zero() {
                coll.push(dot(b));
            } else {
                kept.push((img, dot(b)));
            }
        }
        let a_img = apply(v, &t.numerator);
        if coll.is_empty() {
            terms.push(GfTerm::new(t.coeff.clone(), a_img, kept.into_iter().map(|(i, _)| i).collect()));
            continue;
        }
        let c = coll.len();
        // S(ε) = Π_collapsed 1/(1 − e^{βε}), lowest order −c, needed up to order 0
        let mut s = EpsSeries::constant(Rat::one(), c as i64);
        for beta in &coll {
            s = s.mul(&EpsSeries::inv_one_minus_exp(beta, c as i64, &bern));
        }
        let e = EpsSeries::exp(&dot(&t.numerator), c as i64);
        let mut orders = vec![0usize; kept.len()];
        distribute(c, 0, &mut orders, &mut |orders: &[usize], rest: usize| {
            // rest splits between exp (k0) and S (ks): k0 + ks = rest, S taken at order ks − c
            let mut scalar = Rat::zero();
            for k0 in 0..=rest {
                let ks = rest - k0;
                scalar += e.coeff(k0 as i64) * s.coeff(ks as i64 - c as i64);
            }
            if scalar.is_zero() {
                return;
            }
            let mut fac = Rat::one();
            for (j, &k) in orders.iter().enumerate() {
                let gamma = &kept[j].1;
                let mut p = Rat::one();
                for _ in 0..k {
                    p *= gamma;
                }
                fac *= p / rat_int(&factorial(k));
            }
            if fac.is_zero() {
                return;
            }
            let base = &t.coeff * &scalar * &fac;
            // expand Π_j D_{k_j}(y_j), D_k(y) = Σ_i S(k,i) i! y^i / (1 − y)^{i+1}
            let mut choice = vec![0usize; kept.len()];
            expand_d(orders, 0, &mut choice, &mut |choice: &[usize]| {
                let mut coeff = base.clone();
                let mut num = a_img.clone();
                let mut dens = Vec::new();
                for (j, &i) in choice.iter().enumerate() {
                    let k = orders[j];
                    coeff *= rat_int(&(&stirling[k][i] * factorial(i)));
                    num = num.add(&kept[j].0.scale(&Int::from(i)));
                    for _ in 0..=i {
                        dens.push(kept[j].0.clone());
                    }
                }
                if !coeff.is_zero() {
                    terms.push(GfTerm::new(coeff, num, dens));
                }
            });
        });
    }
    Ok(ShortGf::with_bound(m, f.index_bound, terms)?.normalize())
}

/// Calls `f(orders, rest)` for every way to give `orders[j]` units to kept factors, leaving `rest`.
fn distribute(total: usize, j: usize, orders: &mut Vec<usize>, f: &mut dyn FnMut(&[usize], usize)) {
    if j == orders.len() {
        f(orders, total);
        return;
    }
    for k in 0..=total {
        orders[j] = k;
        distribute(total - k, j + 1, orders, f);
    }
    orders[j] = 0;
}

fn expand_d(orders: &[usize], j: usize, choice: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if j == orders.len() {
        f(choice);
        return;
    }
    let lo = if orders[j] == 0 { 0 } else { 1 };
    for i in lo..=orders[j] {
        choice[j] = i;
        expand_d(orders, j + 1, choice, f);
    }
    choice[j] = 0;
}

/// Stirling numbers of the second kind `S(k, i)` for `k, i ≤ n`.
fn stirling2(n: usize) -> Vec<Vec<Int>> {
    let mut s = vec![vec![Int::zero(); n + 1]; n + 1];
    s[0][0] = Int::one();
    for k in 1..=n {
        for i in 1..=k {
            s[k][i] = Int::from(i) * &s[k - 1][i] + &s[k - 1][i - 1];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{expand, LatticeBox};
    use crate::num::{ints, rat};

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(v)
    }

    #[test]
    fn tau_substitution() {
        let f = ShortGf::monomial(ev(&[1, 1]));
        let g = substitute_monomials(&f, &vec![ints(&[1, 4])]).unwrap();
        assert_eq!(g.terms[0].numerator, ev(&[5]));
    }

    #[test]
    fn collapse_to_one_variable() {
        let f = ShortGf::new(1 + 1, vec![GfTerm::new(rat(1), ev(&[0, 0]), vec![ev(&[1, 0]), ev(&[0, 1])])]).unwrap();
        let g = substitute_monomials(&f, &vec![ints(&[1, 1])]).unwrap();
        let t = expand(&g, &LatticeBox::from_u64(&[5])).unwrap();
        assert_eq!(t.get(&ev(&[3])), rat(4));
    }

    #[test]
    fn zero_image_rejected() {
        let f = ShortGf::new(2, vec![GfTerm::new(rat(1), ev(&[0, 0]), vec![ev(&[1, -4])])]).unwrap();
        let g = substitute_monomials(&f, &vec![ints(&[1, 4])]).unwrap();
        assert_eq!(g.terms[0].denominators[0], ev(&[-15]));
        let f = ShortGf::new(2, vec![GfTerm::new(rat(1), ev(&[0, 0]), vec![ev(&[4, -1])])]).unwrap();
        assert!(matches!(
            substitute_monomials(&f, &vec![ints(&[1, 4])]),
            Err(Error::ZeroDenominatorImage { .. })
        ));
    }

    #[test]
    fn limits_project_triangle() {
        // Σ_{x+y ≤ 3} t^x u^y, then u ← 1: coefficient of t^x is 4 − x
        let p = crate::barvinok::Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1], vec![1, 1]], &[0, 0, 3]);
        let f = crate::barvinok::polytope_gf(&p).unwrap();
        let g = substitute_with_limits(&f, &vec![ints(&[1, 0])]).unwrap();
        assert!(g.index() <= 2);
        let t = expand(&g, &LatticeBox::from_u64(&[8])).unwrap();
        for x in 0..8 {
            assert_eq!(t.get(&ev(&[x])), rat((4 - x).max(0)), "x = {x}");
        }
        for seed in [1, 2, 3] {
            let g = substitute_with_limits_seeded(&f, &vec![ints(&[1, 0])], seed).unwrap();
            assert_eq!(expand(&g, &LatticeBox::from_u64(&[8])).unwrap(), t);
        }
    }
}
