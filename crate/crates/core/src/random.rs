//! Seeded generators of random test objects: polytopes, boxed GFs and quantifier-free formulas.

use crate::barvinok::{polytope_gf, Polyhedron};
use crate::calculus::{compress, TauMap};
use crate::gf::{ExponentVector, GfTerm, ShortGf};
use crate::num::{int, rat, rat_frac, Rat};
use crate::presburger::{Formula, LinearAtom};
use std::ops::RangeInclusive;
use rand::Rng;

/// Random polytope: a box of half-width ≤ `c` cut by a few random rational halfspaces.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, c: i64) -> Polyhedron {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for j in 0..n {
        let mut up = vec![rat(0); n];
        up[j] = rat(1);
        a.push(up);
        b.push(rat(rng.gen_range(0..=c / 2)));
        let mut dn = vec![rat(0); n];
        dn[j] = rat(-1);
        a.push(dn);
        b.push(rat(rng.gen_range(0..=c / 2)));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let row: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-c..=c))).collect();
        a.push(row);
        b.push(rat_frac(rng.gen_range(-c..=c * 2), rng.gen_range(1..=3)));
    }
    Polyhedron::new(a, b, n).expect("consistent dimensions")
}

/// Random polytope inside `[0, 2^r)^n`.
fn boxed_polytope<R: Rng>(rng: &mut R, n: usize, r: u32) -> Polyhedron {
    let top = (1i64 << r) - 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for j in 0..n {
        let lo = rng.gen_range(0..=top);
        let hi = rng.gen_range(lo..=top);
        let mut up = vec![rat(0); n];
        up[j] = rat(1);
        a.push(up);
        b.push(rat(hi));
        let mut dn = vec![rat(0); n];
        dn[j] = rat(-1);
        a.push(dn);
        b.push(rat(-lo));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let row: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect();
        let rhs = rng.gen_range(0..=top * 3);
        a.push(row);
        b.push(rat(rhs));
    }
    Polyhedron::new(a, b, n).expect("consistent dimensions")
}

/// `t^a (1 − t^{k d}) / (1 − t^d)` in one variable, inside `[0, 2^r)`.
fn progression<R: Rng>(rng: &mut R, r: u32) -> ShortGf {
    let top = 1i64 << r;
    let a = rng.gen_range(0..top);
    let d = rng.gen_range(1..=(top - a).clamp(1, 9));
    let k = rng.gen_range(1..=((top - 1 - a) / d + 1));
    let ev = |v: i64| ExponentVector::from_i64(&[v]);
    ShortGf::new(
        1,
        vec![GfTerm::new(rat(1), ev(a), vec![ev(d)]), GfTerm::new(rat(-1), ev(a + k * d), vec![ev(d)])],
    )
    .expect("well-formed")
}

/// A random GF (0/1 coefficients) of index ≤ 2 in `n ∈ {1, 2}` variables supported in `[0, 2^r)^n`.
pub fn random_boxed_gf<R: Rng>(rng: &mut R, n: usize, r: u32) -> ShortGf {
    match (n, rng.gen_range(0..3)) {
        (1, 0) => progression(rng, r),
        (1, 1) => polytope_gf(&boxed_polytope(rng, 1, r)).expect("bounded"),
        (1, _) => {
            // τ-compressed two-dimensional polytope: index 2 in one variable
            let half = r / 2;
            let p = boxed_polytope(rng, 2, half);
            let g = polytope_gf(&p).expect("bounded");
            let tau = TauMap::new(half, vec![2]).expect("valid");
            compress(&g, &tau).expect("compressible").0
        }
        (2, 0) => {
            let x = progression(rng, r);
            let y = progression(rng, r);
            let lift = |f: &ShortGf, coord: usize| -> ShortGf {
                let terms = f
                    .terms
                    .iter()
                    .map(|t| {
                        let embed = |v: &ExponentVector| {
                            let mut e = vec![int(0); 2];
                            e[coord] = v.0[0].clone();
                            ExponentVector(e)
                        };
                        GfTerm::new(t.coeff.clone(), embed(&t.numerator), t.denominators.iter().map(embed).collect())
                    })
                    .collect();
                ShortGf::new(2, terms).expect("well-formed")
            };
            lift(&x, 0).mul(&lift(&y, 1))
        }
        (_, _) => polytope_gf(&boxed_polytope(rng, n, r)).expect("bounded"),
    }
}

/// Random quantifier-free formula: `atoms` atoms with coefficients in `[−3, 3]` and right-hand
/// sides drawn from `rhs`, combined by a random binary tree of `∧`/`∨` with occasional negation.
pub fn random_qf_formula<R: Rng>(rng: &mut R, names: &[&str], atoms: usize, rhs: RangeInclusive<i64>) -> Formula {
    let mut pool: Vec<Formula> = (0..atoms.max(1))
        .map(|_| {
            let coeffs = names.iter().map(|v| (v.to_string(), int(rng.gen_range(-3..=3)))).collect();
            Formula::Atom(LinearAtom::new(coeffs, int(rng.gen_range(rhs.clone()))))
        })
        .collect();
    while pool.len() > 1 {
        let i = rng.gen_range(0..pool.len());
        let a = pool.swap_remove(i);
        let j = rng.gen_range(0..pool.len());
        let b = pool.swap_remove(j);
        let a = if rng.gen_bool(0.25) { Formula::Not(Box::new(a)) } else { a };
        pool.push(if rng.gen_bool(0.5) { Formula::And(vec![a, b]) } else { Formula::Or(vec![a, b]) });
    }
    pool.pop().expect("nonempty pool")
}
