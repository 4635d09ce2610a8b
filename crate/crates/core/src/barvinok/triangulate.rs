//! Pulling triangulation of pointed cones, lexicographic in generator order.

use crate::linalg::{kernel, rank};
use crate::num::{rat_int, Int, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Simplicial cones (index lists into `gens`) triangulating `cone(gens)`, a full-dimensional pointed
/// cone in `R^n`. Generators must be pairwise non-parallel.
pub fn triangulate(gens: &[Vec<Int>], n: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..gens.len()).collect();
    let mut out = Vec::new();
    pull(gens, &idx, n, &mut out);
    out
}

fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_int).collect()
}

fn dot(a: &[Rat], b: &[Int]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * rat_int(y))
}

fn pull(gens: &[Vec<Int>], idx: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    if idx.len() == k {
        out.push(idx.to_vec());
        return;
    }
    let r0 = idx[0];
    for facet in facets(gens, idx, k) {
        if facet.contains(&r0) {
            continue;
        }
        let mut sub = Vec::new();
        pull(gens, &facet, k - 1, &mut sub);
        for mut s in sub {
            s.insert(0, r0);
            out.push(s);
        }
    }
}

/// Facets of `cone(gens[idx])`, whose linear span has dimension `k`, as sorted index lists.
fn facets(gens: &[Vec<Int>], idx: &[usize], k: usize) -> Vec<Vec<usize>> {
    // basis of the span, chosen greedily in generator order
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for &i in idx {
        let mut trial = basis.clone();
        trial.push(to_rat(&gens[i]));
        let n = gens[i].len();
        if rank(&trial, n) == trial.len() {
            basis = trial;
        }
        if basis.len() == k {
            break;
        }
    }
    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    let mut subset = Vec::with_capacity(k - 1);
    choose(idx, k - 1, 0, &mut subset, &mut |t: &[usize]| {
        // normal h in span(basis) orthogonal to every generator in t
        let m: Vec<Vec<Rat>> = t
            .iter()
            .map(|&g| basis.iter().map(|b| dot(b, &gens[g])).collect())
            .collect();
        let ker = kernel(&m, k);
        if ker.len() != 1 {
            return;
        }
        let c = &ker[0];
        let n = gens[t[0]].len();
        let h: Vec<Rat> = (0..n).map(|j| basis.iter().zip(c).fold(Rat::zero(), |s, (b, ci)| s + &b[j] * ci)).collect();
        let vals: Vec<Rat> = idx.iter().map(|&g| dot(&h, &gens[g])).collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if pos && neg {
            return;
        }
        let facet: Vec<usize> = idx.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(&g, _)| g).collect();
        if seen.insert(facet.clone()) {
            result.push(facet);
        }
    });
    result
}

fn choose(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        choose(items, k, i + 1, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    #[test]
    fn square_pyramid_cone() {
        // cone over a square: 4 generators in R^3 → 2 simplices
        let gens = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1]), ints(&[-1, 0, 1]), ints(&[0, -1, 1])];
        let t = triangulate(&gens, 3);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3 && s[0] == 0));
    }

    #[test]
    fn interior_generator() {
        let gens = vec![ints(&[1, 1]), ints(&[1, 0]), ints(&[0, 1])];
        let t = triangulate(&gens, 2);
        assert_eq!(t.len(), 2);
    }
}
