use super::{ExpansionDirection, ExponentVector, GfTerm, LatticeBox, ShortGf};
use crate::error::{Error, Result};
use crate::num::{strs, Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

const MAX_RESEEDS: u64 = 32;

/// Orient every denominator so that `⟨ell, b⟩ > 0` using `1/(1−t^b) = −t^{−b}/(1−t^{−b})`.
/// Each factor then expands as `Σ_{m ≥ 0} t^{m b}`, the Laurent expansion in the region where
/// `⟨log t, ell⟩ < 0`. If `dir` is degenerate for `f`, directions regenerated from its seed are tried.
pub fn canonicalize(f: &ShortGf, dir: &ExpansionDirection) -> Result<ShortGf> {
    if dir.ell.len() != f.nvars {
        return Err(Error::Dimension { expected: f.nvars, got: dir.ell.len() });
    }
    let mut d = dir.clone();
    let mut attempt = 0;
    while !d.admits(f) {
        attempt += 1;
        if attempt > MAX_RESEEDS {
            return Err(Error::DegenerateDirection(MAX_RESEEDS as usize));
        }
        d = ExpansionDirection::regenerate(f.nvars, dir.seed, attempt);
    }
    let terms = f.terms.iter().map(|t| orient_term(t, &d.ell)).collect();
    Ok(ShortGf { nvars: f.nvars, index_bound: f.index_bound, terms, orientation: Some(d) })
}

pub(crate) fn orient_term(t: &GfTerm, ell: &ExponentVector) -> GfTerm {
    let mut coeff = t.coeff.clone();
    let mut a = t.numerator.clone();
    let mut dens = Vec::with_capacity(t.denominators.len());
    for b in &t.denominators {
        if ell.dot(b).is_negative() {
            coeff = -coeff;
            a = a.sub(b);
            dens.push(b.neg());
        } else {
            dens.push(b.clone());
        }
    }
    GfTerm::new(coeff, a, dens)
}

/// Canonicalize under the default direction and expand over `bx`.
pub fn expand(f: &ShortGf, bx: &LatticeBox) -> Result<CoefficientTable> {
    let dir = f.orientation.clone().unwrap_or_else(|| ExpansionDirection::default_for(f.nvars));
    let g = canonicalize(f, &dir)?;
    oracle_expand(&g, bx)
}

/// Exact coefficients of every `t^x`, `x` in `bx`, by enumerating multiplier tuples per term.
pub fn oracle_expand(f: &ShortGf, bx: &LatticeBox) -> Result<CoefficientTable> {
    oracle_expand_limited(f, bx, None)
}

/// As [`expand`], giving up once more than `limit` lattice points have been enumerated.
pub fn expand_limited(f: &ShortGf, bx: &LatticeBox, limit: Option<u64>) -> Result<CoefficientTable> {
    let dir = f.orientation.clone().unwrap_or_else(|| ExpansionDirection::default_for(f.nvars));
    let g = canonicalize(f, &dir)?;
    oracle_expand_limited(&g, bx, limit)
}

/// As [`oracle_expand`], giving up once more than `limit` lattice points (counted with
/// multiplicity over terms) have been enumerated.
pub fn oracle_expand_limited(f: &ShortGf, bx: &LatticeBox, limit: Option<u64>) -> Result<CoefficientTable> {
    if bx.dim() != f.nvars {
        return Err(Error::Dimension { expected: f.nvars, got: bx.dim() });
    }
    let Some(dir) = &f.orientation else {
        return Err(Error::NotCanonical);
    };
    let ell = dir.ell.to_i64().ok_or_else(|| Error::Overflow("direction".into()))?;
    let n = f.nvars;
    let lo: Vec<i64> = bx.lo.iter().map(|x| x.to_i64()).collect::<Option<_>>().ok_or_else(|| Error::Overflow("box".into()))?;
    let hi: Vec<i64> = bx.hi.iter().map(|x| x.to_i64()).collect::<Option<_>>().ok_or_else(|| Error::Overflow("box".into()))?;
    let mut acc: HashMap<Vec<i64>, Rat> = HashMap::new();
    if lo.iter().zip(&hi).any(|(l, h)| h <= l) {
        return Ok(CoefficientTable { bx: bx.clone(), entries: BTreeMap::new() });
    }
    let mut left: i128 = limit.map_or(i128::MAX, |l| l as i128);
    let max_level: i128 = ell.iter().zip(&hi).map(|(&e, &h)| e as i128 * (h as i128 - 1)).sum();
    for t in &f.terms {
        let mut gens = Vec::with_capacity(t.denominators.len());
        for b in &t.denominators {
            let bi = b.to_i64().ok_or_else(|| Error::Overflow("denominator".into()))?;
            let w: i128 = bi.iter().zip(&ell).map(|(&x, &e)| x as i128 * e as i128).sum();
            if w <= 0 {
                return Err(Error::NotCanonical);
            }
            gens.push((bi, w));
        }
        let Some(a) = t.numerator.to_i64() else {
            // a numerator outside i64 cannot reach the box: steps only increase ⟨ell, ·⟩
            let level: Int = t.numerator.dot(&dir.ell);
            if level > Int::from(max_level) {
                continue;
            }
            return Err(Error::Overflow("numerator".into()));
        };
        let start: i128 = a.iter().zip(&ell).map(|(&x, &e)| x as i128 * e as i128).sum();
        if start > max_level {
            continue;
        }
        let mut e = Enum {
            n,
            lo: &lo,
            hi: &hi,
            gens: &gens,
            coeff: &t.coeff,
            acc: &mut acc,
            reach: Vec::new(),
            left: &mut left,
        };
        e.prepare();
        let mut x = a.clone();
        e.dfs(0, &mut x, max_level - start);
        if left < 0 {
            return Err(Error::Resource(format!("more than {} lattice points enumerated", limit.unwrap_or(0))));
        }
    }
    let entries = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (ExponentVector::from_i64(&p), c))
        .collect();
    Ok(CoefficientTable { bx: bx.clone(), entries })
}

struct Enum<'a> {
    n: usize,
    lo: &'a [i64],
    hi: &'a [i64],
    gens: &'a [(Vec<i64>, i128)],
    coeff: &'a Rat,
    acc: &'a mut HashMap<Vec<i64>, Rat>,
    // reach[j][i] = (max up per unit budget, max down per unit budget) over generators j.., as (num, den) pairs
    reach: Vec<Vec<((i128, i128), (i128, i128))>>,
    // remaining point budget; negative once exhausted
    left: &'a mut i128,
}

impl Enum<'_> {
    fn prepare(&mut self) {
        let k = self.gens.len();
        let mut reach = vec![vec![((0i128, 1i128), (0i128, 1i128)); self.n]; k + 1];
        for j in (0..k).rev() {
            let (b, w) = &self.gens[j];
            for i in 0..self.n {
                let (mut up, mut down) = reach[j + 1][i];
                let bi = b[i] as i128;
                if bi > 0 && bi * up.1 > up.0 * w {
                    up = (bi, *w);
                }
                if bi < 0 && -bi * down.1 > down.0 * w {
                    down = (-bi, *w);
                }
                reach[j][i] = (up, down);
            }
        }
        self.reach = reach;
    }

    fn dfs(&mut self, j: usize, x: &mut Vec<i64>, budget: i128) {
        if *self.left < 0 {
            return;
        }
        for i in 0..self.n {
            let ((un, ud), (dn, dd)) = self.reach[j][i];
            let up = budget * un / ud;
            let down = budget * dn / dd;
            if (x[i] as i128) + up < self.lo[i] as i128 || (x[i] as i128) - down > self.hi[i] as i128 - 1 {
                return;
            }
        }
        if j == self.gens.len() {
            if x.iter().zip(self.lo.iter().zip(self.hi)).all(|(v, (l, h))| v >= l && v < h) {
                *self.left -= 1;
                *self.acc.entry(x.clone()).or_insert_with(Rat::zero) += self.coeff;
            }
            return;
        }
        let (b, w) = &self.gens[j];
        if j + 1 == self.gens.len() {
            self.last_generator(x, b, budget / w);
            return;
        }
        let saved = x.clone();
        let mut rem = budget;
        loop {
            self.dfs(j + 1, x, rem);
            rem -= w;
            if rem < 0 {
                break;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi;
            }
        }
        *x = saved;
    }
}

impl Enum<'_> {
    /// Adds `x + m b` for every `m ∈ [0, max_m]` landing in the box, solving for the range of `m`.
    fn last_generator(&mut self, x: &[i64], b: &[i64], max_m: i128) {
        let (mut lo_m, mut hi_m) = (0i128, max_m);
        for i in 0..self.n {
            let (xi, bi) = (x[i] as i128, b[i] as i128);
            let (l, h) = (self.lo[i] as i128 - xi, self.hi[i] as i128 - 1 - xi);
            match bi.cmp(&0) {
                std::cmp::Ordering::Equal => {
                    if l > 0 || h < 0 {
                        return;
                    }
                }
                std::cmp::Ordering::Greater => {
                    lo_m = lo_m.max(l.div_euclid(bi) + (l.rem_euclid(bi) != 0) as i128);
                    hi_m = hi_m.min(h.div_euclid(bi));
                }
                std::cmp::Ordering::Less => {
                    // l ≤ m b ≤ h with b < 0  ⇔  −h ≤ m |b| ≤ −l
                    let (l2, h2, b2) = (-h, -l, -bi);
                    lo_m = lo_m.max(l2.div_euclid(b2) + (l2.rem_euclid(b2) != 0) as i128);
                    hi_m = hi_m.min(h2.div_euclid(b2));
                }
            }
        }
        *self.left -= (hi_m - lo_m + 1).max(0);
        if *self.left < 0 {
            return;
        }
        let mut p = x.to_vec();
        for m in lo_m..=hi_m {
            for i in 0..self.n {
                p[i] = (x[i] as i128 + m * b[i] as i128) as i64;
            }
            *self.acc.entry(p.clone()).or_insert_with(Rat::zero) += self.coeff;
        }
    }
}

/// Exact coefficients over a box; absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub bx: LatticeBox,
    pub entries: BTreeMap<ExponentVector, Rat>,
}

impl CoefficientTable {
    pub fn get(&self, p: &ExponentVector) -> Rat {
        self.entries.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.entries.keys().cloned().collect()
    }

    pub fn total(&self) -> Rat {
        self.entries.values().fold(Rat::zero(), |s, c| s + c)
    }

    /// `Ok` if every coefficient is 0 or 1, else the first offending point.
    pub fn check_zero_one(&self) -> Result<()> {
        for (p, c) in &self.entries {
            if !c.is_one() {
                return Err(Error::NotZeroOne { point: strs(&p.0), coeff: c.to_string() });
            }
        }
        Ok(())
    }

    pub fn is_zero_one(&self) -> bool {
        self.check_zero_one().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(v)
    }

    fn term(c: i64, a: &[i64], bs: &[&[i64]]) -> GfTerm {
        GfTerm::new(rat(c), ev(a), bs.iter().map(|b| ev(b)).collect())
    }

    #[test]
    fn geometric_sum() {
        let f = ShortGf::new(1, vec![term(1, &[0], &[&[1]]), term(-1, &[4], &[&[1]])]).unwrap();
        let t = expand(&f, &LatticeBox::from_u64(&[8])).unwrap();
        assert_eq!(t.support(), (0..4).map(|i| ev(&[i])).collect());
        assert!(t.is_zero_one());
    }

    #[test]
    fn monomial_and_knapsack() {
        let f = ShortGf::monomial(ev(&[3]));
        let t = expand(&f, &LatticeBox::from_u64(&[8])).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(&ev(&[3])), rat(1));
        let k = ShortGf::new(1, vec![term(1, &[0], &[&[2], &[3]])]).unwrap();
        let t = expand(&k, &LatticeBox::from_u64(&[10])).unwrap();
        assert_eq!(t.get(&ev(&[7])), rat(1));
        assert_eq!(t.get(&ev(&[6])), rat(2));
        assert_eq!(t.get(&ev(&[1])), rat(0));
    }

    #[test]
    fn flipped_form_expands_identically() {
        let f = ShortGf::new(1, vec![term(1, &[0], &[&[1]])]).unwrap();
        let flipped = ShortGf::new(1, vec![term(-1, &[-1], &[&[-1]])]).unwrap();
        let bx = LatticeBox::from_u64(&[4]);
        assert_eq!(expand(&f, &bx).unwrap(), expand(&flipped, &bx).unwrap());
        let dir = ExpansionDirection::default_for(1);
        let c = canonicalize(&flipped, &dir).unwrap();
        assert_eq!(c.terms[0], term(1, &[0], &[&[1]]));
        // already oriented input is returned unchanged
        let c2 = canonicalize(&f, &dir).unwrap();
        assert_eq!(c2.terms, f.terms);
    }

    #[test]
    fn rejects_unoriented() {
        let f = ShortGf::new(1, vec![term(1, &[0], &[&[1]])]).unwrap();
        assert_eq!(oracle_expand(&f, &LatticeBox::from_u64(&[4])), Err(Error::NotCanonical));
    }

    #[test]
    fn reseeds_on_degenerate_direction() {
        // ⟨(2,3),(3,-2)⟩ = 0
        let f = ShortGf::new(2, vec![term(1, &[0, 0], &[&[3, -2]])]).unwrap();
        let dir = ExpansionDirection::default_for(2);
        assert!(!dir.admits(&f));
        let c = canonicalize(&f, &dir).unwrap();
        assert!(c.orientation.unwrap().admits(&f));
    }
}
