//! Short rational generating functions `Σ c·t^a / Π(1 − t^b)` and their expansion convention.

mod oracle;
mod text;

pub use oracle::{canonicalize, expand, expand_limited, oracle_expand, oracle_expand_limited, CoefficientTable};
pub use text::parse_gf;

use crate::error::{Error, Result};
use crate::num::{ceil_log2_plus1, int, Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<Int>);

impl ExponentVector {
    pub fn new(entries: Vec<Int>) -> Self {
        ExponentVector(entries)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        ExponentVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![Int::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); n];
        v[i] = Int::one();
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &ExponentVector) -> Int {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Concatenate coordinates (used when forming product spaces).
    pub fn concat(&self, other: &ExponentVector) -> ExponentVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ExponentVector(v)
    }

    pub fn select(&self, idx: &[usize]) -> ExponentVector {
        ExponentVector(idx.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfTerm {
    pub coeff: Rat,
    pub numerator: ExponentVector,
    pub denominators: Vec<ExponentVector>,
}

impl GfTerm {
    pub fn new(coeff: Rat, numerator: ExponentVector, denominators: Vec<ExponentVector>) -> Self {
        GfTerm { coeff, numerator, denominators }
    }

    pub fn monomial(coeff: Rat, a: ExponentVector) -> Self {
        GfTerm { coeff, numerator: a, denominators: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionDirection {
    pub ell: ExponentVector,
    pub seed: u64,
}

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

impl ExpansionDirection {
    /// Distinct primes `2, 3, 5, ...` (random distinct entries beyond 16 variables).
    pub fn default_for(n: usize) -> Self {
        if n <= PRIMES.len() {
            ExpansionDirection { ell: ExponentVector::from_i64(&PRIMES[..n]), seed: 0 }
        } else {
            Self::regenerate(n, 0, 0)
        }
    }

    /// A pseudo-random direction with pairwise-distinct positive entries.
    pub fn regenerate(n: usize, seed: u64, attempt: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt));
        let range = 1_000i64 << attempt.min(40);
        let mut seen = BTreeSet::new();
        let mut ell = Vec::with_capacity(n);
        while ell.len() < n {
            let v = rng.gen_range(1..=range);
            if seen.insert(v) {
                ell.push(v);
            }
        }
        ExpansionDirection { ell: ExponentVector::from_i64(&ell), seed }
    }

    pub fn admits(&self, f: &ShortGf) -> bool {
        f.terms.iter().all(|t| t.denominators.iter().all(|b| !self.ell.dot(b).is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortGf {
    pub nvars: usize,
    pub index_bound: usize,
    pub terms: Vec<GfTerm>,
    pub orientation: Option<ExpansionDirection>,
}

impl ShortGf {
    pub fn new(nvars: usize, terms: Vec<GfTerm>) -> Result<Self> {
        let index = terms.iter().map(|t| t.denominators.len()).max().unwrap_or(0);
        Self::with_bound(nvars, index, terms)
    }

    pub fn with_bound(nvars: usize, index_bound: usize, terms: Vec<GfTerm>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Invalid("nvars must be positive".into()));
        }
        for t in &terms {
            if t.numerator.len() != nvars {
                return Err(Error::Dimension { expected: nvars, got: t.numerator.len() });
            }
            if t.denominators.len() > index_bound {
                return Err(Error::Invalid(format!(
                    "term has {} denominators, above index bound {index_bound}",
                    t.denominators.len()
                )));
            }
            for b in &t.denominators {
                if b.len() != nvars {
                    return Err(Error::Dimension { expected: nvars, got: b.len() });
                }
                if b.is_zero() {
                    return Err(Error::Invalid("zero denominator vector".into()));
                }
            }
        }
        Ok(ShortGf { nvars, index_bound, terms, orientation: None })
    }

    pub fn zero(nvars: usize) -> Self {
        ShortGf { nvars, index_bound: 0, terms: Vec::new(), orientation: None }
    }

    pub fn monomial(a: ExponentVector) -> Self {
        let nvars = a.len();
        ShortGf { nvars, index_bound: 0, terms: vec![GfTerm::monomial(Rat::one(), a)], orientation: None }
    }

    /// `F(S; t) = Σ_{x ∈ S} t^x`, one monomial per point.
    pub fn from_point_set<'a, I>(points: I, nvars: usize) -> Self
    where
        I: IntoIterator<Item = &'a ExponentVector>,
    {
        let terms: Vec<GfTerm> = points
            .into_iter()
            .map(|p| {
                assert_eq!(p.len(), nvars, "point dimension");
                GfTerm::monomial(Rat::one(), p.clone())
            })
            .collect();
        ShortGf { nvars, index_bound: 0, terms, orientation: None }
    }

    pub fn index(&self) -> usize {
        gf_index(self)
    }

    pub fn length(&self) -> u64 {
        gf_length(self)
    }

    pub fn is_zero_syntactic(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term concatenation.
    pub fn add(&self, other: &ShortGf) -> ShortGf {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch in add");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let orientation = if self.orientation == other.orientation { self.orientation.clone() } else { None };
        ShortGf {
            nvars: self.nvars,
            index_bound: self.index_bound.max(other.index_bound),
            terms,
            orientation,
        }
    }

    pub fn scale(&self, c: &Rat) -> ShortGf {
        if c.is_zero() {
            return ShortGf { terms: Vec::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|t| GfTerm { coeff: &t.coeff * c, ..t.clone() }).collect();
        ShortGf { terms, ..self.clone() }
    }

    pub fn neg(&self) -> ShortGf {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &ShortGf) -> ShortGf {
        self.add(&other.neg())
    }

    /// Multiply every term by `t^a`.
    pub fn shift(&self, a: &ExponentVector) -> ShortGf {
        let terms = self
            .terms
            .iter()
            .map(|t| GfTerm { numerator: t.numerator.add(a), ..t.clone() })
            .collect();
        ShortGf { terms, ..self.clone() }
    }

    /// Product of rational functions (pairwise term products); index adds.
    pub fn mul(&self, other: &ShortGf) -> ShortGf {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch in mul");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for o in &other.terms {
                let mut dens = s.denominators.clone();
                dens.extend(o.denominators.iter().cloned());
                terms.push(GfTerm::new(&s.coeff * &o.coeff, s.numerator.add(&o.numerator), dens));
            }
        }
        let orientation = if self.orientation == other.orientation { self.orientation.clone() } else { None };
        ShortGf { nvars: self.nvars, index_bound: self.index_bound + other.index_bound, terms, orientation }
    }

    /// Merge terms with identical numerator and denominator multiset; drop zero coefficients.
    pub fn normalize(&self) -> ShortGf {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<(ExponentVector, Vec<ExponentVector>), Rat> = BTreeMap::new();
        let mut order = Vec::new();
        for t in &self.terms {
            let mut dens = t.denominators.clone();
            dens.sort();
            let key = (t.numerator.clone(), dens);
            if !acc.contains_key(&key) {
                order.push(key.clone());
            }
            *acc.entry(key).or_insert_with(Rat::zero) += &t.coeff;
        }
        let terms = order
            .into_iter()
            .filter_map(|k| {
                let c = acc[&k].clone();
                (!c.is_zero()).then(|| GfTerm::new(c, k.0, k.1))
            })
            .collect();
        ShortGf { terms, ..self.clone() }
    }

    /// Same terms under a larger declared index bound.
    pub fn bounded(mut self, bound: usize) -> ShortGf {
        self.index_bound = self.index_bound.max(bound);
        self
    }
}

/// `max` number of denominator factors over terms.
pub fn gf_index(f: &ShortGf) -> usize {
    f.terms.iter().map(|t| t.denominators.len()).max().unwrap_or(0)
}

/// `ℓ(f) = Σ⌈log₂|p q| + 1⌉ + Σ⌈log₂|a| + 1⌉ + Σ⌈log₂|b| + 1⌉`, entrywise over exponent vectors.
pub fn gf_length(f: &ShortGf) -> u64 {
    let mut total = 0u64;
    for t in &f.terms {
        total += ceil_log2_plus1(&(t.coeff.numer() * t.coeff.denom()));
        total += t.numerator.0.iter().map(ceil_log2_plus1).sum::<u64>();
        for b in &t.denominators {
            total += b.0.iter().map(ceil_log2_plus1).sum::<u64>();
        }
    }
    total
}

/// Half-open integer box `Π [lo_j, hi_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub lo: Vec<Int>,
    pub hi: Vec<Int>,
}

impl LatticeBox {
    /// `Π [0, U_j)`.
    pub fn new(uppers: Vec<Int>) -> Self {
        assert!(uppers.iter().all(|u| u.is_positive()), "box upper bounds must be positive");
        LatticeBox { lo: vec![Int::zero(); uppers.len()], hi: uppers }
    }

    pub fn from_u64(uppers: &[u64]) -> Self {
        Self::new(uppers.iter().map(|&u| Int::from(u)).collect())
    }

    pub fn cube(n: usize, u: u64) -> Self {
        Self::from_u64(&vec![u; n])
    }

    pub fn with_bounds(lo: Vec<Int>, hi: Vec<Int>) -> Self {
        assert_eq!(lo.len(), hi.len());
        LatticeBox { lo, hi }
    }

    pub fn point(p: &ExponentVector) -> Self {
        LatticeBox { lo: p.0.clone(), hi: p.0.iter().map(|x| x + 1).collect() }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        p.0.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| x >= l && x < h)
    }

    pub fn num_points(&self) -> Int {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| if h > l { h - l } else { Int::zero() })
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.num_points().is_zero()
    }

    /// All lattice points in lexicographic order (small boxes only).
    pub fn points(&self) -> Vec<ExponentVector> {
        let n = self.dim();
        let lo: Vec<i64> = self.lo.iter().map(|x| x.to_i64().expect("box bound")).collect();
        let hi: Vec<i64> = self.hi.iter().map(|x| x.to_i64().expect("box bound")).collect();
        if lo.iter().zip(&hi).any(|(l, h)| h <= l) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            out.push(ExponentVector::from_i64(&cur));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < hi[i] {
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// `Π_j (t_j^{lo_j} − t_j^{hi_j}) / (1 − t_j)`, expanded into `2^n` terms.
    pub fn gf(&self) -> ShortGf {
        let n = self.dim();
        let mut terms = Vec::with_capacity(1 << n);
        let dens: Vec<ExponentVector> = (0..n).map(|j| ExponentVector::unit(n, j)).collect();
        for mask in 0u64..(1u64 << n) {
            let mut a = Vec::with_capacity(n);
            let mut sign = 1i64;
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    a.push(self.hi[j].clone());
                    sign = -sign;
                } else {
                    a.push(self.lo[j].clone());
                }
            }
            terms.push(GfTerm::new(Rat::from_integer(int(sign)), ExponentVector(a), dens.clone()));
        }
        ShortGf { nvars: n, index_bound: n, terms, orientation: None }
    }

    /// Sub-box on a subset of coordinates.
    pub fn select(&self, idx: &[usize]) -> LatticeBox {
        LatticeBox {
            lo: idx.iter().map(|&i| self.lo[i].clone()).collect(),
            hi: idx.iter().map(|&i| self.hi[i].clone()).collect(),
        }
    }

    pub fn concat(&self, other: &LatticeBox) -> LatticeBox {
        let mut lo = self.lo.clone();
        lo.extend(other.lo.iter().cloned());
        let mut hi = self.hi.clone();
        hi.extend(other.hi.iter().cloned());
        LatticeBox { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn geo() -> ShortGf {
        // 1/(1-t)
        ShortGf::new(
            1,
            vec![GfTerm::new(rat(1), ExponentVector::from_i64(&[0]), vec![ExponentVector::from_i64(&[1])])],
        )
        .unwrap()
    }

    #[test]
    fn length_examples() {
        let one = ShortGf::monomial(ExponentVector::from_i64(&[0]));
        assert_eq!(gf_length(&one), 1);
        assert_eq!(gf_length(&geo()), 2);
    }

    #[test]
    fn doubling_coefficient_length() {
        for p in 1..40i64 {
            let f = geo().scale(&rat(p));
            let g = geo().scale(&rat(2 * p));
            let d = ceil_log2_plus1(&int(2 * p)) - ceil_log2_plus1(&int(p));
            assert_eq!(gf_length(&g) - gf_length(&f), d);
        }
    }

    #[test]
    fn index_examples() {
        let poly = ShortGf::from_point_set(
            [ExponentVector::from_i64(&[3]), ExponentVector::from_i64(&[7])].iter(),
            1,
        );
        assert_eq!(gf_index(&poly), 0);
        let two = ShortGf::new(
            1,
            vec![GfTerm::new(
                rat(1),
                ExponentVector::from_i64(&[0]),
                vec![ExponentVector::from_i64(&[1]), ExponentVector::from_i64(&[2])],
            )],
        )
        .unwrap();
        assert_eq!(gf_index(&two), 2);
        assert_eq!(gf_index(&poly.add(&two)), 2);
    }

    #[test]
    fn rejects_zero_denominator() {
        let t = GfTerm::new(rat(1), ExponentVector::from_i64(&[0]), vec![ExponentVector::from_i64(&[0])]);
        assert!(ShortGf::new(1, vec![t]).is_err());
    }

    #[test]
    fn box_points_order() {
        let b = LatticeBox::from_u64(&[2, 3]);
        let pts = b.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1], ExponentVector::from_i64(&[0, 1]));
    }
}
