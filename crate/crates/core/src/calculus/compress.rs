use super::hadamard::tau_hadamard;
use super::ops::{norm, NormResult};
use super::subst::substitute_monomials;
use crate::error::{Error, Result};
use crate::gf::{LatticeBox, ShortGf};
use crate::num::Int;
use num_traits::{One, Zero};

/// `τ_N(x) = x_1 + N x_2 + N^2 x_3 + ⋯` applied per group of consecutive variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMap {
    pub log_n: u32,
    pub groups: Vec<usize>,
}

const MAX_LOG_N: u32 = 62;

impl TauMap {
    pub fn new(log_n: u32, groups: Vec<usize>) -> Result<Self> {
        if log_n == 0 {
            return Err(Error::Invalid("N must be at least 2".into()));
        }
        if groups.is_empty() || groups.iter().any(|&g| g == 0) {
            return Err(Error::Invalid("groups must be nonempty".into()));
        }
        Ok(TauMap { log_n, groups })
    }

    pub fn n(&self) -> Int {
        Int::one() << self.log_n
    }

    pub fn nvars(&self) -> usize {
        self.groups.iter().sum()
    }

    /// `k × n` matrix of powers of `N`.
    pub fn matrix(&self) -> Vec<Vec<Int>> {
        let n = self.nvars();
        let big_n = self.n();
        let mut rows = Vec::with_capacity(self.groups.len());
        let mut start = 0;
        for &g in &self.groups {
            let mut row = vec![Int::zero(); n];
            let mut p = Int::one();
            for i in 0..g {
                row[start + i] = p.clone();
                p *= &big_n;
            }
            rows.push(row);
            start += g;
        }
        rows
    }

    fn kills(&self, f: &ShortGf) -> bool {
        let m = self.matrix();
        f.terms.iter().flat_map(|t| t.denominators.iter()).any(|b| {
            m.iter().all(|row| row.iter().zip(&b.0).map(|(x, y)| x * y).sum::<Int>().is_zero())
        })
    }

    /// The box `[0, N)^n` on which `τ_N` is injective.
    pub fn domain(&self) -> LatticeBox {
        LatticeBox::new(vec![self.n(); self.nvars()])
    }
}

/// Smallest `N = 2^r` exceeding every support coordinate of `g` (found by `norm` with bound `2^r_bound`).
pub fn choose_tau(g: &ShortGf, groups: Vec<usize>, r_bound: u32) -> Result<TauMap> {
    let log_n = match norm(g, r_bound)? {
        NormResult::Empty => 1,
        NormResult::Max { norm, .. } => (norm.bits() as u32).max(1),
    };
    TauMap::new(log_n, groups)
}

/// `f(u) = g(t)` under `t_{j,i} ← u_j^{N^i}`, doubling `N` while some denominator maps to zero.
/// Returns the compressed GF and the map actually used.
pub fn compress(g: &ShortGf, tau: &TauMap) -> Result<(ShortGf, TauMap)> {
    if tau.nvars() != g.nvars {
        return Err(Error::Dimension { expected: g.nvars, got: tau.nvars() });
    }
    let mut t = tau.clone();
    while t.kills(g) {
        t.log_n += 1;
        if t.log_n > MAX_LOG_N {
            return Err(Error::Invalid("τ-degenerate denominator for every N tried".into()));
        }
    }
    Ok((substitute_monomials(g, &t.matrix())?, t))
}

/// `g(t) = a(t) ⋆_τ f(t)` with `a(t) = Π (1 − t_i^N) / (1 − t_i)` over the `n` original variables.
pub fn decompress(f: &ShortGf, tau: &TauMap) -> Result<ShortGf> {
    if f.nvars != tau.groups.len() {
        return Err(Error::Dimension { expected: tau.groups.len(), got: f.nvars });
    }
    let dom = tau.domain();
    tau_hadamard(&dom.gf(), f, &tau.matrix(), &dom)
}
