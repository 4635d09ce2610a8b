//! Exact linear programming over the rationals (two-phase tableau simplex, Bland's rule).

use crate::num::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rat]) {
        let inv = Rat::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximize with `obj` holding reduced costs (`z - c x` convention: negative entries improve).
    /// Columns with `allowed[j] == false` never enter. Returns false if unbounded.
    fn optimize(&mut self, obj: &mut [Rat], allowed: &[bool]) -> bool {
        let rhs = self.ncols;
        loop {
            let Some(c) = (0..self.ncols).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c, obj),
            }
        }
    }
}

/// Maximize `c·x` subject to `a x ≤ b`, `x` free.
pub fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpResult {
    let n = c.len();
    let m = a.len();
    // columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs row), rhs
    let neg_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let nart = neg_rows.len();
    let ncols = 2 * n + m + nart;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_idx = 0;
    for i in 0..m {
        let mut row = vec![Rat::zero(); ncols + 1];
        let s = if b[i].is_negative() { -Rat::one() } else { Rat::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &s;
            row[n + j] = -&a[i][j] * &s;
        }
        row[2 * n + i] = s.clone();
        row[ncols] = &b[i] * &s;
        if b[i].is_negative() {
            let col = 2 * n + m + art_idx;
            row[col] = Rat::one();
            basis.push(col);
            art_idx += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };
    if nart > 0 {
        // phase 1: maximize -sum(artificials)
        let mut obj = vec![Rat::zero(); ncols + 1];
        for k in 0..nart {
            obj[2 * n + m + k] = Rat::one();
        }
        for i in 0..m {
            if t.basis[i] >= 2 * n + m {
                for j in 0..=ncols {
                    let v = t.rows[i][j].clone();
                    obj[j] -= v;
                }
            }
        }
        let allowed = vec![true; ncols];
        t.optimize(&mut obj, &allowed);
        if obj[ncols].is_negative() {
            return LpResult::Infeasible;
        }
        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= 2 * n + m {
                if let Some(c) = (0..2 * n + m).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, c, &mut obj);
                    r += 1;
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            } else {
                r += 1;
            }
        }
    }
    let mut obj = vec![Rat::zero(); ncols + 1];
    for j in 0..n {
        obj[j] = -c[j].clone();
        obj[n + j] = c[j].clone();
    }
    for i in 0..t.rows.len() {
        let bcol = t.basis[i];
        if !obj[bcol].is_zero() {
            let f = obj[bcol].clone();
            for j in 0..=ncols {
                let v = &f * &t.rows[i][j];
                obj[j] -= v;
            }
        }
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < 2 * n + m).collect();
    if !t.optimize(&mut obj, &allowed) {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] += &t.rows[i][ncols];
        } else if bcol < 2 * n {
            x[bcol - n] -= &t.rows[i][ncols];
        }
    }
    LpResult::Optimal { value: obj[ncols].clone(), point: x }
}

pub fn is_feasible(a: &[Vec<Rat>], b: &[Rat], n: usize) -> bool {
    !matches!(maximize(a, b, &vec![Rat::zero(); n]), LpResult::Infeasible)
}

/// A feasible point, if any.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Option<Vec<Rat>> {
    match maximize(a, b, &vec![Rat::zero(); n]) {
        LpResult::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_frac};

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn triangle_max() {
        let a = vec![r(&[-1, 0]), r(&[0, -1]), r(&[1, 1])];
        let b = r(&[0, 0, 2]);
        match maximize(&a, &b, &r(&[1, 2])) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(4)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn negative_rhs_and_infeasible() {
        // x >= 1, x <= 3/2
        let a = vec![r(&[-1]), r(&[1])];
        let b = vec![rat(-1), rat_frac(3, 2)];
        match maximize(&a, &b, &r(&[-1])) {
            LpResult::Optimal { value, point } => {
                assert_eq!(value, rat(-1));
                assert_eq!(point[0], rat(1));
            }
            o => panic!("{o:?}"),
        }
        let a = vec![r(&[-1]), r(&[1])];
        let b = r(&[-3, 2]);
        assert_eq!(maximize(&a, &b, &r(&[1])), LpResult::Infeasible);
    }

    #[test]
    fn unbounded() {
        let a = vec![r(&[-1, 0])];
        let b = r(&[0]);
        assert_eq!(maximize(&a, &b, &r(&[1, 0])), LpResult::Unbounded);
    }
}
