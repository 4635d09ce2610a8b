//! Exact dense linear algebra over the rationals and the integers.

use crate::num::{rat_int, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<Rat>>;

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(m: &[Vec<Rat>], ncols: usize) -> (Mat, Vec<usize>) {
    let mut a: Mat = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rat::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..ncols {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rat>], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn kernel(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solve a square system; `None` if singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some((0..n).map(|i| r[i][n].clone()).collect())
}

pub fn inverse(a: &[Vec<Rat>]) -> Option<Mat> {
    let n = a.len();
    let aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det_int(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut prev = Int::one();
    let mut sign = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn to_rat_mat(m: &[Vec<Int>]) -> Mat {
    m.iter().map(|r| r.iter().map(rat_int).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// All integer solutions of `e x = rhs` as `x0 + L λ`, `λ ∈ Z^d`, with the columns of
/// `L` returned as vectors. `None` if there is no integer solution.
pub fn integer_solutions(e: &[Vec<Int>], rhs: &[Int], n: usize) -> Option<(Vec<Int>, Vec<Vec<Int>>)> {
    let k = e.len();
    let mut m: Vec<Vec<Int>> = e.to_vec();
    // columns of u as u[col][row]
    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { Int::one() } else { Int::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, c1: usize, c2: usize, a: &Int, b: &Int, c: &Int, d: &Int| {
        // (col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2)
        for row in m.iter_mut() {
            let x = row[c1].clone();
            let y = row[c2].clone();
            row[c1] = a * &x + b * &y;
            row[c2] = c * &x + d * &y;
        }
        let x = u[c1].clone();
        let y = u[c2].clone();
        u[c1] = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
        u[c2] = x.iter().zip(&y).map(|(p, q)| c * p + d * q).collect();
    };
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; k];
    let mut next = 0;
    for i in 0..k {
        if next >= n {
            break;
        }
        for j in next + 1..n {
            if m[i][j].is_zero() {
                continue;
            }
            if m[i][next].is_zero() {
                col_op(&mut m, &mut u, next, j, &Int::zero(), &Int::one(), &Int::one(), &Int::zero());
                continue;
            }
            let x = m[i][next].clone();
            let y = m[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            // new next = s*x_col + t*y_col ; new j = (-y/g)*x_col + (x/g)*y_col
            col_op(&mut m, &mut u, next, j, &s, &t, &(-(&y / &g)), &(&x / &g));
        }
        if !m[i][next].is_zero() {
            if m[i][next].is_negative() {
                let neg = -Int::one();
                col_op(&mut m, &mut u, next, next, &neg, &Int::zero(), &neg, &Int::zero());
            }
            pivot_of_row[i] = Some(next);
            next += 1;
        }
    }
    let mut y = vec![Int::zero(); n];
    for i in 0..k {
        let partial: Int = (0..next).filter(|&c| Some(c) != pivot_of_row[i]).map(|c| &m[i][c] * &y[c]).sum();
        let resid = &rhs[i] - partial;
        match pivot_of_row[i] {
            Some(c) => {
                if !resid.is_multiple_of(&m[i][c]) {
                    return None;
                }
                y[c] = resid / &m[i][c];
            }
            None => {
                if !resid.is_zero() {
                    return None;
                }
            }
        }
    }
    let x0: Vec<Int> = (0..n).map(|r| (0..next).map(|c| &u[c][r] * &y[c]).sum()).collect();
    let basis: Vec<Vec<Int>> = u[next..].to_vec();
    Some((x0, lll(&basis)))
}

/// LLL reduction (δ = 3/4) of a list of linearly independent integer vectors.
pub fn lll(basis: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut b: Vec<Vec<Int>> = basis.to_vec();
    let k = b.len();
    if k <= 1 {
        return b;
    }
    let gso = |b: &[Vec<Int>]| -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Rat>) {
        let k = b.len();
        let mut bstar: Vec<Vec<Rat>> = Vec::with_capacity(k);
        let mut mu = vec![vec![Rat::zero(); k]; k];
        let mut norms = Vec::with_capacity(k);
        for i in 0..k {
            let mut v: Vec<Rat> = b[i].iter().map(rat_int).collect();
            for j in 0..i {
                let num: Rat = b[i].iter().zip(&bstar[j]).fold(Rat::zero(), |s, (p, q)| s + rat_int(p) * q);
                mu[i][j] = num / &norms[j];
                for (vv, bs) in v.iter_mut().zip(&bstar[j]) {
                    *vv -= &mu[i][j] * bs;
                }
            }
            let nn = v.iter().fold(Rat::zero(), |s, x| s + x * x);
            norms.push(nn);
            bstar.push(v);
        }
        (bstar, mu, norms)
    };
    let delta = Rat::new(Int::from(3), Int::from(4));
    let mut i = 1;
    let mut guard = 0usize;
    while i < k && guard < 100_000 {
        guard += 1;
        for j in (0..i).rev() {
            let (_, mu, _) = gso(&b);
            let q = mu[i][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (_, mu, norms) = gso(&b);
        let lhs = &norms[i];
        let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1];
        if *lhs >= rhs {
            i += 1;
        } else {
            b.swap(i, i - 1);
            i = i.max(2) - 1;
        }
    }
    b
}


/// Lower-triangular column Hermite basis of the lattice spanned by `cols`
/// (each entry of `cols` is one generator); returned column-major, `h[j][i]` = row `i` of column `j`.
pub fn column_hnf(cols: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut c: Vec<Vec<Int>> = cols.to_vec();
    let k = c.len();
    let mut next = 0;
    for i in 0..n {
        if next >= k {
            break;
        }
        for j in next + 1..k {
            if c[j][i].is_zero() {
                continue;
            }
            if c[next][i].is_zero() {
                c.swap(next, j);
                continue;
            }
            let x = c[next][i].clone();
            let y = c[j][i].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (p, q) = (c[next].clone(), c[j].clone());
            let yg = &y / &g;
            let xg = &x / &g;
            c[next] = p.iter().zip(&q).map(|(a, b)| &s * a + &t * b).collect();
            c[j] = p.iter().zip(&q).map(|(a, b)| -&yg * a + &xg * b).collect();
        }
        if !c[next][i].is_zero() {
            if c[next][i].is_negative() {
                c[next] = c[next].iter().map(|a| -a).collect();
            }
            next += 1;
        }
    }
    c.truncate(next);
    c
}

/// Adjugate of a square integer matrix given by rows: `adj(m) · m = det(m) · I`.
pub fn adjugate(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![Int::one()]];
    }
    let mut adj = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Int>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, v)| v.clone()).collect())
                .collect();
            let d = det_int(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

#[cfg(test)]
mod hnf_tests {
    use super::*;
    use crate::num::{int, ints};

    #[test]
    fn hnf_diag_product_is_index() {
        let cols = vec![ints(&[1, 0]), ints(&[1, 5])];
        let h = column_hnf(&cols, 2);
        assert_eq!(&h[0][0] * &h[1][1], int(5));
        assert!(h[1][0].is_zero());
    }

    #[test]
    fn adjugate_identity() {
        let m = vec![ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])];
        let adj = adjugate(&m);
        let d = det_int(&m);
        for i in 0..3 {
            for j in 0..3 {
                let v: Int = (0..3).map(|k| &adj[i][k] * &m[k][j]).sum();
                assert_eq!(v, if i == j { d.clone() } else { int(0) });
            }
        }
    }
}
