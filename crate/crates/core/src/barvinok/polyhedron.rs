use crate::error::{Error, Result};
use crate::lp::{maximize, LpResult};
use crate::num::{primitive, rat_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// `{x ∈ R^n : A x ≤ b}` with exact rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub n: usize,
}

/// The cone `{y : a_i · y ≤ 0}` of feasible directions at a vertex, by primitive normals `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCone {
    pub normals: Vec<Vec<Int>>,
}

impl TangentCone {
    pub fn contains_direction(&self, y: &[Int]) -> bool {
        self.normals.iter().all(|a| a.iter().zip(y).map(|(p, q)| p * q).sum::<Int>() <= Int::zero())
    }
}

impl Polyhedron {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, n: usize) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension { expected: a.len(), got: b.len() });
        }
        if let Some(r) = a.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, got: r.len() });
        }
        Ok(Polyhedron { a, b, n })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[i64]) -> Self {
        let n = a.first().map_or(0, |r| r.len());
        let ar = a.iter().map(|r| r.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()).collect();
        let br = b.iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
        Polyhedron::new(ar, br, n).expect("consistent dimensions")
    }

    /// Axis-parallel box `lo ≤ x ≤ hi` (inclusive).
    pub fn cuboid(lo: &[Int], hi: &[Int]) -> Self {
        let n = lo.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for j in 0..n {
            let mut up = vec![Rat::zero(); n];
            up[j] = Rat::one();
            a.push(up);
            b.push(rat_int(&hi[j]));
            let mut dn = vec![Rat::zero(); n];
            dn[j] = -Rat::one();
            a.push(dn);
            b.push(-rat_int(&lo[j]));
        }
        Polyhedron { a, b, n }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, bi)| {
            row.iter().zip(x).fold(Rat::zero(), |s, (p, q)| s + p * rat_int(q)) <= *bi
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(maximize(&self.a, &self.b, &vec![Rat::zero(); self.n]), LpResult::Infeasible)
    }

    /// Integer bounds `(⌈min x_j⌉, ⌊max x_j⌋)` per coordinate; `None` if empty.
    pub fn integer_bounds(&self) -> Result<Option<Vec<(Int, Int)>>> {
        let mut out = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut c = vec![Rat::zero(); self.n];
            c[j] = Rat::one();
            let hi = match maximize(&self.a, &self.b, &c) {
                LpResult::Infeasible => return Ok(None),
                LpResult::Unbounded => return Err(Error::Unbounded),
                LpResult::Optimal { value, .. } => value.floor().to_integer(),
            };
            c[j] = -Rat::one();
            let lo = match maximize(&self.a, &self.b, &c) {
                LpResult::Infeasible => return Ok(None),
                LpResult::Unbounded => return Err(Error::Unbounded),
                LpResult::Optimal { value, .. } => (-value).ceil().to_integer(),
            };
            out.push((lo, hi));
        }
        Ok(Some(out))
    }

    /// Vertices (exhaustive over `n`-subsets of irredundant constraints) with tangent cones.
    /// Requires a bounded, full-dimensional polyhedron.
    pub fn vertex_cones(&self) -> Result<Vec<(Vec<Rat>, TangentCone)>> {
        if self.is_empty() || self.integer_bounds()?.is_none() {
            return Ok(Vec::new());
        }
        if !self.is_full_dimensional() {
            return Err(Error::Invalid("polyhedron is not full-dimensional".into()));
        }
        self.vertex_cones_unchecked()
    }

    /// `true` iff some point satisfies every constraint strictly.
    pub fn is_full_dimensional(&self) -> bool {
        let n = self.n;
        let mut a: Vec<Vec<Rat>> = self.a.iter().map(|r| {
            let mut r = r.clone();
            r.push(Rat::one());
            r
        }).collect();
        let mut b = self.b.clone();
        let mut cap = vec![Rat::zero(); n + 1];
        cap[n] = Rat::one();
        a.push(cap.clone());
        b.push(Rat::one());
        matches!(maximize(&a, &b, &cap), LpResult::Optimal { value, .. } if value.is_positive())
    }

    pub(crate) fn vertex_cones_unchecked(&self) -> Result<Vec<(Vec<Rat>, TangentCone)>> {
        let n = self.n;
        let Some((rows, rhs)) = tighten_rational(self) else {
            return Ok(Vec::new());
        };
        let (rows, rhs) = irredundant(rows, rhs);
        let mut found: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
        let m = rows.len();
        let mut subset = Vec::with_capacity(n);
        subsets(m, n, 0, &mut subset, &mut |s: &[usize]| {
            let a: Vec<Vec<Rat>> = s.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rat> = s.iter().map(|&i| rhs[i].clone()).collect();
            let Some(x) = crate::linalg::solve_square(&a, &b) else {
                return;
            };
            if found.contains_key(&x) {
                return;
            }
            let mut active = Vec::new();
            for i in 0..m {
                let v = rows[i].iter().zip(&x).fold(Rat::zero(), |acc, (p, q)| acc + p * q);
                if v > rhs[i] {
                    return;
                }
                if v == rhs[i] {
                    active.push(i);
                }
            }
            found.insert(x, active);
        });
        let mut out = Vec::with_capacity(found.len());
        for (v, active) in found {
            let normals = active.iter().map(|&i| primitive(&rows[i])).collect();
            out.push((v, TangentCone { normals }));
        }
        Ok(out)
    }
}

fn tighten_rational(p: &Polyhedron) -> Option<(Vec<Vec<Rat>>, Vec<Rat>)> {
    // keep rational right-hand sides here: vertices of the given polyhedron are wanted
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, bi) in p.a.iter().zip(&p.b) {
        if r.iter().all(|x| x.is_zero()) {
            if bi.is_negative() {
                return None;
            }
            continue;
        }
        if !rows.iter().zip(&rhs).any(|(rr, bb): (&Vec<Rat>, &Rat)| rr == r && bb == bi) {
            rows.push(r.clone());
            rhs.push(bi.clone());
        }
    }
    Some((rows, rhs))
}

/// Drop constraints implied by the remaining ones.
fn irredundant(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let mut i = 0;
    while i < rows.len() {
        let others: Vec<Vec<Rat>> = rows.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
        let orhs: Vec<Rat> = rhs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
        let redundant = match maximize(&others, &orhs, &rows[i]) {
            LpResult::Optimal { value, .. } => value <= rhs[i],
            _ => false,
        };
        if redundant {
            rows.remove(i);
            rhs.remove(i);
        } else {
            i += 1;
        }
    }
    (rows, rhs)
}

fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..m {
        if m - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(m, k, i + 1, cur, f);
        cur.pop();
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poly n={}", self.n)?;
        for (row, bi) in self.a.iter().zip(&self.b) {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{} <= {}", parts.join(" "), bi)?;
        }
        Ok(())
    }
}

fn parse_rat(s: &str, line: usize) -> Result<Rat> {
    let bad = || Error::Parse { line, msg: format!("bad rational `{s}`") };
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (Int::from_str(p).map_err(|_| bad())?, Int::from_str(q).map_err(|_| bad())?),
        None => (Int::from_str(s).map_err(|_| bad())?, Int::one()),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// Parse `poly n=<n>` followed by rows `a1 ... an <= b`; blank lines and `#` comments are skipped.
pub fn parse_polyhedron(text: &str) -> Result<Polyhedron> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = header
        .strip_prefix("poly n=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(Error::Parse { line: ln, msg: "expected `poly n=<n>`".into() })?;
    if n == 0 || n > 64 {
        return Err(Error::Parse { line: ln, msg: "dimension must be in 1..=64".into() });
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (ln, l) in lines {
        let (lhs, rhs) = l.split_once("<=").ok_or(Error::Parse { line: ln, msg: "expected `<=`".into() })?;
        let row: Vec<Rat> = lhs.split_whitespace().map(|t| parse_rat(t, ln)).collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse { line: ln, msg: format!("expected {n} coefficients") });
        }
        a.push(row);
        b.push(parse_rat(rhs.trim(), ln)?);
    }
    Polyhedron::new(a, b, n)
}
