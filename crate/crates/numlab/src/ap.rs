use shortgf_core::barvinok::Polyhedron;
use shortgf_core::num::Int;
use shortgf_core::{Error, Result};
use std::collections::BTreeSet;

/// `start, start + difference, …` with `length` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApWitness {
    pub start: i64,
    pub difference: i64,
    pub length: usize,
}

impl ApWitness {
    pub fn terms(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.length as i64).map(move |i| self.start + i * self.difference)
    }
}

/// First `k`-term progression with positive difference in `S`, in lexicographic
/// `(start, difference)` order.
pub fn find_ap(set: &BTreeSet<i64>, k: usize) -> Result<Option<ApWitness>> {
    if k < 3 {
        return Err(Error::Invalid("progressions need at least 3 terms".into()));
    }
    let points: Vec<i64> = set.iter().copied().collect();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let Some(d) = b.checked_sub(a) else { break };
            let last = a.checked_add(d.checked_mul(k as i64 - 1).unwrap_or(i64::MAX));
            if last.map_or(true, |l| l > points[points.len() - 1]) {
                break;
            }
            let w = ApWitness { start: a, difference: d, length: k };
            if w.terms().all(|x| set.contains(&x)) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// `k^{n+1} · m`: an `∃`-definable set with `n` quantified variables, `m` disjoint cells and more
/// points than this contains a nontrivial `(k+1)`-term progression.
pub fn ap_threshold(n: u32, k: u64, m: u64) -> Result<u64> {
    if n == 0 || k == 0 || m == 0 {
        return Err(Error::Invalid("n, k, m must be positive".into()));
    }
    k.checked_pow(n + 1)
        .and_then(|p| p.checked_mul(m))
        .ok_or_else(|| Error::Overflow("threshold".into()))
}

/// For two integer points of a convex cell congruent modulo `k`, the `k + 1` points
/// `p + (j/k)(p' − p)`; they are integral and lie in the cell.
pub fn convexity_progression(cell: &Polyhedron, p: &[Int], q: &[Int], k: u64) -> Result<Vec<Vec<Int>>> {
    if k == 0 || p.len() != q.len() || p.len() != cell.n {
        return Err(Error::Invalid("bad progression data".into()));
    }
    let kk = Int::from(k);
    let step: Vec<Int> = p.iter().zip(q).map(|(a, b)| b - a).collect();
    if step.iter().any(|s| s % &kk != Int::from(0)) {
        return Err(Error::Invalid("points are not congruent modulo k".into()));
    }
    let step: Vec<Int> = step.iter().map(|s| s / &kk).collect();
    let pts: Vec<Vec<Int>> =
        (0..=k).map(|j| p.iter().zip(&step).map(|(a, s)| a + s * Int::from(j)).collect()).collect();
    if let Some(bad) = pts.iter().find(|x| !cell.contains(x)) {
        return Err(Error::Invalid(format!("point {bad:?} left the cell")));
    }
    Ok(pts)
}

/// Integers separated by whitespace or commas; `#` starts a comment.
pub fn parse_ap_set(text: &str) -> Result<BTreeSet<i64>> {
    let mut out = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v = tok
                .parse::<i64>()
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad integer `{tok}`") })?;
            if v.unsigned_abs() > 1 << 62 {
                return Err(Error::Parse { line: i + 1, msg: format!("`{tok}` out of range") });
            }
            out.insert(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn examples() {
        let w = find_ap(&set(&[1, 2, 3]), 3).unwrap().unwrap();
        assert_eq!(w, ApWitness { start: 1, difference: 1, length: 3 });
        let w = find_ap(&set(&[1, 5, 9, 13]), 4).unwrap().unwrap();
        assert_eq!((w.start, w.difference), (1, 4));
        assert!(find_ap(&set(&[1, 2, 4, 8]), 3).unwrap().is_none());
        assert!(find_ap(&set(&[1, 2]), 2).is_err());
        assert_eq!(ap_threshold(1, 3, 2).unwrap(), 18);
    }

    #[test]
    fn parser() {
        assert_eq!(parse_ap_set("1, 2 3\n# x\n-4 # y\n").unwrap(), set(&[-4, 1, 2, 3]));
        let e = parse_ap_set("1\n2 x").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn convexity_in_triangle() {
        let cell = Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1], vec![1, 1]], &[0, 0, 9]);
        let p = shortgf_core::num::ints(&[0, 0]);
        let q = shortgf_core::num::ints(&[6, 3]);
        let pts = convexity_progression(&cell, &p, &q, 3).unwrap();
        assert_eq!(pts[1], shortgf_core::num::ints(&[2, 1]));
        assert_eq!(pts.len(), 4);
        assert!(convexity_progression(&cell, &p, &shortgf_core::num::ints(&[5, 3]), 3).is_err());
    }
}
