use crate::error::{Error, Result};
use crate::gf::{expand, expand_limited, ExponentVector, LatticeBox, ShortGf};
use crate::num::strs;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectMode {
    Project,
    Anti,
    Specialize,
}

/// Brute-force projection of `supp f` (enumerated over `box`) onto `keep`. `Anti` returns the
/// kept sub-box minus the projection; `Specialize` additionally demands a unique witness per point.
pub fn oracle_project(f: &ShortGf, keep: &[usize], bx: &LatticeBox, mode: ProjectMode) -> Result<ShortGf> {
    oracle_project_limited(f, keep, bx, mode, None)
}

/// As [`oracle_project`], failing with [`Error::Resource`] once more than `limit` lattice points
/// would be enumerated (by the expansion, or by the kept sub-box for `Anti`).
pub fn oracle_project_limited(
    f: &ShortGf,
    keep: &[usize],
    bx: &LatticeBox,
    mode: ProjectMode,
    limit: Option<u64>,
) -> Result<ShortGf> {
    if let (ProjectMode::Anti, Some(lim)) = (mode, limit) {
        let sub = bx.select(keep).num_points();
        if sub > crate::num::Int::from(lim) {
            return Err(Error::Resource(format!("kept box has {sub} points, limit {lim}")));
        }
    }
    let support = expand_limited(f, bx, limit)?.support();
    let proj = project_points(&support, keep, mode == ProjectMode::Specialize)?;
    Ok(match mode {
        ProjectMode::Project | ProjectMode::Specialize => ShortGf::from_point_set(proj.iter(), keep.len()),
        ProjectMode::Anti => {
            let sub = bx.select(keep);
            let rest: Vec<ExponentVector> = sub.points().into_iter().filter(|p| !proj.contains(p)).collect();
            ShortGf::from_point_set(rest.iter(), keep.len())
        }
    })
}

/// Projection of a point set; with `unique`, fails on the first point with two witnesses.
pub fn project_points(
    points: &BTreeSet<ExponentVector>,
    keep: &[usize],
    unique: bool,
) -> Result<BTreeSet<ExponentVector>> {
    let n = points.iter().next().map_or(0, |p| p.len());
    let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let mut witness: BTreeMap<ExponentVector, ExponentVector> = BTreeMap::new();
    for p in points {
        let x = p.select(keep);
        let w = p.select(&drop);
        if let Some(prev) = witness.get(&x) {
            if unique && *prev != w {
                return Err(Error::NotUnique { x: strs(&x.0), w1: strs(&prev.0), w2: strs(&w.0) });
            }
        } else {
            witness.insert(x, w);
        }
    }
    Ok(witness.into_keys().collect())
}

/// `supp f ⊕ supp g` (pairwise sums), required to fit in `out_box`.
pub fn minkowski_oracle(f: &ShortGf, g: &ShortGf, bx: &LatticeBox, out_box: &LatticeBox) -> Result<ShortGf> {
    let sf = expand(f, bx)?.support();
    let sg = expand(g, bx)?.support();
    let mut sum = BTreeSet::new();
    for a in &sf {
        for b in &sg {
            let s = a.add(b);
            if !out_box.contains(&s) {
                return Err(Error::OutsideBox(strs(&s.0)));
            }
            sum.insert(s);
        }
    }
    Ok(ShortGf::from_point_set(sum.iter(), f.nvars))
}
