use crate::circuit::Circuit;
use crate::cnf::{circuit_to_3cnf, cnf_to_pa, PaEncoding};
use num_bigint::BigInt;
use shortgf_core::barvinok::polytope_gf;
use shortgf_core::calculus::{compress, oracle_project_limited, ProjectMode, TauMap};
use shortgf_core::gf::{expand, parse_gf};
use shortgf_core::presburger::disjointify;
use shortgf_core::{Error, ExponentVector, LatticeBox, Result, ShortGf};
use std::collections::BTreeSet;
use std::fmt;

/// Default cap on the number of lattice points an oracle step may enumerate.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

/// `f_r` over `(x, y, z)` (or `(x, y, w)` after compression) with its boxes and the per-cell
/// `(x, y)`-projections ("pieces").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentEncoding {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    /// 3 for `z ∈ [0,2^q)^3`, 1 once compressed to `w = τ_N(z)`.
    pub z_dims: usize,
    /// `log2 N` of the compression map, 0 when uncompressed.
    pub log_n: u32,
    pub f: ShortGf,
    pub pieces: Vec<ShortGf>,
}

impl SegmentEncoding {
    /// `B_r = [0,2^r) × [0,2^p)`.
    pub fn b_box(&self) -> LatticeBox {
        LatticeBox::new(vec![BigInt::from(1) << self.r, BigInt::from(1) << self.p])
    }

    /// `D_r`: `B_r × [0,2^q)^3`, or `B_r × [0,N^3)` when compressed.
    pub fn domain(&self) -> LatticeBox {
        let mut hi = vec![BigInt::from(1) << self.r, BigInt::from(1) << self.p];
        if self.z_dims == 3 {
            hi.extend(std::iter::repeat(BigInt::from(1) << self.q).take(3));
        } else {
            hi.push(BigInt::from(1) << (3 * self.log_n));
        }
        LatticeBox::new(hi)
    }

    pub fn tau(&self) -> Option<TauMap> {
        (self.z_dims == 1).then(|| TauMap::new(self.log_n, vec![1, 1, 3]).expect("valid τ"))
    }
}

/// Builds `f_r = Σ_{cells} F(P_i ∩ Z^5)` for `¬Φ_r` on `D_r` and the pieces `proj_{x,y}(P_i ∩ Z^5)`.
/// The projections are computed by enumeration, standing in for the Barvinok–Woods projection.
pub fn encode_segment(c: &Circuit, limit: u64) -> Result<SegmentEncoding> {
    encode_pa(&cnf_to_pa(&circuit_to_3cnf(c)), limit)
}

pub(crate) fn encode_pa(pa: &PaEncoding, limit: u64) -> Result<SegmentEncoding> {
    let mut enc = SegmentEncoding {
        r: pa.r,
        p: pa.p,
        q: pa.q,
        z_dims: 3,
        log_n: 0,
        f: ShortGf::zero(5).bounded(5),
        pieces: Vec::new(),
    };
    let domain = enc.domain();
    for cell in disjointify(&pa.not_phi, &pa.vars(), &domain)? {
        let g = polytope_gf(&cell)?;
        if g.terms.is_empty() {
            continue;
        }
        let Some(bounds) = cell.integer_bounds()? else { continue };
        let (lo, hi): (Vec<_>, Vec<_>) = bounds.into_iter().map(|(l, h)| (l, h + 1)).unzip();
        let cell_box = LatticeBox::with_bounds(lo, hi);
        let piece = oracle_project_limited(&g, &[0, 1], &cell_box, ProjectMode::Project, Some(limit))?;
        if !piece.terms.is_empty() {
            enc.pieces.push(piece);
        }
        enc.f.terms.extend(g.terms);
    }
    Ok(enc)
}

/// `spec_x(B_r ∖ proj_{x,y}(f_r))`, verifying on the way that the pieces' union is `proj_{x,y}(f_r)`
/// and that every accepted `x` has a unique witness `y`.
pub fn segment_gf(e: &SegmentEncoding, limit: u64) -> Result<ShortGf> {
    let domain = e.domain();
    let b = e.b_box();
    let proj = oracle_project_limited(&e.f, &[0, 1], &domain, ProjectMode::Project, Some(limit))?;
    let proj_set = expand(&proj, &b)?.support();
    let mut union = BTreeSet::new();
    for piece in &e.pieces {
        union.extend(expand(piece, &b)?.support());
    }
    if union != proj_set {
        return Err(Error::Invalid("union of pieces differs from proj_{x,y}(f_r)".into()));
    }
    let anti = oracle_project_limited(&e.f, &[0, 1], &domain, ProjectMode::Anti, Some(limit))?;
    oracle_project_limited(&anti, &[0], &b, ProjectMode::Specialize, Some(limit))
}

/// `proj_{x,y}` support of `f_r` (oracle).
pub fn projection_xy(e: &SegmentEncoding, limit: u64) -> Result<BTreeSet<ExponentVector>> {
    let proj = oracle_project_limited(&e.f, &[0, 1], &e.domain(), ProjectMode::Project, Some(limit))?;
    Ok(expand(&proj, &e.b_box())?.support())
}

/// Packs `z` into `w = z_1 + N z_2 + N^2 z_3` with `N = 2^q` (doubled if a denominator collapses),
/// leaving `x`, `y` and the pieces unchanged.
pub fn compress_encoding(e: &SegmentEncoding) -> Result<SegmentEncoding> {
    if e.z_dims != 3 {
        return Err(Error::Invalid("encoding is already compressed".into()));
    }
    let tau = TauMap::new(e.q as u32, vec![1, 1, 3])?;
    let (f, used) = compress(&e.f, &tau)?;
    Ok(SegmentEncoding { z_dims: 1, log_n: used.log_n, f, ..e.clone() })
}

impl fmt::Display for SegmentEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "segment r={} p={} q={} zdims={} logn={} pieces={}",
            self.r,
            self.p,
            self.q,
            self.z_dims,
            self.log_n,
            self.pieces.len()
        )?;
        write!(f, "{}", self.f)?;
        for p in &self.pieces {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the text written by `Display`: a `segment` header followed by `f_r` and the pieces,
/// each in the GF text format.
pub fn parse_segment(text: &str) -> Result<SegmentEncoding> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split(' ');
    if toks.next() != Some("segment") {
        return Err(err(1, "expected `segment` header"));
    }
    let mut vals = Vec::new();
    for key in ["r", "p", "q", "zdims", "logn", "pieces"] {
        let t = toks.next().ok_or_else(|| err(1, format!("missing {key}=")))?;
        let v = t
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| err(1, format!("bad `{key}=` field")))?;
        vals.push(v);
    }
    if toks.next().is_some() {
        return Err(err(1, "trailing header tokens"));
    }
    let [r, p, q, z_dims, log_n, npieces] = vals[..] else { unreachable!() };
    let ok = (1..=62).contains(&r)
        && p <= 62
        && (1..=62).contains(&q)
        && ((z_dims == 3 && log_n == 0) || (z_dims == 1 && (1..=20).contains(&log_n)));
    if !ok {
        return Err(err(1, "header values out of range"));
    }
    // split the remainder into GF blocks at `gf` header lines
    let mut blocks: Vec<(usize, String)> = Vec::new();
    for (i, l) in lines.iter().enumerate().skip(1) {
        if l.starts_with("gf ") {
            blocks.push((i + 1, String::new()));
        }
        let (_, b) = blocks.last_mut().ok_or_else(|| err(i + 1, "expected a `gf` block"))?;
        b.push_str(l);
        b.push('\n');
    }
    if blocks.len() != npieces + 1 {
        return Err(err(lines.len(), format!("expected {} GF blocks, found {}", npieces + 1, blocks.len())));
    }
    let mut gfs = Vec::with_capacity(blocks.len());
    for (start, b) in &blocks {
        let g = parse_gf(b).map_err(|e| match e {
            Error::Parse { line, msg } => err(start + line - 1, msg),
            other => other,
        })?;
        gfs.push((*start, g));
    }
    let mut gfs = gfs.into_iter();
    let (fl, f) = gfs.next().expect("at least one block");
    if f.nvars != 2 + z_dims {
        return Err(err(fl, format!("f_r must have {} variables", 2 + z_dims)));
    }
    let mut pieces = Vec::new();
    for (l, g) in gfs {
        if g.nvars != 2 {
            return Err(err(l, "pieces must have 2 variables"));
        }
        pieces.push(g);
    }
    Ok(SegmentEncoding { r, p, q, z_dims, log_n: log_n as u32, f, pieces })
}
