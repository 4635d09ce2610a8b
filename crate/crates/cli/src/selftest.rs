//! Oracle-backed suites mirroring the acceptance criteria. Each suite is seeded and returns a
//! one-line summary on success.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortgf_core::barvinok::polytope_gf;
use shortgf_core::calculus::{
    boolean_combine, choose_tau, coefficient, complement_in_box, compress, decompress, evaluate_at_one, hadamard,
    norm, BoolMode, NormResult,
};
use shortgf_core::gf::expand;
use shortgf_core::num::{rat, Int};
use shortgf_core::presburger::{disjointify, eval_formula, Formula};
use shortgf_core::random::{random_boxed_gf, random_polytope, random_qf_formula};
use shortgf_core::{ExponentVector, LatticeBox, ShortGf};
use shortgf_encoder::library::{constant_false, even_detector, squares_tester_3};
use shortgf_encoder::{
    compress_encoding, count_certificates, encode_alternating, encode_segment, minkowski_gadget, segment_gf,
    AltPipeline, Circuit, Prefix, DEFAULT_LIMIT,
};
use shortgf_numlab::*;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

pub type SuiteResult = Result<String, String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Quick,
    Full,
}

impl Mode {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Mode::Quick => quick,
            Mode::Full => full,
        }
    }
}

pub struct Suite {
    pub id: u32,
    pub name: &'static str,
    pub run: fn(Mode, u64) -> SuiteResult,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: u32,
    pub name: &'static str,
    pub outcome: SuiteResult,
    pub elapsed: Duration,
}

pub const SUITES: &[Suite] = &[
    Suite { id: 1, name: "barvinok-counting", run: barvinok_counting },
    Suite { id: 2, name: "operation-calculus", run: operation_calculus },
    Suite { id: 3, name: "compression-round-trip", run: compression_round_trip },
    Suite { id: 4, name: "segment-pipeline", run: segment_pipeline },
    Suite { id: 5, name: "three-variable-compression", run: three_variable_compression },
    Suite { id: 6, name: "jacobi-sigma", run: jacobi_sigma },
    Suite { id: 7, name: "square-congruences", run: square_congruences },
    Suite { id: 8, name: "prime-counting", run: prime_counting },
    Suite { id: 9, name: "ap-pigeonhole", run: ap_pigeonhole },
    Suite { id: 10, name: "certificates-minkowski", run: certificates_minkowski },
    Suite { id: 11, name: "alternating", run: alternating },
];

pub fn run_suite(s: &Suite, mode: Mode, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| (s.run)(mode, seed))
        .unwrap_or_else(|e| Err(format!("panic: {}", panic_message(&e))));
    SuiteReport { id: s.id, name: s.name, outcome, elapsed: start.elapsed() }
}

pub fn run_all(mode: Mode, seed: u64) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, mode, seed)).collect()
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown".into())
}

fn rng(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (suite << 32))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn support(f: &ShortGf, bx: &LatticeBox) -> Result<BTreeSet<ExponentVector>, String> {
    let t = expand(f, bx).map_err(e)?;
    check(t.is_zero_one(), || "expansion is not 0/1".into())?;
    Ok(t.support())
}

fn barvinok_counting(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 1);
    let cases = mode.pick(20, 100);
    for i in 0..cases {
        let n = 1 + i % 4;
        let p = random_polytope(&mut rng, n, 20);
        let gf = polytope_gf(&p).map_err(e)?;
        let got = evaluate_at_one(&gf).map_err(e)?;
        let want = match p.integer_bounds().map_err(e)? {
            None => 0,
            Some(b) => {
                let bx = LatticeBox::with_bounds(b.iter().map(|(l, _)| l.clone()).collect(), b.iter().map(|(_, h)| h + 1).collect());
                bx.points().iter().filter(|x| p.contains(&x.0)).count()
            }
        };
        check(got == rat(want as i64), || format!("{p}: GF count {got}, enumeration {want}"))?;
    }
    Ok(format!("{cases} polytopes in dimensions 1..4"))
}

fn operation_calculus(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 2);
    let cases = mode.pick(10, 50);
    for i in 0..cases {
        let n = 1 + i % 2;
        let r = 6;
        let bx = LatticeBox::cube(n, 1 << r);
        let f = random_boxed_gf(&mut rng, n, r);
        let g = random_boxed_gf(&mut rng, n, r);
        let sf = support(&f, &bx)?;
        let sg = support(&g, &bx)?;
        let h = hadamard(&f, &g, &bx).map_err(e)?;
        check(support(&h, &bx)? == &sf & &sg, || format!("hadamard mismatch in case {i}"))?;
        for (mode, want) in [
            (BoolMode::Intersect, &sf & &sg),
            (BoolMode::Union, &sf | &sg),
            (BoolMode::Minus, &sf - &sg),
        ] {
            let out = boolean_combine(&f, &g, &bx, mode).map_err(e)?;
            check(support(&out, &bx)? == want, || format!("{mode:?} mismatch in case {i}"))?;
        }
        let all: BTreeSet<ExponentVector> = bx.points().into_iter().collect();
        let comp = complement_in_box(&f, &bx).map_err(e)?;
        check(support(&comp, &bx)? == &all - &sf, || format!("complement mismatch in case {i}"))?;
        let probe = ExponentVector((0..n).map(|_| Int::from(rng.gen_range(0..1i64 << r))).collect());
        let c = coefficient(&f, &probe).map_err(e)?;
        check(c == rat(sf.contains(&probe) as i64), || format!("coefficient at {probe:?} in case {i}"))?;
        let want_norm = if sf.is_empty() {
            NormResult::Empty
        } else {
            let coords: Vec<Int> = (0..n).map(|j| sf.iter().map(|p| p.0[j].clone()).max().unwrap()).collect();
            let norm = coords.iter().max().cloned().unwrap();
            NormResult::Max { coords, norm }
        };
        check(norm(&f, r).map_err(e)? == want_norm, || format!("norm mismatch in case {i}"))?;
    }
    Ok(format!("{cases} GF pairs in one and two variables on boxes of side 64"))
}

fn compression_round_trip(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 3);
    let cases = mode.pick(10, 50);
    for i in 0..cases {
        let r = 3 + (i % 2) as u32;
        let g = random_boxed_gf(&mut rng, 2, r);
        let tau = choose_tau(&g, vec![2], r).map_err(e)?;
        let (f, used) = compress(&g, &tau).map_err(e)?;
        let back = decompress(&f, &used).map_err(e)?;
        let dom = used.domain();
        check(support(&back, &dom)? == support(&g, &dom)?, || format!("support changed in case {i}"))?;
        let (a, b) = (evaluate_at_one(&g).map_err(e)?, evaluate_at_one(&f).map_err(e)?);
        check(a == b, || format!("count {a} became {b} in case {i}"))?;
    }
    Ok(format!("{cases} two-variable GFs"))
}

fn segment_circuits(mode: Mode) -> Vec<(&'static str, Circuit)> {
    let mut v = vec![("even r=3", even_detector(3)), ("squares r=3", squares_tester_3()), ("false r=2", constant_false(2))];
    if mode == Mode::Full {
        v.push(("even r=2", even_detector(2)));
        v.push(("even r=4", even_detector(4)));
        v.push(("even r=8", even_detector(8)));
    }
    v
}

fn accepted_set(c: &Circuit) -> BTreeSet<ExponentVector> {
    c.accepted().into_iter().map(|x| ExponentVector(vec![BigInt::from(x)])).collect()
}

fn segment_pipeline(mode: Mode, _seed: u64) -> SuiteResult {
    let mut names = Vec::new();
    for (name, c) in segment_circuits(mode) {
        let enc = encode_segment(&c, DEFAULT_LIMIT).map_err(e)?;
        let union: BTreeSet<ExponentVector> = enc
            .pieces
            .iter()
            .map(|p| support(p, &enc.b_box()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        let proj = shortgf_encoder::segment::projection_xy(&enc, DEFAULT_LIMIT).map_err(e)?;
        check(union == proj, || format!("{name}: union of pieces differs from the projection"))?;
        // segment_gf specializes with a uniqueness check
        let seg = segment_gf(&enc, DEFAULT_LIMIT).map_err(e)?;
        let xb = LatticeBox::new(vec![BigInt::from(1u64) << enc.r]);
        check(support(&seg, &xb)? == accepted_set(&c), || format!("{name}: segment differs from truth table"))?;
        names.push(name);
    }
    Ok(format!("circuits: {}", names.join(", ")))
}

fn three_variable_compression(mode: Mode, _seed: u64) -> SuiteResult {
    let mut names = Vec::new();
    for (name, c) in segment_circuits(mode) {
        let enc = encode_segment(&c, DEFAULT_LIMIT).map_err(e)?;
        let comp = compress_encoding(&enc).map_err(e)?;
        check(comp.f.nvars == 3, || format!("{name}: compressed GF has {} variables", comp.f.nvars))?;
        let (a, b) = (
            shortgf_encoder::segment::projection_xy(&enc, DEFAULT_LIMIT).map_err(e)?,
            shortgf_encoder::segment::projection_xy(&comp, DEFAULT_LIMIT).map_err(e)?,
        );
        check(a == b, || format!("{name}: projections differ"))?;
        let xb = LatticeBox::new(vec![BigInt::from(1u64) << enc.r]);
        let (sa, sb) = (
            support(&segment_gf(&enc, DEFAULT_LIMIT).map_err(e)?, &xb)?,
            support(&segment_gf(&comp, DEFAULT_LIMIT).map_err(e)?, &xb)?,
        );
        check(sa == sb, || format!("{name}: segments differ"))?;
        names.push(name);
    }
    Ok(format!("3-variable encodings agree for: {}", names.join(", ")))
}

fn jacobi_sigma(mode: Mode, seed: u64) -> SuiteResult {
    let kmax = mode.pick(50, 200) as u64;
    let a = r4_coefficients(16, 10_000).map_err(e)?;
    for k in 1..=kmax {
        check(a[k as usize] == jacobi_rhs(k), || format!("a({k}) = {} but divisor formula gives {}", a[k as usize], jacobi_rhs(k)))?;
        let s = sigma_from_r4(k, &a).map_err(e)?;
        check(s == sigma(k), || format!("σ({k}) recovered as {s}, expected {}", sigma(k)))?;
    }
    let primes = primes_below(5000);
    let mut rng = rng(seed, 6);
    let mut semis = BTreeSet::new();
    while semis.len() < mode.pick(5, 20) {
        let p = primes[rng.gen_range(0..primes.len())];
        let q = primes[rng.gen_range(0..primes.len())];
        if p < q && p * q <= 10_000 {
            semis.insert((p, q));
        }
    }
    for &(p, q) in &semis {
        let n = p * q;
        let s = sigma_from_r4(n, &a).map_err(e)?;
        let got = factor_semiprime_from_sigma(n, s).map_err(e)?;
        check(got == (p, q), || format!("{n} factored as {got:?}"))?;
    }
    Ok(format!("k ≤ {kmax}, {} semiprimes ≤ 10^4", semis.len()))
}

fn square_congruences(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 7);
    let mut triples = vec![(0, 1, 3), (1, 8, 10)];
    for _ in 0..mode.pick(30, 100) {
        triples.push((rng.gen_range(1..=200), rng.gen_range(1..=200), rng.gen_range(1..=200)));
    }
    for &(a, b, g) in &triples {
        let got = count_square_roots(a, b, g).map_err(e)?;
        let want = count_square_roots_brute(a, b, g);
        check(got == want, || format!("({a},{b},{g}): GF {got}, loop {want}"))?;
    }
    check(count_square_roots(1, 8, 10) == Ok(5), || "α=1, β=8, γ=10 should give 5".into())?;
    Ok(format!("{} triples", triples.len()))
}

fn prime_counting(_mode: Mode, _seed: u64) -> SuiteResult {
    let primes = primes_below(1 << 16);
    for n in [100u64, 1_000, 10_000, (1 << 16) - 1] {
        let got = prime_pi(n, 16).map_err(e)?;
        let want = primes.partition_point(|&p| p <= n) as u64;
        check(got == want, || format!("π({n}) = {got}, sieve {want}"))?;
    }
    check(prime_pi(100, 7) == Ok(25), || "π(100) should be 25".into())?;
    Ok("n ∈ {10^2, 10^3, 10^4, 2^16 − 1}".into())
}

fn ap_pigeonhole(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 9);
    let want = mode.pick(20, 100);
    let vars = vec!["x".to_string(), "y".to_string()];
    let bx = LatticeBox::cube(2, 48);
    let mut tested: BTreeMap<u64, usize> = BTreeMap::new();
    let mut draws = 0;
    while tested.values().min().copied().unwrap_or(0) < want || tested.len() < 2 {
        draws += 1;
        if draws > 200 * want {
            return Err(format!("sampler produced too few large truth sets: {tested:?}"));
        }
        let f = random_qf_formula(&mut rng, &["x", "y"], 3, -10..=90);
        let cells = disjointify(&f, &vars, &bx).map_err(e)?;
        if cells.is_empty() {
            continue;
        }
        let mut s = BTreeSet::new();
        for c in &cells {
            for p in bx.points().into_iter().filter(|p| c.contains(&p.0)) {
                s.insert(p.0[0].to_i64().expect("small"));
            }
        }
        for k in [2u64, 3] {
            let t = ap_threshold(1, k, cells.len() as u64).map_err(e)?;
            if s.len() as u64 > t && tested.get(&k).copied().unwrap_or(0) < want {
                let w = find_ap(&s, k as usize + 1).map_err(e)?;
                check(w.is_some(), || format!("∃y ({f}): |S| = {} > {t} but no {}-term progression", s.len(), k + 1))?;
                *tested.entry(k).or_insert(0) += 1;
            }
        }
    }
    let rmax = mode.pick(14, 20) as u32;
    for r in 1..=rmax {
        let s: BTreeSet<i64> = segment_set(SegmentKind::Squares, r).map_err(e)?.points.iter().map(|&x| x as i64).collect();
        check(find_ap(&s, 4).map_err(e)?.is_none(), || format!("squares below 2^{r} contain a 4-term progression"))?;
    }
    Ok(format!("{want} formulas per k ∈ {{2, 3}} ({draws} drawn), squares AP4-free for r ≤ {rmax}"))
}

fn point_gf(points: &[u64]) -> ShortGf {
    let evs: Vec<ExponentVector> = points.iter().map(|&p| ExponentVector(vec![BigInt::from(p)])).collect();
    ShortGf::from_point_set(evs.iter(), 1)
}

fn certificates_minkowski(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 10);
    let r = 3u32;
    let side = 1u64 << r;
    let mut tables: Vec<Vec<Vec<bool>>> = vec![
        (0..side).map(|x| (0..side).map(|c| c == x).collect()).collect(),
        vec![vec![true; side as usize]; side as usize],
    ];
    for _ in 0..mode.pick(2, 6) {
        tables.push((0..side).map(|_| (0..side).map(|_| rng.gen_bool(0.4)).collect()).collect());
    }
    for (ti, table) in tables.iter().enumerate() {
        let pts: Vec<u64> = (0..side)
            .flat_map(|x| (0..side).map(move |c| (x, c)))
            .filter(|&(x, c)| table[x as usize][c as usize])
            .map(|(x, c)| x + (c << r))
            .collect();
        let f = point_gf(&pts);
        for x in 0..side {
            let want = table[x as usize].iter().filter(|&&b| b).count() as i64;
            let got = count_certificates(&f, x, r).map_err(e)?;
            check(got == rat(want), || format!("table {ti}, x={x}: {got} certificates, row sum {want}"))?;
        }
    }
    let families = mode.pick(5, 20);
    let t_box = LatticeBox::from_u64(&[16]);
    for i in 0..families {
        let k = rng.gen_range(1..=4);
        let pieces: Vec<ShortGf> = (0..k).map(|_| random_boxed_gf(&mut rng, 1, 4)).collect();
        let g = minkowski_gadget(&pieces, &t_box).map_err(e)?;
        let mut union = BTreeSet::new();
        for p in &pieces {
            union.extend(support(p, &t_box)?);
        }
        check(support(&g.slice, &t_box)? == union, || format!("family {i}: slice differs from the union"))?;
        check(g.matches_union, || format!("family {i}: gadget reports a mismatch"))?;
    }
    Ok(format!("{} accept tables, {families} piece families", tables.len()))
}

/// `{x : Q y Q' z Φ}` by direct evaluation over the box.
fn direct_language(phi: &Formula, vars: &[String], domain: &[i64; 3], prefix: Prefix) -> Result<BTreeSet<i64>, String> {
    let mut out = BTreeSet::new();
    for x in 0..domain[0] {
        let holds_for_y = |y: i64| -> Result<bool, String> {
            let mut all = true;
            let mut any = false;
            for z in 0..domain[2] {
                let v = eval_formula(phi, vars, &[Int::from(x), Int::from(y), Int::from(z)]).map_err(e)?;
                all &= v;
                any |= v;
            }
            Ok(match prefix {
                Prefix::Sigma => all,
                Prefix::Pi => any,
            })
        };
        let mut any_y = false;
        let mut all_y = true;
        for y in 0..domain[1] {
            let v = holds_for_y(y)?;
            any_y |= v;
            all_y &= v;
        }
        let member = match prefix {
            Prefix::Sigma => any_y,
            Prefix::Pi => all_y,
        };
        if member {
            out.insert(x);
        }
    }
    Ok(out)
}

fn alternating(mode: Mode, seed: u64) -> SuiteResult {
    let mut rng = rng(seed, 11);
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let domains: Vec<[i64; 3]> = match mode {
        Mode::Quick => vec![[8, 4, 8], [16, 4, 16]],
        Mode::Full => vec![[8, 4, 8], [16, 8, 16], [64, 16, 64]],
    };
    let per_domain = mode.pick(3, 4);
    let mut checked = 0;
    for d in &domains {
        let bx = LatticeBox::from_u64(&[d[0] as u64, d[1] as u64, d[2] as u64]);
        for _ in 0..per_domain {
            let phi = random_qf_formula(&mut rng, &["x", "y", "z"], 3, -8..=d[0] + d[2]);
            for prefix in [Prefix::Sigma, Prefix::Pi] {
                let pipe = AltPipeline::from_formula(&phi, &vars, bx.clone(), prefix).map_err(e)?;
                let got: BTreeSet<i64> =
                    pipe.language(DEFAULT_LIMIT).map_err(e)?.iter().map(|p| p.0[0].to_i64().expect("small")).collect();
                let want = direct_language(&phi, &vars, d, prefix)?;
                check(got == want, || format!("{prefix:?} on {d:?} for {phi}: {got:?} vs {want:?}"))?;
                checked += 1;
            }
        }
    }
    // circuit route: x1 ∨ c1 and x2 ∧ c1 with one certificate bit
    for (text, sigma, pi) in [
        ("circuit r=2 s=1\ng1 = OR x1 c1\nout g1\n", vec![0, 1, 2, 3], vec![1, 3]),
        ("circuit r=2 s=1\ng1 = AND x2 c1\nout g1\n", vec![2, 3], vec![]),
    ] {
        let c = shortgf_encoder::parse_circuit(text).map_err(e)?;
        for (prefix, want) in [(Prefix::Sigma, &sigma), (Prefix::Pi, &pi)] {
            let pipe = encode_alternating(&c, prefix, DEFAULT_LIMIT).map_err(e)?;
            let got: Vec<i64> = pipe
                .language(DEFAULT_LIMIT)
                .map_err(e)?
                .iter()
                .map(|p| p.0[0].to_i64().expect("small"))
                .collect();
            check(got == *want, || format!("{prefix:?} for {text:?}: {got:?}, expected {want:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} languages on boxes up to {:?}", domains.last().expect("nonempty")))
}
