use std::path::Path;
use std::process::{Command, Output};

fn shortgf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortgf")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

/// `(1 − t^4)/(1 − t)`.
const FOUR: &str = "gf nvars=1 index=1\nterm c=1/1 a=0 b=1\nterm c=-1/1 a=4 b=1\n";
/// Even numbers below 16: `(1 − t^16)/(1 − t^2)`.
const EVENS: &str = "gf nvars=1 index=1\nterm c=1/1 a=0 b=2\nterm c=-1/1 a=16 b=2\n";
/// Multiples of 3 below 12.
const THREES: &str = "gf nvars=1 index=1\nterm c=1/1 a=0 b=3\nterm c=-1/1 a=12 b=3\n";

#[test]
fn count_interval() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "f.gf", FOUR);
    let o = shortgf(&["count", "f.gf"], d.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("sha256="));
}

#[test]
fn intersect_then_count() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.gf", EVENS);
    write(d.path(), "b.gf", THREES);
    let o = shortgf(&["op", "intersect", "a.gf", "b.gf", "--box", "6", "-o", "c.gf"], d.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = shortgf(&["count", "c.gf"], d.path());
    // {0, 6}
    let oracle = (0..64).filter(|x| x % 2 == 0 && x < &16 && x % 3 == 0 && x < &12).count();
    assert_eq!(stdout(&o), format!("{oracle}\n"));
    for (kind, want) in [("union", "10\n"), ("minus", "6\n")] {
        let o = shortgf(&["op", kind, "a.gf", "b.gf", "--box", "6", "-o", "u.gf"], d.path());
        assert!(o.status.success());
        assert_eq!(stdout(&shortgf(&["count", "u.gf"], d.path())), want, "{kind}");
    }
    let o = shortgf(&["op", "complement", "a.gf", "--box", "4", "-o", "n.gf"], d.path());
    assert!(o.status.success());
    assert_eq!(stdout(&shortgf(&["count", "n.gf"], d.path())), "8\n");
}

#[test]
fn coefficient_and_norm() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.gf", EVENS);
    assert_eq!(stdout(&shortgf(&["coeff", "a.gf", "--at", "6"], d.path())), "1\n");
    assert_eq!(stdout(&shortgf(&["coeff", "a.gf", "--at", "7"], d.path())), "0\n");
    assert_eq!(stdout(&shortgf(&["norm", "a.gf", "--box", "5"], d.path())), "norm 14 coords 14\n");
}

#[test]
fn polyhedron_and_formula_counts() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "t.poly", "poly n=2\n-1 0 <= 0\n0 -1 <= 0\n1 1 <= 2\n");
    assert_eq!(stdout(&shortgf(&["count", "t.poly"], d.path())), "6\n");
    write(d.path(), "f.pa", "x + y <= 2 & x >= 0 & y >= 0\n");
    assert_eq!(stdout(&shortgf(&["count", "f.pa", "--box", "3"], d.path())), "6\n");
}

#[test]
fn projections() {
    let d = tempfile::tempdir().unwrap();
    // the triangle 0 ≤ y ≤ x ≤ 3
    write(d.path(), "t.poly", "poly n=2\n0 -1 <= 0\n-1 1 <= 0\n1 0 <= 3\n");
    let o = shortgf(&["count", "t.poly"], d.path());
    assert_eq!(stdout(&o), "10\n");
    let text = "gf nvars=2 index=0\nterm c=1/1 a=1,0 b=\nterm c=1/1 a=1,1 b=\nterm c=1/1 a=3,2 b=\n";
    write(d.path(), "p.gf", text);
    let o = shortgf(&["project", "p.gf", "--keep", "0", "--box", "2"], d.path());
    assert_eq!(stdout(&o), "gf nvars=1 index=0\nterm c=1/1 a=1 b=\nterm c=1/1 a=3 b=\n");
    let o = shortgf(&["op", "antiproject", "p.gf", "--keep", "0", "--box", "2"], d.path());
    assert_eq!(stdout(&o), "gf nvars=1 index=0\nterm c=1/1 a=0 b=\nterm c=1/1 a=2 b=\n");
    let o = shortgf(&["op", "specialize", "p.gf", "--keep", "0", "--box", "2"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));
}

#[test]
fn compress_and_decompress() {
    let d = tempfile::tempdir().unwrap();
    let text = "gf nvars=2 index=0\nterm c=1/1 a=1,0 b=\nterm c=1/1 a=2,3 b=\n";
    write(d.path(), "p.gf", text);
    let o = shortgf(&["op", "compress", "p.gf", "--tau", "2:2", "-o", "c.gf"], d.path());
    assert!(o.status.success());
    let o = shortgf(&["op", "decompress", "c.gf", "--tau", "2:2"], d.path());
    let back = stdout(&o);
    write(d.path(), "back.gf", &back);
    assert_eq!(stdout(&shortgf(&["count", "back.gf"], d.path())), "2\n");
    assert_eq!(stdout(&shortgf(&["coeff", "back.gf", "--at", "2,3"], d.path())), "1\n");
}

#[test]
fn encode_segment_and_pieces() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "even.circ", "circuit r=3\ng1 = NOT x1\nout g1\n");
    let o = shortgf(&["encode", "--circuit", "even.circ", "--emit-pieces", "pieces", "-o", "even.enc"], d.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(d.path().join("pieces/piece_0.gf").exists());
    let o = shortgf(&["segment", "even.enc"], d.path());
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("# segment: {0, 2, 4, 6}"));
    let o = shortgf(&["encode", "--circuit", "even.circ", "--compress", "-o", "c.enc"], d.path());
    assert!(o.status.success());
    let o = shortgf(&["segment", "c.enc"], d.path());
    assert!(String::from_utf8_lossy(&o.stderr).contains("# segment: {0, 2, 4, 6}"));
}

#[test]
fn alternating_prefixes() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "or.circ", "circuit r=2 s=1\ng1 = OR x1 c1\nout g1\n");
    assert_eq!(stdout(&shortgf(&["alt", "--prefix", "EA", "--circuit", "or.circ"], d.path())), "0\n1\n2\n3\n");
    assert_eq!(stdout(&shortgf(&["alt", "--prefix", "AE", "--circuit", "or.circ"], d.path())), "1\n3\n");
    assert_eq!(shortgf(&["alt", "--prefix", "EE", "--circuit", "or.circ"], d.path()).status.code(), Some(1));
}

#[test]
fn demos() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(stdout(&shortgf(&["demo", "factor", "--n", "77", "--sigma", "96"], d.path())), "77 = 7 * 11\n");
    assert_eq!(shortgf(&["demo", "factor", "--n", "16", "--sigma", "31"], d.path()).status.code(), Some(2));
    assert_eq!(stdout(&shortgf(&["demo", "pi", "--n", "100"], d.path())), "pi(100) = 25  (r=7)\n");
    let o = stdout(&shortgf(&["demo", "sqcong", "--alpha", "1", "--beta", "8", "--gamma", "10"], d.path()));
    assert_eq!(o, "alpha=1 beta=8 gamma=10 gf=5 loop=5\n");
    let o = stdout(&shortgf(&["demo", "jacobi", "--r", "16", "--K", "12"], d.path()));
    assert_eq!(o.lines().count(), 13);
    assert!(o.lines().skip(1).all(|l| l.trim_end().ends_with("true")));
    let o = stdout(&shortgf(&["demo", "squares", "--r", "6"], d.path()));
    assert!(o.contains("# 0 1 4 9 16 25 36 49"));
    write(d.path(), "s.txt", "1 5 9 13 # tail\n");
    let o = stdout(&shortgf(&["demo", "ap", "--set", "s.txt", "--k", "4"], d.path()));
    assert_eq!(o, "start=1 diff=4 k=4  [1 5 9 13]\n");
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(shortgf(&["frobnicate"], d.path()).status.code(), Some(1));
    assert_eq!(shortgf(&[], d.path()).status.code(), Some(1));
    assert_eq!(shortgf(&["--help"], d.path()).status.code(), Some(0));
    write(d.path(), "bad.gf", "gf nvars=1 index=1\nterm c=1/1 a=0 b=1 junk\n");
    let o = shortgf(&["count", "bad.gf"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(shortgf(&["count", "missing.gf"], d.path()).status.code(), Some(2));
    write(d.path(), "a.gf", EVENS);
    assert_eq!(shortgf(&["op", "intersect", "a.gf", "a.gf"], d.path()).status.code(), Some(1));
    write(d.path(), "sq.circ", "circuit r=3\ng1 = AND x3 x1\ng2 = OR g1 x2\ng3 = NOT g2\nout g3\n");
    let o = shortgf(&["encode", "--circuit", "sq.circ", "--limit-points", "10"], d.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn deterministic_outputs() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "sq.circ", "circuit r=3\ng1 = AND x3 x1\ng2 = OR g1 x2\ng3 = NOT g2\nout g3\n");
    let a = shortgf(&["encode", "--circuit", "sq.circ", "--seed", "5"], d.path());
    let b = shortgf(&["encode", "--circuit", "sq.circ", "--seed", "5"], d.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn quick_selftest() {
    let d = tempfile::tempdir().unwrap();
    let t = std::time::Instant::now();
    let o = shortgf(&["selftest", "--quick"], d.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(t.elapsed().as_secs() < 60);
}
