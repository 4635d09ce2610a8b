use super::*;
use crate::barvinok::{polytope_gf, semigroup_gf, Polyhedron};
use crate::gf::{expand, ExponentVector, GfTerm, LatticeBox, ShortGf};
use crate::num::{int, rat};
use crate::random::{random_boxed_gf, random_polytope};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector::from_i64(v)
}

fn geo(a: i64, stop: i64, d: i64) -> ShortGf {
    ShortGf::new(1, vec![GfTerm::new(rat(1), ev(&[a]), vec![ev(&[d])]), GfTerm::new(rat(-1), ev(&[stop]), vec![ev(&[d])])])
        .unwrap()
}

fn support(f: &ShortGf, bx: &LatticeBox) -> BTreeSet<ExponentVector> {
    let t = expand(f, bx).unwrap();
    assert!(t.is_zero_one(), "expected 0/1 coefficients");
    t.support()
}

#[test]
fn hadamard_of_progressions() {
    let f = geo(0, 6, 1);
    let g = geo(0, 6, 2);
    let bx = LatticeBox::cube(1, 8);
    let h = hadamard(&f, &g, &bx).unwrap();
    let s: Vec<_> = support(&h, &bx).into_iter().collect();
    assert_eq!(s, vec![ev(&[0]), ev(&[2]), ev(&[4])]);
    assert!(h.index() <= 2);
}

#[test]
fn tau_hadamard_nonidentity() {
    // A over (t1,t2) = [0,4)^2, B over s = {0, 5, 9}; τ = (1, 4)
    let bx = LatticeBox::cube(2, 4);
    let a = bx.gf();
    let b = ShortGf::from_point_set([ev(&[0]), ev(&[5]), ev(&[9])].iter(), 1);
    let tau = vec![vec![int(1), int(4)]];
    let h = tau_hadamard(&a, &b, &tau, &bx).unwrap();
    let s: Vec<_> = support(&h, &bx).into_iter().collect();
    assert_eq!(s, vec![ev(&[0, 0]), ev(&[1, 1]), ev(&[1, 2])]);
}

#[test]
fn hadamard_matches_oracle_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=2 {
        let r = if n == 1 { 6 } else { 3 };
        let bx = LatticeBox::cube(n, 1 << r);
        for _ in 0..12 {
            let f = random_boxed_gf(&mut rng, n, r);
            let g = random_boxed_gf(&mut rng, n, r);
            let h = hadamard(&f, &g, &bx).unwrap();
            let want: BTreeSet<_> = support(&f, &bx).intersection(&support(&g, &bx)).cloned().collect();
            assert_eq!(support(&h, &bx), want);
        }
    }
}

#[test]
fn boolean_ops_match_set_ops() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=2 {
        let r = if n == 1 { 5 } else { 3 };
        let bx = LatticeBox::cube(n, 1 << r);
        for _ in 0..8 {
            let f = random_boxed_gf(&mut rng, n, r);
            let g = random_boxed_gf(&mut rng, n, r);
            let (sf, sg) = (support(&f, &bx), support(&g, &bx));
            let u = boolean_combine(&f, &g, &bx, BoolMode::Union).unwrap();
            assert_eq!(support(&u, &bx), sf.union(&sg).cloned().collect());
            let m = boolean_combine(&f, &g, &bx, BoolMode::Minus).unwrap();
            assert_eq!(support(&m, &bx), sf.difference(&sg).cloned().collect());
            let c = complement_in_box(&f, &bx).unwrap();
            let all: BTreeSet<_> = bx.points().into_iter().collect();
            assert_eq!(support(&c, &bx), all.difference(&sf).cloned().collect());
            assert!(u.index() <= 4 && m.index() <= 4);
        }
    }
}

#[test]
fn boolean_rejects_non_indicator() {
    let bx = LatticeBox::cube(1, 4);
    let two = ShortGf::new(1, vec![GfTerm::monomial(rat(2), ev(&[1]))]).unwrap();
    assert!(matches!(
        boolean_combine(&two, &bx.gf(), &bx, BoolMode::Union),
        Err(crate::Error::NotZeroOne { .. })
    ));
}

#[test]
fn coefficient_and_count_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let p = random_polytope(&mut rng, 2, 4);
        let Ok(f) = polytope_gf(&p) else { continue };
        let bx = LatticeBox::with_bounds(vec![int(-5); 2], vec![int(6); 2]);
        let table = expand(&f, &bx).unwrap();
        assert_eq!(count(&f).unwrap(), table.total());
        for x in [-1i64, 0, 2] {
            for y in [-2i64, 0, 1] {
                let a = ev(&[x, y]);
                assert_eq!(coefficient(&f, &a).unwrap(), table.get(&a));
            }
        }
    }
}

#[test]
fn evaluate_triangle_and_square() {
    let tri = Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1], vec![1, 1]], &[0, 0, 4]);
    assert_eq!(count(&polytope_gf(&tri).unwrap()).unwrap(), rat(15));
    assert_eq!(count(&LatticeBox::cube(3, 5).gf()).unwrap(), rat(125));
}

#[test]
fn norm_finds_coordinate_maxima() {
    let f = ShortGf::from_point_set([ev(&[1, 6]), ev(&[5, 2]), ev(&[3, 3])].iter(), 2);
    assert_eq!(norm(&f, 3).unwrap(), NormResult::Max { coords: vec![int(5), int(6)], norm: int(6) });
    assert_eq!(norm(&ShortGf::zero(2), 3).unwrap(), NormResult::Empty);
}

#[test]
fn proj_member_of_triangle() {
    // {(x, y) : 2 ≤ y ≤ x ≤ 3} projects to x ∈ {2, 3}
    let p = Polyhedron::from_i64(&[vec![-1, 1], vec![1, 0], vec![0, -1]], &[0, 3, -2]);
    let g = polytope_gf(&p).unwrap();
    for (x, want) in [(0, false), (1, false), (2, true), (3, true)] {
        assert_eq!(proj_member(&g, &ev(&[x])).unwrap(), want, "x = {x}");
    }
}

#[test]
fn oracle_projection_modes() {
    let f = ShortGf::from_point_set([ev(&[0, 1]), ev(&[0, 2]), ev(&[2, 0])].iter(), 2);
    let bx = LatticeBox::cube(2, 3);
    let p = oracle_project(&f, &[0], &bx, ProjectMode::Project).unwrap();
    assert_eq!(support(&p, &LatticeBox::cube(1, 3)), [ev(&[0]), ev(&[2])].into_iter().collect());
    let a = oracle_project(&f, &[0], &bx, ProjectMode::Anti).unwrap();
    assert_eq!(support(&a, &LatticeBox::cube(1, 3)), [ev(&[1])].into_iter().collect());
    assert!(matches!(
        oracle_project(&f, &[0], &bx, ProjectMode::Specialize),
        Err(crate::Error::NotUnique { .. })
    ));
    let s = oracle_project(&f, &[1], &bx, ProjectMode::Specialize).unwrap();
    assert_eq!(support(&s, &LatticeBox::cube(1, 3)).len(), 3);
}

#[test]
fn minkowski_sum_of_small_sets() {
    let f = ShortGf::from_point_set([ev(&[0]), ev(&[3])].iter(), 1);
    let g = ShortGf::from_point_set([ev(&[0]), ev(&[1])].iter(), 1);
    let bx = LatticeBox::cube(1, 4);
    let s = minkowski_oracle(&f, &g, &bx, &LatticeBox::cube(1, 8)).unwrap();
    assert_eq!(support(&s, &LatticeBox::cube(1, 8)), [0, 1, 3, 4].iter().map(|&v| ev(&[v])).collect());
    assert!(minkowski_oracle(&f, &f, &bx, &bx).is_err());
}

#[test]
fn compress_example() {
    let g = ShortGf::from_point_set([ev(&[0, 0]), ev(&[1, 2]), ev(&[3, 1])].iter(), 2);
    let tau = TauMap::new(2, vec![2]).unwrap();
    let (f, used) = compress(&g, &tau).unwrap();
    assert_eq!(used.n(), int(4));
    assert_eq!(support(&f, &LatticeBox::cube(1, 16)), [0, 9, 7].iter().map(|&v| ev(&[v])).collect());
    let back = decompress(&ShortGf::monomial(ev(&[9])), &used).unwrap();
    assert_eq!(support(&back, &used.domain()), [ev(&[1, 2])].into_iter().collect());
}

#[test]
fn choose_tau_uses_norm() {
    let g = ShortGf::from_point_set([ev(&[4, 1]), ev(&[0, 3])].iter(), 2);
    let tau = choose_tau(&g, vec![2], 4).unwrap();
    assert_eq!(tau.n(), int(8));
}

#[test]
fn compress_doubles_n_on_degenerate_denominator() {
    // denominator (−2, 1) maps to zero under N = 2
    let g = ShortGf::new(
        2,
        vec![
            GfTerm::new(rat(1), ev(&[0, 0]), vec![ev(&[-2, 1])]),
            GfTerm::new(rat(-1), ev(&[-4, 2]), vec![ev(&[-2, 1])]),
        ],
    )
    .unwrap();
    let (_, used) = compress(&g, &TauMap::new(1, vec![2]).unwrap()).unwrap();
    assert_eq!(used.log_n, 2);
}

#[test]
fn compress_round_trip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..6 {
        let g = random_boxed_gf(&mut rng, 2, 2);
        let tau = TauMap::new(2, vec![2]).unwrap();
        let (f, used) = compress(&g, &tau).unwrap();
        let back = decompress(&f, &used).unwrap();
        let dom = used.domain();
        assert_eq!(support(&back, &dom), support(&g, &dom));
    }
}

#[test]
fn semigroup_hadamard_interval_multiplicities() {
    // numerical semigroup ⟨3, 5⟩ restricted to [0, 12)
    let s = semigroup_gf(&[int(3), int(5)]).unwrap();
    let bx = LatticeBox::cube(1, 12);
    let h = hadamard(&s, &bx.gf(), &bx).unwrap();
    let want: BTreeSet<_> = [0, 3, 5, 6, 8, 9, 10, 11].iter().map(|&v| ev(&[v])).collect();
    assert_eq!(support(&h, &bx), want);
    assert_eq!(count(&h).unwrap(), rat(8));
}

#[test]
fn hadamard_bounds_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let bx = LatticeBox::cube(2, 8);
    for _ in 0..5 {
        let f = random_boxed_gf(&mut rng, 2, 3);
        let g = random_boxed_gf(&mut rng, 2, 3);
        let h = hadamard(&f, &g, &bx).unwrap();
        assert!(h.index() <= f.index() + g.index());
    }
}
