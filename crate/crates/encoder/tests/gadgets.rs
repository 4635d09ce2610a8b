use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortgf_core::num::rat;
use shortgf_core::random::random_boxed_gf;
use shortgf_core::{ExponentVector, LatticeBox, ShortGf};
use shortgf_encoder::*;

fn set(points: &[u64]) -> ShortGf {
    let evs: Vec<ExponentVector> = points.iter().map(|&p| ExponentVector(vec![BigInt::from(p)])).collect();
    ShortGf::from_point_set(evs.iter(), 1)
}

#[test]
fn diagonal_machine_has_one_certificate() {
    let r = 2;
    let f = set(&(0..4).map(|x| x + (x << r)).collect::<Vec<_>>());
    for x in 0..4 {
        assert_eq!(count_certificates(&f, x, r).unwrap(), rat(1));
    }
}

#[test]
fn accept_all_has_2_to_r() {
    let r = 3;
    let f = LatticeBox::from_u64(&[1 << (2 * r)]).gf();
    for x in 0..8 {
        assert_eq!(count_certificates(&f, x, r).unwrap(), rat(8));
    }
}

#[test]
fn random_accept_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let r = 3u32;
    for _ in 0..5 {
        let table: Vec<Vec<bool>> = (0..8).map(|_| (0..8).map(|_| rng.gen_bool(0.4)).collect()).collect();
        let pts: Vec<u64> = (0..8u64)
            .flat_map(|x| (0..8u64).map(move |c| (x, c)))
            .filter(|&(x, c)| table[x as usize][c as usize])
            .map(|(x, c)| x + (c << r))
            .collect();
        let f = set(&pts);
        for x in 0..8u64 {
            let want = table[x as usize].iter().filter(|&&b| b).count() as i64;
            assert_eq!(count_certificates(&f, x, r).unwrap(), rat(want));
        }
    }
}

#[test]
fn minkowski_two_singletons() {
    let g = minkowski_gadget(&[set(&[1]), set(&[2])], &LatticeBox::from_u64(&[4])).unwrap();
    assert!(g.matches_union);
    let slice = shortgf_core::gf::expand(&g.slice, &LatticeBox::from_u64(&[4])).unwrap();
    assert_eq!(slice.support().len(), 2);
}

#[test]
fn minkowski_single_piece() {
    let g = minkowski_gadget(&[set(&[0, 3, 5])], &LatticeBox::from_u64(&[8])).unwrap();
    assert!(g.matches_union);
}

#[test]
fn minkowski_random_pieces() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..4 {
        let pieces: Vec<ShortGf> = (0..3).map(|_| random_boxed_gf(&mut rng, 1, 4)).collect();
        let g = minkowski_gadget(&pieces, &LatticeBox::from_u64(&[16])).unwrap();
        assert!(g.matches_union);
    }
}
