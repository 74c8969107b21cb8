mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::el;
use seifert_core::exactmath::{cokernel, Int, Rat};
use seifert_core::seifert::{chern_class, Coefficient, QClass, SeifertData};
use seifert_core::topology::{
    chern_pairings, h1_of, h1_orb, h1_y, h1_y_relations, qhs_check, reconstruct_from_chern, section_lattice,
    BettiData, IntersectionProfile,
};
use seifert_core::Error;

#[test]
fn worked_projective_line_is_a_homology_sphere() {
    let sd = common::p1_fixture();
    let profile = common::p1_profile(2, -1);
    assert!(h1_of(&sd, &profile).unwrap().is_trivial());
    assert_eq!(chern_pairings(&sd, &profile).unwrap(), vec![Rat::new(Int::from(1), Int::from(6))]);
    let betti = BettiData::new(vec![1, 0, 1], vec![true]).unwrap();
    assert!(qhs_check(&betti, true));
    assert!(!qhs_check(&betti, false));
}

#[test]
fn lens_spaces() {
    // P^1 with L = O(-p) and no branching: S^3 / (Z/p)
    for p in 1..=12i64 {
        let profile = IntersectionProfile::from_i64s(&[], &[-p]).unwrap();
        assert_eq!(h1_y(&profile, &[]).unwrap().order(), Some(Int::from(p)));
    }
    // two exceptional fibres 1/2 and 1/3 over L = 0: |H_1| = |2 * 3 * (0 + 1/2 + 1/3)| = 5
    let profile = common::p1_profile(2, 0);
    assert_eq!(h1_y(&profile, &[(1, 2), (1, 3)]).unwrap().to_string(), "ℤ/5");
}

#[test]
fn order_of_h1_is_the_euler_number_times_the_multiplicities() {
    // over P^1, |H_1(Y)| = |e| prod c_i with e = L + sum b_i / c_i
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let k = rng.gen_range(0..=4);
        let l = rng.gen_range(-5i64..=5);
        let coeffs: Vec<(u64, u64)> = (0..k)
            .map(|_| {
                let c = rng.gen_range(1..=7u64);
                (rng.gen_range(0..c), c)
            })
            .collect();
        let e = coeffs
            .iter()
            .fold(Rat::from_integer(Int::from(l)), |acc, &(b, c)| acc + Rat::new(Int::from(b), Int::from(c)));
        let prod: u64 = coeffs.iter().map(|&(_, c)| c).product();
        let expected = (e * Rat::from_integer(Int::from(prod))).to_integer();
        let h = h1_y(&common::p1_profile(k, l), &coeffs).unwrap();
        match h.order() {
            Some(n) => assert_eq!(n, num_traits::Signed::abs(&expected)),
            None => assert_eq!(expected, Int::from(0)),
        }
    }
}

#[test]
fn killing_the_fibre_class_gives_the_orbifold_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let t = rng.gen_range(0..=3usize);
        let n = rng.gen_range(0..=4usize);
        let pairings: Vec<Vec<i64>> = (0..n).map(|_| (0..t).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let l: Vec<i64> = (0..t).map(|_| rng.gen_range(-4..=4)).collect();
        let coeffs: Vec<(u64, u64)> = (0..n)
            .map(|_| {
                let c = rng.gen_range(1..=6u64);
                (rng.gen_range(0..c), c)
            })
            .collect();
        let profile = IntersectionProfile::from_i64s(&pairings, &l).unwrap();
        let mut rel = h1_y_relations(&profile, &coeffs).unwrap();
        let mut kill = vec![Int::from(0); n + 1];
        kill[0] = Int::from(1);
        rel.push_row(kill).unwrap();
        let c: Vec<u64> = coeffs.iter().map(|&(_, c)| c).collect();
        assert_eq!(cokernel(&rel), h1_orb(&profile, &c).unwrap());
    }
}

#[test]
fn section_lattice_is_the_lcm() {
    assert_eq!(section_lattice(&[2, 3, 4]).unwrap(), 12);
    assert_eq!(section_lattice(&[1]).unwrap(), 1);
    assert!(section_lattice(&[]).is_err());
}

#[test]
fn betti_data_shape() {
    assert!(BettiData::new(vec![1, 0], vec![]).is_err());
    assert!(BettiData::new(vec![2, 0, 2], vec![true]).is_err());
    let p2 = BettiData::new(vec![1, 0, 1, 0, 1], vec![true, true]).unwrap();
    assert!(qhs_check(&p2, true));
    let p1xp1 = BettiData::new(vec![1, 0, 2, 0, 1], vec![true, true]).unwrap();
    assert!(!qhs_check(&p1xp1, true));
}

#[test]
fn reconstruction_on_projective_line() {
    let base = Arc::new(common::projective_line(2));
    let profile = common::p1_profile(2, 0);
    let target = QClass::new(el(&[1]), Int::from(6)).unwrap();
    let sd = reconstruct_from_chern(&base, &profile, &[2, 3], &target).unwrap().unwrap();
    assert_eq!(sd.l_class(), &el(&[-1]));
    assert_eq!(sd.coefficients(), &[Coefficient::new(1, 2).unwrap(), Coefficient::new(2, 3).unwrap()]);
    // 1/5 has no representative with denominators 2 and 3
    let none = QClass::new(el(&[1]), Int::from(5)).unwrap();
    assert!(reconstruct_from_chern(&base, &profile, &[2, 3], &none).unwrap().is_none());
    // gcd(2, 4) != 1 leaves H_1^orb = Z/2
    assert!(matches!(
        reconstruct_from_chern(&base, &profile, &[2, 4], &target),
        Err(Error::AmbiguityPossible(_))
    ));
}

#[test]
fn reconstruction_needs_class_group_z() {
    let base = Arc::new(common::base_with_torsion());
    let profile = IntersectionProfile::from_i64s(&[vec![1], vec![1]], &[0]).unwrap();
    let target = QClass::integral(el(&[1, 0]));
    assert!(matches!(
        reconstruct_from_chern(&base, &profile, &[1, 1], &target),
        Err(Error::Undecidable(_))
    ));
}

#[test]
fn reconstruction_inverts_chern_on_the_plane() {
    // conics with odd multiplicity: H_1^orb = Z / (c, 2) = 0
    let base = Arc::new(common::projective_plane(&[2]));
    let profile = IntersectionProfile::from_i64s(&[vec![2]], &[0]).unwrap();
    for c in [3u64, 5, 7] {
        for b in 0..c {
            for l in -3i64..=3 {
                let sd = SeifertData::new(base.clone(), el(&[l]), vec![Coefficient::fractional(b, c)]).unwrap();
                let back = reconstruct_from_chern(&base, &profile, &[c], &chern_class(&sd)).unwrap().unwrap();
                assert_eq!((back.l_class(), back.coefficients()), (sd.l_class(), sd.coefficients()));
            }
        }
    }
}
