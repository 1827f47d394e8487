use horofano::exactmath::Rational;
use horofano::fano::{
    degree, enumerate_reflexive, enumerate_reflexive_with, has_only_origin_inside, is_locally_factorial, is_q_factorial, is_q_reflexive,
    is_reflexive, is_smooth, raw_reflexive_by_subsets, raw_reflexive_rank2,
};
use horofano::horospace::HoroSpace;
use horofano::rootsys::Family;
use num_traits::Signed;

fn planar_spaces() -> Vec<HoroSpace> {
    vec![
        HoroSpace::toric(2),
        HoroSpace::mod_unipotent(&[(Family::A, 1)], 1).unwrap(),
        HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap(),
        HoroSpace::mod_unipotent(&[(Family::A, 2)], 0).unwrap(),
    ]
}

#[test]
fn planar_walk_agrees_with_subset_search() {
    for space in planar_spaces() {
        let mut walk: Vec<_> = raw_reflexive_rank2(&space, 1)
            .into_iter()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect();
        let mut subsets = raw_reflexive_by_subsets(&space, 1, 10);
        walk.sort();
        subsets.sort();
        assert_eq!(walk, subsets);
    }
}

#[test]
fn corpus_invariants() {
    for space in planar_spaces() {
        let a = space.colors().iter().map(|c| c.a).fold(1i64, num_integer::lcm);
        for q in enumerate_reflexive(&space, 3) {
            assert!(is_reflexive(&space, &q) && is_q_reflexive(&space, &q));
            let (sm, lf, qf) = (is_smooth(&space, &q), is_locally_factorial(&space, &q), is_q_factorial(&space, &q));
            assert!(!sm || lf, "smooth but not locally factorial");
            assert!(!lf || qf, "locally factorial but not Q-factorial");
            assert!(has_only_origin_inside(&q));
            for v in q.vertices() {
                for x in v {
                    assert!((x * Rational::from_integer(a.into())).is_integer());
                }
            }
            let deg = degree(&space, &q).unwrap();
            assert!(deg.is_integer() && deg.is_positive());
        }
    }
}

#[test]
fn toric_smoothness_is_local_factoriality() {
    let t = HoroSpace::toric(2);
    for q in enumerate_reflexive(&t, 3) {
        assert_eq!(is_smooth(&t, &q), is_locally_factorial(&t, &q));
    }
}

#[test]
fn sl3_and_sl2xsl2_share_polytopes() {
    let a = enumerate_reflexive(&HoroSpace::mod_unipotent(&[(Family::A, 2)], 0).unwrap(), 3);
    let b = enumerate_reflexive(&HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap(), 3);
    let va: Vec<_> = a.iter().map(|q| q.vertices().to_vec()).collect();
    let vb: Vec<_> = b.iter().map(|q| q.vertices().to_vec()).collect();
    assert_eq!(va, vb);
}

#[test]
fn rank_one_and_three_search() {
    let t1 = HoroSpace::toric(1);
    assert_eq!(enumerate_reflexive(&t1, 3).len(), 1);
    let sl2 = HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap();
    assert_eq!(enumerate_reflexive(&sl2, 3).len(), 2);
    // the only reflexive tetrahedron with vertices in {−1,0,1}³ is P³'s, degree 64
    let t3 = HoroSpace::toric(3);
    let found = enumerate_reflexive_with(&t3, 1, 4);
    assert_eq!(found.len(), 1);
    assert!(is_smooth(&t3, &found[0]));
    assert_eq!(degree(&t3, &found[0]).unwrap(), Rational::from_integer(64.into()));
}
