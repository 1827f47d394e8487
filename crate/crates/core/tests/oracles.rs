//! Independent recomputations of values the library derives.

use std::collections::BTreeMap;

use horofano::cone::Cone;
use horofano::exactmath::{factorial, int_vec, rat, to_rat, IntVec, Rational};
use horofano::fano::{degree, enumerate_reflexive, finiteness_bound, hilbert_basis, is_reflexive};
use horofano::horospace::HoroSpace;
use horofano::polytope::RationalPolytope;
use horofano::rootsys::Family;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

type Poly = BTreeMap<(u32, u32), Rational>;

/// Product of affine forms `c + a·x + b·y`, expanded.
fn expand(forms: &[(i64, i64, i64, i64)]) -> Poly {
    // (constant, coefficient of x, coefficient of y, divisor)
    let mut p: Poly = BTreeMap::from([((0, 0), Rational::one())]);
    for &(c, a, b, div) in forms {
        let mut next = Poly::new();
        for ((i, j), coef) in &p {
            for (di, dj, k) in [(0, 0, c), (1, 0, a), (0, 1, b)] {
                if k != 0 {
                    *next.entry((i + di, j + dj)).or_insert_with(Rational::zero) += coef * rat(k, div);
                }
            }
        }
        p = next;
    }
    p
}

fn binom(n: u32, k: u32) -> Rational {
    let mut r = Rational::one();
    for t in 0..k {
        r = r * rat((n - t) as i64, (t + 1) as i64);
    }
    r
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `∫ t^k (x0 + t dx)^m (y0 + t dy)^j dt` over `[0, 1]`, expanded binomially.
fn segment_integral(x0: &Rational, dx: &Rational, m: u32, y0: &Rational, dy: &Rational, j: u32) -> Rational {
    let mut total = Rational::zero();
    for a in 0..=m {
        for b in 0..=j {
            let coef = binom(m, a) * binom(j, b) * pow(x0, m - a) * pow(dx, a) * pow(y0, j - b) * pow(dy, b);
            total += coef * rat(1, (a + b + 1) as i64);
        }
    }
    total
}

/// Green's theorem: `∬ x^i y^j = ∮ x^{i+1} y^j / (i+1) dy` on a counter-clockwise polygon.
fn polygon_integral(ccw: &[Vec<Rational>], p: &Poly) -> Rational {
    let mut total = Rational::zero();
    for k in 0..ccw.len() {
        let (a, b) = (&ccw[k], &ccw[(k + 1) % ccw.len()]);
        let dx = &b[0] - &a[0];
        let dy = &b[1] - &a[1];
        for ((i, j), coef) in p {
            let s = segment_integral(&a[0], &dx, i + 1, &a[1], &dy, *j);
            total += coef * s * &dy / rat((i + 1) as i64, 1);
        }
    }
    total
}

fn ccw_order(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = rat(points.len() as i64, 1);
    let cx: Rational = points.iter().map(|p| p[0].clone()).sum::<Rational>() / &n;
    let cy: Rational = points.iter().map(|p| p[1].clone()).sum::<Rational>() / &n;
    let rel = |p: &Vec<Rational>| (&p[0] - &cx, &p[1] - &cy);
    let half = |(x, y): &(Rational, Rational)| u8::from(!(y > &Rational::zero() || (y.is_zero() && x > &Rational::zero())));
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        let (ra, rb) = (rel(a), rel(b));
        half(&ra).cmp(&half(&rb)).then_with(|| {
            let cross = &ra.0 * &rb.1 - &ra.1 * &rb.0;
            Rational::zero().cmp(&cross)
        })
    });
    pts
}

/// Degree forms written out by hand for each planar test space.
fn planar_cases() -> Vec<(HoroSpace, Vec<(i64, i64, i64, i64)>)> {
    vec![
        (HoroSpace::toric(2), vec![]),
        (HoroSpace::mod_unipotent(&[(Family::A, 1)], 1).unwrap(), vec![(2, 1, 0, 1)]),
        (HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap(), vec![(2, 1, 0, 1), (2, 0, 1, 1)]),
        (
            HoroSpace::mod_unipotent(&[(Family::A, 2)], 0).unwrap(),
            vec![(2, 1, 0, 1), (2, 0, 1, 1), (4, 1, 1, 2)],
        ),
    ]
}

#[test]
fn planar_degrees_match_greens_theorem() {
    for (space, forms) in planar_cases() {
        let poly = expand(&forms);
        let list = enumerate_reflexive(&space, 2);
        assert!(!list.is_empty());
        for q in &list {
            let dual = q.dual().unwrap();
            let integral = polygon_integral(&ccw_order(dual.vertices()), &poly);
            let expected = integral * to_rat(&factorial(2 + forms.len()));
            assert_eq!(degree(&space, q).unwrap(), expected, "{:?}", q.vertices());
        }
    }
}

#[test]
fn segment_degrees_by_antiderivative() {
    // SL2/U: d = 2, integrand 2 + t on the dual segment [p, q]
    let s = HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap();
    let anti = |t: Rational| rat(2, 1) * &t + &t * &t / rat(2, 1);
    for (lo, hi) in [(rat(-1, 1), rat(1, 2)), (rat(-1, 1), rat(1, 1))] {
        let q = RationalPolytope::hull(&[vec![lo.clone()], vec![hi.clone()]]).unwrap();
        let (p0, p1) = (-Rational::one() / &hi, -Rational::one() / &lo);
        assert_eq!(degree(&s, &q).unwrap(), rat(2, 1) * (anti(p1) - anti(p0)));
    }
}

#[test]
fn rank_one_reflexive_segments_by_hand() {
    // [u, w] has dual [−1/w, −1/u]; integrality forces u = −1 and w ∈ {1} ∪ {1/a}
    let s = HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap();
    let mut found = Vec::new();
    let ends: Vec<Rational> = (1..=6).map(|k| rat(k, 1)).chain([rat(1, 2)]).collect();
    for u in 1..=6 {
        for w in &ends {
            let q = RationalPolytope::hull(&[vec![rat(-u, 1)], vec![w.clone()]]).unwrap();
            let by_hand = u == 1
                && (w.is_one() || *w == rat(1, 2))
                && (-Rational::one() / w).is_integer();
            assert_eq!(is_reflexive(&s, &q), by_hand, "[-{u}, {w}]");
            if by_hand {
                found.push(w.clone());
            }
        }
    }
    assert_eq!(found.len(), 2);
}

#[test]
fn finiteness_bound_two_step() {
    for (space, n, a) in [
        (HoroSpace::toric(1), 1u32, 1u64),
        (HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap(), 1, 2),
        (HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap(), 2, 4),
    ] {
        let v = BigInt::from(7 * (a + 1)).pow(n * 2u32.pow(n + 1));
        let nfact: u64 = (1..=n as u64).product();
        let base = BigInt::from(nfact * a) * &v;
        let b = finiteness_bound(&space);
        assert_eq!(b.v, v);
        assert_eq!(b.coefficient, base.pow(n * (n + 1) / 2));
        assert_eq!(b.exponent, BigInt::from(2u32.pow(n)) * base.pow(n + 1));
    }
    let small = finiteness_bound(&HoroSpace::toric(1));
    assert_eq!(small.v, BigInt::from(38416));
}

/// Irreducible nonzero lattice points of a planar cone, by exhaustion in a box.
fn brute_hilbert(rays: &[IntVec], box_size: i64) -> Vec<IntVec> {
    let cone = Cone::from_int_generators(2, rays).unwrap();
    let pts: Vec<IntVec> = (-box_size..=box_size)
        .flat_map(|x| (-box_size..=box_size).map(move |y| int_vec(&[x, y])))
        .filter(|p| p.iter().any(|c| !c.is_zero()) && cone.contains_int(p))
        .collect();
    let set: std::collections::BTreeSet<IntVec> = pts.iter().cloned().collect();
    let mut out: Vec<IntVec> = pts
        .iter()
        .filter(|p| {
            !pts.iter().any(|a| {
                let b: IntVec = p.iter().zip(a).map(|(x, y)| x - y).collect();
                b.iter().any(|c| !c.is_zero()) && set.contains(&b)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn hilbert_basis_matches_exhaustion(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
        let det = a * d - b * c;
        prop_assume!(det > 0);
        let rays = vec![int_vec(&[a, b]), int_vec(&[c, d])];
        let cone = Cone::from_int_generators(2, &rays).unwrap();
        let mut h = hilbert_basis(&cone).unwrap();
        h.sort();
        // every basis element lies in the parallelepiped, so |coords| ≤ 6
        prop_assert_eq!(h, brute_hilbert(&rays, 7));
    }
}
