//! Fano embeddings through their reflexive polytopes: reflexivity,
//! factoriality and smoothness criteria, degree, very-ampleness, reports.

mod bounds;
mod enumerate;

pub use bounds::{finiteness_bound, verify_bounds, BoundCheck, FinitenessBound};
pub use enumerate::{
    candidate_points, color_permutation_maps, default_max_vertices, enumerate_reflexive, enumerate_reflexive_with, merge_color_permutations, enumerate_until_stable, raw_reflexive_by_subsets,
    raw_reflexive_rank2, worker_count, StableEnumeration, WORKERS_ENV,
};

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::coloredfan::{
    anticanonical_divisor, cartier_data, face_fan_from_polytope, is_ample, picard_number,
    section_polytope, ColoredFan, DivisorData, FanError,
};
use crate::exactmath::{
    factorial, int_to_rat_vec, is_integral, primitive_generator, sub_vec, to_int_vec, to_rat,
    IntMatrix, IntVec, Integer, RatVec, Rational,
};
use crate::horospace::HoroSpace;
use crate::polytope::{PolytopeError, RationalPolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanoError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("polytope lives in dimension {found}, the space has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not G/H-reflexive")]
    NotReflexive,
    #[error("polytope is not Q-G/H-reflexive")]
    NotQReflexive,
    #[error("divisor is not Cartier")]
    NotCartier,
    #[error("divisor is not ample")]
    NotAmple,
}

fn check_dims(space: &HoroSpace, q: &RationalPolytope) -> Result<(), FanoError> {
    if q.ambient_dim() != space.n() {
        return Err(FanoError::DimensionMismatch { expected: space.n(), found: q.ambient_dim() });
    }
    q.require_full()?;
    Ok(())
}

/// Indices (into `space.colors()`) of the colors whose marked point is `v`.
fn colors_at(space: &HoroSpace, v: &[Rational]) -> Vec<usize> {
    space.colors().iter().enumerate().filter(|(_, c)| c.point() == v).map(|(k, _)| k).collect()
}

fn common_conditions(space: &HoroSpace, q: &RationalPolytope) -> bool {
    check_dims(space, q).is_ok()
        && q.contains_origin_in_interior()
        && space.color_points().iter().all(|p| q.contains(p))
}

/// Vertices in `N ∪ {α̌_M/a_α}`, integral dual, every color point in `Q`.
pub fn is_reflexive(space: &HoroSpace, q: &RationalPolytope) -> bool {
    if !common_conditions(space, q) {
        return false;
    }
    if !q.vertices().iter().all(|v| is_integral(v) || !colors_at(space, v).is_empty()) {
        return false;
    }
    q.dual().map(|d| d.vertices().iter().all(|v| is_integral(v))).unwrap_or(false)
}

/// Vertices primitive in `N` or color points, every color point in `Q`.
pub fn is_q_reflexive(space: &HoroSpace, q: &RationalPolytope) -> bool {
    common_conditions(space, q)
        && q.vertices().iter().all(|v| {
            !colors_at(space, v).is_empty()
                || to_int_vec(v).is_some_and(|iv| crate::exactmath::is_primitive(&iv))
        })
}

/// Color points lying on each facet, as indices into `space.colors()`.
fn facet_colors(space: &HoroSpace, q: &RationalPolytope) -> Vec<Vec<usize>> {
    let points = space.color_points();
    q.facets()
        .iter()
        .map(|f| (0..points.len()).filter(|&k| f.saturates(&points[k])).collect())
        .collect()
}

/// Every facet is a simplex whose color points are vertices carrying distinct colors.
pub fn is_q_factorial(space: &HoroSpace, q: &RationalPolytope) -> bool {
    if !common_conditions(space, q) {
        return false;
    }
    let points = space.color_points();
    q.facet_vertices().iter().zip(facet_colors(space, q)).all(|(verts, cols)| {
        let on_vertices = cols.iter().all(|&k| verts.iter().any(|&i| q.vertices()[i] == points[k]));
        let distinct = cols.iter().map(|&k| &points[k]).collect::<BTreeSet<_>>().len() == cols.len();
        verts.len() == space.n() && on_vertices && distinct
    })
}

/// ℚ-factoriality plus: the scaled facet vertices `a_i·e_i` form a basis of `N`.
pub fn is_locally_factorial(space: &HoroSpace, q: &RationalPolytope) -> bool {
    if !is_q_factorial(space, q) {
        return false;
    }
    q.facet_vertices().iter().all(|verts| {
        let rows: Option<Vec<IntVec>> = verts
            .iter()
            .map(|&i| {
                let v = &q.vertices()[i];
                match colors_at(space, v).as_slice() {
                    [] => to_int_vec(v),
                    [k] => Some(space.colors()[*k].vector.clone()),
                    _ => None,
                }
            })
            .collect();
        rows.is_some_and(|r| IntMatrix::from_rows(&r).determinant().abs().is_one())
    })
}

/// Local factoriality plus the Dynkin condition on `(I, J_F)` for every facet.
pub fn is_smooth(space: &HoroSpace, q: &RationalPolytope) -> bool {
    if !is_locally_factorial(space, q) {
        return false;
    }
    let rs = space.root_system();
    facet_colors(space, q).iter().all(|cols| {
        let j: BTreeSet<usize> = cols.iter().map(|&k| space.colors()[k].alpha).collect();
        rs.is_pair_smooth(space.i_set(), &j).unwrap_or(false)
    })
}

/// `d! ∫_{Q*} Π_β ⟨2ρ^P + χ, β̌⟩ / ⟨ρ^B, β̌⟩ dχ` for the polytope's own dual.
fn degree_integral(space: &HoroSpace, q: &RationalPolytope) -> Result<Rational, FanoError> {
    let dual = q.dual()?;
    let integral = dual.integrate_linear_product(&space.degree_forms())?;
    Ok(integral * to_rat(&factorial(space.d())))
}

/// Anticanonical degree `(−K_X)^d` of a reflexive polytope's embedding.
pub fn degree(space: &HoroSpace, q: &RationalPolytope) -> Result<Rational, FanoError> {
    check_dims(space, q)?;
    if !is_reflexive(space, q) {
        return Err(FanoError::NotReflexive);
    }
    degree_integral(space, q)
}

/// Degree of `k·(−K)` for the least `k` making it Cartier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDegree {
    pub scale: Integer,
    pub value: Rational,
}

pub fn scaled_degree(space: &HoroSpace, q: &RationalPolytope) -> Result<ScaledDegree, FanoError> {
    check_dims(space, q)?;
    if !is_q_reflexive(space, q) {
        return Err(FanoError::NotQReflexive);
    }
    let scale = q.dual()?.vertex_denominator();
    let base = degree_integral(space, q)?;
    let factor = num_traits::pow(to_rat(&scale), space.d());
    Ok(ScaledDegree { scale, value: base * factor })
}

/// Minimal generating set of `ℤⁿ ∩ C`.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IntVec>, ConeError> {
    c.hilbert_basis()
}

/// Whether the corner monoids of the section polytope are generated by its
/// lattice points, at every vertex.
pub fn is_very_ample(space: &HoroSpace, fan: &ColoredFan, d: &DivisorData) -> Result<bool, FanoError> {
    let cert = cartier_data(space, fan, d)?.map_err(|_| FanoError::NotCartier)?;
    if !is_ample(space, fan, d, &cert)? {
        return Err(FanoError::NotAmple);
    }
    let p = section_polytope(space, fan, d)?;
    Ok(corner_monoids_generated(&p)?)
}

fn corner_monoids_generated(p: &RationalPolytope) -> Result<bool, ConeError> {
    let n = p.ambient_dim();
    for v in p.vertices() {
        let gens: Vec<RatVec> = p.vertices().iter().filter(|w| *w != v).map(|w| sub_vec(w, v)).collect();
        let cone = Cone::from_generators(n, &gens)?;
        for h in cone.hilbert_basis()? {
            let point: RatVec = int_to_rat_vec(&h).iter().zip(v).map(|(a, b)| a + b).collect();
            if !p.contains(&point) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Very-ampleness of `−K` on the embedding of a reflexive polytope.
pub fn very_ample_anticanonical(space: &HoroSpace, q: &RationalPolytope) -> Result<bool, FanoError> {
    if !is_reflexive(space, q) {
        return Err(FanoError::NotReflexive);
    }
    let fan = face_fan_from_polytope(space, q)?;
    is_very_ample(space, &fan, &anticanonical_divisor(space, &fan))
}

/// Everything known about the embedding attached to a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoReport {
    pub reflexive: bool,
    pub q_reflexive: bool,
    pub locally_factorial: bool,
    pub smooth: bool,
    pub q_factorial: bool,
    /// `(−K)^d`, or the degree of `k·(−K)` when only ℚ-reflexive.
    pub degree: Option<Rational>,
    /// `k` above; 1 for reflexive polytopes.
    pub degree_scale: Option<Integer>,
    pub picard: Option<i64>,
    pub very_ample_anticanonical: bool,
    pub bound_checks: Vec<BoundCheck>,
    pub fan: Option<ColoredFan>,
}

pub fn report(space: &HoroSpace, q: &RationalPolytope) -> Result<FanoReport, FanoError> {
    check_dims(space, q)?;
    let reflexive = is_reflexive(space, q);
    let q_reflexive = is_q_reflexive(space, q);
    let fan = if q.contains_origin_in_interior() { Some(face_fan_from_polytope(space, q)?) } else { None };
    let (locally_factorial, smooth, q_factorial) = if q_reflexive {
        (is_locally_factorial(space, q), is_smooth(space, q), is_q_factorial(space, q))
    } else {
        (false, false, false)
    };
    let (degree, degree_scale) = if q_reflexive {
        let s = scaled_degree(space, q)?;
        (Some(s.value), Some(s.scale))
    } else {
        (None, None)
    };
    let picard = match (&fan, q_reflexive) {
        (Some(f), true) => picard_number(space, f).ok(),
        _ => None,
    };
    let very_ample_anticanonical = reflexive && very_ample_anticanonical(space, q)?;
    let bound_checks = if reflexive { verify_bounds(space, q)? } else { Vec::new() };
    Ok(FanoReport {
        reflexive,
        q_reflexive,
        locally_factorial,
        smooth,
        q_factorial,
        degree,
        degree_scale,
        picard,
        very_ample_anticanonical,
        bound_checks,
        fan,
    })
}

/// Colorless vertices of `Q` as primitive lattice vectors.
pub fn lattice_vertices(space: &HoroSpace, q: &RationalPolytope) -> Vec<IntVec> {
    q.vertices()
        .iter()
        .filter(|v| colors_at(space, v).is_empty())
        .filter_map(|v| primitive_generator(v))
        .collect()
}

/// `a_u`: `a_α` for a color vertex, 1 otherwise.
fn vertex_weight(space: &HoroSpace, v: &[Rational]) -> Integer {
    match colors_at(space, v).first() {
        Some(&k) => Integer::from(space.colors()[k].a),
        None => Integer::one(),
    }
}

/// Whether every interior lattice point of `Q` is the origin.
pub fn has_only_origin_inside(q: &RationalPolytope) -> bool {
    q.interior_lattice_points().iter().all(|p| p.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_vec};
    use crate::rootsys::Family;

    fn sl2() -> HoroSpace {
        HoroSpace::mod_unipotent(&[(Family::A, 1)], 0).unwrap()
    }

    fn seg(a: Rational, b: Rational) -> RationalPolytope {
        RationalPolytope::hull(&[vec![a], vec![b]]).unwrap()
    }

    fn polygon(pts: &[(i64, i64, i64, i64)]) -> RationalPolytope {
        RationalPolytope::hull(&pts.iter().map(|&(a, b, c, d)| vec![rat(a, b), rat(c, d)]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn reflexivity_rank_one() {
        assert!(is_reflexive(&sl2(), &seg(rat(-1, 1), rat(1, 2))));
        assert!(is_reflexive(&sl2(), &seg(rat(-1, 1), rat(1, 1))));
        let t1 = HoroSpace::toric(1);
        assert!(!is_reflexive(&t1, &seg(rat(-2, 1), rat(1, 1))));
        assert!(!is_q_reflexive(&t1, &seg(rat(-2, 1), rat(1, 1))));
        assert!(is_reflexive(&t1, &seg(rat(-1, 1), rat(1, 1))));
        // the color point must lie in Q
        assert!(!is_reflexive(&sl2(), &seg(rat(-1, 1), rat(1, 3))));
    }

    #[test]
    fn q_reflexive_but_not_reflexive() {
        let t = HoroSpace::toric(2);
        let q = polygon(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, -3, 1)]);
        assert!(is_q_reflexive(&t, &q));
        assert!(!is_reflexive(&t, &q));
        assert!(is_q_factorial(&t, &q));
        assert!(!is_locally_factorial(&t, &q));
        let s = scaled_degree(&t, &q).unwrap();
        assert!(s.scale > Integer::one());
        assert!(s.value.is_integer());
    }

    #[test]
    fn factoriality_examples() {
        let t = HoroSpace::toric(2);
        assert!(is_locally_factorial(&t, &polygon(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, -1, 1)])));
        let tri = polygon(&[(1, 2, 0, 1), (0, 1, 1, 2), (-1, 1, -1, 1)]);
        let sl3 = HoroSpace::mod_unipotent(&[(Family::A, 2)], 0).unwrap();
        let sl2sl2 = HoroSpace::mod_unipotent(&[(Family::A, 1), (Family::A, 1)], 0).unwrap();
        assert!(is_locally_factorial(&sl3, &tri));
        assert!(is_locally_factorial(&sl2sl2, &tri));
        assert!(is_smooth(&sl2sl2, &tri));
        assert!(!is_smooth(&sl3, &tri));
        let cube = RationalPolytope::hull(
            &[-1i64, 1]
                .iter()
                .flat_map(|&a| [-1i64, 1].into_iter().flat_map(move |b| [-1i64, 1].into_iter().map(move |c| rat_vec(&[a, b, c]))))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(!is_q_factorial(&HoroSpace::toric(3), &cube));
    }

    #[test]
    fn degrees() {
        let t1 = HoroSpace::toric(1);
        assert_eq!(degree(&t1, &seg(rat(-1, 1), rat(1, 1))).unwrap(), rat(2, 1));
        assert_eq!(degree(&sl2(), &seg(rat(-1, 1), rat(1, 2))).unwrap(), rat(9, 1));
        assert_eq!(degree(&sl2(), &seg(rat(-1, 1), rat(1, 1))).unwrap(), rat(8, 1));
        assert_eq!(degree(&t1, &seg(rat(-2, 1), rat(1, 1))), Err(FanoError::NotReflexive));
        // P² and P¹×P¹
        let t = HoroSpace::toric(2);
        assert_eq!(degree(&t, &polygon(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, -1, 1)])).unwrap(), rat(9, 1));
        assert_eq!(degree(&t, &polygon(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, 0, 1), (0, 1, -1, 1)])).unwrap(), rat(8, 1));
    }

    #[test]
    fn very_ampleness() {
        let t = HoroSpace::toric(2);
        let p2 = polygon(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, -1, 1)]);
        assert!(very_ample_anticanonical(&t, &p2).unwrap());
        assert!(very_ample_anticanonical(&sl2(), &seg(rat(-1, 1), rat(1, 2))).unwrap());
    }

    #[test]
    fn full_report() {
        let r = report(&sl2(), &seg(rat(-1, 1), rat(1, 2))).unwrap();
        assert!(r.reflexive && r.smooth && r.very_ample_anticanonical);
        assert_eq!(r.degree, Some(rat(9, 1)));
        assert_eq!(r.picard, Some(1));
        assert!(r.bound_checks.iter().all(|b| b.satisfied));
        let r = report(&sl2(), &seg(rat(-1, 1), rat(1, 1))).unwrap();
        assert_eq!(r.picard, Some(2));
        assert_eq!(r.degree, Some(rat(8, 1)));
    }

    #[test]
    fn vertex_weights() {
        let s = sl2();
        assert_eq!(vertex_weight(&s, &[rat(1, 2)]), Integer::from(2));
        assert_eq!(vertex_weight(&s, &[rat(-1, 1)]), Integer::one());
        assert_eq!(lattice_vertices(&s, &seg(rat(-1, 1), rat(1, 2))), vec![crate::exactmath::int_vec(&[-1])]);
    }
}
