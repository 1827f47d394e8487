//! Rational polyhedral cones: generators, inequalities, faces, Hilbert bases.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactmath::{
    dot, int_to_rat_vec, inverse_rational, nullspace, primitive_generator, rank, rref, to_rat,
    IntVec, Integer, RatVec, Rational,
};
use crate::polytope::RationalPolytope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone contains a line")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("generators have inconsistent dimensions")]
    Ragged,
}

/// A cone `{x : ⟨f, x⟩ ≥ 0 ∀ facets f, ⟨e, x⟩ = 0 ∀ equations e}` together
/// with its primitive extreme rays (when pointed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    pointed: bool,
    rays: Vec<IntVec>,
    facets: Vec<RatVec>,
    equations: Vec<RatVec>,
}

fn primitive_rat(v: &[Rational]) -> Option<RatVec> {
    primitive_generator(v).map(|g| int_to_rat_vec(&g))
}

impl Cone {
    pub fn from_generators(ambient: usize, generators: &[RatVec]) -> Result<Self, ConeError> {
        if generators.iter().any(|g| g.len() != ambient) {
            return Err(ConeError::Ragged);
        }
        let gens: Vec<RatVec> = generators
            .iter()
            .filter_map(|g| primitive_rat(g))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut echelon = gens.clone();
        let chart = if echelon.is_empty() { Vec::new() } else { rref(&mut echelon) };
        let k = chart.len();
        let echelon: Vec<RatVec> = echelon.into_iter().take(k).collect();
        let equations: Vec<RatVec> =
            nullspace(&echelon, ambient).iter().filter_map(|e| primitive_rat(e)).collect();
        if k == 0 {
            return Ok(Cone { ambient, dim: 0, pointed: true, rays: vec![], facets: vec![], equations });
        }
        let local: Vec<RatVec> = gens.iter().map(|g| chart.iter().map(|&c| g[c].clone()).collect()).collect();
        let mut facets_local: BTreeSet<RatVec> = BTreeSet::new();
        for subset in (0..local.len()).combinations(k - 1) {
            let rows: Vec<RatVec> = subset.iter().map(|&i| local[i].clone()).collect();
            let ns = nullspace(&rows, k);
            if ns.len() != 1 {
                continue;
            }
            let f = primitive_rat(&ns[0]).unwrap();
            let vals: Vec<Rational> = local.iter().map(|g| dot(&f, g)).collect();
            if vals.iter().all(|v| !v.is_negative()) {
                facets_local.insert(f);
            } else if vals.iter().all(|v| !v.is_positive()) {
                facets_local.insert(f.iter().map(|x| -x).collect());
            }
        }
        let facets_local: Vec<RatVec> = facets_local.into_iter().collect();
        let pointed = rank(&facets_local) == k;
        let rays = if pointed {
            local
                .iter()
                .zip(&gens)
                .filter(|(g, _)| {
                    let tight: Vec<RatVec> =
                        facets_local.iter().filter(|f| dot(f, g).is_zero()).cloned().collect();
                    rank(&tight) == k - 1
                })
                .map(|(_, g)| primitive_generator(g).unwrap())
                .collect()
        } else {
            Vec::new()
        };
        let facets = facets_local
            .into_iter()
            .map(|f| {
                let mut full = vec![Rational::zero(); ambient];
                for (c, v) in chart.iter().zip(f) {
                    full[*c] = v;
                }
                full
            })
            .collect();
        Ok(Cone { ambient, dim: k, pointed, rays, facets, equations })
    }

    pub fn from_int_generators(ambient: usize, generators: &[IntVec]) -> Result<Self, ConeError> {
        let g: Vec<RatVec> = generators.iter().map(|v| int_to_rat_vec(v)).collect();
        Self::from_generators(ambient, &g)
    }

    /// Pointed cone `{x : ⟨a, x⟩ ≥ 0 ∀a ∈ ineqs, ⟨e, x⟩ = 0 ∀e ∈ eqs}`.
    pub fn from_constraints(ambient: usize, ineqs: &[RatVec], eqs: &[RatVec]) -> Result<Self, ConeError> {
        let all: Vec<RatVec> = ineqs.iter().chain(eqs).cloned().collect();
        if rank(&all) < ambient {
            return Err(ConeError::NotPointed);
        }
        let mut rays: BTreeSet<RatVec> = BTreeSet::new();
        for size in 0..ambient.min(ineqs.len() + 1) {
            for subset in (0..ineqs.len()).combinations(size) {
                let rows: Vec<RatVec> = subset.iter().map(|&i| ineqs[i].clone()).chain(eqs.iter().cloned()).collect();
                let ns = nullspace(&rows, ambient);
                if ns.len() != 1 {
                    continue;
                }
                let r = primitive_rat(&ns[0]).unwrap();
                let neg: RatVec = r.iter().map(|x| -x).collect();
                for cand in [r, neg] {
                    if ineqs.iter().all(|a| !dot(a, &cand).is_negative()) {
                        rays.insert(cand);
                    }
                }
            }
        }
        let rays: Vec<RatVec> = rays.into_iter().collect();
        Self::from_generators(ambient, &rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    /// Primitive extreme rays, sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Inward facet normals: the cone lies in `⟨f, x⟩ ≥ 0`.
    pub fn facets(&self) -> &[RatVec] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_int(&self, x: &[Integer]) -> bool {
        self.contains(&int_to_rat_vec(x))
    }

    /// Relative-interior membership.
    pub fn contains_relint(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn intersection(&self, other: &Cone) -> Result<Cone, ConeError> {
        let ineqs: Vec<RatVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<RatVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Self::from_constraints(self.ambient, &ineqs, &eqs)
    }

    /// Rays of the smallest face containing every given point of the cone.
    pub fn minimal_face_rays(&self, points: &[RatVec]) -> Vec<IntVec> {
        let tight: Vec<&RatVec> =
            self.facets.iter().filter(|f| points.iter().all(|p| dot(f, p).is_zero())).collect();
        self.rays
            .iter()
            .filter(|r| {
                let r = int_to_rat_vec(r);
                tight.iter().all(|f| dot(f, &r).is_zero())
            })
            .cloned()
            .collect()
    }

    /// Whether `sub` (assumed contained in `self`) is a face of `self`.
    pub fn has_face(&self, sub: &Cone) -> bool {
        let pts: Vec<RatVec> = sub.rays.iter().map(|r| int_to_rat_vec(r)).collect();
        self.minimal_face_rays(&pts).iter().all(|r| sub.contains_int(r))
    }

    /// Facets of the cone as sets of extreme rays.
    pub fn facet_rays(&self) -> Vec<Vec<IntVec>> {
        self.facets
            .iter()
            .map(|f| {
                self.rays.iter().filter(|r| dot(f, &int_to_rat_vec(r)).is_zero()).cloned().collect()
            })
            .collect()
    }

    /// Simplicial cones (each given by `dim` rays) triangulating a
    /// full-dimensional pointed cone.
    pub fn triangulate(&self) -> Result<Vec<Vec<IntVec>>, ConeError> {
        if !self.pointed {
            return Err(ConeError::NotPointed);
        }
        if !self.is_full_dimensional() {
            return Err(ConeError::NotFullDimensional);
        }
        let mut pts: Vec<RatVec> = self.rays.iter().map(|r| int_to_rat_vec(r)).collect();
        pts.push(vec![Rational::zero(); self.ambient]);
        let poly = RationalPolytope::hull(&pts).expect("nonempty");
        let origin = poly
            .vertices()
            .iter()
            .position(|v| v.iter().all(|x| x.is_zero()))
            .expect("origin is a vertex of a pointed cone's slice");
        let simplices = poly.triangulate_from(origin);
        Ok(simplices
            .into_iter()
            .map(|s| {
                s.into_iter()
                    .filter(|&i| i != origin)
                    .map(|i| primitive_generator(&poly.vertices()[i]).unwrap())
                    .collect()
            })
            .collect())
    }

    /// Minimal generating set of the monoid `ℤⁿ ∩ C` (full-dimensional pointed cones).
    pub fn hilbert_basis(&self) -> Result<Vec<IntVec>, ConeError> {
        let mut candidates: BTreeSet<IntVec> = self.rays.iter().cloned().collect();
        for simplex in self.triangulate()? {
            candidates.extend(parallelepiped_points(&simplex));
        }
        let cands: Vec<IntVec> = candidates.into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let basis = cands
            .iter()
            .filter(|x| {
                !cands.iter().any(|y| {
                    y != *x && {
                        let diff: IntVec = x.iter().zip(y).map(|(a, b)| a - b).collect();
                        self.contains_int(&diff)
                    }
                })
            })
            .cloned()
            .collect();
        Ok(basis)
    }
}

/// Nonzero lattice points of the half-open parallelepiped `{Σ λ_i v_i : 0 ≤ λ_i < 1}`.
fn parallelepiped_points(gens: &[IntVec]) -> Vec<IntVec> {
    let n = gens.len();
    let cols: Vec<RatVec> = (0..n).map(|i| gens.iter().map(|g| to_rat(&g[i])).collect()).collect();
    let inv = inverse_rational(&cols).expect("simplicial cone generators are independent");
    let lo: Vec<Integer> = (0..n).map(|i| gens.iter().map(|g| g[i].clone().min(Integer::zero())).sum()).collect();
    let hi: Vec<Integer> = (0..n).map(|i| gens.iter().map(|g| g[i].clone().max(Integer::zero())).sum()).collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let x: RatVec = cur.iter().map(to_rat).collect();
        let lambda: RatVec = inv.iter().map(|row| dot(row, &x)).collect();
        if lambda.iter().all(|l| !l.is_negative() && *l < Rational::from_integer(1.into()))
            && cur.iter().any(|c| !c.is_zero())
        {
            out.push(cur.clone());
        }
        let mut j = n;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = lo[j].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_vec, rat_vec};

    fn cone(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        Cone::from_generators(n, &gens.iter().map(|g| rat_vec(g)).collect::<Vec<_>>()).unwrap()
    }

    fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
        v.sort();
        v
    }

    #[test]
    fn rays_and_facets() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]);
        assert_eq!(c.rays(), &[int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert_eq!(c.facets().len(), 2);
        assert!(c.is_pointed());
        let half = cone(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert!(!half.is_pointed());
        let ray = cone(&[&[1, 2, 0]]);
        assert_eq!(ray.dim(), 1);
        assert!(ray.contains(&rat_vec(&[2, 4, 0])));
        assert!(!ray.contains(&rat_vec(&[2, 4, 1])));
    }

    #[test]
    fn constraints_roundtrip() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]);
        let d = Cone::from_constraints(3, c.facets(), &[]).unwrap();
        assert_eq!(sorted(d.rays().to_vec()), sorted(c.rays().to_vec()));
    }

    #[test]
    fn faces_of_intersections() {
        let q1 = cone(&[&[1, 0], &[0, 1]]);
        let q2 = cone(&[&[0, 1], &[-1, 0]]);
        let i = q1.intersection(&q2).unwrap();
        assert_eq!(i.rays(), &[int_vec(&[0, 1])]);
        assert!(q1.has_face(&i) && q2.has_face(&i));
        let tilted = cone(&[&[1, 1], &[-1, 1]]);
        let j = q1.intersection(&tilted).unwrap();
        assert!(!q1.has_face(&j));
    }

    #[test]
    fn hilbert_bases() {
        assert_eq!(sorted(cone(&[&[1, 0], &[0, 1]]).hilbert_basis().unwrap()), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert_eq!(
            sorted(cone(&[&[1, 0], &[1, 2]]).hilbert_basis().unwrap()),
            vec![int_vec(&[1, 0]), int_vec(&[1, 1]), int_vec(&[1, 2])]
        );
        assert_eq!(
            sorted(cone(&[&[1, 0], &[1, 3]]).hilbert_basis().unwrap()),
            vec![int_vec(&[1, 0]), int_vec(&[1, 1]), int_vec(&[1, 2]), int_vec(&[1, 3])]
        );
        // cone over a unit square at height 1 in dimension 3
        let sq = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(sq.hilbert_basis().unwrap().len(), 4);
        assert_eq!(cone(&[&[1, 0], &[-1, 0], &[0, 1]]).hilbert_basis(), Err(ConeError::NotPointed));
    }
}
