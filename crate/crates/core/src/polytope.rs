//! Exact rational convex polytopes with matching V- and H-representations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{
    determinant_rational, dot, factorial, nullspace, primitive_generator, rref, sub_vec, to_rat,
    IntVec, Integer, RatVec, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    Empty,
    #[error("points have inconsistent dimensions")]
    Ragged,
    #[error("polytope has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("half-spaces do not bound a polytope")]
    Unbounded,
    #[error("face dimension {k} out of range for a {n}-dimensional polytope")]
    FaceDimension { k: usize, n: usize },
}

/// Half-space `⟨normal, x⟩ ≤ offset`; the normal is a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: RatVec,
    pub offset: Rational,
}

impl Facet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn saturates(&self, x: &[Rational]) -> bool {
        self.value(x) == self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<RatVec>,
    facets: Vec<Facet>,
    /// Affine equations `⟨e, x⟩ = c` cutting out the affine hull.
    equations: Vec<(RatVec, Rational)>,
    incidence: Vec<Vec<usize>>,
}

struct AffineHull {
    base: RatVec,
    /// Coordinates on which the projection of the affine hull is injective.
    chart: Vec<usize>,
    equations: Vec<(RatVec, Rational)>,
}

fn affine_hull(points: &[RatVec]) -> AffineHull {
    let base = points[0].clone();
    let n = base.len();
    let mut dirs: Vec<RatVec> = points[1..].iter().map(|p| sub_vec(p, &base)).collect();
    let chart = if dirs.is_empty() { Vec::new() } else { rref(&mut dirs) };
    let rows: Vec<RatVec> = dirs.into_iter().take(chart.len()).collect();
    let equations = nullspace(&rows, n)
        .into_iter()
        .map(|e| {
            let g = primitive_generator(&e).expect("nonzero nullspace vector");
            let e: RatVec = g.iter().map(to_rat).collect();
            let c = dot(&e, &base);
            (e, c)
        })
        .collect();
    AffineHull { base, chart, equations }
}

pub fn affine_dimension(points: &[RatVec]) -> usize {
    if points.is_empty() {
        return 0;
    }
    affine_hull(points).chart.len()
}

/// Facets of a full-dimensional point set by brute force over `k`-subsets.
fn full_dim_facets(points: &[RatVec]) -> Vec<Facet> {
    let k = points[0].len();
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    for subset in (0..points.len()).combinations(k) {
        let rows: Vec<RatVec> = subset
            .iter()
            .map(|&i| {
                let mut r = points[i].clone();
                r.push(-Rational::one());
                r
            })
            .collect();
        let ns = nullspace(&rows, k + 1);
        if ns.len() != 1 {
            continue;
        }
        let sol = &ns[0];
        if sol[..k].iter().all(|x| x.is_zero()) {
            continue;
        }
        let normal = primitive_generator(&sol[..k]).unwrap();
        let scale = &sol[0..k]
            .iter()
            .zip(&normal)
            .find(|(x, _)| !x.is_zero())
            .map(|(x, g)| to_rat(g) / x)
            .unwrap();
        let normal: RatVec = normal.iter().map(to_rat).collect();
        let offset = &sol[k] * scale;
        let (mut above, mut below) = (false, false);
        for p in points {
            let v = dot(&normal, p);
            if v > offset {
                above = true;
            } else if v < offset {
                below = true;
            }
            if above && below {
                break;
            }
        }
        match (above, below) {
            (false, true) => {
                found.insert(Facet { normal, offset });
            }
            (true, false) => {
                found.insert(Facet { normal: normal.iter().map(|x| -x).collect(), offset: -offset });
            }
            _ => {}
        }
    }
    found.into_iter().collect()
}

impl RationalPolytope {
    /// Convex hull of a finite point set.
    pub fn hull(points: &[RatVec]) -> Result<Self, PolytopeError> {
        let first = points.first().ok_or(PolytopeError::Empty)?;
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(PolytopeError::Ragged);
        }
        let pts: Vec<RatVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let ah = affine_hull(&pts);
        let k = ah.chart.len();
        if k == 0 {
            return Ok(RationalPolytope {
                ambient: n,
                dim: 0,
                vertices: vec![ah.base],
                facets: Vec::new(),
                equations: ah.equations,
                incidence: Vec::new(),
            });
        }
        let project = |p: &RatVec| -> RatVec { ah.chart.iter().map(|&c| p[c].clone()).collect() };
        let projected: Vec<RatVec> = pts.iter().map(project).collect();
        let local = full_dim_facets(&projected);
        // a point is a vertex iff the normals of its facets have full rank
        let vertices: Vec<RatVec> = pts
            .iter()
            .zip(&projected)
            .filter(|(_, q)| {
                let normals: Vec<RatVec> =
                    local.iter().filter(|f| f.saturates(q)).map(|f| f.normal.clone()).collect();
                normals.len() >= k && crate::exactmath::rank(&normals) == k
            })
            .map(|(p, _)| p.clone())
            .collect();
        let facets: Vec<Facet> = local
            .into_iter()
            .map(|f| {
                let mut normal = vec![Rational::zero(); n];
                for (c, v) in ah.chart.iter().zip(f.normal) {
                    normal[*c] = v;
                }
                Facet { normal, offset: f.offset }
            })
            .collect();
        Ok(Self::assemble(n, k, vertices, facets, ah.equations))
    }

    fn assemble(
        ambient: usize,
        dim: usize,
        vertices: Vec<RatVec>,
        facets: Vec<Facet>,
        equations: Vec<(RatVec, Rational)>,
    ) -> Self {
        let incidence = facets
            .iter()
            .map(|f| (0..vertices.len()).filter(|&i| f.saturates(&vertices[i])).collect())
            .collect();
        RationalPolytope { ambient, dim, vertices, facets, equations, incidence }
    }

    /// Polytope `{x : ⟨a, x⟩ ≤ b}` from half-spaces `(a, b)`.
    pub fn from_inequalities(ambient: usize, halfspaces: &[(RatVec, Rational)]) -> Result<Self, PolytopeError> {
        let recession: Vec<RatVec> = halfspaces.iter().map(|(a, _)| a.iter().map(|x| -x).collect()).collect();
        match crate::cone::Cone::from_constraints(ambient, &recession, &[]) {
            Ok(c) if c.rays().is_empty() => {}
            _ => return Err(PolytopeError::Unbounded),
        }
        let mut pts: BTreeSet<RatVec> = BTreeSet::new();
        for subset in (0..halfspaces.len()).combinations(ambient) {
            let rows: Vec<RatVec> = subset.iter().map(|&i| halfspaces[i].0.clone()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| halfspaces[i].1.clone()).collect();
            if crate::exactmath::rank(&rows) < ambient {
                continue;
            }
            let x = crate::exactmath::solve_rational(&rows, &rhs, ambient).expect("full rank");
            if halfspaces.iter().all(|(a, b)| dot(a, &x) <= *b) {
                pts.insert(x);
            }
        }
        let pts: Vec<RatVec> = pts.into_iter().collect();
        Self::hull(&pts)
    }

    /// Hull that must be full-dimensional.
    pub fn full_hull(points: &[RatVec]) -> Result<Self, PolytopeError> {
        let p = Self::hull(points)?;
        p.require_full()?;
        Ok(p)
    }

    pub fn require_full(&self) -> Result<(), PolytopeError> {
        if self.dim == self.ambient {
            Ok(())
        } else {
            Err(PolytopeError::NotFullDimensional { dim: self.dim, ambient: self.ambient })
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(RatVec, Rational)] {
        &self.equations
    }

    /// Vertex indices on each facet.
    pub fn facet_vertices(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(e, c)| dot(e, x) == *c) && self.facets.iter().all(|f| f.contains(x))
    }

    /// Relative-interior membership.
    pub fn contains_interior(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(e, c)| dot(e, x) == *c)
            && self.facets.iter().all(|f| f.value(x) < f.offset)
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Indices of facets containing a point.
    pub fn facets_containing(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].saturates(x)).collect()
    }

    /// Polar dual `{v : ⟨v, u⟩ ≥ −1 ∀u ∈ P}`.
    pub fn dual(&self) -> Result<Self, PolytopeError> {
        self.require_full()?;
        if !self.contains_origin_in_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        let pts: Vec<RatVec> = self
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|a| -a / &f.offset).collect())
            .collect();
        Self::hull(&pts)
    }

    /// Image under `x ↦ A·x` for a rational square matrix given by rows.
    pub fn map_linear(&self, rows: &[RatVec]) -> Result<Self, PolytopeError> {
        let pts: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| dot(r, v)).collect())
            .collect();
        Self::hull(&pts)
    }

    /// All points of `(1/s)ℤⁿ ∩ P`, scaled by `s`, in lexicographic order.
    pub fn lattice_points(&self, s: u64) -> Vec<IntVec> {
        let s_int = Integer::from(s);
        let s_rat = to_rat(&s_int);
        let n = self.ambient;
        let ranges: Vec<(Integer, Integer)> = (0..n)
            .map(|j| {
                let lo = self.vertices.iter().map(|v| (&v[j] * &s_rat).floor().to_integer()).min().unwrap();
                let hi = self.vertices.iter().map(|v| (&v[j] * &s_rat).ceil().to_integer()).max().unwrap();
                (lo, hi)
            })
            .collect();
        let mut out = Vec::new();
        let mut cur: IntVec = ranges.iter().map(|r| r.0.clone()).collect();
        loop {
            let x: RatVec = cur.iter().map(|c| to_rat(c) / &s_rat).collect();
            if self.contains(&x) {
                out.push(cur.clone());
            }
            // odometer, last coordinate fastest
            let mut j = n;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < ranges[j].1 {
                    cur[j] += 1;
                    break;
                }
                cur[j] = ranges[j].0.clone();
            }
        }
    }

    /// Interior points of `ℤⁿ ∩ P`.
    pub fn interior_lattice_points(&self) -> Vec<IntVec> {
        self.lattice_points(1)
            .into_iter()
            .filter(|p| self.contains_interior(&p.iter().map(to_rat).collect::<RatVec>()))
            .collect()
    }

    /// All faces (as sorted vertex-index sets) with their dimensions, the
    /// polytope itself included.
    fn face_lattice(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        faces.insert(all, self.dim);
        let mut frontier: Vec<Vec<usize>> = self.incidence.clone();
        let facets = self.incidence.clone();
        while let Some(f) = frontier.pop() {
            if f.is_empty() || faces.contains_key(&f) {
                continue;
            }
            let pts: Vec<RatVec> = f.iter().map(|&i| self.vertices[i].clone()).collect();
            faces.insert(f.clone(), affine_dimension(&pts));
            for g in &facets {
                let inter: Vec<usize> = f.iter().copied().filter(|i| g.binary_search(i).is_ok()).collect();
                if !inter.is_empty() && inter.len() < f.len() && !faces.contains_key(&inter) {
                    frontier.push(inter);
                }
            }
        }
        faces
    }

    /// All `k`-dimensional faces as vertex-index sets.
    pub fn faces(&self, k: usize) -> Result<Vec<Vec<usize>>, PolytopeError> {
        if k >= self.dim.max(1) && !(k == 0 && self.dim == 0) {
            return Err(PolytopeError::FaceDimension { k, n: self.dim });
        }
        Ok(self.face_lattice().into_iter().filter(|(_, d)| *d == k).map(|(f, _)| f).collect())
    }

    /// Triangulation into full-dimensional simplices (vertex indices), by
    /// recursively coning faces from their lexicographically smallest vertex.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        self.triangulate_from(0)
    }

    /// Triangulation whose top-level cone point is the given vertex.
    pub fn triangulate_from(&self, apex: usize) -> Vec<Vec<usize>> {
        let lattice = self.face_lattice();
        let top: Vec<usize> = (0..self.vertices.len()).collect();
        let mut out = Vec::new();
        pull(&lattice, &top, self.dim, apex, &mut Vec::new(), &mut out);
        out
    }

    /// Exact volume (lattice normalization: the unit cube has volume 1).
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        self.triangulate().iter().map(|s| self.simplex_volume(s)).fold(Rational::zero(), |a, b| a + b)
    }

    fn simplex_volume(&self, simplex: &[usize]) -> Rational {
        let v0 = &self.vertices[simplex[0]];
        let m: Vec<RatVec> = simplex[1..].iter().map(|&i| sub_vec(&self.vertices[i], v0)).collect();
        determinant_rational(&m).abs() / to_rat(&factorial(self.ambient))
    }

    /// `∫_P ∏_k (⟨ℓ_k, x⟩ + c_k) dx`.
    pub fn integrate_linear_product(&self, forms: &[(RatVec, Rational)]) -> Result<Rational, PolytopeError> {
        self.require_full()?;
        let n = self.ambient;
        let total_degree = forms.len();
        let denom = to_rat(&factorial(n + total_degree));
        let mut sum = Rational::zero();
        for simplex in self.triangulate() {
            let vol = self.simplex_volume(&simplex);
            let mut poly: HashMap<Vec<u32>, Rational> = HashMap::new();
            poly.insert(vec![0; n + 1], Rational::one());
            for (l, c) in forms {
                let vals: Vec<Rational> =
                    simplex.iter().map(|&i| dot(l, &self.vertices[i]) + c).collect();
                let mut next: HashMap<Vec<u32>, Rational> = HashMap::new();
                for (mono, coef) in &poly {
                    for (i, v) in vals.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let mut m = mono.clone();
                        m[i] += 1;
                        *next.entry(m).or_insert_with(Rational::zero) += coef * v;
                    }
                }
                poly = next;
            }
            let nf = to_rat(&factorial(n));
            for (mono, coef) in poly {
                let num = mono.iter().fold(Integer::one(), |acc, &a| acc * factorial(a as usize));
                sum += coef * &nf * &vol * to_rat(&num) / &denom;
            }
        }
        Ok(sum)
    }

    /// Least common multiple of the vertex denominators.
    pub fn vertex_denominator(&self) -> Integer {
        self.vertices
            .iter()
            .flatten()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
    }
}

fn pull(
    lattice: &BTreeMap<Vec<usize>, usize>,
    face: &[usize],
    dim: usize,
    apex: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if dim == 0 {
        let mut s = prefix.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    prefix.push(apex);
    for (sub, &d) in lattice.iter() {
        if d + 1 != dim || sub.contains(&apex) || !sub.iter().all(|i| face.binary_search(i).is_ok()) {
            continue;
        }
        pull(lattice, sub, d, sub[0], prefix, out);
    }
    prefix.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_vec};
    use proptest::prelude::*;

    fn poly(pts: &[&[i64]]) -> RationalPolytope {
        RationalPolytope::hull(&pts.iter().map(|p| rat_vec(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hull_simplex_and_redundancy() {
        let t = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(t.facets().len(), 3);
        assert_eq!(t.vertices().len(), 3);
        let sq = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0], &[1, 0]]);
        assert_eq!(sq.vertices().len(), 4);
        assert!(matches!(RationalPolytope::hull(&[]), Err(PolytopeError::Empty)));
    }

    #[test]
    fn hull_with_rational_vertices() {
        let t = RationalPolytope::hull(&[
            vec![rat(1, 2), rat(0, 1)],
            vec![rat(0, 1), rat(1, 2)],
            rat_vec(&[-1, -1]),
        ])
        .unwrap();
        let d = t.dual().unwrap();
        let expected: Vec<RatVec> = vec![rat_vec(&[-2, -2]), rat_vec(&[-2, 3]), rat_vec(&[3, -2])];
        assert_eq!(d.vertices(), expected.as_slice());
    }

    #[test]
    fn duals() {
        let seg = poly(&[&[-1], &[1]]);
        assert_eq!(seg.dual().unwrap(), seg);
        let half = RationalPolytope::hull(&[rat_vec(&[-1]), vec![rat(1, 2)]]).unwrap();
        assert_eq!(half.dual().unwrap().vertices(), &[rat_vec(&[-2]), rat_vec(&[1])]);
        let sq = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(sq.dual().unwrap(), poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        let off = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(off.dual(), Err(PolytopeError::OriginNotInterior));
    }

    #[test]
    fn lattice_points_examples() {
        let seg = poly(&[&[-2], &[1]]);
        assert_eq!(seg.lattice_points(1).len(), 4);
        let t = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(t.lattice_points(1).len(), 4);
        assert_eq!(t.interior_lattice_points(), vec![crate::exactmath::int_vec(&[0, 0])]);
        let half = RationalPolytope::hull(&[rat_vec(&[-1]), vec![rat(1, 2)]]).unwrap();
        assert_eq!(half.lattice_points(2).len(), 4);
    }

    #[test]
    fn volumes() {
        assert_eq!(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).volume(), rat(1, 1));
        assert_eq!(poly(&[&[2, -1], &[-1, 2], &[-1, -1]]).volume(), rat(9, 2));
        assert_eq!(poly(&[&[-2], &[1]]).volume(), rat(3, 1));
        let cube = poly(&[
            &[1, 1, 1], &[1, 1, -1], &[1, -1, 1], &[1, -1, -1],
            &[-1, 1, 1], &[-1, 1, -1], &[-1, -1, 1], &[-1, -1, -1],
        ]);
        assert_eq!(cube.volume(), rat(8, 1));
        assert_eq!(poly(&[&[0, 0], &[1, 1]]).volume(), rat(0, 1));
    }

    #[test]
    fn integrals() {
        let seg = poly(&[&[-1], &[1]]);
        assert_eq!(seg.integrate_linear_product(&[(rat_vec(&[1]), rat(2, 1))]).unwrap(), rat(4, 1));
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(tri.integrate_linear_product(&[]).unwrap(), rat(1, 2));
        let seg2 = poly(&[&[-2], &[1]]);
        assert_eq!(seg2.integrate_linear_product(&[(rat_vec(&[1]), rat(2, 1))]).unwrap(), rat(9, 2));
        // ∫ over the unit square of x·y = 1/4
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let xy = [(rat_vec(&[1, 0]), rat(0, 1)), (rat_vec(&[0, 1]), rat(0, 1))];
        assert_eq!(sq.integrate_linear_product(&xy).unwrap(), rat(1, 4));
    }

    #[test]
    fn face_counts() {
        let sq = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(sq.faces(1).unwrap().len(), 4);
        let t = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(t.faces(0).unwrap().len(), 3);
        let cube = poly(&[
            &[1, 1, 1], &[1, 1, -1], &[1, -1, 1], &[1, -1, -1],
            &[-1, 1, 1], &[-1, 1, -1], &[-1, -1, 1], &[-1, -1, -1],
        ]);
        let squares = cube.faces(2).unwrap();
        assert_eq!(squares.len(), 6);
        assert!(squares.iter().all(|f| f.len() == 4));
        assert_eq!(cube.faces(1).unwrap().len(), 12);
        assert!(cube.faces(3).is_err());
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = poly(&[&[0, 0, 0], &[1, 1, 0], &[2, 2, 0]]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(seg.contains(&rat_vec(&[1, 1, 0])));
        assert!(!seg.contains(&rat_vec(&[1, 0, 0])));
        assert!(matches!(seg.dual(), Err(PolytopeError::NotFullDimensional { .. })));
    }

    fn random_polygon() -> impl Strategy<Value = RationalPolytope> {
        proptest::collection::vec((-4i64..5, -4i64..5, 1i64..3), 3..8).prop_filter_map(
            "origin must be interior",
            |pts| {
                let mut v: Vec<RatVec> = pts.iter().map(|&(x, y, q)| vec![rat(x, q), rat(y, q)]).collect();
                v.extend([rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[-1, -1])]);
                let p = RationalPolytope::hull(&v).ok()?;
                p.contains_origin_in_interior().then_some(p)
            },
        )
    }

    proptest! {
        #[test]
        fn dual_is_involutive(p in random_polygon()) {
            let d = p.dual().unwrap();
            prop_assert_eq!(d.vertices().len(), p.facets().len());
            prop_assert_eq!(d.facets().len(), p.vertices().len());
            prop_assert_eq!(d.dual().unwrap(), p);
        }

        #[test]
        fn volume_matches_empty_integral_and_is_unimodular_invariant(p in random_polygon(), b in -3i64..4) {
            let vol = p.volume();
            prop_assert!(vol.is_positive());
            prop_assert_eq!(p.integrate_linear_product(&[]).unwrap(), vol.clone());
            let shear = vec![rat_vec(&[1, b]), rat_vec(&[0, 1])];
            prop_assert_eq!(p.map_linear(&shear).unwrap().volume(), vol);
        }
    }
}
