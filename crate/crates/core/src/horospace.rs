//! Horospherical homogeneous spaces encoded by a pair `(M, I)`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{
    dot, hnf, int, inverse_rational, rank, rat_int, smith_normal_form, to_rat, IntMatrix, IntVec,
    Integer, RatVec, Rational,
};
use crate::polytope::RationalPolytope;
use crate::rootsys::{Family, RootError, RootSystem, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("basis weight {mu} pairs nontrivially with simple root {alpha} of I")]
    NotOrthogonal { mu: usize, alpha: usize },
    #[error("the basis of M is linearly dependent")]
    DependentBasis,
    #[error("basis weight {mu} has {found} coordinates, expected {expected}")]
    WeightLength { mu: usize, expected: usize, found: usize },
}

/// A color `D_α` with its image `α̌_M ∈ N` and anticanonical coefficient `a_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub alpha: usize,
    pub vector: IntVec,
    pub a: i64,
}

impl Color {
    /// The marked point `α̌_M / a_α`.
    pub fn point(&self) -> RatVec {
        self.vector.iter().map(|x| to_rat(x) / rat_int(self.a)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct HoroSpace {
    rs: RootSystem,
    i_set: BTreeSet<usize>,
    m_basis: Vec<Weight>,
    colors: Vec<Color>,
    two_rho_p: Weight,
    d: usize,
}

impl HoroSpace {
    pub fn build(rs: RootSystem, i_set: BTreeSet<usize>, m_basis: Vec<Weight>) -> Result<Self, SpaceError> {
        let s = rs.rank();
        let c = rs.torus_rank();
        for &a in &i_set {
            if a >= s {
                return Err(RootError::IndexOutOfRange { index: a, rank: s }.into());
            }
        }
        for (j, mu) in m_basis.iter().enumerate() {
            if mu.fund.len() != s || mu.torus.len() != c {
                return Err(SpaceError::WeightLength {
                    mu: j,
                    expected: s + c,
                    found: mu.fund.len() + mu.torus.len(),
                });
            }
            if let Some(&a) = i_set.iter().find(|&&a| mu.fund[a] != 0) {
                return Err(SpaceError::NotOrthogonal { mu: j, alpha: a });
            }
        }
        let rows: Vec<RatVec> = m_basis
            .iter()
            .map(|mu| mu.fund.iter().chain(&mu.torus).map(|&x| rat_int(x)).collect())
            .collect();
        if rank(&rows) != m_basis.len() {
            return Err(SpaceError::DependentBasis);
        }
        let two_rho_p = rs.two_rho_p(&i_set)?;
        let colors = (0..s)
            .filter(|a| !i_set.contains(a))
            .map(|a| Color {
                alpha: a,
                vector: m_basis.iter().map(|mu| int(mu.fund[a])).collect(),
                a: two_rho_p.fund[a],
            })
            .collect();
        let d = m_basis.len() + rs.unipotent_roots(&i_set).len();
        Ok(HoroSpace { rs, i_set, m_basis, colors, two_rho_p, d })
    }

    /// Purely toric space of rank `n`.
    pub fn toric(n: usize) -> Self {
        let rs = RootSystem::new(&[], n);
        let basis = (0..n)
            .map(|j| Weight::new(vec![], (0..n).map(|k| i64::from(j == k)).collect()))
            .collect();
        Self::build(rs, BTreeSet::new(), basis).expect("standard toric data")
    }

    /// `G/U` with `M` the full weight lattice of a product of simple factors
    /// and `torus_rank` extra torus directions.
    pub fn mod_unipotent(factors: &[(Family, usize)], torus_rank: usize) -> Result<Self, SpaceError> {
        let rs = RootSystem::build(factors, torus_rank)?;
        let s = rs.rank();
        let basis = (0..s + torus_rank)
            .map(|j| {
                let e: Vec<i64> = (0..s + torus_rank).map(|k| i64::from(j == k)).collect();
                Weight::new(e[..s].to_vec(), e[s..].to_vec())
            })
            .collect();
        Self::build(rs, BTreeSet::new(), basis)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn i_set(&self) -> &BTreeSet<usize> {
        &self.i_set
    }

    pub fn m_basis(&self) -> &[Weight] {
        &self.m_basis
    }

    /// Colors in Bourbaki order of their simple roots.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_points(&self) -> Vec<RatVec> {
        self.colors.iter().map(Color::point).collect()
    }

    pub fn two_rho_p(&self) -> &Weight {
        &self.two_rho_p
    }

    /// Rank `n` of `M`.
    pub fn n(&self) -> usize {
        self.m_basis.len()
    }

    /// Dimension of `G/H`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// `C = n + Σ (a_α − 1)`.
    pub fn c_const(&self) -> i64 {
        self.n() as i64 + self.colors.iter().map(|c| c.a - 1).sum::<i64>()
    }

    /// `a = Π a_α`.
    pub fn a_prod(&self) -> Integer {
        self.colors.iter().fold(Integer::one(), |acc, c| acc * int(c.a))
    }

    pub fn max_a(&self) -> i64 {
        self.colors.iter().map(|c| c.a).max().unwrap_or(1)
    }

    /// Number of simple roots outside `I`.
    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    /// Affine forms `χ ↦ ⟨2ρ^P + χ, β̌⟩ / ⟨ρ^B, β̌⟩` on `M_ℝ`, one per `β ∈ R⁺ \ R_I⁺`.
    pub fn degree_forms(&self) -> Vec<(RatVec, Rational)> {
        let two_rho: Vec<Rational> = self.two_rho_p.fund.iter().map(|&x| rat_int(x)).collect();
        self.rs
            .unipotent_roots(&self.i_set)
            .into_iter()
            .map(|beta| {
                let k = self.rs.coroot_coefficients(beta);
                let height: Rational = k.iter().fold(Rational::zero(), |a, b| a + b);
                let constant = dot(&k, &two_rho) / &height;
                let linear = self
                    .m_basis
                    .iter()
                    .map(|mu| {
                        let f: RatVec = mu.fund.iter().map(|&x| rat_int(x)).collect();
                        dot(&k, &f) / &height
                    })
                    .collect();
                (linear, constant)
            })
            .collect()
    }

    /// Basis adapted to the saturated color lattice: returns `T` (columns form a
    /// basis of `N` whose first `l` vectors span `N¹`), `T⁻¹`, and `l`.
    fn adapted_basis(&self) -> (Vec<RatVec>, Vec<RatVec>, usize) {
        let n = self.n();
        if self.colors.is_empty() || n == 0 {
            let id: Vec<RatVec> =
                (0..n).map(|i| (0..n).map(|j| rat_int(i64::from(i == j))).collect()).collect();
            return (id.clone(), id, 0);
        }
        let k = IntMatrix::from_rows(&self.colors.iter().map(|c| c.vector.clone()).collect::<Vec<_>>());
        let snf = smith_normal_form(&k);
        let l = snf.invariant_factors().len();
        // adapted coordinates x = Vᵀ·v
        let t_inv: Vec<RatVec> = snf.v.transpose().to_rows().iter().map(|r| r.iter().map(to_rat).collect()).collect();
        let t = inverse_rational(&t_inv).expect("unimodular");
        (t, t_inv, l)
    }

    /// Canonical representative of the orbit of `q` under
    /// `{A ∈ GL(N) : A·α̌_M = α̌_M ∀α}`, with the transform used.
    pub fn canonicalize_with_transform(&self, q: &RationalPolytope) -> (RationalPolytope, IntMatrix) {
        let n = self.n();
        let (t, t_inv, l) = self.adapted_basis();
        let apply = |m: &[RatVec], v: &[Rational]| -> RatVec { m.iter().map(|r| dot(r, v)).collect() };
        let adapted: Vec<RatVec> = q.vertices().iter().map(|v| apply(&t_inv, v)).collect();
        let free = n - l;
        // key: (largest |coordinate|, sorted vertices), so representatives stay compact
        let mut best: Option<((Rational, Vec<RatVec>), Vec<RatVec>)> = None;
        if free == 0 {
            let mut xs = q.vertices().to_vec();
            xs.sort();
            let xs = (max_abs(&xs), xs);
            let id: Vec<RatVec> = (0..n).map(|i| (0..n).map(|j| rat_int(i64::from(i == j))).collect()).collect();
            best = Some((xs, id));
        } else {
            let candidates: Vec<usize> =
                (0..adapted.len()).filter(|&i| adapted[i][l..].iter().any(|x| !x.is_zero())).collect();
            let mut tuple = Vec::with_capacity(free);
            search_tuples(&candidates, free, &mut tuple, &mut |tuple: &[usize]| {
                if let Some(a) = normalizing_map(&adapted, tuple, l) {
                    let mut xs: Vec<RatVec> = adapted.iter().map(|v| apply(&t, &apply(&a, v))).collect();
                    xs.sort();
                    let xs = (max_abs(&xs), xs);
                    if best.as_ref().map_or(true, |(b, _)| xs < *b) {
                        best = Some((xs, a));
                    }
                }
            });
        }
        let (_, a_adapted) = best.expect("a full-dimensional polytope has an independent tuple");
        // back to original coordinates: A = T·A'·T⁻¹
        let mul = |x: &[RatVec], y: &[RatVec]| -> Vec<RatVec> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
        };
        let a_orig = mul(&mul(&t, &a_adapted), &t_inv);
        let image = q.map_linear(&a_orig).expect("nonempty");
        let a_int = IntMatrix::from_rows(
            &a_orig.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect::<Vec<_>>(),
        );
        (image, a_int)
    }

    pub fn auto_canonicalize(&self, q: &RationalPolytope) -> RationalPolytope {
        self.canonicalize_with_transform(q).0
    }
}

fn max_abs(xs: &[RatVec]) -> Rational {
    xs.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

fn search_tuples(cands: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for &c in cands {
        if !cur.contains(&c) {
            cur.push(c);
            search_tuples(cands, k, cur, f);
            cur.pop();
        }
    }
}

/// The unique group element `[[I, B], [0, C]]` sending the tuple's bottom
/// block to Hermite form and its top block to reduced residues.
fn normalizing_map(adapted: &[RatVec], tuple: &[usize], l: usize) -> Option<Vec<RatVec>> {
    let n = adapted[0].len();
    let free = n - l;
    // W: bottom parts of the tuple as columns
    let w: Vec<RatVec> = (0..free).map(|i| tuple.iter().map(|&t| adapted[t][l + i].clone()).collect()).collect();
    if rank(&w) < free {
        return None;
    }
    let scale = crate::exactmath::denominator_lcm(w.iter().flatten());
    let scale_r = to_rat(&scale);
    let w_int = IntMatrix::from_rows(
        &w.iter().map(|r| r.iter().map(|x| (x * &scale_r).to_integer()).collect()).collect::<Vec<_>>(),
    );
    let (h_int, c) = hnf(&w_int);
    let h: Vec<RatVec> = h_int.to_rows().iter().map(|r| r.iter().map(|x| to_rat(x) / &scale_r).collect()).collect();
    let c_rat: Vec<RatVec> = c.to_rows().iter().map(|r| r.iter().map(to_rat).collect()).collect();
    let mut a = vec![vec![Rational::zero(); n]; n];
    for i in 0..l {
        a[i][i] = Rational::one();
        // top row i of the tuple, reduced modulo the row lattice of H
        let mut t: RatVec = tuple.iter().map(|&k| adapted[k][i].clone()).collect();
        let mut coeff = vec![Rational::zero(); free];
        for j in 0..free {
            let q = (&t[j] / &h[j][j]).floor();
            if !q.is_zero() {
                for (tk, hk) in t.iter_mut().zip(&h[j]) {
                    *tk -= &q * hk;
                }
                coeff[j] += &q;
            }
        }
        // B row i = −coeff·C
        for jj in 0..free {
            let v: Rational = (0..free).map(|j| &coeff[j] * &c_rat[j][jj]).sum();
            a[i][l + jj] = -v;
        }
    }
    for i in 0..free {
        for j in 0..free {
            a[l + i][l + j] = c_rat[i][j].clone();
        }
    }
    debug_assert!(a.iter().flatten().all(|x| x.is_integer()));
    debug_assert!(h.iter().enumerate().all(|(j, r)| r[j].is_positive()));
    Some(a)
}
