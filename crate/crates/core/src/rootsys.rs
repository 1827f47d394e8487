//! Root systems of reductive groups given as a product of simple factors and
//! a central torus. Simple roots follow Bourbaki numbering within each factor;
//! factors are concatenated in declaration order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{rat_int, Integer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("illegal simple type {family}{rank}")]
    IllegalType { family: Family, rank: usize },
    #[error("unknown simple type {0:?}")]
    UnknownFamily(String),
    #[error("simple root index {index} out of range (rank {rank})")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("subsets I and J overlap at simple root {0}")]
    Overlap(usize),
    #[error("weight is not dominant")]
    NonDominant,
    #[error("expected a single simple factor, found {0}")]
    MultipleFactors(usize),
    #[error("simple root {0} belongs to I")]
    RootInI(usize),
    #[error("weight has {found} coordinates, expected {expected}")]
    WeightLength { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootError::UnknownFamily(s.to_string())),
        }
    }
}

/// A simple factor such as `A3` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootError::IllegalType { family, rank })
        }
    }

    /// Cartan matrix, `C[i][j] = ⟨α_j, α̌_i⟩`.
    fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            Family::F => (0..3).for_each(|i| link(i, i + 1)),
            Family::G => link(0, 1),
        }
        match self.family {
            Family::B => c[n - 1][n - 2] = -2,
            Family::C => c[n - 2][n - 1] = -2,
            Family::F => c[2][1] = -2,
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// Half squared lengths of the simple roots (shortest = 1).
    fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
            Family::F => vec![2, 2, 1, 1],
            Family::G => vec![1, 3],
            _ => vec![1; n],
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Character of a maximal torus: fundamental-weight coordinates plus
/// coordinates on the central torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub fund: Vec<i64>,
    pub torus: Vec<i64>,
}

impl Weight {
    pub fn new(fund: Vec<i64>, torus: Vec<i64>) -> Self {
        Weight { fund, torus }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    factors: Vec<SimpleType>,
    torus_rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    factor_of: Vec<usize>,
    positive: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(factors: &[SimpleType], torus_rank: usize) -> Self {
        let s: usize = factors.iter().map(|f| f.rank).sum();
        let mut cartan = vec![vec![0i64; s]; s];
        let mut sym = Vec::with_capacity(s);
        let mut factor_of = Vec::with_capacity(s);
        let mut off = 0;
        for (k, f) in factors.iter().enumerate() {
            for (i, row) in f.cartan().into_iter().enumerate() {
                cartan[off + i][off..off + f.rank].copy_from_slice(&row);
            }
            sym.extend(f.symmetrizer());
            factor_of.extend(std::iter::repeat(k).take(f.rank));
            off += f.rank;
        }
        let positive = close_positive_roots(&cartan);
        RootSystem { factors: factors.to_vec(), torus_rank, cartan, sym, factor_of, positive }
    }

    /// Builds from `(family, rank)` pairs, validating each.
    pub fn build(spec: &[(Family, usize)], torus_rank: usize) -> Result<Self, RootError> {
        let factors = spec
            .iter()
            .map(|&(f, r)| SimpleType::new(f, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(&factors, torus_rank))
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    fn check_index(&self, i: usize) -> Result<(), RootError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(RootError::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// `⟨χ, α̌_i⟩`, read off the fundamental-weight coordinates.
    pub fn pairing(&self, chi: &Weight, i: usize) -> Result<i64, RootError> {
        self.check_index(i)?;
        chi.fund.get(i).copied().ok_or(RootError::WeightLength {
            expected: self.rank(),
            found: chi.fund.len(),
        })
    }

    /// `⟨β, α̌_i⟩` for a root written in simple-root coefficients.
    pub fn root_pairing(&self, beta: &[i64], i: usize) -> Result<i64, RootError> {
        self.check_index(i)?;
        Ok(beta.iter().zip(&self.cartan[i]).map(|(b, c)| b * c).sum())
    }

    /// Fundamental-weight coordinates of a root-lattice element.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let fund = (0..self.rank())
            .map(|i| beta.iter().zip(&self.cartan[i]).map(|(b, c)| b * c).sum())
            .collect();
        Weight::new(fund, vec![0; self.torus_rank])
    }

    /// Coefficients `k_i` of the coroot `β̌ = Σ k_i α̌_i`.
    pub fn coroot_coefficients(&self, beta: &[i64]) -> Vec<Rational> {
        let norm: i64 = (0..self.rank())
            .flat_map(|i| (0..self.rank()).map(move |j| (i, j)))
            .map(|(i, j)| beta[i] * beta[j] * self.sym[i] * self.cartan[i][j])
            .sum();
        // (β,β) = Σ β_i β_j d_i C_ij and k_i = 2 β_i d_i / (β,β)
        beta.iter()
            .zip(&self.sym)
            .map(|(&b, &d)| Rational::new(BigInt::from(2 * b * d), BigInt::from(norm)))
            .collect()
    }

    /// `⟨λ, β̌⟩` for a weight given by (possibly rational) fundamental coordinates.
    pub fn coroot_pairing(&self, lambda: &[Rational], beta: &[i64]) -> Rational {
        self.coroot_coefficients(beta)
            .iter()
            .zip(lambda)
            .fold(Rational::zero(), |acc, (k, l)| acc + k * l)
    }

    /// Whether a positive root is supported on the given subset of simple roots.
    pub fn supported_on(beta: &[i64], subset: &BTreeSet<usize>) -> bool {
        beta.iter().enumerate().all(|(i, &b)| b == 0 || subset.contains(&i))
    }

    /// Positive roots of the Levi subsystem `R_I⁺`.
    pub fn levi_roots(&self, subset: &BTreeSet<usize>) -> Vec<&Vec<i64>> {
        self.positive.iter().filter(|b| Self::supported_on(b, subset)).collect()
    }

    /// Positive roots outside `R_I⁺`.
    pub fn unipotent_roots(&self, subset: &BTreeSet<usize>) -> Vec<&Vec<i64>> {
        self.positive.iter().filter(|b| !Self::supported_on(b, subset)).collect()
    }

    fn check_subset(&self, subset: &BTreeSet<usize>) -> Result<(), RootError> {
        subset.iter().try_for_each(|&i| self.check_index(i))
    }

    /// `2ρ^P`: the sum of positive roots not supported on `I`.
    pub fn two_rho_p(&self, subset: &BTreeSet<usize>) -> Result<Weight, RootError> {
        self.check_subset(subset)?;
        let mut sum = vec![0i64; self.rank()];
        for beta in self.unipotent_roots(subset) {
            for (s, b) in sum.iter_mut().zip(beta) {
                *s += b;
            }
        }
        Ok(self.root_to_weight(&sum))
    }

    /// Connected components of the Dynkin subdiagram induced on `vertices`.
    pub fn components(&self, vertices: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &v in vertices {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for &w in vertices {
                    if self.cartan[u][w] != 0 && w != u && seen.insert(w) {
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Orders a connected subdiagram as a path, if it is one.
    fn as_path(&self, comp: &[usize]) -> Option<Vec<usize>> {
        let nbrs = |u: usize| comp.iter().copied().filter(move |&w| w != u && self.cartan[u][w] != 0);
        if comp.len() == 1 {
            return Some(comp.to_vec());
        }
        if comp.iter().any(|&u| nbrs(u).count() > 2) {
            return None;
        }
        let start = comp.iter().copied().find(|&u| nbrs(u).count() == 1)?;
        let mut path = vec![start];
        while path.len() < comp.len() {
            let last = *path.last().unwrap();
            let next = nbrs(last).find(|w| !path.contains(w))?;
            path.push(next);
        }
        Some(path)
    }

    /// The smoothness condition on a pair `(I, J)` of disjoint subsets of simple roots.
    pub fn is_pair_smooth(
        &self,
        i_set: &BTreeSet<usize>,
        j_set: &BTreeSet<usize>,
    ) -> Result<bool, RootError> {
        self.check_subset(i_set)?;
        self.check_subset(j_set)?;
        if let Some(&x) = i_set.intersection(j_set).next() {
            return Err(RootError::Overlap(x));
        }
        let union: BTreeSet<usize> = i_set.union(j_set).copied().collect();
        for comp in self.components(&union) {
            let in_j: Vec<usize> = comp.iter().copied().filter(|v| j_set.contains(v)).collect();
            if in_j.is_empty() {
                continue;
            }
            if in_j.len() != 1 {
                return Ok(false);
            }
            let Some(path) = self.as_path(&comp) else { return Ok(false) };
            let j = in_j[0];
            let k = path.len();
            let simple_edge = |a: usize, b: usize| self.cartan[a][b] == -1 && self.cartan[b][a] == -1;
            let all_simple = path.windows(2).all(|w| simple_edge(w[0], w[1]));
            if all_simple {
                if j != path[0] && j != path[k - 1] {
                    return Ok(false);
                }
                continue;
            }
            // type C: the double edge at one end, the long root at that end,
            // and J the opposite (simple) end
            let oriented = |p: &[usize]| {
                let n = p.len();
                p[..n - 1].windows(2).all(|w| simple_edge(w[0], w[1]))
                    && self.cartan[p[n - 2]][p[n - 1]] == -2
                    && self.cartan[p[n - 1]][p[n - 2]] == -1
                    && j == p[0]
            };
            let rev: Vec<usize> = path.iter().rev().copied().collect();
            if !(oriented(&path) || oriented(&rev)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(−Σ_{β∈R_I⁺} ⟨β, α̌⟩, #(R⁺_{I∪{α}} \ R_I⁺) − 1)`.
    pub fn color_table_row(
        &self,
        i_set: &BTreeSet<usize>,
        alpha: usize,
    ) -> Result<(i64, i64), RootError> {
        self.check_subset(i_set)?;
        self.check_index(alpha)?;
        if i_set.contains(&alpha) {
            return Err(RootError::RootInI(alpha));
        }
        let first: i64 = self
            .levi_roots(i_set)
            .iter()
            .map(|b| -self.root_pairing(b, alpha).unwrap())
            .sum();
        let mut bigger = i_set.clone();
        bigger.insert(alpha);
        let second = (self.levi_roots(&bigger).len() - self.levi_roots(i_set).len()) as i64 - 1;
        Ok((first, second))
    }

    /// Weyl dimension of the simple module of highest weight λ.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<Integer, RootError> {
        if lambda.fund.len() != self.rank() {
            return Err(RootError::WeightLength { expected: self.rank(), found: lambda.fund.len() });
        }
        if lambda.fund.iter().any(|&x| x < 0) {
            return Err(RootError::NonDominant);
        }
        let shifted: Vec<Rational> = lambda.fund.iter().map(|&x| rat_int(x + 1)).collect();
        let rho: Vec<Rational> = vec![Rational::one(); self.rank()];
        let dim = self.positive.iter().fold(Rational::one(), |acc, b| {
            acc * self.coroot_pairing(&shifted, b) / self.coroot_pairing(&rho, b)
        });
        debug_assert!(dim.is_integer());
        Ok(dim.to_integer())
    }

    /// Whether the simple module `V(ϖ_α)` is horospherical.
    pub fn is_horospherical_module(&self, alpha: usize) -> Result<bool, RootError> {
        if self.factors.len() != 1 {
            return Err(RootError::MultipleFactors(self.factors.len()));
        }
        self.check_index(alpha)?;
        let mut fund = vec![0i64; self.rank()];
        fund[alpha] = 1;
        let lambda: Vec<Rational> = fund.iter().map(|&x| rat_int(x)).collect();
        let minuscule = self
            .positive
            .iter()
            .all(|b| self.coroot_pairing(&lambda, b) <= Rational::one());
        if !minuscule {
            return Ok(false);
        }
        let levi: BTreeSet<usize> = (0..self.rank()).filter(|&i| i != alpha).collect();
        let dim_flag = self.unipotent_roots(&levi).len();
        let dim_v = self.weyl_dim(&Weight::new(fund, vec![0; self.torus_rank]))?;
        Ok(dim_v == Integer::from(dim_flag + 1))
    }
}

/// Positive roots by closure under simple reflections' root strings,
/// sorted by height, then by decreasing lexicographic order (so α_1 comes first).
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let s = cartan.len();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..s)
        .map(|i| {
            let mut e = vec![0; s];
            e[i] = 1;
            e
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..s {
                // α_i-string through β: p = how far down it extends
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = beta.iter().zip(&cartan[i]).map(|(b, c)| b * c).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(spec: &[(Family, usize)]) -> RootSystem {
        RootSystem::build(spec, 0).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn positive_root_counts() {
        use Family::*;
        let expected = [
            ((A, 1), 1),
            ((A, 2), 3),
            ((A, 5), 15),
            ((B, 3), 9),
            ((C, 4), 16),
            ((D, 4), 12),
            ((D, 6), 30),
            ((E, 6), 36),
            ((E, 7), 63),
            ((E, 8), 120),
            ((F, 4), 24),
            ((G, 2), 6),
        ];
        for (spec, count) in expected {
            assert_eq!(rs(&[spec]).positive_roots().len(), count, "{spec:?}");
        }
    }

    #[test]
    fn a2_roots_and_product() {
        let a2 = rs(&[(Family::A, 2)]);
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let a1a1 = rs(&[(Family::A, 1), (Family::A, 1)]);
        assert_eq!(a1a1.positive_roots().len(), 2);
        assert_eq!(a1a1.cartan(), &[vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn cartan_diagonal_and_illegal_types() {
        let f4 = rs(&[(Family::F, 4)]);
        assert!((0..4).all(|i| f4.cartan()[i][i] == 2));
        assert!(RootSystem::build(&[(Family::D, 2)], 0).is_err());
        assert!(RootSystem::build(&[(Family::E, 9)], 0).is_err());
        assert!(RootSystem::build(&[(Family::G, 3)], 0).is_err());
    }

    #[test]
    fn pairings() {
        let a2 = rs(&[(Family::A, 2)]);
        assert_eq!(a2.pairing(&Weight::new(vec![1, 0], vec![]), 0).unwrap(), 1);
        assert_eq!(a2.root_pairing(&[1, 0], 1).unwrap(), -1);
        assert!(a2.pairing(&Weight::new(vec![1, 0], vec![]), 2).is_err());
        // G2: long root α2 paired with the short coroot α̌1
        let g2 = rs(&[(Family::G, 2)]);
        assert_eq!(g2.root_pairing(&[0, 1], 0).unwrap(), -3);
    }

    #[test]
    fn two_rho_p_examples() {
        let a1 = rs(&[(Family::A, 1)]);
        assert_eq!(a1.two_rho_p(&set(&[])).unwrap().fund, vec![2]);
        let a2 = rs(&[(Family::A, 2)]);
        assert_eq!(a2.two_rho_p(&set(&[])).unwrap().fund, vec![2, 2]);
        assert_eq!(a2.two_rho_p(&set(&[1])).unwrap().fund, vec![3, 0]);
    }

    #[test]
    fn pair_smoothness() {
        let a2 = rs(&[(Family::A, 2)]);
        assert!(a2.is_pair_smooth(&set(&[1]), &set(&[])).unwrap());
        assert!(!a2.is_pair_smooth(&set(&[]), &set(&[0, 1])).unwrap());
        let a1a1 = rs(&[(Family::A, 1), (Family::A, 1)]);
        assert!(a1a1.is_pair_smooth(&set(&[]), &set(&[0, 1])).unwrap());
        assert!(matches!(a2.is_pair_smooth(&set(&[0]), &set(&[0])), Err(RootError::Overlap(0))));
        // A3 with J in the middle is not smooth
        let a3 = rs(&[(Family::A, 3)]);
        assert!(!a3.is_pair_smooth(&set(&[0, 2]), &set(&[1])).unwrap());
        assert!(a3.is_pair_smooth(&set(&[1, 2]), &set(&[0])).unwrap());
        // C3: the simple end α1 may be in J, the long end α3 may not
        let c3 = rs(&[(Family::C, 3)]);
        assert!(c3.is_pair_smooth(&set(&[1, 2]), &set(&[0])).unwrap());
        assert!(!c3.is_pair_smooth(&set(&[0, 1]), &set(&[2])).unwrap());
        // B3 with J at its simple end is not of type C
        let b3 = rs(&[(Family::B, 3)]);
        assert!(!b3.is_pair_smooth(&set(&[1, 2]), &set(&[0])).unwrap());
    }

    #[test]
    fn color_table_examples() {
        let a3 = rs(&[(Family::A, 3)]);
        assert_eq!(a3.color_table_row(&set(&[0, 1]), 2).unwrap(), (2, 2));
        let g2 = rs(&[(Family::G, 2)]);
        assert_eq!(g2.color_table_row(&set(&[1]), 0).unwrap(), (3, 4));
        let e8 = rs(&[(Family::E, 8)]);
        assert_eq!(e8.color_table_row(&set(&[0, 1, 2, 3, 4, 5, 6]), 7).unwrap(), (27, 56));
        assert!(matches!(a3.color_table_row(&set(&[0]), 0), Err(RootError::RootInI(0))));
    }

    #[test]
    fn weyl_dimensions() {
        let w = |v: &[i64]| Weight::new(v.to_vec(), vec![]);
        assert_eq!(rs(&[(Family::A, 1)]).weyl_dim(&w(&[1])).unwrap(), Integer::from(2));
        assert_eq!(rs(&[(Family::A, 2)]).weyl_dim(&w(&[1, 0])).unwrap(), Integer::from(3));
        assert_eq!(rs(&[(Family::C, 3)]).weyl_dim(&w(&[1, 0, 0])).unwrap(), Integer::from(6));
        assert_eq!(rs(&[(Family::B, 3)]).weyl_dim(&w(&[1, 0, 0])).unwrap(), Integer::from(7));
        assert_eq!(rs(&[(Family::E, 8)]).weyl_dim(&w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), Integer::from(248));
        assert_eq!(rs(&[(Family::G, 2)]).weyl_dim(&w(&[1, 0])).unwrap(), Integer::from(7));
        assert!(matches!(
            rs(&[(Family::A, 2)]).weyl_dim(&w(&[-1, 0])),
            Err(RootError::NonDominant)
        ));
    }

    #[test]
    fn horospherical_modules() {
        assert!(rs(&[(Family::A, 3)]).is_horospherical_module(0).unwrap());
        assert!(!rs(&[(Family::A, 3)]).is_horospherical_module(1).unwrap());
        assert!(rs(&[(Family::C, 3)]).is_horospherical_module(0).unwrap());
        assert!(!rs(&[(Family::B, 3)]).is_horospherical_module(0).unwrap());
        let e6 = rs(&[(Family::E, 6)]);
        assert!((0..6).all(|i| !e6.is_horospherical_module(i).unwrap()));
        let prod = rs(&[(Family::A, 1), (Family::A, 1)]);
        assert!(matches!(prod.is_horospherical_module(0), Err(RootError::MultipleFactors(2))));
    }

    #[test]
    fn color_table_sum_bound_low_rank() {
        use Family::*;
        let types = [
            (A, 1), (A, 2), (A, 3), (A, 4), (A, 5), (A, 6), (B, 2), (B, 3), (B, 4), (B, 5),
            (B, 6), (C, 3), (C, 4), (C, 5), (C, 6), (D, 4), (D, 5), (D, 6), (E, 6), (F, 4), (G, 2),
        ];
        for t in types {
            let r = rs(&[t]);
            let s = r.rank();
            for mask in 0u32..(1 << s) {
                let i_set: BTreeSet<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
                let total: i64 = (0..s)
                    .filter(|a| !i_set.contains(a))
                    .map(|a| r.color_table_row(&i_set, a).unwrap().0)
                    .sum();
                let rhs = r.unipotent_roots(&i_set).len() as i64 - (s - i_set.len()) as i64;
                assert!(total <= rhs, "{t:?} I={i_set:?}: {total} > {rhs}");
            }
        }
    }
}
