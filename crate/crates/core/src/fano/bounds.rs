//! Inequalities satisfied by every Fano embedding, checked exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{degree, is_locally_factorial, is_q_factorial, is_reflexive, vertex_weight, FanoError};
use crate::coloredfan::{face_fan_from_polytope, picard_number};
use crate::exactmath::{dot, factorial, to_rat, Integer, Rational};
use crate::horospace::HoroSpace;
use crate::polytope::RationalPolytope;

/// One evaluated inequality `lhs ≤ rhs` (or `lhs ≥ rhs` where noted in `name`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub satisfied: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl BoundCheck {
    fn le(name: &str, lhs: Rational, rhs: Rational) -> Self {
        BoundCheck { name: name.to_string(), satisfied: lhs <= rhs, lhs, rhs }
    }
}

fn ri(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

fn ipow(base: i64, exp: usize) -> Rational {
    ri(num_traits::pow(BigInt::from(base), exp))
}

/// All inequalities whose hypotheses `Q` meets.
///
/// Always: `C ≤ d`. ℚ-factorial: the Picard chain. Locally factorial: the
/// degree bound, the dual-volume bound and (for `r ≥ 2`) the vertex-pairing bound.
pub fn verify_bounds(space: &HoroSpace, q: &RationalPolytope) -> Result<Vec<BoundCheck>, FanoError> {
    if !is_reflexive(space, q) {
        return Err(FanoError::NotReflexive);
    }
    let n = space.n();
    let d = space.d();
    let c = space.c_const();
    let r = q.vertices().len() - n;
    let mut rows = vec![BoundCheck::le("c_le_d", ri(c), ri(d as i64))];

    let fan = face_fan_from_polytope(space, q)?;
    if is_q_factorial(space, q) {
        let rho = picard_number(space, &fan)?;
        let outside = space.num_colors() as i64;
        let mid = 2 * n as i64 + outside;
        rows.push(BoundCheck::le("picard_le_2n_plus_colors", ri(rho), ri(mid)));
        rows.push(BoundCheck::le("2n_plus_colors_le_n_plus_d", ri(mid), ri((n + d) as i64)));
        rows.push(BoundCheck::le("n_plus_d_le_2d", ri((n + d) as i64), ri(2 * d as i64)));

        if is_locally_factorial(space, q) {
            let deg = degree(space, q)?;
            let fact = to_rat(&factorial(d));
            let rhs = if rho > 1 {
                fact * ipow(d as i64, d * rho as usize + n)
            } else {
                fact * ipow(d as i64 + 1, d + n)
            };
            rows.push(BoundCheck::le("degree", deg, rhs));

            let dual = q.dual()?;
            let base = if rho >= 2 { num_traits::pow(BigInt::from(c), r) } else { BigInt::from(c + 1) };
            let vol_rhs = num_traits::pow(ri(base * BigInt::from(space.max_a())), n);
            rows.push(BoundCheck::le("dual_volume", dual.volume(), vol_rhs));

            if r >= 2 {
                let cr = ipow(c, r);
                let values: Vec<Rational> = q
                    .vertices()
                    .iter()
                    .flat_map(|u| {
                        let a = to_rat(&vertex_weight(space, u));
                        dual.vertices().iter().map(move |v| a.clone() * (Rational::one() + dot(v, u)))
                    })
                    .collect();
                let min = values.iter().min().cloned().unwrap_or_else(Rational::zero);
                let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
                rows.push(BoundCheck {
                    name: "vertex_pairing_nonnegative".into(),
                    satisfied: min >= Rational::zero(),
                    lhs: min,
                    rhs: Rational::zero(),
                });
                rows.push(BoundCheck::le("vertex_pairing_le_c_pow_r", max, cr));
            }
        }
    }
    Ok(rows)
}

/// `(n!·a·V)^{n(n+1)/2} · 2^{2^n (n!·a·V)^{n+1}}` with `V = (7(a+1))^{n·2^{n+1}}`,
/// kept as `coefficient · 2^exponent` since the power of two is far beyond memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessBound {
    pub n: usize,
    pub a: Integer,
    pub v: Integer,
    pub coefficient: Integer,
    pub exponent: Integer,
}

impl FinitenessBound {
    /// The full integer, when its bit length stays under `max_bits`.
    pub fn expand(&self, max_bits: u64) -> Option<Integer> {
        let e = self.exponent.to_u64()?;
        if e.saturating_add(self.coefficient.bits()) > max_bits {
            return None;
        }
        Some(&self.coefficient << e)
    }

    /// Bit length of the full integer.
    pub fn bit_length(&self) -> Integer {
        &self.exponent + Integer::from(self.coefficient.bits())
    }
}

impl fmt::Display for FinitenessBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * 2^{}", self.coefficient, self.exponent)
    }
}

pub fn finiteness_bound(space: &HoroSpace) -> FinitenessBound {
    let n = space.n().max(1);
    let a = space.a_prod();
    let v = num_traits::pow(BigInt::from(7) * (&a + 1), n << (n + 1));
    let base: Integer = factorial(n) * &a * &v;
    let coefficient = num_traits::pow(base.clone(), n * (n + 1) / 2);
    let exponent = (BigInt::one() << n) * num_traits::pow(base, n + 1);
    FinitenessBound { n, a, v, coefficient, exponent }
}
