//! Exact scalars, vectors and integer-lattice linear algebra.
//!
//! Everything downstream works over `BigRational`/`BigInt`; no floating point
//! is used anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type RatVec = Vec<Rational>;
pub type IntVec = Vec<Integer>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_rat(v: &Integer) -> Rational {
    BigRational::from_integer(v.clone())
}

pub fn rat_vec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat_int(x)).collect()
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn int_to_rat_vec(v: &[Integer]) -> RatVec {
    v.iter().map(to_rat).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let err = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).fold(Integer::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[Rational], s: &Rational) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_int_vec(v: &[Rational]) -> Option<IntVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Least common multiple of all denominators (1 for the empty list).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    values
        .into_iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |acc, x| acc.gcd(x))
}

/// Integer vector is primitive: nonzero with coprime coordinates.
pub fn is_primitive(v: &[Integer]) -> bool {
    gcd_all(v).is_one()
}

/// Primitive integer generator of the ray through a nonzero rational vector.
pub fn primitive_generator(v: &[Rational]) -> Option<IntVec> {
    let l = denominator_lcm(v);
    let scaled: IntVec = v.iter().map(|x| (x * to_rat(&l)).to_integer()).collect();
    let g = gcd_all(&scaled);
    if g.is_zero() {
        return None;
    }
    Some(scaled.into_iter().map(|x| x / &g).collect())
}

pub fn factorial(n: usize) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Integer::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Integer]) -> IntVec {
        (0..self.rows).map(|i| dot_int(self.row(i), v)).collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rational]) -> RatVec {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| acc + to_rat(a) * x)
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Integer::one();
        }
        let mut m = self.clone();
        let mut sign = Integer::one();
        let mut prev = Integer::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Integer::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            self[(target, j)] -= q * s;
        }
    }

    fn col_axpy(&mut self, target: usize, source: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            self[(i, target)] -= q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·A`, `U`
/// unimodular, `H` in echelon form with positive pivots and every entry above
/// a pivot reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut p = 0;
    for col in 0..a.cols() {
        if p == a.rows() {
            break;
        }
        loop {
            let best = (p..a.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()));
            let Some(r) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in p + 1..a.rows() {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(p, col)]);
                h.row_axpy(i, p, &q);
                u.row_axpy(i, p, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = h[(i, col)].div_floor(&h[(p, col)]);
            h.row_axpy(i, p, &q);
            u.row_axpy(i, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form `D = U·A·V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero invariant factors d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<Integer> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&x, &y| d[x].abs().cmp(&d[y].abs()));
            let Some((pi, pj)) = pivot else { return Smith { d, u, v } };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match bad {
                Some(i) => {
                    // row t += row i, then repeat the reduction
                    let minus_one = -Integer::one();
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { d, u, v }
}

/// Whether the integer vectors form (or extend to) a basis of `Z^r`.
pub fn is_lattice_basis(vectors: &[IntVec], r: usize) -> Result<bool, ExactError> {
    for v in vectors {
        if v.len() != r {
            return Err(ExactError::DimensionMismatch { expected: r, found: v.len() });
        }
    }
    if vectors.len() > r {
        return Ok(false);
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = IntMatrix::from_rows(vectors);
    if vectors.len() == r {
        return Ok(m.determinant().abs().is_one());
    }
    let factors = smith_normal_form(&m).invariant_factors();
    Ok(factors.len() == vectors.len() && factors.iter().all(|f| f.is_one()))
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(rows: &mut [RatVec]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..ncols {
        let Some(r) = (p..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(p, r);
        let inv = rows[p][col].recip();
        for x in rows[p].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != p && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let s = &rows[p][j] * &f;
                    rows[i][j] -= s;
                }
            }
        }
        pivots.push(col);
        p += 1;
        if p == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[RatVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : rows·x = 0}`.
pub fn nullspace(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

/// Some rational solution of `A·x = b`, if any exists.
pub fn solve_rational(a: &[RatVec], b: &[Rational], ncols: usize) -> Option<RatVec> {
    let mut aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Some integer solution of `A·x = b`, if any exists (via the Hermite form of `Aᵀ`).
pub fn solve_integer(a: &IntMatrix, b: &[Integer]) -> Option<IntVec> {
    let n = a.cols();
    let (h, u) = hnf(&a.transpose());
    // A·Uᵀ = Hᵀ; solve Hᵀ·y = b then x = Uᵀ·y.
    let mut y = vec![Integer::zero(); n];
    let mut row = 0;
    for col in 0..h.cols() {
        if row == h.rows() {
            break;
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        let partial = (0..row).fold(Integer::zero(), |acc, j| acc + &h[(j, col)] * &y[j]);
        let rest = &b[col] - partial;
        if !rest.is_multiple_of(&h[(row, col)]) {
            return None;
        }
        y[row] = rest / &h[(row, col)];
        row += 1;
    }
    let x = u.transpose().mul_vec(&y);
    (a.mul_vec(&x) == b).then_some(x)
}

/// Rational square matrix inverse.
pub fn inverse_rational(m: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = m.len();
    let mut aug: Vec<RatVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant_rational(m: &[RatVec]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        let p = a[c][c].clone();
        det *= &p;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &p;
            for j in c..n {
                let s = &a[c][j] * &f;
                a[i][j] -= s;
            }
        }
    }
    det
}
