//! Dense and sparse matrices over exact rings.
//!
//! A matrix `A` represents a linear map in a chosen basis by columns: entry
//! `(i, j)` is the coefficient of basis vector `i` in the image of basis
//! vector `j`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{poly, LaurentPoly, RationalFunction};
use crate::error::{Error, Result};

/// The operations matrices need from their entries.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i64 overflow")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("i64 overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i64 overflow")
    }
    fn neg(&self) -> Self {
        -*self
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Debug> Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        rows.serialize(serializer)
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::size(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::size("vector length does not match matrix"));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    /// Square submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn block_diagonal(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::size(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Matrix<LaurentPoly> {
    pub fn bar(&self) -> Self {
        self.map(LaurentPoly::bar)
    }

    pub fn eval_one_i64(&self) -> Matrix<i64> {
        self.map(LaurentPoly::eval_one_i64)
    }

    pub fn to_rational(&self) -> Matrix<RationalFunction> {
        self.map(|p| RationalFunction::from_poly(p.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Inverse of an upper unitriangular matrix, computed over `Z[v, v^-1]`.
    pub fn invert_unitriangular(&self) -> Result<Self> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::size("unitriangular inverse of non-square matrix"));
        }
        for i in 0..n {
            if !self[(i, i)].is_one() || (0..i).any(|j| !self[(i, j)].is_zero()) {
                return Err(Error::invalid("matrix is not upper unitriangular"));
            }
        }
        let mut inv = Self::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = LaurentPoly::zero();
                for k in i + 1..=j {
                    if !self[(i, k)].is_zero() && !inv[(k, j)].is_zero() {
                        acc.add_mul(&self[(i, k)], &inv[(k, j)]);
                    }
                }
                inv[(i, j)] = -acc;
            }
        }
        Ok(inv)
    }
}

impl Matrix<RationalFunction> {
    /// Entrywise conversion back to Laurent polynomials, if every denominator is a unit.
    pub fn to_laurent(&self) -> Option<Matrix<LaurentPoly>> {
        let data = self
            .data
            .iter()
            .map(RationalFunction::as_poly)
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let inv = m[(rank, c)].inv().unwrap();
            for r in rank + 1..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for k in c..m.cols {
                    if !m[(rank, k)].is_zero() {
                        let d = &f * &m[(rank, k)];
                        m[(r, k)] = &m[(r, k)] - &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T> Matrix<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// Exact inverse over the fraction field by Gauss-Jordan elimination.
pub fn rf_invert_matrix(m: &Matrix<LaurentPoly>) -> Result<Matrix<RationalFunction>> {
    invert_rational(&m.to_rational())
}

pub fn invert_rational(m: &Matrix<RationalFunction>) -> Result<Matrix<RationalFunction>> {
    if !m.is_square() {
        return Err(Error::size("cannot invert a non-square matrix"));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = Matrix::<RationalFunction>::identity(n);
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[(r, c)].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        let pinv = a[(c, c)].inv().unwrap();
        for k in 0..n {
            if !a[(c, k)].is_zero() {
                a[(c, k)] = &a[(c, k)] * &pinv;
            }
            if !inv[(c, k)].is_zero() {
                inv[(c, k)] = &inv[(c, k)] * &pinv;
            }
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for k in 0..n {
                if !a[(c, k)].is_zero() {
                    let d = &f * &a[(c, k)];
                    a[(r, k)] = &a[(r, k)] - &d;
                }
                if !inv[(c, k)].is_zero() {
                    let d = &f * &inv[(c, k)];
                    inv[(r, k)] = &inv[(r, k)] - &d;
                }
            }
        }
    }
    Ok(inv)
}

fn row_gcd(row: &BTreeMap<usize, LaurentPoly>) -> LaurentPoly {
    let mut g: Option<Vec<BigInt>> = None;
    let mut min_deg = i32::MAX;
    let mut int_content = BigInt::zero();
    for p in row.values() {
        min_deg = min_deg.min(p.min_deg());
        int_content = num_integer::Integer::gcd(&int_content, &p.content());
        g = Some(match g {
            None => poly::primitive_gcd(p.coeffs(), &[]),
            Some(g) if g.len() == 1 => g,
            Some(g) => poly::primitive_gcd(&g, p.coeffs()),
        });
    }
    let Some(g) = g else {
        return LaurentPoly::one();
    };
    // g is primitive, so the integer content divides each entry independently
    &LaurentPoly::new(min_deg, g) * &LaurentPoly::constant(int_content)
}

fn reduce_row(row: &mut BTreeMap<usize, LaurentPoly>) {
    if row.is_empty() {
        return;
    }
    let g = row_gcd(row);
    if g.is_one() {
        return;
    }
    for p in row.values_mut() {
        *p = p.div_exact(&g).expect("row gcd divides every entry");
    }
}

/// Basis of the right nullspace `{x : A x = 0}` over the fraction field.
///
/// The system is given as sparse rows over `Z[v, v^-1]`; elimination is
/// fraction-free with gcd reduction of every row. Each returned vector is
/// Laurent-integral with coprime entries, and is nonzero at its own free
/// variable and zero at every other free variable.
pub fn nullspace(rows: &[BTreeMap<usize, LaurentPoly>], ncols: usize) -> Vec<Vec<LaurentPoly>> {
    // pivot column -> reduced row
    let mut pivots: BTreeMap<usize, BTreeMap<usize, LaurentPoly>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, LaurentPoly> = row
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(&k, p)| (k, p.clone()))
            .collect();
        while let Some((&c, _)) = r.iter().find(|(c, _)| pivots.contains_key(c)) {
            let prow = &pivots[&c];
            let a = prow[&c].clone();
            let b = r[&c].clone();
            let mut next = BTreeMap::new();
            for (&k, p) in &r {
                next.insert(k, &a * p);
            }
            for (&k, p) in prow {
                let e = next.entry(k).or_insert_with(LaurentPoly::zero);
                *e -= &b * p;
            }
            next.retain(|_, p| !p.is_zero());
            r = next;
            reduce_row(&mut r);
        }
        let Some((&c, _)) = r.iter().next() else {
            continue;
        };
        reduce_row(&mut r);
        // eliminate the new pivot from existing rows
        for prow in pivots.values_mut() {
            let Some(b) = prow.get(&c).cloned() else {
                continue;
            };
            let a = r[&c].clone();
            let mut next = BTreeMap::new();
            for (&k, p) in prow.iter() {
                next.insert(k, &a * p);
            }
            for (&k, p) in &r {
                let e = next.entry(k).or_insert_with(LaurentPoly::zero);
                *e -= &b * p;
            }
            next.retain(|_, p| !p.is_zero());
            reduce_row(&mut next);
            *prow = next;
        }
        pivots.insert(c, r);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains_key(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        // pivot row: piv * x_c + a_f * x_f = 0 with x_f = 1
        let mut x: Vec<RationalFunction> = vec![RationalFunction::zero(); ncols];
        x[f] = RationalFunction::one();
        for (&c, prow) in &pivots {
            if let Some(a) = prow.get(&f) {
                x[c] = RationalFunction::new(-a, prow[&c].clone());
            }
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

/// Scales a rational vector to a Laurent-integral vector with coprime entries.
pub(crate) fn clear_denominators(x: &[RationalFunction]) -> Vec<LaurentPoly> {
    let mut l = LaurentPoly::one();
    for r in x {
        if !r.den().is_one() {
            let g = poly::primitive_gcd(l.coeffs(), r.den().coeffs());
            let g = LaurentPoly::new(0, g);
            l = &l * &r.den().div_exact(&g).expect("gcd divides");
        }
    }
    let mut row: BTreeMap<usize, LaurentPoly> = x
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| {
            let p = (&RationalFunction::from_poly(l.clone()) * r)
                .as_poly()
                .expect("common denominator clears");
            (i, p)
        })
        .collect();
    reduce_row(&mut row);
    let mut out = vec![LaurentPoly::zero(); x.len()];
    for (i, p) in row {
        out[i] = p;
    }
    out
}

/// Sparse vector: sorted `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, LaurentPoly)>;

/// Column-sparse square matrix over `Z[v, v^-1]`.
///
/// `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(dim: usize, cols: Vec<SparseVec>) -> Self {
        assert_eq!(cols.len(), dim, "column count");
        let cols = cols
            .into_iter()
            .map(|c| {
                let mut m: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                for (i, p) in c {
                    assert!(i < dim, "row index out of range");
                    *m.entry(i).or_default() += p;
                }
                m.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect();
        SparseMatrix { dim, cols }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: (0..dim).map(|j| vec![(j, LaurentPoly::one())]).collect(),
        }
    }

    pub fn from_dense(m: &Matrix<LaurentPoly>) -> Self {
        assert!(m.is_square());
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            dim: m.rows(),
            cols,
        }
    }

    pub fn to_dense(&self) -> Matrix<LaurentPoly> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, p) in col {
                m[(*i, j)] = p.clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        self.cols[j]
            .binary_search_by_key(&i, |(k, _)| *k)
            .map(|pos| self.cols[j][pos].1.clone())
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self * x` for a sparse vector `x`.
    pub fn apply(&self, x: &[(usize, LaurentPoly)]) -> SparseVec {
        let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (j, c) in x {
            for (i, a) in &self.cols[*j] {
                acc.entry(*i).or_default().add_mul(c, a);
            }
        }
        acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        SparseMatrix {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, true)
    }

    fn combine(&self, other: &SparseMatrix, negate: bool) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut m: BTreeMap<usize, LaurentPoly> = a.iter().cloned().collect();
                for (i, p) in b {
                    let e = m.entry(*i).or_default();
                    if negate {
                        *e -= p;
                    } else {
                        *e += p;
                    }
                }
                m.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.dim,
            self.cols
                .iter()
                .map(|col| col.iter().map(|(i, p)| (*i, c * p)).collect())
                .collect(),
        )
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, p) in col {
                cols[*i].push((j, p.clone()));
            }
        }
        SparseMatrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Entrywise `v -> 1`, as machine integers.
    pub fn eval_one_i64(&self) -> Vec<Vec<(usize, i64)>> {
        self.cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, p)| (*i, p.eval_one_i64()))
                    .filter(|(_, x)| *x != 0)
                    .collect()
            })
            .collect()
    }

    /// True when no column in `cols` has support outside `rows`.
    pub fn preserves(&self, cols: &[usize], rows: &[bool]) -> bool {
        cols.iter()
            .all(|&j| self.cols[j].iter().all(|(i, _)| rows[*i]))
    }
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_dense().serialize(serializer)
    }
}
