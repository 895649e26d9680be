//! Row-sparse exact matrices over [`Rational`] or [`Gaussian`] scalars, with a
//! float bridge to `nalgebra` for Hermitian eigenvalues.
//!
//! Rows are kept sorted by column with no explicit zeros, so structural
//! equality is value equality.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};
use num_traits::{One, Zero};

use crate::rational::{Gaussian, Rational};

/// Exact scalar field usable as matrix entries.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
{
    fn from_rational(r: Rational) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex<f64>;
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.to_f64(), 0.0)
    }
}

impl Scalar for Gaussian {
    fn from_rational(r: Rational) -> Self {
        Gaussian::real(r)
    }
    fn conj(&self) -> Self {
        Gaussian::conj(self)
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

pub type QMatrix = SparseMatrix<Rational>;
pub type GMatrix = SparseMatrix<Gaussian>;

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, s: T) -> Self {
        let mut m = Self::zeros(n, n);
        if !s.is_zero() {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.push((i, s.clone()));
            }
        }
        m
    }

    /// Sums duplicate entries and drops zeros.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) out of bounds");
            rows[i].push((j, v));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(d: &[Vec<T>]) -> Self {
        let nrows = d.len();
        let ncols = d.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            d.iter().enumerate().flat_map(|(i, r)| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(self.nrows, self.ncols, self.iter().map(|(i, j, v)| (i, j, f(v))))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v.clone() * s.clone())).filter(|e| !e.1.is_zero()).collect())
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    fn merge(&self, o: &Self, sign: bool) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut x, mut y) = (0, 0);
                while x < a.len() || y < b.len() {
                    let take_a = y >= b.len() || (x < a.len() && a[x].0 < b[y].0);
                    let take_b = x >= a.len() || (y < b.len() && b[y].0 < a[x].0);
                    let bval = |v: &T| if sign { v.clone() } else { -v.clone() };
                    if take_a {
                        out.push(a[x].clone());
                        x += 1;
                    } else if take_b {
                        out.push((b[y].0, bval(&b[y].1)));
                        y += 1;
                    } else {
                        let s = a[x].1.clone() + bval(&b[y].1);
                        if !s.is_zero() {
                            out.push((a[x].0, s));
                        }
                        x += 1;
                        y += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-T::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "shape mismatch in product");
        let mut acc: Vec<T> = vec![T::zero(); o.ncols];
        let mut touched: Vec<bool> = vec![false; o.ncols];
        let mut cols: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.nrows);
        for arow in &self.rows {
            for (k, a) in arow {
                for (j, b) in &o.rows[*k] {
                    if !touched[*j] {
                        touched[*j] = true;
                        cols.push(*j);
                    }
                    acc[*j] += a.clone() * b.clone();
                }
            }
            cols.sort_unstable();
            let mut out = Vec::with_capacity(cols.len());
            for &j in &cols {
                let v = std::mem::replace(&mut acc[j], T::zero());
                touched[j] = false;
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            cols.clear();
            rows.push(out);
        }
        SparseMatrix { nrows: self.nrows, ncols: o.ncols, rows }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|r| r.iter().fold(T::zero(), |s, (j, a)| s + a.clone() * v[*j].clone()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.iter().map(|(i, j, v)| (j, i, v.clone())))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.iter().map(|(i, j, v)| (j, i, v.conj())))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (r, c) = (self.nrows * o.nrows, self.ncols * o.ncols);
        let mut trips = Vec::with_capacity(self.nnz() * o.nnz());
        for (i, j, a) in self.iter() {
            for (k, l, b) in o.iter() {
                trips.push((i * o.nrows + k, j * o.ncols + l, a.clone() * b.clone()));
            }
        }
        Self::from_triplets(r, c, trips)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let mut trips = Vec::new();
        for (a, &i) in rows.iter().enumerate() {
            for (j, v) in &self.rows[i] {
                if pos[*j] != usize::MAX {
                    trips.push((a, pos[*j], v.clone()));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), trips)
    }

    pub fn trace(&self) -> T {
        (0..self.nrows.min(self.ncols)).fold(T::zero(), |s, i| s + self.get(i, i))
    }

    /// True when the matrix is `s·Id`.
    pub fn is_scalar(&self, s: &T) -> bool {
        self.is_square() && *self == Self::scalar(self.nrows, s.clone())
    }

    /// True when no entry lies off the diagonal blocks given by `blocks`
    /// (consecutive index ranges covering all rows).
    pub fn respects_blocks(&self, blocks: &[usize]) -> bool {
        let mut label = Vec::with_capacity(self.nrows);
        for (b, &len) in blocks.iter().enumerate() {
            label.extend(std::iter::repeat_n(b, len));
        }
        label.len() == self.nrows && self.iter().all(|(i, j, _)| label[i] == label[j])
    }

    pub fn to_c64(&self) -> DMatrix<Complex<f64>> {
        let mut m = DMatrix::from_element(self.nrows, self.ncols, Complex::new(0.0, 0.0));
        for (i, j, v) in self.iter() {
            m[(i, j)] = v.to_c64();
        }
        m
    }

    pub fn is_real(&self) -> bool {
        self.iter().all(|(_, _, v)| v.conj() == *v)
    }
}

impl QMatrix {
    pub fn to_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            m[(i, j)] = v.to_f64();
        }
        m
    }

    pub fn to_gaussian(&self) -> GMatrix {
        self.map(|v| Gaussian::real(v.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

/// Ascending eigenvalues of `G^{1/2} A G^{-1/2}` where `G = diag(gram)` is a
/// positive weight making `A` self-adjoint. Uses the real solver when every
/// entry is real.
pub fn hermitian_eigenvalues<T: Scalar>(a: &SparseMatrix<T>, gram: Option<&[Rational]>) -> Vec<f64> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let n = a.nrows();
    if n == 0 {
        return Vec::new();
    }
    let w: Vec<f64> = match gram {
        Some(g) => g.iter().map(|x| x.to_f64().sqrt()).collect(),
        None => vec![1.0; n],
    };
    let mut ev: Vec<f64> = if a.is_real() {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (i, j, v) in a.iter() {
            m[(i, j)] = v.to_c64().re * w[i] / w[j];
        }
        let s = (&m + m.transpose()) * 0.5;
        s.symmetric_eigen().eigenvalues.iter().copied().collect()
    } else {
        let mut m = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
        for (i, j, v) in a.iter() {
            m[(i, j)] = v.to_c64() * (w[i] / w[j]);
        }
        let s = (&m + m.adjoint()).map(|z| z * 0.5);
        s.symmetric_eigen().eigenvalues.iter().copied().collect()
    };
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}
