//! Dense matrices over exact rings, with kernels and ranks over the fraction field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{gcd_many, lcm, MultiPoly};
use crate::ratfunc::RatFunc;
pub use crate::ring::Ring;
use crate::scalar::CycloNumber;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<T>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Columns `range` as a new matrix.
    pub fn column_slice(&self, cols: std::ops::Range<usize>) -> Self {
        let start = cols.start;
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, start + j).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::r_zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::r_one() } else { T::r_zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.r_is_zero())
    }

    /// Matrix product; entries are computed in parallel.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let data: Vec<T> = (0..self.rows * o.cols)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / o.cols, idx % o.cols);
                let mut acc = T::r_zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.r_is_zero() && !b.r_is_zero() {
                        acc = acc.r_add(&a.r_mul(b));
                    }
                }
                acc
            })
            .collect();
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::r_zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.r_is_zero() && !x.r_is_zero() {
                        acc = acc.r_add(&a.r_mul(x));
                    }
                }
                acc
            })
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------- scalars

impl Matrix<CycloNumber> {
    /// Reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Right-kernel basis: one vector per free column, with a 1 at that column.
    pub fn nullspace(&self) -> Vec<Vec<CycloNumber>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![CycloNumber::zero(); self.cols];
            v[f] = CycloNumber::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, f);
            }
            out.push(v);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

// ----------------------------------------------------- rational functions

impl Matrix<RatFunc> {
    /// Each row scaled by the lcm of its denominators, then divided by its content.
    pub fn clear_denominators(&self) -> Matrix<MultiPoly> {
        let rows: Vec<Vec<MultiPoly>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let row = self.row(i);
                let mut l = MultiPoly::one();
                for x in &row {
                    if !x.den().is_one() {
                        l = lcm(&l, x.den());
                    }
                }
                let polys: Vec<MultiPoly> = row
                    .iter()
                    .map(|x| {
                        if x.is_zero() {
                            MultiPoly::zero()
                        } else {
                            &x.num().clone() * &l.div_exact(x.den()).expect("lcm")
                        }
                    })
                    .collect();
                normalize_vector(polys)
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() }
    }

    /// Right-kernel basis over the fraction field, each vector with coprime
    /// polynomial entries.
    pub fn nullspace(&self) -> Vec<Vec<RatFunc>> {
        self.nullspace_poly()
            .into_iter()
            .map(|v| v.into_iter().map(RatFunc::from_poly).collect())
            .collect()
    }

    pub fn nullspace_poly(&self) -> Vec<Vec<MultiPoly>> {
        self.clear_denominators().nullspace()
    }

    pub fn rank(&self) -> usize {
        self.clear_denominators().rank()
    }

    /// Determinant of a square matrix by elimination over the fraction field.
    pub fn determinant(&self) -> Result<RatFunc> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = RatFunc::one();
        for c in 0..n {
            let Some(p) = (c..n)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| m.get(i, c).size())
            else {
                return Ok(RatFunc::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl Matrix<MultiPoly> {
    /// Fraction-free (Bareiss) elimination with full pivoting on the smallest
    /// entry. Returns the echelon form, its rank and the column permutation.
    fn bareiss(&self) -> (Matrix<MultiPoly>, usize, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut perm: Vec<usize> = (0..cols).collect();
        let mut prev = MultiPoly::one();
        let mut k = 0;
        while k < rows.min(cols) {
            let mut best: Option<(u64, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        let s = x.size();
                        if best.is_none_or(|b| s < b.0) {
                            best = Some((s, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != k {
                for j in 0..cols {
                    m.data.swap(pi * cols + j, k * cols + j);
                }
            }
            if pj != k {
                for i in 0..rows {
                    m.data.swap(i * cols + pj, i * cols + k);
                }
                perm.swap(pj, k);
            }
            let piv = m.get(k, k).clone();
            let pivot_row = m.row(k);
            let updated: Vec<(usize, Vec<MultiPoly>)> = (k + 1..rows)
                .into_par_iter()
                .map(|i| {
                    let lead = m.get(i, k).clone();
                    let row: Vec<MultiPoly> = (k + 1..cols)
                        .map(|j| {
                            let mut v = &piv * m.get(i, j);
                            if !lead.is_zero() && !pivot_row[j].is_zero() {
                                v = &v - &(&lead * &pivot_row[j]);
                            }
                            v.div_exact(&prev).expect("Bareiss division is exact")
                        })
                        .collect();
                    (i, row)
                })
                .collect();
            for (i, row) in updated {
                m.set(i, k, MultiPoly::zero());
                for (off, v) in row.into_iter().enumerate() {
                    m.set(i, k + 1 + off, v);
                }
            }
            prev = piv;
            k += 1;
        }
        (m, k, perm)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1
    }

    /// Right-kernel basis with polynomial, content-free entries.
    pub fn nullspace(&self) -> Vec<Vec<MultiPoly>> {
        let (u, r, perm) = self.bareiss();
        let cols = self.cols;
        let mut out = Vec::new();
        for f in r..cols {
            // x_f = D (last pivot), free others zero; Cramer numerators are polynomial
            let d = if r == 0 { MultiPoly::one() } else { u.get(r - 1, r - 1).clone() };
            let mut x = vec![MultiPoly::zero(); cols];
            x[f] = d.clone();
            for i in (0..r).rev() {
                let mut acc = -(u.get(i, f) * &d);
                for j in i + 1..r {
                    if !x[j].is_zero() && !u.get(i, j).is_zero() {
                        acc = &acc - &(u.get(i, j) * &x[j]);
                    }
                }
                x[i] = acc.div_exact(u.get(i, i)).expect("fraction-free back substitution");
            }
            let mut v = vec![MultiPoly::zero(); cols];
            for (pos, val) in x.into_iter().enumerate() {
                v[perm[pos]] = val;
            }
            out.push(normalize_vector(v));
        }
        out
    }
}

/// Divides a vector by the gcd of its entries; the first nonzero entry gets a
/// positive leading coefficient.
pub fn normalize_vector(v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let g = gcd_many(v.iter().filter(|p| !p.is_zero()));
    if g.is_zero() {
        return v;
    }
    let first = v.iter().find(|p| !p.is_zero()).unwrap();
    let q = first.div_exact(&g).unwrap();
    let (c, _) = q.primitive_normalize().unwrap();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    let scaled: Vec<MultiPoly> = v
        .iter()
        .map(|p| if p.is_zero() { p.clone() } else { p.div_exact(&g).unwrap() })
        .collect();
    // bring the first entry's leading coefficient to a positive rational, then clear scalars
    let unit = if c.is_rational() { CycloNumber::one() } else { c.clone() };
    let scaled: Vec<MultiPoly> = scaled
        .into_iter()
        .map(|p| p.scale(&unit.inv().unwrap()))
        .collect();
    for p in &scaled {
        for (_, c) in p.terms() {
            c.accumulate_content(&mut den, &mut num);
        }
    }
    let mut factor = num_rational::BigRational::new(den, num);
    if scaled.iter().find(|p| !p.is_zero()).unwrap().leading_coeff().lead_sign() < 0 {
        factor = -factor;
    }
    let f = CycloNumber::from_rational(factor);
    scaled.into_iter().map(|p| p.scale(&f)).collect()
}
