//! Dense matrices over the rational-function field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Var;
use crate::error::{Error, Result};
use crate::{RationalFunction as RF, Subst, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RF>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RF::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = RF::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RF>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_q(rows: &[&[Q]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().cloned().map(RF::constant).collect()).collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| RF::from_int(v)).collect()).collect())
    }

    /// Unit matrix `E_{ij}` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n, n);
        m.data[i * n + j] = RF::one();
        m
    }

    pub fn column(v: Vec<RF>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RF {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RF) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RF] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<RF> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RF::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn map(&self, f: impl Fn(&RF) -> RF) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RF) -> Result<RF>) -> Result<Self> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn scale(&self, c: &RF) -> Self {
        self.map(|x| x * c)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn derive(&self, v: Var) -> Self {
        self.map(|x| x.derive(v))
    }

    pub fn substitute(&self, s: &Subst) -> Result<Self> {
        self.try_map(|x| x.substitute(s))
    }

    pub fn apply(&self, v: &[RF]) -> Vec<RF> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = RF::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Inverse by Gauss-Jordan elimination over the rational-function field.
    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let id = Self::identity(n);
        let cols: Vec<Vec<RF>> = (0..n).map(|j| (0..n).map(|i| id.get(i, j).clone()).collect()).collect();
        let sols = solve_many(self, &cols).ok_or(Error::DivisionByZero)?;
        let mut out = Self::zero(n, n);
        for (j, s) in sols.into_iter().enumerate() {
            for (i, x) in s.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }
}

/// Solves `a · x = b` exactly for each right-hand side. Returns `None` when
/// the system is inconsistent or the solution is not unique.
pub fn solve_many(a: &Matrix, rhs: &[Vec<RF>]) -> Option<Vec<Vec<RF>>> {
    let (m, n) = (a.rows, a.cols);
    let k = rhs.len();
    let mut rows: Vec<Vec<RF>> = (0..m)
        .map(|i| {
            let mut r: Vec<RF> = (0..n).map(|j| a.get(i, j).clone()).collect();
            r.extend(rhs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        // prefer constant pivots to keep fractions small
        let candidates = (pivot_row..m).filter(|&r| !rows[r][col].is_zero());
        let Some(p) = candidates.min_by_key(|&r| if rows[r][col].constant_value().is_some() { 0 } else { 1 }) else {
            return None;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        let prow: Vec<RF> = rows[pivot_row].iter().map(|x| x * &inv).collect();
        rows[pivot_row] = prow.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, x) in row.iter_mut().enumerate().skip(col) {
                if !prow[c].is_zero() {
                    *x = &*x - &(&f * &prow[c]);
                }
            }
        }
        pivot_row += 1;
    }
    if rows[n..].iter().any(|r| r[n..].iter().any(|x| !x.is_zero())) {
        return None;
    }
    Some((0..k).map(|j| (0..n).map(|i| rows[i][n + j].clone()).collect()).collect())
}

/// `exp(m)` for a nilpotent matrix, as a finite sum.
pub fn nilpotent_exp(m: &Matrix) -> Result<Matrix> {
    let n = m.rows;
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = (&term * m).scale(&RF::constant(Q::new(1.into(), (k as i64).into())));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    if (&term * m).is_zero() {
        Ok(acc)
    } else {
        Err(Error::Invalid("matrix is not nilpotent".into()))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_symbolic_matrix() {
        let a = RF::var(Var(0));
        let b = RF::var(Var(1));
        let m = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![RF::zero(), RF::one()]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::zero(2, 2).inverse().is_err());
    }

    #[test]
    fn overdetermined_consistency() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]);
        let ok = solve_many(&a, &[vec![RF::from_int(1), RF::from_int(2), RF::from_int(3)]]).unwrap();
        assert_eq!(ok[0], vec![RF::from_int(1), RF::from_int(2)]);
        assert!(solve_many(&a, &[vec![RF::from_int(1), RF::from_int(2), RF::from_int(4)]]).is_none());
    }

    #[test]
    fn exp_of_strictly_upper_triangular() {
        let e = nilpotent_exp(&Matrix::unit(3, 0, 1)).unwrap();
        assert_eq!(e, &Matrix::identity(3) + &Matrix::unit(3, 0, 1));
        assert!(nilpotent_exp(&Matrix::identity(2)).is_err());
    }
}
