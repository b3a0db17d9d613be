//! Dense matrices over any [`Ring`], with fraction-free determinant, adjugate
//! and Pfaffian kernels.
//!
//! Determinants of size ≤ 6 use Laplace expansion over row-prefix column
//! subsets (192 products at size 6, no division); larger ones use Bareiss
//! elimination, which needs exact division in the entry ring.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::budget::{Budget, BudgetExceeded};
use super::error::AlgebraError;
use super::ring::Ring;

const LAPLACE_MAX: usize = 6;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Dimension(format!("{} entries for a {rows}×{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(rows: usize, cols: usize, sample: &T) -> Self {
        Matrix { rows, cols, data: vec![sample.zero_like(); rows * cols] }
    }

    pub fn identity(n: usize, sample: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { sample.one_like() } else { sample.zero_like() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { d[i].zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[T] {
        &self.data
    }
    pub fn into_entries(self) -> Vec<T> {
        self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Zero diagonal and `Xᵀ = −X`; the diagonal condition matters in characteristic 2.
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self[(i, i)].is_zero() && (0..i).all(|j| (self[(i, j)].clone() + &self[(j, i)]).is_zero()))
    }

    /// Alternating matrix from its strictly upper entries `(i, j, value)`.
    pub fn alternating(n: usize, sample: &T, upper: &[(usize, usize, T)]) -> Self {
        let mut m = Matrix::zeros(n, n, sample);
        for (i, j, v) in upper {
            m[(*i, *j)] = v.clone();
            m[(*j, *i)] = -v.clone();
        }
        m
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Delete row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rs, &cs)
    }

    /// Delete row and column `j` (principal minor).
    pub fn principal_minor(&self, j: usize) -> Self {
        self.minor(j, j)
    }

    pub fn delete_row(&self, i: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cs: Vec<usize> = (0..self.cols).collect();
        self.select(&rs, &cs)
    }

    fn same_shape(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::Dimension(format!("{}×{} vs {}×{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.mul_budgeted(o, &Budget::unlimited())
    }

    pub fn mul_budgeted(&self, o: &Self, budget: &Budget) -> Result<Self, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let sample = self.data.first().or(o.data.first());
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = match sample {
                    Some(s) => s.zero_like(),
                    None => return Ok(Matrix { rows: self.rows, cols: o.cols, data: Vec::new() }),
                };
                for k in 0..self.cols {
                    let (a, b) = (&self[(i, k)], &o[(k, j)]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc + &a.mul_budgeted(b, budget)?;
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: o.cols, data })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(v[0].zero_like(), |acc, (a, b)| acc + &(a.clone() * b)))
            .collect())
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> Result<T, AlgebraError> {
        let my = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(AlgebraError::Dimension("left vector length".into()));
        }
        Ok(x.iter().zip(&my).fold(y[0].zero_like(), |acc, (a, b)| acc + &(a.clone() * b)))
    }

    pub fn pow(&self, e: u32) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let sample = &self.data[0];
        let mut acc = Matrix::identity(self.rows, sample);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() && self.rows > 0 {
            Ok(())
        } else {
            Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn det(&self) -> Result<T, AlgebraError> {
        self.det_budgeted(&Budget::unlimited())
    }

    pub fn det_budgeted(&self, budget: &Budget) -> Result<T, AlgebraError> {
        self.require_square()?;
        if self.rows <= LAPLACE_MAX {
            laplace_det(self, budget)
        } else {
            bareiss_det(self, budget)
        }
    }

    pub fn adjugate(&self) -> Result<Self, AlgebraError> {
        self.adjugate_budgeted(&Budget::unlimited())
    }

    /// `adj(M)[j][i] = (−1)^{i+j} det(M with row i and column j deleted)`.
    pub fn adjugate_budgeted(&self, budget: &Budget) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let sample = &self.data[0];
        if n == 1 {
            return Ok(Matrix::identity(1, sample));
        }
        let mut out = Matrix::zeros(n, n, sample);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det_budgeted(budget)?;
                out[(j, i)] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(out)
    }

    /// Inverse when the determinant is a unit of the entry ring.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let d = self.det()?;
        let inv = d.inverse().ok_or_else(|| AlgebraError::NotInvertible(format!("determinant {d} is not a unit")))?;
        Ok(self.adjugate()?.scale(&inv))
    }

    pub fn pfaffian(&self) -> Result<T, AlgebraError> {
        self.pfaffian_budgeted(&Budget::unlimited())
    }

    /// Expansion along the first row: `Pf(X) = Σ_j (−1)^{j+1} x_{0j} Pf(X without 0, j)`;
    /// for 4×4 this is `x₁₂x₃₄ − x₁₃x₂₄ + x₁₄x₂₃`.
    pub fn pfaffian_budgeted(&self, budget: &Budget) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        if !self.is_alternating() {
            return Err(AlgebraError::NotAlternating);
        }
        if self.rows % 2 == 1 {
            return Err(AlgebraError::OddSize(self.rows));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        match self.data.first() {
            None => Err(AlgebraError::Dimension("Pfaffian of the empty matrix needs a ring sample".into())),
            Some(s) => pf_rec(self, &idx, s, budget).map_err(AlgebraError::from),
        }
    }
}

fn pf_rec<T: Ring>(m: &Matrix<T>, idx: &[usize], sample: &T, budget: &Budget) -> Result<T, BudgetExceeded> {
    if idx.is_empty() {
        return Ok(sample.one_like());
    }
    if idx.len() == 2 {
        return Ok(m[(idx[0], idx[1])].clone());
    }
    let mut acc = sample.zero_like();
    for j in 1..idx.len() {
        let a = &m[(idx[0], idx[j])];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != idx[j]).collect();
        let sub = pf_rec(m, &rest, sample, budget)?;
        if sub.is_zero() {
            continue;
        }
        let t = a.mul_budgeted(&sub, budget)?;
        acc = if j % 2 == 1 { acc + &t } else { acc - &t };
    }
    Ok(acc)
}

/// Row-prefix Laplace expansion: after row k, `dp[S]` is the minor on rows
/// 0..k and columns S. Extending S by column j picks up (−1)^{#{s ∈ S : s > j}}.
fn laplace_det<T: Ring>(m: &Matrix<T>, budget: &Budget) -> Result<T, AlgebraError> {
    let n = m.rows;
    let sample = &m.data[0];
    let full = (1usize << n) - 1;
    let mut dp: Vec<Option<T>> = vec![None; 1 << n];
    dp[0] = Some(sample.one_like());
    for k in 0..n {
        let mut next: Vec<Option<T>> = vec![None; 1 << n];
        for s in 0..(1usize << n) {
            if s.count_ones() as usize != k {
                continue;
            }
            let Some(minor) = dp[s].take() else { continue };
            if minor.is_zero() {
                continue;
            }
            for j in 0..n {
                if s & (1 << j) != 0 {
                    continue;
                }
                let a = &m[(k, j)];
                if a.is_zero() {
                    continue;
                }
                let t = a.mul_budgeted(&minor, budget)?;
                let above = (s >> (j + 1)).count_ones();
                let slot = &mut next[s | (1 << j)];
                *slot = Some(match slot.take() {
                    None if above % 2 == 0 => t,
                    None => -t,
                    Some(v) if above % 2 == 0 => v + &t,
                    Some(v) => v - &t,
                });
            }
        }
        dp = next;
    }
    Ok(dp[full].take().unwrap_or_else(|| sample.zero_like()))
}

/// Fraction-free elimination; each division is exact.
fn bareiss_det<T: Ring>(m: &Matrix<T>, budget: &Budget) -> Result<T, AlgebraError> {
    let n = m.rows;
    let mut a = m.row_vecs();
    let sample = m.data[0].clone();
    let mut prev = sample.one_like();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(sample.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].mul_budgeted(&a[k][k], budget)?;
                let y = a[i][k].mul_budgeted(&a[k][j], budget)?;
                a[i][j] = (x - &y)
                    .div_exact(&prev)
                    .ok_or_else(|| AlgebraError::NotInvertible("inexact division in Bareiss elimination".into()))?;
            }
            a[i][k] = sample.zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
