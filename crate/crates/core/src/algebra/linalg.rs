//! Row reduction, rank, kernels and span tests.
//!
//! Pivots must be units, so these are exact over fields; over other rings a
//! column whose non-zero entries are all non-units is skipped, which makes
//! `rank` a lower bound there.

use super::matrix::Matrix;
use super::ring::Ring;

/// Reduced row echelon form and pivot columns.
pub fn rref<T: Ring>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some((p, inv)) = (r..rows).find_map(|i| a[i][c].inverse().map(|inv| (i, inv))) else {
            continue;
        };
        a.swap(r, p);
        for x in a[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - &(f.clone() * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = if rows == 0 { m.clone() } else { Matrix::from_rows(a).expect("rectangular") };
    (out, pivots)
}

pub fn rank<T: Ring>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel<T: Ring>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let Some(sample) = m.entries().first() else { return Vec::new() };
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![sample.zero_like(); cols];
            v[f] = sample.one_like();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`.
pub fn solve<T: Ring>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let sample = b.first()?.clone();
    let aug =
        Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| if j < m.cols() { m[(i, j)].clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![sample.zero_like(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, m.cols())].clone();
    }
    Some(x)
}

/// Stack row vectors into a matrix (`width` is used when `rows` is empty).
pub fn stack<T: Ring>(rows: &[Vec<T>], width: usize, sample: &T) -> Matrix<T> {
    if rows.is_empty() {
        return Matrix::zeros(0, width, sample);
    }
    Matrix::from_rows(rows.to_vec()).expect("equal row lengths")
}

pub fn row_rank<T: Ring>(rows: &[Vec<T>], sample: &T) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&stack(rows, rows[0].len(), sample))
}

/// Whether `v` lies in the span of `rows`.
pub fn in_span<T: Ring>(rows: &[Vec<T>], v: &[T]) -> bool {
    let sample = &v[0];
    let base = row_rank(rows, sample);
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    row_rank(&with, sample) == base
}

/// Whether two families of row vectors span the same space.
pub fn same_span<T: Ring>(a: &[Vec<T>], b: &[Vec<T>], sample: &T) -> bool {
    let ra = row_rank(a, sample);
    if ra != row_rank(b, sample) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    row_rank(&all, sample) == ra
}
