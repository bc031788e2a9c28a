//! Dense exact linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref<T: Scalar>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..rows[i].len() {
                    let t = rows[r][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Unique solution of the square system `m x = rhs`, or `None` if singular.
pub(crate) fn solve<T: Scalar>(m: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of `{x : m x = 0}` for an `_ × ncols` matrix.
pub(crate) fn null_space<T: Scalar>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / pivot.clone();
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *x = x.clone() - y.clone() * f.clone();
            }
        }
    }
    det
}

pub(crate) fn sub<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

/// Dimension of the affine hull, `None` for the empty set.
pub(crate) fn affine_dim<T: Scalar>(points: &[Vec<T>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

pub(crate) fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n as i64).fold(T::one(), |acc, i| acc * T::from_int(i))
}
