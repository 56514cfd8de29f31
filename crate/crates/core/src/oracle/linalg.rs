//! Row-echelon rank over an exact field. The oracle only ever needs ranks
//! and kernel dimensions of modest dense matrices, so a plain Gaussian
//! elimination is the whole story; exact arithmetic means no pivoting
//! subtleties beyond skipping zeros.

use super::field::Field;

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, zero: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero; rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }
}

/// Rank by forward elimination.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..a.cols {
        // Find a pivot at or below `row`.
        let pivot = (row..a.rows).find(|&r| !field.is_zero(a.at(r, col)));
        let Some(p) = pivot else { continue };
        if p != row {
            for c in 0..a.cols {
                let x = a.at(p, c).clone();
                let y = a.at(row, c).clone();
                a.set(p, c, y);
                a.set(row, c, x);
            }
        }
        let inv = field.inv(a.at(row, col)).expect("pivot is nonzero");
        for r in (row + 1)..a.rows {
            if field.is_zero(a.at(r, col)) {
                continue;
            }
            let factor = field.mul(a.at(r, col), &inv);
            for c in col..a.cols {
                let v = field.sub(a.at(r, c), &field.mul(&factor, a.at(row, c)));
                a.set(r, c, v);
            }
        }
        rank += 1;
        row += 1;
        if row == a.rows {
            break;
        }
    }
    rank
}

/// Dimension of the right kernel.
pub fn kernel_dim<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    m.cols - rank(field, m)
}

/// Square-matrix invertibility test.
pub fn is_invertible<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.rows == m.cols && rank(field, m) == m.rows
}

/// Inverse by Gauss-Jordan on the augmented matrix; `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = Matrix::filled(n, n, field.zero());
    for i in 0..n {
        inv.set(i, i, field.one());
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !field.is_zero(a.at(r, col)))?;
        if pivot != col {
            for c in 0..n {
                let (x, y) = (a.at(pivot, c).clone(), a.at(col, c).clone());
                a.set(pivot, c, y);
                a.set(col, c, x);
                let (x, y) = (inv.at(pivot, c).clone(), inv.at(col, c).clone());
                inv.set(pivot, c, y);
                inv.set(col, c, x);
            }
        }
        let piv_inv = field.inv(a.at(col, col)).expect("pivot is nonzero");
        for c in 0..n {
            a.set(col, c, field.mul(a.at(col, c), &piv_inv));
            inv.set(col, c, field.mul(inv.at(col, c), &piv_inv));
        }
        for r in 0..n {
            if r == col || field.is_zero(a.at(r, col)) {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in 0..n {
                let v = field.sub(a.at(r, c), &field.mul(&factor, a.at(col, c)));
                a.set(r, c, v);
                let v = field.sub(inv.at(r, c), &field.mul(&factor, inv.at(col, c)));
                inv.set(r, c, v);
            }
        }
    }
    Some(inv)
}
