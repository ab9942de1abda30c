//! Dense matrices and Gauss-Jordan elimination over a [`Scalar`] field.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<C>>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![C::zero(); cols]; rows],
        }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(data: Vec<Vec<C>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C) {
        self.data[i][j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|c| c.is_negligible())
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.data.clone(), self.cols).1.len()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column, each with a 1
    /// in its free position.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let (reduced, pivots) = rref(self.data.clone(), self.cols);
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![C::zero(); self.cols];
            v[f] = C::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
    }

    /// Solves `A v = rhs`. Free variables are set to zero, which makes the
    /// answer the canonical representative of the solution set.
    pub fn solve(&self, rhs: &[C]) -> Option<Vec<C>> {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        let augmented = self
            .data
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let (reduced, pivots) = rref(augmented, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![C::zero(); self.cols];
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = row[self.cols].clone();
        }
        Some(v)
    }
}

/// Reduced row-echelon form. Zero rows are dropped; the returned pivot
/// columns are strictly increasing and each pivot entry is 1.
pub fn rref<C: Scalar>(mut rows: Vec<Vec<C>>, cols: usize) -> (Vec<Vec<C>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_negligible()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = C::one() / rows[r][c].clone();
        for entry in rows[r].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        rows[r][c] = C::one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_negligible() {
                continue;
            }
            let factor = row[c].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_negligible() {
                    *entry = entry.clone() - factor.clone() * p.clone();
                }
            }
            row[c] = C::zero();
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    for row in rows.iter_mut() {
        for entry in row.iter_mut() {
            if entry.is_negligible() {
                *entry = C::zero();
            }
        }
    }
    (rows, pivots)
}

/// Remainder of `v` after eliminating against an RREF basis.
pub fn reduce_against<C: Scalar>(basis: &[Vec<C>], pivots: &[usize], v: &[C]) -> Vec<C> {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if out[p].is_negligible() {
            continue;
        }
        let factor = out[p].clone();
        for (entry, b) in out.iter_mut().zip(row) {
            *entry = entry.clone() - factor.clone() * b.clone();
        }
        out[p] = C::zero();
    }
    out
}
