//! Smith normal form over the integers.
//!
//! The reduction pivots on an entry of least absolute value in the active
//! block, clears its row and column by Euclidean division, and restarts
//! whenever a remainder survives. Once the row and column are clear, an entry
//! of the block that the pivot does not divide is folded into the pivot row so
//! that the divisibility chain holds on exit.

use super::matrix::Matrix;
use super::scalar::IntScalar;

/// `left * m * right == diagonal`, with `left`/`right` unimodular.
///
/// The inverses of both witnesses are kept alongside them; cokernel and
/// kernel computations need to move vectors in both directions.
#[derive(Clone, Debug)]
pub struct SmithNormalForm<T: std::fmt::Display> {
    pub left: Matrix<T>,
    pub left_inverse: Matrix<T>,
    pub right: Matrix<T>,
    pub right_inverse: Matrix<T>,
    /// Diagonal entries `d_0 | d_1 | ...`, nonnegative, of length
    /// `min(rows, cols)`. Nonzero entries come first.
    pub diagonal: Vec<T>,
    pub rows: usize,
    pub cols: usize,
}

impl<T: IntScalar> SmithNormalForm<T> {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The full diagonal matrix `left * m * right`.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    left: Matrix<T>,
    left_inv: Matrix<T>,
    right: Matrix<T>,
    right_inv: Matrix<T>,
}

impl<T: IntScalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.left.swap_rows(i, j);
            self.left_inv.swap_columns(i, j);
        }
    }

    fn swap_columns(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_columns(i, j);
            self.right.swap_columns(i, j);
            self.right_inv.swap_rows(i, j);
        }
    }

    /// row[t] += k row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &T) {
        self.a.add_row_multiple(t, s, k);
        self.left.add_row_multiple(t, s, k);
        self.left_inv.add_column_multiple(s, t, &(-k.clone()));
    }

    /// col[t] += k col[s]
    fn add_column(&mut self, t: usize, s: usize, k: &T) {
        self.a.add_column_multiple(t, s, k);
        self.right.add_column_multiple(t, s, k);
        self.right_inv.add_row_multiple(s, t, &(-k.clone()));
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.left.negate_row(r);
        self.left_inv.negate_column(r);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = &self.a[(r, c)];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => v.magnitude_cmp(&self.a[b]) == std::cmp::Ordering::Less,
                };
                if better {
                    best = Some((r, c));
                    if v.is_one() || (-v.clone()).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clear row and column `t`. Returns false if a smaller remainder appeared
    /// and the pivot has to be chosen again.
    fn clear_cross(&mut self, t: usize) -> bool {
        let (rows, cols) = self.a.shape();
        let mut clean = true;
        for r in t + 1..rows {
            if self.a[(r, t)].is_zero() {
                continue;
            }
            let q = self.a[(r, t)].div_floor(&self.a[(t, t)]);
            self.add_row(r, t, &(-q));
            if !self.a[(r, t)].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            if self.a[(t, c)].is_zero() {
                continue;
            }
            let q = self.a[(t, c)].div_floor(&self.a[(t, t)]);
            self.add_column(c, t, &(-q));
            if !self.a[(t, c)].is_zero() {
                clean = false;
            }
        }
        clean
    }
}

/// Smith normal form of an arbitrary integer matrix. Total: every matrix,
/// including empty and zero ones, has one.
pub fn smith_normal_form<T: IntScalar>(m: &Matrix<T>) -> SmithNormalForm<T> {
    let (rows, cols) = m.shape();
    let mut red = Reducer {
        a: m.clone(),
        left: Matrix::identity(rows),
        left_inv: Matrix::identity(rows),
        right: Matrix::identity(cols),
        right_inv: Matrix::identity(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        while let Some((r, c)) = red.min_entry(t) {
            red.swap_rows(t, r);
            red.swap_columns(t, c);
            if !red.clear_cross(t) {
                continue;
            }
            let pivot = red.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !red.a[(r, c)].is_multiple_of(&pivot))
            });
            match offender {
                Some(r) => red.add_row(t, r, &T::one()),
                None => break,
            }
        }
        if red.a[(t, t)].is_negative() {
            red.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| red.a[(i, i)].clone()).collect();
    SmithNormalForm {
        left: red.left,
        left_inverse: red.left_inv,
        right: red.right,
        right_inverse: red.right_inv,
        diagonal,
        rows,
        cols,
    }
}
