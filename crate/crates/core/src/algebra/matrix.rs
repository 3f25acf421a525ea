//! Dense exact linear algebra over the rationals.
//!
//! Row reduction uses a fixed pivot rule (first nonzero column, smallest row
//! index) so that ranks, kernels, and everything built on them are
//! reproducible byte for byte.

use num::Zero;

use crate::algebra::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        QMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // smallest row index with a nonzero entry in this column
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.data.swap_chunks(row, p, self.cols);
            let inv = {
                let lead = self.at(row, col).clone();
                lead
            };
            for c in col..self.cols {
                let v = self.at(row, c) / &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c) - &factor * self.at(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<Rat> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for k in 0..width {
            self.swap(a * width + k, b * width + k);
        }
    }
}

/// Rank and a kernel basis. Kernel vectors come from the free columns of the
/// reduced form, in column order, and satisfy `m * v = 0` exactly.
pub fn rref_rank_kernel(m: &QMatrix) -> (usize, Vec<Vec<Rat>>) {
    let mut red = m.clone();
    let pivots = red.rref();
    let rank = pivots.len();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::from_integer(1.into());
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -red.at(r, free).clone();
        }
        kernel.push(v);
    }
    (rank, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn m(rows: Vec<Vec<i64>>) -> QMatrix {
        QMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_full_rank_empty_kernel() {
        let (rank, kernel) = rref_rank_kernel(&m(vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let (rank, kernel) = rref_rank_kernel(&m(vec![vec![1, 2], vec![2, 4]]));
        assert_eq!(rank, 1);
        assert_eq!(kernel, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn hand_reduced_2x3() {
        let (rank, kernel) = rref_rank_kernel(&m(vec![vec![1, 1, 0], vec![0, 1, 1]]));
        assert_eq!(rank, 2);
        assert_eq!(kernel, vec![vec![rat(1), rat(-1), rat(1)]]);
    }

    #[test]
    fn empty_matrix() {
        let (rank, kernel) = rref_rank_kernel(&QMatrix::zero(0, 0));
        assert_eq!(rank, 0);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 7], vec![0, 0, 1]]);
        assert_eq!(a.rank(), a.transpose().rank());
    }
}
