//! Exact dense linear algebra over Z/pZ: row reduction, rank, kernel bases.
//!
//! Pivot selection is the fixed leftmost rule, so reductions are deterministic
//! and results are reproducible across runs and thread counts.

use crate::field::Fp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct RrefResult {
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let mut m = Matrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..i * cols + r.len()].copy_from_slice(r);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form. Returns rank and pivot columns.
    pub fn rref(&mut self, fp: &Fp) -> RrefResult {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // leftmost pivot: first row at or below r with nonzero entry in c
            let mut pr = None;
            for i in r..self.rows {
                if self[(i, c)] != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.data.swap_ranges(r, pr, self.cols);
            let inv = fp.inv(self[(r, c)]).expect("pivot nonzero");
            if inv != 1 {
                for x in self.row_mut(r) {
                    *x = fp.mul(*x, inv);
                }
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let f = self[(i, c)];
                    let (head, tail) = if i < r {
                        let (a, b) = self.data.split_at_mut(r * self.cols);
                        (&mut a[i * self.cols..(i + 1) * self.cols], &b[..self.cols])
                    } else {
                        let (a, b) = self.data.split_at_mut(i * self.cols);
                        (&mut b[..self.cols], &a[r * self.cols..(r + 1) * self.cols])
                    };
                    for (x, y) in head.iter_mut().zip(tail.iter()) {
                        *x = fp.sub(*x, fp.mul(f, *y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult { rank: r, pivots }
    }

    /// Rank, pivot columns, and a basis of the right kernel.
    pub fn rref_with_kernel(&mut self, fp: &Fp) -> (RrefResult, Vec<Vec<u64>>) {
        let res = self.rref(fp);
        let mut kernel = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = res.pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (ri, &pc) in res.pivots.iter().enumerate() {
                // row ri: x_pc + sum coeff*x_free = 0
                let coeff = self[(ri, free)];
                if coeff != 0 {
                    v[pc] = fp.neg(coeff);
                }
            }
            kernel.push(v);
        }
        (res, kernel)
    }

    pub fn mat_vec(&self, fp: &Fp, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v.iter()) {
                    acc = fp.mul_add(acc, *a, *b);
                }
                acc
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

trait SwapRanges {
    fn swap_ranges(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRanges for Vec<u64> {
    fn swap_ranges(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for k in 0..len {
            self.swap(a * len + k, b * len + k);
        }
    }
}

/// Row-reduce a set of coefficient rows and return a canonical reduced basis
/// of their span (nonzero rref rows). Used by graded pieces and linear systems.
pub fn reduced_span(fp: &Fp, rows: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let mut m = Matrix::from_rows(rows, cols);
    let res = m.rref(fp);
    (0..res.rank).map(|i| m.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_full_rank() {
        let fp = Fp::default();
        let mut m = Matrix::identity(3);
        let (res, ker) = m.rref_with_kernel(&fp);
        assert_eq!(res.rank, 3);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let fp = Fp::default();
        let mut m = Matrix::zero(2, 4);
        let (res, ker) = m.rref_with_kernel(&fp);
        assert_eq!(res.rank, 0);
        assert_eq!(ker.len(), 4);
    }

    #[test]
    fn rank_one_kernel_two() {
        let fp = Fp::default();
        let mut m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6]], 3);
        let (res, ker) = m.rref_with_kernel(&fp);
        assert_eq!(res.rank, 1);
        assert_eq!(ker.len(), 2);
        // hand row-reduction: kernel spanned by (-2,1,0), (-3,0,1)
        assert_eq!(ker[0], vec![fp.neg(2), 1, 0]);
        assert_eq!(ker[1], vec![fp.neg(3), 0, 1]);
    }

    #[test]
    fn rref_idempotent_and_kernel_annihilated() {
        let fp = Fp::default();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        for _ in 0..50 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let data: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..fp.modulus())).collect())
                .collect();
            let mut m = Matrix::from_rows(data, cols);
            let orig = m.clone();
            let (res, ker) = m.rref_with_kernel(&fp);
            assert_eq!(res.rank + ker.len(), cols);
            let mut m2 = m.clone();
            let res2 = m2.rref(&fp);
            assert_eq!(m, m2, "rref is idempotent");
            assert_eq!(res.rank, res2.rank);
            for v in &ker {
                assert!(orig.mat_vec(&fp, v).iter().all(|&x| x == 0));
            }
        }
    }
}
