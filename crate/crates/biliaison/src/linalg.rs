//! Dense linear algebra over `F_p`.

use crate::scalars::{inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..i * cols + r.len()].copy_from_slice(r);
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(cols: &[Vec<u32>], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let (n, m) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(piv) = (r..n).find(|&i| self.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..m {
                    self.data.swap(piv * m + j, r * m + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in c..m {
                let x = self.get(r, j);
                if x != 0 {
                    self.set(r, j, mul_mod(x, inv, p));
                }
            }
            let prow: Vec<(usize, u32)> = (c..m).filter_map(|j| {
                let x = self.get(r, j);
                (x != 0).then_some((j, x))
            }).collect();
            for i in 0..n {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for &(j, x) in &prow {
                    let v = sub_mod(self.get(i, j), mul_mod(f, x, p), p);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref(p).len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self, p: u32) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.rref(p);
        let mut is_piv = vec![false; self.cols];
        for &c in &pivots {
            is_piv[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_piv[c]) {
            let mut x = vec![0u32; self.cols];
            x[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = neg_mod(a.get(r, f), p);
            }
            out.push(x);
        }
        out
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[u32], p: u32) -> Option<Vec<u32>> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(p);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[u32], p: u32) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s = (s + self.get(i, j) as u64 * x[j] as u64) % p as u64;
                }
                s as u32
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 32003;

    #[test]
    fn rank_and_kernel() {
        let m = Mat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3);
        assert_eq!(m.rank(P), 2);
        let ns = m.nullspace(P);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0], P).iter().all(|&x| x == 0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_rows(&[vec![1, 1], vec![1, P - 1]], 2);
        let x = m.solve(&[2, 0], P).unwrap();
        assert_eq!(x, vec![1, 1]);
        let s = Mat::from_rows(&[vec![1, 1], vec![2, 2]], 2);
        assert!(s.solve(&[1, 3], P).is_none());
    }
}
