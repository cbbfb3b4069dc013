use rand::Rng;

use crate::error::{domain, Error, Result};

/// Dense row-major bit matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix with at most 64 columns from row bitmasks (bit `j` = column `j`).
    pub fn from_row_masks(cols: usize, rows: &[u64]) -> Self {
        assert!(cols <= 64);
        let mut m = F2Matrix::zeros(rows.len(), cols);
        for (i, &r) in rows.iter().enumerate() {
            m.data[i * m.stride] = if cols == 64 {
                r
            } else {
                r & ((1u64 << cols) - 1)
            };
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a bitmask; requires at most 64 columns.
    pub fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.cols <= 64);
        self.data[i * self.stride]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    fn xor_row(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        for k in 0..s {
            let v = self.data[src * s + k];
            self.data[dst * s + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    /// `B x` for a column vector packed into a bitmask.
    pub fn apply(&self, x: u64) -> u64 {
        debug_assert!(self.cols <= 64 && self.rows <= 64);
        (0..self.rows).fold(0u64, |acc, i| {
            acc | (((self.data[i * self.stride] & x).count_ones() as u64 & 1) << i)
        })
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..out.stride {
                        out.data[i * out.stride + w] ^= other.data[k * other.stride + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form over the given column order.
    /// Returns the pivot column of each leading row.
    pub fn row_reduce_with_order(
        &mut self,
        columns: impl IntoIterator<Item = usize>,
    ) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in columns {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn row_reduce(&mut self) -> Vec<usize> {
        self.row_reduce_with_order(0..self.cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    pub fn inverse(&self) -> Result<F2Matrix> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = F2Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, true);
        }
        if aug.row_reduce_with_order(0..n).len() < n {
            return Err(Error::Singular);
        }
        let mut inv = F2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Uniform element of `GL(n, 2)` by rejection sampling, together with its inverse.
pub fn sample_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (F2Matrix, F2Matrix) {
    assert!((1..=64).contains(&n), "matrix size {n} unsupported");
    loop {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            let r: u64 = rng.random();
            m.data[i * m.stride] = if n == 64 { r } else { r & ((1u64 << n) - 1) };
        }
        if let Ok(inv) = m.inverse() {
            return (m, inv);
        }
    }
}
