use crate::error::{NilError, Result};

/// Square band matrix with `kl` sub- and `ku` super-diagonals, stored by rows
/// with room for the fill-in produced by partial pivoting.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![0.0; n * width] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn clear(&mut self) {
        self.data.iter_mut().for_each(|v| *v = 0.0);
    }

    #[inline]
    fn offset(&self, i: usize, col: usize) -> usize {
        i * self.width + col + self.kl - i
    }

    /// Adds `v` to entry `(i, col)`; the entry must lie inside the band.
    #[inline]
    pub fn add(&mut self, i: usize, col: usize, v: f64) {
        debug_assert!(col + self.kl >= i && col <= i + self.ku, "entry ({i}, {col}) outside band");
        let k = self.offset(i, col);
        self.data[k] += v;
    }

    pub fn get(&self, i: usize, col: usize) -> f64 {
        if col + self.kl < i || col > i + self.kl + self.ku {
            0.0
        } else {
            self.data[self.offset(i, col)]
        }
    }

    /// `y = A x` for the unfactored matrix.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|c| self.data[self.offset(i, c)] * x[c]).sum()
            })
            .collect()
    }

    /// In-place LU factorization with partial pivoting.
    pub fn factor(mut self) -> Result<BandedLu> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut ipiv = vec![0usize; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + kl + ku).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.offset(k, k)].abs();
            for i in k + 1..=last_row {
                let v = self.data[self.offset(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(NilError::SingularMatrix(k));
            }
            ipiv[k] = p;
            if p != k {
                for c in k..=last_col {
                    let a = self.offset(k, c);
                    let b = self.offset(p, c);
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.offset(k, k)];
            let row_k = self.offset(k, k);
            for i in k + 1..=last_row {
                let at = self.offset(i, k);
                let l = self.data[at] / pivot;
                self.data[at] = l;
                if l == 0.0 {
                    continue;
                }
                let len = last_col - k;
                let (head, tail) = self.data.split_at_mut(at);
                let src = &head[row_k + 1..row_k + 1 + len];
                let dst = &mut tail[1..1 + len];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= l * s;
                }
            }
        }
        Ok(BandedLu { m: self, ipiv })
    }
}

/// Factors produced by [`BandedMatrix::factor`].
#[derive(Debug, Clone)]
pub struct BandedLu {
    m: BandedMatrix,
    ipiv: Vec<usize>,
}

impl BandedLu {
    /// Solves `A x = b` in place.
    pub fn solve(&self, b: &mut [f64]) {
        let a = &self.m;
        let n = a.n;
        for k in 0..n {
            let p = self.ipiv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for i in k + 1..=(k + a.kl).min(n - 1) {
                    b[i] -= a.data[a.offset(i, k)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + a.kl + a.ku).min(n - 1);
            let row = a.offset(k, k);
            let mut acc = b[k];
            for (c, v) in (k + 1..=last_col).zip(&a.data[row + 1..]) {
                acc -= v * b[c];
            }
            b[k] = acc / a.data[row];
        }
    }
}
