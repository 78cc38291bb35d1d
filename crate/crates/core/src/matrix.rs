//! Square matrices over a small finite field, stored row-major. These are
//! only used as group elements, so the API is limited to multiplication,
//! inversion and a canonical byte encoding for deduplication.

use crate::error::{Error, Result};
use crate::field::GaloisField;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    dim: usize,
    entries: Vec<u16>,
}

impl Mat {
    pub fn identity(dim: usize) -> Mat {
        let mut entries = vec![0u16; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Mat { dim, entries }
    }

    /// Builds a matrix from rows of field elements, validating the range.
    pub fn from_rows(rows: &[Vec<u64>], field: &GaloisField) -> Result<Mat> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidSpec(format!(
                    "matrix rows must form a square: got row of length {} in a {}-row matrix",
                    row.len(),
                    dim
                )));
            }
            for &e in row {
                if e as usize >= field.order() {
                    return Err(Error::InvalidSpec(format!(
                        "matrix entry {e} outside field of order {}",
                        field.order()
                    )));
                }
                entries.push(e as u16);
            }
        }
        Ok(Mat { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> usize {
        self.entries[row * self.dim + col] as usize
    }

    pub fn mul(&self, other: &Mat, field: &GaloisField) -> Mat {
        let n = self.dim;
        let mut entries = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    let prod = field.mul(a, other.at(k, j));
                    entries[idx] = field.add(entries[idx] as usize, prod) as u16;
                }
            }
        }
        Mat { dim: n, entries }
    }

    /// Gauss-Jordan inverse; None for singular matrices.
    pub fn inverse(&self, field: &GaloisField) -> Option<Mat> {
        let n = self.dim;
        let mut a: Vec<usize> = self.entries.iter().map(|&e| e as usize).collect();
        let mut b: Vec<usize> = Mat::identity(n).entries.iter().map(|&e| e as usize).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    b.swap(col * n + j, pivot * n + j);
                }
            }
            let scale = field.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = field.mul(a[col * n + j], scale);
                b[col * n + j] = field.mul(b[col * n + j], scale);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let sub_a = field.mul(factor, a[col * n + j]);
                    a[r * n + j] = field.sub(a[r * n + j], sub_a);
                    let sub_b = field.mul(factor, b[col * n + j]);
                    b[r * n + j] = field.sub(b[r * n + j], sub_b);
                }
            }
        }
        Some(Mat { dim: n, entries: b.into_iter().map(|e| e as u16).collect() })
    }

    pub fn det(&self, field: &GaloisField) -> usize {
        let n = self.dim;
        let mut a: Vec<usize> = self.entries.iter().map(|&e| e as usize).collect();
        let mut det = 1usize;
        for col in 0..n {
            let pivot = match (col..n).find(|&r| a[r * n + col] != 0) {
                Some(p) => p,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = field.neg(det);
            }
            let d = a[col * n + col];
            det = field.mul(det, d);
            let scale = field.inv(d);
            for r in col + 1..n {
                if a[r * n + col] == 0 {
                    continue;
                }
                let factor = field.mul(a[r * n + col], scale);
                for j in col..n {
                    let sub = field.mul(factor, a[col * n + j]);
                    a[r * n + j] = field.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    /// Scalar matrix c * I.
    pub fn scalar(dim: usize, c: usize) -> Mat {
        let mut m = Mat::identity(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c as u16;
        }
        m
    }

    pub fn rows_string(&self) -> String {
        let mut rows = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.at(i, j).to_string()).collect();
            rows.push(format!("[{}]", row.join(",")));
        }
        format!("[{}]", rows.join(","))
    }
}
