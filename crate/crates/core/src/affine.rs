//! Dense affine maps `x ↦ M x + c` between low-dimensional coordinate spaces.
//!
//! These parameterize simplex faces, prism cells, and cylinder slices. All
//! maps reachable from those constructions have small-integer entries, so
//! compositions are computed exactly in `f64` and canonical bit-keys cancel
//! reliably in formal chain arithmetic.

use smallvec::SmallVec;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    /// Output dimension.
    pub rows: usize,
    /// Input dimension.
    pub cols: usize,
    /// Row-major `rows × cols` matrix.
    pub matrix: Vec<f64>,
    /// Offset of length `rows`.
    pub offset: Vec<f64>,
}

impl AffineMap {
    pub fn new(rows: usize, cols: usize, matrix: Vec<f64>, offset: Vec<f64>) -> Self {
        assert_eq!(matrix.len(), rows * cols);
        assert_eq!(offset.len(), rows);
        AffineMap {
            rows,
            cols,
            matrix,
            offset,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        AffineMap::new(dim, dim, matrix, vec![0.0; dim])
    }

    pub fn apply(&self, x: &[f64]) -> SmallVec<[f64; 6]> {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = SmallVec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut v = self.offset[r];
            for c in 0..self.cols {
                v += self.matrix[r * self.cols + c] * x[c];
            }
            out.push(v);
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        assert_eq!(self.cols, other.rows);
        let rows = self.rows;
        let cols = other.cols;
        let mut matrix = vec![0.0; rows * cols];
        let mut offset = vec![0.0; rows];
        for r in 0..rows {
            let mut v = self.offset[r];
            for k in 0..self.cols {
                v += self.matrix[r * self.cols + k] * other.offset[k];
            }
            offset[r] = v;
            for c in 0..cols {
                let mut m = 0.0;
                for k in 0..self.cols {
                    m += self.matrix[r * self.cols + k] * other.matrix[k * other.cols + c];
                }
                matrix[r * cols + c] = m;
            }
        }
        AffineMap::new(rows, cols, matrix, offset)
    }

    /// Map `(x, t) ↦ (A x, t)`: the cylinder extension used by prism cells.
    pub fn cylinder(&self) -> AffineMap {
        let rows = self.rows + 1;
        let cols = self.cols + 1;
        let mut matrix = vec![0.0; rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                matrix[r * cols + c] = self.matrix[r * self.cols + c];
            }
        }
        matrix[(rows - 1) * cols + (cols - 1)] = 1.0;
        let mut offset = self.offset.clone();
        offset.push(0.0);
        AffineMap::new(rows, cols, matrix, offset)
    }

    /// Bit-level key for canonicalization of formal chains.
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(2 + self.matrix.len() + self.offset.len());
        k.push(self.rows as u64);
        k.push(self.cols as u64);
        let norm = |v: f64| (if v == 0.0 { 0.0f64 } else { v }).to_bits();
        k.extend(self.matrix.iter().map(|&v| norm(v)));
        k.extend(self.offset.iter().map(|&v| norm(v)));
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_sequential_apply() {
        let a = AffineMap::new(2, 2, vec![1.0, 2.0, 0.0, 1.0], vec![0.5, -1.0]);
        let b = AffineMap::new(2, 1, vec![3.0, -1.0], vec![0.0, 2.0]);
        let ab = a.compose(&b);
        let x = [0.7];
        let direct = a.apply(&b.apply(&x));
        let fused = ab.apply(&x);
        for (d, f) in direct.iter().zip(fused.iter()) {
            assert!((d - f).abs() < 1e-14);
        }
    }

    #[test]
    fn cylinder_fixes_last_coordinate() {
        let a = AffineMap::identity(2);
        let c = a.cylinder();
        assert_eq!(c.apply(&[0.25, 0.5, 0.9]).as_slice(), &[0.25, 0.5, 0.9]);
    }
}
