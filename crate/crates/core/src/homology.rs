//! Betti numbers of finite chain-complex snapshots by singular-value rank.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::tolerances::{COMPLEX_DD_TOL, RANK_REL_THRESHOLD};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("boundary matrix ∂_{degree} has shape {rows}×{cols}, expected {expected_rows}×{expected_cols}")]
    ShapeMismatch {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("∂∂ ≠ 0 at degree {degree} (residual {residual:e})")]
    NotAComplex { degree: usize, residual: f64 },
    #[error("augmentation is not a chain map: column sums of ∂₁ reach {residual:e}")]
    AugmentationBroken { residual: f64 },
}

/// A finite chain complex `C_D → … → C_1 → C_0` of real vector spaces,
/// given by its boundary matrices. `boundaries[j]` is `∂_{j+1}: C_{j+1} → C_j`
/// with shape `dims[j] × dims[j+1]`.
pub struct FiniteComplex {
    dims: Vec<usize>,
    boundaries: Vec<DMatrix<f64>>,
}

impl FiniteComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<DMatrix<f64>>) -> Result<Self, HomologyError> {
        assert!(!dims.is_empty());
        assert_eq!(boundaries.len() + 1, dims.len());
        for (j, b) in boundaries.iter().enumerate() {
            if b.nrows() != dims[j] || b.ncols() != dims[j + 1] {
                return Err(HomologyError::ShapeMismatch {
                    degree: j + 1,
                    rows: b.nrows(),
                    cols: b.ncols(),
                    expected_rows: dims[j],
                    expected_cols: dims[j + 1],
                });
            }
        }
        for j in 0..boundaries.len().saturating_sub(1) {
            let prod = &boundaries[j] * &boundaries[j + 1];
            let scale = 1.0f64
                .max(boundaries[j].norm())
                .max(boundaries[j + 1].norm());
            let residual = prod.amax();
            if residual > COMPLEX_DD_TOL * scale * scale {
                return Err(HomologyError::NotAComplex {
                    degree: j + 2,
                    residual,
                });
            }
        }
        Ok(FiniteComplex { dims, boundaries })
    }

    /// Degrees `0..=top`.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, degree: usize) -> Option<&DMatrix<f64>> {
        (degree >= 1)
            .then(|| self.boundaries.get(degree - 1))
            .flatten()
    }
}

/// Rank decision for one matrix: the rank plus the singular values around
/// the cut, so borderline decisions stay visible.
#[derive(Debug, Clone, Copy)]
pub struct RankInfo {
    pub rank: usize,
    /// Smallest singular value counted as nonzero.
    pub smallest_kept: Option<f64>,
    /// Largest singular value treated as zero.
    pub largest_dropped: Option<f64>,
}

pub fn svd_rank(m: &DMatrix<f64>) -> RankInfo {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankInfo {
            rank: 0,
            smallest_kept: None,
            largest_dropped: None,
        };
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if max == 0.0 {
        return RankInfo {
            rank: 0,
            smallest_kept: None,
            largest_dropped: None,
        };
    }
    let cut = RANK_REL_THRESHOLD * max;
    let mut kept: Vec<f64> = sv.iter().copied().filter(|&s| s > cut).collect();
    let mut dropped: Vec<f64> = sv.iter().copied().filter(|&s| s <= cut).collect();
    kept.sort_by(f64::total_cmp);
    dropped.sort_by(f64::total_cmp);
    RankInfo {
        rank: kept.len(),
        smallest_kept: kept.first().copied(),
        largest_dropped: dropped.last().copied(),
    }
}

#[derive(Debug, Clone)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub ranks: Vec<RankInfo>,
    pub reduced: bool,
}

/// Betti numbers `β_m = dim ker ∂_m − rank ∂_{m+1}`.
///
/// Unreduced, degree zero uses `C₀ / im ∂₁`; with `reduced` set, degree zero
/// is augmented by `μ ↦ μ(X)` (the all-ones row), which must annihilate
/// `im ∂₁`.
pub fn homology(complex: &FiniteComplex, reduced: bool) -> Result<HomologyReport, HomologyError> {
    let top = complex.top_degree();
    let ranks: Vec<RankInfo> = (1..=top)
        .map(|d| svd_rank(complex.boundary(d).unwrap()))
        .collect();
    let rank_d = |d: usize| -> usize {
        if d == 0 || d > top {
            0
        } else {
            ranks[d - 1].rank
        }
    };
    if reduced && complex.dims[0] > 0 {
        if let Some(b1) = complex.boundary(1) {
            let mut worst = 0.0f64;
            for c in 0..b1.ncols() {
                worst = worst.max(b1.column(c).sum().abs());
            }
            if worst > COMPLEX_DD_TOL * (1.0 + b1.norm()) {
                return Err(HomologyError::AugmentationBroken { residual: worst });
            }
        }
    }
    let mut betti = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let kernel = if m == 0 {
            let aug_rank = if reduced && complex.dims[0] > 0 { 1 } else { 0 };
            complex.dims[0] - aug_rank
        } else {
            complex.dims[m] - rank_d(m)
        };
        betti.push(kernel - rank_d(m + 1));
    }
    Ok(HomologyReport {
        betti,
        ranks,
        reduced,
    })
}

/// The complex with every chain group `ℝ^n` and `∂_k = 0` for odd `k`,
/// `∂_k = id` for even `k ≥ 2`: the shape forced on Lipschitz measure
/// chains over a space with no nonconstant Lipschitz curves. Its homology
/// vanishes in every positive degree.
pub fn alternating_complex(n: usize, top_degree: usize) -> FiniteComplex {
    let dims = vec![n; top_degree + 1];
    let boundaries = (1..=top_degree)
        .map(|k| {
            if k % 2 == 1 {
                DMatrix::zeros(n, n)
            } else {
                DMatrix::identity(n, n)
            }
        })
        .collect();
    FiniteComplex::new(dims, boundaries).expect("alternating complex is a complex")
}

/// The simplicial circle: three vertices, three edges.
pub fn simplicial_circle() -> FiniteComplex {
    let d1 = DMatrix::from_column_slice(
        3,
        3,
        &[
            -1.0, 1.0, 0.0, // edge 01
            0.0, -1.0, 1.0, // edge 12
            1.0, 0.0, -1.0, // edge 20
        ],
    );
    FiniteComplex::new(vec![3, 3], vec![d1]).expect("circle complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_complex_has_full_betti() {
        let dims = vec![2, 3, 1];
        let b = vec![DMatrix::zeros(2, 3), DMatrix::zeros(3, 1)];
        let complex = FiniteComplex::new(dims, b).unwrap();
        let rep = homology(&complex, false).unwrap();
        assert_eq!(rep.betti, vec![2, 3, 1]);
    }

    #[test]
    fn circle_betti_numbers() {
        let rep = homology(&simplicial_circle(), false).unwrap();
        assert_eq!(rep.betti, vec![1, 1]);
        let reduced = homology(&simplicial_circle(), true).unwrap();
        assert_eq!(reduced.betti, vec![0, 1]);
    }

    #[test]
    fn alternating_complex_kills_positive_degrees() {
        for n in [1usize, 4] {
            let rep = homology(&alternating_complex(n, 6), false).unwrap();
            assert_eq!(rep.betti[0], n);
            assert!(rep.betti[1..].iter().all(|&b| b == 0), "{:?}", rep.betti);
            // The augmentation removes exactly one dimension at degree zero.
            let reduced = homology(&alternating_complex(n, 6), true).unwrap();
            assert_eq!(reduced.betti[0], n - 1);
            assert_eq!(reduced.betti[1..], rep.betti[1..]);
        }
    }

    #[test]
    fn non_complex_is_rejected() {
        let b1 = DMatrix::identity(2, 2);
        let b2 = DMatrix::identity(2, 2);
        assert!(matches!(
            FiniteComplex::new(vec![2, 2, 2], vec![b1, b2]),
            Err(HomologyError::NotAComplex { degree: 2, .. })
        ));
    }

    #[test]
    fn betti_invariant_under_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let base = simplicial_circle();
        // Conjugate ∂₁ ↦ A₀ ∂₁ A₁⁻¹ with random well-conditioned A's.
        let mut random_gl = |n: usize| -> DMatrix<f64> {
            let mut m = DMatrix::identity(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += 0.2 * (rng.gen::<f64>() - 0.5);
                }
            }
            m
        };
        for _ in 0..10 {
            let a0 = random_gl(3);
            let a1 = random_gl(3);
            let d1 = &a0 * base.boundary(1).unwrap() * a1.try_inverse().unwrap();
            let conj = FiniteComplex::new(vec![3, 3], vec![d1]).unwrap();
            let rep = homology(&conj, false).unwrap();
            assert_eq!(rep.betti, vec![1, 1]);
        }
    }
}
