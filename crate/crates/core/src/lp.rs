//! Dense primal simplex for small transportation-dual LPs.
//!
//! Every instance this crate builds has the form
//! `maximize c·x subject to A x ≤ b, x ≥ 0` with `b ≥ 0`, so the slack basis
//! is feasible and no phase-one is needed. Pivoting rules are fixed (Dantzig
//! with index tie-breaks, falling back to Bland's rule) to keep runs
//! bit-reproducible; instance sizes stay in the hundreds of rows.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("objective is unbounded above")]
    Unbounded,
    #[error("simplex iteration limit reached ({0} pivots)")]
    IterationLimit(usize),
    #[error("solver tolerance not met (residual {residual:e})")]
    Numerics { residual: f64 },
}

/// `maximize c·x  s.t.  A x ≤ b, x ≥ 0` with dense row-major `A`.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub n: usize,
    pub m: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    pub pivots: usize,
}

const ENTER_TOL: f64 = 1e-11;
const PIVOT_EPS: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;

pub fn solve_max(lp: &DenseLp) -> Result<LpSolution, LpError> {
    let (n, m) = (lp.n, lp.m);
    debug_assert_eq!(lp.a.len(), n * m);
    debug_assert_eq!(lp.b.len(), m);
    debug_assert_eq!(lp.c.len(), n);
    debug_assert!(lp.b.iter().all(|&v| v >= 0.0));

    let cols = n + m + 1; // structural + slack + rhs
    let mut t = vec![0.0f64; m * cols];
    for i in 0..m {
        for j in 0..n {
            t[i * cols + j] = lp.a[i * n + j];
        }
        t[i * cols + n + i] = 1.0;
        t[i * cols + n + m] = lp.b[i];
    }
    let mut reduced: Vec<f64> = lp.c.iter().copied().chain(std::iter::repeat(0.0)).take(n + m).collect();
    let mut value = 0.0f64;
    let mut basis: Vec<usize> = (n..n + m).collect();

    let bland_after = 10 * (n + m) + 50;
    let limit = 200 * (n + m) + 10_000;
    let mut pivots = 0usize;

    loop {
        // Entering column.
        let enter = if pivots < bland_after {
            let mut best: Option<(usize, f64)> = None;
            for (j, &r) in reduced.iter().enumerate() {
                if r > ENTER_TOL && best.is_none_or(|(_, br)| r > br) {
                    best = Some((j, r));
                }
            }
            best.map(|(j, _)| j)
        } else {
            reduced.iter().position(|&r| r > ENTER_TOL)
        };
        let Some(je) = enter else {
            break;
        };

        // Ratio test; ties resolved toward the smallest basis variable.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * cols + je];
            if a > PIVOT_EPS {
                let ratio = t[i * cols + n + m] / a;
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_EPS
                            || (ratio <= lr + PIVOT_EPS && basis[i] < basis[li])
                        {
                            leave = Some((i, ratio.min(lr)));
                        }
                    }
                }
            }
        }
        let Some((il, _)) = leave else {
            return Err(LpError::Unbounded);
        };

        // Pivot.
        let piv = t[il * cols + je];
        for v in t[il * cols..(il + 1) * cols].iter_mut() {
            *v /= piv;
        }
        for i in 0..m {
            if i == il {
                continue;
            }
            let factor = t[i * cols + je];
            if factor != 0.0 {
                for c in 0..cols {
                    t[i * cols + c] -= factor * t[il * cols + c];
                }
                t[i * cols + je] = 0.0;
            }
        }
        let rfac = reduced[je];
        value += rfac * t[il * cols + n + m];
        for c in 0..n + m {
            reduced[c] -= rfac * t[il * cols + c];
        }
        reduced[je] = 0.0;
        basis[il] = je;

        pivots += 1;
        if pivots > limit {
            return Err(LpError::IterationLimit(pivots));
        }
    }

    // Recover x and certify feasibility.
    let mut x = vec![0.0f64; n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i * cols + n + m];
        }
    }
    let mut residual = 0.0f64;
    for i in 0..m {
        let mut row = 0.0;
        for j in 0..n {
            row += lp.a[i * n + j] * x[j];
        }
        residual = residual.max(row - lp.b[i]);
    }
    for &v in &x {
        residual = residual.max(-v);
    }
    let scale = 1.0 + lp.b.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if residual > FEAS_TOL * scale {
        return Err(LpError::Numerics { residual });
    }
    Ok(LpSolution { value, x, pivots })
}
