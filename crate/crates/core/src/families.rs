//! Named map and simplex families used by the experiment suites.
//!
//! These are the crate's stock of quantitative witnesses:
//!
//! - `f_t`: uniformly convergent functions on `[0, 1]` whose Lipschitz
//!   constants blow up like `1/√t`: uniform convergence without MT
//!   convergence;
//! - `u_ε`: oscillatory maps `Δ^k → ℝ^k` with `det ∇u_ε = 2cos²(x₁/ε)`
//!   (for `k = 2`), uniformly null yet with unit average Jacobian;
//! - `v_ε`: the faster-oscillating variant with
//!   `det ∇v_ε = cos²(x₁/ε²)/ε`, whose current values blow up like `C/ε`;
//! - `t sin(x)` and `t sin(x/t)` on the circle for the C¹ comparison;
//! - the identity line into a snowflake space.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::affine::AffineMap;
use crate::currents::{LipSimplex, MeasureChain, ScalarOracle, TestForm};
use crate::lipmap::{LipMap, SampleSet};
use crate::liptop::C1Map;
use crate::point::Point;
use crate::simplex::SimplexDomain;
use crate::space::{Circle, Euclidean, Product, Snowflake, SpaceRef};

/// `f_t` on `[0, 1]`: `0` up to `t`, then a ramp of slope `1/√t` up to
/// `2t`, then the constant `√t`.
pub fn f_t_value(t: f64, x: f64) -> f64 {
    assert!(t > 0.0 && t <= 0.5);
    if x <= t {
        0.0
    } else if x <= 2.0 * t {
        (x - t) / t.sqrt()
    } else {
        t.sqrt()
    }
}

/// `f_t` as a map with a grid of mesh `1/n`.
pub fn f_t_map(t: f64, n: usize) -> LipMap {
    let line = Euclidean::line();
    LipMap::new(
        format!("f_{t}"),
        line.clone(),
        line,
        SampleSet::interval(n),
        move |p| Point::scalar(f_t_value(t, p.coords()[0])),
    )
}

/// The zero limit `f₀` on the same grid.
pub fn f_zero_map(n: usize) -> LipMap {
    let line = Euclidean::line();
    LipMap::new(
        "f_0",
        line.clone(),
        line,
        SampleSet::interval(n),
        |_| Point::scalar(0.0),
    )
}

/// Oscillatory simplex `u_ε : Δ^k → ℝ^k`, `k ≥ 2`:
/// first component `√(2ε) sin(x₁/ε)`, second `x₂ √(2ε) cos(x₁/ε)`, the
/// rest coordinates. Uniformly `O(√ε)`, Lipschitz constant `≈ √(2/ε)`.
pub fn u_eps_simplex(k: usize, eps: f64) -> LipSimplex {
    assert!(k >= 2, "u_eps needs k >= 2");
    assert!(eps > 0.0);
    LipSimplex::fresh(k, move |s| {
        let amp = (2.0 * eps).sqrt();
        let mut c: Vec<f64> = Vec::with_capacity(k);
        c.push(amp * (s[0] / eps).sin());
        c.push(s[1] * amp * (s[0] / eps).cos());
        for i in 2..k {
            c.push(s[i]);
        }
        Point::new(c)
    })
}

/// The zero map `Δ^k → ℝ^k`, the compact-open limit of `u_ε`.
pub fn u_limit_simplex(k: usize) -> LipSimplex {
    LipSimplex::fresh(k, move |_| Point::new(vec![0.0; k]))
}

/// True Lipschitz scale of `u_ε` (dominant entry of its Jacobian).
pub fn u_eps_lip(eps: f64) -> f64 {
    (2.0 / eps).sqrt()
}

/// Closed-form `∫_{Δ²} 2 cos²(x₁/ε) dx`, the exact value of
/// `[u_ε](1 d id)` at `k = 2`.
pub fn u_eps_exact_value(eps: f64) -> f64 {
    0.5 + eps * eps / 4.0 * (1.0 - (2.0 / eps).cos())
}

/// Fast-oscillatory simplex `v_ε : Δ² → ℝ²` with components
/// `√ε sin(x₁/ε²)` and `√ε x₂ cos(x₁/ε²)`.
pub fn v_eps_simplex(eps: f64) -> LipSimplex {
    assert!(eps > 0.0 && eps <= 1.0);
    LipSimplex::fresh(2, move |s| {
        let amp = eps.sqrt();
        Point::new([
            amp * (s[0] / (eps * eps)).sin(),
            amp * s[1] * (s[0] / (eps * eps)).cos(),
        ])
    })
}

/// Closed-form `∫_{Δ²} cos²(x₁/ε²)/ε dx = [v_ε](1 d id)`.
pub fn v_eps_exact_value(eps: f64) -> f64 {
    let e2 = eps * eps;
    (0.25 + e2 * e2 / 8.0 * (1.0 - (2.0 / e2).cos())) / eps
}

/// `x ↦ t sin(x)` on the circle, with its derivative oracle.
pub fn t_sin_family(t: f64, n: usize) -> C1Map {
    let circle = Circle::new();
    let target = Euclidean::line();
    let map = LipMap::new(
        format!("{t}*sin"),
        circle,
        target,
        SampleSet::circle(n),
        move |p| Point::scalar(t * p.coords()[0].sin()),
    );
    C1Map::new(map, move |p| Point::scalar(t * p.coords()[0].cos()))
}

/// `x ↦ t sin(x/t)` on the circle; well-defined when `1/t` is an integer.
/// Uniformly `O(t)` but with derivative of supremum 1.
pub fn t_sin_scaled_family(t: f64, n: usize) -> C1Map {
    let inv = 1.0 / t;
    assert!(
        (inv - inv.round()).abs() < 1e-9,
        "need 1/t integral for a well-defined circle map"
    );
    let circle = Circle::new();
    let target = Euclidean::line();
    let map = LipMap::new(
        format!("{t}*sin(x/{t})"),
        circle,
        target,
        SampleSet::circle(n),
        move |p| Point::scalar(t * (p.coords()[0] / t).sin()),
    );
    C1Map::new(map, move |p| Point::scalar((p.coords()[0] / t).cos()))
}

/// The identity line `[0,1] → (ℝ, |·|^α)`.
pub fn snowflake_line(alpha: f64) -> LipMap {
    let target = Snowflake::new(Euclidean::line(), alpha);
    LipMap::new(
        format!("line into R^{alpha}"),
        Euclidean::line(),
        target,
        SampleSet::interval(16),
        |p| p.clone(),
    )
}

/// Identity simplex `Δ^k ⊂ ℝ^k`.
pub fn identity_simplex(k: usize) -> LipSimplex {
    LipSimplex::fresh(k, |s| Point::new(s.iter().copied()))
}

/// Affine `k`-simplex in the plane through the given vertices
/// (`vertices[0]` is the image of the origin).
pub fn affine_simplex_through(vertices: &[Vec<f64>]) -> LipSimplex {
    let k = vertices.len() - 1;
    let rows = vertices[0].len();
    let offset = vertices[0].clone();
    let mut matrix = vec![0.0; rows * k];
    for c in 0..k {
        for r in 0..rows {
            matrix[r * k + c] = vertices[c + 1][r] - offset[r];
        }
    }
    LipSimplex::affine_simplex(k, AffineMap::new(rows, k, matrix, offset))
}

/// Oriented edge chain around a triangle: a 1-cycle.
pub fn triangle_cycle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> MeasureChain {
    let edge = |p: [f64; 2], q: [f64; 2]| {
        affine_simplex_through(&[p.to_vec(), q.to_vec()])
    };
    MeasureChain::new(
        1,
        vec![
            (edge(a, b), 1.0),
            (edge(b, c), 1.0),
            (edge(c, a), 1.0),
        ],
    )
}

/// Straight-line contraction of the plane to the origin, as a map on the
/// cylinder `ℝ² × I`.
pub fn plane_contraction() -> LipMap {
    let plane = Euclidean::new(2);
    let cyl = Product::new(plane.clone(), Euclidean::line());
    LipMap::new(
        "(1-t)x",
        cyl,
        plane,
        SampleSet::new(vec![]),
        |p| {
            let c = p.coords();
            Point::new([(1.0 - c[2]) * c[0], (1.0 - c[2]) * c[1]])
        },
    )
}

/// A named catalog of spaces with point samplers, for metric-axiom sweeps.
pub struct RegisteredSpace {
    pub name: &'static str,
    pub space: SpaceRef,
    pub sampler: Box<dyn FnMut(&mut ChaCha8Rng) -> Point + Send>,
}

pub fn registered_spaces() -> Vec<RegisteredSpace> {
    fn cube_sampler(dim: usize, scale: f64) -> Box<dyn FnMut(&mut ChaCha8Rng) -> Point + Send> {
        Box::new(move |rng| Point::new((0..dim).map(|_| scale * (rng.gen::<f64>() - 0.5))))
    }
    let simplex_sampler = |k: usize| -> Box<dyn FnMut(&mut ChaCha8Rng) -> Point + Send> {
        Box::new(move |rng| {
            let mut y: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
            y.sort_by(|a, b| b.partial_cmp(a).unwrap());
            Point::new((0..k).map(|i| y[i] - if i + 1 < k { y[i + 1] } else { 0.0 }))
        })
    };
    vec![
        RegisteredSpace {
            name: "line",
            space: Euclidean::line(),
            sampler: cube_sampler(1, 10.0),
        },
        RegisteredSpace {
            name: "r3",
            space: Euclidean::new(3),
            sampler: cube_sampler(3, 10.0),
        },
        RegisteredSpace {
            name: "snowflake-half",
            space: Snowflake::new(Euclidean::new(2), 0.5),
            sampler: cube_sampler(2, 10.0),
        },
        RegisteredSpace {
            name: "snowflake-07",
            space: Snowflake::new(Euclidean::line(), 0.7),
            sampler: cube_sampler(1, 10.0),
        },
        RegisteredSpace {
            name: "circle",
            space: Circle::new(),
            sampler: Box::new(|rng| Point::scalar(rng.gen::<f64>() * std::f64::consts::TAU)),
        },
        RegisteredSpace {
            name: "product-r2-circle",
            space: Product::new(Euclidean::new(2), Circle::new()),
            sampler: {
                let mut cube = cube_sampler(2, 10.0);
                Box::new(move |rng| {
                    let a = cube(rng);
                    let theta = Point::scalar(rng.gen::<f64>() * std::f64::consts::TAU);
                    Point::pair(&a, &theta)
                })
            },
        },
        RegisteredSpace {
            name: "delta2",
            space: SimplexDomain::new(2),
            sampler: simplex_sampler(2),
        },
    ]
}

/// Convenience: a random piecewise-linear function on `[0, 1]` with the
/// given number of knots, slopes bounded by `slope_cap`.
pub fn random_piecewise_linear(
    rng: &mut ChaCha8Rng,
    knots: usize,
    slope_cap: f64,
    n: usize,
) -> LipMap {
    assert!(knots >= 2);
    let xs: Vec<f64> = (0..knots).map(|i| i as f64 / (knots - 1) as f64).collect();
    let mut ys = vec![0.0f64; knots];
    for i in 1..knots {
        let dx = xs[i] - xs[i - 1];
        ys[i] = ys[i - 1] + dx * slope_cap * (2.0 * rng.gen::<f64>() - 1.0);
    }
    let line = Euclidean::line();
    LipMap::new(
        "pwl",
        line.clone(),
        line,
        SampleSet::interval(n),
        move |p| {
            let x = p.coords()[0].clamp(0.0, 1.0);
            let seg = ((x * (knots - 1) as f64).floor() as usize).min(knots - 2);
            let frac = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
            Point::scalar(ys[seg] + frac * (ys[seg + 1] - ys[seg]))
        },
    )
}

/// Stock test forms by degree: the volume form plus an affine and a smooth
/// variant with declared constants valid on `‖x‖_∞ ≤ bound`.
pub fn stock_form(kind: &str, k: usize, bound: f64) -> Option<TestForm> {
    match kind {
        "volume" => Some(TestForm::volume_form(k, bound)),
        "affine" => {
            let f = ScalarOracle::affine(
                (0..k.max(1)).map(|i| 0.3 + 0.2 * i as f64).collect(),
                0.4,
                10.0 * bound,
            );
            let pis = (0..k)
                .map(|i| {
                    ScalarOracle::affine(
                        (0..k).map(|j| if i == j { 1.0 } else { 0.1 }).collect(),
                        0.05 * i as f64,
                        10.0 * bound,
                    )
                })
                .collect();
            Some(TestForm::new(f, pis))
        }
        "smooth" => {
            let f = ScalarOracle::new("cos p0", 1.0, 1.0, |p| p.coords()[0].cos());
            let pis = (0..k)
                .map(|i| {
                    ScalarOracle::new(
                        format!("x{i} + sin"),
                        2.0,
                        10.0 * bound,
                        move |p: &Point| p.coords()[i] + 0.5 * (2.0 * p.coords()[0]).sin(),
                    )
                })
                .collect();
            Some(TestForm::new(f, pis))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::eval_simplex_current_at;
    use crate::lipmap::{lip_estimate, PairPlan};

    #[test]
    fn f_t_has_the_right_profile() {
        let t = 0.25;
        assert_eq!(f_t_value(t, 0.1), 0.0);
        assert!((f_t_value(t, 0.375) - 0.25).abs() < 1e-15);
        assert_eq!(f_t_value(t, 0.9), 0.5);
    }

    #[test]
    fn f_t_lip_estimate_is_inverse_sqrt_t() {
        // mesh 1/16 = t/4 at t = 1/4; the realizing pair is on the ramp.
        let f = f_t_map(0.25, 16);
        let est = lip_estimate(&f, &PairPlan::AllPairs).unwrap();
        assert_eq!(est, 2.0);
    }

    #[test]
    fn u_eps_quadrature_matches_closed_form() {
        let eps = 0.05;
        let sigma = u_eps_simplex(2, eps);
        let form = TestForm::volume_form(2, 2.0);
        let n = (5.0 / eps).ceil() as usize;
        let value = eval_simplex_current_at(&sigma, &form, n).unwrap();
        let exact = u_eps_exact_value(eps);
        assert!(
            (value - exact).abs() < 0.01,
            "quadrature {value} vs closed form {exact}"
        );
    }

    #[test]
    fn v_eps_quadrature_matches_closed_form() {
        let eps = 0.1;
        let sigma = v_eps_simplex(eps);
        let form = TestForm::volume_form(2, 2.0);
        let n = (2.0 / (eps * eps)).ceil() as usize;
        let value = eval_simplex_current_at(&sigma, &form, n).unwrap();
        let exact = v_eps_exact_value(eps);
        assert!(
            (value - exact).abs() < 0.05 * exact,
            "quadrature {value} vs closed form {exact}"
        );
    }

    #[test]
    fn triangle_cycle_is_a_numerical_cycle() {
        let cycle = triangle_cycle([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]);
        let bd = crate::currents::boundary_chain(&cycle).unwrap();
        let form = TestForm::new(ScalarOracle::affine(vec![0.7, -0.3], 0.1, 3.0), vec![]);
        let v = crate::currents::eval_chain_current_at(&bd, &form, 2).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn registered_spaces_satisfy_metric_axioms() {
        for mut reg in registered_spaces() {
            let report =
                crate::lipmap::check_metric_axioms(reg.space.as_ref(), &mut reg.sampler, 1000, 42);
            assert_eq!(report.max_self_dist, 0.0, "{}", reg.name);
            assert_eq!(report.max_asymmetry, 0.0, "{}", reg.name);
            assert!(
                report.worst_triangle_defect <= 1e-12,
                "{}: {}",
                reg.name,
                report.worst_triangle_defect
            );
        }
    }
}
