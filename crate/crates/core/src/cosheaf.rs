//! Constructive Mayer–Vietoris decomposition of finitely supported signed
//! measures over two open sets, via distance-to-complement oracles.
//!
//! Open regions carry `ρ(x) = dist(x, complement)`, so `{ρ > 0} = U` and
//! margin checks replace topological closures: `{ρ > ε}` has closure inside
//! `{ρ ≥ ε} ⊂ U` whenever `ε > 0`. The splitting follows the classical
//! recipe: shrink to a separating set `W` with `W̄ ⊂ V` and `K − W ⊂ U`,
//! then restrict the measure atomwise. The sequence
//!
//! ```text
//! M(U ∩ V) --Φ₁--> M(U) ⊕ M(V) --Φ₀--> M(U ∪ V) --> 0
//! ```
//!
//! with `Φ₁(ξ) = (ξ, −ξ)` and `Φ₀(μ, ν) = μ + ν` is exact, and both the
//! surjectivity witness (`mv_decompose`) and the kernel witness
//! (`mv_kernel_witness`) are produced exactly, atom by atom.

use std::sync::Arc;

use thiserror::Error;

use crate::freespace::SignedMeasure;
use crate::point::Point;
use crate::space::SpaceRef;

#[derive(Debug, Error)]
pub enum CosheafError {
    #[error("point #{index} of K lies outside the open set (ρ = {rho})")]
    NotContained { index: usize, rho: f64 },
    #[error("point #{index} of K lies in neither U nor V")]
    CoverViolation { index: usize },
    #[error("(μ, ν) is not in the kernel: ‖μ + ν‖_TV = {residual}")]
    NotInKernel { residual: f64 },
    #[error("halving search for the separating margin did not terminate")]
    SearchFailed,
}

type RhoFn = dyn Fn(&Point) -> f64 + Send + Sync;

/// An open region given by its distance-to-complement oracle.
///
/// Derived regions (`shrink`) carry the conservative oracle
/// `max(0, ρ − margin)`, which still satisfies `ρ' > 0 ⇔ x ∈ U'`.
#[derive(Clone)]
pub struct OpenRegion {
    pub name: String,
    rho: Arc<RhoFn>,
}

impl OpenRegion {
    pub fn new(name: impl Into<String>, rho: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        OpenRegion {
            name: name.into(),
            rho: Arc::new(rho),
        }
    }

    /// Open metric ball; `ρ(x) = max(0, r − d(x, c))`.
    pub fn ball(space: SpaceRef, center: Point, radius: f64) -> Self {
        let name = format!("B({radius})");
        OpenRegion::new(name, move |p| (radius - space.dist(p, &center)).max(0.0))
    }

    /// Open half-space `{x : a·x < b}` in coordinates.
    pub fn half_space(normal: Vec<f64>, threshold: f64) -> Self {
        let scale = normal.iter().map(|a| a * a).sum::<f64>().sqrt();
        assert!(scale > 0.0);
        OpenRegion::new("halfspace", move |p| {
            let dot: f64 = normal.iter().zip(p.coords()).map(|(a, x)| a * x).sum();
            ((threshold - dot) / scale).max(0.0)
        })
    }

    pub fn rho(&self, p: &Point) -> f64 {
        (self.rho)(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.rho(p) > 0.0
    }

    /// `{ρ > margin}` with the conservative margin oracle.
    pub fn shrink(&self, margin: f64) -> OpenRegion {
        let inner = self.rho.clone();
        OpenRegion::new(format!("{}|>{margin}", self.name), move |p| {
            (inner(p) - margin).max(0.0)
        })
    }
}

/// Result of shrinking an open set around a finite compact set.
pub struct Shrunk {
    pub region: OpenRegion,
    pub eps: f64,
}

/// `ε := min_K ρ` and `U' := {ρ > ε/2}`, so `K ⊂ U' ⊂ Ū' ⊂ U` with margin
/// `ε/2 > 0`. Fails if some point of `K` has `ρ ≤ 0`.
pub fn shrink_open(k_points: &[Point], u: &OpenRegion) -> Result<Shrunk, CosheafError> {
    let mut eps = f64::INFINITY;
    for (index, p) in k_points.iter().enumerate() {
        let rho = u.rho(p);
        if rho <= 0.0 {
            return Err(CosheafError::NotContained { index, rho });
        }
        eps = eps.min(rho);
    }
    assert!(eps.is_finite(), "shrink_open needs a nonempty K");
    let region = u.shrink(eps / 2.0);
    debug_assert!(k_points.iter().all(|p| region.contains(p)));
    Ok(Shrunk { region, eps })
}

/// Separating open set: `W = {ρ_V > ε}` with `ε` the largest value in a
/// halving search from `max_K ρ_V` such that `K ∩ {ρ_V ≤ ε} ⊂ U`. Then
/// `W̄ ⊂ V` and `K − W ⊂ U`.
pub fn separate_cover(
    k_points: &[Point],
    u: &OpenRegion,
    v: &OpenRegion,
) -> Result<Shrunk, CosheafError> {
    for (index, p) in k_points.iter().enumerate() {
        if !u.contains(p) && !v.contains(p) {
            return Err(CosheafError::CoverViolation { index });
        }
    }
    let condition = |eps: f64| {
        k_points
            .iter()
            .all(|p| v.rho(p) > eps || u.contains(p))
    };
    let mut eps = k_points
        .iter()
        .map(|p| v.rho(p))
        .fold(0.0f64, f64::max);
    if eps == 0.0 {
        // K misses V entirely, so K ⊂ U and any positive margin works.
        eps = 1.0;
    }
    let mut rounds = 0;
    while !condition(eps) {
        eps /= 2.0;
        rounds += 1;
        if rounds > 1100 {
            return Err(CosheafError::SearchFailed);
        }
    }
    Ok(Shrunk {
        region: v.shrink(eps),
        eps,
    })
}

/// Split `ξ` supported in `U ∪ V` into `μ = ξ⌊(K − W)` supported in `U` and
/// `ν = ξ⌊(K ∩ W)` supported in `V`, exactly: `μ + ν = ξ` atom by atom.
pub fn mv_decompose(
    xi: &SignedMeasure,
    u: &OpenRegion,
    v: &OpenRegion,
) -> Result<(SignedMeasure, SignedMeasure), CosheafError> {
    let support: Vec<Point> = xi.atoms().iter().map(|(p, _)| p.clone()).collect();
    let w = separate_cover(&support, u, v)?;
    let mut mu_atoms = Vec::new();
    let mut nu_atoms = Vec::new();
    for (p, weight) in xi.atoms() {
        if w.region.contains(p) {
            nu_atoms.push((p.clone(), *weight));
        } else {
            mu_atoms.push((p.clone(), *weight));
        }
    }
    let mu = SignedMeasure::new(mu_atoms);
    let nu = SignedMeasure::new(nu_atoms);
    debug_assert!(mu.atoms().iter().all(|(p, _)| u.contains(p)));
    debug_assert!(nu.atoms().iter().all(|(p, _)| v.contains(p)));
    Ok((mu, nu))
}

/// Kernel witness for `Φ₀`: given `μ + ν = 0`, returns `ξ` supported in
/// `U ∩ V` with `Φ₁(ξ) = (ξ, −ξ) = (μ, ν)`; concretely `ξ = μ`.
pub fn mv_kernel_witness(
    mu: &SignedMeasure,
    nu: &SignedMeasure,
    u: &OpenRegion,
    v: &OpenRegion,
) -> Result<SignedMeasure, CosheafError> {
    let sum = mu.add(nu);
    if !sum.is_zero() {
        return Err(CosheafError::NotInKernel {
            residual: sum.total_variation(),
        });
    }
    let xi = mu.clone();
    for (index, (p, _)) in xi.atoms().iter().enumerate() {
        if !u.contains(p) || !v.contains(p) {
            return Err(CosheafError::CoverViolation { index });
        }
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Euclidean;

    fn plane() -> SpaceRef {
        Euclidean::new(2)
    }

    #[test]
    fn shrink_single_interior_point() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let k = vec![Point::new([0.25, 0.0])];
        let s = shrink_open(&k, &u).unwrap();
        assert!((s.eps - 0.75).abs() < 1e-12);
        assert!(s.region.contains(&k[0]));
    }

    #[test]
    fn shrink_eps_is_min_over_active_point() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let k = vec![Point::new([0.0, 0.0]), Point::new([0.99, 0.0])];
        let s = shrink_open(&k, &u).unwrap();
        assert!((s.eps - 0.01).abs() < 1e-12);
    }

    #[test]
    fn shrink_rejects_outside_points() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let k = vec![Point::new([2.0, 0.0])];
        assert!(matches!(
            shrink_open(&k, &u),
            Err(CosheafError::NotContained { index: 0, .. })
        ));
    }

    #[test]
    fn nested_double_shrink() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let k = vec![Point::new([0.1, 0.0]), Point::new([-0.2, 0.3])];
        let s1 = shrink_open(&k, &u).unwrap();
        let s2 = shrink_open(&k, &s1.region).unwrap();
        // U'' ⊂ U' ⊂ U strictly, witnessed on a probe ring.
        for t in 0..16 {
            let angle = t as f64 * std::f64::consts::TAU / 16.0;
            let p = Point::new([0.9 * angle.cos(), 0.9 * angle.sin()]);
            assert!(u.rho(&p) >= s1.region.rho(&p));
            assert!(s1.region.rho(&p) >= s2.region.rho(&p));
        }
        assert!(s2.eps < s1.eps);
    }

    #[test]
    fn separate_when_k_inside_u() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let v = OpenRegion::ball(plane(), Point::new([1.5, 0.0]), 1.0);
        let k = vec![Point::new([0.1, 0.0]), Point::new([-0.3, 0.2])];
        let s = separate_cover(&k, &u, &v).unwrap();
        assert!(k.iter().all(|p| !s.region.contains(p) || u.contains(p)));
    }

    #[test]
    fn separate_when_k_only_in_v() {
        let u = OpenRegion::ball(plane(), Point::new([-5.0, 0.0]), 1.0);
        let v = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let k = vec![Point::new([0.0, 0.1]), Point::new([0.2, -0.4])];
        let s = separate_cover(&k, &u, &v).unwrap();
        // W must swallow all of K.
        assert!(k.iter().all(|p| s.region.contains(p)));
    }

    #[test]
    fn separate_half_spaces_straddling() {
        let u = OpenRegion::half_space(vec![1.0, 0.0], 0.6); // x < 0.6
        let v = OpenRegion::half_space(vec![-1.0, 0.0], -0.4); // x > 0.4
        let k: Vec<Point> = (0..11).map(|i| Point::new([i as f64 / 10.0, 0.0])).collect();
        let s = separate_cover(&k, &u, &v).unwrap();
        for p in &k {
            assert!(u.contains(p) || s.region.contains(p));
            if s.region.contains(p) {
                assert!(v.rho(p) > s.eps);
            }
        }
    }

    #[test]
    fn decompose_dirac_in_overlap() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let v = OpenRegion::ball(plane(), Point::new([1.0, 0.0]), 1.0);
        let xi = SignedMeasure::dirac(Point::new([0.5, 0.0]));
        let (mu, nu) = mv_decompose(&xi, &u, &v).unwrap();
        let total = mu.add(&nu);
        assert_eq!(total.atoms(), xi.atoms());
        assert_eq!(mu.atoms().len() + nu.atoms().len(), 1);
    }

    #[test]
    fn decompose_supported_away_from_v() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let v = OpenRegion::ball(plane(), Point::new([5.0, 0.0]), 1.0);
        let xi = SignedMeasure::new(vec![
            (Point::new([0.1, 0.0]), 2.0),
            (Point::new([-0.4, 0.2]), -1.5),
        ]);
        let (mu, nu) = mv_decompose(&xi, &u, &v).unwrap();
        assert_eq!(mu.atoms(), xi.atoms());
        assert!(nu.is_zero());
    }

    #[test]
    fn kernel_witness_round_trip() {
        let u = OpenRegion::ball(plane(), Point::new([0.0, 0.0]), 1.0);
        let v = OpenRegion::ball(plane(), Point::new([0.5, 0.0]), 1.0);
        let p = Point::new([0.4, 0.1]);
        let mu = SignedMeasure::dirac(p.clone());
        let nu = mu.scale(-1.0);
        let xi = mv_kernel_witness(&mu, &nu, &u, &v).unwrap();
        assert_eq!(xi.atoms(), mu.atoms());
        // Φ₁(ξ) = (ξ, −ξ) = (μ, ν).
        assert_eq!(xi.scale(-1.0).atoms(), nu.atoms());

        let zero = SignedMeasure::zero();
        let xi0 = mv_kernel_witness(&zero, &zero, &u, &v).unwrap();
        assert!(xi0.is_zero());

        let bad = SignedMeasure::dirac(Point::new([0.2, 0.0]));
        assert!(matches!(
            mv_kernel_witness(&mu, &bad, &u, &v),
            Err(CosheafError::NotInKernel { .. })
        ));
    }
}
