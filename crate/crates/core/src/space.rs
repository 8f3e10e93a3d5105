//! Metric spaces as distance oracles over flat-coordinate points.
//!
//! All spaces are immutable after construction and safe to share across
//! threads. Derived spaces (snowflake, product, subspace) delegate to their
//! base oracles.

use std::sync::Arc;

use crate::point::Point;

/// A metric space: a distance oracle plus a label.
///
/// Implementations must be symmetric bit-for-bit (`dist(a, b) == dist(b, a)`
/// as floats); every oracle here achieves that by building on `|a - b|`-style
/// expressions, which are sign-exact in IEEE arithmetic.
pub trait Space: Send + Sync {
    fn dist(&self, a: &Point, b: &Point) -> f64;
    fn name(&self) -> &str;

    /// Coordinate length of this space's points.
    fn coord_len(&self) -> usize;

    /// Vector-space structure, if the space carries one (used by the BT-norm
    /// distance, which needs `f - g`).
    fn vector_ops(&self) -> Option<&dyn VectorOps> {
        None
    }

    /// For snowflake spaces `(X, d^α)`, the base space and exponent.
    fn snowflake_parts(&self) -> Option<(&SpaceRef, f64)> {
        None
    }
}

/// Linear structure on a space whose points form a normed vector space.
pub trait VectorOps: Send + Sync {
    fn sub(&self, a: &Point, b: &Point) -> Point;
    fn norm(&self, a: &Point) -> f64;
}

pub type SpaceRef = Arc<dyn Space>;

/// Euclidean space `ℝ^d` with the standard norm.
#[derive(Debug)]
pub struct Euclidean {
    dim: usize,
    name: String,
}

impl Euclidean {
    pub fn new(dim: usize) -> Arc<Self> {
        Arc::new(Euclidean {
            dim,
            name: format!("R^{dim}"),
        })
    }

    /// The real line; used for interval domains and scalar targets.
    pub fn line() -> Arc<Self> {
        Self::new(1)
    }
}

pub fn euclidean_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl Space for Euclidean {
    fn dist(&self, a: &Point, b: &Point) -> f64 {
        euclidean_dist(a.coords(), b.coords())
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn coord_len(&self) -> usize {
        self.dim
    }

    fn vector_ops(&self) -> Option<&dyn VectorOps> {
        Some(self)
    }
}

impl VectorOps for Euclidean {
    fn sub(&self, a: &Point, b: &Point) -> Point {
        Point(a.0.iter().zip(b.0.iter()).map(|(x, y)| x - y).collect())
    }

    fn norm(&self, a: &Point) -> f64 {
        a.coords().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Snowflake `(X, d^α)` of a base space, `0 < α ≤ 1`.
///
/// For `α < 1` the space carries no nonconstant Lipschitz curve; the
/// diagnostic in `lipmap` makes that quantitative at desk scale.
pub struct Snowflake {
    base: SpaceRef,
    alpha: f64,
    name: String,
}

impl Snowflake {
    pub fn new(base: SpaceRef, alpha: f64) -> Arc<Self> {
        assert!(
            alpha > 0.0 && alpha <= 1.0,
            "snowflake exponent must lie in (0, 1]"
        );
        let name = format!("{}^{}", base.name(), alpha);
        Arc::new(Snowflake { base, alpha, name })
    }

    pub fn base(&self) -> &SpaceRef {
        &self.base
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Space for Snowflake {
    fn dist(&self, a: &Point, b: &Point) -> f64 {
        self.base.dist(a, b).powf(self.alpha)
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn coord_len(&self) -> usize {
        self.base.coord_len()
    }

    fn snowflake_parts(&self) -> Option<(&SpaceRef, f64)> {
        Some((&self.base, self.alpha))
    }
}

/// Product space with the sum metric
/// `d((x,w),(x',w')) = d_X(x,x') + d_W(w,w')`.
pub struct Product {
    left: SpaceRef,
    right: SpaceRef,
    split: usize,
    name: String,
}

impl Product {
    pub fn new(left: SpaceRef, right: SpaceRef) -> Arc<Self> {
        let split = left.coord_len();
        let name = format!("{} x {}", left.name(), right.name());
        Arc::new(Product {
            left,
            right,
            split,
            name,
        })
    }

    pub fn left(&self) -> &SpaceRef {
        &self.left
    }

    pub fn right(&self) -> &SpaceRef {
        &self.right
    }

    pub fn split_point(&self, p: &Point) -> (Point, Point) {
        let (a, b) = p.coords().split_at(self.split);
        (Point::new(a.iter().copied()), Point::new(b.iter().copied()))
    }
}

impl Space for Product {
    fn dist(&self, a: &Point, b: &Point) -> f64 {
        let (al, ar) = self.split_point(a);
        let (bl, br) = self.split_point(b);
        self.left.dist(&al, &bl) + self.right.dist(&ar, &br)
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn coord_len(&self) -> usize {
        self.split + self.right.coord_len()
    }
}

/// Unit circle parameterized by angle, with arc-length distance.
#[derive(Debug)]
pub struct Circle;

impl Circle {
    pub fn new() -> Arc<Self> {
        Arc::new(Circle)
    }
}

impl Space for Circle {
    fn dist(&self, a: &Point, b: &Point) -> f64 {
        let two_pi = std::f64::consts::TAU;
        let d = (a.coords()[0] - b.coords()[0]).abs() % two_pi;
        d.min(two_pi - d)
    }

    fn name(&self) -> &str {
        "S^1"
    }

    fn coord_len(&self) -> usize {
        1
    }
}
