//! Finitely supported elements of the free-space dual of a pointed metric
//! space, with the Arens–Eells (Kantorovich–Rubinstein) norm computed by a
//! transportation-dual LP.
//!
//! An element is `Σ aᵢ δ_{xᵢ}` read against Lipschitz functions vanishing at
//! the basepoint `x₀`; `δ_{x₀}` is the zero vector. The norm is
//!
//! ```text
//! ‖m‖ = sup { Σ aᵢ f(xᵢ) : Lip(f) ≤ 1, f(x₀) = 0 }
//! ```
//!
//! posed as a finite LP over the potential values `f(xᵢ)` with difference
//! constraints `|f(p) − f(q)| ≤ d(p, q)` over all pairs; McShane extension
//! makes the finite instance exact. Unbalanced elements are balanced through
//! `x₀` first, which is exact because `f(x₀) = 0`.

use crate::lp::{solve_max, DenseLp, LpError};
use crate::point::Point;
use crate::space::SpaceRef;
use crate::tolerances::WEIGHT_DROP;
use crate::LipMap;

/// Finitely supported signed measure; atoms are kept canonical (distinct
/// points, nonzero weights, sorted by coordinate key).
#[derive(Clone, Debug)]
pub struct SignedMeasure {
    atoms: Vec<(Point, f64)>,
}

impl SignedMeasure {
    pub fn new(atoms: Vec<(Point, f64)>) -> Self {
        SignedMeasure {
            atoms: canonicalize(atoms),
        }
    }

    pub fn zero() -> Self {
        SignedMeasure { atoms: Vec::new() }
    }

    pub fn dirac(p: Point) -> Self {
        SignedMeasure::new(vec![(p, 1.0)])
    }

    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.abs()).sum()
    }

    /// Total mass `Σ aᵢ` (the degree-0 augmentation).
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn add(&self, other: &SignedMeasure) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        SignedMeasure::new(atoms)
    }

    pub fn scale(&self, c: f64) -> Self {
        SignedMeasure::new(
            self.atoms
                .iter()
                .map(|(p, w)| (p.clone(), w * c))
                .collect(),
        )
    }
}

pub(crate) fn canonicalize(mut atoms: Vec<(Point, f64)>) -> Vec<(Point, f64)> {
    atoms.sort_by_key(|a| a.0.key());
    let mut out: Vec<(Point, f64)> = Vec::with_capacity(atoms.len());
    for (p, w) in atoms {
        match out.last_mut() {
            Some((q, acc)) if q.key() == p.key() => *acc += w,
            _ => out.push((p, w)),
        }
    }
    out.retain(|(_, w)| w.abs() >= WEIGHT_DROP);
    out
}

/// A signed measure with a designated basepoint, living in the free-space
/// dual of `(space, base)`.
#[derive(Clone)]
pub struct FreeSpaceElement {
    pub space: SpaceRef,
    pub base: Point,
    pub measure: SignedMeasure,
}

impl FreeSpaceElement {
    pub fn new(space: SpaceRef, base: Point, atoms: Vec<(Point, f64)>) -> Self {
        FreeSpaceElement {
            space,
            base,
            measure: SignedMeasure::new(atoms),
        }
    }

    pub fn zero(space: SpaceRef, base: Point) -> Self {
        FreeSpaceElement {
            space,
            base,
            measure: SignedMeasure::zero(),
        }
    }

    /// Atoms with basepoint atoms removed: `δ_{x₀}` is the zero vector, so
    /// this is the canonical representative of the element.
    pub fn reduced_atoms(&self) -> Vec<(Point, f64)> {
        self.measure
            .atoms()
            .iter()
            .filter(|(p, _)| self.space.dist(p, &self.base) > 0.0)
            .cloned()
            .collect()
    }
}

/// The balanced LP instance behind `ae_norm`, kept around for dumping and
/// external cross-checks.
pub struct AeInstance {
    space: SpaceRef,
    base: Point,
    /// Support points with forced-zero potentials removed.
    points: Vec<Point>,
    weights: Vec<f64>,
}

impl AeInstance {
    /// Balance through the basepoint, merge atoms, drop points at distance
    /// zero from the basepoint (their potential is pinned to zero), and
    /// orient the sign so the instance is invariant under global negation.
    pub fn build(elem: &FreeSpaceElement) -> Self {
        let mut atoms = elem.measure.atoms().to_vec();
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if total != 0.0 {
            atoms.push((elem.base.clone(), -total));
        }
        let mut atoms = canonicalize(atoms);
        atoms.retain(|(p, _)| elem.space.dist(p, &elem.base) > 0.0);
        if let Some((_, w0)) = atoms.first() {
            if *w0 < 0.0 {
                for (_, w) in atoms.iter_mut() {
                    *w = -*w;
                }
            }
        }
        let (points, weights) = atoms.into_iter().unzip();
        AeInstance {
            space: elem.space.clone(),
            base: elem.base.clone(),
            points,
            weights,
        }
    }

    /// Add zero-weight carrier points (used to check that enlarging the
    /// ambient space never moves the norm).
    pub fn with_extra_points(mut self, extra: &[Point]) -> Self {
        for p in extra {
            let dup = self.points.iter().any(|q| q.key() == p.key())
                || self.space.dist(p, &self.base) == 0.0;
            if !dup {
                self.points.push(p.clone());
                self.weights.push(0.0);
            }
        }
        self
    }

    /// Potential-form LP after the substitution `g_i = f_i + R_i` with
    /// `R_i = d(x_i, x₀)`; all right-hand sides are nonnegative by the
    /// triangle inequality, so the slack basis starts feasible.
    fn lp(&self) -> DenseLp {
        let n = self.points.len();
        let r: Vec<f64> = self
            .points
            .iter()
            .map(|p| self.space.dist(p, &self.base))
            .collect();
        let m = n * n; // n(n-1) difference rows + n upper bounds
        let mut a = vec![0.0f64; m * n];
        let mut b = vec![0.0f64; m];
        let mut row = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                a[row * n + i] = 1.0;
                a[row * n + j] = -1.0;
                let d = self.space.dist(&self.points[i], &self.points[j]);
                b[row] = (d + r[i] - r[j]).max(0.0);
                row += 1;
            }
        }
        for i in 0..n {
            a[row * n + i] = 1.0;
            b[row] = 2.0 * r[i];
            row += 1;
        }
        DenseLp {
            n,
            m,
            a,
            b,
            c: self.weights.clone(),
        }
    }

    pub fn solve(&self) -> Result<f64, LpError> {
        if self.points.is_empty() {
            return Ok(0.0);
        }
        let lp = self.lp();
        let sol = solve_max(&lp)?;
        let shift: f64 = self
            .weights
            .iter()
            .zip(&self.points)
            .map(|(w, p)| w * self.space.dist(p, &self.base))
            .sum();
        Ok((sol.value - shift).max(0.0))
    }

    /// Plain-text dump, one constraint per line, for external cross-checks.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        let obj = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{w}*f[{}]", i + 1))
            .collect::<Vec<_>>()
            .join(" + ");
        out.push_str(&format!("maximize {obj}\n"));
        out.push_str("f[0] = 0\n");
        let mut all = vec![self.base.clone()];
        all.extend(self.points.iter().cloned());
        for i in 0..all.len() {
            for j in 0..all.len() {
                if i != j {
                    let d = self.space.dist(&all[i], &all[j]);
                    out.push_str(&format!("f[{i}] - f[{j}] <= {d}\n"));
                }
            }
        }
        out
    }

    pub fn constraint_count(&self) -> usize {
        let n = self.points.len() + 1;
        n * (n - 1)
    }
}

/// Arens–Eells norm of a finitely supported element, by LP.
pub fn ae_norm(elem: &FreeSpaceElement) -> Result<f64, LpError> {
    AeInstance::build(elem).solve()
}

/// `‖δ_x − δ_y‖`, which the LP must reproduce as `d(x, y)`.
pub fn dipole_norm(space: &SpaceRef, x: &Point, y: &Point) -> Result<f64, LpError> {
    ae_norm(&FreeSpaceElement::new(
        space.clone(),
        x.clone(),
        vec![(x.clone(), 1.0), (y.clone(), -1.0)],
    ))
}

/// Closed-form norm of the balanced four-point element
/// `δ_{p1} − δ_{p2} − δ_{p3} + δ_{p4}`: the cheaper of the two perfect
/// matchings carrying the sources `{p1, p4}` onto the sinks `{p2, p3}`.
/// Certified against the LP oracle by the acceptance suite before anything
/// downstream relies on it.
pub fn four_point_norm(space: &SpaceRef, p1: &Point, p2: &Point, p3: &Point, p4: &Point) -> f64 {
    let m1 = space.dist(p1, p2) + space.dist(p4, p3);
    let m2 = space.dist(p1, p3) + space.dist(p4, p2);
    m1.min(m2)
}

/// `(φ_# m)(f) = m(f ∘ φ)`: atoms map pointwise, the basepoint follows `φ`.
pub fn pushforward_dual(phi: &LipMap, m: &FreeSpaceElement) -> FreeSpaceElement {
    let atoms = m
        .measure
        .atoms()
        .iter()
        .map(|(p, w)| (phi.eval(p), *w))
        .collect();
    FreeSpaceElement::new(phi.target.clone(), phi.eval(&m.base), atoms)
}

/// Embedding `(μ, ν) ↦ Σ aᵢ δ_{(xᵢ, y₀)} + Σ bⱼ δ_{(x₀, yⱼ)}` into the
/// free-space dual of the sum-metric product.
pub fn product_embed(
    mu: &FreeSpaceElement,
    nu: &FreeSpaceElement,
    product: &SpaceRef,
) -> FreeSpaceElement {
    let x0 = &mu.base;
    let y0 = &nu.base;
    let mut atoms: Vec<(Point, f64)> = mu
        .measure
        .atoms()
        .iter()
        .map(|(p, w)| (Point::pair(p, y0), *w))
        .collect();
    atoms.extend(
        nu.measure
            .atoms()
            .iter()
            .map(|(q, w)| (Point::pair(x0, q), *w)),
    );
    FreeSpaceElement::new(product.clone(), Point::pair(x0, y0), atoms)
}

/// Move an element to a new basepoint: `μ ↦ μ − μ(X) δ_{x₁}` read at `x₀`.
/// An isometric isomorphism, so the norm is preserved.
pub fn rebase(m: &FreeSpaceElement, new_base: &Point) -> FreeSpaceElement {
    let total = m.measure.total_mass();
    let mut atoms = m.measure.atoms().to_vec();
    if total != 0.0 {
        atoms.push((m.base.clone(), -total));
    }
    FreeSpaceElement::new(m.space.clone(), new_base.clone(), atoms)
}
