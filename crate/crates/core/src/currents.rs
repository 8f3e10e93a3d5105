//! Currents induced by Lipschitz simplices and finitely supported measure
//! chains: quadrature evaluation, boundary and pushforward operators, the
//! finite-mass bound, augmentation, and the convergence counterexample
//! diagnostics.
//!
//! A `k`-simplex current evaluates a form `f dπ₁ ∧ … ∧ dπ_k` as
//!
//! ```text
//! [σ](f dπ) = ∫_{Δ^k} f(σ(s)) det(∇(π ∘ σ)(s)) ds
//! ```
//!
//! by the midpoint rule over the Freudenthal mesh, with the Jacobian taken
//! by central finite differences whose half-steps are clipped to the room
//! the simplex leaves near its faces. A measure chain `μ = Σ wᵢ δ_{σᵢ}`
//! evaluates linearly: `T^μ(f dπ) = Σ wᵢ [σᵢ](f dπ)`.
//!
//! Formal chain arithmetic (boundary, pushforward, prism cells) is exact:
//! every simplex is a base oracle plus an affine reparameterization whose
//! entries stay small integers under face and cylinder composition, so
//! atoms that must cancel carry bit-identical keys.

use std::sync::Arc;

use thiserror::Error;

use crate::affine::AffineMap;
use crate::lipmap::{fresh_id, lip_estimate, LipMap, PairPlan, SampleSet};
use crate::liptop::{mt_distance, MtDistanceReport, TopologyError};
use crate::point::Point;
use crate::simplex::{face_map, SimplexDomain};
use crate::space::SpaceRef;
use crate::tolerances::{FD_MIN_STEP, MASS_BOUND_SAFETY, WEIGHT_DROP};

#[derive(Debug, Error)]
pub enum CurrentsError {
    #[error("form degree {form} does not match chain degree {chain}")]
    DegreeMismatch { form: usize, chain: usize },
    #[error("finite-difference step {0:e} is below the noise floor")]
    DegenerateStep(f64),
    #[error("boundary of a degree-0 chain is undefined")]
    DegreeZero,
    #[error("augmentation requires a degree-0 chain, got degree {0}")]
    DegreeNotZero(usize),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

// ---------------------------------------------------------------------------
// Test forms

type ScalarFn = dyn Fn(&Point) -> f64 + Send + Sync;

/// A real-valued Lipschitz oracle with declared constants. The declared
/// Lipschitz constant must upper-bound the sampled estimate wherever the
/// oracle is used; `validate_declared` checks exactly that.
#[derive(Clone)]
pub struct ScalarOracle {
    pub name: String,
    eval: Arc<ScalarFn>,
    pub declared_lip: f64,
    pub declared_bound: f64,
}

impl ScalarOracle {
    pub fn new(
        name: impl Into<String>,
        declared_lip: f64,
        declared_bound: f64,
        eval: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarOracle {
            name: name.into(),
            eval: Arc::new(eval),
            declared_lip,
            declared_bound,
        }
    }

    pub fn eval(&self, p: &Point) -> f64 {
        (self.eval)(p)
    }

    pub fn constant(c: f64) -> Self {
        ScalarOracle::new(format!("{c}"), 0.0, c.abs(), move |_| c)
    }

    /// The `i`-th coordinate function.
    pub fn coordinate(i: usize, bound: f64) -> Self {
        ScalarOracle::new(format!("x{}", i + 1), 1.0, bound, move |p| p.coords()[i])
    }

    /// `p ↦ coeffs · p + c`.
    pub fn affine(coeffs: Vec<f64>, c: f64, bound: f64) -> Self {
        let lip = coeffs.iter().map(|a| a * a).sum::<f64>().sqrt();
        ScalarOracle::new("affine", lip, bound, move |p| {
            c + coeffs.iter().zip(p.coords()).map(|(a, x)| a * x).sum::<f64>()
        })
    }

    pub fn combine(a: f64, f1: &ScalarOracle, b: f64, f2: &ScalarOracle) -> Self {
        let (g1, g2) = (f1.eval.clone(), f2.eval.clone());
        ScalarOracle::new(
            format!("{a}*{} + {b}*{}", f1.name, f2.name),
            a.abs() * f1.declared_lip + b.abs() * f2.declared_lip,
            a.abs() * f1.declared_bound + b.abs() * f2.declared_bound,
            move |p| a * g1(p) + b * g2(p),
        )
    }
}

/// A `k`-form `f dπ₁ ∧ … ∧ dπ_k`.
#[derive(Clone)]
pub struct TestForm {
    pub f: ScalarOracle,
    pub pis: Vec<ScalarOracle>,
}

impl TestForm {
    pub fn new(f: ScalarOracle, pis: Vec<ScalarOracle>) -> Self {
        TestForm { f, pis }
    }

    pub fn degree(&self) -> usize {
        self.pis.len()
    }

    /// The constant-one `k`-form `1 dx₁ ∧ … ∧ dx_k`.
    pub fn volume_form(k: usize, coord_bound: f64) -> Self {
        TestForm::new(
            ScalarOracle::constant(1.0),
            (0..k).map(|i| ScalarOracle::coordinate(i, coord_bound)).collect(),
        )
    }

    /// `f dπ ↦ df ∧ dπ`: the `(k+1)`-form `1 df ∧ dπ₁ ∧ … ∧ dπ_k`.
    pub fn boundary_form(&self) -> TestForm {
        let mut pis = Vec::with_capacity(self.pis.len() + 1);
        pis.push(self.f.clone());
        pis.extend(self.pis.iter().cloned());
        TestForm::new(ScalarOracle::constant(1.0), pis)
    }

    pub fn swap_pis(&self, i: usize, j: usize) -> TestForm {
        let mut pis = self.pis.clone();
        pis.swap(i, j);
        TestForm::new(self.f.clone(), pis)
    }

    /// Pullback `(f dπ) ∘ φ = (f∘φ) d(π∘φ)`, declared constants scaled by
    /// the given constant of `φ`. Makes the pushforward naturality
    /// `T^{φ#μ}(f dπ) = T^μ((f∘φ) d(π∘φ))` checkable by evaluation.
    pub fn pullback(&self, phi: &LipMap, lip_phi: f64) -> TestForm {
        let pull = |o: &ScalarOracle| {
            let inner = o.eval.clone();
            let phi = phi.clone();
            ScalarOracle::new(
                format!("{}∘{}", o.name, phi.name),
                o.declared_lip * lip_phi,
                o.declared_bound,
                move |p| inner(&phi.eval(p)),
            )
        };
        TestForm::new(pull(&self.f), self.pis.iter().map(pull).collect())
    }

    /// Check the declared Lipschitz constants against sampled estimates on
    /// the images of the given points under `eval`.
    pub fn validate_declared(&self, points: &[Point], space: &SpaceRef) -> bool {
        let mut ok = true;
        for pi in self.pis.iter().chain(std::iter::once(&self.f)) {
            let mut worst = 0.0f64;
            for (i, a) in points.iter().enumerate() {
                for b in points.iter().skip(i + 1) {
                    let d = space.dist(a, b);
                    if d > 0.0 {
                        worst = worst.max((pi.eval(a) - pi.eval(b)).abs() / d);
                    }
                }
            }
            ok &= worst <= pi.declared_lip + 1e-12;
        }
        ok
    }
}

// ---------------------------------------------------------------------------
// Lipschitz simplices and measure chains

/// Structural identity of a simplex's underlying oracle. Keys compare
/// equal exactly when the construction paths agree, which is what formal
/// cancellation needs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseKey {
    Fresh(u64),
    /// Postcomposition with a registered Lipschitz map.
    Push(u64, Box<BaseKey>),
    /// `σ ↦ σ × id_I` on the base oracle.
    Cylinder(Box<BaseKey>),
}

type RawEval = dyn Fn(&[f64]) -> Point + Send + Sync;

pub struct MapBase {
    key: BaseKey,
    domain_dim: usize,
    eval: Arc<RawEval>,
}

/// A Lipschitz `k`-simplex: a base oracle precomposed with an affine map
/// `Δ^k → ℝ^{base dim}`. Faces, pushforwards, and prism cells all stay in
/// this representation.
#[derive(Clone)]
pub struct LipSimplex {
    base: Arc<MapBase>,
    affine: AffineMap,
}

/// Canonical atom key: base identity plus affine bits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomKey(BaseKey, Vec<u64>);

impl LipSimplex {
    pub fn fresh(k: usize, eval: impl Fn(&[f64]) -> Point + Send + Sync + 'static) -> Self {
        LipSimplex {
            base: Arc::new(MapBase {
                key: BaseKey::Fresh(fresh_id()),
                domain_dim: k,
                eval: Arc::new(eval),
            }),
            affine: AffineMap::identity(k),
        }
    }

    /// Affine simplex `s ↦ M s + c` into `ℝ^d`.
    pub fn affine_simplex(k: usize, map: AffineMap) -> Self {
        assert_eq!(map.cols, k);
        LipSimplex::fresh(k, move |s| Point(map.apply(s)))
    }

    pub fn k(&self) -> usize {
        self.affine.cols
    }

    pub fn eval(&self, s: &[f64]) -> Point {
        (self.base.eval)(&self.affine.apply(s))
    }

    pub fn key(&self) -> AtomKey {
        AtomKey(self.base.key.clone(), self.affine.key())
    }

    /// Precompose with the `i`-th affine face inclusion.
    pub fn face(&self, i: usize) -> LipSimplex {
        LipSimplex {
            base: self.base.clone(),
            affine: self.affine.compose(&face_map(self.k(), i)),
        }
    }

    /// Precompose with an arbitrary affine map into the current domain.
    pub fn precompose(&self, a: &AffineMap) -> LipSimplex {
        LipSimplex {
            base: self.base.clone(),
            affine: self.affine.compose(a),
        }
    }

    /// Postcompose with a Lipschitz map (`φ ∘ σ`). Shares the base key
    /// structurally so pushforward commutes with faces on the nose.
    pub fn pushforward(&self, phi: &LipMap) -> LipSimplex {
        let inner = self.base.clone();
        let phi_eval = phi.clone();
        LipSimplex {
            base: Arc::new(MapBase {
                key: BaseKey::Push(phi.id, Box::new(self.base.key.clone())),
                domain_dim: self.base.domain_dim,
                eval: Arc::new(move |s| phi_eval.eval(&(inner.eval)(s))),
            }),
            affine: self.affine.clone(),
        }
    }

    /// The cylinder `σ_base × id_I` over this simplex's base oracle, with
    /// the affine part lifted as `(α × id)`. Slicing maps compose on the
    /// right of the lifted affine, so prism cells of faces and faces of
    /// prism cells meet in identical keys.
    pub fn cylinder_base(&self) -> (Arc<MapBase>, AffineMap) {
        let inner = self.base.clone();
        let d = self.base.domain_dim;
        let base = Arc::new(MapBase {
            key: BaseKey::Cylinder(Box::new(self.base.key.clone())),
            domain_dim: d + 1,
            eval: Arc::new(move |s: &[f64]| {
                let x = (inner.eval)(&s[..d]);
                let mut coords = x.0;
                coords.push(s[d]);
                Point(coords)
            }),
        });
        (base, self.affine.cylinder())
    }

    pub fn from_parts(base: Arc<MapBase>, affine: AffineMap) -> Self {
        LipSimplex { base, affine }
    }

    /// View the simplex as a `LipMap` on its domain (for MT-distance and
    /// Lipschitz-constant diagnostics).
    pub fn as_lip_map(&self, target: SpaceRef, grid_n: usize) -> LipMap {
        let dom = SimplexDomain::new(self.k());
        let (points, adjacency) = dom.grid(grid_n);
        let me = self.clone();
        LipMap::new(
            "simplex",
            dom,
            target,
            SampleSet::with_adjacency(points, adjacency),
            move |p| me.eval(p.coords()),
        )
    }
}

/// A finitely supported signed measure on Lipschitz `k`-simplices.
#[derive(Clone)]
pub struct MeasureChain {
    k: usize,
    atoms: Vec<(LipSimplex, f64)>,
}

impl MeasureChain {
    pub fn new(k: usize, atoms: Vec<(LipSimplex, f64)>) -> Self {
        MeasureChain { k, atoms }.canonicalized()
    }

    /// Keep the atom list as given (used to witness numerical cancellation
    /// without formal cancellation).
    pub fn raw(k: usize, atoms: Vec<(LipSimplex, f64)>) -> Self {
        for (s, _) in &atoms {
            assert_eq!(s.k(), k);
        }
        MeasureChain { k, atoms }
    }

    pub fn zero(k: usize) -> Self {
        MeasureChain { k, atoms: Vec::new() }
    }

    pub fn dirac(sigma: LipSimplex) -> Self {
        let k = sigma.k();
        MeasureChain {
            k,
            atoms: vec![(sigma, 1.0)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn atoms(&self) -> &[(LipSimplex, f64)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.abs()).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        MeasureChain::new(
            self.k,
            self.atoms.iter().map(|(s, w)| (s.clone(), w * c)).collect(),
        )
    }

    pub fn add(&self, other: &MeasureChain) -> Self {
        assert_eq!(self.k, other.k);
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        MeasureChain::new(self.k, atoms)
    }

    pub fn canonicalized(mut self) -> Self {
        for (s, _) in &self.atoms {
            assert_eq!(s.k(), self.k, "atom degree mismatch");
        }
        self.atoms.sort_by_key(|a| a.0.key());
        let mut out: Vec<(LipSimplex, f64)> = Vec::with_capacity(self.atoms.len());
        for (s, w) in self.atoms {
            match out.last_mut() {
                Some((t, acc)) if t.key() == s.key() => *acc += w,
                _ => out.push((s, w)),
            }
        }
        out.retain(|(_, w)| w.abs() >= WEIGHT_DROP);
        MeasureChain { k: self.k, atoms: out }
    }
}

/// `∂μ = Σ_{i=0}^k (−1)^i r_i# μ`, canonicalized.
pub fn boundary_chain(mu: &MeasureChain) -> Result<MeasureChain, CurrentsError> {
    if mu.k == 0 {
        return Err(CurrentsError::DegreeZero);
    }
    Ok(MeasureChain::new(mu.k - 1, boundary_atoms(mu)))
}

/// Same expansion without canonicalization.
pub fn boundary_chain_raw(mu: &MeasureChain) -> Result<MeasureChain, CurrentsError> {
    if mu.k == 0 {
        return Err(CurrentsError::DegreeZero);
    }
    Ok(MeasureChain::raw(mu.k - 1, boundary_atoms(mu)))
}

fn boundary_atoms(mu: &MeasureChain) -> Vec<(LipSimplex, f64)> {
    let mut atoms = Vec::with_capacity(mu.atoms.len() * (mu.k + 1));
    for (sigma, w) in &mu.atoms {
        for i in 0..=mu.k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            atoms.push((sigma.face(i), sign * w));
        }
    }
    atoms
}

/// `φ# μ`: postcompose every atom. Commutes with `boundary_chain` exactly
/// as formal chains, since faces touch only the affine part.
pub fn pushforward_chain(phi: &LipMap, mu: &MeasureChain) -> MeasureChain {
    MeasureChain::new(
        mu.k,
        mu.atoms
            .iter()
            .map(|(s, w)| (s.pushforward(phi), *w))
            .collect(),
    )
}

/// Degree-0 augmentation `μ ↦ μ(X)`.
pub fn augmentation(mu: &MeasureChain) -> Result<f64, CurrentsError> {
    if mu.k != 0 {
        return Err(CurrentsError::DegreeNotZero(mu.k));
    }
    Ok(mu.atoms.iter().map(|(_, w)| w).sum())
}

// ---------------------------------------------------------------------------
// Quadrature evaluation

/// Value of a current evaluation, with the one-refinement error estimate.
#[derive(Debug, Clone, Copy)]
pub struct CurrentValue {
    pub value: f64,
    pub error_estimate: f64,
    pub grid_n: usize,
}

struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: 0.0, c: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Signed-bucket Leibniz determinant for `k ≤ 3`, LU beyond.
///
/// Each permutation product multiplies its factors in a canonical order and
/// the positive and negative terms are accumulated separately, so swapping
/// two rows negates the result bit-for-bit.
pub fn det_small(k: usize, m: &[f64]) -> f64 {
    match k {
        0 => 1.0,
        1 => m[0],
        2 | 3 => {
            let perms: &[(&[usize], f64)] = if k == 2 {
                &[(&[0, 1], 1.0), (&[1, 0], -1.0)]
            } else {
                &[
                    (&[0, 1, 2], 1.0),
                    (&[1, 2, 0], 1.0),
                    (&[2, 0, 1], 1.0),
                    (&[0, 2, 1], -1.0),
                    (&[1, 0, 2], -1.0),
                    (&[2, 1, 0], -1.0),
                ]
            };
            let mut pos: Vec<f64> = Vec::with_capacity(3);
            let mut neg: Vec<f64> = Vec::with_capacity(3);
            for (perm, sgn) in perms {
                let mut factors: Vec<f64> = (0..k).map(|i| m[i * k + perm[i]]).collect();
                factors.sort_by_key(|a| a.to_bits());
                let p: f64 = factors.iter().product();
                let term = sgn * p;
                if term >= 0.0 {
                    pos.push(term);
                } else {
                    neg.push(-term);
                }
            }
            pos.sort_by(f64::total_cmp);
            neg.sort_by(f64::total_cmp);
            pos.iter().sum::<f64>() - neg.iter().sum::<f64>()
        }
        _ => {
            let mut a = m.to_vec();
            let mut det = 1.0f64;
            for col in 0..k {
                let mut piv = col;
                for r in col + 1..k {
                    if a[r * k + col].abs() > a[piv * k + col].abs() {
                        piv = r;
                    }
                }
                if a[piv * k + col] == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    for c in 0..k {
                        a.swap(col * k + c, piv * k + c);
                    }
                    det = -det;
                }
                let d = a[col * k + col];
                det *= d;
                for r in col + 1..k {
                    let f = a[r * k + col] / d;
                    if f != 0.0 {
                        for c in col..k {
                            a[r * k + c] -= f * a[col * k + c];
                        }
                    }
                }
            }
            det
        }
    }
}

/// Single-grid midpoint evaluation of `[σ](f dπ)`.
pub fn eval_simplex_current_at(
    sigma: &LipSimplex,
    form: &TestForm,
    n: usize,
) -> Result<f64, CurrentsError> {
    let k = sigma.k();
    if form.degree() != k {
        return Err(CurrentsError::DegreeMismatch {
            form: form.degree(),
            chain: k,
        });
    }
    let dom = SimplexDomain::new(k);
    if k == 0 {
        return Ok(form.f.eval(&sigma.eval(&[])));
    }
    let h = 1.0 / n as f64;
    let delta = 0.5 * h;
    if delta < FD_MIN_STEP {
        return Err(CurrentsError::DegenerateStep(delta));
    }
    let mut acc = Kahan::new();
    let mut shifted = vec![0.0f64; k];
    let mut jac = vec![0.0f64; k * k];
    let mut pi_plus = vec![0.0f64; k];
    let mut pi_minus = vec![0.0f64; k];
    dom.for_each_cell(n, |bary, vol| {
        let x = sigma.eval(bary);
        let fval = form.f.eval(&x);
        let slack = 1.0 - bary.iter().sum::<f64>();
        for j in 0..k {
            // Central difference with step h/2, clipped to the room the
            // simplex leaves in direction ±e_j (one-sided near faces).
            let fwd = delta.min(slack).max(0.0);
            let back = delta.min(bary[j]).max(0.0);
            debug_assert!(fwd + back > 0.0, "barycenter with no differentiation room");
            shifted.copy_from_slice(bary);
            shifted[j] = bary[j] + fwd;
            let xp = sigma.eval(&shifted);
            shifted[j] = bary[j] - back;
            let xm = sigma.eval(&shifted);
            for (i, pi) in form.pis.iter().enumerate() {
                pi_plus[i] = pi.eval(&xp);
                pi_minus[i] = pi.eval(&xm);
            }
            for i in 0..k {
                jac[i * k + j] = (pi_plus[i] - pi_minus[i]) / (fwd + back);
            }
        }
        let det = det_small(k, &jac);
        acc.add(vol * fval * det);
    });
    Ok(acc.sum)
}

/// `[σ](f dπ)` at grid `n`, with `|value(n) − value(2n)|` as the error
/// estimate.
pub fn eval_simplex_current(
    sigma: &LipSimplex,
    form: &TestForm,
    n: usize,
) -> Result<CurrentValue, CurrentsError> {
    let coarse = eval_simplex_current_at(sigma, form, n)?;
    let fine = eval_simplex_current_at(sigma, form, 2 * n)?;
    Ok(CurrentValue {
        value: coarse,
        error_estimate: (coarse - fine).abs(),
        grid_n: n,
    })
}

/// `T^μ(f dπ) = Σ wᵢ [σᵢ](f dπ)`; linear in the chain and in `f`.
pub fn eval_chain_current(
    mu: &MeasureChain,
    form: &TestForm,
    n: usize,
) -> Result<CurrentValue, CurrentsError> {
    if form.degree() != mu.k {
        return Err(CurrentsError::DegreeMismatch {
            form: form.degree(),
            chain: mu.k,
        });
    }
    let mut value = Kahan::new();
    let mut err = Kahan::new();
    for (sigma, w) in &mu.atoms {
        let cv = eval_simplex_current(sigma, form, n)?;
        value.add(w * cv.value);
        err.add(w.abs() * cv.error_estimate);
    }
    Ok(CurrentValue {
        value: value.sum,
        error_estimate: err.sum,
        grid_n: n,
    })
}

/// Single-grid chain evaluation (no refinement pass).
pub fn eval_chain_current_at(
    mu: &MeasureChain,
    form: &TestForm,
    n: usize,
) -> Result<f64, CurrentsError> {
    let mut value = Kahan::new();
    for (sigma, w) in &mu.atoms {
        value.add(w * eval_simplex_current_at(sigma, form, n)?);
    }
    Ok(value.sum)
}

/// Both sides of `∂T^μ = T^{∂μ}` on a `(k−1)`-form, and their gap.
pub fn boundary_current_identity(
    mu: &MeasureChain,
    form: &TestForm,
    n: usize,
) -> Result<(f64, f64, f64), CurrentsError> {
    if form.degree() + 1 != mu.k {
        return Err(CurrentsError::DegreeMismatch {
            form: form.degree(),
            chain: mu.k,
        });
    }
    let lhs = eval_chain_current(mu, &form.boundary_form(), n)?.value;
    let rhs = eval_chain_current(&boundary_chain(mu)?, form, n)?.value;
    Ok((lhs, rhs, (lhs - rhs).abs()))
}

/// Sampled Lipschitz constant of a simplex map over the lattice grid.
pub fn simplex_lip_estimate(
    sigma: &LipSimplex,
    target: &SpaceRef,
    grid_n: usize,
) -> Result<f64, CurrentsError> {
    let map = sigma.as_lip_map(target.clone(), grid_n);
    Ok(lip_estimate(&map, &PairPlan::Adjacent).map_err(TopologyError::from)?)
}

/// Dominating measure for the finite-mass axiom: the image of the simplex
/// quadrature weights under the atom maps (all weights nonnegative), with
/// the constant `L^k Π Lip(πᵢ)` factored out.
#[derive(Clone)]
pub struct MassEstimate {
    pub nu: crate::freespace::SignedMeasure,
    pub constant: f64,
}

impl MassEstimate {
    pub fn integral_of_abs(&self, f: &ScalarOracle) -> f64 {
        let mut acc = Kahan::new();
        for (p, w) in self.nu.atoms() {
            acc.add(w * f.eval(p).abs());
        }
        acc.sum
    }
}

/// The finite-mass inequality at desk scale:
/// `|T^μ(f dπ)| ≤ L^k Π Lip(πᵢ) ∫ |f| dν` with `L` the (inflated) sampled
/// atom constant and `ν` the pushforward of the quadrature weights.
#[derive(Clone)]
pub struct MassBound {
    pub lhs_abs: f64,
    pub rhs_bound: f64,
    pub lip_factor: f64,
    pub estimate: MassEstimate,
}

impl std::fmt::Debug for MassBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MassBound")
            .field("lhs_abs", &self.lhs_abs)
            .field("rhs_bound", &self.rhs_bound)
            .field("lip_factor", &self.lip_factor)
            .field("nu_atoms", &self.estimate.nu.atoms().len())
            .finish()
    }
}

pub fn mass_bound_check(
    mu: &MeasureChain,
    form: &TestForm,
    n: usize,
    target: &SpaceRef,
) -> Result<MassBound, CurrentsError> {
    let k = mu.k;
    let lhs_abs = eval_chain_current(mu, form, n)?.value.abs();
    let mut lip = 0.0f64;
    for (sigma, _) in &mu.atoms {
        lip = lip.max(simplex_lip_estimate(sigma, target, n)?);
    }
    let lip_factor = MASS_BOUND_SAFETY * lip;
    let pi_factor: f64 = form.pis.iter().map(|p| p.declared_lip).product();
    let dom = SimplexDomain::new(k);
    let mut nu_atoms: Vec<(Point, f64)> = Vec::new();
    for (sigma, w) in &mu.atoms {
        dom.for_each_cell(n, |bary, vol| {
            nu_atoms.push((sigma.eval(bary), w.abs() * vol));
        });
    }
    let estimate = MassEstimate {
        nu: crate::freespace::SignedMeasure::new(nu_atoms),
        constant: lip_factor.powi(k as i32) * pi_factor,
    };
    debug_assert!(estimate.nu.atoms().iter().all(|(_, w)| *w >= 0.0));
    let rhs_bound = estimate.constant * estimate.integral_of_abs(&form.f);
    Ok(MassBound {
        lhs_abs,
        rhs_bound,
        lip_factor,
        estimate,
    })
}

// ---------------------------------------------------------------------------
// Convergence diagnostics

#[derive(Debug, Clone)]
pub struct ContinuityRow {
    pub t: f64,
    pub value: f64,
    pub mt: MtDistanceReport,
    pub uniform_dist: f64,
}

/// Current values along a family of simplices, against MT and uniform
/// distances to the limit simplex. Along MT-convergent families the values
/// converge; along uniformly-convergent families with exploding Lipschitz
/// constants they need not.
pub fn continuity_diagnostic(
    family: &[(f64, LipSimplex)],
    limit: &LipSimplex,
    form: &TestForm,
    n: usize,
    target: &SpaceRef,
    sample_n: usize,
) -> Result<Vec<ContinuityRow>, CurrentsError> {
    let limit_map = limit.as_lip_map(target.clone(), sample_n);
    let mut rows = Vec::with_capacity(family.len());
    for (t, sigma) in family {
        let sigma_map = sigma.as_lip_map(target.clone(), sample_n);
        let mt = mt_distance(&sigma_map, &limit_map, &PairPlan::Adjacent)?;
        let uniform = crate::liptop::uniform_distance(&sigma_map, &limit_map);
        rows.push(ContinuityRow {
            t: *t,
            value: eval_simplex_current_at(sigma, form, n)?,
            mt,
            uniform_dist: uniform,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct DivergenceRow {
    pub eps: f64,
    pub value: f64,
    pub eps_times_value: f64,
}

/// Rows `(ε, [σ_ε](form), ε · value)`. A near-constant last column across a
/// dyadic ε-list witnesses a `C/ε` blow-up, so the family's pushforward
/// measure admits no well-defined current integral.
pub fn non_integrability_diagnostic(
    family: &[(f64, LipSimplex)],
    form: &TestForm,
    grid_for_eps: impl Fn(f64) -> usize,
) -> Result<Vec<DivergenceRow>, CurrentsError> {
    let mut rows = Vec::with_capacity(family.len());
    for (eps, sigma) in family {
        assert!(*eps > 0.0 && *eps <= 1.0);
        let value = eval_simplex_current_at(sigma, form, grid_for_eps(*eps))?;
        rows.push(DivergenceRow {
            eps: *eps,
            value,
            eps_times_value: eps * value,
        });
    }
    Ok(rows)
}
