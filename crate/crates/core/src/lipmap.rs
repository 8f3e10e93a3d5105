//! Lipschitz maps as evaluation oracles with finite sample sets, and the
//! sampled lower-bound estimator for Lipschitz constants.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::point::Point;
use crate::space::{Space, SpaceRef};

static NEXT_MAP_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_MAP_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("sample set needs at least {needed} points, found {found}")]
    EmptySample { needed: usize, found: usize },
    #[error("sample plan {0} requires grid adjacency, which this sample set lacks")]
    NoAdjacency(&'static str),
    #[error("target space {0} carries no vector structure")]
    TargetNotNormed(String),
    #[error("meshes must be strictly decreasing")]
    MeshesNotDecreasing,
}

/// A finite set of domain points, optionally with grid-neighbor pairs.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub points: Vec<Point>,
    pub adjacency: Option<Vec<(usize, usize)>>,
}

impl SampleSet {
    pub fn new(points: Vec<Point>) -> Self {
        SampleSet {
            points,
            adjacency: None,
        }
    }

    pub fn with_adjacency(points: Vec<Point>, adjacency: Vec<(usize, usize)>) -> Self {
        SampleSet {
            points,
            adjacency: Some(adjacency),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Uniform grid on `[0, 1]` with `n + 1` points and consecutive-pair
    /// adjacency.
    pub fn interval(n: usize) -> Self {
        assert!(n >= 1);
        let points = (0..=n).map(|j| Point::scalar(j as f64 / n as f64)).collect();
        let adjacency = (0..n).map(|j| (j, j + 1)).collect();
        SampleSet::with_adjacency(points, adjacency)
    }

    /// Uniform grid on `[0, 1]` with spacing `h` (last gap may be shorter).
    pub fn interval_mesh(h: f64) -> Self {
        assert!(h > 0.0 && h <= 1.0);
        let n = (1.0 / h).ceil() as usize;
        Self::interval(n.max(1))
    }

    /// `n` equally spaced angles on the circle, adjacency wraps around.
    pub fn circle(n: usize) -> Self {
        assert!(n >= 2);
        let points = (0..n)
            .map(|j| Point::scalar(std::f64::consts::TAU * j as f64 / n as f64))
            .collect();
        let mut adjacency: Vec<(usize, usize)> = (0..n - 1).map(|j| (j, j + 1)).collect();
        adjacency.push((n - 1, 0));
        SampleSet::with_adjacency(points, adjacency)
    }
}

/// How `lip_estimate` draws sample pairs.
#[derive(Clone, Debug)]
pub enum PairPlan {
    /// Every unordered pair of sample points.
    AllPairs,
    /// Grid-neighbor pairs only (requires adjacency).
    Adjacent,
    /// `count` pairs drawn with a seeded generator; deterministic per plan.
    Random { count: usize, seed: u64 },
    /// Explicit index pairs.
    Pairs(Vec<(usize, usize)>),
}

impl PairPlan {
    pub(crate) fn resolve(&self, samples: &SampleSet) -> Result<Vec<(usize, usize)>, MetricError> {
        let n = samples.len();
        match self {
            PairPlan::AllPairs => {
                let mut out = Vec::with_capacity(n * (n - 1) / 2);
                for i in 0..n {
                    for j in i + 1..n {
                        out.push((i, j));
                    }
                }
                Ok(out)
            }
            PairPlan::Adjacent => samples
                .adjacency
                .clone()
                .ok_or(MetricError::NoAdjacency("Adjacent")),
            PairPlan::Random { count, seed } => {
                if n < 2 {
                    return Err(MetricError::EmptySample { needed: 2, found: n });
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut out = Vec::with_capacity(*count);
                while out.len() < *count {
                    let i = rng.gen_range(0..n);
                    let j = rng.gen_range(0..n);
                    if i != j {
                        out.push((i, j));
                    }
                }
                Ok(out)
            }
            PairPlan::Pairs(p) => Ok(p.clone()),
        }
    }
}

type EvalFn = dyn Fn(&Point) -> Point + Send + Sync;

/// A Lipschitz map given by an evaluation oracle, a domain sample set, and
/// the spaces it runs between. Immutable; evaluation must be thread-safe.
#[derive(Clone)]
pub struct LipMap {
    pub id: u64,
    pub name: String,
    pub domain: SpaceRef,
    pub target: SpaceRef,
    eval: Arc<EvalFn>,
    pub samples: Arc<SampleSet>,
}

impl LipMap {
    pub fn new(
        name: impl Into<String>,
        domain: SpaceRef,
        target: SpaceRef,
        samples: SampleSet,
        eval: impl Fn(&Point) -> Point + Send + Sync + 'static,
    ) -> Self {
        LipMap {
            id: fresh_id(),
            name: name.into(),
            domain,
            target,
            eval: Arc::new(eval),
            samples: Arc::new(samples),
        }
    }

    pub fn eval(&self, x: &Point) -> Point {
        (self.eval)(x)
    }

    pub fn identity(space: SpaceRef, samples: SampleSet) -> Self {
        LipMap::new("id", space.clone(), space, samples, |x| x.clone())
    }

    pub fn constant(domain: SpaceRef, target: SpaceRef, samples: SampleSet, value: Point) -> Self {
        LipMap::new("const", domain, target, samples, move |_| value.clone())
    }

    /// `g ∘ f`; keeps `f`'s domain samples.
    pub fn compose(g: &LipMap, f: &LipMap) -> Self {
        let gf = g.eval.clone();
        let ff = f.eval.clone();
        LipMap {
            id: fresh_id(),
            name: format!("{}∘{}", g.name, f.name),
            domain: f.domain.clone(),
            target: g.target.clone(),
            eval: Arc::new(move |x| gf(&ff(x))),
            samples: f.samples.clone(),
        }
    }

    /// Pointwise difference `f - g` into the shared normed target.
    pub fn difference(f: &LipMap, g: &LipMap) -> Result<Self, MetricError> {
        if f.target.vector_ops().is_none() {
            return Err(MetricError::TargetNotNormed(f.target.name().to_string()));
        }
        let target = f.target.clone();
        let fe = f.eval.clone();
        let ge = g.eval.clone();
        let t2 = target.clone();
        Ok(LipMap {
            id: fresh_id(),
            name: format!("{}-{}", f.name, g.name),
            domain: f.domain.clone(),
            target,
            eval: Arc::new(move |x| t2.vector_ops().unwrap().sub(&fe(x), &ge(x))),
            samples: f.samples.clone(),
        })
    }
}

/// Largest sampled difference quotient `d(f a, f b) / d(a, b)`.
///
/// A finite sup, hence a lower bound for the true constant whenever the
/// oracle is exactly Lipschitz; refining the sample set never decreases it
/// (for the `AllPairs` plan). Pairs at domain distance zero are skipped so
/// quotient-like inputs stay usable.
pub fn lip_estimate(f: &LipMap, plan: &PairPlan) -> Result<f64, MetricError> {
    if f.samples.len() < 2 {
        return Err(MetricError::EmptySample {
            needed: 2,
            found: f.samples.len(),
        });
    }
    let pairs = plan.resolve(&f.samples)?;
    let pts = &f.samples.points;
    let mut best = 0.0f64;
    let mut images: Vec<Option<Point>> = vec![None; pts.len()];
    let image = |i: usize, f: &LipMap, images: &mut Vec<Option<Point>>| -> Point {
        if images[i].is_none() {
            images[i] = Some(f.eval(&pts[i]));
        }
        images[i].clone().unwrap()
    };
    for (i, j) in pairs {
        let d = f.domain.dist(&pts[i], &pts[j]);
        if d == 0.0 {
            continue; // degenerate pair
        }
        let fi = image(i, f, &mut images);
        let fj = image(j, f, &mut images);
        let q = f.target.dist(&fi, &fj) / d;
        if q > best {
            best = q;
        }
    }
    Ok(best)
}

/// Per-mesh Lipschitz estimates for a curve into a snowflake space.
///
/// For a nonconstant smooth base curve the estimate grows like `h^(α-1)`,
/// the desk-scale witness that snowflakes carry no nonconstant Lipschitz
/// curves.
pub fn snowflake_curve_diagnostic(
    sigma: &LipMap,
    meshes: &[f64],
) -> Result<Vec<(f64, f64)>, MetricError> {
    if !meshes.windows(2).all(|w| w[1] < w[0]) {
        return Err(MetricError::MeshesNotDecreasing);
    }
    // Constant curves are fine: every difference quotient vanishes and the
    // table is identically zero. The h^(α−1) growth statement is only about
    // curves that move in the base metric.
    let mut rows = Vec::with_capacity(meshes.len());
    for &h in meshes {
        let samples = SampleSet::interval_mesh(h);
        let probe = LipMap {
            id: sigma.id,
            name: sigma.name.clone(),
            domain: sigma.domain.clone(),
            target: sigma.target.clone(),
            eval: sigma.eval.clone(),
            samples: Arc::new(samples),
        };
        rows.push((h, lip_estimate(&probe, &PairPlan::Adjacent)?));
    }
    Ok(rows)
}

/// Basic metric-axiom check on sampled triples.
pub struct MetricAxiomReport {
    pub triples: usize,
    pub max_self_dist: f64,
    pub max_asymmetry: f64,
    pub worst_triangle_defect: f64,
}

pub fn check_metric_axioms(
    space: &dyn Space,
    sampler: &mut dyn FnMut(&mut ChaCha8Rng) -> Point,
    triples: usize,
    seed: u64,
) -> MetricAxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MetricAxiomReport {
        triples,
        max_self_dist: 0.0,
        max_asymmetry: 0.0,
        worst_triangle_defect: 0.0,
    };
    for _ in 0..triples {
        let x = sampler(&mut rng);
        let y = sampler(&mut rng);
        let z = sampler(&mut rng);
        report.max_self_dist = report.max_self_dist.max(space.dist(&x, &x).abs());
        report.max_asymmetry = report
            .max_asymmetry
            .max((space.dist(&x, &y) - space.dist(&y, &x)).abs());
        let defect = space.dist(&x, &z) - space.dist(&x, &y) - space.dist(&y, &z);
        report.worst_triangle_defect = report.worst_triangle_defect.max(defect);
    }
    report
}
