//! The BT norm-distance and the MT metric on bounded Lipschitz map spaces.
//!
//! For maps into a normed target, the BT distance is
//! `‖f − g‖_∞ + Lip(f − g)`. For maps into an arbitrary metric target, the
//! MT distance pulls the same norm back through the Dirac embedding
//! `a ↦ δ_{f(a)}` into the free-space dual: its sup part is the AE norm of
//! the Dirac difference at each sample (which is just the target distance),
//! and its Lipschitz part runs over sample pairs through the balanced
//! four-point kernel
//! `δ_{f(a)} − δ_{g(a)} − δ_{f(b)} + δ_{g(b)}`.
//! Every kernel evaluated is balanced, so no basepoint is ever materialized.

use thiserror::Error;

use crate::freespace::{dipole_norm, four_point_norm};
use crate::lipmap::{lip_estimate, LipMap, MetricError, PairPlan};
use crate::lp::LpError;
use crate::point::Point;

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("LP solver failed: {0}")]
    Lp(#[from] LpError),
    #[error("maps must share a domain sample set ({0} vs {1} samples)")]
    SampleMismatch(usize, usize),
}

/// `‖f − g‖_∞ + Lip(f − g)` estimated on the sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtDistanceReport {
    pub sup_part: f64,
    pub lip_part: f64,
    pub total: f64,
}

/// Sampled MT distance; `total = sup_part + lip_part` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtDistanceReport {
    pub sup_part: f64,
    pub lip_part: f64,
    pub total: f64,
}

pub fn bt_distance(f: &LipMap, g: &LipMap, plan: &PairPlan) -> Result<BtDistanceReport, TopologyError> {
    let diff = LipMap::difference(f, g)?;
    let ops = diff.target.vector_ops().expect("difference target is normed");
    let sup_part = diff
        .samples
        .points
        .iter()
        .map(|p| ops.norm(&diff.eval(p)))
        .fold(0.0f64, f64::max);
    let lip_part = lip_estimate(&diff, plan)?;
    Ok(BtDistanceReport {
        sup_part,
        lip_part,
        total: sup_part + lip_part,
    })
}

pub fn mt_distance(f: &LipMap, g: &LipMap, plan: &PairPlan) -> Result<MtDistanceReport, TopologyError> {
    if f.samples.len() != g.samples.len() {
        return Err(TopologyError::SampleMismatch(f.samples.len(), g.samples.len()));
    }
    if f.samples.is_empty() {
        return Err(MetricError::EmptySample { needed: 1, found: 0 }.into());
    }
    let pts = &f.samples.points;
    let fi: Vec<Point> = pts.iter().map(|p| f.eval(p)).collect();
    let gi: Vec<Point> = pts.iter().map(|p| g.eval(p)).collect();

    let mut sup_part = 0.0f64;
    for (a, b) in fi.iter().zip(&gi) {
        sup_part = sup_part.max(dipole_norm(&f.target, a, b)?);
    }

    let mut lip_part = 0.0f64;
    if pts.len() >= 2 {
        for (i, j) in plan.resolve(&f.samples)? {
            let d = f.domain.dist(&pts[i], &pts[j]);
            if d == 0.0 {
                continue;
            }
            let kernel = four_point_norm(&f.target, &fi[i], &gi[i], &fi[j], &gi[j]);
            lip_part = lip_part.max(kernel / d);
        }
    }
    Ok(MtDistanceReport {
        sup_part,
        lip_part,
        total: sup_part + lip_part,
    })
}

/// Largest sampled target distance `d(f(a), g(a))`.
pub fn uniform_distance(f: &LipMap, g: &LipMap) -> f64 {
    f.samples
        .points
        .iter()
        .map(|p| f.target.dist(&f.eval(p), &g.eval(p)))
        .fold(0.0f64, f64::max)
}

/// Verdict of a three-point monotone extrapolation; claims nothing beyond
/// the tested parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    ConvergentToZero,
    Divergent,
    Inconclusive,
}

pub fn classify_trend(values: &[f64]) -> Trend {
    if let Some(&last) = values.last() {
        if last == 0.0 {
            return Trend::ConvergentToZero;
        }
    }
    if values.len() < 3 {
        return Trend::Inconclusive;
    }
    let tail = &values[values.len() - 3..];
    if tail[0] > tail[1] && tail[1] > tail[2] && tail[2] <= 0.3 * tail[0] {
        Trend::ConvergentToZero
    } else if tail[0] < tail[1] && tail[1] < tail[2] {
        Trend::Divergent
    } else {
        Trend::Inconclusive
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub t: f64,
    pub uniform_dist: f64,
    pub mt_sup: f64,
    pub mt_lip: f64,
    pub mt_total: f64,
    pub lip_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub co_verdict: Trend,
    pub mt_verdict: Trend,
}

/// Per-parameter uniform and MT distances of a family against its limit.
pub fn convergence_diagnostic(
    family: &[(f64, LipMap)],
    limit: &LipMap,
    plan: &PairPlan,
) -> Result<ConvergenceTable, TopologyError> {
    let mut rows = Vec::with_capacity(family.len());
    for (t, ft) in family {
        let mt = mt_distance(ft, limit, plan)?;
        rows.push(ConvergenceRow {
            t: *t,
            uniform_dist: uniform_distance(ft, limit),
            mt_sup: mt.sup_part,
            mt_lip: mt.lip_part,
            mt_total: mt.total,
            lip_estimate: lip_estimate(ft, plan)?,
        });
    }
    let co = classify_trend(&rows.iter().map(|r| r.uniform_dist).collect::<Vec<_>>());
    let mt = classify_trend(&rows.iter().map(|r| r.mt_total).collect::<Vec<_>>());
    Ok(ConvergenceTable {
        rows,
        co_verdict: co,
        mt_verdict: mt,
    })
}

/// A C¹ map on a one-dimensional compact domain (interval or circle) into
/// `ℝ^K`: the map plus a derivative oracle.
#[derive(Clone)]
pub struct C1Map {
    pub map: LipMap,
    deriv: std::sync::Arc<dyn Fn(&Point) -> Point + Send + Sync>,
}

impl C1Map {
    pub fn new(map: LipMap, deriv: impl Fn(&Point) -> Point + Send + Sync + 'static) -> Self {
        C1Map {
            map,
            deriv: std::sync::Arc::new(deriv),
        }
    }

    pub fn deriv(&self, p: &Point) -> Point {
        (self.deriv)(p)
    }
}

#[derive(Debug, Clone)]
pub struct C1Row {
    pub t: f64,
    pub c1_dist: f64,
    pub mt_total: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct C1Table {
    pub rows: Vec<C1Row>,
    /// Observed `mt / c1` ratio interval across the family.
    pub ratio_min: f64,
    pub ratio_max: f64,
}

/// `sup‖f_t − f‖ + sup‖f_t' − f'‖` against the sampled MT distance.
pub fn c1_comparison(
    family: &[(f64, C1Map)],
    limit: &C1Map,
    plan: &PairPlan,
) -> Result<C1Table, TopologyError> {
    let ops = limit
        .map
        .target
        .vector_ops()
        .ok_or_else(|| MetricError::TargetNotNormed(limit.map.target.name().to_string()))?;
    let mut rows = Vec::with_capacity(family.len());
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max = 0.0f64;
    for (t, ft) in family {
        let sup = ft
            .map
            .samples
            .points
            .iter()
            .map(|p| ops.norm(&ops.sub(&ft.map.eval(p), &limit.map.eval(p))))
            .fold(0.0f64, f64::max);
        let dsup = ft
            .map
            .samples
            .points
            .iter()
            .map(|p| ops.norm(&ops.sub(&ft.deriv(p), &limit.deriv(p))))
            .fold(0.0f64, f64::max);
        let c1_dist = sup + dsup;
        let mt = mt_distance(&ft.map, &limit.map, plan)?;
        let ratio = if c1_dist > 0.0 { mt.total / c1_dist } else { 1.0 };
        ratio_min = ratio_min.min(ratio);
        ratio_max = ratio_max.max(ratio);
        rows.push(C1Row {
            t: *t,
            c1_dist,
            mt_total: mt.total,
            ratio,
        });
    }
    Ok(C1Table {
        rows,
        ratio_min,
        ratio_max,
    })
}
