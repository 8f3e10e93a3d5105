//! The experiment suites behind `curlab run`.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curlab::currents::{
    boundary_current_identity, eval_simplex_current, eval_simplex_current_at, LipSimplex,
    MeasureChain, ScalarOracle, TestForm,
};
use curlab::families::{
    affine_simplex_through, f_t_map, f_zero_map, random_piecewise_linear,
    snowflake_line, t_sin_family, t_sin_scaled_family, u_eps_lip, u_eps_simplex, u_limit_simplex,
    v_eps_simplex,
};
use curlab::homology::{alternating_complex, homology, simplicial_circle, FiniteComplex};
use curlab::lipmap::{lip_estimate, snowflake_curve_diagnostic, LipMap, PairPlan, SampleSet};
use curlab::liptop::{
    bt_distance, c1_comparison, convergence_diagnostic, mt_distance, uniform_distance, Trend,
};
use curlab::point::Point;
use curlab::prism::{homotopy_identity_check, homotopy_identity_formal, partition_check};
use curlab::space::{Euclidean, SpaceRef};
use curlab::SignedMeasure;

use crate::catalog;
use crate::report::{config_hash, git_hash, Provenance, Report, Verdict, SCHEMA_VERSION};
use crate::scenario::{Scenario, ScenarioError};

type SuiteOutput = (Vec<Vec<f64>>, Vec<Verdict>, Vec<String>);

pub fn run_scenario(scenario: &Scenario) -> Result<Report, ScenarioError> {
    let entry = catalog::find(&scenario.suite)
        .ok_or_else(|| ScenarioError::UnknownSuite(scenario.suite.clone()))?;
    scenario.validate(entry.schema)?;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let (rows, verdicts, notes) = match entry.name {
        "homotopy-identity" => homotopy_identity(scenario),
        "boundary-identity" => boundary_identity(scenario),
        "u-eps" => u_eps(scenario),
        "v-eps" => v_eps(scenario),
        "f-t" => f_t(scenario),
        "mt-metric" => mt_metric(scenario, &mut rng),
        "c1-compare" => c1_compare(scenario),
        "mv-cosheaf" => mv_cosheaf(scenario, &mut rng),
        "snowflake" => snowflake(scenario),
        "homology" => homology_suite(scenario)?,
        _ => unreachable!("catalog and dispatcher disagree"),
    };
    let echo = scenario.echo();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        suite: entry.name.to_string(),
        columns: entry.columns.iter().map(|c| c.to_string()).collect(),
        provenance: Provenance {
            git_hash: git_hash(),
            config_hash: config_hash(&echo),
            seed: scenario.seed,
        },
        scenario: echo,
        rows,
        verdicts,
        notes,
    })
}

fn grid_override(sc: &Scenario, default: usize) -> usize {
    sc.grid.map(|g| g.n).unwrap_or(default)
}

fn homotopy_identity(sc: &Scenario) -> SuiteOutput {
    let k_max = sc.integer("k_max", 3).clamp(1, 3);
    let n = grid_override(sc, sc.integer("n", 8)).max(2);
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let notes = vec![
        "calibrated orientation: boundary(P s) + P(boundary s) = (i_1)# s - (i_0)# s, cell weights (-1)^i"
            .to_string(),
    ];
    for k in 1..=k_max {
        let verts: Vec<Vec<f64>> = (0..=k)
            .map(|i| {
                (0..k + 1)
                    .map(|r| if r == i { 1.2 } else { 0.1 * (r as f64 - 0.5) })
                    .collect()
            })
            .collect();
        let sigma = affine_simplex_through(&verts);
        let form = TestForm::new(
            ScalarOracle::affine((0..k + 2).map(|i| 0.2 + 0.1 * i as f64).collect(), 0.3, 10.0),
            (0..k).map(|i| ScalarOracle::coordinate(i, 5.0)).collect(),
        );
        let affine = homotopy_identity_check(&sigma, &form, n).expect("affine check");

        let smooth_sigma = match k {
            1 => LipSimplex::fresh(1, |s| Point::new([s[0], (2.0 * s[0]).sin()])),
            2 => u_eps_simplex(2, 0.1),
            _ => LipSimplex::fresh(3, |s| {
                Point::new([
                    s[0] + 0.3 * s[1] * s[1],
                    s[1] + 0.2 * (2.0 * s[2]).sin(),
                    s[2],
                    0.1 * s[0] * s[2],
                ])
            }),
        };
        let smooth_n = match k {
            1 => 128,
            2 => 96,
            _ => 16,
        };
        let smooth_form = TestForm::new(
            ScalarOracle::new("smooth f", 2.0, 4.0, |p| {
                p.coords()[0] + 0.4 * p.coords()[1].sin()
            }),
            (0..k).map(|i| ScalarOracle::coordinate(i, 4.0)).collect(),
        );
        let smooth = homotopy_identity_check(&smooth_sigma, &smooth_form, smooth_n).expect("smooth");
        let smooth_tol = 200.0 / (smooth_n as f64 * smooth_n as f64);
        let formal_zero = homotopy_identity_formal(&sigma).expect("formal").is_zero();
        let partition = partition_check(k, 4000, sc.seed);

        rows.push(vec![
            k as f64,
            affine.gap,
            smooth.gap,
            smooth_tol,
            formal_zero as u8 as f64,
            partition.coverage,
            partition.overlap,
        ]);
        verdicts.push(Verdict::le(
            format!("prism.homotopy-identity.affine-gap.k{k}"),
            affine.gap,
            1e-9,
        ));
        verdicts.push(Verdict::le(
            format!("prism.homotopy-identity.smooth-gap.k{k}"),
            smooth.gap,
            smooth_tol,
        ));
        verdicts.push(Verdict::flag(
            format!("prism.formal-chain-identity.k{k}"),
            formal_zero,
        ));
        verdicts.push(Verdict::flag(
            format!("prism.cell-partition.k{k}"),
            partition.pass,
        ));
    }
    (rows, verdicts, notes)
}

fn boundary_identity(sc: &Scenario) -> SuiteOutput {
    let n = grid_override(sc, sc.integer("n", 32)).max(4);
    let eps = sc.number("eps", 0.1);
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();

    let sigma = affine_simplex_through(&[vec![0.1, -0.2], vec![1.3, 0.4], vec![0.2, 1.1]]);
    let mu = MeasureChain::dirac(sigma).scale(1.5);
    let form = TestForm::new(
        ScalarOracle::affine(vec![0.7, -0.4], 0.3, 10.0),
        vec![ScalarOracle::affine(vec![0.2, 0.9], 0.0, 10.0)],
    );
    let (lhs, rhs, gap) = boundary_current_identity(&mu, &form, n).expect("affine identity");
    rows.push(vec![0.0, n as f64, lhs, rhs, gap]);
    verdicts.push(Verdict::le("currents.boundary-identity.affine-gap", gap, 1e-6));

    let u = MeasureChain::dirac(u_eps_simplex(2, eps));
    let smooth_form = TestForm::new(
        ScalarOracle::new("x+y/2", 2.0, 3.0, |p| p.coords()[0] + 0.5 * p.coords()[1]),
        vec![ScalarOracle::new("sin y + x/3", 2.0, 3.0, |p| {
            p.coords()[1].sin() + 0.3 * p.coords()[0]
        })],
    );
    let mut gaps = Vec::new();
    for (i, m) in [n / 2, n, 2 * n].iter().enumerate() {
        let (lhs, rhs, gap) = boundary_current_identity(&u, &smooth_form, *m).expect("u_eps");
        rows.push(vec![(i + 1) as f64, *m as f64, lhs, rhs, gap]);
        gaps.push(gap);
    }
    verdicts.push(Verdict::flag(
        "currents.boundary-identity.refinement-decreasing",
        gaps[0] > gaps[1] && gaps[1] > gaps[2],
    ));

    // A cycle: both routes through the identity must vanish.
    let cycle = curlab::families::triangle_cycle([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]);
    let zero_form = TestForm::new(ScalarOracle::affine(vec![0.5, 0.8], 0.1, 4.0), vec![]);
    let (lhs_cycle, rhs_cycle, _) =
        boundary_current_identity(&cycle, &zero_form, 8).expect("cycle identity");
    rows.push(vec![4.0, 8.0, lhs_cycle, rhs_cycle, lhs_cycle.abs().max(rhs_cycle.abs())]);
    verdicts.push(Verdict::le(
        "currents.boundary-identity.cycle-vanishes",
        lhs_cycle.abs().max(rhs_cycle.abs()),
        1e-12,
    ));
    (rows, verdicts, vec!["case 0: affine; cases 1-3: u_eps at n/2, n, 2n; case 4: triangle cycle".into()])
}

fn u_eps(sc: &Scenario) -> SuiteOutput {
    let eps_list = sc.number_list("eps_list", &[0.05, 0.02, 0.01]);
    let k = sc.integer("k", 2).max(2);
    let form = TestForm::volume_form(k, 2.0);
    let plane: SpaceRef = Euclidean::new(k);
    let limit_value = eval_simplex_current_at(&u_limit_simplex(k), &form, 32).expect("limit");
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut last = (0.0, 0.0);
    for &eps in &eps_list {
        // Cell counts scale like n^k; cap the mesh hard above the plane.
        let n_cap = if k == 2 { 2000 } else { 128 };
        let n = ((5.0 / eps).ceil() as usize).clamp(64, n_cap);
        let sigma = u_eps_simplex(k, eps);
        let cv = eval_simplex_current(&sigma, &form, n).expect("u_eps value");
        let grid_n = ((2.0 / eps).ceil() as usize).clamp(16, 400);
        let lip = lip_estimate(&sigma.as_lip_map(plane.clone(), grid_n), &PairPlan::Adjacent)
            .expect("u_eps lip");
        let floor = 0.9 * u_eps_lip(eps);
        rows.push(vec![eps, n as f64, cv.value, cv.error_estimate, lip, floor, limit_value]);
        last = (cv.value, eps);
        verdicts.push(Verdict::ge(
            format!("metric-core.lip-estimate.u-eps.{eps}"),
            lip,
            floor,
        ));
    }
    let (value, eps) = last;
    if k == 2 {
        verdicts.push(Verdict::new(
            format!("currents.u-eps.value-near-half.{eps}"),
            (0.475..=0.525).contains(&value),
            value,
            0.025,
        ));
    }
    verdicts.push(Verdict::le("currents.u-eps.limit-value", limit_value.abs(), 0.0));
    (
        rows,
        verdicts,
        vec!["values approach vol(Delta^k); the uniform limit evaluates to zero".into()],
    )
}

fn v_eps(sc: &Scenario) -> SuiteOutput {
    let eps_list = sc.number_list("eps_list", &[0.1, 0.05, 0.025]);
    let form = TestForm::volume_form(2, 2.0);
    let family: Vec<(f64, LipSimplex)> = eps_list
        .iter()
        .map(|&eps| (eps, v_eps_simplex(eps)))
        .collect();
    let grid_for = |eps: f64| ((2.0 / (eps * eps)).round() as usize).clamp(64, 6400);
    let table =
        curlab::currents::non_integrability_diagnostic(&family, &form, grid_for).expect("v_eps");
    let rows: Vec<Vec<f64>> = table
        .iter()
        .map(|r| vec![r.eps, grid_for(r.eps) as f64, r.value, r.eps_times_value])
        .collect();
    let products: Vec<f64> = table.iter().map(|r| r.eps_times_value).collect();
    let max = products.iter().cloned().fold(f64::MIN, f64::max);
    let min = products.iter().cloned().fold(f64::MAX, f64::min);
    let spread = max / min - 1.0;
    let verdicts = vec![Verdict::le("currents.v-eps.rate-constant", spread, 0.10)];
    (
        rows,
        verdicts,
        vec!["eps * value constant witnesses the 1/eps blow-up".into()],
    )
}

fn f_t(sc: &Scenario) -> SuiteOutput {
    let t_list = sc.number_list("t_list", &[0.25, 0.0625, 0.015625]);
    let t_min = t_list.iter().cloned().fold(0.5f64, f64::min);
    let n = ((4.0 / t_min).ceil() as usize).clamp(16, 4096);
    let family: Vec<(f64, LipMap)> = t_list.iter().map(|&t| (t, f_t_map(t, n))).collect();
    let limit = f_zero_map(n);
    let table = convergence_diagnostic(&family, &limit, &PairPlan::AllPairs).expect("f-t table");
    let rows: Vec<Vec<f64>> = table
        .rows
        .iter()
        .map(|r| vec![r.t, r.uniform_dist, r.mt_sup, r.mt_lip, r.mt_total, r.lip_estimate])
        .collect();
    let mut verdicts = Vec::new();
    for r in &table.rows {
        verdicts.push(Verdict::le(
            format!("lip-topology.f-t.uniform-is-sqrt-t.{}", r.t),
            (r.uniform_dist - r.t.sqrt()).abs(),
            1e-9,
        ));
        verdicts.push(Verdict::ge(
            format!("lip-topology.f-t.mt-lip-at-least-inverse-sqrt-t.{}", r.t),
            r.mt_lip,
            1.0 / r.t.sqrt() - 1e-12,
        ));
    }
    verdicts.push(Verdict::flag(
        "lip-topology.f-t.co-convergent",
        table.co_verdict == Trend::ConvergentToZero,
    ));
    verdicts.push(Verdict::flag(
        "lip-topology.f-t.mt-divergent",
        table.mt_verdict == Trend::Divergent,
    ));
    (
        rows,
        verdicts,
        vec![format!(
            "verdicts: CO {:?}, MT {:?}; sample mesh 1/{n}",
            table.co_verdict, table.mt_verdict
        )],
    )
}

fn mt_metric(sc: &Scenario, rng: &mut ChaCha8Rng) -> SuiteOutput {
    let count = sc.integer("count", 25).clamp(1, 500);
    let plan = PairPlan::AllPairs;
    let line = Euclidean::line();
    let phi = LipMap::new("2.5x", line.clone(), line, SampleSet::interval(2), |p| {
        Point::scalar(2.5 * p.coords()[0])
    });
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut sym_exact = true;
    let (mut worst_tri, mut worst_sup, mut worst_lip, mut worst_post) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..count {
        let f = random_piecewise_linear(rng, 6, 3.0, 24);
        let g = random_piecewise_linear(rng, 6, 3.0, 24);
        let h = random_piecewise_linear(rng, 6, 3.0, 24);
        let fg = mt_distance(&f, &g, &plan).expect("mt");
        let gf = mt_distance(&g, &f, &plan).expect("mt");
        sym_exact &= fg.sup_part.to_bits() == gf.sup_part.to_bits()
            && fg.lip_part.to_bits() == gf.lip_part.to_bits();
        let fh = mt_distance(&f, &h, &plan).expect("mt");
        let gh = mt_distance(&g, &h, &plan).expect("mt");
        let tri = fh.total - fg.total - gh.total;
        let sup_gap = (fg.sup_part - uniform_distance(&f, &g)).abs();
        let lf = lip_estimate(&f, &plan).expect("lip");
        let lg = lip_estimate(&g, &plan).expect("lip");
        let lip_defect = (lf - lg).abs() - fg.lip_part;
        let post = mt_distance(&LipMap::compose(&phi, &f), &LipMap::compose(&phi, &g), &plan)
            .expect("mt");
        let post_defect = post.total - 2.5 * fg.total;
        let bt = bt_distance(&f, &g, &plan).expect("bt");
        rows.push(vec![
            i as f64,
            tri,
            sup_gap,
            lip_defect,
            post_defect,
            fg.total,
            bt.total,
        ]);
        worst_tri = worst_tri.max(tri);
        worst_sup = worst_sup.max(sup_gap);
        worst_lip = worst_lip.max(lip_defect);
        worst_post = worst_post.max(post_defect);
    }
    verdicts.push(Verdict::flag("lip-topology.mt.symmetry-exact", sym_exact));
    verdicts.push(Verdict::le("lip-topology.mt.triangle", worst_tri, 2e-9));
    verdicts.push(Verdict::le("lip-topology.mt.sup-equals-uniform", worst_sup, 1e-9));
    verdicts.push(Verdict::le("lip-topology.mt.lip-dominates-estimate-gap", worst_lip, 1e-12));
    verdicts.push(Verdict::le("lip-topology.mt.post-composition", worst_post, 1e-8));
    (rows, verdicts, Vec::new())
}

fn c1_compare(sc: &Scenario) -> SuiteOutput {
    let t_list = sc.number_list("t_list", &[0.4, 0.2, 0.1, 0.05]);
    let n = sc.integer("n", 256).clamp(16, 8192);
    let limit = t_sin_family(0.0, n);
    let family: Vec<_> = t_list.iter().map(|&t| (t, t_sin_family(t, n))).collect();
    let table = c1_comparison(&family, &limit, &PairPlan::AllPairs).expect("c1 table");
    let mut rows: Vec<Vec<f64>> = table
        .rows
        .iter()
        .map(|r| vec![r.t, r.c1_dist, r.mt_total, r.ratio])
        .collect();
    let mut decaying = true;
    for w in table.rows.windows(2) {
        decaying &= w[1].c1_dist < w[0].c1_dist && w[1].mt_total < w[0].mt_total;
    }
    let mut verdicts = vec![
        Verdict::flag("lip-topology.c1.co-monotone-decay", decaying),
        Verdict::ge("lip-topology.c1.ratio-lower", table.ratio_min, 0.9),
        Verdict::le("lip-topology.c1.ratio-upper", table.ratio_max, 1.0 + 1e-6),
    ];

    // The rough family t sin(x/t): neither distance decays below 1/2.
    let zero = t_sin_family(0.0, 4096);
    let mut stuck = true;
    for &t in &[0.5, 0.25, 0.125] {
        let ft = t_sin_scaled_family(t, 4096);
        let mt = mt_distance(&ft.map, &zero.map, &PairPlan::Adjacent).expect("mt");
        let c1 = t + 1.0;
        stuck &= mt.total > 0.5 && c1 > 0.5;
        rows.push(vec![t, c1, mt.total, mt.total / c1]);
    }
    verdicts.push(Verdict::flag("lip-topology.c1.rough-family-stays-coarse", stuck));
    (
        rows,
        verdicts,
        vec!["first rows: t sin(x); trailing rows: t sin(x/t)".into()],
    )
}

fn mv_region(sc: &Scenario, prefix: &str, default_ball: [f64; 3]) -> curlab::cosheaf::OpenRegion {
    use curlab::cosheaf::OpenRegion;
    let plane: SpaceRef = Euclidean::new(2);
    if let Some(h) = sc.params.get(&format!("{prefix}_halfspace")) {
        let coeffs: Vec<f64> = h
            .as_array()
            .map(|a| a.iter().filter_map(serde_json::Value::as_f64).collect())
            .unwrap_or_default();
        if coeffs.len() == 3 {
            return OpenRegion::half_space(vec![coeffs[0], coeffs[1]], coeffs[2]);
        }
    }
    let ball = sc.number_list(&format!("{prefix}_ball"), &default_ball);
    OpenRegion::ball(plane, Point::new([ball[0], ball[1]]), ball[2])
}

fn mv_cosheaf(sc: &Scenario, rng: &mut ChaCha8Rng) -> SuiteOutput {
    use curlab::cosheaf::{mv_decompose, mv_kernel_witness};
    let count = sc.integer("count", 1000).clamp(1, 100_000);
    let atoms_n = sc.integer("atoms", 7).clamp(1, 100);
    let u = mv_region(sc, "u", [-0.4, 0.0, 1.1]);
    let v = mv_region(sc, "v", [0.5, 0.1, 1.0]);
    let mut notes = Vec::new();

    // An explicit cloud, when given, is decomposed as-is; otherwise random
    // clouds are drawn inside the cover.
    let explicit: Option<Vec<(Point, f64)>> = sc.params.get("cloud").and_then(|c| {
        let rows = c.as_array()?;
        rows.iter()
            .map(|r| {
                let cells: Vec<f64> = r
                    .as_array()?
                    .iter()
                    .filter_map(serde_json::Value::as_f64)
                    .collect();
                (cells.len() == 3).then(|| (Point::new([cells[0], cells[1]]), cells[2]))
            })
            .collect()
    });

    let sample = |rng: &mut ChaCha8Rng| loop {
        let p = Point::new([4.0 * (rng.gen::<f64>() - 0.5), 4.0 * (rng.gen::<f64>() - 0.5)]);
        if u.contains(&p) || v.contains(&p) {
            return p;
        }
    };
    let mut exact_splits = 0usize;
    let runs = if explicit.is_some() { 1 } else { count };
    for _ in 0..runs {
        let atoms = match &explicit {
            Some(cloud) => cloud.clone(),
            None => (0..atoms_n)
                .map(|_| (sample(rng), 4.0 * (rng.gen::<f64>() - 0.5)))
                .collect(),
        };
        let xi = SignedMeasure::new(atoms);
        let (mu, nu) = mv_decompose(&xi, &u, &v).expect("decompose");
        let ok = mu.add(&nu).atoms() == xi.atoms()
            && mu.atoms().iter().all(|(p, _)| u.contains(p))
            && nu.atoms().iter().all(|(p, _)| v.contains(p));
        exact_splits += ok as usize;
        if explicit.is_some() {
            notes.push(format!(
                "explicit cloud split into {} + {} atoms",
                mu.atoms().len(),
                nu.atoms().len()
            ));
        }
    }
    // Kernel pairs need atoms in the overlap; skipped when the configured
    // regions are disjoint.
    let kernel_count = (runs / 5).max(1);
    let mut exact_kernels = 0usize;
    let mut kernel_runs = 0usize;
    'outer: for _ in 0..kernel_count {
        let mut atoms = Vec::with_capacity(atoms_n);
        for _ in 0..atoms_n {
            let mut found = None;
            for _ in 0..10_000 {
                let p = sample(rng);
                if u.contains(&p) && v.contains(&p) {
                    found = Some(p);
                    break;
                }
            }
            match found {
                Some(p) => atoms.push((p, 4.0 * (rng.gen::<f64>() - 0.5))),
                None => break 'outer,
            }
        }
        kernel_runs += 1;
        let xi = SignedMeasure::new(atoms);
        let witness = mv_kernel_witness(&xi, &xi.scale(-1.0), &u, &v).expect("kernel witness");
        exact_kernels += (witness.atoms() == xi.atoms()) as usize;
    }
    let rows = vec![vec![runs as f64, exact_splits as f64, exact_kernels as f64]];
    let mut verdicts = vec![Verdict::flag(
        "cosheaf.mv-decompose.exact",
        exact_splits == runs,
    )];
    if kernel_runs > 0 {
        verdicts.push(Verdict::flag(
            "cosheaf.mv-kernel-witness.exact",
            exact_kernels == kernel_runs,
        ));
    }
    (rows, verdicts, notes)
}

fn snowflake(sc: &Scenario) -> SuiteOutput {
    let alpha = sc.number("alpha", 0.5);
    let meshes = sc.number_list("meshes", &[1e-2, 1e-4]);
    let sigma = snowflake_line(alpha);
    let rows_data = snowflake_curve_diagnostic(&sigma, &meshes).expect("snowflake diagnostic");
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for (h, est) in rows_data {
        let expected = h.powf(alpha - 1.0);
        let rel = (est / expected - 1.0).abs();
        rows.push(vec![h, est, expected, rel]);
        verdicts.push(Verdict::le(
            format!("metric-core.snowflake.rate.h{h:e}"),
            rel,
            0.05,
        ));
    }
    (
        rows,
        verdicts,
        vec![format!("estimates scale like h^({alpha} - 1)")],
    )
}

fn homology_suite(sc: &Scenario) -> Result<SuiteOutput, ScenarioError> {
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut notes = Vec::new();
    if let Some(mats) = sc.params.get("matrices") {
        let complex = complex_from_json(mats)?;
        let rep = homology(&complex, false)
            .map_err(|e| ScenarioError::SchemaViolation(format!("matrices: {e}")))?;
        for (deg, b) in rep.betti.iter().enumerate() {
            let (kept, dropped) = rank_cut(&rep, deg);
            rows.push(vec![deg as f64, *b as f64, kept, dropped]);
        }
        verdicts.push(Verdict::flag("cosheaf-homology.complex-validated", true));
        notes.push("betti numbers of the supplied boundary matrices".into());
    } else {
        let n = sc.integer("n", 4).clamp(1, 64);
        let depth = sc.integer("depth", 4).clamp(1, 16);
        let rep = homology(&alternating_complex(n, depth), false)
            .expect("alternating complex is valid");
        for (deg, b) in rep.betti.iter().enumerate() {
            let (kept, dropped) = rank_cut(&rep, deg);
            rows.push(vec![deg as f64, *b as f64, kept, dropped]);
        }
        verdicts.push(Verdict::flag(
            "cosheaf-homology.no-lipschitz-curve-complex",
            rep.betti[0] == n && rep.betti[1..].iter().all(|&b| b == 0),
        ));
        let circle = homology(&simplicial_circle(), false).expect("circle");
        verdicts.push(Verdict::flag(
            "cosheaf-homology.simplicial-circle",
            circle.betti == vec![1, 1],
        ));
        notes.push(format!("alternating complex over R^{n}, top degree {depth}; circle oracle (1, 1)"));
    }
    Ok((rows, verdicts, notes))
}

fn rank_cut(rep: &curlab::homology::HomologyReport, degree: usize) -> (f64, f64) {
    if degree == 0 || degree > rep.ranks.len() {
        (f64::NAN, f64::NAN)
    } else {
        let info = rep.ranks[degree - 1];
        (
            info.smallest_kept.unwrap_or(f64::NAN),
            info.largest_dropped.unwrap_or(f64::NAN),
        )
    }
}

fn complex_from_json(v: &serde_json::Value) -> Result<FiniteComplex, ScenarioError> {
    let bad = |m: &str| ScenarioError::SchemaViolation(format!("matrices: {m}"));
    let mats = v.as_array().ok_or_else(|| bad("expected a list"))?;
    if mats.is_empty() {
        return Err(bad("need at least one boundary matrix"));
    }
    let mut boundaries = Vec::new();
    for m in mats {
        let rows = m.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
        let nrows = rows.len();
        let ncols = rows
            .first()
            .and_then(|r| r.as_array())
            .map(|r| r.len())
            .ok_or_else(|| bad("matrix rows must be lists"))?;
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let cells = r.as_array().ok_or_else(|| bad("matrix rows must be lists"))?;
            if cells.len() != ncols {
                return Err(bad("ragged matrix"));
            }
            for c in cells {
                data.push(c.as_f64().ok_or_else(|| bad("matrix entries must be numbers"))?);
            }
        }
        boundaries.push(DMatrix::from_row_slice(nrows, ncols, &data));
    }
    let mut dims = vec![boundaries[0].nrows()];
    for b in &boundaries {
        dims.push(b.ncols());
    }
    FiniteComplex::new(dims, boundaries).map_err(|e| bad(&e.to_string()))
}
