//! The suite catalog: one entry per registered experiment suite, with its
//! parameter schema, output columns, the identity or inequality it
//! exercises, and a ready-to-run example scenario.

use crate::scenario::{ParamKind, ParamSpec};

#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// The mathematical statement the suite exercises.
    pub reference: &'static str,
    pub schema: &'static [ParamSpec],
    pub columns: &'static [&'static str],
    pub example: &'static str,
}

pub const SUITES: &[SuiteEntry] = &[
    SuiteEntry {
        name: "homotopy-identity",
        description: "Prism decomposition of the cylinder and the chain-homotopy identity at current level",
        reference: "boundary(P sigma) + P(boundary sigma) = (i_1)# sigma - (i_0)# sigma, with cell weights (-1)^i; cells partition Delta^k x I",
        schema: &[
            ParamSpec { name: "k_max", kind: ParamKind::Integer, required: false, default: "3", description: "largest simplex degree tested" },
            ParamSpec { name: "n", kind: ParamKind::Integer, required: false, default: "8", description: "quadrature mesh for affine cases" },
        ],
        columns: &["k", "affine_gap", "smooth_gap", "smooth_tol", "formal_zero", "partition_coverage", "partition_overlap"],
        example: r#"{"suite":"homotopy-identity","seed":7,"params":{"k_max":3,"n":8}}"#,
    },
    SuiteEntry {
        name: "boundary-identity",
        description: "Boundary of an induced current against the current of the boundary chain",
        reference: "T^{boundary mu} equals boundary T^mu: exact for affine data, gap shrinking under mesh refinement for oscillatory atoms",
        schema: &[
            ParamSpec { name: "n", kind: ParamKind::Integer, required: false, default: "32", description: "quadrature mesh for the affine case" },
            ParamSpec { name: "eps", kind: ParamKind::Number, required: false, default: "0.1", description: "oscillation scale of the smooth atom" },
        ],
        columns: &["case", "n", "lhs", "rhs", "gap"],
        example: r#"{"suite":"boundary-identity","seed":7,"params":{"n":32,"eps":0.1}}"#,
    },
    SuiteEntry {
        name: "u-eps",
        description: "Oscillatory simplices whose current values survive a uniform limit that kills them",
        reference: "det grad u_eps = 2 cos^2(x1/eps) averages to 1, so [u_eps](1 d id) tends to vol(Delta^2) = 1/2 while the uniform limit map evaluates to 0 and Lip(u_eps) grows like sqrt(2/eps)",
        schema: &[
            ParamSpec { name: "eps_list", kind: ParamKind::NumberList, required: false, default: "[0.05, 0.02, 0.01]", description: "oscillation scales, decreasing" },
            ParamSpec { name: "k", kind: ParamKind::Integer, required: false, default: "2", description: "simplex degree (>= 2)" },
        ],
        columns: &["eps", "n", "value", "error_estimate", "lip_estimate", "lip_floor", "limit_value"],
        example: r#"{"suite":"u-eps","seed":7,"params":{"eps_list":[0.05,0.02,0.01],"k":2}}"#,
    },
    SuiteEntry {
        name: "v-eps",
        description: "Faster oscillation: current values blowing up like 1/eps, so the family is not integrable",
        reference: "det grad v_eps = cos^2(x1/eps^2)/eps, hence eps * [v_eps](1 d id) is approximately constant and the eps-integral of the values diverges logarithmically",
        schema: &[
            ParamSpec { name: "eps_list", kind: ParamKind::NumberList, required: false, default: "[0.1, 0.05, 0.025]", description: "oscillation scales in (0, 1]" },
        ],
        columns: &["eps", "n", "value", "eps_times_value"],
        example: r#"{"suite":"v-eps","seed":7,"params":{"eps_list":[0.1,0.05,0.025]}}"#,
    },
    SuiteEntry {
        name: "f-t",
        description: "Uniform convergence with exploding Lipschitz constants: ramps of height sqrt(t) and slope 1/sqrt(t)",
        reference: "f_t = 0, then (x-t)/sqrt(t), then sqrt(t): uniform distance sqrt(t) -> 0 while the MT Lipschitz part stays >= 1/sqrt(t), so the family leaves every MT-compact set",
        schema: &[
            ParamSpec { name: "t_list", kind: ParamKind::NumberList, required: false, default: "[0.25, 0.0625, 0.015625]", description: "ramp parameters in (0, 1/2]" },
        ],
        columns: &["t", "uniform_dist", "mt_sup", "mt_lip", "mt_total", "lip_estimate"],
        example: r#"{"suite":"f-t","seed":7,"params":{"t_list":[0.25,0.0625,0.015625]}}"#,
    },
    SuiteEntry {
        name: "mt-metric",
        description: "Pseudo-metric axioms and functoriality bounds for the sampled MT distance",
        reference: "symmetry exact; triangle inequality; sup part equals the sampled uniform distance; Lipschitz part dominates the Lipschitz-estimate gap; post-composition scales by Lip(phi)",
        schema: &[
            ParamSpec { name: "count", kind: ParamKind::Integer, required: false, default: "25", description: "random map triples" },
        ],
        columns: &["instance", "triangle_defect", "sup_vs_uniform", "lip_gap_defect", "post_defect", "mt_total", "bt_total"],
        example: r#"{"suite":"mt-metric","seed":7,"params":{"count":25}}"#,
    },
    SuiteEntry {
        name: "c1-compare",
        description: "MT distance against the C1 distance on smooth circle maps",
        reference: "on t sin(x) the two distances decay together with bounded ratio; on t sin(x/t) the derivative term keeps both away from zero",
        schema: &[
            ParamSpec { name: "t_list", kind: ParamKind::NumberList, required: false, default: "[0.4, 0.2, 0.1, 0.05]", description: "amplitudes for t sin(x)" },
            ParamSpec { name: "n", kind: ParamKind::Integer, required: false, default: "256", description: "circle samples" },
        ],
        columns: &["t", "c1_dist", "mt_total", "ratio"],
        example: r#"{"suite":"c1-compare","seed":7,"params":{"t_list":[0.4,0.2,0.1,0.05],"n":256}}"#,
    },
    SuiteEntry {
        name: "mv-cosheaf",
        description: "Exact Mayer-Vietoris splitting of finitely supported measures over two overlapping balls",
        reference: "xi = xi restricted to (K - W) plus xi restricted to (K cap W): the splitting is exact atom by atom and Phi_1(xi) = (xi, -xi) hits every kernel pair",
        schema: &[
            ParamSpec { name: "count", kind: ParamKind::Integer, required: false, default: "1000", description: "random measures" },
            ParamSpec { name: "atoms", kind: ParamKind::Integer, required: false, default: "7", description: "atoms per measure" },
            ParamSpec { name: "u_ball", kind: ParamKind::NumberList, required: false, default: "[-0.4, 0, 1.1]", description: "U as a ball [cx, cy, r]" },
            ParamSpec { name: "v_ball", kind: ParamKind::NumberList, required: false, default: "[0.5, 0.1, 1]", description: "V as a ball [cx, cy, r]" },
            ParamSpec { name: "u_halfspace", kind: ParamKind::NumberList, required: false, default: "none", description: "U as {a1 x + a2 y < b}: [a1, a2, b] (overrides the ball)" },
            ParamSpec { name: "v_halfspace", kind: ParamKind::NumberList, required: false, default: "none", description: "V as {a1 x + a2 y < b}: [a1, a2, b] (overrides the ball)" },
            ParamSpec { name: "cloud", kind: ParamKind::Table, required: false, default: "none", description: "explicit atoms [[x, y, weight], ...] decomposed once" },
        ],
        columns: &["instance_count", "exact_splits", "exact_kernels"],
        example: r#"{"suite":"mv-cosheaf","seed":7,"params":{"count":1000,"atoms":7}}"#,
    },
    SuiteEntry {
        name: "snowflake",
        description: "Lipschitz estimates of a line into a snowflake metric, scaling like mesh^(alpha-1)",
        reference: "d^alpha admits no nonconstant Lipschitz curve: sampled difference quotients of the identity line grow like h^(alpha-1) as the mesh h shrinks",
        schema: &[
            ParamSpec { name: "alpha", kind: ParamKind::Number, required: false, default: "0.5", description: "snowflake exponent in (0, 1]" },
            ParamSpec { name: "meshes", kind: ParamKind::NumberList, required: false, default: "[0.01, 0.0001]", description: "strictly decreasing mesh sizes" },
        ],
        columns: &["mesh", "lip_estimate", "expected", "rel_err"],
        example: r#"{"suite":"snowflake","seed":7,"params":{"alpha":0.5,"meshes":[0.01,0.0001]}}"#,
    },
    SuiteEntry {
        name: "homology",
        description: "Betti numbers of finite boundary-matrix snapshots by singular-value rank",
        reference: "over a space with no nonconstant Lipschitz curve the chain groups collapse and every positive-degree homology vanishes; the simplicial circle keeps Betti (1, 1)",
        schema: &[
            ParamSpec { name: "n", kind: ParamKind::Integer, required: false, default: "4", description: "rank of each chain group in the alternating complex" },
            ParamSpec { name: "depth", kind: ParamKind::Integer, required: false, default: "4", description: "top degree of the alternating complex" },
            ParamSpec { name: "matrices", kind: ParamKind::Matrices, required: false, default: "none", description: "optional explicit boundary matrices (degree 1 upward)" },
        ],
        columns: &["degree", "betti", "rank_cut_kept", "rank_cut_dropped"],
        example: r#"{"suite":"homology","seed":7,"params":{"n":4,"depth":4}}"#,
    },
];

pub fn find(name: &str) -> Option<&'static SuiteEntry> {
    SUITES.iter().find(|s| s.name == name)
}
