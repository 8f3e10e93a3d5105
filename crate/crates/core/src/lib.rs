//! Desk-scale numerical laboratory for metric currents, measure chains of
//! Lipschitz simplices, and the norm-based topology on spaces of bounded
//! Lipschitz maps.
//!
//! The crate is organized around small immutable oracles:
//!
//! - [`space`]: metric spaces as distance oracles (Euclidean clouds,
//!   snowflakes, sum-metric products, circles, simplex domains);
//! - [`lipmap`]: Lipschitz maps with finite sample sets and sampled
//!   Lipschitz-constant estimation;
//! - [`freespace`]: finitely supported elements of the free-space dual and
//!   the Arens–Eells / Kantorovich–Rubinstein norm via a transportation LP;
//! - [`liptop`]: the BT norm-distance and the MT metric on Lipschitz map
//!   spaces, with convergence diagnostics;
//! - [`currents`]: evaluation of currents induced by simplices and measure
//!   chains, boundary and pushforward operators, mass bounds;
//! - [`prism`]: the prism decomposition of `Δ^k × I` and the chain-homotopy
//!   operator at current level;
//! - [`cosheaf`]: constructive Mayer–Vietoris splitting of finitely
//!   supported measures over open covers;
//! - [`homology`]: Betti numbers of finite chain-complex snapshots by
//!   singular-value rank.
//!
//! Everything is deterministic: fixed pivot rules, fixed summation orders,
//! seeded randomness only.

pub mod affine;
pub mod cosheaf;
pub mod currents;
pub mod families;
pub mod freespace;
pub mod homology;
pub mod lipmap;
pub mod liptop;
pub mod lp;
pub mod point;
pub mod prism;
pub mod simplex;
pub mod space;
pub mod tolerances;

pub use affine::AffineMap;
pub use freespace::{
    ae_norm, dipole_norm, four_point_norm, product_embed, pushforward_dual, rebase, AeInstance,
    FreeSpaceElement, SignedMeasure,
};
pub use lipmap::{
    check_metric_axioms, lip_estimate, snowflake_curve_diagnostic, LipMap, MetricError,
    PairPlan, SampleSet,
};
pub use point::Point;
pub use simplex::SimplexDomain;
pub use space::{Circle, Euclidean, Product, Snowflake, Space, SpaceRef};
