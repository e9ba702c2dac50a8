//! Hypergraph containers for `K_s`-free sets of the block graph.

mod codegree;
mod count;
mod family;
mod hypergraph;
mod iterate;
mod niceness;
mod scale;
mod scythe;

pub use codegree::{check_codegree, CodegreeCheck, CodegreeLine};
pub use count::{binomial, count_ksfree_bound, CountBound};
pub use family::{container_family, container_step, AbortRecord, ContainerFamily, DepthStat, FamilyEntry, Origin};
pub use hypergraph::{delta_ell, UniformHypergraph};
pub use iterate::{default_lambda_c, default_threshold, depth_limit, iterate_containers, IterateConfig, IterationTrace};
pub use niceness::{niceness_check, NicenessConfig, NicenessReport, NicenessRow};
pub use scale::{build_scaled_subhypergraph, select_scale, BucketStat, ScaleSelection};
pub use scythe::{delta_f64, ContainerParams, ContainerStep, DEFAULT_FAMILY_BUDGET};
