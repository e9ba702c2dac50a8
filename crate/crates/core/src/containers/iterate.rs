use super::family::{AbortRecord, ContainerFamily, DepthStat, FamilyEntry, Origin};
use super::scale::{build_scaled_subhypergraph, select_scale, ScaleSelection};
use super::scythe::{ContainerParams, ContainerStep, DEFAULT_FAMILY_BUDGET};
use crate::blocks::BlockGraph;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub fn default_threshold(s: usize, q: u64) -> usize {
    500 * s * s * (q * q) as usize
}

pub fn default_lambda_c(s: usize) -> f64 {
    64.0 * (s * s) as f64
}

/// `4 (log₂ q)²`.
pub fn depth_limit(q: u64) -> f64 {
    let l = (q as f64).log2();
    4.0 * l * l
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateConfig {
    /// `λ = lambda_c · log₂ q`; `None` means `64 s²`.
    pub lambda_c: Option<f64>,
    /// `None` means `500 s² q²`.
    pub threshold: Option<usize>,
    pub max_depth: usize,
    /// Process states visited per container step.
    pub family_budget: u64,
    /// Cap on containers alive at one depth.
    pub max_containers: usize,
}

impl Default for IterateConfig {
    fn default() -> Self {
        IterateConfig {
            lambda_c: None,
            threshold: None,
            max_depth: 10_000,
            family_budget: DEFAULT_FAMILY_BUDGET,
            max_containers: 1 << 16,
        }
    }
}

/// Every `U` that went through a container step, with its scale.
#[derive(Clone, Debug, Default)]
pub struct IterationTrace {
    pub scales: Vec<ScaleSelection>,
}

struct Node {
    set: Vec<usize>,
    fingerprint: Vec<usize>,
    origin: usize,
    size_bound: usize,
}

/// Refines `X` until every container has at most `threshold` vertices,
/// using at each oversized `U` the balanced-block subhypergraph at the
/// selected scale with `p = 1/(γ q^{1/(s-1)})` and `λ = C log₂ q`. Stops
/// early, recording the offending `U`, when a step cannot run.
pub fn iterate_containers(h: &BlockGraph, cfg: &IterateConfig) -> Result<(ContainerFamily, IterationTrace)> {
    let s = h.s;
    let q = h.q();
    let lambda_c = cfg.lambda_c.unwrap_or_else(|| default_lambda_c(s));
    if !(lambda_c > 0.0 && lambda_c.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda constant must be positive, got {lambda_c}")));
    }
    let threshold = cfg.threshold.unwrap_or_else(|| default_threshold(s, q));
    let log_q = (q as f64).log2();
    let lambda = lambda_c * log_q;
    let n = h.n();
    let root = Origin {
        depth: 0,
        parent: None,
        u_size: n,
        gamma: None,
        edges: 0,
        params: ContainerParams::integral(s, n, 1, 1)?,
        containers: 1,
    };
    let mut origins = vec![root];
    let mut current = vec![Node { set: (0..n).collect(), fingerprint: Vec::new(), origin: 0, size_bound: n }];
    let mut stats = vec![stat(0, &current, threshold)];
    let mut audits = Vec::new();
    let mut trace = IterationTrace::default();
    let mut abort = None;
    let mut depth = 0;

    'outer: while current.iter().any(|c| c.set.len() > threshold) {
        if depth >= cfg.max_depth {
            abort = Some(AbortRecord { depth, u: Vec::new(), cause: format!("depth cap {} reached", cfg.max_depth) });
            break;
        }
        depth += 1;
        let mut next: Vec<Node> = Vec::new();
        for (pos, node) in current.iter().enumerate() {
            if node.set.len() <= threshold {
                next.push(Node { set: node.set.clone(), fingerprint: node.fingerprint.clone(), origin: node.origin, size_bound: node.size_bound });
                continue;
            }
            let fail = |cause: String| AbortRecord { depth, u: node.set.clone(), cause };
            let scale = match select_scale(h, &node.set) {
                Ok(sc) => sc,
                Err(e) => {
                    abort = Some(fail(format!("scale: {e}")));
                    break 'outer;
                }
            };
            if scale.good_y.is_empty() {
                abort = Some(fail("scale: no balanced block at the selected scale".into()));
                break 'outer;
            }
            let g = build_scaled_subhypergraph(h, &scale);
            let p = 1.0 / (scale.gamma * (q as f64).powf(1.0 / (s as f64 - 1.0)));
            let gamma = scale.gamma;
            trace.scales.push(scale);
            let params = match ContainerParams::from_ratios(s, g.n, p, lambda) {
                Ok(p) => p,
                Err(e) => {
                    abort = Some(fail(format!("params: {e}")));
                    break 'outer;
                }
            };
            let step = match ContainerStep::new(&g, params) {
                Ok(st) => st,
                Err(e) => {
                    abort = Some(fail(format!("codegree: {e}")));
                    break 'outer;
                }
            };
            let pairs = match step.enumerate(cfg.family_budget) {
                Ok(p) => p,
                Err(e) => {
                    abort = Some(fail(format!("family: {e}")));
                    break 'outer;
                }
            };
            let params = step.params().clone();
            let bound = params.size_bound();
            let origin = origins.len();
            origins.push(Origin {
                depth,
                parent: Some(pos),
                u_size: node.set.len(),
                gamma: Some(gamma),
                edges: g.edge_count(),
                params,
                containers: pairs.len(),
            });
            for (fp, c) in pairs {
                if c.len() > bound {
                    audits.push(format!(
                        "depth {depth}: container of size {} exceeds bound {bound} for |U| = {}",
                        c.len(),
                        node.set.len()
                    ));
                }
                if c.len() >= node.set.len() {
                    abort = Some(fail("container step did not shrink U".into()));
                    break 'outer;
                }
                next.push(Node {
                    set: c.iter().map(|&v| g.ground[v]).collect(),
                    fingerprint: fp.iter().map(|&v| g.ground[v]).collect(),
                    origin,
                    size_bound: bound,
                });
            }
        }
        let mut seen = BTreeSet::new();
        next.retain(|c| seen.insert(c.set.clone()));
        if next.len() > cfg.max_containers {
            abort = Some(AbortRecord {
                depth,
                u: Vec::new(),
                cause: format!("{} containers exceed the cap {}", next.len(), cfg.max_containers),
            });
            current = next;
            break;
        }
        stats.push(stat(depth, &next, threshold));
        current = next;
    }

    let entries = current
        .into_iter()
        .map(|c| FamilyEntry { fingerprint: c.fingerprint, container: c.set, origin: c.origin, size_bound: c.size_bound })
        .collect();
    let family = ContainerFamily {
        s,
        q: Some(q),
        threshold: Some(threshold),
        depth,
        origins,
        entries,
        depth_stats: stats,
        audit_failures: audits,
        abort,
    };
    Ok((family, trace))
}

fn stat(depth: usize, nodes: &[Node], threshold: usize) -> DepthStat {
    let sizes = nodes.iter().map(|c| c.set.len());
    DepthStat {
        depth,
        containers: nodes.len(),
        above_threshold: sizes.clone().filter(|&k| k > threshold).count(),
        max_size: sizes.clone().max().unwrap_or(0),
        min_size: sizes.min().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{build_h, random_blocks, BlockPartition};
    use crate::geometry::unital_incidence;
    use std::sync::Arc;

    fn h(q: u64, s: usize, seed: u64) -> BlockGraph {
        let f = Arc::new(unital_incidence(q).unwrap().incidence);
        let part = random_blocks(&f, s, seed).unwrap();
        build_h(f, part).unwrap()
    }

    #[test]
    fn default_threshold_is_depth_zero_at_small_q() {
        let h = h(3, 2, 1);
        let (fam, _) = iterate_containers(&h, &IterateConfig::default()).unwrap();
        assert_eq!(fam.depth, 0);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.entries[0].container.len(), h.n());
        assert!(fam.terminated());
    }

    #[test]
    fn small_threshold_shrinks_every_lineage() {
        let h = h(2, 2, 3);
        let cfg = IterateConfig { threshold: Some(6), ..Default::default() };
        let (fam, trace) = iterate_containers(&h, &cfg).unwrap();
        assert!(!trace.scales.is_empty());
        assert!(fam.abort.is_none(), "{:?}", fam.abort);
        assert!(fam.max_container() <= 6);
        for mask in 0u32..1 << h.n() {
            let set: Vec<usize> = (0..h.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let independent = set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| !h.graph.has_edge(a, b)));
            if independent {
                assert!(fam.covers(&set), "{set:?} is in no container");
            }
        }
        for e in &fam.entries {
            let o = &fam.origins[e.origin];
            assert!(e.container.len() < o.u_size || o.depth == 0);
        }
    }

    #[test]
    fn empty_block_graph_aborts_on_scale() {
        let f = Arc::new(unital_incidence(2).unwrap().incidence);
        let labels = (0..f.y_count()).map(|y| vec![0u8; f.y_neighbors(y).len()]).collect();
        let h = build_h(f, BlockPartition::from_labels(2, 0, labels).unwrap()).unwrap();
        assert_eq!(h.edge_count(), 0);
        let cfg = IterateConfig { threshold: Some(4), ..Default::default() };
        let (fam, _) = iterate_containers(&h, &cfg).unwrap();
        let abort = fam.abort.expect("no balanced blocks in an empty H");
        assert!(abort.cause.starts_with("scale"));
        assert_eq!(abort.u.len(), h.n());
    }
}
