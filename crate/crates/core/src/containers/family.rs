use super::hypergraph::UniformHypergraph;
use super::scythe::{ContainerParams, ContainerStep};
use crate::Result;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub fingerprint: Vec<usize>,
    pub container: Vec<usize>,
    /// Index into `ContainerFamily::origins`.
    pub origin: usize,
    /// Size bound recorded when the container was created.
    pub size_bound: usize,
}

/// The step that produced a group of containers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Origin {
    pub depth: usize,
    /// Position of the parent container in the previous depth's list.
    pub parent: Option<usize>,
    pub u_size: usize,
    pub gamma: Option<f64>,
    pub edges: usize,
    pub params: ContainerParams,
    pub containers: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthStat {
    pub depth: usize,
    pub containers: usize,
    pub above_threshold: usize,
    pub max_size: usize,
    pub min_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbortRecord {
    pub depth: usize,
    pub u: Vec<usize>,
    pub cause: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainerFamily {
    pub s: usize,
    pub q: Option<u64>,
    pub threshold: Option<usize>,
    pub depth: usize,
    pub origins: Vec<Origin>,
    pub entries: Vec<FamilyEntry>,
    pub depth_stats: Vec<DepthStat>,
    pub audit_failures: Vec<String>,
    pub abort: Option<AbortRecord>,
}

impl ContainerFamily {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn containers(&self) -> impl Iterator<Item = &[usize]> {
        self.entries.iter().map(|e| e.container.as_slice())
    }

    /// True if some container holds every vertex of `set`.
    pub fn covers(&self, set: &[usize]) -> bool {
        self.containers().any(|c| set.iter().all(|v| c.binary_search(v).is_ok()))
    }

    pub fn max_container(&self) -> usize {
        self.containers().map(<[usize]>::len).max().unwrap_or(0)
    }

    pub fn terminated(&self) -> bool {
        self.abort.is_none() && self.threshold.map_or(true, |t| self.max_container() <= t)
    }

    /// Params, per-depth statistics, fingerprints and container sizes; with
    /// `full` the containers themselves are included.
    pub fn to_json(&self, full: bool) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "fingerprint": e.fingerprint,
                    "container_size": e.container.len(),
                    "size_bound": e.size_bound,
                    "origin": e.origin,
                });
                if full {
                    v["container"] = json!(e.container);
                }
                v
            })
            .collect();
        json!({
            "s": self.s,
            "q": self.q,
            "threshold": self.threshold,
            "depth": self.depth,
            "terminated": self.terminated(),
            "abort": self.abort,
            "audit_failures": self.audit_failures,
            "origins": self.origins,
            "depth_stats": self.depth_stats,
            "entries": entries,
        })
    }

    pub(crate) fn single(s: usize, origin: Origin, entries: Vec<FamilyEntry>, audit_failures: Vec<String>) -> Self {
        let sizes = entries.iter().map(|e| e.container.len());
        let stat = DepthStat {
            depth: origin.depth,
            containers: entries.len(),
            above_threshold: 0,
            max_size: sizes.clone().max().unwrap_or(0),
            min_size: sizes.min().unwrap_or(0),
        };
        ContainerFamily {
            s,
            q: None,
            threshold: None,
            depth: origin.depth,
            origins: vec![origin],
            entries,
            depth_stats: vec![stat],
            audit_failures,
            abort: None,
        }
    }
}

/// Runs the container step with integer `(b, r)` and collects the whole
/// family, in ground ids. Size-bound violations are recorded as audit
/// failures.
pub fn container_step(hg: &UniformHypergraph, params: ContainerParams, budget: u64) -> Result<ContainerFamily> {
    let step = ContainerStep::new(hg, params)?;
    let params = step.params().clone();
    let pairs = step.enumerate(budget)?;
    let bound = params.size_bound();
    let cap = params.fingerprint_cap();
    let mut audits = Vec::new();
    let mut entries = Vec::with_capacity(pairs.len());
    for (fp, c) in pairs {
        assert!(fp.len() <= cap, "fingerprint {fp:?} exceeds s*b = {cap}");
        if c.len() > bound {
            audits.push(format!("container of size {} exceeds bound {bound} (v={}, r={})", c.len(), hg.n, params.r));
        }
        let map = |v: &usize| hg.ground[*v];
        let mut container: Vec<usize> = c.iter().map(map).collect();
        container.sort_unstable();
        let mut fingerprint: Vec<usize> = fp.iter().map(map).collect();
        fingerprint.sort_unstable();
        entries.push(FamilyEntry { fingerprint, container, origin: 0, size_bound: bound });
    }
    let count_ln = (entries.len() as f64).ln();
    let cap_ln = cap as f64 * (hg.n as f64).ln();
    if count_ln > cap_ln + 1e-9 {
        audits.push(format!("family size {} exceeds v^(s*b) = {}^{cap}", entries.len(), hg.n));
    }
    let origin = Origin {
        depth: 0,
        parent: None,
        u_size: hg.n,
        gamma: None,
        edges: hg.edge_count(),
        containers: entries.len(),
        params,
    };
    Ok(ContainerFamily::single(hg.s, origin, entries, audits))
}

/// Container step with `b = ⌈p·v⌉`, `r = ⌊v/λ⌋`.
pub fn container_family(hg: &UniformHypergraph, p: f64, lambda: f64, budget: u64) -> Result<ContainerFamily> {
    let params = ContainerParams::from_ratios(hg.s, hg.n, p, lambda)?;
    container_step(hg, params, budget)
}
