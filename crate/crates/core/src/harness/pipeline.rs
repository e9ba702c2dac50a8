use crate::blocks::{build_h, random_blocks, verify_ks2_free, BlockGraph};
use crate::geometry::{unital_incidence, verify_unital, BipartiteIncidence, SearchBudget, VerificationReport};
use crate::graph::{alpha_s_exact, alpha_s_greedy, DenseGraph};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

/// RNG stream for vertex sampling, disjoint from the per-`y` label streams.
const SPARSIFY_STREAM: u64 = u64::MAX;

/// `(2s − 3) / (4s − 5)`.
pub fn target_exponent(s: usize) -> f64 {
    (2.0 * s as f64 - 3.0) / (4.0 * s as f64 - 5.0)
}

/// `q^{−1/(s−1)}`.
pub fn keep_probability(q: u64, s: usize) -> f64 {
    (q as f64).powf(-1.0 / (s as f64 - 1.0))
}

/// `q^{2 − 1/(s−1)} (log₂ q)³`, before rounding.
pub fn t_value(q: u64, s: usize) -> f64 {
    let l = (q as f64).log2();
    (q as f64).powf(2.0 - 1.0 / (s as f64 - 1.0)) * l * l * l
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub qs: Vec<u64>,
    pub s: usize,
    pub trials: usize,
    /// Seeds used for every `q`; `None` means `0..trials`.
    pub seeds: Option<Vec<u64>>,
    /// Largest `n_G0` solved exactly; `None` means 160 for `s = 2`, else 80.
    pub exact_cap: Option<usize>,
    pub exact_nodes: u64,
    pub greedy_trials: usize,
    /// Node budget for the O'Nan search per `q`; a node budget keeps the
    /// reports reproducible.
    pub onan_nodes: u64,
    pub out_dir: Option<PathBuf>,
    /// Include wall-clock seconds in the CSV.
    pub timings: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            qs: vec![3, 5, 7, 11],
            s: 2,
            trials: 5,
            seeds: None,
            exact_cap: None,
            exact_nodes: 20_000_000,
            greedy_trials: 200,
            onan_nodes: 1_000_000,
            out_dir: None,
            timings: false,
        }
    }
}

impl PipelineConfig {
    pub fn seeds(&self) -> Vec<u64> {
        self.seeds.clone().unwrap_or_else(|| (0..self.trials as u64).collect())
    }

    pub fn exact_cap(&self) -> usize {
        self.exact_cap.unwrap_or(if self.s == 2 { 160 } else { 80 })
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 2 {
            return Err(Error::InvalidParameter(format!("s must be at least 2, got {}", self.s)));
        }
        if self.trials == 0 && self.seeds.as_ref().map_or(true, Vec::is_empty) {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if let Some(&q) = self.qs.iter().find(|&&q| !crate::geometry::field::is_prime(q)) {
            return Err(Error::UnsupportedOrder(q, crate::geometry::field::DEFAULT_MAX_ORDER));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub q: u64,
    pub s: usize,
    pub seed: u64,
    pub n_h: usize,
    pub e_h: usize,
    pub p_keep: f64,
    pub n_g0: usize,
    pub alpha_method: String,
    pub alpha_value: usize,
    pub exact: bool,
    pub wall_seconds: f64,
    pub target_exponent: f64,
    pub t_value: f64,
    /// `⌈t_value⌉`.
    pub t_rounded: u64,
}

/// `F` for one `q` with its verification, shared across seeds.
#[derive(Clone, Debug)]
pub struct VerifiedGeometry {
    pub q: u64,
    pub incidence: Arc<BipartiteIncidence>,
    pub report: VerificationReport,
}

pub fn verified_geometry(q: u64, budget: SearchBudget) -> Result<VerifiedGeometry> {
    let u = unital_incidence(q)?;
    let report = verify_unital(u.q, &u.incidence, budget);
    if !report.all_pass {
        return Err(Error::VerificationFailed { stage: "unital".into(), detail: serde_json::to_string(&report)? });
    }
    Ok(VerifiedGeometry { q, incidence: Arc::new(u.incidence), report })
}

/// Builds `H` and checks it has no `K_{s+2}`.
pub fn verified_block_graph(geom: &VerifiedGeometry, s: usize, seed: u64) -> Result<BlockGraph> {
    let part = random_blocks(&geom.incidence, s, seed)?;
    let h = build_h(geom.incidence.clone(), part)?;
    let free = verify_ks2_free(&h);
    if !free.free {
        return Err(Error::VerificationFailed {
            stage: "clique-free".into(),
            detail: format!("K_{} found: {:?}", s + 2, free.clique),
        });
    }
    Ok(h)
}

/// Induced subgraph of `H` on a Bernoulli(`p`) sample of its vertices.
/// Labels of the result are the kept vertex ids.
pub fn sparsify(h: &BlockGraph, p: f64, seed: u64) -> Result<DenseGraph> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("keep probability must be in (0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SPARSIFY_STREAM);
    let kept: Vec<usize> = (0..h.n()).filter(|_| rng.gen_bool(p)).collect();
    Ok(h.hinted_graph().induced(&kept))
}

/// One run of the construction: `F` (already verified), `H`, sparsified
/// `G₀`, and an `α_s` estimate of `G₀`.
pub fn pipeline_theorem(geom: &VerifiedGeometry, cfg: &PipelineConfig, seed: u64) -> Result<ExperimentRecord> {
    let started = Instant::now();
    let s = cfg.s;
    let q = geom.q;
    let h = verified_block_graph(geom, s, seed)?;
    let p = keep_probability(q, s);
    let g0 = sparsify(&h, p, seed)?;
    let n_g0 = g0.n();
    let (method, alpha) = if n_g0 <= cfg.exact_cap() {
        let mut a = alpha_s_exact(&g0, s, cfg.exact_nodes);
        if !a.exact {
            let g = alpha_s_greedy(&g0, s, cfg.greedy_trials, seed);
            if g.value > a.value {
                a = crate::graph::AlphaResult { exact: false, ..g };
            }
        }
        ("exact", a)
    } else {
        ("greedy", alpha_s_greedy(&g0, s, cfg.greedy_trials, seed))
    };
    let t = t_value(q, s);
    Ok(ExperimentRecord {
        q,
        s,
        seed,
        n_h: h.n(),
        e_h: h.edge_count(),
        p_keep: p,
        n_g0,
        alpha_method: method.into(),
        alpha_value: alpha.value,
        exact: alpha.exact,
        wall_seconds: started.elapsed().as_secs_f64(),
        target_exponent: target_exponent(s),
        t_value: t,
        t_rounded: t.ceil() as u64,
    })
}

pub fn onan_budget(cfg: &PipelineConfig) -> SearchBudget {
    SearchBudget::nodes(cfg.onan_nodes)
}
