use super::iterate::default_threshold;
use super::scale::select_scale;
use crate::blocks::BlockGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NicenessConfig {
    pub samples: usize,
    pub seed: u64,
    /// Smallest `|U|` that qualifies; `None` means `500 s² q²`.
    pub min_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NicenessRow {
    pub source: String,
    pub u_size: usize,
    pub bucket: Option<u32>,
    pub gamma: Option<f64>,
    pub good_y: usize,
    pub target: Option<f64>,
    pub margin: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NicenessReport {
    pub min_size: usize,
    /// No `U ⊆ X` is large enough to qualify.
    pub vacuous: bool,
    pub rows: Vec<NicenessRow>,
    pub pass_rate: f64,
}

impl NicenessReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,u_size,bucket,gamma,good_y,target,margin,pass\n");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.source,
                r.u_size,
                r.bucket.map(|b| b.to_string()).unwrap_or_default(),
                opt(r.gamma),
                r.good_y,
                opt(r.target),
                opt(r.margin),
                r.pass
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        if self.vacuous {
            return format!("vacuous: no qualifying U (|X| below {})", self.min_size);
        }
        format!("{} sets, pass rate {:.3}", self.rows.len(), self.pass_rate)
    }
}

fn evaluate(h: &BlockGraph, source: &str, u: &[usize]) -> NicenessRow {
    match select_scale(h, u) {
        Ok(sc) => NicenessRow {
            source: source.into(),
            u_size: sc.u.len(),
            bucket: Some(sc.bucket),
            gamma: Some(sc.gamma),
            good_y: sc.good_y.len(),
            target: Some(sc.target),
            margin: Some(sc.margin()),
            pass: sc.meets_target && sc.gamma_floor_ok,
        },
        Err(_) => NicenessRow {
            source: source.into(),
            u_size: u.len(),
            bucket: None,
            gamma: None,
            good_y: 0,
            target: None,
            margin: None,
            pass: false,
        },
    }
}

/// Checks the balanced-scale conclusion on `X`, on `samples` random subsets
/// of qualifying size, and on every set in `encountered`.
pub fn niceness_check(h: &BlockGraph, cfg: &NicenessConfig, encountered: &[Vec<usize>]) -> NicenessReport {
    let n = h.n();
    let min_size = cfg.min_size.unwrap_or_else(|| default_threshold(h.s, h.q()));
    let vacuous = n < min_size || n == 0;
    let mut rows = Vec::new();
    if !vacuous {
        let all: Vec<usize> = (0..n).collect();
        rows.push(evaluate(h, "full", &all));
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut pool = all.clone();
        for _ in 0..cfg.samples {
            let k = rng.gen_range(min_size.max(1)..=n);
            let (chosen, _) = pool.partial_shuffle(&mut rng, k);
            let mut u = chosen.to_vec();
            u.sort_unstable();
            rows.push(evaluate(h, "sample", &u));
        }
        for u in encountered.iter().filter(|u| u.len() >= min_size) {
            rows.push(evaluate(h, "iteration", u));
        }
    }
    let pass_rate =
        if rows.is_empty() { 0.0 } else { rows.iter().filter(|r| r.pass).count() as f64 / rows.len() as f64 };
    NicenessReport { min_size, vacuous, rows, pass_rate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{build_h, random_blocks};
    use crate::geometry::unital_incidence;
    use std::sync::Arc;

    fn h(q: u64) -> BlockGraph {
        let f = Arc::new(unital_incidence(q).unwrap().incidence);
        let part = random_blocks(&f, 2, 7).unwrap();
        build_h(f, part).unwrap()
    }

    #[test]
    fn small_q_is_vacuous() {
        let r = niceness_check(&h(2), &NicenessConfig { samples: 5, seed: 0, min_size: None }, &[]);
        assert!(r.vacuous);
        assert!(r.rows.is_empty());
        assert!(r.summary().starts_with("vacuous"));
    }

    #[test]
    fn full_set_is_always_first() {
        let h = h(3);
        let r = niceness_check(&h, &NicenessConfig { samples: 10, seed: 1, min_size: Some(20) }, &[]);
        assert_eq!(r.rows.len(), 11);
        assert_eq!((r.rows[0].source.as_str(), r.rows[0].u_size), ("full", h.n()));
        assert!(r.rows.iter().all(|row| row.u_size >= 20));
        assert_eq!(r.to_csv().lines().count(), 12);
    }
}
